#pragma once

#include "when2tool/backend.hpp"

#include <memory>
#include <optional>
#include <string>

namespace when2tool {

struct HttpBackendOptions {
    std::string url;  // "http://host:port[/prefix]"
    double timeout_seconds = 120.0;
    int max_retries = 3;
    double backoff_seconds = 0.5;
    int concurrency = 4;
    std::string model_tag;  // defaults to model_meta.model
};

/// `url` argument, else $BACKEND_URL, else ConfigError.
std::string resolve_backend_url(const std::optional<std::string>& url);

/// Client for POST <url>/v1/generate.
class HttpBackend final : public Backend {
public:
    explicit HttpBackend(HttpBackendOptions options);
    ~HttpBackend() override;

    /// Retries transport failures and 5xx with exponential backoff; then BackendError.
    /// 4xx and malformed bodies raise ProtocolError immediately.
    BackendResponse generate(const BackendRequest& request) override;
    /// Taken from the first response; issues a zero-token request if none has been seen.
    ModelMeta meta() const override;
    std::string model_tag() const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Serves any Backend over the same protocol. 400 on malformed requests, 503 on BackendError.
class BackendServer {
public:
    explicit BackendServer(Backend& backend);
    ~BackendServer();

    /// Binds (port 0 picks a free port), starts a listener thread, returns the bound port.
    int start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();
    std::string url() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace when2tool
