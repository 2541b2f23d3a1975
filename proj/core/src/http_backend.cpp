#include "when2tool/http_backend.hpp"

#include "when2tool/common.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <mutex>
#include <semaphore>
#include <thread>

namespace when2tool {

using nlohmann::json;

namespace {

constexpr const char* kGeneratePath = "/v1/generate";

struct ParsedUrl {
    std::string origin;  // scheme://host:port
    std::string prefix;  // path prefix without trailing '/'
};

ParsedUrl parse_url(const std::string& url) {
    const auto scheme = url.find("://");
    if (scheme == std::string::npos || url.substr(0, scheme) != "http") {
        throw ConfigError("backend URL must start with http://: " + url);
    }
    const auto path = url.find('/', scheme + 3);
    ParsedUrl p;
    p.origin = url.substr(0, path);
    if (path != std::string::npos) p.prefix = url.substr(path);
    while (!p.prefix.empty() && p.prefix.back() == '/') p.prefix.pop_back();
    if (p.origin.size() <= scheme + 3) throw ConfigError("backend URL has no host: " + url);
    return p;
}

}  // namespace

std::string resolve_backend_url(const std::optional<std::string>& url) {
    if (url && !url->empty()) return *url;
    if (const char* env = std::getenv("BACKEND_URL"); env && *env) return env;
    throw ConfigError("no backend URL: pass --backend-url or set BACKEND_URL");
}

struct HttpBackend::Impl {
    HttpBackendOptions options;
    ParsedUrl url;
    std::counting_semaphore<1024> slots;
    mutable std::mutex meta_mu;
    mutable std::optional<ModelMeta> meta;

    explicit Impl(HttpBackendOptions o)
        : options(std::move(o)), url(parse_url(options.url)), slots(std::max(1, std::min(options.concurrency, 1024))) {}

    BackendResponse post_once(const std::string& body) {
        httplib::Client cli(url.origin);
        const auto secs = std::chrono::duration<double>(options.timeout_seconds);
        const auto sec = std::chrono::duration_cast<std::chrono::seconds>(secs);
        const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(secs - sec);
        cli.set_connection_timeout(sec.count(), usec.count());
        cli.set_read_timeout(sec.count(), usec.count());
        cli.set_write_timeout(sec.count(), usec.count());
        auto res = cli.Post((url.prefix + kGeneratePath).c_str(), body, "application/json");
        if (!res) throw BackendError("transport error: " + httplib::to_string(res.error()));
        if (res->status >= 500) throw BackendError("server error " + std::to_string(res->status) + ": " + res->body);
        if (res->status != 200) throw ProtocolError("HTTP " + std::to_string(res->status) + ": " + res->body);
        json j = json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw ProtocolError("response is not JSON");
        return response_from_json(j);
    }
};

HttpBackend::HttpBackend(HttpBackendOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

HttpBackend::~HttpBackend() = default;

BackendResponse HttpBackend::generate(const BackendRequest& request) {
    if (request.messages.empty()) throw ProtocolError("messages must be non-empty");
    const std::string body = request_to_json(request).dump();
    impl_->slots.acquire();
    struct Release {
        std::counting_semaphore<1024>& s;
        ~Release() { s.release(); }
    } release{impl_->slots};

    double backoff = impl_->options.backoff_seconds;
    for (int attempt = 0;; ++attempt) {
        try {
            BackendResponse r = impl_->post_once(body);
            if (request.assistant_prefill && r.text.rfind(*request.assistant_prefill, 0) != 0) {
                throw ProtocolError("completion does not begin with the assistant prefill");
            }
            if (request.want_hidden_states && !r.hidden) throw ProtocolError("hidden states requested but absent");
            {
                std::lock_guard lock(impl_->meta_mu);
                if (!impl_->meta) impl_->meta = r.model_meta;
            }
            return r;
        } catch (const BackendError&) {
            if (attempt >= impl_->options.max_retries) throw;
            std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
            backoff *= 2.0;
        }
    }
}

ModelMeta HttpBackend::meta() const {
    {
        std::lock_guard lock(impl_->meta_mu);
        if (impl_->meta) return *impl_->meta;
    }
    BackendRequest ping{{{Role::user, "ping"}}, std::nullopt, 0, 0.0, false, ""};
    const auto r = const_cast<HttpBackend*>(this)->generate(ping);
    return r.model_meta;
}

std::string HttpBackend::model_tag() const {
    if (!impl_->options.model_tag.empty()) return impl_->options.model_tag;
    return meta().model;
}

struct BackendServer::Impl {
    Backend& backend;
    httplib::Server server;
    std::thread thread;
    std::string host;
    int port = 0;

    explicit Impl(Backend& b) : backend(b) {}
};

BackendServer::BackendServer(Backend& backend) : impl_(std::make_unique<Impl>(backend)) {
    impl_->server.Post(kGeneratePath, [this](const httplib::Request& req, httplib::Response& res) {
        json j = json::parse(req.body, nullptr, false);
        if (j.is_discarded()) {
            res.status = 400;
            res.set_content(R"({"error":"request is not JSON"})", "application/json");
            return;
        }
        try {
            const BackendRequest r = request_from_json(j);
            res.set_content(response_to_json(impl_->backend.generate(r)).dump(), "application/json");
        } catch (const ProtocolError& e) {
            res.status = 400;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 503;
            res.set_content(json{{"error", e.what()}}.dump(), "application/json");
        }
    });
}

BackendServer::~BackendServer() { stop(); }

int BackendServer::start(const std::string& host, int port) {
    impl_->host = host;
    impl_->port = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (impl_->port <= 0) throw ConfigError("cannot bind " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return impl_->port;
}

void BackendServer::stop() {
    if (impl_->thread.joinable()) {
        impl_->server.stop();
        impl_->thread.join();
    }
}

std::string BackendServer::url() const { return "http://" + impl_->host + ":" + std::to_string(impl_->port); }

}  // namespace when2tool
