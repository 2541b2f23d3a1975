#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool {

enum class Role { system, user, assistant, tool };

std::string_view to_string(Role r);
Role parse_role(std::string_view s);

struct Message {
    Role role = Role::user;
    std::string content;

    friend bool operator==(const Message&, const Message&) = default;
};

struct BackendRequest {
    std::vector<Message> messages;
    std::optional<std::string> assistant_prefill;
    int max_tokens = 1024;
    double temperature = 0.0;
    bool want_hidden_states = false;
    std::string task_id;  // informational; echoed into HiddenFeatures
};

/// Last-input-token hidden states of every layer (embedding output included), layer-major.
struct HiddenFeatures {
    std::vector<float> values;
    int layer_count = 0;
    int hidden_dim = 0;
    std::string task_id;

    std::size_t dimension() const { return values.size(); }
};

struct TokenUsage {
    int prompt_tokens = 0;
    int completion_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& o) {
        prompt_tokens += o.prompt_tokens;
        completion_tokens += o.completion_tokens;
        return *this;
    }
};

struct ModelMeta {
    std::string model;
    int layer_count = 0;
    int hidden_dim = 0;
};

struct BackendResponse {
    std::string text;  // includes the prefill when one was supplied
    std::optional<HiddenFeatures> hidden;
    TokenUsage usage;
    ModelMeta model_meta;
};

/// Transport failure or timeout. Retrying may succeed.
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The peer violated the wire protocol. Retrying will not help.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Backend {
public:
    virtual ~Backend() = default;

    /// Thread-safe. Throws BackendError or ProtocolError.
    virtual BackendResponse generate(const BackendRequest& request) = 0;
    virtual ModelMeta meta() const = 0;
    /// Stable identifier used to key cached artifacts.
    virtual std::string model_tag() const = 0;
};

void to_json(nlohmann::json& j, const Message& m);
void from_json(const nlohmann::json& j, Message& m);
void to_json(nlohmann::json& j, const TokenUsage& u);
void from_json(const nlohmann::json& j, TokenUsage& u);
void to_json(nlohmann::json& j, const ModelMeta& m);
void from_json(const nlohmann::json& j, ModelMeta& m);

/// Hidden vector as {"layer_count", "hidden_dim", "task_id", "values_b64"}.
void to_json(nlohmann::json& j, const HiddenFeatures& h);
void from_json(const nlohmann::json& j, HiddenFeatures& h);

// Wire format of POST /v1/generate.
nlohmann::json request_to_json(const BackendRequest& r);
/// Throws ProtocolError on schema violations.
BackendRequest request_from_json(const nlohmann::json& j);
nlohmann::json response_to_json(const BackendResponse& r);
/// Throws ProtocolError on schema violations, including hidden length != L*d.
BackendResponse response_from_json(const nlohmann::json& j);

/// Rough whitespace-and-punctuation token count.
int approx_tokens(std::string_view text);

// ---------------------------------------------------------------------------
// Conformance suite shared by every Backend implementation.

struct ConformanceCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Sends a handful of requests built from `messages` and checks the protocol
/// contract: prefill prefix, hidden length = L*d with finite values,
/// determinism at temperature 0, and meta consistency.
std::vector<ConformanceCheck> run_conformance(Backend& backend, const std::vector<Message>& messages);

}  // namespace when2tool
