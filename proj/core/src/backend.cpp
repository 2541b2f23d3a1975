#include "when2tool/backend.hpp"

#include "when2tool/common.hpp"
#include "when2tool/io.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace when2tool {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 4> kRoles{{
    {Role::system, "system"},
    {Role::user, "user"},
    {Role::assistant, "assistant"},
    {Role::tool, "tool"},
}};

template <typename F>
auto protocol_guard(std::string_view what, F&& f) {
    try {
        return f();
    } catch (const ProtocolError&) {
        throw;
    } catch (const std::exception& e) {
        throw ProtocolError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

std::string_view to_string(Role r) {
    for (const auto& [k, n] : kRoles) {
        if (k == r) return n;
    }
    return "?";
}

Role parse_role(std::string_view s) {
    for (const auto& [k, n] : kRoles) {
        if (n == s) return k;
    }
    throw ArgumentError("unknown role: " + std::string(s));
}

void to_json(json& j, const Message& m) { j = json{{"role", to_string(m.role)}, {"content", m.content}}; }

void from_json(const json& j, Message& m) {
    m.role = parse_role(j.at("role").get<std::string>());
    m.content = j.at("content").get<std::string>();
}

void to_json(json& j, const TokenUsage& u) {
    j = json{{"prompt_tokens", u.prompt_tokens}, {"completion_tokens", u.completion_tokens}};
}

void from_json(const json& j, TokenUsage& u) {
    u.prompt_tokens = j.value("prompt_tokens", 0);
    u.completion_tokens = j.value("completion_tokens", 0);
}

void to_json(json& j, const ModelMeta& m) {
    j = json{{"model", m.model}, {"layer_count", m.layer_count}, {"hidden_dim", m.hidden_dim}};
}

void from_json(const json& j, ModelMeta& m) {
    m.model = j.value("model", std::string());
    j.at("layer_count").get_to(m.layer_count);
    j.at("hidden_dim").get_to(m.hidden_dim);
}

void to_json(json& j, const HiddenFeatures& h) {
    j = json{{"layer_count", h.layer_count},
             {"hidden_dim", h.hidden_dim},
             {"task_id", h.task_id},
             {"values_b64", io::encode_floats(h.values)}};
}

void from_json(const json& j, HiddenFeatures& h) {
    j.at("layer_count").get_to(h.layer_count);
    j.at("hidden_dim").get_to(h.hidden_dim);
    h.task_id = j.value("task_id", std::string());
    h.values = io::decode_floats(j.at("values_b64").get<std::string>());
    if (h.layer_count <= 0 || h.hidden_dim <= 0 ||
        h.values.size() != static_cast<std::size_t>(h.layer_count) * static_cast<std::size_t>(h.hidden_dim)) {
        throw ProtocolError("hidden vector length " + std::to_string(h.values.size()) + " != L*d = " +
                            std::to_string(h.layer_count) + "*" + std::to_string(h.hidden_dim));
    }
}

json request_to_json(const BackendRequest& r) {
    json j{{"messages", r.messages},
           {"max_tokens", r.max_tokens},
           {"temperature", r.temperature},
           {"want_hidden_states", r.want_hidden_states},
           {"task_id", r.task_id}};
    j["assistant_prefill"] = r.assistant_prefill ? json(*r.assistant_prefill) : json(nullptr);
    return j;
}

BackendRequest request_from_json(const json& j) {
    return protocol_guard("malformed request", [&] {
        BackendRequest r;
        j.at("messages").get_to(r.messages);
        if (r.messages.empty()) throw ProtocolError("messages must be non-empty");
        if (j.contains("assistant_prefill") && !j.at("assistant_prefill").is_null()) {
            r.assistant_prefill = j.at("assistant_prefill").get<std::string>();
        }
        r.max_tokens = j.value("max_tokens", 1024);
        r.temperature = j.value("temperature", 0.0);
        r.want_hidden_states = j.value("want_hidden_states", false);
        r.task_id = j.value("task_id", std::string());
        return r;
    });
}

json response_to_json(const BackendResponse& r) {
    json j{{"text", r.text}, {"usage", r.usage}, {"model_meta", r.model_meta}};
    j["hidden"] = r.hidden ? json(*r.hidden) : json(nullptr);
    return j;
}

BackendResponse response_from_json(const json& j) {
    return protocol_guard("malformed response", [&] {
        BackendResponse r;
        r.text = j.at("text").get<std::string>();
        if (j.contains("usage")) j.at("usage").get_to(r.usage);
        j.at("model_meta").get_to(r.model_meta);
        if (j.contains("hidden") && !j.at("hidden").is_null()) {
            r.hidden = j.at("hidden").get<HiddenFeatures>();
            if (r.hidden->layer_count != r.model_meta.layer_count || r.hidden->hidden_dim != r.model_meta.hidden_dim) {
                throw ProtocolError("hidden dims disagree with model_meta");
            }
        }
        return r;
    });
}

int approx_tokens(std::string_view text) {
    int n = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            if (!in_word) ++n;
            in_word = true;
        } else {
            in_word = false;
            if (!std::isspace(c)) ++n;
        }
    }
    return n;
}

std::vector<ConformanceCheck> run_conformance(Backend& backend, const std::vector<Message>& messages) {
    std::vector<ConformanceCheck> out;
    auto record = [&](std::string name, bool ok, std::string detail = {}) {
        out.push_back({std::move(name), ok, std::move(detail)});
    };
    const ModelMeta meta = backend.meta();
    try {
        BackendRequest plain{messages, std::nullopt, 256, 0.0, false, "conformance"};
        const auto a = backend.generate(plain);
        const auto b = backend.generate(plain);
        record("determinism_at_temperature_0", a.text == b.text, a.text == b.text ? "" : "responses differ");
        record("no_hidden_unless_requested", !a.hidden.has_value());

        for (std::string prefill : {std::string("I need to use a tool for this question."),
                                    std::string("I can solve this directly without using a tool."), std::string("\\boxed{")}) {
            BackendRequest req = plain;
            req.assistant_prefill = prefill;
            const auto r = backend.generate(req);
            const bool ok = r.text.rfind(prefill, 0) == 0;
            record("prefill_prefix: " + prefill, ok, ok ? "" : "text begins '" + r.text.substr(0, prefill.size()) + "'");
        }

        BackendRequest hid = plain;
        hid.want_hidden_states = true;
        const auto h = backend.generate(hid);
        if (!h.hidden) {
            record("hidden_present", false, "no hidden vector returned");
        } else {
            const auto& f = *h.hidden;
            const std::size_t expect = static_cast<std::size_t>(f.layer_count) * static_cast<std::size_t>(f.hidden_dim);
            record("hidden_present", true);
            record("hidden_length_is_L_times_d", f.values.size() == expect && expect > 0,
                   std::to_string(f.values.size()) + " vs " + std::to_string(expect));
            bool finite = true;
            for (float v : f.values) finite = finite && std::isfinite(v);
            record("hidden_finite", finite);
            record("hidden_matches_meta", f.layer_count == meta.layer_count && f.hidden_dim == meta.hidden_dim);
            const auto h2 = backend.generate(hid);
            record("hidden_deterministic", h2.hidden && h2.hidden->values == f.values);
            record("hidden_does_not_change_text", h.text == a.text);
        }
    } catch (const std::exception& e) {
        record("requests_succeed", false, e.what());
    }
    return out;
}

}  // namespace when2tool
