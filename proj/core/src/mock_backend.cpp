#include "when2tool/mock_backend.hpp"

#include "when2tool/common.hpp"
#include "when2tool/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace when2tool {

namespace {

std::map<ModeKind, CallRate> qwen_like_rates() {
    return {{ModeKind::force, {1.0, 1.0}},
            {ModeKind::default_mode, {0.85, 0.97}},
            {ModeKind::necessary, {0.45, 0.85}},
            {ModeKind::sparse, {0.3, 0.75}},
            {ModeKind::no_tool, {0.0, 0.0}}};
}

bool contains(std::string_view hay, std::string_view needle) {
    return !needle.empty() && hay.find(needle) != std::string_view::npos;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

ModeKind detect_mode(std::string_view system) {
    for (ModeKind m : {ModeKind::force, ModeKind::necessary, ModeKind::sparse, ModeKind::no_tool}) {
        if (contains(system, prompts::mode_instruction(m))) return m;
    }
    return ModeKind::default_mode;
}

}  // namespace

MockProfile MockProfile::oracle_signal(std::uint64_t seed) {
    MockProfile p;
    p.name = "oracle-signal";
    p.seed = seed;
    p.call_rate = qwen_like_rates();
    return p;
}

MockProfile MockProfile::no_signal(std::uint64_t seed) {
    MockProfile p = oracle_signal(seed);
    p.name = "no-signal";
    p.signal = 0.0;
    return p;
}

MockProfile MockProfile::llama_like(std::uint64_t seed) {
    MockProfile p = oracle_signal(seed);
    p.name = "llama-like";
    p.necessity_rate = {0.1, 0.35, 0.8};
    p.call_rate[ModeKind::default_mode] = {0.6, 0.8};
    p.call_rate[ModeKind::necessary] = {0.55, 0.8};
    p.call_rate[ModeKind::sparse] = {0.5, 0.75};
    p.rta_narrates = true;
    p.soft_compliance = 0.8;
    return p;
}

MockProfile MockProfile::by_name(std::string_view name, std::uint64_t seed) {
    if (name == "oracle-signal") return oracle_signal(seed);
    if (name == "no-signal") return no_signal(seed);
    if (name == "llama-like") return llama_like(seed);
    throw ConfigError("unknown mock profile: " + std::string(name));
}

std::string mock_wrong_answer(const AnswerValue& expected) {
    std::string s = expected.text;
    if (expected.kind == AnswerKind::boolean) {
        if (s == "True") return "False";
        if (s == "False") return "True";
        return s == "Yes" ? "No" : "Yes";
    }
    if (expected.kind == AnswerKind::day_name) return s == "Monday" ? "Tuesday" : "Monday";
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (std::isdigit(static_cast<unsigned char>(*it))) {
            *it = *it == '9' ? '8' : static_cast<char>(*it + 1);
            return s;
        }
    }
    return "unknown";
}

std::string render_call_json(const ToolCall& call) {
    return "{\"name\": \"" + call.tool_name + "\", \"arguments\": " + call.arguments.dump() + "}";
}

MockBackend::MockBackend(MockProfile profile, std::vector<Task> tasks) : profile_(std::move(profile)), tasks_(std::move(tasks)) {
    if (profile_.layer_count <= 0 || profile_.hidden_dim <= 0) throw ConfigError("mock dims must be positive");
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
        by_prompt_.emplace(tasks_[i].prompt, i);
        by_id_.emplace(tasks_[i].task_id, i);
    }
    // Unit direction, weighted towards later layers.
    const std::size_t dim = static_cast<std::size_t>(profile_.layer_count) * static_cast<std::size_t>(profile_.hidden_dim);
    Rng rng(hash64(profile_.seed, std::string_view("mock-direction")));
    std::vector<double> u(dim);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double layer = static_cast<double>(i / static_cast<std::size_t>(profile_.hidden_dim));
        u[i] = rng.normal() * (1.0 + layer) / profile_.layer_count;
        norm += u[i] * u[i];
    }
    norm = std::sqrt(norm);
    direction_.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) direction_[i] = static_cast<float>(u[i] / norm);
}

double MockBackend::unit(std::string_view purpose, std::string_view key) const {
    return static_cast<double>(mix64(hash64(profile_.seed, purpose, key)) >> 11) * 0x1.0p-53;
}

int MockBackend::necessity(const Task& task) const {
    return margin(task) > 0.0 ? 1 : 0;
}

double MockBackend::margin(const Task& task) const {
    std::array<double, 3> rate = profile_.necessity_rate;
    if (auto it = profile_.env_necessity_rate.find(task.env_name); it != profile_.env_necessity_rate.end()) rate = it->second;
    const auto logit = [](double x) {
        x = std::clamp(x, 1e-6, 1.0 - 1e-6);
        return std::log(x / (1.0 - x));
    };
    return logit(rate[static_cast<std::size_t>(task.difficulty)]) - logit(unit("necessity", task.prompt));
}

std::vector<float> MockBackend::hidden_for(std::string_view prompt) const {
    const std::size_t dim = direction_.size();
    std::vector<float> h(dim);
    Rng rng(hash64(profile_.seed, std::string_view("mock-hidden"), prompt));
    for (auto& v : h) v = static_cast<float>(rng.normal());
    if (auto it = by_prompt_.find(std::string(prompt)); it != by_prompt_.end() && profile_.signal != 0.0) {
        const double a = profile_.signal * margin(tasks_[it->second]);
        for (std::size_t i = 0; i < dim; ++i) h[i] += static_cast<float>(a * direction_[i]);
    }
    return h;
}

const Task* MockBackend::lookup(const BackendRequest& request) const {
    for (const auto& m : request.messages) {
        if (m.role != Role::user) continue;
        if (auto it = by_prompt_.find(m.content); it != by_prompt_.end()) return &tasks_[it->second];
        break;
    }
    if (auto it = by_id_.find(request.task_id); it != by_id_.end()) return &tasks_[it->second];
    return nullptr;
}

ModelMeta MockBackend::meta() const { return {model_tag(), profile_.layer_count, profile_.hidden_dim}; }

std::string MockBackend::model_tag() const { return "mock-" + profile_.name + "-" + std::to_string(profile_.seed); }

std::size_t MockBackend::requests_served() const { return served_.load(); }

BackendResponse MockBackend::generate(const BackendRequest& request) {
    if (request.messages.empty()) throw ProtocolError("messages must be non-empty");
    ++served_;
    BackendResponse resp;
    resp.model_meta = meta();
    for (const auto& m : request.messages) resp.usage.prompt_tokens += approx_tokens(m.content);

    std::string user;
    std::string system;
    int tool_rounds = 0;
    for (const auto& m : request.messages) {
        if (m.role == Role::system) system += m.content;
        if (m.role == Role::user && user.empty()) user = m.content;
        if (m.role == Role::tool) ++tool_rounds;
    }
    if (request.want_hidden_states) {
        HiddenFeatures h;
        h.values = hidden_for(user);
        h.layer_count = profile_.layer_count;
        h.hidden_dim = profile_.hidden_dim;
        h.task_id = request.task_id;
        resp.hidden = std::move(h);
    }

    const std::string prefill = request.assistant_prefill.value_or("");
    if (request.max_tokens <= 0) {
        resp.text = prefill;
        return resp;
    }

    const Task* task = lookup(request);
    auto finish = [&](std::string body) {
        resp.text = prefill + body;
        resp.usage.completion_tokens = approx_tokens(body);
        return resp;
    };
    if (!task) return finish(prefill.empty() ? "I am not sure how to answer that." : " I am not sure how to answer that.");

    const auto& steps = task->solution;
    auto call_for = [&](std::size_t k) {
        ToolCall c = steps[k].call;
        c.arguments = substitute_prev(c.arguments, k == 0 ? std::string_view() : std::string_view(steps[k - 1].expect));
        return render_call_json(c);
    };
    if (tool_rounds > 0) {
        const auto k = static_cast<std::size_t>(tool_rounds);
        if (k < steps.size()) return finish("Next I will call " + steps[k].call.tool_name + ".\n" + call_for(k));
        return finish("Based on the tool results, the answer is " + boxed(task->expected_answer.text) + ".");
    }

    const int y = necessity(*task);
    const ModeKind mode = detect_mode(system);
    const bool rta = contains(system, prompts::kReasonThenAct);
    const std::string key = task->prompt + "|" + std::string(to_string(mode)) + (rta ? "|rta" : "");
    const std::string direct_value = y == 0 ? task->expected_answer.text : mock_wrong_answer(task->expected_answer);

    enum class Path { direct, tool, narrate };
    Path path;
    bool hard = false;
    if (starts_with(prefill, kHardDirectText)) {
        return finish(direct_value + "}");
    } else if (starts_with(prefill, kHardToolText)) {
        path = Path::tool;
        hard = true;
    } else if (prefill == kSoftDirectText && unit("soft-comply", key) < profile_.soft_compliance) {
        path = Path::direct;
    } else if (prefill == kSoftToolText && unit("soft-comply", key) < profile_.soft_compliance) {
        path = Path::tool;
    } else if (mode == ModeKind::no_tool) {
        path = Path::direct;
    } else {
        const CallRate rate = profile_.call_rate.count(mode) ? profile_.call_rate.at(mode) : CallRate{};
        double p = y == 1 ? rate.needed : rate.unneeded;
        if (rta && mode != ModeKind::force) p *= y == 1 ? profile_.rta_needed_scale : profile_.rta_unneeded_scale;
        path = unit("call", key) < p ? Path::tool : Path::direct;
    }
    if (path == Path::tool && rta && profile_.rta_narrates && !hard) path = Path::narrate;

    const std::string lead = prefill.empty() ? "" : " ";
    switch (path) {
        case Path::direct:
            return finish(lead + "The answer is " + boxed(direct_value) + ".");
        case Path::narrate:
            return finish(lead + "This looks like a task for the " + steps.front().call.tool_name +
                          " tool, so I would use it to get an exact result before answering.");
        case Path::tool:
            if (hard) return finish(call_for(0).substr(prefill.size()));
            return finish(lead + "I will call " + steps.front().call.tool_name + ".\n" + call_for(0));
    }
    return finish("");
}

}  // namespace when2tool
