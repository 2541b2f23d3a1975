#include "when2tool/agent.hpp"

#include "when2tool/common.hpp"
#include "when2tool/toolkit/arith.hpp"
#include "when2tool/toolkit/dispatch.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace when2tool {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ModeKind, std::string_view>, 5> kModes{{
    {ModeKind::force, "force"},
    {ModeKind::default_mode, "default"},
    {ModeKind::necessary, "necessary"},
    {ModeKind::sparse, "sparse"},
    {ModeKind::no_tool, "no_tool"},
}};

constexpr std::array<std::pair<PrefillKind, std::string_view>, 5> kPrefills{{
    {PrefillKind::none, "none"},
    {PrefillKind::soft_direct, "soft_direct"},
    {PrefillKind::soft_tool, "soft_tool"},
    {PrefillKind::hard_direct, "hard_direct"},
    {PrefillKind::hard_tool, "hard_tool"},
}};

constexpr std::string_view kRtaSuffix = "+rta";

/// End of the JSON object starting at `open`, honoring strings; npos if unbalanced.
std::size_t match_object(std::string_view s, std::size_t open) {
    int depth = 0;
    bool in_str = false;
    for (std::size_t i = open; i < s.size(); ++i) {
        const char c = s[i];
        if (in_str) {
            if (c == '\\') ++i;
            else if (c == '"') in_str = false;
            continue;
        }
        if (c == '"') in_str = true;
        else if (c == '{') ++depth;
        else if (c == '}' && --depth == 0) return i;
    }
    return std::string_view::npos;
}

json round_to_json(const Round& r) {
    json results = json::array();
    for (const auto& t : r.tool_results) results.push_back({{"ok", t.ok}, {"payload", t.payload}, {"canonical", t.canonical}});
    json skipped = json::array();
    for (const auto& s : r.skipped) skipped.push_back({{"raw", s.raw}, {"reason", s.reason}});
    return {{"model_text", r.model_text},
            {"tool_calls", r.tool_calls},
            {"tool_results", results},
            {"skipped", skipped},
            {"refused_calls", r.refused_calls}};
}

Round round_from_json(const json& j) {
    Round r;
    r.model_text = j.at("model_text").get<std::string>();
    j.at("tool_calls").get_to(r.tool_calls);
    for (const auto& t : j.at("tool_results")) {
        ToolResult tr;
        tr.ok = t.at("ok").get<bool>();
        tr.payload = t.at("payload").get<std::string>();
        tr.canonical = t.value("canonical", std::string());
        r.tool_results.push_back(std::move(tr));
    }
    for (const auto& s : j.value("skipped", json::array())) r.skipped.push_back({s.at("raw"), s.at("reason")});
    r.refused_calls = j.value("refused_calls", 0);
    return r;
}

}  // namespace

std::string_view to_string(ModeKind m) {
    for (const auto& [k, n] : kModes) {
        if (k == m) return n;
    }
    return "?";
}

ModeKind parse_mode(std::string_view s) {
    for (const auto& [k, n] : kModes) {
        if (n == s) return k;
    }
    if (s == "no-tool" || s == "notool") return ModeKind::no_tool;
    throw ArgumentError("unknown prompt mode: " + std::string(s));
}

std::string to_string(const PromptMode& m) {
    return std::string(to_string(m.mode)) + (m.reason_then_act ? std::string(kRtaSuffix) : "");
}

PromptMode parse_prompt_mode(std::string_view s) {
    PromptMode m;
    if (s.size() > kRtaSuffix.size() && s.substr(s.size() - kRtaSuffix.size()) == kRtaSuffix) {
        m.reason_then_act = true;
        s.remove_suffix(kRtaSuffix.size());
    }
    m.mode = parse_mode(s);
    return m;
}

std::string_view prompts::mode_instruction(ModeKind m) {
    switch (m) {
        case ModeKind::force: return kForce;
        case ModeKind::default_mode: return kDefault;
        case ModeKind::necessary: return kNecessary;
        case ModeKind::sparse: return kSparse;
        case ModeKind::no_tool: return kNoTool;
    }
    return kDefault;
}

std::string_view to_string(PrefillKind k) {
    for (const auto& [kind, n] : kPrefills) {
        if (kind == k) return n;
    }
    return "?";
}

PrefillKind parse_prefill_kind(std::string_view s) {
    for (const auto& [kind, n] : kPrefills) {
        if (n == s) return kind;
    }
    throw ArgumentError("unknown prefill kind: " + std::string(s));
}

PrefillDirective PrefillDirective::make(PrefillKind kind) {
    switch (kind) {
        case PrefillKind::none: return {kind, ""};
        case PrefillKind::soft_direct: return {kind, std::string(kSoftDirectText)};
        case PrefillKind::soft_tool: return {kind, std::string(kSoftToolText)};
        case PrefillKind::hard_direct: return {kind, std::string(kHardDirectText)};
        case PrefillKind::hard_tool: return {kind, std::string(kHardToolText)};
    }
    return {};
}

ParsedCalls parse_tool_calls(std::string_view text, const std::vector<ToolSpec>& specs) {
    ParsedCalls out;
    std::size_t pos = text.find('{');
    while (pos != std::string_view::npos) {
        const std::size_t end = match_object(text, pos);
        if (end == std::string_view::npos) break;
        const std::string_view raw = text.substr(pos, end - pos + 1);
        json j = json::parse(raw, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            pos = text.find('{', pos + 1);
            continue;
        }
        pos = text.find('{', end + 1);
        if (!j.contains("name")) continue;
        auto skip = [&](std::string why) { out.skipped.push_back({std::string(raw), std::move(why)}); };
        if (!j.at("name").is_string()) {
            skip("name is not a string");
            continue;
        }
        const std::string name = j.at("name").get<std::string>();
        const auto spec = std::find_if(specs.begin(), specs.end(), [&](const ToolSpec& s) { return s.name == name; });
        if (spec == specs.end()) {
            skip("unknown tool '" + name + "'");
            continue;
        }
        if (!j.contains("arguments")) {
            skip("missing arguments");
            continue;
        }
        try {
            ToolCall call;
            call.tool_name = name;
            call.arguments = toolkit::coerce_arguments(*spec, j.at("arguments"));
            out.calls.push_back(std::move(call));
        } catch (const std::exception& e) {
            skip(e.what());
        }
    }
    return out;
}

std::string render_tool_schemas(const std::vector<ToolSpec>& specs) {
    std::string out(prompts::kToolsHeader);
    for (const auto& s : specs) out += "\n" + json(s).dump();
    return out;
}

std::vector<Message> build_prompt(const Task& task, PromptMode mode) {
    std::string system(prompts::kBase);
    auto add = [&](std::string_view part) {
        if (!part.empty()) system += "\n" + std::string(part);
    };
    add(prompts::mode_instruction(mode.mode));
    if (mode.reason_then_act) add(prompts::kReasonThenAct);
    if (mode.mode != ModeKind::no_tool) add(render_tool_schemas(task.tool_specs));
    add(prompts::kOutputFormat);
    return {{Role::system, system}, {Role::user, task.prompt}};
}

int AgentLimits::rounds_for(const Task& task) const {
    if (max_rounds > 0) return max_rounds;
    return task.is_multi_hop() ? 10 : 6;
}

Trajectory run_task(const Task& task, PromptMode mode, const PrefillDirective& prefill, Backend& backend,
                    const AgentLimits& limits) {
    Trajectory t;
    t.task_id = task.task_id;
    t.env_name = task.env_name;
    t.category = task.category;
    t.difficulty = task.difficulty;
    t.mode = mode;
    t.prefill = prefill;

    std::vector<Message> messages = build_prompt(task, mode);
    toolkit::ToolSession session;
    const int max_rounds = limits.rounds_for(task);
    try {
        for (int r = 0; r < max_rounds; ++r) {
            BackendRequest req;
            req.messages = messages;
            if (r == 0 && prefill.active()) req.assistant_prefill = prefill.text;
            req.max_tokens = limits.max_tokens;
            req.temperature = limits.temperature;
            req.task_id = task.task_id;
            const BackendResponse resp = backend.generate(req);
            t.token_usage += resp.usage;

            Round round;
            round.model_text = resp.text;
            ParsedCalls parsed = parse_tool_calls(resp.text, task.tool_specs);
            round.skipped = std::move(parsed.skipped);
            messages.push_back({Role::assistant, resp.text});

            if (mode.mode == ModeKind::no_tool) {
                round.refused_calls = static_cast<int>(parsed.calls.size());
                t.refused_calls += round.refused_calls;
                t.rounds.push_back(std::move(round));
                break;
            }
            if (parsed.calls.empty()) {
                t.rounds.push_back(std::move(round));
                break;
            }
            std::string tool_msg;
            for (auto& call : parsed.calls) {
                call.call_index = t.tool_call_count++;
                ToolResult res = toolkit::execute_tool(call, task.env_state, session);
                if (!tool_msg.empty()) tool_msg += "\n";
                tool_msg += call.tool_name + " -> " + res.render();
                round.tool_calls.push_back(std::move(call));
                round.tool_results.push_back(std::move(res));
            }
            messages.push_back({Role::tool, tool_msg});
            t.rounds.push_back(std::move(round));
        }
    } catch (const std::exception& e) {
        t.errored = true;
        t.error = e.what();
    }
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        if (i) t.final_output += "\n";
        t.final_output += t.rounds[i].model_text;
    }
    t.judgment = judge_output(t.final_output, task);
    return t;
}

void to_json(json& j, const Trajectory& t) {
    json rounds = json::array();
    for (const auto& r : t.rounds) rounds.push_back(round_to_json(r));
    j = json{{"task_id", t.task_id},
             {"env_name", t.env_name},
             {"category", to_string(t.category)},
             {"difficulty", to_string(t.difficulty)},
             {"mode", to_string(t.mode)},
             {"rounds", rounds},
             {"final_output", t.final_output},
             {"judgment", t.judgment},
             {"tool_call_count", t.tool_call_count},
             {"refused_calls", t.refused_calls},
             {"prefill", {{"kind", to_string(t.prefill.kind)}, {"text", t.prefill.text}}},
             {"token_usage", t.token_usage},
             {"errored", t.errored},
             {"error", t.error}};
    j["probe_p"] = t.probe_p ? json(*t.probe_p) : json(nullptr);
}

void from_json(const json& j, Trajectory& t) {
    t.task_id = j.at("task_id").get<std::string>();
    t.env_name = j.at("env_name").get<std::string>();
    t.category = parse_category(j.at("category").get<std::string>());
    t.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    t.mode = parse_prompt_mode(j.at("mode").get<std::string>());
    t.rounds.clear();
    for (const auto& r : j.at("rounds")) t.rounds.push_back(round_from_json(r));
    t.final_output = j.at("final_output").get<std::string>();
    j.at("judgment").get_to(t.judgment);
    t.tool_call_count = j.at("tool_call_count").get<int>();
    t.refused_calls = j.value("refused_calls", 0);
    t.prefill.kind = parse_prefill_kind(j.at("prefill").at("kind").get<std::string>());
    t.prefill.text = j.at("prefill").at("text").get<std::string>();
    j.at("token_usage").get_to(t.token_usage);
    t.errored = j.value("errored", false);
    t.error = j.value("error", std::string());
    if (j.contains("probe_p") && !j.at("probe_p").is_null()) t.probe_p = j.at("probe_p").get<double>();
}

void to_json(json& j, const NecessityLabel& l) { j = json{{"task_id", l.task_id}, {"y", l.y}}; }

void from_json(const json& j, NecessityLabel& l) {
    l.task_id = j.at("task_id").get<std::string>();
    l.y = j.at("y").get<int>();
    if (l.y != 0 && l.y != 1) throw ArgumentError("label must be 0 or 1");
}

void parallel_for(std::size_t n, int parallel, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, parallel)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!first) first = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

LabelingResult run_no_tool_labeling(const std::vector<Task>& tasks, Backend& backend, const AgentLimits& limits,
                                    int parallel) {
    AgentLimits greedy = limits;
    greedy.temperature = 0.0;
    std::vector<Trajectory> runs(tasks.size());
    parallel_for(tasks.size(), parallel, [&](std::size_t i) {
        runs[i] = run_task(tasks[i], {ModeKind::no_tool, false}, PrefillDirective::make(PrefillKind::none), backend, greedy);
    });
    LabelingResult out;
    for (const auto& t : runs) {
        if (t.errored) {
            out.excluded.push_back(t.task_id);
            continue;
        }
        out.labels.push_back({t.task_id, t.judgment.correct ? 0 : 1});
    }
    return out;
}

HiddenFeatures extract_features(const Task& task, Backend& backend) {
    BackendRequest req;
    req.messages = build_prompt(task, {ModeKind::default_mode, false});
    req.max_tokens = 0;
    req.want_hidden_states = true;
    req.task_id = task.task_id;
    BackendResponse r = backend.generate(req);
    if (!r.hidden) throw ProtocolError("backend returned no hidden states for " + task.task_id);
    r.hidden->task_id = task.task_id;
    return std::move(*r.hidden);
}

}  // namespace when2tool
