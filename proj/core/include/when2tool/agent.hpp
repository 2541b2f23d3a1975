#pragma once

#include "when2tool/backend.hpp"
#include "when2tool/evaluator.hpp"
#include "when2tool/task.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool {

enum class ModeKind { force, default_mode, necessary, sparse, no_tool };

std::string_view to_string(ModeKind m);  // "force", "default", "necessary", "sparse", "no_tool"
ModeKind parse_mode(std::string_view s);

struct PromptMode {
    ModeKind mode = ModeKind::default_mode;
    bool reason_then_act = false;

    friend bool operator==(const PromptMode&, const PromptMode&) = default;
};

/// "default", "sparse+rta", ...
std::string to_string(const PromptMode& m);
PromptMode parse_prompt_mode(std::string_view s);

namespace prompts {
inline constexpr std::string_view kBase =
    "You are a helpful assistant that solves tasks. You may have access to external tools. "
    "To call a tool, write a JSON object of the form {\"name\": <tool name>, \"arguments\": {...}}; "
    "the tool results will be returned to you.";
inline constexpr std::string_view kForce = "Tool use is mandatory: you must call a tool before giving your final answer.";
inline constexpr std::string_view kDefault = "";
inline constexpr std::string_view kNecessary = "Use a tool only if necessary.";
inline constexpr std::string_view kSparse = "Tool calls are expensive, use sparingly.";
inline constexpr std::string_view kNoTool = "Do not use any tools. Answer the question directly.";
inline constexpr std::string_view kReasonThenAct =
    "Before acting, first reason about whether you can solve the task on your own or whether a tool is needed, "
    "then act on that decision.";
inline constexpr std::string_view kOutputFormat = "Put your final answer in \\boxed{}.";
inline constexpr std::string_view kToolsHeader = "Available tools:";

std::string_view mode_instruction(ModeKind m);
}  // namespace prompts

enum class PrefillKind { none, soft_direct, soft_tool, hard_direct, hard_tool };

std::string_view to_string(PrefillKind k);
PrefillKind parse_prefill_kind(std::string_view s);

inline constexpr std::string_view kSoftDirectText = "I can solve this directly without using a tool.";
inline constexpr std::string_view kSoftToolText = "I need to use a tool for this question.";
inline constexpr std::string_view kHardDirectText = "\\boxed{";
inline constexpr std::string_view kHardToolText = "{\"name\": \"";

struct PrefillDirective {
    PrefillKind kind = PrefillKind::none;
    std::string text;

    static PrefillDirective make(PrefillKind kind);
    bool active() const { return kind != PrefillKind::none; }
    bool is_tool() const { return kind == PrefillKind::soft_tool || kind == PrefillKind::hard_tool; }
};

struct SkippedCall {
    std::string raw;
    std::string reason;
};

struct ParsedCalls {
    std::vector<ToolCall> calls;
    std::vector<SkippedCall> skipped;
};

/// Every JSON object {"name": str, "arguments": obj} in the text, validated and coerced
/// against `specs`. Invalid objects land in `skipped`.
ParsedCalls parse_tool_calls(std::string_view model_text, const std::vector<ToolSpec>& specs);

/// Tool schemas as shown to the model.
std::string render_tool_schemas(const std::vector<ToolSpec>& specs);

/// System + user messages.
std::vector<Message> build_prompt(const Task& task, PromptMode mode);

struct AgentLimits {
    int max_rounds = 0;  // 0: 6 single-hop, 10 multi-hop
    int max_tokens = 1024;
    double temperature = 0.0;

    int rounds_for(const Task& task) const;
};

struct Round {
    std::string model_text;
    std::vector<ToolCall> tool_calls;
    std::vector<ToolResult> tool_results;
    std::vector<SkippedCall> skipped;
    int refused_calls = 0;
};

struct Trajectory {
    std::string task_id;
    std::string env_name;
    Category category = Category::scale;
    Difficulty difficulty = Difficulty::easy;
    PromptMode mode;
    std::vector<Round> rounds;
    std::string final_output;
    Judgment judgment;
    int tool_call_count = 0;
    int refused_calls = 0;
    PrefillDirective prefill;
    TokenUsage token_usage;
    bool errored = false;
    std::string error;
    std::optional<double> probe_p;  // set by Probe&Prefill runs
};

void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);

/// Runs the round loop. Backend failures are caught and mark the trajectory errored.
Trajectory run_task(const Task& task, PromptMode mode, const PrefillDirective& prefill, Backend& backend,
                    const AgentLimits& limits = {});

struct NecessityLabel {
    std::string task_id;
    int y = 0;  // 0 tool-unnecessary, 1 tool-necessary
};

void to_json(nlohmann::json& j, const NecessityLabel& l);
void from_json(const nlohmann::json& j, NecessityLabel& l);

struct LabelingResult {
    std::vector<NecessityLabel> labels;
    std::vector<std::string> excluded;  // errored task ids
};

/// One greedy no-tool run per task; y = 0 iff judged correct.
LabelingResult run_no_tool_labeling(const std::vector<Task>& tasks, Backend& backend, const AgentLimits& limits = {},
                                    int parallel = 1);

/// Last-token hidden states of the Default-mode prompt (encoding pass only).
HiddenFeatures extract_features(const Task& task, Backend& backend);

/// Runs fn(i) for i in [0, n) on up to `parallel` threads. The first exception is rethrown.
void parallel_for(std::size_t n, int parallel, const std::function<void(std::size_t)>& fn);

}  // namespace when2tool
