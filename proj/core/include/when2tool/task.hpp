#pragma once

#include "when2tool/answer.hpp"
#include "when2tool/common.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace when2tool {

/// Semantic type of a tool parameter. Drives argument coercion.
enum class ParamType { string, integer, number, boolean, number_list, int_list, list, matrix, meeting, meeting_list };

std::string_view to_string(ParamType t);
ParamType parse_param_type(std::string_view s);

struct ToolParam {
    std::string name;
    ParamType type = ParamType::string;
    bool required = true;
    std::string description;
};

struct ToolSpec {
    std::string name;
    std::string description;
    std::vector<ToolParam> parameters;

    const ToolParam* find_param(std::string_view name) const;
};

struct ToolCall {
    std::string tool_name;
    nlohmann::json arguments = nlohmann::json::object();
    int call_index = 0;
};

struct ToolResult {
    bool ok = false;
    std::string payload;          // single-line text shown to the agent
    nlohmann::json data;          // machine-readable structure
    std::string canonical;        // answer-form rendering of the primary value (empty when n/a)

    static ToolResult success(std::string payload, nlohmann::json data, std::string canonical);
    static ToolResult failure(std::string message);

    /// payload plus the machine-readable JSON, as appended to the transcript.
    std::string render() const;
};

/// How one step of a task's designated tool sequence is checked.
enum class StepCheck {
    value,       // result.canonical == expect
    contains,    // result.payload contains expect
    top_hit,     // first search hit has doc_id == expect
    nonempty,    // expect is "Yes"/"No" for a non-empty/empty structured list
    first_slot,  // expect is "HH:MM-HH:MM" of the first free slot of the requested duration
};

std::string_view to_string(StepCheck c);
StepCheck parse_step_check(std::string_view s);

/// One step of the oracle tool sequence. String arguments may contain the
/// placeholder "{prev}", which is replaced by the previous step's `expect`.
struct SolutionStep {
    ToolCall call;
    StepCheck check = StepCheck::value;
    std::string expect;
};

inline constexpr std::string_view kPrevPlaceholder = "{prev}";

/// Returns `args` with every "{prev}" inside string values replaced.
nlohmann::json substitute_prev(const nlohmann::json& args, std::string_view prev);

struct Task {
    std::string task_id;  // env:difficulty:split:index
    std::string env_name;
    Category category = Category::scale;
    Difficulty difficulty = Difficulty::easy;
    Split split = Split::test;
    int index = 0;
    std::string prompt;
    AnswerValue expected_answer;
    std::vector<ToolSpec> tool_specs;
    nlohmann::json env_state = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<SolutionStep> solution;

    bool is_multi_hop() const;
};

void to_json(nlohmann::json& j, const ToolParam& p);
void from_json(const nlohmann::json& j, ToolParam& p);
void to_json(nlohmann::json& j, const ToolSpec& s);
void from_json(const nlohmann::json& j, ToolSpec& s);
void to_json(nlohmann::json& j, const ToolCall& c);
void from_json(const nlohmann::json& j, ToolCall& c);
void to_json(nlohmann::json& j, const SolutionStep& s);
void from_json(const nlohmann::json& j, SolutionStep& s);
void to_json(nlohmann::json& j, const Task& t);
void from_json(const nlohmann::json& j, Task& t);

/// Canonical one-line JSON (sorted keys, compact). Byte-stable.
std::string serialize_task(const Task& t);
Task deserialize_task(std::string_view line);

}  // namespace when2tool
