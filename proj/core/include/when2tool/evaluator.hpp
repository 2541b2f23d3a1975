#pragma once

#include "when2tool/answer.hpp"
#include "when2tool/task.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace when2tool {

enum class FailureReason { none, no_boxed_answer, wrong_value, malformed };

std::string_view to_string(FailureReason r);
FailureReason parse_failure_reason(std::string_view s);

struct Judgment {
    bool correct = false;
    std::optional<AnswerValue> extracted;
    FailureReason failure_reason = FailureReason::no_boxed_answer;
};

void to_json(nlohmann::json& j, const Judgment& v);
void from_json(const nlohmann::json& j, Judgment& v);

/// Content of the last balanced \boxed{...} in the text, as a raw string answer.
std::optional<AnswerValue> extract_answer(std::string_view model_output);

/// Compares an extracted answer against the expected one using the expected kind's rules.
Judgment judge(const std::optional<AnswerValue>& extracted, const AnswerValue& expected);
Judgment judge(const std::optional<AnswerValue>& extracted, const Task& task);

/// extract_answer followed by judge.
Judgment judge_output(std::string_view model_output, const Task& task);

/// "\boxed{<text>}"
std::string boxed(std::string_view text);

}  // namespace when2tool
