#pragma once

#include "when2tool/task.hpp"
#include "when2tool/toolkit/arith.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string_view>
#include <vector>

namespace when2tool::toolkit {

/// Mutable tool state scoped to one trajectory.
struct ToolSession {
    CalculatorSession calc;
};

/// Every tool known to the harness.
const std::vector<ToolSpec>& all_tool_specs();
const ToolSpec* find_tool(std::string_view name);

/// The tools exposed by an environment, in presentation order.
/// Throws ConfigError for an unknown environment.
std::vector<ToolSpec> tools_for_env(std::string_view env_name);

/// Validates and normalizes arguments against a spec. Unknown keys are dropped;
/// missing required parameters and type mismatches throw ToolError.
nlohmann::json coerce_arguments(const ToolSpec& spec, const nlohmann::json& args);

/// Executes one call. Never throws for tool-level problems: unknown tools,
/// bad arguments and runtime failures come back as ToolResult::failure.
ToolResult execute_tool(const ToolCall& call, const nlohmann::json& env_state, ToolSession& session);

}  // namespace when2tool::toolkit
