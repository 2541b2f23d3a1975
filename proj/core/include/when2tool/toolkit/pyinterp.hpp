#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace when2tool::toolkit {

inline constexpr std::size_t kDefaultCodeSteps = 2'000'000;

/// Runs a program in the supported Python subset and returns its stdout with
/// the trailing newline stripped.
///
/// Subset: int (64-bit, overflow is an error), bool, str, list, tuple, None;
/// def / return with recursion, if / elif / else, for, while, break, continue,
/// pass; assignment incl. tuple unpacking, subscript targets and augmented
/// assignment; conditional expressions; list comprehensions and generator
/// expressions; indexing and slicing; builtins print len sum min max abs range
/// str int bool sorted list reversed enumerate zip any all divmod; list methods
/// append pop insert index count; str methods upper lower join split replace
/// count find startswith endswith strip.
///
/// Throws ToolError for constructs outside the subset, runtime errors, and
/// when the step budget is exhausted.
std::string code_run(std::string_view code, std::size_t step_budget = kDefaultCodeSteps);

}  // namespace when2tool::toolkit
