#pragma once

#include "when2tool/answer.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace when2tool::toolkit {

struct RegexMatch {
    std::size_t start = 0;
    std::size_t end = 0;
    // Index 0 is the whole match; unset groups are nullopt.
    std::vector<std::optional<std::pair<std::size_t, std::size_t>>> groups;

    std::optional<std::string> group(std::string_view text, std::size_t i) const;
};

/// Backtracking engine over a Python-`re`-compatible subset: literals, escapes
/// (\d \w \s \b \B \A \Z and negations), classes, . ^ $, greedy and lazy
/// quantifiers, capturing / non-capturing / named groups, alternation,
/// lookahead, fixed-width lookbehind and backreferences. Anything else is a ToolError.
class Regex {
public:
    explicit Regex(std::string_view pattern, std::size_t step_budget = 2'000'000);
    ~Regex();
    Regex(Regex&&) noexcept;
    Regex& operator=(Regex&&) noexcept;

    std::size_t group_count() const;

    /// Anchored at `pos`.
    std::optional<RegexMatch> match_at(std::string_view text, std::size_t pos) const;
    /// First match starting at or after `pos`. With `must_advance`, a match
    /// starting at `pos` must be non-empty.
    std::optional<RegexMatch> search(std::string_view text, std::size_t pos = 0, bool must_advance = false) const;
    std::vector<RegexMatch> finditer(std::string_view text) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// re.findall: full matches (0 groups), group 1 (1 group), or tuples (>1 groups).
PyLiteral regex_findall(std::string_view pattern, std::string_view text);
/// re.match / re.search: group 0, or nullopt for None.
std::optional<std::string> regex_match(std::string_view pattern, std::string_view text);
std::optional<std::string> regex_search(std::string_view pattern, std::string_view text);
/// re.sub with \1, \g<1>, \g<name> and standard escapes in the template.
std::string regex_sub(std::string_view pattern, std::string_view repl, std::string_view text);

/// Canonical answer rendering for an operation: findall → Python list repr;
/// match/search → matched text or "None"; sub → resulting text.
std::string regex_op(std::string_view pattern, std::string_view text, std::string_view op,
                     std::string_view repl = {});

}  // namespace when2tool::toolkit
