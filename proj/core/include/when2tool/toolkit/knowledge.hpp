#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool::toolkit {

struct Document {
    std::string doc_id;
    std::string title;
    std::string content;
};

struct SearchHit {
    std::string doc_id;
    std::string title;
    std::string snippet;
    int score = 0;
};

inline constexpr std::size_t kSnippetChars = 100;

/// Lowercase alphanumeric tokens (hyphenated words kept whole) minus stopwords,
/// with a trailing plural 's' stripped from tokens longer than 3 characters.
std::vector<std::string> keyword_tokens(std::string_view text);

/// Keyword overlap against titles; ties broken by doc_id ascending; zero-score docs omitted.
std::vector<SearchHit> corpus_search(std::string_view query, int top_k, std::span<const Document> corpus);

/// Throws ToolError for unknown ids.
const Document& corpus_read(std::string_view doc_id, std::span<const Document> corpus);

std::size_t word_count(std::string_view text);

struct YearEntry {
    std::string event;
    int year = 0;
    std::string context;
};

struct RuleEntry {
    std::string game;
    std::string attribute;
    long long value = 0;
    std::string description;
};

/// Best keyword-overlap entry; ties resolved to the earliest entry.
std::optional<YearEntry> lookup_year(std::string_view event, std::span<const YearEntry> table);
std::optional<RuleEntry> lookup_rule(std::string_view game, std::string_view attribute,
                                     std::span<const RuleEntry> table);

void to_json(nlohmann::json& j, const Document& d);
void from_json(const nlohmann::json& j, Document& d);
void to_json(nlohmann::json& j, const YearEntry& e);
void from_json(const nlohmann::json& j, YearEntry& e);
void to_json(nlohmann::json& j, const RuleEntry& e);
void from_json(const nlohmann::json& j, RuleEntry& e);

}  // namespace when2tool::toolkit
