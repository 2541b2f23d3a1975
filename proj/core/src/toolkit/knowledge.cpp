#include "when2tool/toolkit/knowledge.hpp"

#include "when2tool/toolkit/arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace when2tool::toolkit {

namespace {

constexpr std::array<std::string_view, 48> kStopwords{
    "a",    "an",   "the",  "of",    "in",   "on",   "at",    "to",   "for",  "by",    "with", "and",
    "or",   "is",   "are",  "was",   "were", "be",   "what",  "which", "who", "whom",  "when", "where",
    "how",  "many", "much", "does",  "did",  "do",   "it",    "its",  "this", "that",  "from", "as",
    "year", "first", "about", "into", "there", "their", "has", "have", "had", "per", "standard", "s"};

bool is_stopword(std::string_view t) {
    return std::find(kStopwords.begin(), kStopwords.end(), t) != kStopwords.end();
}

std::set<std::string> token_set(std::string_view s) {
    const auto v = keyword_tokens(s);
    return {v.begin(), v.end()};
}

int overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    int n = 0;
    for (const auto& t : a) n += static_cast<int>(b.count(t));
    return n;
}

}  // namespace

std::vector<std::string> keyword_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        while (!cur.empty() && cur.back() == '-') cur.pop_back();
        while (!cur.empty() && cur.front() == '-') cur.erase(cur.begin());
        if (cur.size() > 3 && cur.back() == 's' && cur[cur.size() - 2] != 's') cur.pop_back();
        if (!cur.empty() && !is_stopword(cur)) out.push_back(cur);
        cur.clear();
    };
    for (char c : text) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || (c == '-' && !cur.empty())) {
            cur.push_back(static_cast<char>(std::tolower(u)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::vector<SearchHit> corpus_search(std::string_view query, int top_k, std::span<const Document> corpus) {
    if (top_k <= 0) throw ToolError("top_k must be positive");
    const auto q = token_set(query);
    std::vector<SearchHit> hits;
    for (const auto& d : corpus) {
        const int score = overlap(q, token_set(d.title));
        if (score <= 0) continue;
        hits.push_back({d.doc_id, d.title, d.content.substr(0, kSnippetChars), score});
    }
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (hits.size() > static_cast<std::size_t>(top_k)) hits.resize(static_cast<std::size_t>(top_k));
    return hits;
}

const Document& corpus_read(std::string_view doc_id, std::span<const Document> corpus) {
    for (const auto& d : corpus) {
        if (d.doc_id == doc_id) return d;
    }
    throw ToolError("document not found: " + std::string(doc_id));
}

std::size_t word_count(std::string_view text) {
    std::size_t n = 0;
    bool in = false;
    for (char c : text) {
        const bool sp = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!sp && !in) ++n;
        in = !sp;
    }
    return n;
}

std::optional<YearEntry> lookup_year(std::string_view event, std::span<const YearEntry> table) {
    const auto q = token_set(event);
    int best = 0;
    const YearEntry* hit = nullptr;
    for (const auto& e : table) {
        const int s = overlap(q, token_set(e.event));
        if (s > best) {
            best = s;
            hit = &e;
        }
    }
    if (!hit) return std::nullopt;
    return *hit;
}

std::optional<RuleEntry> lookup_rule(std::string_view game, std::string_view attribute,
                                     std::span<const RuleEntry> table) {
    const auto g = token_set(game);
    const auto a = token_set(attribute);
    int best_game = 0;
    for (const auto& e : table) best_game = std::max(best_game, overlap(g, token_set(e.game)));
    if (best_game == 0) return std::nullopt;
    int best = 0;
    const RuleEntry* hit = nullptr;
    for (const auto& e : table) {
        if (overlap(g, token_set(e.game)) != best_game) continue;
        const int s = overlap(a, token_set(e.attribute));
        if (s > best) {
            best = s;
            hit = &e;
        }
    }
    if (!hit) return std::nullopt;
    return *hit;
}

void to_json(nlohmann::json& j, const Document& d) {
    j = nlohmann::json{{"doc_id", d.doc_id}, {"title", d.title}, {"content", d.content}};
}

void from_json(const nlohmann::json& j, Document& d) {
    d.doc_id = j.at("doc_id").get<std::string>();
    d.title = j.at("title").get<std::string>();
    d.content = j.at("content").get<std::string>();
}

void to_json(nlohmann::json& j, const YearEntry& e) {
    j = nlohmann::json{{"event", e.event}, {"year", e.year}, {"context", e.context}};
}

void from_json(const nlohmann::json& j, YearEntry& e) {
    e.event = j.at("event").get<std::string>();
    e.year = j.at("year").get<int>();
    e.context = j.value("context", std::string{});
}

void to_json(nlohmann::json& j, const RuleEntry& e) {
    j = nlohmann::json{{"game", e.game}, {"attribute", e.attribute}, {"value", e.value}, {"description", e.description}};
}

void from_json(const nlohmann::json& j, RuleEntry& e) {
    e.game = j.at("game").get<std::string>();
    e.attribute = j.at("attribute").get<std::string>();
    e.value = j.at("value").get<long long>();
    e.description = j.value("description", std::string{});
}

}  // namespace when2tool::toolkit
