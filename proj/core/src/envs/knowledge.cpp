#include "envs/envs.hpp"

#include "when2tool/toolkit/knowledge.hpp"
#include "when2tool/toolkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace when2tool::envs {

using namespace when2tool::toolkit;

namespace {

constexpr int kRetrieverDistractors = 7;
constexpr int kTableDistractors = 9;

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

/// `needle` occurs in `hay` delimited by non-alphanumerics.
bool contains_word(const std::string& hay, const std::string& needle) {
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        const bool left = pos == 0 || !is_word_char(hay[pos - 1]);
        const std::size_t end = pos + needle.size();
        const bool right = end >= hay.size() || !is_word_char(hay[end]);
        if (left && right) return true;
    }
    return false;
}

/// Distinct "doc-NNN" ids.
std::vector<std::string> doc_ids(Rng& rng, std::size_t n) {
    std::set<long long> used;
    std::vector<std::string> out;
    while (out.size() < n) {
        const long long v = rng.uniform(100, 999);
        if (used.insert(v).second) out.push_back("doc-" + std::to_string(v));
    }
    return out;
}

/// Target first in `docs`; assigns ids, shuffles, and returns the target id.
std::string finalize_corpus(Rng& rng, std::vector<Document>& docs) {
    const auto ids = doc_ids(rng, docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) docs[i].doc_id = ids[i];
    const std::string target = docs.front().doc_id;
    rng.shuffle(docs);
    return target;
}

Draft retriever_draft(std::string prompt, const std::string& query, const std::string& answer, std::vector<Document> docs,
                      Rng& rng) {
    const std::string target = finalize_corpus(rng, docs);
    const auto hits = corpus_search(query, 3, docs);
    if (hits.empty() || hits.front().doc_id != target) throw std::logic_error("retriever query does not rank the target first");
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_str(answer);
    d.env_state["corpus"] = docs;
    d.solution.push_back(step("search_corpus", {{"query", query}, {"top_k", 3}}, StepCheck::top_hit, target));
    d.solution.push_back(step("read_doc", {{"doc_id", target}}, StepCheck::contains, answer));
    return d;
}

Draft retriever_from_pool(GenContext& ctx, const std::vector<FactEntry>& pool) {
    const FactEntry& f = pool[pool_slot(ctx, pool.size())];
    std::vector<Document> docs{{"", f.title, f.content}};
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    ctx.rng.shuffle(order);
    for (std::size_t i : order) {
        if (static_cast<int>(docs.size()) > kRetrieverDistractors) break;
        const FactEntry& o = pool[i];
        if (o.title == f.title || contains_word(o.content, f.answer)) continue;
        docs.push_back({"", o.title, o.content});
    }
    return retriever_draft(f.question, f.title, f.answer, std::move(docs), ctx.rng);
}

struct SyntheticAttr {
    const char* name;
    std::string (*value)(Rng&);
};

char letter(Rng& r, char lo = 'A', char hi = 'Z') { return static_cast<char>(r.uniform(lo, hi)); }
std::string digits(Rng& r, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += static_cast<char>('0' + r.uniform(0, 9));
    return s;
}

const std::vector<SyntheticAttr>& synthetic_attrs() {
    static const std::vector<SyntheticAttr> v{
        {"coolant class", [](Rng& r) { return "Class-" + std::string(1, letter(r, 'A', 'H')) + std::to_string(r.uniform(1, 9)); }},
        {"registry code", [](Rng& r) { return "RG-" + std::to_string(r.uniform(1000, 9999)); }},
        {"home sector", [](Rng& r) { return "Sector-" + std::string(1, letter(r)) + digits(r, 2); }},
        {"signal band", [](Rng& r) { return "Band-" + std::to_string(r.uniform(10, 99)) + std::string(1, letter(r)); }},
        {"commanding officer", [](Rng& r) { return fictional_word(r, 2) + " " + fictional_word(r, 2); }},
        {"founding cycle", [](Rng& r) { return "Cycle-" + std::to_string(r.uniform(100, 999)); }},
        {"supply depot", [](Rng& r) { return "Depot " + fictional_word(r, 2); }},
        {"clearance tier", [](Rng& r) { return "Tier-" + std::string(1, letter(r, 'A', 'F')) + std::to_string(r.uniform(1, 9)); }},
    };
    return v;
}

constexpr std::array<std::string_view, 8> kEntityKinds{"Taskforce", "Outpost", "Vessel", "Station",
                                                       "Archive",   "Division", "Consortium", "Relay"};

std::string synthetic_entity(Rng& r) {
    return fictional_word(r, 2) + "-" + std::to_string(r.uniform(10, 99));
}

Document synthetic_doc(const std::string& kind, const std::string& entity, const std::string& attr, const std::string& value) {
    return {"", kind + " " + entity + " " + attr,
            kind + " " + entity + " is recorded with " + attr + " " + value + ". The entry was last audited in the central registry."};
}

// ---- year / rule tables

Draft year_draft(std::string prompt, const YearFact& target, std::vector<YearFact> distractors, Rng& rng) {
    std::vector<YearEntry> table{{target.event, target.year, target.context}};
    for (auto& f : distractors) table.push_back({f.event, f.year, f.context});
    rng.shuffle(table);
    const auto hit = lookup_year(target.event, table);
    if (!hit || hit->event != target.event) throw std::logic_error("year lookup does not resolve the target");
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_int(std::to_string(target.year));
    d.env_state["events"] = table;
    d.solution.push_back(step("lookup_year", {{"event", target.event}}, StepCheck::value, d.answer.text));
    return d;
}

template <typename T, typename Same>
std::vector<T> pick_distinct(Rng& rng, const std::vector<T>& pool, int n, Same same) {
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<T> out;
    for (std::size_t i : order) {
        if (static_cast<int>(out.size()) >= n) break;
        if (!same(pool[i])) out.push_back(pool[i]);
    }
    return out;
}

Draft rule_draft(std::string prompt, const RuleFact& target, std::vector<RuleFact> distractors, Rng& rng) {
    std::vector<RuleEntry> table{{target.game, target.attribute, target.value, target.description}};
    for (auto& f : distractors) table.push_back({f.game, f.attribute, f.value, f.description});
    rng.shuffle(table);
    const auto hit = lookup_rule(target.game, target.attribute, table);
    if (!hit || hit->game != target.game || hit->attribute != target.attribute) {
        throw std::logic_error("rule lookup does not resolve the target");
    }
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_int(std::to_string(target.value));
    d.env_state["rules"] = table;
    d.solution.push_back(step("lookup_rule", {{"game", target.game}, {"attribute", target.attribute}}, StepCheck::value, d.answer.text));
    return d;
}

struct FictionalYearTemplate {
    const char* event;     // {X} is the invented name
    const char* question;
};

constexpr FictionalYearTemplate kYearTemplates[] = {
    {"Accord of {X}", "What year was the Accord of {X} signed?"},
    {"Siege of {X}", "What year did the Siege of {X} take place?"},
    {"Founding of {X}", "What year was {X} founded?"},
    {"Treaty of {X}", "What year was the Treaty of {X} signed?"},
    {"Great Flood of {X}", "What year did the Great Flood of {X} occur?"},
    {"Coronation of Queen {X}", "What year was Queen {X} crowned?"},
    {"Schism of {X}", "What year did the Schism of {X} occur?"},
    {"Charter of {X}", "What year was the Charter of {X} granted?"},
};

std::string fill(std::string_view tmpl, const std::string& x) {
    std::string s(tmpl);
    for (auto p = s.find("{X}"); p != std::string::npos; p = s.find("{X}")) s.replace(p, 3, x);
    return s;
}

YearFact fictional_year(Rng& r, std::string* question) {
    const auto& t = kYearTemplates[r.uniform(0, std::size(kYearTemplates) - 1)];
    const std::string name = fictional_word(r, r.uniform_int(2, 3));
    const int year = r.uniform_int(1100, 1950);
    if (question) *question = fill(t.question, name);
    const std::string event = fill(t.event, name);
    return YearFact{event, year, fill(t.question, name), event + " is recorded in the chronicle of " + fictional_word(r, 2) + "."};
}

struct FictionalRuleTemplate {
    const char* attribute;
    const char* question;  // {X} is the game name
    long long lo, hi;
};

constexpr FictionalRuleTemplate kRuleTemplates[] = {
    {"cards in a deck", "How many cards are in a {X} deck?", 20, 160},
    {"squares on the board", "How many squares are on a {X} board?", 16, 400},
    {"pieces per player", "How many pieces does each player start with in {X}?", 3, 40},
    {"dice in a set", "How many dice are used in a game of {X}?", 2, 15},
    {"points needed to win", "How many points are needed to win a game of {X}?", 7, 250},
    {"players per team", "How many players are on each team in {X}?", 2, 20},
    {"rounds in a match", "How many rounds are in a match of {X}?", 3, 30},
};

RuleFact fictional_rule(Rng& r) {
    const auto& t = kRuleTemplates[r.uniform(0, std::size(kRuleTemplates) - 1)];
    const std::string game = fictional_word(r, 2);
    const long long v = r.uniform(t.lo, t.hi);
    return RuleFact{game, t.attribute, v, fill(t.question, game),
                    "In " + game + ", the number of " + std::string(t.attribute) + " is " + std::to_string(v) + "."};
}

// ---- hash / codec

Draft hash_draft(const std::string& algorithm, const std::string& input) {
    Draft d;
    d.prompt = "What is the " + upper(algorithm) + " hash of " + quoted(input) + "?";
    d.answer = ans_str(hash_compute(algorithm, input));
    d.solution.push_back(step("compute_hash", {{"algorithm", algorithm}, {"input_string", input}}, StepCheck::value, d.answer.text));
    return d;
}

std::string scheme_label(const std::string& scheme) {
    if (scheme == "morse") return "Morse code";
    if (scheme == "rot13") return "ROT13";
    if (scheme == "caesar") return "Caesar cipher";
    return "the " + scheme + " cipher";
}

Draft codec_draft(const std::string& scheme, CodecDirection dir, const std::string& input, int shift = 0) {
    Draft d;
    const bool enc = dir == CodecDirection::encode;
    std::string how = scheme_label(scheme);
    if (scheme == "caesar") how += " with shift " + std::to_string(shift);
    d.prompt = enc ? "Encode " + quoted(input) + " in " + how + "." : "Decode " + quoted(input) + " using " + how + ".";
    d.answer = ans_str(codec(scheme, dir, input, shift));
    json args{{"scheme", scheme}, {enc ? "plaintext" : "ciphertext", input}};
    if (scheme == "caesar") args["shift"] = shift;
    d.solution.push_back(step(enc ? "encode" : "decode", args, StepCheck::value, d.answer.text));
    return d;
}

Draft random_codec(Rng& r, const std::string& scheme, const std::string& word, int shift = 0) {
    const bool enc = r.bernoulli(0.5);
    if (enc) return codec_draft(scheme, CodecDirection::encode, word, shift);
    return codec_draft(scheme, CodecDirection::decode, codec(scheme, CodecDirection::encode, word, shift), shift);
}

std::string random_alnum(Rng& r, int n) {
    static constexpr std::string_view kAlnum = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    std::string s;
    for (int i = 0; i < n; ++i) s += kAlnum[static_cast<std::size_t>(r.uniform(0, kAlnum.size() - 1))];
    return s;
}

}  // namespace

// ---------------------------------------------------------------- Retriever

Draft gen_retriever(GenContext& ctx) {
    if (ctx.difficulty == Difficulty::easy) return retriever_from_pool(ctx, retriever_easy_pool());
    if (ctx.difficulty == Difficulty::medium) return retriever_from_pool(ctx, retriever_medium_pool());

    Rng& r = ctx.rng;
    const auto& attrs = synthetic_attrs();
    const std::string kind(kEntityKinds[r.uniform(0, kEntityKinds.size() - 1)]);
    const auto& attr = attrs[r.uniform(0, attrs.size() - 1)];
    const std::string entity = synthetic_entity(r);
    const std::string value = attr.value(r);
    std::vector<Document> docs{synthetic_doc(kind, entity, attr.name, value)};
    std::set<std::string> entities{entity};
    while (static_cast<int>(docs.size()) <= kRetrieverDistractors) {
        const std::string e = synthetic_entity(r);
        const auto& a = attrs[r.uniform(0, attrs.size() - 1)];
        const std::string k(kEntityKinds[r.uniform(0, kEntityKinds.size() - 1)]);
        const std::string v = a.value(r);
        if (!entities.insert(e).second || v == value) continue;
        Document doc = synthetic_doc(k, e, a.name, v);
        if (contains_word(doc.content, value)) continue;
        docs.push_back(std::move(doc));
    }
    return retriever_draft("What is the " + std::string(attr.name) + " for " + kind + " " + entity + "?", entity, value,
                           std::move(docs), r);
}

// ---------------------------------------------------------------- HistoricalYear

Draft gen_historical_year(GenContext& ctx) {
    Rng& r = ctx.rng;
    if (ctx.difficulty != Difficulty::hard) {
        const auto& pool = ctx.difficulty == Difficulty::easy ? year_easy_pool() : year_medium_pool();
        const YearFact& f = pool[pool_slot(ctx, pool.size())];
        auto others = pick_distinct(r, pool, kTableDistractors, [&](const YearFact& o) { return o.event == f.event; });
        return year_draft(f.question, f, std::move(others), r);
    }
    std::string question;
    const YearFact target = fictional_year(r, &question);
    std::vector<YearFact> others;
    std::set<std::string> events{target.event};
    while (static_cast<int>(others.size()) < kTableDistractors) {
        YearFact o = fictional_year(r, nullptr);
        if (events.insert(o.event).second) others.push_back(std::move(o));
    }
    return year_draft(question, target, std::move(others), r);
}

// ---------------------------------------------------------------- GameRule

Draft gen_game_rule(GenContext& ctx) {
    Rng& r = ctx.rng;
    if (ctx.difficulty != Difficulty::hard) {
        const auto& pool = ctx.difficulty == Difficulty::easy ? rule_easy_pool() : rule_medium_pool();
        const RuleFact& f = pool[pool_slot(ctx, pool.size())];
        auto others = pick_distinct(r, pool, kTableDistractors,
                                    [&](const RuleFact& o) { return o.game == f.game && o.attribute == f.attribute; });
        return rule_draft(f.question, f, std::move(others), r);
    }
    const RuleFact target = fictional_rule(r);
    std::vector<RuleFact> others;
    std::set<std::string> games{target.game};
    while (static_cast<int>(others.size()) < kTableDistractors) {
        RuleFact o = fictional_rule(r);
        if (games.insert(o.game).second) others.push_back(std::move(o));
    }
    return rule_draft(target.question, target, std::move(others), r);
}

// ---------------------------------------------------------------- Hash

Draft gen_hash(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy:
            return hash_draft(r.bernoulli(0.5) ? "md5" : "sha1", r.pick(hash_easy_words()));
        case Difficulty::medium: {
            static const std::vector<std::string> algs{"md5", "sha1", "sha256"};
            return hash_draft(r.pick(algs), r.pick(phrase_words_a()) + " " + r.pick(phrase_words_b()));
        }
        case Difficulty::hard:
            return hash_draft(std::string(kCustomHashes[r.uniform(0, kCustomHashes.size() - 1)]), random_alnum(r, 6));
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Decoding

Draft gen_decoding(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy:
            return random_codec(r, r.bernoulli(0.5) ? "morse" : "rot13", r.pick(cipher_easy_words()));
        case Difficulty::medium:
            if (r.bernoulli(0.5)) {
                int shift = r.uniform_int(1, 24);
                if (shift >= 13) ++shift;  // 1..25 without 13
                return random_codec(r, "caesar", r.pick(cipher_long_words()), shift);
            }
            return random_codec(r, "morse", r.pick(cipher_long_words()));
        case Difficulty::hard: {
            static const std::vector<std::string> schemes{"scramble1", "scramble2", "alpha7", "reverse"};
            return random_codec(r, r.pick(schemes), r.pick(cipher_long_words()));
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- fixtures

std::vector<Fixture> fixtures_knowledge(std::string_view env) {
    std::vector<Fixture> out;
    Rng rng(0x6b6e6f776c656467ULL);
    if (env == "RetrieverEnv") {
        auto find = [](const std::vector<FactEntry>& pool, std::string_view subject) {
            for (const auto& f : pool) {
                if (f.subject == subject) return f;
            }
            throw std::logic_error("missing fixture fact");
        };
        for (auto [d, f] : {std::pair{Difficulty::easy, find(retriever_easy_pool(), "France")},
                            std::pair{Difficulty::medium, find(retriever_medium_pool(), "Tin")}}) {
            const auto& pool = d == Difficulty::easy ? retriever_easy_pool() : retriever_medium_pool();
            std::vector<Document> docs{{"", f.title, f.content}};
            for (const auto& o : pool) {
                if (docs.size() > static_cast<std::size_t>(kRetrieverDistractors)) break;
                if (o.title != f.title && !contains_word(o.content, f.answer)) docs.push_back({"", o.title, o.content});
            }
            out.push_back({d, retriever_draft(f.question, f.title, f.answer, std::move(docs), rng)});
        }
        std::vector<Document> docs{synthetic_doc("Taskforce", "Nimbus-73", "coolant class", "Class-C8"),
                                   synthetic_doc("Taskforce", "Corvath-12", "coolant class", "Class-A3"),
                                   synthetic_doc("Outpost", "Velin-48", "registry code", "RG-4471"),
                                   synthetic_doc("Vessel", "Draxon-91", "home sector", "Sector-K07"),
                                   synthetic_doc("Station", "Thaemir-35", "coolant class", "Class-F2"),
                                   synthetic_doc("Relay", "Quorin-60", "signal band", "Band-27Q"),
                                   synthetic_doc("Archive", "Lysan-22", "founding cycle", "Cycle-418"),
                                   synthetic_doc("Division", "Brelth-84", "clearance tier", "Tier-D5")};
        out.push_back({Difficulty::hard, retriever_draft("What is the coolant class for Taskforce Nimbus-73?", "Nimbus-73",
                                                         "Class-C8", std::move(docs), rng)});
    } else if (env == "HistoricalYearEnv") {
        auto others = [&](const std::vector<YearFact>& pool, const std::string& skip) {
            std::vector<YearFact> v;
            for (const auto& f : pool) {
                if (f.event != skip && v.size() < static_cast<std::size_t>(kTableDistractors)) v.push_back(f);
            }
            return v;
        };
        const YearFact& moon = year_easy_pool().front();
        out.push_back({Difficulty::easy, year_draft("What year did humans first land on the Moon?", moon,
                                                    others(year_easy_pool(), moon.event), rng)});
        const YearFact& tord = year_medium_pool().front();
        out.push_back({Difficulty::medium, year_draft("What year was the Treaty of Tordesillas signed?", tord,
                                                      others(year_medium_pool(), tord.event), rng)});
        const YearFact velm{"Accord of Velmorath", 1723, "What year was the Accord of Velmorath signed?",
                            "Accord of Velmorath is recorded in the chronicle of Tharisel."};
        std::vector<YearFact> fict;
        std::set<std::string> events{velm.event};
        while (fict.size() < static_cast<std::size_t>(kTableDistractors)) {
            YearFact o = fictional_year(rng, nullptr);
            if (events.insert(o.event).second) fict.push_back(std::move(o));
        }
        out.push_back({Difficulty::hard, year_draft(velm.question, velm, std::move(fict), rng)});
    } else if (env == "GameRuleEnv") {
        auto others = [&](const std::vector<RuleFact>& pool, const RuleFact& skip) {
            std::vector<RuleFact> v;
            for (const auto& f : pool) {
                const bool same = f.game == skip.game && f.attribute == skip.attribute;
                if (!same && v.size() < static_cast<std::size_t>(kTableDistractors)) v.push_back(f);
            }
            return v;
        };
        const RuleFact& chess = rule_easy_pool().front();
        out.push_back({Difficulty::easy, rule_draft("How many squares are on a standard chessboard?", chess,
                                                    others(rule_easy_pool(), chess), rng)});
        const RuleFact& mahjong = rule_medium_pool().front();
        out.push_back({Difficulty::medium, rule_draft("How many tiles are in a standard Mahjong set?", mahjong,
                                                      others(rule_medium_pool(), mahjong), rng)});
        const RuleFact zephyr{"Zephyr", "cards in a deck", 72, "How many cards are in a Zephyr deck?",
                              "In Zephyr, the number of cards in a deck is 72."};
        std::vector<RuleFact> fict;
        std::set<std::string> games{zephyr.game};
        while (fict.size() < static_cast<std::size_t>(kTableDistractors)) {
            RuleFact o = fictional_rule(rng);
            if (games.insert(o.game).second) fict.push_back(std::move(o));
        }
        out.push_back({Difficulty::hard, rule_draft(zephyr.question, zephyr, std::move(fict), rng)});
    } else if (env == "HashEnv") {
        out.push_back({Difficulty::easy, hash_draft("md5", "hello")});
        out.push_back({Difficulty::medium, hash_draft("sha1", "machine learning")});
        out.push_back({Difficulty::hard, hash_draft("murmur_custom", "xK9mQ2")});
    } else if (env == "DecodingEnv") {
        out.push_back({Difficulty::easy, codec_draft("morse", CodecDirection::encode, "SOS")});
        // The printed ciphertexts for these two examples do not decode to their stated plaintexts;
        // the ciphertexts here are the encodings of those plaintexts.
        out.push_back({Difficulty::medium, codec_draft("caesar", CodecDirection::decode, "NTASPC", 11)});
        out.push_back({Difficulty::hard, codec_draft("scramble1", CodecDirection::decode, "ITSSG")});
    }
    return out;
}

}  // namespace when2tool::envs
