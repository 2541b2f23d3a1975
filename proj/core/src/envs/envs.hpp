#pragma once

#include "when2tool/answer.hpp"
#include "when2tool/common.hpp"
#include "when2tool/rng.hpp"
#include "when2tool/task.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool::envs {

using nlohmann::json;

/// The environment-specific part of a task.
struct Draft {
    std::string prompt;
    AnswerValue answer;
    json env_state = json::object();
    std::vector<SolutionStep> solution;
};

struct GenContext {
    Rng& rng;
    Difficulty difficulty;
    Split split;
    int index;
    std::uint64_t pool_seed;  // hash64(global_seed, env, difficulty)
};

using Generator = Draft (*)(GenContext&);

struct Fixture {
    Difficulty difficulty;
    Draft draft;
};

// ---- helpers (common.cpp)

SolutionStep step(std::string tool, json args, StepCheck check, std::string expect);
AnswerValue ans_int(std::string text);
AnswerValue ans_dec(std::string text, int precision);
AnswerValue ans_str(std::string text);
AnswerValue ans(AnswerKind kind, std::string text);

/// Pool position for finite pools: train takes slots from the front of a
/// seeded permutation, test from the back, so the splits stay disjoint.
std::size_t pool_slot(const GenContext& ctx, std::size_t pool_size);

/// Capitalized pseudo-word from fixed syllable tables ("Velmorath").
std::string fictional_word(Rng& rng, int syllables);

/// "[1, 2, 3]"
std::string join_ints(const std::vector<long long>& xs);

std::string month_name(unsigned m);

// ---- generators

Draft gen_calculator(GenContext&);
Draft gen_statistics(GenContext&);
Draft gen_counting(GenContext&);
Draft gen_matrix(GenContext&);
Draft gen_prime(GenContext&);
Draft gen_retriever(GenContext&);
Draft gen_historical_year(GenContext&);
Draft gen_game_rule(GenContext&);
Draft gen_hash(GenContext&);
Draft gen_decoding(GenContext&);
Draft gen_list(GenContext&);
Draft gen_date(GenContext&);
Draft gen_code(GenContext&);
Draft gen_schedule(GenContext&);
Draft gen_regex(GenContext&);
Draft gen_chained_calculator(GenContext&);
Draft gen_chained_retriever(GenContext&);
Draft gen_chained_code(GenContext&);

std::vector<Fixture> fixtures_scale(std::string_view env);
std::vector<Fixture> fixtures_knowledge(std::string_view env);
std::vector<Fixture> fixtures_execution(std::string_view env);
std::vector<Fixture> fixtures_chained(std::string_view env);

// ---- knowledge pools (knowledge_data.cpp)

struct FactEntry {
    std::string category;  // capital, currency, symbol, author, ...
    std::string subject;
    std::string question;
    std::string answer;
    std::string title;
    std::string content;
};

struct YearFact {
    std::string event;
    int year;
    std::string question;
    std::string context;
};

struct RuleFact {
    std::string game;
    std::string attribute;
    long long value;
    std::string question;
    std::string description;
};

struct ChainSeed {
    std::string landmark;
    std::string country;
};

struct CountryFact {
    std::string country;
    std::string capital;
    std::string currency;
    std::string language;
    std::string continent;
};

const std::vector<FactEntry>& retriever_easy_pool();
const std::vector<FactEntry>& retriever_medium_pool();
const std::vector<YearFact>& year_easy_pool();
const std::vector<YearFact>& year_medium_pool();
const std::vector<RuleFact>& rule_easy_pool();
const std::vector<RuleFact>& rule_medium_pool();
const std::vector<std::string>& hash_easy_words();
const std::vector<std::string>& phrase_words_a();
const std::vector<std::string>& phrase_words_b();
const std::vector<std::string>& cipher_easy_words();
const std::vector<std::string>& cipher_long_words();
const std::vector<CountryFact>& countries_well_known();
const std::vector<CountryFact>& countries_less_known();
const std::vector<ChainSeed>& landmarks_well_known();
const std::vector<ChainSeed>& landmarks_less_known();

}  // namespace when2tool::envs
