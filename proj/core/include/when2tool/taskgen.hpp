#pragma once

#include "when2tool/common.hpp"
#include "when2tool/task.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool {

struct EnvInfo {
    std::string name;
    Category category;
    bool multi_hop = false;
};

/// All 18 environments in canonical order (15 single-hop, then 3 multi-hop).
const std::vector<EnvInfo>& env_registry();
/// Throws ConfigError for unknown names.
const EnvInfo& env_info(std::string_view name);
std::vector<std::string> single_hop_envs();
std::vector<std::string> multi_hop_envs();
/// The five single-hop environments of a category.
std::vector<std::string> category_envs(Category c);

inline constexpr std::string_view kBenchmarkVersion = "when2tool-1.0";

struct BenchmarkManifest {
    std::string version = std::string(kBenchmarkVersion);
    std::vector<std::string> envs;
    int train_per_difficulty = 20;
    int test_per_difficulty = 50;
    std::uint64_t global_seed = 0;

    static BenchmarkManifest single_hop(std::uint64_t seed = 0);
    static BenchmarkManifest multi_hop(std::uint64_t seed = 0);
    static BenchmarkManifest full(std::uint64_t seed = 0);

    int count(Split s) const { return s == Split::train ? train_per_difficulty : test_per_difficulty; }
};

void to_json(nlohmann::json& j, const BenchmarkManifest& m);
void from_json(const nlohmann::json& j, BenchmarkManifest& m);

/// hash64(global_seed, env_name, difficulty, split, index).
std::uint64_t task_seed(std::uint64_t global_seed, std::string_view env, Difficulty d, Split s, int index);

/// Tasks ordered by manifest env order, then difficulty, then split (train first), then index.
/// Prompts are unique within each environment.
std::vector<Task> generate_benchmark(std::uint64_t global_seed, const BenchmarkManifest& manifest);

/// One (env, difficulty, split) block. `seed` plays the role of the global seed.
std::vector<Task> generate_env_tasks(std::string_view env, Difficulty d, Split s, int count, std::uint64_t seed);

/// Seed under which the fixed worked examples are emitted.
inline constexpr std::uint64_t kFixtureSeed = 0xF1C7'0E5E'ED00'0000ULL;

/// Worked examples reproduced verbatim, ids "<env>:<difficulty>:fixture:<n>".
std::vector<Task> fixture_tasks();

struct OodSplit {
    std::vector<std::string> train_envs;
    std::vector<std::string> eval_envs;
};

/// Leave-two-out split within a category. Throws ArgumentError unless `held_out`
/// is exactly two single-hop environments of `category`.
OodSplit make_ood_splits(Category category, const std::set<std::string>& held_out);

struct ClosureResult {
    bool ok = true;
    std::string detail;
};

/// Replays the task's designated tool sequence and checks every step and the final answer.
ClosureResult verify_oracle_closure(const Task& task);

}  // namespace when2tool
