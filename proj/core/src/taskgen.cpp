#include "when2tool/taskgen.hpp"

#include "envs/envs.hpp"
#include "when2tool/rng.hpp"
#include "when2tool/toolkit/dispatch.hpp"
#include "when2tool/toolkit/execution.hpp"

#include <algorithm>
#include <unordered_set>

namespace when2tool {

using nlohmann::json;

namespace {

struct EnvEntry {
    EnvInfo info;
    envs::Generator generator;
    std::vector<envs::Fixture> (*fixtures)(std::string_view);
};

const std::vector<EnvEntry>& entries() {
    static const std::vector<EnvEntry> v{
        {{"CalculatorEnv", Category::scale, false}, envs::gen_calculator, envs::fixtures_scale},
        {{"StatisticsEnv", Category::scale, false}, envs::gen_statistics, envs::fixtures_scale},
        {{"CountingEnv", Category::scale, false}, envs::gen_counting, envs::fixtures_scale},
        {{"MatrixEnv", Category::scale, false}, envs::gen_matrix, envs::fixtures_scale},
        {{"PrimeEnv", Category::scale, false}, envs::gen_prime, envs::fixtures_scale},
        {{"RetrieverEnv", Category::knowledge, false}, envs::gen_retriever, envs::fixtures_knowledge},
        {{"HistoricalYearEnv", Category::knowledge, false}, envs::gen_historical_year, envs::fixtures_knowledge},
        {{"GameRuleEnv", Category::knowledge, false}, envs::gen_game_rule, envs::fixtures_knowledge},
        {{"HashEnv", Category::knowledge, false}, envs::gen_hash, envs::fixtures_knowledge},
        {{"DecodingEnv", Category::knowledge, false}, envs::gen_decoding, envs::fixtures_knowledge},
        {{"ListEnv", Category::execution, false}, envs::gen_list, envs::fixtures_execution},
        {{"DateEnv", Category::execution, false}, envs::gen_date, envs::fixtures_execution},
        {{"CodeExecutorEnv", Category::execution, false}, envs::gen_code, envs::fixtures_execution},
        {{"ScheduleEnv", Category::execution, false}, envs::gen_schedule, envs::fixtures_execution},
        {{"RegexMatchEnv", Category::execution, false}, envs::gen_regex, envs::fixtures_execution},
        {{"ChainedCalculatorEnv", Category::scale, true}, envs::gen_chained_calculator, envs::fixtures_chained},
        {{"ChainedRetrieverEnv", Category::knowledge, true}, envs::gen_chained_retriever, envs::fixtures_chained},
        {{"ChainedCodeExecutorEnv", Category::execution, true}, envs::gen_chained_code, envs::fixtures_chained},
    };
    return v;
}

const EnvEntry& entry(std::string_view name) {
    for (const auto& e : entries()) {
        if (e.info.name == name) return e;
    }
    throw ConfigError("unknown environment: " + std::string(name));
}

constexpr int kMaxUniqueAttempts = 1000;

Task make_task(const EnvEntry& e, Difficulty d, Split s, int index, std::string id, std::uint64_t seed, envs::Draft draft) {
    Task t;
    t.task_id = std::move(id);
    t.env_name = e.info.name;
    t.category = e.info.category;
    t.difficulty = d;
    t.split = s;
    t.index = index;
    t.prompt = std::move(draft.prompt);
    t.expected_answer = std::move(draft.answer);
    t.tool_specs = toolkit::tools_for_env(e.info.name);
    t.env_state = std::move(draft.env_state);
    t.seed = seed;
    t.solution = std::move(draft.solution);
    return t;
}

std::string make_id(std::string_view env, Difficulty d, std::string_view split, int index) {
    return std::string(env) + ":" + std::string(to_string(d)) + ":" + std::string(split) + ":" + std::to_string(index);
}

/// Appends `count` tasks, skipping prompts already in `seen`.
void generate_block(const EnvEntry& e, Difficulty d, Split s, int count, std::uint64_t global_seed,
                    std::unordered_set<std::string>& seen, std::vector<Task>& out) {
    const std::uint64_t pool_seed = hash64(global_seed, std::string_view(e.info.name), to_string(d));
    for (int i = 0; i < count; ++i) {
        const std::uint64_t base = task_seed(global_seed, e.info.name, d, s, i);
        bool placed = false;
        for (int attempt = 0; attempt < kMaxUniqueAttempts && !placed; ++attempt) {
            const std::uint64_t seed = attempt == 0 ? base : hash64(base, std::string_view("retry"), static_cast<std::uint64_t>(attempt));
            Rng rng(seed);
            envs::GenContext ctx{rng, d, s, i, pool_seed};
            envs::Draft draft = e.generator(ctx);
            if (!seen.insert(draft.prompt).second) continue;
            out.push_back(make_task(e, d, s, i, make_id(e.info.name, d, to_string(s), i), seed, std::move(draft)));
            placed = true;
        }
        if (!placed) {
            throw ConfigError("could not generate a unique prompt for " + make_id(e.info.name, d, to_string(s), i));
        }
    }
}

}  // namespace

const std::vector<EnvInfo>& env_registry() {
    static const std::vector<EnvInfo> v = [] {
        std::vector<EnvInfo> out;
        for (const auto& e : entries()) out.push_back(e.info);
        return out;
    }();
    return v;
}

const EnvInfo& env_info(std::string_view name) { return entry(name).info; }

std::vector<std::string> single_hop_envs() {
    std::vector<std::string> v;
    for (const auto& e : env_registry()) {
        if (!e.multi_hop) v.push_back(e.name);
    }
    return v;
}

std::vector<std::string> multi_hop_envs() {
    std::vector<std::string> v;
    for (const auto& e : env_registry()) {
        if (e.multi_hop) v.push_back(e.name);
    }
    return v;
}

std::vector<std::string> category_envs(Category c) {
    std::vector<std::string> v;
    for (const auto& e : env_registry()) {
        if (!e.multi_hop && e.category == c) v.push_back(e.name);
    }
    return v;
}

BenchmarkManifest BenchmarkManifest::single_hop(std::uint64_t seed) {
    BenchmarkManifest m;
    m.envs = single_hop_envs();
    m.global_seed = seed;
    return m;
}

BenchmarkManifest BenchmarkManifest::multi_hop(std::uint64_t seed) {
    BenchmarkManifest m;
    m.envs = multi_hop_envs();
    m.global_seed = seed;
    return m;
}

BenchmarkManifest BenchmarkManifest::full(std::uint64_t seed) {
    BenchmarkManifest m;
    for (const auto& e : env_registry()) m.envs.push_back(e.name);
    m.global_seed = seed;
    return m;
}

void to_json(json& j, const BenchmarkManifest& m) {
    j = json{{"version", m.version},
             {"envs", m.envs},
             {"train_per_difficulty", m.train_per_difficulty},
             {"test_per_difficulty", m.test_per_difficulty},
             {"global_seed", m.global_seed}};
}

void from_json(const json& j, BenchmarkManifest& m) {
    j.at("version").get_to(m.version);
    j.at("envs").get_to(m.envs);
    j.at("train_per_difficulty").get_to(m.train_per_difficulty);
    j.at("test_per_difficulty").get_to(m.test_per_difficulty);
    j.at("global_seed").get_to(m.global_seed);
}

std::uint64_t task_seed(std::uint64_t global_seed, std::string_view env, Difficulty d, Split s, int index) {
    return hash64(global_seed, env, to_string(d), to_string(s), static_cast<std::uint64_t>(index));
}

std::vector<Task> generate_benchmark(std::uint64_t global_seed, const BenchmarkManifest& manifest) {
    if (manifest.train_per_difficulty <= 0 || manifest.test_per_difficulty <= 0) {
        throw ArgumentError("manifest counts must be positive");
    }
    std::vector<Task> out;
    for (const auto& name : manifest.envs) {
        const EnvEntry& e = entry(name);
        std::unordered_set<std::string> seen;
        for (Difficulty d : kDifficulties) {
            for (Split s : kSplits) generate_block(e, d, s, manifest.count(s), global_seed, seen, out);
        }
    }
    return out;
}

std::vector<Task> generate_env_tasks(std::string_view env, Difficulty d, Split s, int count, std::uint64_t seed) {
    if (count <= 0) throw ArgumentError("count must be positive");
    const EnvEntry& e = entry(env);
    std::unordered_set<std::string> seen;
    std::vector<Task> out;
    generate_block(e, d, s, count, seed, seen, out);
    return out;
}

std::vector<Task> fixture_tasks() {
    std::vector<Task> out;
    for (const auto& e : entries()) {
        int n = 0;
        for (auto& f : e.fixtures(e.info.name)) {
            out.push_back(make_task(e, f.difficulty, Split::test, n, make_id(e.info.name, f.difficulty, "fixture", n), kFixtureSeed,
                                    std::move(f.draft)));
            ++n;
        }
    }
    return out;
}

OodSplit make_ood_splits(Category category, const std::set<std::string>& held_out) {
    const auto all = category_envs(category);
    if (held_out.size() != 2) throw ArgumentError("held-out set must contain exactly two environments");
    for (const auto& h : held_out) {
        if (std::find(all.begin(), all.end(), h) == all.end()) {
            throw ArgumentError(h + " is not a single-hop environment of category " + std::string(to_string(category)));
        }
    }
    OodSplit s;
    for (const auto& e : all) {
        if (!held_out.count(e)) s.train_envs.push_back(e);
    }
    s.eval_envs = all;
    return s;
}

ClosureResult verify_oracle_closure(const Task& task) {
    auto fail = [&](std::size_t i, const std::string& why) {
        return ClosureResult{false, task.task_id + " step " + std::to_string(i) + ": " + why};
    };
    if (task.solution.empty()) return {false, task.task_id + ": empty solution"};
    toolkit::ToolSession session;
    std::string prev;
    for (std::size_t i = 0; i < task.solution.size(); ++i) {
        const SolutionStep& st = task.solution[i];
        const bool offered = std::any_of(task.tool_specs.begin(), task.tool_specs.end(),
                                         [&](const ToolSpec& t) { return t.name == st.call.tool_name; });
        if (!offered) return fail(i, "tool " + st.call.tool_name + " is not offered by the environment");
        ToolCall call = st.call;
        call.arguments = substitute_prev(call.arguments, prev);
        const ToolResult r = toolkit::execute_tool(call, task.env_state, session);
        if (!r.ok) return fail(i, r.payload);
        bool good = false;
        std::string got;
        switch (st.check) {
            case StepCheck::value:
                got = r.canonical;
                good = got == st.expect;
                break;
            case StepCheck::contains:
                got = r.payload;
                good = r.payload.find(st.expect) != std::string::npos;
                break;
            case StepCheck::top_hit: {
                const auto& hits = r.data.at("results");
                got = hits.empty() ? "" : hits.front().at("doc_id").get<std::string>();
                good = got == st.expect;
                break;
            }
            case StepCheck::nonempty:
                got = r.data.at("slots").empty() ? "No" : "Yes";
                good = got == st.expect;
                break;
            case StepCheck::first_slot: {
                const auto& slots = r.data.at("slots");
                if (!slots.empty()) {
                    const int start = toolkit::parse_clock(slots.front().at("start").get<std::string>());
                    got = toolkit::format_interval({start, start + call.arguments.at("duration").get<int>()});
                }
                good = got == st.expect;
                break;
            }
        }
        if (!good) return fail(i, "expected '" + st.expect + "', got '" + got + "'");
        prev = st.expect;
    }
    if (prev != task.expected_answer.text) {
        return {false, task.task_id + ": final step yields '" + prev + "' but the expected answer is '" + task.expected_answer.text + "'"};
    }
    return {};
}

}  // namespace when2tool
