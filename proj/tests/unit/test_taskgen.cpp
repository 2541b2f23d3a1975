#include "when2tool/taskgen.hpp"

#include <gtest/gtest.h>

#include <map>
#include <regex>
#include <set>

using namespace when2tool;

namespace {

const std::vector<Task>& full_benchmark() {
    static const auto tasks = generate_benchmark(0, BenchmarkManifest::full(0));
    return tasks;
}

const Task& fixture(const std::string& id) {
    static const auto fixtures = fixture_tasks();
    for (const auto& t : fixtures)
        if (t.task_id == id) return t;
    throw std::runtime_error(id);
}

}  // namespace

TEST(Taskgen, RegistryHasEighteenEnvironments) {
    EXPECT_EQ(env_registry().size(), 18u);
    EXPECT_EQ(single_hop_envs().size(), 15u);
    EXPECT_EQ(multi_hop_envs().size(), 3u);
    for (auto c : {Category::scale, Category::knowledge, Category::execution}) EXPECT_EQ(category_envs(c).size(), 5u);
    EXPECT_THROW(env_info("NoSuchEnv"), ConfigError);
}

TEST(Taskgen, CountsMatchManifest) {
    std::map<std::pair<bool, Split>, int> totals;
    std::map<std::tuple<std::string, Difficulty, Split>, int> blocks;
    for (const auto& t : full_benchmark()) {
        ++totals[{t.is_multi_hop(), t.split}];
        ++blocks[{t.env_name, t.difficulty, t.split}];
    }
    EXPECT_EQ((totals[{false, Split::train}]), 900);
    EXPECT_EQ((totals[{false, Split::test}]), 2250);
    EXPECT_EQ((totals[{true, Split::train}]), 180);
    EXPECT_EQ((totals[{true, Split::test}]), 450);
    EXPECT_EQ(blocks.size(), 18u * 3u * 2u);
    for (const auto& [key, n] : blocks) EXPECT_EQ(n, std::get<2>(key) == Split::train ? 20 : 50);
}

TEST(Taskgen, TaskIdsUniqueAndWellFormed) {
    std::set<std::string> ids;
    const std::regex shape(R"(^[A-Za-z]+Env:(easy|medium|hard):(train|test):\d+$)");
    for (const auto& t : full_benchmark()) {
        EXPECT_TRUE(ids.insert(t.task_id).second) << t.task_id;
        EXPECT_TRUE(std::regex_match(t.task_id, shape)) << t.task_id;
    }
}

TEST(Taskgen, PromptsUniqueWithinEnvironment) {
    std::map<std::string, std::set<std::string>> prompts;
    for (const auto& t : full_benchmark()) EXPECT_TRUE(prompts[t.env_name].insert(t.prompt).second) << t.task_id;
}

TEST(Taskgen, DeterministicSerialization) {
    const auto again = generate_benchmark(0, BenchmarkManifest::full(0));
    ASSERT_EQ(again.size(), full_benchmark().size());
    for (std::size_t i = 0; i < again.size(); ++i) ASSERT_EQ(serialize_task(again[i]), serialize_task(full_benchmark()[i]));
}

TEST(Taskgen, SerializationRoundTrip) {
    for (std::size_t i = 0; i < full_benchmark().size(); i += 37) {
        const auto& t = full_benchmark()[i];
        const auto line = serialize_task(t);
        EXPECT_EQ(serialize_task(deserialize_task(line)), line);
    }
}

TEST(Taskgen, DifferentSeedsChangeEveryEnvironment) {
    const auto other = generate_benchmark(1, BenchmarkManifest::full(1));
    std::map<std::string, std::set<std::string>> a, b;
    for (const auto& t : full_benchmark()) a[t.env_name].insert(t.prompt);
    for (const auto& t : other) b[t.env_name].insert(t.prompt);
    for (const auto& [env, prompts] : a) EXPECT_NE(prompts, b[env]) << env;
}

TEST(Taskgen, BlockGenerationIsDeterministic) {
    // Standalone blocks skip the cross-block prompt de-duplication, so only self-consistency is checked.
    const auto a = generate_env_tasks("PrimeEnv", Difficulty::medium, Split::test, 50, 0);
    const auto b = generate_env_tasks("PrimeEnv", Difficulty::medium, Split::test, 50, 0);
    ASSERT_EQ(a.size(), 50u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(serialize_task(a[i]), serialize_task(b[i]));
        EXPECT_EQ(a[i].index, static_cast<int>(i));
        EXPECT_TRUE(verify_oracle_closure(a[i]).ok);
    }
}

TEST(Taskgen, RejectsBadArguments) {
    EXPECT_THROW(generate_env_tasks("CalculatorEnv", Difficulty::easy, Split::test, 0, 0), ArgumentError);
    EXPECT_THROW(generate_env_tasks("CalculatorEnv", Difficulty::easy, Split::test, -3, 0), ArgumentError);
    EXPECT_THROW(generate_env_tasks("MissingEnv", Difficulty::easy, Split::test, 1, 0), ConfigError);
    BenchmarkManifest m = BenchmarkManifest::single_hop(0);
    m.envs.push_back("MissingEnv");
    EXPECT_THROW(generate_benchmark(0, m), ConfigError);
}

TEST(Taskgen, TaskSeedIsInsertionIndependent) {
    EXPECT_EQ(task_seed(0, "CalculatorEnv", Difficulty::easy, Split::test, 3),
              task_seed(0, "CalculatorEnv", Difficulty::easy, Split::test, 3));
    EXPECT_NE(task_seed(0, "CalculatorEnv", Difficulty::easy, Split::test, 3),
              task_seed(0, "CalculatorEnv", Difficulty::easy, Split::train, 3));
    EXPECT_NE(task_seed(0, "CalculatorEnv", Difficulty::easy, Split::test, 3),
              task_seed(1, "CalculatorEnv", Difficulty::easy, Split::test, 3));
}

TEST(Taskgen, OracleClosureOnEveryTask) {
    for (const auto& t : full_benchmark()) {
        const auto r = verify_oracle_closure(t);
        ASSERT_TRUE(r.ok) << t.task_id << ": " << r.detail;
    }
    for (const auto& t : fixture_tasks()) {
        const auto r = verify_oracle_closure(t);
        EXPECT_TRUE(r.ok) << t.task_id << ": " << r.detail;
    }
}

TEST(Taskgen, ClosureDetectsTamperedAnswer) {
    Task t = full_benchmark().front();
    t.expected_answer.text += "1";
    EXPECT_FALSE(verify_oracle_closure(t).ok);
    Task chained;
    for (const auto& x : full_benchmark())
        if (x.env_name == "ChainedCalculatorEnv") {
            chained = x;
            break;
        }
    ASSERT_EQ(chained.solution.size(), 3u);
    chained.solution[0].expect = "12345";
    EXPECT_FALSE(verify_oracle_closure(chained).ok);
}

TEST(Taskgen, FixturesReproduceWorkedExamples) {
    const auto& calc = fixture("CalculatorEnv:easy:fixture:0");
    EXPECT_EQ(calc.prompt, "Compute exactly: 20 + 20");
    EXPECT_EQ(calc.expected_answer.text, "40");
    const auto& chain = fixture("ChainedCalculatorEnv:easy:fixture:0");
    ASSERT_EQ(chain.solution.size(), 3u);
    EXPECT_EQ(chain.solution[0].expect, "30");
    EXPECT_EQ(chain.solution[1].expect, "35");
    EXPECT_EQ(chain.solution[2].expect, "16");
    EXPECT_NE(chain.prompt.find("Finally compute z = y - 19"), std::string::npos);
    const auto& prime = fixture("PrimeEnv:hard:fixture:2");
    EXPECT_EQ(prime.prompt, "What is the prime factorization of 8191?");
    EXPECT_EQ(prime.expected_answer.text, "8191");
    EXPECT_EQ(fixture("MatrixEnv:medium:fixture:1").expected_answer.text, "-36");
}

TEST(Taskgen, MultiHopHopsFeedForward) {
    for (const auto& t : full_benchmark()) {
        if (!t.is_multi_hop()) continue;
        ASSERT_GE(t.solution.size(), 3u) << t.task_id;
        EXPECT_EQ(t.solution.back().expect, t.expected_answer.text) << t.task_id;
        for (std::size_t k = 1; k < t.solution.size(); ++k)
            if (t.solution[k].call.tool_name != "read_doc")  // reads the hit of the same hop
                EXPECT_NE(t.solution[k].call.arguments.dump().find(kPrevPlaceholder), std::string::npos)
                    << t.task_id << " step " << k;
    }
}

TEST(Taskgen, HardKnowledgeAnswersHiddenFromPrompt) {
    for (const auto& t : full_benchmark()) {
        if (t.category != Category::knowledge || t.difficulty != Difficulty::hard || t.is_multi_hop()) continue;
        EXPECT_EQ(t.prompt.find(t.expected_answer.text), std::string::npos) << t.task_id;
        if (t.env_name == "RetrieverEnv" || t.env_name == "HistoricalYearEnv" || t.env_name == "GameRuleEnv")
            EXPECT_NE(t.env_state.dump().find(t.expected_answer.text), std::string::npos) << t.task_id;
    }
}

TEST(Taskgen, DifficultyRanges) {
    const std::regex number(R"(\d+)");
    for (const auto& t : full_benchmark()) {
        if (t.env_name == "CalculatorEnv" && t.difficulty == Difficulty::hard) {
            for (std::sregex_iterator it(t.prompt.begin(), t.prompt.end(), number), end; it != end; ++it) {
                const auto digits = it->str().size();
                EXPECT_GE(digits, 10u) << t.prompt;
                EXPECT_LE(digits, 13u) << t.prompt;
            }
        }
        if (t.env_name == "MatrixEnv" && t.difficulty == Difficulty::hard) {
            const auto& m = t.solution.at(0).call.arguments.at("matrix");
            EXPECT_TRUE(m.size() == 4 || m.size() == 5) << t.task_id;
        }
        if (t.env_name == "ScheduleEnv" && t.difficulty != Difficulty::easy) {
            const auto& meetings = t.solution.at(0).call.arguments.at("meetings");
            if (t.difficulty == Difficulty::hard) EXPECT_GE(meetings.size(), 15u) << t.task_id;
            if (t.difficulty == Difficulty::medium) {
                EXPECT_GE(meetings.size(), 6u) << t.task_id;
                EXPECT_LE(meetings.size(), 10u) << t.task_id;
            }
        }
    }
}

TEST(Taskgen, ToolSpecsMatchEnvironment) {
    for (const auto& t : full_benchmark()) {
        ASSERT_FALSE(t.tool_specs.empty()) << t.task_id;
        std::set<std::string> names;
        for (const auto& s : t.tool_specs) {
            names.insert(s.name);
            std::set<std::string> params;
            for (const auto& p : s.parameters) EXPECT_TRUE(params.insert(p.name).second) << s.name;
        }
        for (const auto& step : t.solution) EXPECT_TRUE(names.count(step.call.tool_name)) << t.task_id;
    }
}

TEST(Taskgen, OodSplits) {
    const auto a = make_ood_splits(Category::scale, {"MatrixEnv", "PrimeEnv"});
    EXPECT_EQ(a.train_envs, (std::vector<std::string>{"CalculatorEnv", "StatisticsEnv", "CountingEnv"}));
    EXPECT_EQ(a.eval_envs.size(), 5u);
    const auto b = make_ood_splits(Category::knowledge, {"HashEnv", "DecodingEnv"});
    EXPECT_EQ(b.train_envs, (std::vector<std::string>{"RetrieverEnv", "HistoricalYearEnv", "GameRuleEnv"}));
    EXPECT_THROW(make_ood_splits(Category::scale, {"MatrixEnv", "RetrieverEnv"}), ArgumentError);
    EXPECT_THROW(make_ood_splits(Category::scale, {"MatrixEnv"}), ArgumentError);
    EXPECT_THROW(make_ood_splits(Category::scale, {"MatrixEnv", "PrimeEnv", "CountingEnv"}), ArgumentError);
}
