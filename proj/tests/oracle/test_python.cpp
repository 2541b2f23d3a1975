#include "when2tool/io.hpp"
#include "when2tool/probe.hpp"
#include "when2tool/task.hpp"
#include "when2tool/taskgen.hpp"
#include "when2tool/toolkit/dispatch.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <map>

using namespace when2tool;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = W2T_TESTDATA;

const json& oracle() {
    static const json j = io::read_json(kData / "python_oracle.json");
    return j;
}

const std::vector<Task>& bench() {
    static const std::vector<Task> tasks = [] {
        std::vector<Task> out;
        for (const char* part : {"single", "multi"})
            for (const char* split : {"train", "test"})
                for (const auto& line : io::read_lines(kData / "bench" / part / (std::string("tasks.") + split + ".jsonl")))
                    out.push_back(deserialize_task(line));
        return out;
    }();
    return tasks;
}

struct Tally {
    int compared = 0;
    int skipped = 0;
};

/// Replays the task's tool sequence in C++ and compares each step with the Python value.
Tally compare_task(const Task& task, const json& expected) {
    Tally tally;
    toolkit::ToolSession session;
    std::string prev;
    EXPECT_EQ(expected.size(), task.solution.size()) << task.task_id;
    for (std::size_t k = 0; k < task.solution.size() && k < expected.size(); ++k) {
        ToolCall call = task.solution[k].call;
        if (k > 0) call.arguments = substitute_prev(call.arguments, prev);
        const ToolResult r = toolkit::execute_tool(call, task.env_state, session);
        EXPECT_TRUE(r.ok) << task.task_id << " step " << k << ": " << r.payload;
        prev = r.canonical;
        if (expected[k].is_null()) {
            ++tally.skipped;
            continue;
        }
        ++tally.compared;
        EXPECT_EQ(r.canonical, expected[k].get<std::string>()) << task.task_id << " step " << k << " " << call.tool_name << " "
                                                               << call.arguments.dump();
    }
    return tally;
}

class PythonOracle : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(PythonOracle, ToolOutputsMatchCPython) {
    const auto& tasks = oracle().at("tasks");
    Tally total;
    for (const auto& t : bench()) {
        if (t.env_name != GetParam()) continue;
        ASSERT_TRUE(tasks.contains(t.task_id)) << t.task_id;
        const Tally one = compare_task(t, tasks.at(t.task_id));
        total.compared += one.compared;
        total.skipped += one.skipped;
    }
    // Every environment is covered; only corpus ranking steps go unmodelled.
    EXPECT_GT(total.compared, 0);
    const bool corpus = GetParam() == "RetrieverEnv" || GetParam() == "ChainedRetrieverEnv";
    if (!corpus) {
        EXPECT_EQ(total.skipped, 0);
    }
    RecordProperty("compared", total.compared);
    RecordProperty("skipped", total.skipped);
}

INSTANTIATE_TEST_SUITE_P(Env, PythonOracle, ::testing::ValuesIn([] {
                             std::vector<std::string> names;
                             for (const auto& e : env_registry()) names.push_back(e.name);
                             return names;
                         }()),
                         [](const auto& info) { return info.param; });

TEST(SklearnOracle, ProbeMatchesLogisticRegression) {
    const auto& ref = oracle().at("probe");
    Dataset d;
    for (const auto& row : ref.at("rows")) d.rows.push_back(row.get<std::vector<float>>());
    d.labels = ref.at("labels").get<std::vector<int>>();
    for (const auto& fit : ref.at("fits")) {
        TrainOptions o;
        o.lambda = fit.at("lambda").get<double>();
        o.gradient_tolerance = 1e-10;
        o.max_iterations = 10000;
        const ProbeModel m = train_probe(d, o);
        const auto w = fit.at("weights").get<std::vector<double>>();
        ASSERT_EQ(m.weights.size(), w.size());
        for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(m.weights[i], w[i], 1e-4 * (1 + std::abs(w[i]))) << "lambda " << o.lambda << " w" << i;
        EXPECT_NEAR(m.bias, fit.at("bias").get<double>(), 1e-4) << "lambda " << o.lambda;
        const auto z = fit.at("decision").get<std::vector<double>>();
        for (std::size_t i = 0; i < d.rows.size(); ++i) EXPECT_NEAR(probe_logit(m, d.rows[i]), z[i], 1e-3);
    }
}
