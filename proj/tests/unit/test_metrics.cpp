#include "when2tool/common.hpp"
#include "when2tool/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

using namespace when2tool;

namespace {

Trajectory traj(std::string id, bool correct, int calls, Category cat = Category::scale, Difficulty diff = Difficulty::easy,
                std::string env = "CalculatorEnv") {
    Trajectory t;
    t.task_id = std::move(id);
    t.env_name = std::move(env);
    t.category = cat;
    t.difficulty = diff;
    t.judgment.correct = correct;
    t.tool_call_count = calls;
    return t;
}

/// Ten trajectories, nine correct, thirteen tool calls.
std::vector<Trajectory> ten() {
    std::vector<Trajectory> v;
    const int calls[10] = {0, 1, 2, 0, 3, 1, 1, 0, 4, 1};
    for (int i = 0; i < 10; ++i)
        v.push_back(traj("t" + std::to_string(i), i != 4, calls[i], i < 5 ? Category::scale : Category::knowledge,
                         i % 2 ? Difficulty::hard : Difficulty::easy, i < 5 ? "CalculatorEnv" : "RetrieverEnv"));
    return v;
}

}  // namespace

TEST(Aggregate, WorkedExample) {
    const auto rows = aggregate(ten(), GroupBy::overall, "m");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].key.category, "ALL");
    EXPECT_DOUBLE_EQ(*rows[0].accuracy, 90.0);
    EXPECT_EQ(rows[0].tool_calls, 13);
    EXPECT_DOUBLE_EQ(*rows[0].tc_per_task, 1.3);
}

TEST(Aggregate, Groupings) {
    const auto cats = aggregate(ten(), GroupBy::category, "m");
    ASSERT_EQ(cats.size(), 2u);
    int judged = 0;
    long long calls = 0;
    for (const auto& r : cats) {
        judged += r.judged;
        calls += r.tool_calls;
        EXPECT_EQ(r.key.difficulty, "ALL");
    }
    EXPECT_EQ(judged, 10);
    EXPECT_EQ(calls, 13);
    EXPECT_EQ(aggregate(ten(), GroupBy::env_difficulty, "m").size(), 4u);
    EXPECT_EQ(aggregate({}, GroupBy::overall, "m").size(), 0u);
    EXPECT_EQ(parse_group_by("category_difficulty"), GroupBy::category_difficulty);
    EXPECT_THROW(parse_group_by("planet"), ArgumentError);
}

TEST(Aggregate, ErroredTrajectoriesExcluded) {
    auto v = ten();
    auto bad = traj("t10", false, 7);
    bad.errored = true;
    v.push_back(bad);
    const auto r = aggregate(v, GroupBy::overall, "m").at(0);
    EXPECT_EQ(r.trajectories, 11);
    EXPECT_EQ(r.errors, 1);
    EXPECT_EQ(r.judged, 10);
    EXPECT_DOUBLE_EQ(*r.accuracy, 90.0);
    EXPECT_EQ(r.tool_calls, 13);
    std::vector<Trajectory> only_bad{bad};
    EXPECT_FALSE(aggregate(only_bad, GroupBy::overall, "m").at(0).accuracy);
}

TEST(Aggregate, PermutationInvariant) {
    auto v = ten();
    const auto base = report_csv(aggregate(v, GroupBy::env_difficulty, "m"));
    std::mt19937 rng(1);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(v.begin(), v.end(), rng);
        EXPECT_EQ(report_csv(aggregate(v, GroupBy::env_difficulty, "m")), base);
    }
}

TEST(CostRatio, Definition) {
    EXPECT_NEAR(*cost_ratio(-8.65, -0.5), -17.3, 1e-12);
    EXPECT_NEAR(*cost_ratio(-1.8, -0.5), -3.6, 1e-12);
    EXPECT_NEAR(*cost_ratio(2.0, 1.0), -2.0, 1e-12);
    EXPECT_FALSE(cost_ratio(-3.0, 0.0));
}

TEST(CostRatio, AgainstReference) {
    const auto reference = ten();
    auto run = ten();
    for (auto& t : run) t.tool_call_count = 0;
    run[1].judgment.correct = false;
    const auto rows = cost_per_saved_call(run, reference, GroupBy::overall, "pp");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_DOUBLE_EQ(*rows[0].d_acc, -10.0);
    EXPECT_DOUBLE_EQ(*rows[0].d_tc_per_task, -1.3);
    EXPECT_DOUBLE_EQ(*rows[0].d_tc_total, -13.0);
    EXPECT_NEAR(*rows[0].cost_ratio, -10.0 / 1.3, 1e-12);
    run.pop_back();
    EXPECT_THROW(cost_per_saved_call(run, reference, GroupBy::overall, "pp"), ArgumentError);
}

TEST(Sweep, SortedAndValidated) {
    auto lo = ten(), hi = ten();
    for (auto& t : hi) t.tool_call_count = 0;
    const auto curve = sweep_curve({{0.9, hi}, {0.1, lo}});
    ASSERT_EQ(curve.size(), 2u);
    EXPECT_DOUBLE_EQ(curve[0].tau, 0.1);
    EXPECT_EQ(curve[0].tc_total, 13);
    EXPECT_EQ(curve[1].tc_total, 0);
    EXPECT_THROW(sweep_curve({{0.5, lo}}), ArgumentError);
    EXPECT_THROW(sweep_curve({{0.5, lo}, {0.5, hi}}), ArgumentError);
    EXPECT_EQ(curve_csv(curve), "tau,acc,tc_total,tc_per_task\n0.10,90.00,13,1.3000\n0.90,90.00,0,0.0000\n");
}

TEST(Report, CsvAndJson) {
    MetricsReport rep;
    rep.rows = cost_per_saved_call(ten(), ten(), GroupBy::overall, "a,b");
    rep.auroc = 0.75;
    const auto csv = report_csv(rep.rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "method,category,env,difficulty,trajectories,judged,correct,errors,accuracy,tool_calls,tc_per_task,refused_calls,"
              "d_acc,d_tc_per_task,d_tc_total,cost_ratio");
    EXPECT_NE(csv.find("\"a,b\",ALL,ALL,ALL,10,10,9,0,90.00,13,1.3000,0,0.00,0.0000,0,\n"), std::string::npos);
    const auto j = report_json(rep);
    EXPECT_DOUBLE_EQ(j.at("auroc").get<double>(), 0.75);
    const auto dir = std::filesystem::temp_directory_path() / "w2t_metrics_report";
    std::filesystem::remove_all(dir);
    write_report(dir, rep);
    EXPECT_TRUE(std::filesystem::exists(dir / "report.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
    EXPECT_FALSE(std::filesystem::exists(dir / "curve.csv"));
    std::filesystem::remove_all(dir);
}
