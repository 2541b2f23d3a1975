#pragma once

#include "when2tool/agent.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace when2tool {

enum class GroupBy { overall, category, difficulty, category_difficulty, env, env_difficulty };

std::string_view to_string(GroupBy g);
GroupBy parse_group_by(std::string_view s);

inline constexpr std::string_view kAll = "ALL";

struct GroupKey {
    std::string category = std::string(kAll);
    std::string env = std::string(kAll);
    std::string difficulty = std::string(kAll);

    auto operator<=>(const GroupKey&) const = default;
};

GroupKey group_key(const Trajectory& t, GroupBy g);

/// Errored trajectories are excluded from every metric and counted in `errors`.
struct MetricsRow {
    std::string method;
    GroupKey key;
    int trajectories = 0;
    int judged = 0;
    int correct = 0;
    int errors = 0;
    long long tool_calls = 0;  // TC over judged trajectories
    long long refused_calls = 0;
    std::optional<double> accuracy;     // percent
    std::optional<double> tc_per_task;  // TC / judged

    // Filled when compared against a reference run.
    std::optional<double> d_acc;
    std::optional<double> d_tc_per_task;
    std::optional<double> d_tc_total;
    std::optional<double> cost_ratio;
};

struct CurvePoint {
    double tau = 0.0;
    double accuracy = 0.0;
    long long tc_total = 0;
    double tc_per_task = 0.0;
    int judged = 0;
};

struct MetricsReport {
    std::vector<MetricsRow> rows;
    std::vector<CurvePoint> curve;
    std::optional<double> auroc;
};

/// Permutation-invariant; groups without trajectories are omitted.
std::vector<MetricsRow> aggregate(const std::vector<Trajectory>& trajectories, GroupBy group_by, const std::string& method);

/// dAcc / (-dTC); nullopt when dTC == 0.
std::optional<double> cost_ratio(double d_acc, double d_tc);

/// Rows of `run` with deltas against `reference`. Throws ArgumentError unless both
/// runs cover the same task ids.
std::vector<MetricsRow> cost_per_saved_call(const std::vector<Trajectory>& run, const std::vector<Trajectory>& reference,
                                            GroupBy group_by, const std::string& method);

/// Points sorted by tau. Throws ArgumentError on fewer than two runs or a duplicate tau.
std::vector<CurvePoint> sweep_curve(const std::vector<std::pair<double, std::vector<Trajectory>>>& runs);

std::string report_csv(const std::vector<MetricsRow>& rows);
nlohmann::json report_json(const MetricsReport& report);
std::string curve_csv(const std::vector<CurvePoint>& curve);

void write_report(const std::filesystem::path& dir, const MetricsReport& report);

}  // namespace when2tool
