#include "when2tool/metrics.hpp"

#include "when2tool/common.hpp"
#include "when2tool/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace when2tool {

using nlohmann::json;

namespace {

std::string fmt(const std::optional<double>& v, int digits = 4) {
    if (!v) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
    return buf;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::set<std::string> task_ids(const std::vector<Trajectory>& ts) {
    std::set<std::string> ids;
    for (const auto& t : ts) ids.insert(t.task_id);
    return ids;
}

}  // namespace

std::string_view to_string(GroupBy g) {
    switch (g) {
        case GroupBy::overall: return "overall";
        case GroupBy::category: return "category";
        case GroupBy::difficulty: return "difficulty";
        case GroupBy::category_difficulty: return "category_difficulty";
        case GroupBy::env: return "env";
        case GroupBy::env_difficulty: return "env_difficulty";
    }
    return "?";
}

GroupBy parse_group_by(std::string_view s) {
    for (GroupBy g : {GroupBy::overall, GroupBy::category, GroupBy::difficulty, GroupBy::category_difficulty, GroupBy::env,
                      GroupBy::env_difficulty}) {
        if (to_string(g) == s) return g;
    }
    throw ArgumentError("unknown grouping: " + std::string(s));
}

GroupKey group_key(const Trajectory& t, GroupBy g) {
    GroupKey k;
    const bool cat = g == GroupBy::category || g == GroupBy::category_difficulty || g == GroupBy::env || g == GroupBy::env_difficulty;
    const bool env = g == GroupBy::env || g == GroupBy::env_difficulty;
    const bool diff = g == GroupBy::difficulty || g == GroupBy::category_difficulty || g == GroupBy::env_difficulty;
    if (cat) k.category = to_string(t.category);
    if (env) k.env = t.env_name;
    if (diff) k.difficulty = to_string(t.difficulty);
    return k;
}

std::vector<MetricsRow> aggregate(const std::vector<Trajectory>& trajectories, GroupBy group_by, const std::string& method) {
    std::map<GroupKey, MetricsRow> groups;
    for (const auto& t : trajectories) {
        const GroupKey key = group_key(t, group_by);
        auto [it, fresh] = groups.try_emplace(key);
        MetricsRow& r = it->second;
        if (fresh) {
            r.method = method;
            r.key = key;
        }
        ++r.trajectories;
        if (t.errored) {
            ++r.errors;
            continue;
        }
        ++r.judged;
        r.correct += t.judgment.correct ? 1 : 0;
        r.tool_calls += t.tool_call_count;
        r.refused_calls += t.refused_calls;
    }
    std::vector<MetricsRow> out;
    for (auto& [key, r] : groups) {
        if (r.judged > 0) {
            r.accuracy = 100.0 * r.correct / r.judged;
            r.tc_per_task = static_cast<double>(r.tool_calls) / r.judged;
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::optional<double> cost_ratio(double d_acc, double d_tc) {
    if (d_tc == 0.0) return std::nullopt;
    return d_acc / -d_tc;
}

std::vector<MetricsRow> cost_per_saved_call(const std::vector<Trajectory>& run, const std::vector<Trajectory>& reference,
                                            GroupBy group_by, const std::string& method) {
    if (task_ids(run) != task_ids(reference)) throw ArgumentError("run and reference cover different task sets");
    auto rows = aggregate(run, group_by, method);
    const auto ref_rows = aggregate(reference, group_by, "reference");
    std::map<GroupKey, const MetricsRow*> ref;
    for (const auto& r : ref_rows) ref[r.key] = &r;
    for (auto& r : rows) {
        const auto it = ref.find(r.key);
        if (it == ref.end() || !r.accuracy || !it->second->accuracy) continue;
        const MetricsRow& b = *it->second;
        r.d_acc = *r.accuracy - *b.accuracy;
        r.d_tc_per_task = *r.tc_per_task - *b.tc_per_task;
        r.d_tc_total = static_cast<double>(r.tool_calls - b.tool_calls);
        r.cost_ratio = cost_ratio(*r.d_acc, *r.d_tc_per_task);
    }
    return rows;
}

std::vector<CurvePoint> sweep_curve(const std::vector<std::pair<double, std::vector<Trajectory>>>& runs) {
    if (runs.size() < 2) throw ArgumentError("a sweep needs at least two thresholds");
    std::vector<CurvePoint> out;
    std::set<double> seen;
    for (const auto& [tau, ts] : runs) {
        if (!seen.insert(tau).second) throw ArgumentError("duplicate threshold in sweep: " + fmt(tau, 3));
        const auto rows = aggregate(ts, GroupBy::overall, "sweep");
        CurvePoint p;
        p.tau = tau;
        if (!rows.empty() && rows.front().accuracy) {
            p.accuracy = *rows.front().accuracy;
            p.tc_total = rows.front().tool_calls;
            p.tc_per_task = *rows.front().tc_per_task;
            p.judged = rows.front().judged;
        }
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.tau < b.tau; });
    return out;
}

std::string report_csv(const std::vector<MetricsRow>& rows) {
    std::string out =
        "method,category,env,difficulty,trajectories,judged,correct,errors,accuracy,tool_calls,tc_per_task,refused_calls,"
        "d_acc,d_tc_per_task,d_tc_total,cost_ratio\n";
    for (const auto& r : rows) {
        out += csv_field(r.method) + "," + r.key.category + "," + r.key.env + "," + r.key.difficulty + "," +
               std::to_string(r.trajectories) + "," + std::to_string(r.judged) + "," + std::to_string(r.correct) + "," +
               std::to_string(r.errors) + "," + fmt(r.accuracy, 2) + "," + std::to_string(r.tool_calls) + "," +
               fmt(r.tc_per_task) + "," + std::to_string(r.refused_calls) + "," + fmt(r.d_acc, 2) + "," +
               fmt(r.d_tc_per_task) + "," + fmt(r.d_tc_total, 0) + "," + fmt(r.cost_ratio, 2) + "\n";
    }
    return out;
}

json report_json(const MetricsReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"method", r.method},
                        {"category", r.key.category},
                        {"env", r.key.env},
                        {"difficulty", r.key.difficulty},
                        {"trajectories", r.trajectories},
                        {"judged", r.judged},
                        {"correct", r.correct},
                        {"errors", r.errors},
                        {"accuracy", opt(r.accuracy)},
                        {"tool_calls", r.tool_calls},
                        {"tc_per_task", opt(r.tc_per_task)},
                        {"refused_calls", r.refused_calls},
                        {"d_acc", opt(r.d_acc)},
                        {"d_tc_per_task", opt(r.d_tc_per_task)},
                        {"d_tc_total", opt(r.d_tc_total)},
                        {"cost_ratio", opt(r.cost_ratio)}});
    }
    json curve = json::array();
    for (const auto& p : report.curve) {
        curve.push_back({{"tau", p.tau}, {"accuracy", p.accuracy}, {"tc_total", p.tc_total}, {"tc_per_task", p.tc_per_task}, {"judged", p.judged}});
    }
    return {{"rows", rows}, {"curve", curve}, {"auroc", opt(report.auroc)}};
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::string out = "tau,acc,tc_total,tc_per_task\n";
    for (const auto& p : curve) {
        out += fmt(p.tau, 2) + "," + fmt(p.accuracy, 2) + "," + std::to_string(p.tc_total) + "," + fmt(p.tc_per_task) + "\n";
    }
    return out;
}

void write_report(const std::filesystem::path& dir, const MetricsReport& report) {
    std::filesystem::create_directories(dir);
    io::write_text(dir / "report.csv", report_csv(report.rows));
    io::write_json(dir / "report.json", report_json(report));
    if (!report.curve.empty()) io::write_text(dir / "curve.csv", curve_csv(report.curve));
}

}  // namespace when2tool
