#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool::toolkit {

// ---- lists (JSON arrays of integers, 1D or 2D) ----

nlohmann::json list_append(const nlohmann::json& list, const nlohmann::json& value);
nlohmann::json list_remove(const nlohmann::json& list, long long index);
nlohmann::json list_insert(const nlohmann::json& list, long long index, const nlohmann::json& value);
/// 1D: ascending. 2D: axis 0 sorts each column, axis 1 (default) sorts each row.
nlohmann::json list_sort(const nlohmann::json& list, std::optional<int> axis = std::nullopt);
nlohmann::json list_reverse(const nlohmann::json& list);
/// Python repr of a (possibly nested) integer list.
std::string render_list(const nlohmann::json& list);

// ---- dates ----

std::chrono::year_month_day parse_date(std::string_view text);
std::string format_date(std::chrono::year_month_day d);
std::chrono::year_month_day date_add(std::chrono::year_month_day d, long long days);
/// d2 - d1 in days.
long long date_diff(std::chrono::year_month_day d1, std::chrono::year_month_day d2);
std::string day_of_week(std::chrono::year_month_day d);

// ---- schedules (minutes since midnight, half-open [start, end)) ----

struct Interval {
    int start = 0;
    int end = 0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

int parse_clock(std::string_view hhmm);
/// "9:00" style (no leading zero on hours).
std::string format_clock(int minutes);
/// "9:00-10:00"
std::string format_interval(const Interval& iv);
Interval parse_interval(std::string_view text);

/// Maximal free gaps of length >= duration inside [range_start, range_end), earliest first.
std::vector<Interval> find_free_slots(std::vector<Interval> meetings, int duration, int range_start, int range_end);
bool check_conflict(const std::vector<Interval>& meetings, const Interval& candidate);
std::string list_meetings(std::vector<Interval> meetings);

void to_json(nlohmann::json& j, const Interval& iv);
void from_json(const nlohmann::json& j, Interval& iv);

}  // namespace when2tool::toolkit
