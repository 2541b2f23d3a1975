#include "when2tool/toolkit/execution.hpp"

#include "when2tool/toolkit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace when2tool::toolkit {

namespace chr = std::chrono;
using nlohmann::json;

namespace {

bool is_int(const json& v) { return v.is_number_integer(); }

bool is_2d(const json& list) { return !list.empty() && list.front().is_array(); }

void require_list(const json& list) {
    if (!list.is_array()) throw ToolError("list argument must be a list");
    if (is_2d(list)) {
        const std::size_t w = list.front().size();
        for (const auto& row : list) {
            if (!row.is_array() || row.size() != w) throw ToolError("2D list rows must have equal length");
            for (const auto& v : row) {
                if (!is_int(v)) throw ToolError("list elements must be integers");
            }
        }
    } else {
        for (const auto& v : list) {
            if (!is_int(v)) throw ToolError("list elements must be integers");
        }
    }
}

void render_into(const json& v, std::string& out) {
    if (v.is_array()) {
        out += '[';
        bool first = true;
        for (const auto& e : v) {
            if (!first) out += ", ";
            first = false;
            render_into(e, out);
        }
        out += ']';
    } else {
        out += v.dump();
    }
}

}  // namespace

json list_append(const json& list, const json& value) {
    require_list(list);
    json out = list;
    out.push_back(value);
    return out;
}

json list_remove(const json& list, long long index) {
    require_list(list);
    const auto n = static_cast<long long>(list.size());
    if (index < 0 || index >= n) throw ToolError("index out of range");
    json out = list;
    out.erase(static_cast<std::size_t>(index));
    return out;
}

json list_insert(const json& list, long long index, const json& value) {
    require_list(list);
    const auto n = static_cast<long long>(list.size());
    if (index < 0 || index > n) throw ToolError("index out of range");
    json out = json::array();
    for (long long i = 0; i < n; ++i) {
        if (i == index) out.push_back(value);
        out.push_back(list[static_cast<std::size_t>(i)]);
    }
    if (index == n) out.push_back(value);
    return out;
}

json list_sort(const json& list, std::optional<int> axis) {
    require_list(list);
    auto sort_ints = [](std::vector<long long>& v) { std::stable_sort(v.begin(), v.end()); };
    if (!is_2d(list)) {
        if (axis) throw ToolError("axis is only valid for 2D lists");
        auto v = list.get<std::vector<long long>>();
        sort_ints(v);
        return v;
    }
    const int ax = axis.value_or(1);
    if (ax != 0 && ax != 1) throw ToolError("axis must be 0 or 1");
    auto m = list.get<std::vector<std::vector<long long>>>();
    if (ax == 1) {
        for (auto& row : m) sort_ints(row);
    } else {
        const std::size_t w = m.front().size();
        for (std::size_t j = 0; j < w; ++j) {
            std::vector<long long> col;
            for (const auto& row : m) col.push_back(row[j]);
            sort_ints(col);
            for (std::size_t i = 0; i < m.size(); ++i) m[i][j] = col[i];
        }
    }
    return m;
}

json list_reverse(const json& list) {
    require_list(list);
    json out = json::array();
    for (auto it = list.rbegin(); it != list.rend(); ++it) out.push_back(*it);
    return out;
}

std::string render_list(const json& list) {
    std::string out;
    render_into(list, out);
    return out;
}

chr::year_month_day parse_date(std::string_view text) {
    int y = 0;
    unsigned m = 0, d = 0;
    auto num = [&](std::string_view s, auto& out) {
        const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
        return r.ec == std::errc{} && r.ptr == s.data() + s.size();
    };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !num(text.substr(0, 4), y) ||
        !num(text.substr(5, 2), m) || !num(text.substr(8, 2), d)) {
        throw ToolError("malformed date (expected YYYY-MM-DD): " + std::string(text));
    }
    const chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
    if (!ymd.ok()) throw ToolError("invalid calendar date: " + std::string(text));
    return ymd;
}

std::string format_date(chr::year_month_day d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

chr::year_month_day date_add(chr::year_month_day d, long long days) {
    const chr::year_month_day r{chr::sys_days{d} + chr::days{days}};
    if (!r.ok() || static_cast<int>(r.year()) < 1 || static_cast<int>(r.year()) > 9999) {
        throw ToolError("date out of range");
    }
    return r;
}

long long date_diff(chr::year_month_day d1, chr::year_month_day d2) {
    return (chr::sys_days{d2} - chr::sys_days{d1}).count();
}

std::string day_of_week(chr::year_month_day d) {
    static constexpr std::string_view kNames[] = {"Sunday",   "Monday", "Tuesday", "Wednesday",
                                                  "Thursday", "Friday", "Saturday"};
    return std::string(kNames[chr::weekday{chr::sys_days{d}}.c_encoding()]);
}

int parse_clock(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    const auto colon = s.find(':');
    int h = 0, m = 0;
    if (colon == std::string_view::npos || colon == 0 || colon > 2 || s.size() - colon != 3) {
        throw ToolError("malformed time (expected H:MM): " + std::string(s));
    }
    auto r1 = std::from_chars(s.data(), s.data() + colon, h);
    auto r2 = std::from_chars(s.data() + colon + 1, s.data() + s.size(), m);
    if (r1.ec != std::errc{} || r1.ptr != s.data() + colon || r2.ec != std::errc{} || r2.ptr != s.data() + s.size() ||
        h < 0 || h > 24 || m < 0 || m > 59 || (h == 24 && m != 0)) {
        throw ToolError("malformed time (expected H:MM): " + std::string(s));
    }
    return h * 60 + m;
}

std::string format_clock(int minutes) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%d:%02d", minutes / 60, minutes % 60);
    return buf;
}

std::string format_interval(const Interval& iv) { return format_clock(iv.start) + "-" + format_clock(iv.end); }

Interval parse_interval(std::string_view text) {
    auto dash = text.find('-');
    std::size_t skip = 1;
    if (dash == std::string_view::npos) {
        dash = text.find("\xe2\x80\x93");  // en dash
        skip = 3;
    }
    if (dash == std::string_view::npos) throw ToolError("malformed interval: " + std::string(text));
    Interval iv{parse_clock(text.substr(0, dash)), parse_clock(text.substr(dash + skip))};
    if (iv.start >= iv.end) throw ToolError("interval must have start < end: " + std::string(text));
    return iv;
}

namespace {

void validate(const Interval& iv) {
    if (iv.start < 0 || iv.end > 24 * 60 || iv.start >= iv.end) throw ToolError("malformed interval");
}

}  // namespace

std::vector<Interval> find_free_slots(std::vector<Interval> meetings, int duration, int range_start, int range_end) {
    if (duration <= 0) throw ToolError("duration must be positive");
    validate({range_start, range_end});
    for (const auto& m : meetings) validate(m);
    std::sort(meetings.begin(), meetings.end(),
              [](const Interval& a, const Interval& b) { return a.start != b.start ? a.start < b.start : a.end < b.end; });
    std::vector<Interval> out;
    int cursor = range_start;
    for (const auto& m : meetings) {
        if (m.end <= cursor) continue;
        if (m.start >= range_end) break;
        if (m.start > cursor && m.start - cursor >= duration) out.push_back({cursor, m.start});
        cursor = std::max(cursor, m.end);
        if (cursor >= range_end) break;
    }
    if (cursor < range_end && range_end - cursor >= duration) out.push_back({cursor, range_end});
    return out;
}

bool check_conflict(const std::vector<Interval>& meetings, const Interval& candidate) {
    validate(candidate);
    for (const auto& m : meetings) {
        validate(m);
        if (std::max(m.start, candidate.start) < std::min(m.end, candidate.end)) return true;
    }
    return false;
}

std::string list_meetings(std::vector<Interval> meetings) {
    for (const auto& m : meetings) validate(m);
    std::stable_sort(meetings.begin(), meetings.end(),
                     [](const Interval& a, const Interval& b) { return a.start != b.start ? a.start < b.start : a.end < b.end; });
    std::string out;
    for (std::size_t i = 0; i < meetings.size(); ++i) {
        if (i) out += ", ";
        out += format_interval(meetings[i]);
    }
    return out.empty() ? "(no meetings)" : out;
}

void to_json(json& j, const Interval& iv) { j = json{{"start", format_clock(iv.start)}, {"end", format_clock(iv.end)}}; }

void from_json(const json& j, Interval& iv) {
    auto clock = [](const json& v) {
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_string()) return parse_clock(v.get<std::string>());
        throw ToolError("malformed time value");
    };
    if (j.is_string()) {
        iv = parse_interval(j.get<std::string>());
    } else if (j.is_array() && j.size() == 2) {
        iv = {clock(j[0]), clock(j[1])};
    } else if (j.is_object() && j.contains("start") && j.contains("end")) {
        iv = {clock(j.at("start")), clock(j.at("end"))};
    } else {
        throw ToolError("malformed meeting");
    }
    if (iv.start >= iv.end) throw ToolError("meeting must have start < end");
}

}  // namespace when2tool::toolkit
