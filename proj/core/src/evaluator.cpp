#include "when2tool/evaluator.hpp"

#include "when2tool/common.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>

namespace when2tool {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<FailureReason, std::string_view>, 4> kReasonNames{{
    {FailureReason::none, "none"},
    {FailureReason::no_boxed_answer, "no_boxed_answer"},
    {FailureReason::wrong_value, "wrong_value"},
    {FailureReason::malformed, "malformed"},
}};

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

/// Lowercase, whitespace runs collapsed to one space, trimmed.
std::string norm_text(std::string_view s) {
    std::string out;
    bool space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

std::string strip_quotes(std::string s) {
    if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) return s.substr(1, s.size() - 2);
    return s;
}

/// Removes LaTeX wrappers a model may put inside the box.
std::string clean_boxed(std::string s) {
    s = trim(s);
    for (std::string_view w : {"\\text{", "\\mathrm{", "\\texttt{"}) {
        if (s.rfind(w, 0) == 0 && s.back() == '}') s = trim(std::string_view(s).substr(w.size(), s.size() - w.size() - 1));
    }
    if (s.size() >= 2 && s.front() == '$' && s.back() == '$') s = trim(std::string_view(s).substr(1, s.size() - 2));
    return s;
}

/// Removes thousands separators and surrounding space from a numeric token.
std::string numeric_token(std::string_view s) {
    std::string out;
    for (char c : trim(s)) {
        if (c == ',' || c == '_' || c == ' ' || c == '\\') continue;  // also "1\,000"
        out.push_back(c);
    }
    return out;
}

/// Canonical integer digits, or nullopt. Accepts "+40", "1,234", "40.0".
std::optional<std::string> parse_integer(std::string_view raw) {
    std::string s = numeric_token(raw);
    if (s.empty()) return std::nullopt;
    bool neg = false;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.erase(s.begin());
    }
    if (const auto dot = s.find('.'); dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        if (frac.find_first_not_of('0') != std::string::npos) return std::nullopt;
        s.resize(dot);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) return std::nullopt;
    const auto nz = s.find_first_not_of('0');
    s = nz == std::string::npos ? "0" : s.substr(nz);
    if (s == "0") neg = false;
    return (neg ? "-" : "") + s;
}

std::optional<double> parse_real(std::string_view raw) {
    const std::string s = numeric_token(raw);
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool reals_close(double a, double b) {
    return std::fabs(a - b) <= 1e-6 * std::max(std::fabs(a), std::fabs(b)) || std::fabs(a - b) <= 1e-9;
}

std::optional<bool> parse_bool(std::string_view raw) {
    std::string s = lower(strip_quotes(trim(raw)));
    while (!s.empty() && (s.back() == '.' || s.back() == '!')) s.pop_back();
    if (s == "true" || s == "yes") return true;
    if (s == "false" || s == "no") return false;
    return std::nullopt;
}

constexpr std::array<std::string_view, 12> kMonths{"january", "february", "march",     "april",   "may",      "june",
                                                   "july",    "august",   "september", "october", "november", "december"};
constexpr std::array<std::string_view, 7> kDays{"monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

std::optional<unsigned> month_of(std::string_view word) {
    const std::string w = lower(std::string(word));
    if (w.size() < 3) return std::nullopt;
    for (unsigned i = 0; i < kMonths.size(); ++i) {
        if (w == kMonths[i] || (w.size() <= 4 && kMonths[i].rfind(w.substr(0, 3), 0) == 0 && (w.size() == 3 || w.back() == '.'))) {
            return i + 1;
        }
    }
    return std::nullopt;
}

std::optional<std::string> parse_day_name(std::string_view raw) {
    std::string s = lower(strip_quotes(trim(raw)));
    while (!s.empty() && s.back() == '.') s.pop_back();
    for (auto d : kDays) {
        if (s == d || (s.size() == 3 && d.substr(0, 3) == s)) return std::string(d);
    }
    return std::nullopt;
}

/// YYYY-MM-DD, "March 10, 2024", "Mar 10 2024", "10 March 2024", optionally prefixed by a weekday.
std::optional<std::string> parse_any_date(std::string_view raw) {
    namespace chr = std::chrono;
    std::string s = strip_quotes(trim(raw));
    int y = 0;
    unsigned m = 0, d = 0;
    if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
        char* e = nullptr;
        y = static_cast<int>(std::strtol(s.c_str(), &e, 10));
        m = static_cast<unsigned>(std::strtoul(s.c_str() + 5, &e, 10));
        d = static_cast<unsigned>(std::strtoul(s.c_str() + 8, &e, 10));
    } else {
        std::vector<std::string> words;
        std::string cur;
        for (char c : s) {
            if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
                if (!cur.empty()) words.push_back(std::move(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) words.push_back(std::move(cur));
        if (words.size() == 4 && parse_day_name(words.front())) words.erase(words.begin());
        if (words.size() != 3) return std::nullopt;
        auto num = [](const std::string& w) -> std::optional<long> {
            std::string t = w;
            for (std::string_view suf : {"st", "nd", "rd", "th"}) {
                if (t.size() > 2 && t.compare(t.size() - 2, 2, suf) == 0) t.resize(t.size() - 2);
            }
            if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) return std::nullopt;
            return std::strtol(t.c_str(), nullptr, 10);
        };
        if (auto mm = month_of(words[0]); mm && num(words[1]) && num(words[2])) {
            m = *mm;
            d = static_cast<unsigned>(*num(words[1]));
            y = static_cast<int>(*num(words[2]));
        } else if (auto mm2 = month_of(words[1]); mm2 && num(words[0]) && num(words[2])) {
            m = *mm2;
            d = static_cast<unsigned>(*num(words[0]));
            y = static_cast<int>(*num(words[2]));
        } else {
            return std::nullopt;
        }
    }
    const chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
    if (!ymd.ok()) return std::nullopt;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return std::string(buf);
}

bool literals_match(const PyLiteral& got, const PyLiteral& want) {
    using T = PyLiteral::Type;
    auto seq = [](T t) { return t == T::list || t == T::tuple; };
    if (seq(want.type)) {
        if (!seq(got.type) || got.items.size() != want.items.size()) return false;
        for (std::size_t i = 0; i < want.items.size(); ++i) {
            if (!literals_match(got.items[i], want.items[i])) return false;
        }
        return true;
    }
    switch (want.type) {
        case T::none: return got.type == T::none;
        case T::boolean: return got.type == T::boolean && got.boolean == want.boolean;
        case T::string: return got.type == T::string && norm_text(got.text) == norm_text(want.text);
        case T::integer:
            if (got.type == T::integer) return got.text == want.text;
            if (got.type == T::real) return reals_close(got.real, std::strtod(want.text.c_str(), nullptr));
            return false;
        case T::real:
            if (got.type == T::real) return reals_close(got.real, want.real);
            if (got.type == T::integer) return reals_close(std::strtod(got.text.c_str(), nullptr), want.real);
            return false;
        default: return false;
    }
}

std::optional<PyLiteral> parse_list_answer(const std::string& s) {
    if (auto v = parse_py_literal(s)) return v;
    return parse_py_literal("[" + s + "]");
}

std::vector<std::string> split_items(const std::string& s) {
    if (auto v = parse_py_literal(s); v && (v->type == PyLiteral::Type::list || v->type == PyLiteral::Type::tuple)) {
        std::vector<std::string> out;
        for (const auto& it : v->items) out.push_back(it.type == PyLiteral::Type::string ? it.text : py_repr(it));
        return out;
    }
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ';') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

enum class Verdict { correct, wrong, malformed };

Verdict compare(const std::string& got_raw, const AnswerValue& expected) {
    const std::string got = clean_boxed(got_raw);
    switch (expected.kind) {
        case AnswerKind::integer: {
            const auto g = parse_integer(got);
            if (!g) return Verdict::malformed;
            const auto w = parse_integer(expected.text);
            return w && *g == *w ? Verdict::correct : Verdict::wrong;
        }
        case AnswerKind::decimal: {
            const auto g = parse_real(got);
            if (!g) return Verdict::malformed;
            const auto w = parse_real(expected.text);
            if (!w) return Verdict::wrong;
            if (expected.precision >= 0) {
                const double scale = std::pow(10.0, expected.precision);
                return std::llround(*g * scale) == std::llround(*w * scale) ? Verdict::correct : Verdict::wrong;
            }
            return reals_close(*g, *w) ? Verdict::correct : Verdict::wrong;
        }
        case AnswerKind::value_list:
        case AnswerKind::matrix: {
            const auto g = parse_list_answer(got);
            if (!g) return Verdict::malformed;
            const auto w = parse_py_literal(expected.text);
            return w && literals_match(*g, *w) ? Verdict::correct : Verdict::wrong;
        }
        case AnswerKind::string_list: {
            const auto g = split_items(got);
            const auto w = split_items(expected.text);
            if (g.size() != w.size()) return Verdict::wrong;
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (norm_text(strip_quotes(g[i])) != norm_text(w[i])) return Verdict::wrong;
            }
            return Verdict::correct;
        }
        case AnswerKind::boolean: {
            const auto g = parse_bool(got);
            if (!g) return Verdict::malformed;
            return g == parse_bool(expected.text) ? Verdict::correct : Verdict::wrong;
        }
        case AnswerKind::day_name: {
            const auto g = parse_day_name(got);
            if (!g) return Verdict::malformed;
            return g == parse_day_name(expected.text) ? Verdict::correct : Verdict::wrong;
        }
        case AnswerKind::date: {
            const auto g = parse_any_date(got);
            if (!g) return Verdict::malformed;
            return g == parse_any_date(expected.text) ? Verdict::correct : Verdict::wrong;
        }
        case AnswerKind::string: {
            const std::string want = norm_text(expected.text);
            std::string g = norm_text(got);
            if (g == want) return Verdict::correct;
            return norm_text(strip_quotes(trim(got))) == want ? Verdict::correct : Verdict::wrong;
        }
    }
    return Verdict::wrong;
}

}  // namespace

std::string_view to_string(FailureReason r) {
    for (const auto& [k, n] : kReasonNames) {
        if (k == r) return n;
    }
    return "?";
}

FailureReason parse_failure_reason(std::string_view s) {
    for (const auto& [k, n] : kReasonNames) {
        if (n == s) return k;
    }
    throw ArgumentError("unknown failure reason: " + std::string(s));
}

void to_json(json& j, const Judgment& v) {
    j = json{{"correct", v.correct}, {"failure_reason", to_string(v.failure_reason)}};
    j["extracted"] = v.extracted ? json(v.extracted->text) : json(nullptr);
}

void from_json(const json& j, Judgment& v) {
    v.correct = j.at("correct").get<bool>();
    v.failure_reason = parse_failure_reason(j.at("failure_reason").get<std::string>());
    if (j.contains("extracted") && !j.at("extracted").is_null()) {
        v.extracted = AnswerValue{AnswerKind::string, j.at("extracted").get<std::string>(), -1};
    } else {
        v.extracted.reset();
    }
}

std::optional<AnswerValue> extract_answer(std::string_view text) {
    static constexpr std::string_view kMarker = "\\boxed{";
    std::optional<AnswerValue> last;
    std::size_t pos = text.find(kMarker);
    while (pos != std::string_view::npos) {
        const std::size_t open = pos + kMarker.size();
        int depth = 1;
        std::size_t i = open;
        for (; i < text.size() && depth > 0; ++i) {
            if (text[i] == '{') ++depth;
            else if (text[i] == '}') --depth;
        }
        if (depth == 0) last = AnswerValue{AnswerKind::string, std::string(text.substr(open, i - 1 - open)), -1};
        pos = text.find(kMarker, open);
    }
    return last;
}

Judgment judge(const std::optional<AnswerValue>& extracted, const AnswerValue& expected) {
    Judgment j;
    j.extracted = extracted;
    if (!extracted) {
        j.failure_reason = FailureReason::no_boxed_answer;
        return j;
    }
    switch (compare(extracted->text, expected)) {
        case Verdict::correct:
            j.correct = true;
            j.failure_reason = FailureReason::none;
            break;
        case Verdict::wrong: j.failure_reason = FailureReason::wrong_value; break;
        case Verdict::malformed: j.failure_reason = FailureReason::malformed; break;
    }
    return j;
}

Judgment judge(const std::optional<AnswerValue>& extracted, const Task& task) { return judge(extracted, task.expected_answer); }

Judgment judge_output(std::string_view model_output, const Task& task) { return judge(extract_answer(model_output), task); }

std::string boxed(std::string_view text) { return "\\boxed{" + std::string(text) + "}"; }

}  // namespace when2tool
