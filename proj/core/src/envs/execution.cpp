#include "envs/envs.hpp"

#include "when2tool/toolkit/execution.hpp"
#include "when2tool/toolkit/pyinterp.hpp"
#include "when2tool/toolkit/regex.hpp"

#include <algorithm>
#include <chrono>
#include <regex>

namespace when2tool::envs {

using namespace when2tool::toolkit;
namespace chr = std::chrono;

namespace {

std::string n2s(long long v) { return std::to_string(v); }

// ---------------------------------------------------------------- lists

Draft list_draft(const json& list, const std::string& op, const json& args, bool two_d) {
    json call_args = args;
    call_args["list"] = list;
    json result;
    std::string shown;
    if (op == "append") {
        result = list_append(list, args.at("value"));
        shown = "append(value=" + args.at("value").dump() + ")";
    } else if (op == "remove") {
        result = list_remove(list, args.at("index").get<long long>());
        shown = "remove(index=" + args.at("index").dump() + ")";
    } else if (op == "insert") {
        result = list_insert(list, args.at("index").get<long long>(), args.at("value"));
        shown = "insert(index=" + args.at("index").dump() + ", value=" + args.at("value").dump() + ")";
    } else if (op == "sort") {
        std::optional<int> axis;
        if (args.contains("axis")) axis = args.at("axis").get<int>();
        result = list_sort(list, axis);
        shown = axis ? "sort(axis=" + n2s(*axis) + ")" : "sort()";
    } else {
        result = list_reverse(list);
        shown = "reverse()";
    }
    Draft d;
    d.prompt = "Initial " + render_list(list) + ". Apply " + shown + ". Return final " + (two_d ? "2D list." : "list.");
    d.answer = ans(two_d ? AnswerKind::matrix : AnswerKind::value_list, render_list(result));
    d.solution.push_back(step(op, call_args, StepCheck::value, d.answer.text));
    return d;
}

Draft random_list_op(Rng& r, int len_lo, int len_hi, long long lo, long long hi) {
    std::vector<long long> xs;
    const int n = r.uniform_int(len_lo, len_hi);
    for (int i = 0; i < n; ++i) xs.push_back(r.uniform(lo, hi));
    static const std::vector<std::string> ops{"append", "remove", "insert", "sort", "reverse"};
    const std::string& op = r.pick(ops);
    json args = json::object();
    if (op == "append") args["value"] = r.uniform(lo, hi);
    if (op == "remove") args["index"] = r.uniform(0, n - 1);
    if (op == "insert") {
        args["index"] = r.uniform(0, n);
        args["value"] = r.uniform(lo, hi);
    }
    return list_draft(json(xs), op, args, false);
}

// ---------------------------------------------------------------- dates

chr::year_month_day random_date(Rng& r, int y_lo, int y_hi) {
    const chr::sys_days lo = chr::year_month_day{chr::year{y_lo}, chr::January, chr::day{1}};
    const chr::sys_days hi = chr::year_month_day{chr::year{y_hi}, chr::December, chr::day{31}};
    return chr::sys_days{chr::days{r.uniform(lo.time_since_epoch().count(), hi.time_since_epoch().count())}};
}

std::string spoken(chr::year_month_day d, bool with_year = true) {
    std::string s = month_name(static_cast<unsigned>(d.month())) + " " + n2s(static_cast<unsigned>(d.day()));
    if (with_year) s += ", " + n2s(static_cast<int>(d.year()));
    return s;
}

Draft diff_draft(std::string prompt, chr::year_month_day a, chr::year_month_day b) {
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_int(n2s(date_diff(a, b)));
    d.solution.push_back(step("date_diff", {{"date1", format_date(a)}, {"date2", format_date(b)}}, StepCheck::value, d.answer.text));
    return d;
}

Draft diff_spoken(chr::year_month_day a, chr::year_month_day b) {
    std::string prompt = a.year() == b.year() ? "How many days between " + spoken(a, false) + " and " + spoken(b) + "?"
                                              : "How many days between " + spoken(a) + " and " + spoken(b) + "?";
    return diff_draft(std::move(prompt), a, b);
}

Draft add_draft(chr::year_month_day a, long long days) {
    Draft d;
    d.prompt = "What date is " + n2s(days) + " days after " + spoken(a) + "? Answer in YYYY-MM-DD format.";
    d.answer = ans(AnswerKind::date, format_date(date_add(a, days)));
    d.solution.push_back(step("date_add", {{"date", format_date(a)}, {"days", days}}, StepCheck::value, d.answer.text));
    return d;
}

Draft dow_draft(std::string prompt, chr::year_month_day a) {
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans(AnswerKind::day_name, day_of_week(a));
    d.solution.push_back(step("day_of_week", {{"date", format_date(a)}}, StepCheck::value, d.answer.text));
    return d;
}

// ---------------------------------------------------------------- code

AnswerValue classify_output(const std::string& out) {
    static const std::regex kInt("-?[0-9]+");
    if (std::regex_match(out, kInt)) return ans_int(out);
    if (!out.empty() && out.front() == '[' && parse_py_literal(out)) return ans(AnswerKind::value_list, out);
    return ans_str(out);
}

Draft code_draft(const std::string& code, const char* tool = "run_python") {
    const std::string out = code_run(code);
    if (out.empty() || out.find('\n') != std::string::npos) throw std::logic_error("code task must print one line");
    Draft d;
    d.prompt = code.find('\n') == std::string::npos ? "What is the output of: " + code
                                                     : "What is the output of the following Python code?\n" + code;
    d.answer = classify_output(out);
    d.solution.push_back(step(tool, {{"code", code}}, StepCheck::value, out));
    return d;
}

std::string py_list(const std::vector<long long>& xs) { return render_int_list(xs); }

std::vector<long long> ints(Rng& r, int n, long long lo, long long hi) {
    std::vector<long long> v;
    for (int i = 0; i < n; ++i) v.push_back(r.uniform(lo, hi));
    return v;
}

const std::vector<std::string>& code_words() {
    static const std::vector<std::string> v{"hello",  "python", "banana", "orange", "rocket", "planet", "garden",
                                            "window", "yellow", "silver", "puzzle", "kitten", "meadow", "lantern",
                                            "harbor", "thunder", "glacier", "compass", "quartz", "falcon"};
    return v;
}

const std::vector<std::string>& code_sentences() {
    static const std::vector<std::string> v{
        "the quick brown fox jumps over the lazy dog", "a stitch in time saves nine",
        "all that glitters is not gold",              "practice makes perfect every single day",
        "knowledge is power and power is knowledge",  "every cloud has a silver lining somewhere",
        "the early bird catches the worm",            "actions speak louder than words",
        "fortune favors the bold and the brave",      "where there is smoke there is fire"};
    return v;
}

std::string code_easy(Rng& r) {
    const long long a = r.uniform(2, 30), b = r.uniform(2, 12), c = r.uniform(1, 20);
    const std::string w = r.pick(code_words());
    switch (r.uniform_int(0, 8)) {
        case 0: return "print(len('" + w + "'))";
        case 1: return "print(" + n2s(a) + " * " + n2s(b) + " + " + n2s(c) + ")";
        case 2: return "print('" + w + "'.upper())";
        case 3: return "print(max(" + py_list(ints(r, r.uniform_int(3, 5), 1, 50)) + "))";
        case 4: return "print(sum(" + py_list(ints(r, r.uniform_int(3, 5), 1, 20)) + "))";
        case 5: return "print(" + n2s(a * 3 + c) + " // " + n2s(b) + ")";
        case 6: return "print(" + n2s(a * 3 + c) + " % " + n2s(b) + ")";
        case 7: return "print('" + w + "'[::-1])";
        default: return "print(sorted(" + py_list(ints(r, r.uniform_int(3, 5), 1, 30)) + "))";
    }
}

std::string code_medium(Rng& r) {
    const long long n = r.uniform(5, 15), k = r.uniform(2, 9), m = r.uniform(2, 5);
    switch (r.uniform_int(0, 7)) {
        case 0: return "print(sum(x**2 for x in range(1," + n2s(n) + ")))";
        case 1: return "print([x*" + n2s(k) + " for x in range(" + n2s(n) + ") if x % " + n2s(m) + " == 0])";
        case 2:
            return "total = 0\nfor i in range(" + n2s(n) + "):\n    total += i * " + n2s(k) + "\nprint(total)";
        case 3: {
            const std::string s = r.pick(code_sentences());
            const char ch = s[static_cast<std::size_t>(r.uniform(0, static_cast<long long>(s.size()) - 1))];
            return "s = '" + s + "'\nprint(s.count('" + std::string(1, ch == ' ' ? 'e' : ch) + "'))";
        }
        case 4: return "words = '" + r.pick(code_sentences()) + "'.split()\nprint(len(words), max(len(w) for w in words))";
        case 5: return "print(''.join(sorted('" + r.pick(code_words()) + "')))";
        case 6:
            return "x = " + n2s(r.uniform(10, 60)) + "\nwhile x > " + n2s(m) + ":\n    x = x - " + n2s(k) +
                   " if x % 2 == 0 else x // 2\nprint(x)";
        default:
            return "nums = " + py_list(ints(r, r.uniform_int(6, 9), 1, 40)) +
                   "\nevens = [n for n in nums if n % 2 == 0]\nprint(len(evens), sum(evens))";
    }
}

std::string code_hard(Rng& r) {
    switch (r.uniform_int(0, 6)) {
        case 0:
            return "n = " + n2s(r.uniform(20, 300)) +
                   "\nsteps = 0\nwhile n != 1:\n    n = n // 2 if n % 2 == 0 else 3 * n + 1\n    steps += 1\nprint(steps)";
        case 1:
            return "def fib(n):\n    a, b = 0, 1\n    for _ in range(n):\n        a, b = b, a + b\n    return a\nprint(fib(" +
                   n2s(r.uniform(30, 80)) + "))";
        case 2:
            return "def f(n):\n    if n <= 1:\n        return n\n    return f(n - 1) + " + n2s(r.uniform(2, 3)) +
                   " * f(n - 2)\nprint(f(" + n2s(r.uniform(10, 16)) + "))";
        case 3: {
            std::vector<long long> coins{1, r.uniform(2, 4), r.uniform(5, 9), r.uniform(10, 25)};
            return "coins = " + py_list(coins) + "\namount = " + n2s(r.uniform(40, 150)) +
                   "\nways = [1] + [0] * amount\nfor c in coins:\n    for v in range(c, amount + 1):\n        ways[v] += ways[v - c]\nprint(ways[amount])";
        }
        case 4:
            return "limit = " + n2s(r.uniform(100, 600)) +
                   "\nsieve = [True] * limit\ncount = 0\nfor i in range(2, limit):\n    if sieve[i]:\n        count += 1\n        for j in range(i * i, limit, i):\n            sieve[j] = False\nprint(count)";
        case 5:
            return "arr = " + py_list(ints(r, r.uniform_int(10, 14), 1, 60)) +
                   "\nbest = [1] * len(arr)\nfor i in range(len(arr)):\n    for j in range(i):\n        if arr[j] < arr[i]:\n            best[i] = max(best[i], best[j] + 1)\nprint(max(best))";
        default:
            return "total = 0\nfor i in range(1, " + n2s(r.uniform(8, 20)) + "):\n    for j in range(1, " + n2s(r.uniform(8, 20)) +
                   "):\n        if (i * j) % " + n2s(r.uniform(3, 7)) + " == 1:\n            total += i + j\nprint(total)";
    }
}

// ---------------------------------------------------------------- schedule

std::vector<std::string> render_meetings(const std::vector<Interval>& ms) {
    std::vector<std::string> out;
    for (const auto& m : ms) out.push_back(format_interval(m));
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
    return s;
}

std::string duration_text(int minutes) {
    if (minutes % 60 == 0) return n2s(minutes / 60) + "-hour";
    return n2s(minutes) + "-min";
}

std::vector<Interval> random_meetings(Rng& r, int n, int day_start, int day_end, int granularity, bool allow_overlap) {
    std::vector<Interval> ms;
    int guard = 0;
    while (static_cast<int>(ms.size()) < n && guard++ < 10'000) {
        const int len = granularity * r.uniform_int(std::max(1, 30 / granularity), 120 / granularity);
        const int slots = (day_end - day_start - len) / granularity;
        if (slots < 0) continue;
        const int start = day_start + granularity * r.uniform_int(0, slots);
        const Interval iv{start, start + len};
        bool clash = false;
        for (const auto& m : ms) clash = clash || (iv.start < m.end && m.start < iv.end);
        if (clash && !allow_overlap) continue;
        ms.push_back(iv);
    }
    std::sort(ms.begin(), ms.end(), [](const Interval& a, const Interval& b) { return a.start < b.start || (a.start == b.start && a.end < b.end); });
    return ms;
}

json slot_args(const std::vector<Interval>& ms, int duration, int start, int end) {
    return {{"meetings", render_meetings(ms)}, {"duration", duration}, {"start", format_clock(start)}, {"end", format_clock(end)}};
}

Draft schedule_yes_no(const std::vector<Interval>& ms, int duration, int start, int end) {
    const bool free = !find_free_slots(ms, duration, start, end).empty();
    Draft d;
    d.prompt = "Meetings: " + join(render_meetings(ms), ", ") + ". Is there a free " + duration_text(duration) +
               " slot between " + format_clock(start) + " and " + format_clock(end) + "?";
    d.answer = ans(AnswerKind::boolean, free ? "Yes" : "No");
    d.solution.push_back(step("find_free_slot", slot_args(ms, duration, start, end), StepCheck::nonempty, d.answer.text));
    return d;
}

// ---------------------------------------------------------------- regex

std::string regex_call_text(const std::string& op, const std::string& pattern, const std::string& text, const std::string& repl) {
    if (op == "findall") return "re.findall(r'" + pattern + "', '" + text + "')";
    if (op == "sub") return "re.sub(r'" + pattern + "', r'" + repl + "', '" + text + "')";
    return "re." + op + "(r'" + pattern + "', '" + text + "').group()";
}

std::optional<Draft> regex_draft(const std::string& op, const std::string& pattern, const std::string& text,
                                 const std::string& repl = {}) {
    const std::string out = regex_op(pattern, text, op, repl);
    if ((op == "search" || op == "match") && out == "None") return std::nullopt;
    if (op == "findall" && out == "[]") return std::nullopt;
    if (op == "sub" && out == text) return std::nullopt;
    Draft d;
    d.prompt = "What does " + regex_call_text(op, pattern, text, repl) + " return?";
    d.answer = op == "findall" ? ans(AnswerKind::value_list, out) : ans_str(out);
    json args{{"pattern", pattern}, {"text", text}, {"operation", op}};
    if (op == "sub") args["repl"] = repl;
    d.solution.push_back(step("regex_match", args, StepCheck::value, out));
    return d;
}

std::string random_chars(Rng& r, std::string_view alphabet, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += alphabet[static_cast<std::size_t>(r.uniform(0, static_cast<long long>(alphabet.size()) - 1))];
    return s;
}

std::string lower_word(Rng& r) {
    std::string w = fictional_word(r, r.uniform_int(1, 2));
    for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string out;
    for (char c : w) {
        if (c >= 'a' && c <= 'z') out += c;
    }
    return out;
}

std::optional<Draft> regex_easy(Rng& r) {
    switch (r.uniform_int(0, 4)) {
        case 0: {
            std::string t;
            for (int i = 0; i < r.uniform_int(2, 3); ++i) t += random_chars(r, "abcdefghxyz", r.uniform_int(2, 4)) + n2s(r.uniform(1, 999));
            return regex_draft("findall", "\\d+", t);
        }
        case 1: {
            std::string t;
            for (int i = 0; i < r.uniform_int(3, 4); ++i) {
                std::string w = lower_word(r);
                if (r.bernoulli(0.5) && !w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
                t += (i ? " " : "") + w;
            }
            return regex_draft("findall", "[A-Z][a-z]+", t);
        }
        case 2: {
            const std::string t = lower_word(r) + " " + lower_word(r) + " " + lower_word(r);
            return regex_draft("findall", "[aeiou]", t);
        }
        case 3: {
            const std::string t = "order " + random_chars(r, "ABCDEFGH", 2) + "-" + n2s(r.uniform(100, 999)) + " shipped";
            return regex_draft("search", "[A-Z]+-\\d+", t);
        }
        default: {
            const std::string t = lower_word(r) + " " + n2s(r.uniform(10, 99)) + " " + lower_word(r);
            return regex_draft("sub", "\\d", "#", t);
        }
    }
}

std::optional<Draft> regex_medium(Rng& r) {
    switch (r.uniform_int(0, 5)) {
        case 0: {
            static const std::vector<std::string> tlds{"com", "org", "net", "io"};
            std::string t;
            for (int i = 0; i < r.uniform_int(2, 3); ++i) t += std::string(i ? " " : "") + lower_word(r) + "@" + lower_word(r) + "." + r.pick(tlds);
            return regex_draft("findall", "(\\w+)@(\\w+)\\.(\\w+)", t);
        }
        case 1: {
            std::string t;
            for (int i = 0; i < r.uniform_int(3, 4); ++i) t += std::string(i ? "; " : "") + lower_word(r) + "=" + n2s(r.uniform(1, 500));
            return regex_draft("findall", "(\\w+)=(\\d+)", t);
        }
        case 2: {
            static const std::vector<std::string> verbs{"walk", "talk", "read", "sing", "jump", "cook", "paint", "build"};
            std::string t;
            for (int i = 0; i < 5; ++i) t += std::string(i ? " " : "") + r.pick(verbs) + (r.bernoulli(0.5) ? "ing" : "ed");
            return regex_draft("findall", "\\w+(?=ing\\b)", t);
        }
        case 3: {
            std::string t = "items cost $" + n2s(r.uniform(1, 99)) + " and " + n2s(r.uniform(1, 99)) + " units or $" +
                            n2s(r.uniform(100, 999)) + " total";
            return regex_draft("findall", "(?<=\\$)\\d+", t);
        }
        case 4: {
            static const std::vector<std::string> pets{"cat", "dog", "bird", "fish"};
            std::string t;
            for (int i = 0; i < 6; ++i) t += std::string(i ? " " : "") + r.pick(pets) + (r.bernoulli(0.3) ? "s" : "");
            return regex_draft("findall", "\\b(?:cat|dog)s?\\b", t);
        }
        default: {
            std::string t;
            for (int i = 0; i < 3; ++i) t += std::string(i ? ", " : "") + n2s(r.uniform(1, 31)) + "-" + n2s(r.uniform(1, 12));
            return regex_draft("sub", "(\\d+)-(\\d+)", "\\2/\\1", t);
        }
    }
}

std::optional<Draft> regex_hard(Rng& r) {
    switch (r.uniform_int(0, 3)) {
        case 0: {
            const std::string t = random_chars(r, "abcde", r.uniform_int(60, 72));
            const char lead = static_cast<char>(r.uniform('a', 'e'));
            return regex_draft("findall", std::string("(?=(") + lead + "[a-e]{2}))", t);
        }
        case 1: {
            const std::string t = random_chars(r, "aabbccdxy", r.uniform_int(60, 70));
            return regex_draft("findall", "(\\w)\\1", t);
        }
        case 2: {
            std::string t;
            while (t.size() < 60) t += n2s(r.uniform(1, 999)) + random_chars(r, "pqrstuv", 1) + (r.bernoulli(0.3) ? " " : "");
            return regex_draft("sub", "(\\d+)([a-z])", "\\2\\1", t);
        }
        default: {
            const std::string t = random_chars(r, "0123456789", r.uniform_int(60, 70));
            const char d = static_cast<char>('0' + r.uniform(0, 9));
            return regex_draft("findall", std::string("(?=(") + d + "\\d))", t);
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- List

Draft gen_list(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: return random_list_op(r, 3, 5, 1, 40);
        case Difficulty::medium: return random_list_op(r, 6, 10, 40, 260);
        case Difficulty::hard: {
            const int rows = r.uniform_int(3, 5), cols = r.uniform_int(3, 5);
            json m = json::array();
            for (int i = 0; i < rows; ++i) m.push_back(ints(r, cols, 300, 5000));
            return list_draft(m, "sort", {{"axis", r.uniform_int(0, 1)}}, true);
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Date

Draft gen_date(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: {
            const auto a = random_date(r, 2020, 2030);
            const unsigned last = static_cast<unsigned>(chr::year_month_day_last{a.year(), chr::month_day_last{a.month()}}.day());
            const unsigned d1 = r.uniform_int(1, static_cast<int>(last) - 1);
            const unsigned d2 = r.uniform_int(static_cast<int>(d1) + 1, static_cast<int>(last));
            const chr::year_month_day x{a.year(), a.month(), chr::day{d1}}, y{a.year(), a.month(), chr::day{d2}};
            return diff_draft("How many days between " + spoken(x, false) + " and " + spoken(y) + "?", x, y);
        }
        case Difficulty::medium: {
            if (r.bernoulli(0.5)) {
                chr::year_month_day a = random_date(r, 2000, 2030);
                if (r.bernoulli(0.4)) {  // straddle a February
                    a = chr::year_month_day{a.year(), chr::February, chr::day{static_cast<unsigned>(r.uniform(10, 28))}};
                }
                const auto b = date_add(a, r.uniform(10, 80));
                return diff_spoken(a, b);
            }
            return add_draft(random_date(r, 2000, 2030), r.uniform(20, 200));
        }
        case Difficulty::hard: {
            switch (r.uniform_int(0, 2)) {
                case 0: {
                    const auto a = random_date(r, 1900, 2100);
                    return dow_draft("What day of the week is " + spoken(a) + "?", a);
                }
                case 1: {
                    const auto a = random_date(r, 1950, 2050);
                    const auto b = date_add(a, r.uniform(400, 9000));
                    return diff_spoken(a, b);
                }
                default: {
                    const auto a = random_date(r, 1950, 2050);
                    const long long n = r.uniform(100, 5000);
                    const auto b = date_add(a, n);
                    Draft d;
                    d.prompt = "What day of the week is " + n2s(n) + " days after " + spoken(a) + "?";
                    d.answer = ans(AnswerKind::day_name, day_of_week(b));
                    d.solution.push_back(step("date_add", {{"date", format_date(a)}, {"days", n}}, StepCheck::value, format_date(b)));
                    d.solution.push_back(step("day_of_week", {{"date", "{prev}"}}, StepCheck::value, d.answer.text));
                    return d;
                }
            }
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Code

Draft gen_code(GenContext& ctx) {
    switch (ctx.difficulty) {
        case Difficulty::easy: return code_draft(code_easy(ctx.rng));
        case Difficulty::medium: return code_draft(code_medium(ctx.rng));
        case Difficulty::hard: return code_draft(code_hard(ctx.rng));
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Schedule

Draft gen_schedule(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: {
            const auto ms = random_meetings(r, r.uniform_int(2, 3), 8 * 60, 18 * 60, 60, false);
            const int start = 60 * r.uniform_int(8, 13);
            const int end = start + 60 * r.uniform_int(2, 5);
            return schedule_yes_no(ms, r.bernoulli(0.5) ? 60 : 30, start, end);
        }
        case Difficulty::medium: {
            for (;;) {
                const auto ms = random_meetings(r, r.uniform_int(6, 10), 9 * 60, 17 * 60, 15, true);
                const auto slots = find_free_slots(ms, 30, 9 * 60, 17 * 60);
                if (slots.empty()) continue;
                std::vector<std::string> parts;
                for (const auto& s : slots) parts.push_back(format_interval(s));
                Draft d;
                d.prompt = "Meetings: " + join(render_meetings(ms), ", ") + ". Given these " + n2s(static_cast<long long>(ms.size())) +
                           " meetings, list all free slots of at least 30 minutes between 9:00 and 17:00.";
                d.answer = ans(AnswerKind::string_list, join(parts, ", "));
                d.solution.push_back(step("find_free_slot", slot_args(ms, 30, 9 * 60, 17 * 60), StepCheck::value, d.answer.text));
                return d;
            }
        }
        case Difficulty::hard: {
            for (;;) {
                const auto ms = random_meetings(r, r.uniform_int(15, 20), 8 * 60, 20 * 60, 15, true);
                const auto slots = find_free_slots(ms, 60, 8 * 60, 20 * 60);
                if (slots.empty()) continue;
                const Interval first{slots.front().start, slots.front().start + 60};
                Draft d;
                d.prompt = "Meetings: " + join(render_meetings(ms), ", ") + ". Given these " + n2s(static_cast<long long>(ms.size())) +
                           " meetings, find the first available 1-hour slot between 8:00 and 20:00.";
                d.answer = ans_str(format_interval(first));
                d.solution.push_back(step("find_free_slot", slot_args(ms, 60, 8 * 60, 20 * 60), StepCheck::first_slot, d.answer.text));
                return d;
            }
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Regex

Draft gen_regex(GenContext& ctx) {
    for (;;) {
        std::optional<Draft> d = ctx.difficulty == Difficulty::easy     ? regex_easy(ctx.rng)
                                 : ctx.difficulty == Difficulty::medium ? regex_medium(ctx.rng)
                                                                        : regex_hard(ctx.rng);
        if (d) return std::move(*d);
    }
}

// ---------------------------------------------------------------- fixtures

std::vector<Fixture> fixtures_execution(std::string_view env) {
    std::vector<Fixture> out;
    if (env == "ListEnv") {
        out.push_back({Difficulty::easy, list_draft(json{7, 19, 29}, "insert", {{"index", 2}, {"value", 36}}, false)});
        out.push_back({Difficulty::medium, list_draft(json{86, 197, 199, 232, 66, 53, 234}, "sort", json::object(), false)});
    } else if (env == "DateEnv") {
        // The easy example names no year; 2025 is used for the tool call.
        out.push_back({Difficulty::easy, diff_draft("How many days between January 3 and January 18?",
                                                    chr::year_month_day{chr::year{2025}, chr::January, chr::day{3}},
                                                    chr::year_month_day{chr::year{2025}, chr::January, chr::day{18}})});
        out.push_back({Difficulty::medium, diff_draft("How many days between February 25 and March 10, 2024?",
                                                      chr::year_month_day{chr::year{2024}, chr::February, chr::day{25}},
                                                      chr::year_month_day{chr::year{2024}, chr::March, chr::day{10}})});
        out.push_back({Difficulty::hard, dow_draft("What day of the week is August 15, 2027?",
                                                   chr::year_month_day{chr::year{2027}, chr::August, chr::day{15}})});
    } else if (env == "CodeExecutorEnv") {
        out.push_back({Difficulty::easy, code_draft("print(len('hello'))")});
        out.push_back({Difficulty::medium, code_draft("print(sum(x**2 for x in range(1,6)))")});
        // The one-line form of this example is not valid Python; it is laid out on separate lines.
        out.push_back({Difficulty::hard,
                       code_draft("n = 27\nsteps = 0\nwhile n != 1:\n    n = n // 2 if n % 2 == 0 else 3 * n + 1\n    steps += 1\nprint(steps)")});
    } else if (env == "ScheduleEnv") {
        out.push_back({Difficulty::easy, schedule_yes_no({{9 * 60, 10 * 60}, {14 * 60, 15 * 60}}, 60, 10 * 60, 14 * 60)});
    } else if (env == "RegexMatchEnv") {
        out.push_back({Difficulty::easy, *regex_draft("findall", "\\d+", "abc123def456")});
        out.push_back({Difficulty::medium, *regex_draft("findall", "(\\w+)@(\\w+)\\.(\\w+)", "user@example.com admin@test.org")});
    }
    return out;
}

}  // namespace when2tool::envs
