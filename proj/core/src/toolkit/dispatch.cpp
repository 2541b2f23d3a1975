#include "when2tool/toolkit/dispatch.hpp"

#include "when2tool/toolkit/execution.hpp"
#include "when2tool/toolkit/knowledge.hpp"
#include "when2tool/toolkit/pyinterp.hpp"
#include "when2tool/toolkit/regex.hpp"
#include "when2tool/toolkit/stats.hpp"
#include "when2tool/toolkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>

namespace when2tool::toolkit {

using nlohmann::json;

namespace {

ToolParam req(std::string name, ParamType t, std::string desc) { return {std::move(name), t, true, std::move(desc)}; }
ToolParam opt(std::string name, ParamType t, std::string desc) { return {std::move(name), t, false, std::move(desc)}; }

std::vector<ToolSpec> build_specs() {
    using P = ParamType;
    return {
        {"evaluate_expression", "Evaluates a mathematical expression string and returns the exact numerical result.",
         {req("expr", P::string, "Expression using + - * / // % ** and parentheses")}},
        {"get_last_result", "Returns the result of the most recent evaluation.", {}},
        {"clear_last_result", "Clears the stored result.", {}},
        {"compute_stat",
         "Computes a statistic (mean, median, std, percentile, correlation) on the data and returns the exact result.",
         {req("data", P::number_list, "Numbers"), req("stat_type", P::string, "mean | median | std | percentile | correlation"),
          opt("data_y", P::number_list, "Second series for correlation"),
          opt("percentile", P::number, "Percentile in [0, 100]"),
          opt("round_to", P::integer, "Decimal places")}},
        {"describe", "Returns count, mean, std, min, quartiles and max for the dataset.",
         {req("data", P::number_list, "Numbers")}},
        {"combination", "Computes C(n, k) and returns the exact integer.",
         {req("n", P::integer, "n"), req("k", P::integer, "k")}},
        {"permutation", "Computes P(n, k) = n!/(n-k)! and returns the exact integer.",
         {req("n", P::integer, "n"), req("k", P::integer, "k")}},
        {"factorial", "Computes n! and returns the exact integer.", {req("n", P::integer, "n")}},
        {"matrix_determinant", "Computes the determinant of a square matrix and returns the exact value.",
         {req("matrix", P::matrix, "Square integer matrix")}},
        {"matrix_multiply", "Computes the product of two matrices and returns the result matrix.",
         {req("A", P::matrix, "Left matrix"), req("B", P::matrix, "Right matrix")}},
        {"matrix_trace", "Computes the trace (sum of diagonal elements) and returns the exact value.",
         {req("matrix", P::matrix, "Square integer matrix")}},
        {"is_prime", "Tests whether n is prime and returns a boolean.", {req("n", P::integer, "n")}},
        {"nth_prime", "Returns the n-th prime number.", {req("n", P::integer, "n (1-based)")}},
        {"factorize", "Returns the complete prime factorization of n as a string (e.g. \"2 × 3 × 5\").",
         {req("n", P::integer, "n")}},
        {"search_corpus",
         "Searches the document corpus by keyword matching against titles. Returns ids, titles and a 100-character "
         "snippet for the top-k results, not the full text.",
         {req("query", P::string, "Keywords"), opt("top_k", P::integer, "Number of results (default 3)")}},
        {"read_doc", "Retrieves the full text of a document by id, including title, content and word count.",
         {req("doc_id", P::string, "Document id")}},
        {"lookup_year", "Returns the year an event occurred with a brief context.",
         {req("event", P::string, "Event description")}},
        {"lookup_rule", "Returns the numeric answer for a game attribute with a rule description.",
         {req("game", P::string, "Game name"), req("attribute", P::string, "Attribute query")}},
        {"compute_hash", "Computes the hex digest of the input string with the given algorithm.",
         {req("algorithm", P::string,
              "md5 | sha1 | sha256 | fnv1a_custom | djb2_custom | sdbm_custom | murmur_custom | jenkins_custom"),
          req("input_string", P::string, "Input")}},
        {"decode", "Decodes the ciphertext with the given scheme and returns the plaintext.",
         {req("scheme", P::string, "morse | rot13 | caesar | scramble1 | scramble2 | alpha7 | reverse"),
          req("ciphertext", P::string, "Text to decode"), opt("shift", P::integer, "Caesar shift")}},
        {"encode", "Encodes the plaintext with the given scheme and returns the ciphertext.",
         {req("scheme", P::string, "morse | rot13 | caesar | scramble1 | scramble2 | alpha7 | reverse"),
          req("plaintext", P::string, "Text to encode"), opt("shift", P::integer, "Caesar shift")}},
        {"append", "Appends a value to the end of the list and returns the updated list.",
         {req("list", P::list, "List"), req("value", P::integer, "Value")}},
        {"remove", "Removes the element at the given index and returns the updated list.",
         {req("list", P::list, "List"), req("index", P::integer, "0-based index")}},
        {"insert", "Inserts a value at the given index and returns the updated list.",
         {req("list", P::list, "List"), req("index", P::integer, "0-based index"), req("value", P::integer, "Value")}},
        {"sort",
         "Sorts the list ascending, or a 2D list along an axis (axis=0 sorts each column, axis=1 sorts each row).",
         {req("list", P::list, "List"), opt("axis", P::integer, "0 or 1 for 2D lists")}},
        {"reverse", "Reverses the list and returns the result.", {req("list", P::list, "List")}},
        {"date_add", "Adds a number of days to a date and returns the resulting date in YYYY-MM-DD format.",
         {req("date", P::string, "YYYY-MM-DD"), req("days", P::integer, "Days (may be negative)")}},
        {"date_diff", "Computes the number of days from date1 to date2.",
         {req("date1", P::string, "YYYY-MM-DD"), req("date2", P::string, "YYYY-MM-DD")}},
        {"day_of_week", "Returns the day of the week for a date.", {req("date", P::string, "YYYY-MM-DD")}},
        {"run_python", "Executes a Python code snippet in a sandbox and returns the captured stdout.",
         {req("code", P::string, "Python source")}},
        {"run_code", "Executes a Python code snippet in a sandbox and returns the captured stdout.",
         {req("code", P::string, "Python source")}},
        {"find_free_slot",
         "Finds free time slots of at least the given duration (minutes) within [start, end), considering all meetings.",
         {req("meetings", P::meeting_list, "Meetings as \"H:MM-H:MM\""), req("duration", P::integer, "Minutes"),
          req("start", P::string, "H:MM"), req("end", P::string, "H:MM")}},
        {"check_conflict", "Checks whether a proposed meeting overlaps any existing meeting and returns a boolean.",
         {req("meetings", P::meeting_list, "Meetings"), req("new_meeting", P::meeting, "\"H:MM-H:MM\"")}},
        {"list_meetings", "Returns all meetings sorted by start time.", {req("meetings", P::meeting_list, "Meetings")}},
        {"regex_match", "Applies a regex operation (findall, match, search, sub) to the text and returns the result.",
         {req("pattern", P::string, "Python regular expression"), req("text", P::string, "Input text"),
          req("operation", P::string, "findall | match | search | sub"),
          opt("repl", P::string, "Replacement for sub")}},
    };
}

const std::map<std::string, std::vector<std::string>, std::less<>>& env_tools() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> m{
        {"CalculatorEnv", {"evaluate_expression", "get_last_result", "clear_last_result"}},
        {"StatisticsEnv", {"compute_stat", "describe"}},
        {"CountingEnv", {"combination", "permutation", "factorial"}},
        {"MatrixEnv", {"matrix_determinant", "matrix_multiply", "matrix_trace"}},
        {"PrimeEnv", {"is_prime", "nth_prime", "factorize"}},
        {"RetrieverEnv", {"search_corpus", "read_doc"}},
        {"HistoricalYearEnv", {"lookup_year"}},
        {"GameRuleEnv", {"lookup_rule"}},
        {"HashEnv", {"compute_hash"}},
        {"DecodingEnv", {"decode", "encode"}},
        {"ListEnv", {"append", "remove", "insert", "sort", "reverse"}},
        {"DateEnv", {"date_add", "date_diff", "day_of_week"}},
        {"CodeExecutorEnv", {"run_python"}},
        {"ScheduleEnv", {"find_free_slot", "check_conflict", "list_meetings"}},
        {"RegexMatchEnv", {"regex_match"}},
        {"ChainedCalculatorEnv", {"evaluate_expression", "get_last_result", "clear_last_result"}},
        {"ChainedRetrieverEnv", {"search_corpus", "read_doc"}},
        {"ChainedCodeExecutorEnv", {"run_code"}},
    };
    return m;
}

// ---- coercion

std::optional<json> parse_embedded(const json& v) {
    if (!v.is_string()) return std::nullopt;
    json parsed = json::parse(v.get<std::string>(), nullptr, false);
    if (parsed.is_discarded()) return std::nullopt;
    return parsed;
}

json as_integer(const json& v, const std::string& name) {
    if (v.is_number_integer()) return v;
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::fabs(d) < 9.0e15) return static_cast<long long>(d);
    }
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t pos = 0;
        try {
            const long long x = std::stoll(s, &pos);
            if (pos == s.size()) return x;
        } catch (const std::exception&) {
        }
    }
    throw ToolError("argument '" + name + "' must be an integer");
}

json as_number(const json& v, const std::string& name) {
    if (v.is_number()) return v;
    if (v.is_string() && parse_decimal(v.get<std::string>())) return v;
    throw ToolError("argument '" + name + "' must be a number");
}

json as_int_list(const json& v, const std::string& name, bool allow_2d) {
    json list = v;
    if (auto p = parse_embedded(v)) list = *p;
    if (!list.is_array()) throw ToolError("argument '" + name + "' must be a list");
    json out = json::array();
    for (const auto& e : list) {
        if (e.is_array() && allow_2d) {
            out.push_back(as_int_list(e, name, false));
        } else {
            out.push_back(as_integer(e, name));
        }
    }
    return out;
}

json as_meeting(const json& v) {
    Interval iv;
    from_json(v, iv);
    return iv;
}

json as_meeting_list(const json& v, const std::string& name) {
    json list = v;
    if (v.is_string()) {
        if (auto p = parse_embedded(v)) {
            list = *p;
        } else {
            // "9:00-10:00, 14:00-15:00"
            list = json::array();
            const std::string s = v.get<std::string>();
            std::size_t start = 0;
            while (start <= s.size()) {
                auto comma = s.find(',', start);
                if (comma == std::string::npos) comma = s.size();
                std::string part = s.substr(start, comma - start);
                if (part.find_first_not_of(" \t") != std::string::npos) list.push_back(part);
                start = comma + 1;
            }
        }
    }
    if (!list.is_array()) throw ToolError("argument '" + name + "' must be a list of meetings");
    json out = json::array();
    for (const auto& m : list) out.push_back(as_meeting(m));
    return out;
}

json coerce_value(const ToolParam& p, const json& v) {
    switch (p.type) {
        case ParamType::string:
            if (v.is_string()) return v;
            if (v.is_number() || v.is_boolean()) return v.dump();
            throw ToolError("argument '" + p.name + "' must be a string");
        case ParamType::integer: return as_integer(v, p.name);
        case ParamType::number: return as_number(v, p.name);
        case ParamType::boolean:
            if (v.is_boolean()) return v;
            if (v.is_string()) {
                std::string s = v.get<std::string>();
                for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                if (s == "true" || s == "yes") return true;
                if (s == "false" || s == "no") return false;
            }
            throw ToolError("argument '" + p.name + "' must be a boolean");
        case ParamType::number_list: {
            json list = v;
            if (auto e = parse_embedded(v)) list = *e;
            if (!list.is_array()) throw ToolError("argument '" + p.name + "' must be a list of numbers");
            json out = json::array();
            for (const auto& x : list) out.push_back(as_number(x, p.name));
            return out;
        }
        case ParamType::int_list: return as_int_list(v, p.name, false);
        case ParamType::list: return as_int_list(v, p.name, true);
        case ParamType::matrix: {
            json m = as_int_list(v, p.name, true);
            if (m.empty() || !m.front().is_array()) throw ToolError("argument '" + p.name + "' must be a 2D matrix");
            for (const auto& row : m) {
                if (!row.is_array() || row.size() != m.front().size() || row.empty())
                    throw ToolError("argument '" + p.name + "' must be a rectangular matrix");
            }
            return m;
        }
        case ParamType::meeting: return as_meeting(v);
        case ParamType::meeting_list: return as_meeting_list(v, p.name);
    }
    throw ToolError("unsupported parameter type");
}

// ---- helpers for execution

Rational to_rational(const json& v) {
    const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    auto r = parse_decimal(text);
    if (!r) throw ToolError("not a number: " + text);
    return *r;
}

std::vector<Rational> to_rationals(const json& list) {
    std::vector<Rational> out;
    for (const auto& v : list) out.push_back(to_rational(v));
    return out;
}

IntMatrix to_matrix(const json& m) {
    IntMatrix out;
    for (const auto& row : m) {
        std::vector<BigInt> r;
        for (const auto& v : row) r.emplace_back(v.get<long long>());
        out.push_back(std::move(r));
    }
    return out;
}

std::string one_line(std::string s) {
    std::string out;
    for (char c : s) {
        if (c == '\n') out += "\\n";
        else if (c == '\r') continue;
        else out += c;
    }
    return out;
}

std::string big_str(const BigInt& v) { return v.str(); }

std::string py_bool(bool b) { return b ? "True" : "False"; }

std::uint64_t positive_u64(const json& v, const std::string& name, std::uint64_t max) {
    const long long x = v.get<long long>();
    if (x < 1) throw ToolError("'" + name + "' must be a positive integer");
    if (static_cast<std::uint64_t>(x) > max) throw ToolError("'" + name + "' is too large (max " + std::to_string(max) + ")");
    return static_cast<std::uint64_t>(x);
}

template <typename T>
std::vector<T> state_array(const json& env_state, const char* key) {
    if (!env_state.is_object() || !env_state.contains(key)) throw ToolError("this environment has no " + std::string(key));
    return env_state.at(key).get<std::vector<T>>();
}

using Handler = std::function<ToolResult(const json& args, const json& env_state, ToolSession& session)>;

ToolResult int_result(const std::string& label, const std::string& value) {
    return ToolResult::success(label + ": " + value, json{{"result", value}}, value);
}

const std::map<std::string, Handler, std::less<>>& handlers() {
    static const std::map<std::string, Handler, std::less<>> h{
        {"evaluate_expression",
         [](const json& a, const json&, ToolSession& s) {
             const std::string v = render_rational(calc_evaluate(a.at("expr").get<std::string>(), &s.calc));
             return ToolResult::success("Result: " + v, json{{"result", v}}, v);
         }},
        {"get_last_result",
         [](const json&, const json&, ToolSession& s) {
             if (!s.calc.last_result) return ToolResult::success("No stored result", json{{"result", nullptr}}, "");
             const std::string v = render_rational(*s.calc.last_result);
             return ToolResult::success("Last result: " + v, json{{"result", v}}, v);
         }},
        {"clear_last_result",
         [](const json&, const json&, ToolSession& s) {
             s.calc.last_result.reset();
             return ToolResult::success("Stored result cleared", json{{"cleared", true}}, "");
         }},
        {"compute_stat",
         [](const json& a, const json&, ToolSession&) {
             StatRequest r;
             r.kind = parse_stat_kind(a.at("stat_type").get<std::string>());
             r.data = to_rationals(a.at("data"));
             if (a.contains("data_y")) r.data_y = to_rationals(a.at("data_y"));
             if (a.contains("percentile")) r.percentile = to_rational(a.at("percentile"));
             if (a.contains("round_to")) r.round_to = a.at("round_to").get<int>();
             const std::string v = stats_compute(r).render();
             return ToolResult::success(std::string(to_string(r.kind)) + ": " + v,
                                        json{{"stat", to_string(r.kind)}, {"result", v}}, v);
         }},
        {"describe",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = describe(to_rationals(a.at("data")));
             return ToolResult::success(v, json{{"summary", v}}, v);
         }},
        {"combination",
         [](const json& a, const json&, ToolSession&) {
             return int_result("C(" + a.at("n").dump() + ", " + a.at("k").dump() + ")",
                               big_str(comb_compute(CombOp::combination, a.at("n").get<long long>(), a.at("k").get<long long>())));
         }},
        {"permutation",
         [](const json& a, const json&, ToolSession&) {
             return int_result("P(" + a.at("n").dump() + ", " + a.at("k").dump() + ")",
                               big_str(comb_compute(CombOp::permutation, a.at("n").get<long long>(), a.at("k").get<long long>())));
         }},
        {"factorial",
         [](const json& a, const json&, ToolSession&) {
             return int_result(a.at("n").dump() + "!", big_str(comb_compute(CombOp::factorial, a.at("n").get<long long>())));
         }},
        {"matrix_determinant",
         [](const json& a, const json&, ToolSession&) {
             return int_result("Determinant", big_str(matrix_determinant(to_matrix(a.at("matrix")))));
         }},
        {"matrix_trace",
         [](const json& a, const json&, ToolSession&) {
             return int_result("Trace", big_str(matrix_trace(to_matrix(a.at("matrix")))));
         }},
        {"matrix_multiply",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = render_matrix(matrix_multiply(to_matrix(a.at("A")), to_matrix(a.at("B"))));
             return ToolResult::success("Product: " + v, json{{"result", v}}, v);
         }},
        {"is_prime",
         [](const json& a, const json&, ToolSession&) {
             const auto n = positive_u64(a.at("n"), "n", std::uint64_t{1} << 62);
             const std::string v = py_bool(is_prime(n));
             return ToolResult::success("is_prime(" + std::to_string(n) + "): " + v, json{{"result", is_prime(n)}}, v);
         }},
        {"nth_prime",
         [](const json& a, const json&, ToolSession&) {
             const auto n = positive_u64(a.at("n"), "n", 1'000'000);
             return int_result("Prime #" + std::to_string(n), std::to_string(nth_prime(n)));
         }},
        {"factorize",
         [](const json& a, const json&, ToolSession&) {
             const auto n = positive_u64(a.at("n"), "n", std::uint64_t{1} << 62);
             const std::string v = factorize(n);
             return ToolResult::success("Factorization of " + std::to_string(n) + ": " + v, json{{"result", v}}, v);
         }},
        {"search_corpus",
         [](const json& a, const json& st, ToolSession&) {
             const auto corpus = state_array<Document>(st, "corpus");
             const int k = a.contains("top_k") ? a.at("top_k").get<int>() : 3;
             const auto hits = corpus_search(a.at("query").get<std::string>(), k, corpus);
             json data = json::array();
             std::string payload = "Found " + std::to_string(hits.size()) + " result(s)";
             for (const auto& hit : hits) {
                 data.push_back({{"doc_id", hit.doc_id}, {"title", hit.title}, {"snippet", hit.snippet}, {"score", hit.score}});
                 payload += " | [" + hit.doc_id + "] " + hit.title + ": " + one_line(hit.snippet);
             }
             return ToolResult::success(payload, json{{"results", data}}, hits.empty() ? "" : hits.front().doc_id);
         }},
        {"read_doc",
         [](const json& a, const json& st, ToolSession&) {
             const auto corpus = state_array<Document>(st, "corpus");
             const Document& d = corpus_read(a.at("doc_id").get<std::string>(), corpus);
             const auto words = word_count(d.content);
             return ToolResult::success("[" + d.doc_id + "] " + d.title + " (" + std::to_string(words) + " words): " +
                                            one_line(d.content),
                                        json{{"doc_id", d.doc_id}, {"title", d.title}, {"content", d.content}, {"word_count", words}},
                                        d.content);
         }},
        {"lookup_year",
         [](const json& a, const json& st, ToolSession&) {
             const auto table = state_array<YearEntry>(st, "events");
             const auto hit = lookup_year(a.at("event").get<std::string>(), table);
             if (!hit) return ToolResult::failure("no matching event found");
             const std::string v = std::to_string(hit->year);
             return ToolResult::success(hit->event + ": " + v + ". " + hit->context, json{{"event", hit->event}, {"year", hit->year}, {"context", hit->context}}, v);
         }},
        {"lookup_rule",
         [](const json& a, const json& st, ToolSession&) {
             const auto table = state_array<RuleEntry>(st, "rules");
             const auto hit = lookup_rule(a.at("game").get<std::string>(), a.at("attribute").get<std::string>(), table);
             if (!hit) return ToolResult::failure("no matching rule found");
             const std::string v = std::to_string(hit->value);
             return ToolResult::success(hit->game + " / " + hit->attribute + ": " + v + ". " + hit->description,
                                        json{{"game", hit->game}, {"attribute", hit->attribute}, {"value", hit->value}, {"description", hit->description}}, v);
         }},
        {"compute_hash",
         [](const json& a, const json&, ToolSession&) {
             const std::string alg = a.at("algorithm").get<std::string>();
             const std::string v = hash_compute(alg, a.at("input_string").get<std::string>());
             return ToolResult::success(alg + ": " + v, json{{"algorithm", alg}, {"digest", v}}, v);
         }},
        {"decode",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = codec(a.at("scheme").get<std::string>(), CodecDirection::decode,
                                         a.at("ciphertext").get<std::string>(), a.value("shift", 0));
             return ToolResult::success("Decoded: " + v, json{{"result", v}}, v);
         }},
        {"encode",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = codec(a.at("scheme").get<std::string>(), CodecDirection::encode,
                                         a.at("plaintext").get<std::string>(), a.value("shift", 0));
             return ToolResult::success("Encoded: " + v, json{{"result", v}}, v);
         }},
        {"append",
         [](const json& a, const json&, ToolSession&) {
             const json r = list_append(a.at("list"), a.at("value"));
             return ToolResult::success("Result: " + render_list(r), json{{"result", r}}, render_list(r));
         }},
        {"remove",
         [](const json& a, const json&, ToolSession&) {
             const json r = list_remove(a.at("list"), a.at("index").get<long long>());
             return ToolResult::success("Result: " + render_list(r), json{{"result", r}}, render_list(r));
         }},
        {"insert",
         [](const json& a, const json&, ToolSession&) {
             const json r = list_insert(a.at("list"), a.at("index").get<long long>(), a.at("value"));
             return ToolResult::success("Result: " + render_list(r), json{{"result", r}}, render_list(r));
         }},
        {"sort",
         [](const json& a, const json&, ToolSession&) {
             std::optional<int> axis;
             if (a.contains("axis")) axis = a.at("axis").get<int>();
             const json r = list_sort(a.at("list"), axis);
             return ToolResult::success("Result: " + render_list(r), json{{"result", r}}, render_list(r));
         }},
        {"reverse",
         [](const json& a, const json&, ToolSession&) {
             const json r = list_reverse(a.at("list"));
             return ToolResult::success("Result: " + render_list(r), json{{"result", r}}, render_list(r));
         }},
        {"date_add",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = format_date(date_add(parse_date(a.at("date").get<std::string>()), a.at("days").get<long long>()));
             return ToolResult::success("Result date: " + v, json{{"result", v}}, v);
         }},
        {"date_diff",
         [](const json& a, const json&, ToolSession&) {
             const long long d = date_diff(parse_date(a.at("date1").get<std::string>()), parse_date(a.at("date2").get<std::string>()));
             return ToolResult::success("Difference: " + std::to_string(d) + " days", json{{"days", d}}, std::to_string(d));
         }},
        {"day_of_week",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = day_of_week(parse_date(a.at("date").get<std::string>()));
             return ToolResult::success(a.at("date").get<std::string>() + " is a " + v, json{{"result", v}}, v);
         }},
        {"run_python",
         [](const json& a, const json&, ToolSession&) {
             const std::string out = code_run(a.at("code").get<std::string>());
             return ToolResult::success("Output: " + one_line(out), json{{"stdout", out}}, out);
         }},
        {"find_free_slot",
         [](const json& a, const json&, ToolSession&) {
             const auto meetings = a.at("meetings").get<std::vector<Interval>>();
             const auto slots = find_free_slots(meetings, a.at("duration").get<int>(), parse_clock(a.at("start").get<std::string>()),
                                                parse_clock(a.at("end").get<std::string>()));
             std::string joined;
             for (std::size_t i = 0; i < slots.size(); ++i) joined += (i ? ", " : "") + format_interval(slots[i]);
             return ToolResult::success(slots.empty() ? "No free slot found" : "Free slots: " + joined, json{{"slots", slots}},
                                        slots.empty() ? "None" : joined);
         }},
        {"check_conflict",
         [](const json& a, const json&, ToolSession&) {
             const bool c = check_conflict(a.at("meetings").get<std::vector<Interval>>(), a.at("new_meeting").get<Interval>());
             return ToolResult::success(c ? "Conflict: True" : "Conflict: False", json{{"conflict", c}}, py_bool(c));
         }},
        {"list_meetings",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = list_meetings(a.at("meetings").get<std::vector<Interval>>());
             return ToolResult::success("Meetings: " + v, json{{"result", v}}, v);
         }},
        {"regex_match",
         [](const json& a, const json&, ToolSession&) {
             const std::string v = regex_op(a.at("pattern").get<std::string>(), a.at("text").get<std::string>(),
                                            a.at("operation").get<std::string>(), a.value("repl", std::string{}));
             return ToolResult::success("Result: " + one_line(v), json{{"result", v}}, v);
         }},
    };
    return h;
}

}  // namespace

const std::vector<ToolSpec>& all_tool_specs() {
    static const std::vector<ToolSpec> specs = build_specs();
    return specs;
}

const ToolSpec* find_tool(std::string_view name) {
    for (const auto& s : all_tool_specs()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::vector<ToolSpec> tools_for_env(std::string_view env_name) {
    const auto it = env_tools().find(env_name);
    if (it == env_tools().end()) throw ConfigError("unknown environment: " + std::string(env_name));
    std::vector<ToolSpec> out;
    for (const auto& n : it->second) out.push_back(*find_tool(n));
    return out;
}

json coerce_arguments(const ToolSpec& spec, const json& args) {
    json in = args;
    if (in.is_null()) in = json::object();
    if (auto p = parse_embedded(in)) in = *p;
    if (!in.is_object()) throw ToolError("arguments must be a JSON object");
    json out = json::object();
    for (const auto& p : spec.parameters) {
        if (!in.contains(p.name) || in.at(p.name).is_null()) {
            if (p.required) throw ToolError("missing required argument '" + p.name + "'");
            continue;
        }
        try {
            out[p.name] = coerce_value(p, in.at(p.name));
        } catch (const ToolError&) {
            throw;
        } catch (const std::exception& e) {
            throw ToolError("argument '" + p.name + "': " + e.what());
        }
    }
    return out;
}

ToolResult execute_tool(const ToolCall& call, const json& env_state, ToolSession& session) {
    const ToolSpec* spec = find_tool(call.tool_name);
    if (spec == nullptr) return ToolResult::failure("unknown tool '" + call.tool_name + "'");
    const std::string name = spec->name == "run_code" ? "run_python" : spec->name;
    try {
        const json args = coerce_arguments(*spec, call.arguments);
        return handlers().at(name)(args, env_state, session);
    } catch (const ToolError& e) {
        return ToolResult::failure(e.what());
    } catch (const std::exception& e) {
        return ToolResult::failure(e.what());
    }
}

}  // namespace when2tool::toolkit
