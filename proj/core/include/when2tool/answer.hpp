#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace when2tool {

enum class AnswerKind { integer, decimal, string, string_list, value_list, matrix, date, boolean, day_name };

std::string_view to_string(AnswerKind k);
AnswerKind parse_answer_kind(std::string_view s);

/// An expected or extracted answer. `text` is the canonical rendering
/// ("40", "6.33", "[7, 19, 36, 29]", "True", "2024-03-10", "Sunday").
struct AnswerValue {
    AnswerKind kind = AnswerKind::string;
    std::string text;
    int precision = -1;  // decimal places for AnswerKind::decimal

    friend bool operator==(const AnswerValue&, const AnswerValue&) = default;
};

void to_json(nlohmann::json& j, const AnswerValue& a);
void from_json(const nlohmann::json& j, AnswerValue& a);

// ---------------------------------------------------------------------------
// Python literal subset: None, True/False, ints, floats, str, list, tuple.
// Used to render list-shaped answers the way Python prints them and to parse
// model answers back for elementwise comparison.

struct PyLiteral {
    enum class Type { none, boolean, integer, real, string, list, tuple };

    Type type = Type::none;
    bool boolean = false;
    std::string text;  // integer digits (with optional '-') or string contents
    double real = 0.0;
    std::vector<PyLiteral> items;

    static PyLiteral none_value() { return {}; }
    static PyLiteral from_bool(bool b);
    static PyLiteral from_int(long long v);
    static PyLiteral from_int_text(std::string digits);
    static PyLiteral from_string(std::string s);
    static PyLiteral list_of(std::vector<PyLiteral> items);
    static PyLiteral tuple_of(std::vector<PyLiteral> items);

    friend bool operator==(const PyLiteral&, const PyLiteral&) = default;
};

/// repr() of a Python str.
std::string py_quote(std::string_view s);

/// repr() of a literal, e.g. "[('user', 'example', 'com')]".
std::string py_repr(const PyLiteral& v);

/// Parses a Python literal; returns nullopt on anything outside the subset.
std::optional<PyLiteral> parse_py_literal(std::string_view text);

/// Renders an integer list as "[1, 2, 3]".
std::string render_int_list(const std::vector<long long>& xs);
std::string render_int_matrix(const std::vector<std::vector<long long>>& m);

}  // namespace when2tool
