#include "when2tool/answer.hpp"

#include "when2tool/common.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace when2tool {

namespace {

constexpr std::array<std::pair<AnswerKind, std::string_view>, 9> kKindNames{{
    {AnswerKind::integer, "integer"},
    {AnswerKind::decimal, "decimal"},
    {AnswerKind::string, "string"},
    {AnswerKind::string_list, "string-list"},
    {AnswerKind::value_list, "value-list"},
    {AnswerKind::matrix, "matrix"},
    {AnswerKind::date, "date"},
    {AnswerKind::boolean, "boolean"},
    {AnswerKind::day_name, "day-name"},
}};

}  // namespace

std::string_view to_string(AnswerKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "?";
}

AnswerKind parse_answer_kind(std::string_view s) {
    for (const auto& [kind, name] : kKindNames) {
        if (name == s) return kind;
    }
    throw ArgumentError("unknown answer kind: " + std::string(s));
}

void to_json(nlohmann::json& j, const AnswerValue& a) {
    j = nlohmann::json{{"kind", to_string(a.kind)}, {"value", a.text}};
    if (a.kind == AnswerKind::decimal) j["precision"] = a.precision;
}

void from_json(const nlohmann::json& j, AnswerValue& a) {
    a.kind = parse_answer_kind(j.at("kind").get<std::string>());
    a.text = j.at("value").get<std::string>();
    a.precision = j.value("precision", -1);
}

PyLiteral PyLiteral::from_bool(bool b) {
    PyLiteral v;
    v.type = Type::boolean;
    v.boolean = b;
    return v;
}

PyLiteral PyLiteral::from_int(long long x) { return from_int_text(std::to_string(x)); }

PyLiteral PyLiteral::from_int_text(std::string digits) {
    PyLiteral v;
    v.type = Type::integer;
    v.text = std::move(digits);
    return v;
}

PyLiteral PyLiteral::from_string(std::string s) {
    PyLiteral v;
    v.type = Type::string;
    v.text = std::move(s);
    return v;
}

PyLiteral PyLiteral::list_of(std::vector<PyLiteral> items) {
    PyLiteral v;
    v.type = Type::list;
    v.items = std::move(items);
    return v;
}

PyLiteral PyLiteral::tuple_of(std::vector<PyLiteral> items) {
    PyLiteral v;
    v.type = Type::tuple;
    v.items = std::move(items);
    return v;
}

std::string py_quote(std::string_view s) {
    const bool has_single = s.find('\'') != std::string_view::npos;
    const bool has_double = s.find('"') != std::string_view::npos;
    const char quote = (has_single && !has_double) ? '"' : '\'';
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back(quote);
    for (unsigned char c : s) {
        if (c == '\\') {
            out += "\\\\";
        } else if (c == static_cast<unsigned char>(quote)) {
            out.push_back('\\');
            out.push_back(quote);
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\r') {
            out += "\\r";
        } else if (c == '\t') {
            out += "\\t";
        } else if (c < 0x20 || c == 0x7f) {
            static constexpr char hex[] = "0123456789abcdef";
            out += "\\x";
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    out.push_back(quote);
    return out;
}

namespace {

std::string repr_real(double x) {
    // Shortest round-trip representation, with Python's trailing ".0".
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, end);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace

std::string py_repr(const PyLiteral& v) {
    using T = PyLiteral::Type;
    switch (v.type) {
        case T::none: return "None";
        case T::boolean: return v.boolean ? "True" : "False";
        case T::integer: return v.text;
        case T::real: return repr_real(v.real);
        case T::string: return py_quote(v.text);
        case T::list:
        case T::tuple: {
            std::string out = v.type == T::list ? "[" : "(";
            for (std::size_t i = 0; i < v.items.size(); ++i) {
                if (i) out += ", ";
                out += py_repr(v.items[i]);
            }
            if (v.type == T::tuple && v.items.size() == 1) out += ",";
            out += v.type == T::list ? "]" : ")";
            return out;
        }
    }
    return "None";
}

namespace {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view s) : s_(s) {}

    std::optional<PyLiteral> parse_all() {
        auto v = value();
        skip_ws();
        if (!v || pos_ != s_.size()) return std::nullopt;
        return v;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool consume_word(std::string_view w) {
        if (s_.substr(pos_, w.size()) != w) return false;
        const std::size_t after = pos_ + w.size();
        if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_')) {
            return false;
        }
        pos_ = after;
        return true;
    }

    std::optional<PyLiteral> value() {
        skip_ws();
        if (pos_ >= s_.size()) return std::nullopt;
        const char c = s_[pos_];
        if (c == '[') return sequence(']', PyLiteral::Type::list);
        if (c == '(') return sequence(')', PyLiteral::Type::tuple);
        if (c == '\'' || c == '"') return string_lit();
        if (consume_word("None")) return PyLiteral::none_value();
        if (consume_word("True")) return PyLiteral::from_bool(true);
        if (consume_word("False")) return PyLiteral::from_bool(false);
        if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) return number();
        return std::nullopt;
    }

    std::optional<PyLiteral> sequence(char close, PyLiteral::Type type) {
        ++pos_;
        std::vector<PyLiteral> items;
        bool trailing_comma = false;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == close) {
            ++pos_;
            return type == PyLiteral::Type::list ? PyLiteral::list_of({}) : PyLiteral::tuple_of({});
        }
        while (true) {
            auto item = value();
            if (!item) return std::nullopt;
            items.push_back(std::move(*item));
            skip_ws();
            if (pos_ >= s_.size()) return std::nullopt;
            if (s_[pos_] == ',') {
                ++pos_;
                skip_ws();
                trailing_comma = true;
                if (pos_ < s_.size() && s_[pos_] == close) {
                    ++pos_;
                    break;
                }
                trailing_comma = false;
                continue;
            }
            if (s_[pos_] == close) {
                ++pos_;
                break;
            }
            return std::nullopt;
        }
        // "(x)" is just a parenthesized value, "(x,)" is a 1-tuple.
        if (type == PyLiteral::Type::tuple && items.size() == 1 && !trailing_comma) return items.front();
        return type == PyLiteral::Type::list ? PyLiteral::list_of(std::move(items))
                                             : PyLiteral::tuple_of(std::move(items));
    }

    std::optional<PyLiteral> string_lit() {
        const char quote = s_[pos_++];
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != quote) {
            char c = s_[pos_++];
            if (c == '\\' && pos_ < s_.size()) {
                const char e = s_[pos_++];
                switch (e) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case 'r': out.push_back('\r'); break;
                    case '\\': out.push_back('\\'); break;
                    case '\'': out.push_back('\''); break;
                    case '"': out.push_back('"'); break;
                    case 'x': {
                        if (pos_ + 2 > s_.size()) return std::nullopt;
                        unsigned v = 0;
                        auto [p, ec] = std::from_chars(s_.data() + pos_, s_.data() + pos_ + 2, v, 16);
                        if (ec != std::errc{} || p != s_.data() + pos_ + 2) return std::nullopt;
                        out.push_back(static_cast<char>(v));
                        pos_ += 2;
                        break;
                    }
                    default:
                        out.push_back('\\');
                        out.push_back(e);
                }
            } else {
                out.push_back(c);
            }
        }
        if (pos_ >= s_.size()) return std::nullopt;
        ++pos_;
        return PyLiteral::from_string(std::move(out));
    }

    std::optional<PyLiteral> number() {
        const std::size_t start = pos_;
        if (s_[pos_] == '+' || s_[pos_] == '-') ++pos_;
        bool is_real = false;
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '_') {
                ++pos_;
            } else if (c == '.' || c == 'e' || c == 'E') {
                is_real = true;
                ++pos_;
                if ((c == 'e' || c == 'E') && pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            } else {
                break;
            }
        }
        std::string tok;
        for (char c : s_.substr(start, pos_ - start)) {
            if (c != '_') tok.push_back(c);
        }
        if (tok.empty() || tok == "+" || tok == "-") return std::nullopt;
        if (is_real) {
            PyLiteral v;
            v.type = PyLiteral::Type::real;
            try {
                std::size_t used = 0;
                v.real = std::stod(tok, &used);
                if (used != tok.size()) return std::nullopt;
            } catch (const std::exception&) {
                return std::nullopt;
            }
            return v;
        }
        if (tok.front() == '+') tok.erase(tok.begin());
        // Normalize "-0", leading zeros.
        bool neg = !tok.empty() && tok.front() == '-';
        std::string digits = neg ? tok.substr(1) : tok;
        const auto nz = digits.find_first_not_of('0');
        digits = nz == std::string::npos ? "0" : digits.substr(nz);
        if (digits == "0") neg = false;
        return PyLiteral::from_int_text((neg ? "-" : "") + digits);
    }
};

}  // namespace

std::optional<PyLiteral> parse_py_literal(std::string_view text) { return LiteralParser(text).parse_all(); }

std::string render_int_list(const std::vector<long long>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

std::string render_int_matrix(const std::vector<std::vector<long long>>& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ", ";
        out += render_int_list(m[i]);
    }
    return out + "]";
}

}  // namespace when2tool
