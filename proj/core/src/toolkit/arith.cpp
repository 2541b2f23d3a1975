#include "when2tool/toolkit/arith.hpp"

#include <cctype>

namespace when2tool::toolkit {

namespace {

enum class Tok { num, plus, minus, star, slash, dslash, percent, pow, lparen, rparen, end };

struct Token {
    Tok kind;
    BigInt value;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto starts = [&](std::string_view w) { return s.substr(i, w.size()) == w; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            // Thousands separators are tolerated: "1,000" == 1000.
            if (c == ',' && !(i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1])) && i + 1 < s.size() &&
                              std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
                throw ToolError("unexpected ',' in expression");
            }
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt v = 0;
            while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '_' ||
                                    (s[i] == ',' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])) &&
                                     i + 3 < s.size() + 1))) {
                if (std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i] - '0');
                ++i;
            }
            if (i < s.size() && s[i] == '.') throw ToolError("decimal literals are not supported");
            out.push_back({Tok::num, v});
            continue;
        }
        if (starts("**")) { out.push_back({Tok::pow, 0}); i += 2; continue; }
        if (starts("//")) { out.push_back({Tok::dslash, 0}); i += 2; continue; }
        if (starts("\xc3\x97")) { out.push_back({Tok::star, 0}); i += 2; continue; }       // ×
        if (starts("\xc3\xb7")) { out.push_back({Tok::slash, 0}); i += 2; continue; }      // ÷
        if (starts("\xe2\x88\x92")) { out.push_back({Tok::minus, 0}); i += 3; continue; }  // −
        if (starts("mod")) { out.push_back({Tok::percent, 0}); i += 3; continue; }
        switch (c) {
            case '+': out.push_back({Tok::plus, 0}); break;
            case '-': out.push_back({Tok::minus, 0}); break;
            case '*': out.push_back({Tok::star, 0}); break;
            case 'x':
            case 'X': out.push_back({Tok::star, 0}); break;
            case '/': out.push_back({Tok::slash, 0}); break;
            case '%': out.push_back({Tok::percent, 0}); break;
            case '^': out.push_back({Tok::pow, 0}); break;
            case '(':
            case '[': out.push_back({Tok::lparen, 0}); break;
            case ')':
            case ']': out.push_back({Tok::rparen, 0}); break;
            default: throw ToolError(std::string("unexpected character '") + c + "' in expression");
        }
        ++i;
    }
    out.push_back({Tok::end, 0});
    return out;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Rational floor_rational(const Rational& r) {
    return Rational(floor_div(numerator(r), denominator(r)));
}

class ExprParser {
public:
    explicit ExprParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Rational parse() {
        if (peek() == Tok::end) throw ToolError("empty expression");
        Rational v = expr();
        if (peek() != Tok::end) throw ToolError("unexpected trailing input in expression");
        return v;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int depth_ = 0;

    Tok peek() const { return toks_[pos_].kind; }

    Rational expr() {
        Rational v = term();
        while (peek() == Tok::plus || peek() == Tok::minus) {
            const Tok op = toks_[pos_++].kind;
            Rational rhs = term();
            if (op == Tok::plus) v += rhs; else v -= rhs;
        }
        return v;
    }

    Rational term() {
        Rational v = unary();
        while (peek() == Tok::star || peek() == Tok::slash || peek() == Tok::dslash || peek() == Tok::percent) {
            const Tok op = toks_[pos_++].kind;
            Rational rhs = unary();
            if (op == Tok::star) {
                v *= rhs;
                continue;
            }
            if (rhs == 0) throw ToolError("division by zero");
            if (op == Tok::slash) {
                v /= rhs;
            } else if (op == Tok::dslash) {
                v = floor_rational(v / rhs);
            } else {
                v = v - rhs * floor_rational(v / rhs);
            }
        }
        return v;
    }

    Rational unary() {
        if (peek() == Tok::minus) {
            ++pos_;
            return -unary();
        }
        if (peek() == Tok::plus) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Rational power() {
        Rational base = primary();
        if (peek() == Tok::pow) {
            ++pos_;
            Rational ex = unary();  // right-associative
            if (denominator(ex) != 1) throw ToolError("non-integer exponent");
            const BigInt e = numerator(ex);
            if (e > 4096 || e < -4096) throw ToolError("exponent too large");
            const int n = static_cast<int>(e);
            if (n < 0 && base == 0) throw ToolError("division by zero");
            Rational r = 1;
            for (int i = 0; i < (n < 0 ? -n : n); ++i) r *= base;
            return n < 0 ? Rational(1) / r : r;
        }
        return base;
    }

    Rational primary() {
        const Token& t = toks_[pos_];
        if (t.kind == Tok::num) {
            ++pos_;
            return Rational(t.value);
        }
        if (t.kind == Tok::lparen) {
            if (++depth_ > 200) throw ToolError("expression nested too deeply");
            ++pos_;
            Rational v = expr();
            if (peek() != Tok::rparen) throw ToolError("missing ')'");
            ++pos_;
            --depth_;
            return v;
        }
        throw ToolError("malformed expression");
    }
};

}  // namespace

Rational calc_evaluate(std::string_view expr, CalculatorSession* session) {
    Rational v = ExprParser(tokenize(expr)).parse();
    if (session) session->last_result = v;
    return v;
}

std::string render_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rational> parse_decimal(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = text.size();
    while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    text = text.substr(i, end - i);
    if (text.empty()) return std::nullopt;
    bool neg = false;
    std::size_t p = 0;
    if (text[p] == '+' || text[p] == '-') {
        neg = text[p] == '-';
        ++p;
    }
    BigInt mant = 0;
    int frac_digits = 0;
    bool any = false, dot = false;
    for (; p < text.size(); ++p) {
        const char c = text[p];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mant = mant * 10 + (c - '0');
            any = true;
            if (dot) ++frac_digits;
        } else if (c == '.' && !dot) {
            dot = true;
        } else if (c == ',' && !dot) {
            continue;
        } else {
            break;
        }
    }
    if (!any) return std::nullopt;
    long exp10 = 0;
    if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
        ++p;
        bool eneg = false;
        if (p < text.size() && (text[p] == '+' || text[p] == '-')) {
            eneg = text[p] == '-';
            ++p;
        }
        if (p >= text.size()) return std::nullopt;
        for (; p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])); ++p) {
            exp10 = exp10 * 10 + (text[p] - '0');
            if (exp10 > 400) return std::nullopt;
        }
        if (eneg) exp10 = -exp10;
    }
    if (p != text.size()) return std::nullopt;
    exp10 -= frac_digits;
    BigInt scale = 1;
    for (long k = 0; k < (exp10 < 0 ? -exp10 : exp10); ++k) scale *= 10;
    Rational r = exp10 >= 0 ? Rational(mant * scale) : Rational(mant, scale);
    return neg ? -r : r;
}

BigInt comb_compute(CombOp op, long long n, long long k) {
    if (n < 0 || k < 0) throw ToolError("negative input");
    if (n > 100000) throw ToolError("n too large");
    switch (op) {
        case CombOp::factorial: {
            BigInt r = 1;
            for (long long i = 2; i <= n; ++i) r *= i;
            return r;
        }
        case CombOp::permutation: {
            if (k > n) throw ToolError("k must not exceed n");
            BigInt r = 1;
            for (long long i = 0; i < k; ++i) r *= (n - i);
            return r;
        }
        case CombOp::combination: {
            if (k > n) throw ToolError("k must not exceed n");
            if (k > n - k) k = n - k;
            BigInt r = 1;
            for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact at every step
            return r;
        }
    }
    return 0;
}

namespace {

void require_square(const IntMatrix& a) {
    if (a.empty()) throw ToolError("matrix must be non-empty");
    for (const auto& row : a) {
        if (row.size() != a.size()) throw ToolError("matrix must be square");
    }
}

}  // namespace

BigInt matrix_determinant(const IntMatrix& input) {
    require_square(input);
    // Bareiss fraction-free elimination: every division is exact.
    IntMatrix a = input;
    const std::size_t n = a.size();
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

BigInt matrix_trace(const IntMatrix& a) {
    require_square(a);
    BigInt t = 0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

IntMatrix matrix_multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() || b.empty()) throw ToolError("matrices must be non-empty");
    const std::size_t inner = a.front().size();
    for (const auto& row : a) {
        if (row.size() != inner) throw ToolError("ragged matrix A");
    }
    for (const auto& row : b) {
        if (row.size() != b.front().size()) throw ToolError("ragged matrix B");
    }
    if (b.size() != inner) throw ToolError("inner dimensions do not match");
    IntMatrix c(a.size(), std::vector<BigInt>(b.front().size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < b.front().size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

std::string render_matrix(const IntMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (j) out += ", ";
            out += m[i][j].str();
        }
        out += "]";
    }
    return out + "]";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::uint64_t nth_prime(std::uint64_t n) {
    if (n == 0) throw ToolError("n must be >= 1");
    if (n > 1'000'000) throw ToolError("n too large");
    std::uint64_t count = 0;
    for (std::uint64_t c = 2;; ++c) {
        if (is_prime(c) && ++count == n) return c;
    }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    if (n == 0) throw ToolError("cannot factorize 0");
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d <= n / d; ++d) {
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::string factorize(std::uint64_t n) {
    if (n == 1) return "1";
    const auto fs = prime_factors(n);
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) out += " \xc3\x97 ";
        out += std::to_string(fs[i]);
    }
    return out;
}

}  // namespace when2tool::toolkit
