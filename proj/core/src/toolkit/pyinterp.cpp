#include "when2tool/toolkit/pyinterp.hpp"

#include "when2tool/answer.hpp"
#include "when2tool/toolkit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace when2tool::toolkit {

namespace {

[[noreturn]] void unsupported(const std::string& what) { throw ToolError("unsupported construct: " + what); }
[[noreturn]] void runtime(const std::string& what) { throw ToolError(what); }

// ---------------------------------------------------------------- tokens

enum class T { name, number, string, op, newline, indent, dedent, end };

struct Token {
    T type;
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::vector<int> indents{0};
    int depth = 0;  // bracket nesting
    int line = 1;
    std::size_t i = 0;
    bool at_line_start = true;
    auto push = [&](T t, std::string s) { out.push_back({t, std::move(s), line}); };
    while (i <= src.size()) {
        if (at_line_start && depth == 0) {
            int col = 0;
            std::size_t j = i;
            while (j < src.size() && (src[j] == ' ' || src[j] == '\t')) {
                col += src[j] == '\t' ? 8 - (col % 8) : 1;
                ++j;
            }
            if (j >= src.size()) {
                i = j;
                break;
            }
            if (src[j] == '\n' || src[j] == '#' || src[j] == '\r') {
                while (j < src.size() && src[j] != '\n') ++j;
                i = j + 1;
                ++line;
                continue;
            }
            if (col > indents.back()) {
                indents.push_back(col);
                push(T::indent, "");
            } else {
                while (col < indents.back()) {
                    indents.pop_back();
                    push(T::dedent, "");
                }
                if (col != indents.back()) runtime("IndentationError: unindent does not match any outer level");
            }
            i = j;
            at_line_start = false;
        }
        if (i >= src.size()) break;
        const char c = src[i];
        if (c == '\n') {
            if (depth == 0) {
                push(T::newline, "");
                at_line_start = true;
            }
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (c == '\\' && i + 1 < src.size() && src[i + 1] == '\n') {
            i += 2;
            ++line;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            if (j < src.size() && (src[j] == '\'' || src[j] == '"')) unsupported("string prefixes");
            push(T::name, std::string(src.substr(i, j - i)));
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            std::string digits;
            while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
                if (src[j] != '_') digits += src[j];
                ++j;
            }
            if (j < src.size() && (src[j] == '.' || src[j] == 'e' || src[j] == 'E' || src[j] == 'x' || src[j] == 'j'))
                unsupported("non-integer numeric literals");
            push(T::number, digits);
            i = j;
            continue;
        }
        if (c == '\'' || c == '"') {
            if (src.substr(i, 3) == std::string(3, c)) unsupported("triple-quoted strings");
            std::string s;
            std::size_t j = i + 1;
            for (;;) {
                if (j >= src.size() || src[j] == '\n') runtime("SyntaxError: unterminated string literal");
                if (src[j] == c) break;
                if (src[j] == '\\' && j + 1 < src.size()) {
                    const char e = src[j + 1];
                    switch (e) {
                        case 'n': s += '\n'; break;
                        case 't': s += '\t'; break;
                        case '\\': s += '\\'; break;
                        case '\'': s += '\''; break;
                        case '"': s += '"'; break;
                        case '0': s += '\0'; break;
                        default: s += '\\'; s += e;
                    }
                    j += 2;
                    continue;
                }
                s += src[j++];
            }
            push(T::string, s);
            i = j + 1;
            continue;
        }
        static constexpr std::string_view kOps3[] = {"**=", "//=", "...", "!=="};
        static constexpr std::string_view kOps2[] = {"**", "//", "==", "!=", "<=", ">=", "+=", "-=",
                                                     "*=", "%=", "->", "/=", "<<", ">>", "|=", "&="};
        bool matched = false;
        for (auto op : kOps3) {
            if (src.substr(i, 3) == op) {
                push(T::op, std::string(op));
                i += 3;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (auto op : kOps2) {
            if (src.substr(i, 2) == op) {
                push(T::op, std::string(op));
                i += 2;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        static constexpr std::string_view kOps1 = "+-*/%<>=()[]{},:.;&|^~@";
        if (kOps1.find(c) == std::string_view::npos) runtime(std::string("SyntaxError: invalid character '") + c + "'");
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth < 0) runtime("SyntaxError: unmatched bracket");
        push(T::op, std::string(1, c));
        ++i;
    }
    if (depth != 0) runtime("SyntaxError: unexpected EOF (unclosed bracket)");
    if (!out.empty() && out.back().type != T::newline && out.back().type != T::dedent) push(T::newline, "");
    while (indents.size() > 1) {
        indents.pop_back();
        push(T::dedent, "");
    }
    push(T::end, "");
    return out;
}

// ---------------------------------------------------------------- values

struct FuncObj;
struct Value;
using Items = std::shared_ptr<std::vector<Value>>;

struct Value {
    enum class K { none, boolean, integer, str, list, tuple, range, func, builtin, method };
    K k = K::none;
    std::int64_t i = 0;
    std::int64_t r_stop = 0, r_step = 1;  // range
    std::string s;                        // str, builtin name, method name
    Items items;                          // list / tuple
    std::shared_ptr<FuncObj> fn;
    std::shared_ptr<Value> self;          // bound method receiver

    static Value none() { return {}; }
    static Value boolean(bool b) {
        Value v;
        v.k = K::boolean;
        v.i = b ? 1 : 0;
        return v;
    }
    static Value integer(std::int64_t x) {
        Value v;
        v.k = K::integer;
        v.i = x;
        return v;
    }
    static Value str(std::string x) {
        Value v;
        v.k = K::str;
        v.s = std::move(x);
        return v;
    }
    static Value list(std::vector<Value> xs) {
        Value v;
        v.k = K::list;
        v.items = std::make_shared<std::vector<Value>>(std::move(xs));
        return v;
    }
    static Value tuple(std::vector<Value> xs) {
        Value v = list(std::move(xs));
        v.k = K::tuple;
        return v;
    }
    bool is_int() const { return k == K::integer || k == K::boolean; }
    bool is_seq() const { return k == K::list || k == K::tuple; }
};

std::string type_name(const Value& v) {
    switch (v.k) {
        case Value::K::none: return "NoneType";
        case Value::K::boolean: return "bool";
        case Value::K::integer: return "int";
        case Value::K::str: return "str";
        case Value::K::list: return "list";
        case Value::K::tuple: return "tuple";
        case Value::K::range: return "range";
        case Value::K::func: return "function";
        case Value::K::builtin: return "builtin_function_or_method";
        case Value::K::method: return "method";
    }
    return "object";
}

std::int64_t range_len(const Value& v) {
    const std::int64_t lo = v.i, hi = v.r_stop, st = v.r_step;
    if (st > 0) return lo < hi ? (hi - lo - 1) / st + 1 : 0;
    return lo > hi ? (lo - hi - 1) / (-st) + 1 : 0;
}

std::string repr(const Value& v);

std::string to_str(const Value& v) {
    if (v.k == Value::K::str) return v.s;
    return repr(v);
}

std::string repr(const Value& v) {
    switch (v.k) {
        case Value::K::none: return "None";
        case Value::K::boolean: return v.i ? "True" : "False";
        case Value::K::integer: return std::to_string(v.i);
        case Value::K::str: return py_quote(v.s);
        case Value::K::list:
        case Value::K::tuple: {
            std::string out = v.k == Value::K::list ? "[" : "(";
            for (std::size_t j = 0; j < v.items->size(); ++j) {
                if (j) out += ", ";
                out += repr((*v.items)[j]);
            }
            if (v.k == Value::K::tuple && v.items->size() == 1) out += ",";
            return out + (v.k == Value::K::list ? "]" : ")");
        }
        case Value::K::range: {
            std::string out = "range(" + std::to_string(v.i) + ", " + std::to_string(v.r_stop);
            if (v.r_step != 1) out += ", " + std::to_string(v.r_step);
            return out + ")";
        }
        case Value::K::func: return "<function>";
        case Value::K::builtin: return "<built-in function " + v.s + ">";
        case Value::K::method: return "<bound method " + v.s + ">";
    }
    return "?";
}

bool truthy(const Value& v) {
    switch (v.k) {
        case Value::K::none: return false;
        case Value::K::boolean:
        case Value::K::integer: return v.i != 0;
        case Value::K::str: return !v.s.empty();
        case Value::K::list:
        case Value::K::tuple: return !v.items->empty();
        case Value::K::range: return range_len(v) > 0;
        default: return true;
    }
}

bool equal(const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) return a.i == b.i;
    if (a.k != b.k) return false;
    switch (a.k) {
        case Value::K::none: return true;
        case Value::K::str: return a.s == b.s;
        case Value::K::list:
        case Value::K::tuple:
            if (a.items->size() != b.items->size()) return false;
            for (std::size_t j = 0; j < a.items->size(); ++j) {
                if (!equal((*a.items)[j], (*b.items)[j])) return false;
            }
            return true;
        case Value::K::range: return a.i == b.i && a.r_stop == b.r_stop && a.r_step == b.r_step;
        default: return a.fn == b.fn && a.s == b.s;
    }
}

// -1, 0, 1
int compare(const Value& a, const Value& b) {
    if (a.is_int() && b.is_int()) return a.i < b.i ? -1 : (a.i > b.i ? 1 : 0);
    if (a.k == Value::K::str && b.k == Value::K::str) return a.s < b.s ? -1 : (a.s > b.s ? 1 : 0);
    if (a.k == b.k && a.is_seq()) {
        const auto n = std::min(a.items->size(), b.items->size());
        for (std::size_t j = 0; j < n; ++j) {
            const int c = compare((*a.items)[j], (*b.items)[j]);
            if (c) return c;
        }
        return a.items->size() < b.items->size() ? -1 : (a.items->size() > b.items->size() ? 1 : 0);
    }
    runtime("TypeError: '<' not supported between instances of '" + type_name(a) + "' and '" + type_name(b) + "'");
}

std::int64_t checked(bool overflow, std::int64_t r) {
    if (overflow) runtime("OverflowError: integer result exceeds the supported 64-bit range");
    return r;
}

std::int64_t add64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    const bool o = __builtin_add_overflow(a, b, &r);
    return checked(o, r);
}
std::int64_t sub64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    const bool o = __builtin_sub_overflow(a, b, &r);
    return checked(o, r);
}
std::int64_t mul64(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    const bool o = __builtin_mul_overflow(a, b, &r);
    return checked(o, r);
}
std::int64_t floordiv64(std::int64_t a, std::int64_t b) {
    if (b == 0) runtime("ZeroDivisionError: integer division or modulo by zero");
    if (a == std::numeric_limits<std::int64_t>::min() && b == -1) checked(true, 0);
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}
std::int64_t mod64(std::int64_t a, std::int64_t b) {
    if (b == 0) runtime("ZeroDivisionError: integer division or modulo by zero");
    if (b == -1) return 0;
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}
std::int64_t pow64(std::int64_t base, std::int64_t e) {
    if (e < 0) unsupported("negative exponents (float results)");
    std::int64_t r = 1;
    while (e > 0) {
        if (e & 1) r = mul64(r, base);
        e >>= 1;
        if (e) base = mul64(base, base);
    }
    return r;
}

// ---------------------------------------------------------------- AST

struct Expr;
struct Stmt;
using ExprP = std::unique_ptr<Expr>;
using StmtP = std::unique_ptr<Stmt>;
using Block = std::vector<StmtP>;

struct Comprehension {
    ExprP target;
    ExprP iter;
    std::vector<ExprP> conds;
};

struct Expr {
    enum class K { constant, name, binop, unary, boolop, compare, ifexp, call, attr, subscript, slice, list, tuple, comp };
    K k = K::constant;
    Value value;             // constant
    std::string name;        // name, attr, op
    std::vector<ExprP> kids; // operands / args / elements
    std::vector<std::string> ops;                    // compare ops
    std::vector<std::pair<std::string, ExprP>> kwargs;
    std::vector<Comprehension> gens;                 // comp
    bool genexp = false;
    int line = 0;
};

struct Stmt {
    enum class K { expr, assign, augassign, if_, while_, for_, def, return_, break_, continue_, pass, global };
    K k = K::expr;
    std::vector<ExprP> targets;  // assign targets, for target, augassign target
    ExprP value;                 // rhs / condition / iterable / return value
    std::string op;              // augassign
    std::vector<std::pair<ExprP, Block>> branches;  // if / elif
    Block body;
    Block orelse;
    std::string name;                        // def
    std::vector<std::string> params;         // def
    std::vector<ExprP> defaults;             // def, aligned to the tail of params
    std::vector<std::string> names;          // global
    int line = 0;
};

struct FuncObj {
    const Stmt* def = nullptr;
    std::vector<Value> defaults;
};

// ---------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Block program() {
        Block out;
        while (peek().type != T::end) {
            if (peek().type == T::newline) {
                ++p_;
                continue;
            }
            statement(out);
        }
        return out;
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;

    const Token& peek(std::size_t ahead = 0) const { return t_[std::min(p_ + ahead, t_.size() - 1)]; }
    bool is_op(std::string_view s, std::size_t ahead = 0) const {
        return peek(ahead).type == T::op && peek(ahead).text == s;
    }
    bool is_kw(std::string_view s) const { return peek().type == T::name && peek().text == s; }
    [[noreturn]] void syntax(const std::string& msg) const {
        runtime("SyntaxError: " + msg + " (line " + std::to_string(peek().line) + ")");
    }
    void expect_op(std::string_view s) {
        if (!is_op(s)) syntax("expected '" + std::string(s) + "'");
        ++p_;
    }
    void expect_kw(std::string_view s) {
        if (!is_kw(s)) syntax("expected '" + std::string(s) + "'");
        ++p_;
    }

    static bool reserved(std::string_view n) {
        static constexpr std::string_view kw[] = {"if", "elif", "else", "while", "for", "in", "def", "return",
                                                  "break", "continue", "pass", "and", "or", "not", "is", "global",
                                                  "True", "False", "None", "lambda", "class", "import", "from",
                                                  "try", "except", "finally", "with", "yield", "del", "assert",
                                                  "raise", "as", "nonlocal", "async", "await"};
        return std::find(std::begin(kw), std::end(kw), n) != std::end(kw);
    }

    void statement(Block& out) {
        const Token& tk = peek();
        if (tk.type == T::indent) syntax("unexpected indent");
        if (tk.type == T::name) {
            if (tk.text == "if") return out.push_back(if_stmt());
            if (tk.text == "while") return out.push_back(while_stmt());
            if (tk.text == "for") return out.push_back(for_stmt());
            if (tk.text == "def") return out.push_back(def_stmt());
            static constexpr std::string_view bad[] = {"class", "import", "from", "try", "with", "lambda", "yield",
                                                       "del", "assert", "raise", "nonlocal", "async", "await"};
            if (std::find(std::begin(bad), std::end(bad), tk.text) != std::end(bad)) unsupported("'" + tk.text + "'");
        }
        simple_line(out);
    }

    void simple_line(Block& out) {
        out.push_back(small_stmt());
        while (is_op(";")) {
            ++p_;
            if (peek().type == T::newline) break;
            out.push_back(small_stmt());
        }
        if (peek().type != T::newline && peek().type != T::end) syntax("invalid syntax");
        if (peek().type == T::newline) ++p_;
    }

    StmtP make(Stmt::K k) {
        auto s = std::make_unique<Stmt>();
        s->k = k;
        s->line = peek().line;
        return s;
    }

    StmtP small_stmt() {
        if (is_kw("pass")) { ++p_; return make(Stmt::K::pass); }
        if (is_kw("break")) { ++p_; return make(Stmt::K::break_); }
        if (is_kw("continue")) { ++p_; return make(Stmt::K::continue_); }
        if (is_kw("return")) {
            auto s = make(Stmt::K::return_);
            ++p_;
            if (peek().type != T::newline && !is_op(";") && peek().type != T::end) s->value = testlist();
            return s;
        }
        if (is_kw("global")) {
            auto s = make(Stmt::K::global);
            ++p_;
            for (;;) {
                if (peek().type != T::name) syntax("expected name");
                s->names.push_back(peek().text);
                ++p_;
                if (!is_op(",")) break;
                ++p_;
            }
            return s;
        }
        auto first = testlist();
        static constexpr std::string_view aug[] = {"+=", "-=", "*=", "//=", "%=", "**="};
        for (auto op : aug) {
            if (is_op(op)) {
                ++p_;
                auto s = make(Stmt::K::augassign);
                check_target(*first, false);
                s->targets.push_back(std::move(first));
                s->op = std::string(op.substr(0, op.size() - 1));
                s->value = testlist();
                return s;
            }
        }
        if (is_op("/=") || is_op("|=") || is_op("&=")) unsupported("operator " + peek().text);
        if (is_op("=")) {
            auto s = make(Stmt::K::assign);
            s->targets.push_back(std::move(first));
            while (is_op("=")) {
                ++p_;
                s->targets.push_back(testlist());
            }
            s->value = std::move(s->targets.back());
            s->targets.pop_back();
            for (auto& t : s->targets) check_target(*t, true);
            return s;
        }
        auto s = make(Stmt::K::expr);
        s->value = std::move(first);
        return s;
    }

    void check_target(const Expr& e, bool allow_tuple) const {
        if (e.k == Expr::K::name || e.k == Expr::K::subscript) return;
        if (allow_tuple && (e.k == Expr::K::tuple || e.k == Expr::K::list)) {
            for (const auto& kid : e.kids) check_target(*kid, true);
            return;
        }
        runtime("SyntaxError: cannot assign to expression");
    }

    Block suite() {
        expect_op(":");
        Block body;
        if (peek().type != T::newline) {
            simple_line(body);
            return body;
        }
        ++p_;
        if (peek().type != T::indent) syntax("expected an indented block");
        ++p_;
        while (peek().type != T::dedent && peek().type != T::end) {
            if (peek().type == T::newline) {
                ++p_;
                continue;
            }
            statement(body);
        }
        if (peek().type == T::dedent) ++p_;
        return body;
    }

    StmtP if_stmt() {
        auto s = make(Stmt::K::if_);
        ++p_;
        auto cond = test();
        s->branches.emplace_back(std::move(cond), suite());
        while (is_kw("elif")) {
            ++p_;
            auto c = test();
            s->branches.emplace_back(std::move(c), suite());
        }
        if (is_kw("else")) {
            ++p_;
            s->orelse = suite();
        }
        return s;
    }

    StmtP while_stmt() {
        auto s = make(Stmt::K::while_);
        ++p_;
        s->value = test();
        s->body = suite();
        if (is_kw("else")) {
            ++p_;
            s->orelse = suite();
        }
        return s;
    }

    StmtP for_stmt() {
        auto s = make(Stmt::K::for_);
        ++p_;
        auto target = target_list();
        expect_kw("in");
        s->targets.push_back(std::move(target));
        s->value = testlist();
        s->body = suite();
        if (is_kw("else")) {
            ++p_;
            s->orelse = suite();
        }
        return s;
    }

    ExprP target_list() {
        auto first = or_expr_target();
        if (!is_op(",")) return first;
        auto tup = node(Expr::K::tuple);
        tup->kids.push_back(std::move(first));
        while (is_op(",")) {
            ++p_;
            if (is_kw("in")) break;
            tup->kids.push_back(or_expr_target());
        }
        return tup;
    }

    ExprP or_expr_target() {
        auto e = arith();
        check_target(*e, true);
        return e;
    }

    StmtP def_stmt() {
        auto s = make(Stmt::K::def);
        ++p_;
        if (peek().type != T::name) syntax("expected function name");
        s->name = peek().text;
        ++p_;
        expect_op("(");
        while (!is_op(")")) {
            if (is_op("*") || is_op("**")) unsupported("variadic parameters");
            if (peek().type != T::name) syntax("expected parameter name");
            s->params.push_back(peek().text);
            ++p_;
            if (is_op("=")) {
                ++p_;
                s->defaults.push_back(test());
            } else if (!s->defaults.empty()) {
                syntax("non-default argument follows default argument");
            }
            if (!is_op(",")) break;
            ++p_;
        }
        expect_op(")");
        if (is_op("->")) unsupported("annotations");
        s->body = suite();
        return s;
    }

    // ---- expressions

    ExprP node(Expr::K k) {
        auto e = std::make_unique<Expr>();
        e->k = k;
        e->line = peek().line;
        return e;
    }

    ExprP testlist() {
        auto first = test();
        if (!is_op(",")) return first;
        auto tup = node(Expr::K::tuple);
        tup->kids.push_back(std::move(first));
        while (is_op(",")) {
            ++p_;
            if (peek().type == T::newline || is_op("=") || is_op(";") || is_op(")") || peek().type == T::end) break;
            tup->kids.push_back(test());
        }
        return tup;
    }

    ExprP test() {
        if (is_kw("lambda")) unsupported("lambda");
        auto e = or_test();
        if (is_kw("if")) {
            ++p_;
            auto cond = or_test();
            expect_kw("else");
            auto other = test();
            auto n = node(Expr::K::ifexp);
            n->kids.push_back(std::move(cond));
            n->kids.push_back(std::move(e));
            n->kids.push_back(std::move(other));
            return n;
        }
        return e;
    }

    ExprP or_test() {
        auto e = and_test();
        while (is_kw("or")) {
            ++p_;
            auto n = node(Expr::K::boolop);
            n->name = "or";
            n->kids.push_back(std::move(e));
            n->kids.push_back(and_test());
            e = std::move(n);
        }
        return e;
    }

    ExprP and_test() {
        auto e = not_test();
        while (is_kw("and")) {
            ++p_;
            auto n = node(Expr::K::boolop);
            n->name = "and";
            n->kids.push_back(std::move(e));
            n->kids.push_back(not_test());
            e = std::move(n);
        }
        return e;
    }

    ExprP not_test() {
        if (is_kw("not")) {
            ++p_;
            auto n = node(Expr::K::unary);
            n->name = "not";
            n->kids.push_back(not_test());
            return n;
        }
        return comparison();
    }

    ExprP comparison() {
        auto e = arith();
        std::unique_ptr<Expr> cmp;
        for (;;) {
            std::string op;
            if (is_op("<") || is_op(">") || is_op("==") || is_op("!=") || is_op("<=") || is_op(">=")) {
                op = peek().text;
                ++p_;
            } else if (is_kw("in")) {
                op = "in";
                ++p_;
            } else if (is_kw("not") && peek(1).type == T::name && peek(1).text == "in") {
                op = "not in";
                p_ += 2;
            } else if (is_kw("is")) {
                ++p_;
                op = "is";
                if (is_kw("not")) {
                    ++p_;
                    op = "is not";
                }
            } else {
                break;
            }
            if (!cmp) {
                cmp = node(Expr::K::compare);
                cmp->kids.push_back(std::move(e));
            }
            cmp->ops.push_back(op);
            cmp->kids.push_back(arith());
        }
        return cmp ? std::move(cmp) : std::move(e);
    }

    ExprP binop(std::string op, ExprP l, ExprP r) {
        auto n = node(Expr::K::binop);
        n->name = std::move(op);
        n->kids.push_back(std::move(l));
        n->kids.push_back(std::move(r));
        return n;
    }

    ExprP arith() {
        if (is_op("|") || is_op("&") || is_op("^") || is_op("<<") || is_op(">>")) unsupported("bitwise operators");
        auto e = term();
        for (;;) {
            if (is_op("+") || is_op("-")) {
                std::string op = peek().text;
                ++p_;
                e = binop(op, std::move(e), term());
            } else if (is_op("|") || is_op("&") || is_op("^") || is_op("<<") || is_op(">>")) {
                unsupported("bitwise operators");
            } else {
                return e;
            }
        }
    }

    ExprP term() {
        auto e = factor();
        while (is_op("*") || is_op("//") || is_op("%") || is_op("/") || is_op("@")) {
            std::string op = peek().text;
            if (op == "/") unsupported("true division '/' (float results); use '//'");
            if (op == "@") unsupported("'@'");
            ++p_;
            e = binop(op, std::move(e), factor());
        }
        return e;
    }

    ExprP factor() {
        if (is_op("-") || is_op("+")) {
            std::string op = peek().text;
            ++p_;
            auto n = node(Expr::K::unary);
            n->name = op;
            n->kids.push_back(factor());
            return n;
        }
        if (is_op("~")) unsupported("bitwise operators");
        return power();
    }

    ExprP power() {
        auto e = atom_expr();
        if (is_op("**")) {
            ++p_;
            e = binop("**", std::move(e), factor());
        }
        return e;
    }

    ExprP atom_expr() {
        auto e = atom();
        for (;;) {
            if (is_op("(")) {
                ++p_;
                auto call = node(Expr::K::call);
                call->kids.push_back(std::move(e));
                call_args(*call);
                e = std::move(call);
            } else if (is_op("[")) {
                ++p_;
                auto sub = node(Expr::K::subscript);
                sub->kids.push_back(std::move(e));
                sub->kids.push_back(subscript_index());
                expect_op("]");
                e = std::move(sub);
            } else if (is_op(".")) {
                ++p_;
                if (peek().type != T::name) syntax("expected attribute name");
                auto a = node(Expr::K::attr);
                a->name = peek().text;
                ++p_;
                a->kids.push_back(std::move(e));
                e = std::move(a);
            } else {
                return e;
            }
        }
    }

    void call_args(Expr& call) {
        while (!is_op(")")) {
            if (is_op("*") || is_op("**")) unsupported("argument unpacking");
            if (peek().type == T::name && is_op("=", 1)) {
                std::string kw = peek().text;
                p_ += 2;
                call.kwargs.emplace_back(std::move(kw), test());
            } else {
                if (!call.kwargs.empty()) syntax("positional argument follows keyword argument");
                auto arg = test();
                if (is_kw("for")) {
                    auto g = node(Expr::K::comp);
                    g->genexp = true;
                    g->kids.push_back(std::move(arg));
                    comp_for(*g);
                    arg = std::move(g);
                }
                call.kids.push_back(std::move(arg));
            }
            if (!is_op(",")) break;
            ++p_;
        }
        expect_op(")");
    }

    ExprP subscript_index() {
        ExprP lo, hi, step;
        if (!is_op(":")) lo = test();
        if (!is_op(":")) return lo;
        ++p_;
        if (!is_op("]") && !is_op(":")) hi = test();
        if (is_op(":")) {
            ++p_;
            if (!is_op("]")) step = test();
        }
        auto s = node(Expr::K::slice);
        s->kids.push_back(std::move(lo));
        s->kids.push_back(std::move(hi));
        s->kids.push_back(std::move(step));
        return s;
    }

    void comp_for(Expr& comp) {
        while (is_kw("for")) {
            ++p_;
            Comprehension c;
            c.target = target_list();
            expect_kw("in");
            c.iter = or_test();
            while (is_kw("if")) {
                ++p_;
                c.conds.push_back(or_test());
            }
            comp.gens.push_back(std::move(c));
        }
    }

    ExprP atom() {
        const Token tk = peek();
        if (tk.type == T::number) {
            ++p_;
            auto n = node(Expr::K::constant);
            std::int64_t v = 0;
            for (char ch : tk.text) v = add64(mul64(v, 10), ch - '0');
            if (tk.text.size() > 1 && tk.text[0] == '0' && v != 0) runtime("SyntaxError: leading zeros in integer literal");
            n->value = Value::integer(v);
            return n;
        }
        if (tk.type == T::string) {
            std::string s;
            while (peek().type == T::string) s += t_[p_++].text;
            auto n = node(Expr::K::constant);
            n->value = Value::str(std::move(s));
            return n;
        }
        if (tk.type == T::name) {
            ++p_;
            auto n = node(Expr::K::constant);
            if (tk.text == "True") { n->value = Value::boolean(true); return n; }
            if (tk.text == "False") { n->value = Value::boolean(false); return n; }
            if (tk.text == "None") return n;
            if (reserved(tk.text)) syntax("invalid syntax near '" + tk.text + "'");
            n->k = Expr::K::name;
            n->name = tk.text;
            return n;
        }
        if (is_op("(")) {
            ++p_;
            if (is_op(")")) {
                ++p_;
                return node(Expr::K::tuple);
            }
            auto first = test();
            if (is_kw("for")) {
                auto g = node(Expr::K::comp);
                g->genexp = true;
                g->kids.push_back(std::move(first));
                comp_for(*g);
                expect_op(")");
                return g;
            }
            if (is_op(")")) {
                ++p_;
                return first;
            }
            auto tup = node(Expr::K::tuple);
            tup->kids.push_back(std::move(first));
            while (is_op(",")) {
                ++p_;
                if (is_op(")")) break;
                tup->kids.push_back(test());
            }
            expect_op(")");
            return tup;
        }
        if (is_op("[")) {
            ++p_;
            auto lst = node(Expr::K::list);
            if (is_op("]")) {
                ++p_;
                return lst;
            }
            auto first = test();
            if (is_kw("for")) {
                auto c = node(Expr::K::comp);
                c->kids.push_back(std::move(first));
                comp_for(*c);
                expect_op("]");
                return c;
            }
            lst->kids.push_back(std::move(first));
            while (is_op(",")) {
                ++p_;
                if (is_op("]")) break;
                lst->kids.push_back(test());
            }
            expect_op("]");
            return lst;
        }
        if (is_op("{")) unsupported("dict and set literals");
        syntax("invalid syntax");
    }
};

// ---------------------------------------------------------------- interpreter

enum class Flow { normal, brk, cont, ret };

using Scope = std::unordered_map<std::string, Value>;

constexpr std::size_t kMaxOutput = 1 << 20;
constexpr std::size_t kMaxSeq = 1 << 22;
constexpr int kMaxDepth = 400;

class Interp {
public:
    explicit Interp(std::size_t budget) : budget_(budget) {}

    std::string run(const Block& prog) {
        exec_block(prog);
        std::string s = out_;
        if (!s.empty() && s.back() == '\n') s.pop_back();
        return s;
    }

private:
    std::size_t budget_;
    std::size_t steps_ = 0;
    std::string out_;
    Scope globals_;
    std::vector<Scope*> locals_;  // innermost last; empty at module level
    std::vector<std::vector<std::string>> global_decls_;
    Value ret_;
    int depth_ = 0;

    void tick() {
        if (++steps_ > budget_) runtime("TimeoutError: step budget exceeded");
    }

    Scope& current() { return locals_.empty() ? globals_ : *locals_.back(); }

    bool declared_global(const std::string& n) const {
        if (global_decls_.empty()) return false;
        const auto& g = global_decls_.back();
        return std::find(g.begin(), g.end(), n) != g.end();
    }

    Value lookup(const std::string& n) {
        if (!locals_.empty() && !declared_global(n)) {
            auto it = locals_.back()->find(n);
            if (it != locals_.back()->end()) return it->second;
        }
        if (auto it = globals_.find(n); it != globals_.end()) return it->second;
        static constexpr std::string_view builtins[] = {"print", "len", "sum", "min", "max", "abs", "range",
                                                        "str", "int", "bool", "sorted", "list", "reversed",
                                                        "enumerate", "zip", "any", "all", "divmod", "tuple"};
        if (std::find(std::begin(builtins), std::end(builtins), n) != std::end(builtins)) {
            Value v;
            v.k = Value::K::builtin;
            v.s = n;
            return v;
        }
        runtime("NameError: name '" + n + "' is not defined");
    }

    void bind(const std::string& n, Value v) {
        if (!locals_.empty() && declared_global(n)) {
            globals_[n] = std::move(v);
            return;
        }
        current()[n] = std::move(v);
    }

    // ---- statements

    Flow exec_block(const Block& b) {
        for (const auto& s : b) {
            const Flow f = exec(*s);
            if (f != Flow::normal) return f;
        }
        return Flow::normal;
    }

    Flow exec(const Stmt& s) {
        tick();
        switch (s.k) {
            case Stmt::K::expr: eval(*s.value); return Flow::normal;
            case Stmt::K::pass: return Flow::normal;
            case Stmt::K::break_: return Flow::brk;
            case Stmt::K::continue_: return Flow::cont;
            case Stmt::K::global:
                if (global_decls_.empty()) return Flow::normal;
                for (const auto& n : s.names) global_decls_.back().push_back(n);
                return Flow::normal;
            case Stmt::K::return_:
                if (locals_.empty()) runtime("SyntaxError: 'return' outside function");
                ret_ = s.value ? eval(*s.value) : Value::none();
                return Flow::ret;
            case Stmt::K::assign: {
                Value v = eval(*s.value);
                for (const auto& t : s.targets) assign(*t, v);
                return Flow::normal;
            }
            case Stmt::K::augassign: {
                const Expr& t = *s.targets[0];
                if (t.k == Expr::K::name) {
                    Value cur = lookup(t.name);
                    Value rhs = eval(*s.value);
                    if (cur.k == Value::K::list && s.op == "+") {
                        extend(cur, rhs);
                        bind(t.name, cur);
                    } else {
                        bind(t.name, binary(s.op, cur, rhs));
                    }
                } else {
                    Value obj = eval(*t.kids[0]);
                    Value idx = eval(*t.kids[1]);
                    Value cur = get_item(obj, idx);
                    Value rhs = eval(*s.value);
                    set_item(obj, idx, binary(s.op, cur, rhs));
                }
                return Flow::normal;
            }
            case Stmt::K::if_:
                for (const auto& [cond, body] : s.branches) {
                    if (truthy(eval(*cond))) return exec_block(body);
                }
                return exec_block(s.orelse);
            case Stmt::K::while_:
                while (truthy(eval(*s.value))) {
                    const Flow f = exec_block(s.body);
                    if (f == Flow::brk) return Flow::normal;
                    if (f == Flow::ret) return f;
                    tick();
                }
                return exec_block(s.orelse);
            case Stmt::K::for_: {
                const Value it = eval(*s.value);
                bool broke = false;
                Flow result = Flow::normal;
                iterate(it, [&](const Value& v) {
                    assign(*s.targets[0], v);
                    const Flow f = exec_block(s.body);
                    if (f == Flow::brk) {
                        broke = true;
                        return false;
                    }
                    if (f == Flow::ret) {
                        result = f;
                        return false;
                    }
                    return true;
                });
                if (result == Flow::ret) return result;
                if (!broke) return exec_block(s.orelse);
                return Flow::normal;
            }
            case Stmt::K::def: {
                auto fo = std::make_shared<FuncObj>();
                fo->def = &s;
                for (const auto& d : s.defaults) fo->defaults.push_back(eval(*d));
                Value v;
                v.k = Value::K::func;
                v.fn = std::move(fo);
                v.s = s.name;
                bind(s.name, std::move(v));
                return Flow::normal;
            }
        }
        return Flow::normal;
    }

    void assign(const Expr& target, const Value& v) {
        switch (target.k) {
            case Expr::K::name: bind(target.name, v); return;
            case Expr::K::subscript: {
                Value obj = eval(*target.kids[0]);
                if (target.kids[1]->k == Expr::K::slice) unsupported("slice assignment");
                set_item(obj, eval(*target.kids[1]), v);
                return;
            }
            case Expr::K::tuple:
            case Expr::K::list: {
                std::vector<Value> vals;
                iterate(v, [&](const Value& x) {
                    vals.push_back(x);
                    return true;
                });
                if (vals.size() != target.kids.size()) {
                    runtime(vals.size() > target.kids.size()
                                ? "ValueError: too many values to unpack (expected " + std::to_string(target.kids.size()) + ")"
                                : "ValueError: not enough values to unpack (expected " + std::to_string(target.kids.size()) +
                                      ", got " + std::to_string(vals.size()) + ")");
                }
                for (std::size_t j = 0; j < vals.size(); ++j) assign(*target.kids[j], vals[j]);
                return;
            }
            default: runtime("SyntaxError: cannot assign to expression");
        }
    }

    // ---- iteration

    void iterate(const Value& v, const std::function<bool(const Value&)>& f) {
        switch (v.k) {
            case Value::K::list:
            case Value::K::tuple: {
                const Items items = v.items;  // keep alive; iterate by index like CPython
                for (std::size_t j = 0; j < items->size(); ++j) {
                    tick();
                    if (!f((*items)[j])) return;
                }
                return;
            }
            case Value::K::str:
                for (char c : v.s) {
                    tick();
                    if (!f(Value::str(std::string(1, c)))) return;
                }
                return;
            case Value::K::range: {
                const std::int64_t n = range_len(v);
                for (std::int64_t j = 0; j < n; ++j) {
                    tick();
                    if (!f(Value::integer(v.i + j * v.r_step))) return;
                }
                return;
            }
            default: runtime("TypeError: '" + type_name(v) + "' object is not iterable");
        }
    }

    std::vector<Value> collect(const Value& v) {
        std::vector<Value> out;
        iterate(v, [&](const Value& x) {
            if (out.size() >= kMaxSeq) runtime("MemoryError: sequence too large");
            out.push_back(x);
            return true;
        });
        return out;
    }

    void extend(Value& list, const Value& other) {
        auto vals = collect(other);
        if (list.items->size() + vals.size() > kMaxSeq) runtime("MemoryError: sequence too large");
        list.items->insert(list.items->end(), vals.begin(), vals.end());
    }

    // ---- indexing

    static std::int64_t norm_index(std::int64_t idx, std::int64_t n, const char* what) {
        if (idx < 0) idx += n;
        if (idx < 0 || idx >= n) runtime(std::string("IndexError: ") + what + " index out of range");
        return idx;
    }

    Value get_item(const Value& obj, const Value& idx) {
        if (!idx.is_int()) runtime("TypeError: indices must be integers, not " + type_name(idx));
        switch (obj.k) {
            case Value::K::list:
            case Value::K::tuple: {
                const auto n = static_cast<std::int64_t>(obj.items->size());
                return (*obj.items)[static_cast<std::size_t>(norm_index(idx.i, n, obj.k == Value::K::list ? "list" : "tuple"))];
            }
            case Value::K::str: {
                const auto n = static_cast<std::int64_t>(obj.s.size());
                return Value::str(std::string(1, obj.s[static_cast<std::size_t>(norm_index(idx.i, n, "string"))]));
            }
            case Value::K::range: {
                const auto j = norm_index(idx.i, range_len(obj), "range object");
                return Value::integer(obj.i + j * obj.r_step);
            }
            default: runtime("TypeError: '" + type_name(obj) + "' object is not subscriptable");
        }
    }

    void set_item(Value& obj, const Value& idx, Value v) {
        if (obj.k != Value::K::list) runtime("TypeError: '" + type_name(obj) + "' object does not support item assignment");
        if (!idx.is_int()) runtime("TypeError: list indices must be integers");
        const auto n = static_cast<std::int64_t>(obj.items->size());
        (*obj.items)[static_cast<std::size_t>(norm_index(idx.i, n, "list assignment"))] = std::move(v);
    }

    Value slice(const Value& obj, const Expr& sl) {
        auto part = [&](const ExprP& e) -> std::optional<std::int64_t> {
            if (!e) return std::nullopt;
            Value v = eval(*e);
            if (v.k == Value::K::none) return std::nullopt;
            if (!v.is_int()) runtime("TypeError: slice indices must be integers or None");
            return v.i;
        };
        const auto a = part(sl.kids[0]), b = part(sl.kids[1]), c = part(sl.kids[2]);
        const std::int64_t step = c.value_or(1);
        if (step == 0) runtime("ValueError: slice step cannot be zero");
        std::int64_t n = 0;
        if (obj.k == Value::K::str) n = static_cast<std::int64_t>(obj.s.size());
        else if (obj.is_seq()) n = static_cast<std::int64_t>(obj.items->size());
        else if (obj.k == Value::K::range) return slice(Value::list(collect(obj)), sl);
        else runtime("TypeError: '" + type_name(obj) + "' object is not subscriptable");
        auto adjust = [&](std::optional<std::int64_t> x, std::int64_t dflt) {
            if (!x) return dflt;
            std::int64_t v = *x;
            if (v < 0) {
                v += n;
                if (v < 0) v = step < 0 ? -1 : 0;
            } else if (v >= n) {
                v = step < 0 ? n - 1 : n;
            }
            return v;
        };
        const std::int64_t start = adjust(a, step < 0 ? n - 1 : 0);
        const std::int64_t stop = adjust(b, step < 0 ? -1 : n);
        std::vector<std::int64_t> idxs;
        if (step > 0) {
            for (std::int64_t j = start; j < stop; j += step) idxs.push_back(j);
        } else {
            for (std::int64_t j = start; j > stop; j += step) idxs.push_back(j);
        }
        if (obj.k == Value::K::str) {
            std::string out;
            for (auto j : idxs) out += obj.s[static_cast<std::size_t>(j)];
            return Value::str(out);
        }
        std::vector<Value> out;
        for (auto j : idxs) out.push_back((*obj.items)[static_cast<std::size_t>(j)]);
        return obj.k == Value::K::list ? Value::list(std::move(out)) : Value::tuple(std::move(out));
    }

    // ---- operators

    Value binary(const std::string& op, const Value& a, const Value& b) {
        tick();
        if (a.is_int() && b.is_int()) {
            if (op == "+") return Value::integer(add64(a.i, b.i));
            if (op == "-") return Value::integer(sub64(a.i, b.i));
            if (op == "*") return Value::integer(mul64(a.i, b.i));
            if (op == "//") return Value::integer(floordiv64(a.i, b.i));
            if (op == "%") return Value::integer(mod64(a.i, b.i));
            if (op == "**") return Value::integer(pow64(a.i, b.i));
        }
        if (op == "+") {
            if (a.k == Value::K::str && b.k == Value::K::str) return Value::str(a.s + b.s);
            if (a.is_seq() && a.k == b.k) {
                std::vector<Value> out(*a.items);
                out.insert(out.end(), b.items->begin(), b.items->end());
                if (out.size() > kMaxSeq) runtime("MemoryError: sequence too large");
                Value r = Value::list(std::move(out));
                r.k = a.k;
                return r;
            }
        }
        if (op == "*") {
            const Value* seq = a.is_int() ? &b : &a;
            const Value* cnt = a.is_int() ? &a : &b;
            if (cnt->is_int() && (seq->k == Value::K::str || seq->is_seq())) {
                const std::int64_t n = std::max<std::int64_t>(0, cnt->i);
                const std::size_t len = seq->k == Value::K::str ? seq->s.size() : seq->items->size();
                if (len && static_cast<std::uint64_t>(n) > kMaxSeq / len) runtime("MemoryError: sequence too large");
                if (seq->k == Value::K::str) {
                    std::string out;
                    for (std::int64_t j = 0; j < n; ++j) out += seq->s;
                    return Value::str(out);
                }
                std::vector<Value> out;
                for (std::int64_t j = 0; j < n; ++j) out.insert(out.end(), seq->items->begin(), seq->items->end());
                Value r = Value::list(std::move(out));
                r.k = seq->k;
                return r;
            }
        }
        if (op == "%" && a.k == Value::K::str) unsupported("string formatting with '%'");
        runtime("TypeError: unsupported operand type(s) for " + op + ": '" + type_name(a) + "' and '" + type_name(b) + "'");
    }

    bool contains(const Value& container, const Value& x) {
        if (container.k == Value::K::str) {
            if (x.k != Value::K::str) runtime("TypeError: 'in <string>' requires string as left operand");
            return container.s.find(x.s) != std::string::npos;
        }
        if (container.k == Value::K::range) {
            if (!x.is_int()) return false;
            const std::int64_t n = range_len(container);
            if (n == 0) return false;
            const std::int64_t off = x.i - container.i;
            if (off % container.r_step != 0) return false;
            const std::int64_t j = off / container.r_step;
            return j >= 0 && j < n;
        }
        bool found = false;
        iterate(container, [&](const Value& v) {
            if (equal(v, x)) {
                found = true;
                return false;
            }
            return true;
        });
        return found;
    }

    bool compare_op(const std::string& op, const Value& a, const Value& b) {
        if (op == "==") return equal(a, b);
        if (op == "!=") return !equal(a, b);
        if (op == "<") return compare(a, b) < 0;
        if (op == ">") return compare(a, b) > 0;
        if (op == "<=") return compare(a, b) <= 0;
        if (op == ">=") return compare(a, b) >= 0;
        if (op == "in") return contains(b, a);
        if (op == "not in") return !contains(b, a);
        if (op == "is" || op == "is not") {
            bool same = false;
            if (a.k == Value::K::none || b.k == Value::K::none) same = a.k == b.k;
            else if (a.is_seq() && b.is_seq()) same = a.items == b.items;
            else same = a.k == b.k && equal(a, b);
            return op == "is" ? same : !same;
        }
        runtime("SyntaxError: unknown comparison " + op);
    }

    // ---- expressions

    Value eval(const Expr& e) {
        tick();
        switch (e.k) {
            case Expr::K::constant: return e.value;
            case Expr::K::name: return lookup(e.name);
            case Expr::K::binop: {
                Value a = eval(*e.kids[0]);
                Value b = eval(*e.kids[1]);
                return binary(e.name, a, b);
            }
            case Expr::K::unary: {
                Value v = eval(*e.kids[0]);
                if (e.name == "not") return Value::boolean(!truthy(v));
                if (!v.is_int()) runtime("TypeError: bad operand type for unary " + e.name + ": '" + type_name(v) + "'");
                if (e.name == "-") return Value::integer(sub64(0, v.i));
                return Value::integer(v.i);
            }
            case Expr::K::boolop: {
                Value a = eval(*e.kids[0]);
                if (e.name == "and") return truthy(a) ? eval(*e.kids[1]) : a;
                return truthy(a) ? a : eval(*e.kids[1]);
            }
            case Expr::K::compare: {
                Value left = eval(*e.kids[0]);
                for (std::size_t j = 0; j < e.ops.size(); ++j) {
                    Value right = eval(*e.kids[j + 1]);
                    if (!compare_op(e.ops[j], left, right)) return Value::boolean(false);
                    left = std::move(right);
                }
                return Value::boolean(true);
            }
            case Expr::K::ifexp: return truthy(eval(*e.kids[0])) ? eval(*e.kids[1]) : eval(*e.kids[2]);
            case Expr::K::list:
            case Expr::K::tuple: {
                std::vector<Value> vals;
                for (const auto& k : e.kids) vals.push_back(eval(*k));
                return e.k == Expr::K::list ? Value::list(std::move(vals)) : Value::tuple(std::move(vals));
            }
            case Expr::K::comp: {
                std::vector<Value> out;
                comprehension(e, 0, out);
                return Value::list(std::move(out));
            }
            case Expr::K::subscript: {
                Value obj = eval(*e.kids[0]);
                if (e.kids[1]->k == Expr::K::slice) return slice(obj, *e.kids[1]);
                return get_item(obj, eval(*e.kids[1]));
            }
            case Expr::K::slice: runtime("SyntaxError: invalid slice");
            case Expr::K::attr: {
                Value obj = eval(*e.kids[0]);
                Value m;
                m.k = Value::K::method;
                m.s = e.name;
                m.self = std::make_shared<Value>(std::move(obj));
                return m;
            }
            case Expr::K::call: {
                Value f = eval(*e.kids[0]);
                std::vector<Value> args;
                for (std::size_t j = 1; j < e.kids.size(); ++j) args.push_back(eval(*e.kids[j]));
                std::vector<std::pair<std::string, Value>> kwargs;
                for (const auto& [k, v] : e.kwargs) kwargs.emplace_back(k, eval(*v));
                return call(f, std::move(args), std::move(kwargs));
            }
        }
        runtime("internal error: unknown expression");
    }

    void comprehension(const Expr& e, std::size_t level, std::vector<Value>& out) {
        if (level == e.gens.size()) {
            if (out.size() >= kMaxSeq) runtime("MemoryError: sequence too large");
            out.push_back(eval(*e.kids[0]));
            return;
        }
        const Comprehension& g = e.gens[level];
        const Value it = eval(*g.iter);
        iterate(it, [&](const Value& v) {
            assign(*g.target, v);
            for (const auto& c : g.conds) {
                if (!truthy(eval(*c))) return true;
            }
            comprehension(e, level + 1, out);
            return true;
        });
    }

    // ---- calls

    static void arity(const std::string& name, const std::vector<Value>& args, std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            runtime("TypeError: " + name + "() takes " +
                    (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                    " arguments (" + std::to_string(args.size()) + " given)");
        }
    }

    static void no_kwargs(const std::string& name, const std::vector<std::pair<std::string, Value>>& kw) {
        if (!kw.empty()) runtime("TypeError: " + name + "() got an unexpected keyword argument '" + kw[0].first + "'");
    }

    static std::int64_t as_int(const Value& v, const std::string& ctx) {
        if (!v.is_int()) runtime("TypeError: " + ctx + " expects an integer, got '" + type_name(v) + "'");
        return v.i;
    }

    Value call(const Value& f, std::vector<Value> args, std::vector<std::pair<std::string, Value>> kwargs) {
        tick();
        if (f.k == Value::K::func) return call_user(*f.fn, std::move(args), std::move(kwargs));
        if (f.k == Value::K::builtin) return call_builtin(f.s, std::move(args), std::move(kwargs));
        if (f.k == Value::K::method) return call_method(*f.self, f.s, std::move(args), std::move(kwargs));
        runtime("TypeError: '" + type_name(f) + "' object is not callable");
    }

    Value call_user(const FuncObj& fo, std::vector<Value> args, std::vector<std::pair<std::string, Value>> kwargs) {
        const Stmt& def = *fo.def;
        const std::size_t np = def.params.size();
        if (args.size() > np) runtime("TypeError: " + def.name + "() takes " + std::to_string(np) + " positional arguments");
        Scope scope;
        for (std::size_t j = 0; j < args.size(); ++j) scope[def.params[j]] = std::move(args[j]);
        for (auto& [k, v] : kwargs) {
            if (std::find(def.params.begin(), def.params.end(), k) == def.params.end())
                runtime("TypeError: " + def.name + "() got an unexpected keyword argument '" + k + "'");
            if (scope.count(k)) runtime("TypeError: " + def.name + "() got multiple values for argument '" + k + "'");
            scope[k] = std::move(v);
        }
        const std::size_t first_default = np - fo.defaults.size();
        for (std::size_t j = 0; j < np; ++j) {
            if (scope.count(def.params[j])) continue;
            if (j >= first_default) {
                scope[def.params[j]] = fo.defaults[j - first_default];
            } else {
                runtime("TypeError: " + def.name + "() missing required argument '" + def.params[j] + "'");
            }
        }
        if (++depth_ > kMaxDepth) runtime("RecursionError: maximum recursion depth exceeded");
        locals_.push_back(&scope);
        global_decls_.emplace_back();
        struct Pop {
            Interp* self;
            ~Pop() {
                self->locals_.pop_back();
                self->global_decls_.pop_back();
                --self->depth_;
            }
        } pop{this};
        const Flow flow = exec_block(def.body);
        if (flow == Flow::ret) {
            Value r = std::move(ret_);
            ret_ = Value::none();
            return r;
        }
        if (flow == Flow::brk || flow == Flow::cont) runtime("SyntaxError: 'break' outside loop");
        return Value::none();
    }

    Value min_max(const std::string& name, std::vector<Value> args, bool want_max) {
        std::vector<Value> vals = args.size() == 1 ? collect(args[0]) : std::move(args);
        if (vals.empty()) runtime("ValueError: " + name + "() arg is an empty sequence");
        std::size_t best = 0;
        for (std::size_t j = 1; j < vals.size(); ++j) {
            const int c = compare(vals[j], vals[best]);
            if (want_max ? c > 0 : c < 0) best = j;
        }
        return vals[best];
    }

    void sort_values(std::vector<Value>& vals, bool reverse) {
        std::stable_sort(vals.begin(), vals.end(), [&](const Value& a, const Value& b) {
            tick();
            return reverse ? compare(b, a) < 0 : compare(a, b) < 0;
        });
    }

    static bool kw_bool(const std::vector<std::pair<std::string, Value>>& kw, const std::string& fn) {
        bool reverse = false;
        for (const auto& [k, v] : kw) {
            if (k == "reverse") reverse = truthy(v);
            else if (k == "key") unsupported(fn + "(key=...)");
            else runtime("TypeError: " + fn + "() got an unexpected keyword argument '" + k + "'");
        }
        return reverse;
    }

    Value call_builtin(const std::string& n, std::vector<Value> args, std::vector<std::pair<std::string, Value>> kw) {
        if (n == "print") {
            std::string sep = " ", end = "\n";
            for (const auto& [k, v] : kw) {
                if (k != "sep" && k != "end") runtime("TypeError: print() got an unexpected keyword argument '" + k + "'");
                if (v.k != Value::K::str && v.k != Value::K::none) runtime("TypeError: " + k + " must be None or a string");
                if (v.k == Value::K::str) (k == "sep" ? sep : end) = v.s;
            }
            for (std::size_t j = 0; j < args.size(); ++j) {
                if (j) out_ += sep;
                out_ += to_str(args[j]);
            }
            out_ += end;
            if (out_.size() > kMaxOutput) runtime("output limit exceeded");
            return Value::none();
        }
        if (n == "sorted") {
            const bool reverse = kw_bool(kw, n);
            arity(n, args, 1, 1);
            auto vals = collect(args[0]);
            sort_values(vals, reverse);
            return Value::list(std::move(vals));
        }
        if (n == "min" || n == "max") {
            no_kwargs(n, kw);
            if (args.empty()) runtime("TypeError: " + n + " expected at least 1 argument, got 0");
            return min_max(n, std::move(args), n == "max");
        }
        no_kwargs(n, kw);
        if (n == "len") {
            arity(n, args, 1, 1);
            const Value& v = args[0];
            if (v.k == Value::K::str) return Value::integer(static_cast<std::int64_t>(v.s.size()));
            if (v.is_seq()) return Value::integer(static_cast<std::int64_t>(v.items->size()));
            if (v.k == Value::K::range) return Value::integer(range_len(v));
            runtime("TypeError: object of type '" + type_name(v) + "' has no len()");
        }
        if (n == "sum") {
            arity(n, args, 1, 2);
            std::int64_t total = args.size() == 2 ? as_int(args[1], "sum() start") : 0;
            iterate(args[0], [&](const Value& v) {
                total = add64(total, as_int(v, "sum()"));
                return true;
            });
            return Value::integer(total);
        }
        if (n == "abs") {
            arity(n, args, 1, 1);
            const std::int64_t v = as_int(args[0], "abs()");
            return Value::integer(v < 0 ? sub64(0, v) : v);
        }
        if (n == "range") {
            arity(n, args, 1, 3);
            Value r;
            r.k = Value::K::range;
            if (args.size() == 1) {
                r.i = 0;
                r.r_stop = as_int(args[0], "range()");
            } else {
                r.i = as_int(args[0], "range()");
                r.r_stop = as_int(args[1], "range()");
                if (args.size() == 3) r.r_step = as_int(args[2], "range()");
            }
            if (r.r_step == 0) runtime("ValueError: range() arg 3 must not be zero");
            return r;
        }
        if (n == "str") {
            arity(n, args, 0, 1);
            return Value::str(args.empty() ? "" : to_str(args[0]));
        }
        if (n == "int") {
            arity(n, args, 0, 1);
            if (args.empty()) return Value::integer(0);
            const Value& v = args[0];
            if (v.is_int()) return Value::integer(v.i);
            if (v.k == Value::K::str) {
                std::string s = v.s;
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
                while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
                bool neg = false;
                std::size_t p = 0;
                if (p < s.size() && (s[p] == '-' || s[p] == '+')) neg = s[p++] == '-';
                if (p == s.size()) runtime("ValueError: invalid literal for int() with base 10: " + py_quote(v.s));
                std::int64_t r = 0;
                for (; p < s.size(); ++p) {
                    if (!std::isdigit(static_cast<unsigned char>(s[p])))
                        runtime("ValueError: invalid literal for int() with base 10: " + py_quote(v.s));
                    r = add64(mul64(r, 10), s[p] - '0');
                }
                return Value::integer(neg ? -r : r);
            }
            runtime("TypeError: int() argument must be a string or a number, not '" + type_name(v) + "'");
        }
        if (n == "bool") {
            arity(n, args, 0, 1);
            return Value::boolean(!args.empty() && truthy(args[0]));
        }
        if (n == "list" || n == "tuple") {
            arity(n, args, 0, 1);
            auto vals = args.empty() ? std::vector<Value>{} : collect(args[0]);
            return n == "list" ? Value::list(std::move(vals)) : Value::tuple(std::move(vals));
        }
        if (n == "reversed") {
            arity(n, args, 1, 1);
            if (args[0].k != Value::K::str && !args[0].is_seq() && args[0].k != Value::K::range)
                runtime("TypeError: '" + type_name(args[0]) + "' object is not reversible");
            auto vals = collect(args[0]);
            std::reverse(vals.begin(), vals.end());
            return Value::list(std::move(vals));
        }
        if (n == "enumerate") {
            arity(n, args, 1, 2);
            std::int64_t start = args.size() == 2 ? as_int(args[1], "enumerate()") : 0;
            std::vector<Value> out;
            iterate(args[0], [&](const Value& v) {
                out.push_back(Value::tuple({Value::integer(start), v}));
                start = add64(start, 1);
                return true;
            });
            return Value::list(std::move(out));
        }
        if (n == "zip") {
            std::vector<std::vector<Value>> cols;
            for (const auto& a : args) cols.push_back(collect(a));
            std::size_t len = cols.empty() ? 0 : SIZE_MAX;
            for (const auto& c : cols) len = std::min(len, c.size());
            std::vector<Value> out;
            for (std::size_t j = 0; j < len; ++j) {
                std::vector<Value> row;
                for (const auto& c : cols) row.push_back(c[j]);
                out.push_back(Value::tuple(std::move(row)));
            }
            return Value::list(std::move(out));
        }
        if (n == "any" || n == "all") {
            arity(n, args, 1, 1);
            const bool want = n == "any";
            bool result = !want;
            iterate(args[0], [&](const Value& v) {
                if (truthy(v) == want) {
                    result = want;
                    return false;
                }
                return true;
            });
            return Value::boolean(result);
        }
        if (n == "divmod") {
            arity(n, args, 2, 2);
            const auto a = as_int(args[0], "divmod()"), b = as_int(args[1], "divmod()");
            return Value::tuple({Value::integer(floordiv64(a, b)), Value::integer(mod64(a, b))});
        }
        runtime("NameError: name '" + n + "' is not defined");
    }

    Value call_method(Value& self, const std::string& m, std::vector<Value> args,
                      std::vector<std::pair<std::string, Value>> kw) {
        if (self.k == Value::K::list) {
            auto& items = *self.items;
            if (m == "sort") {
                const bool reverse = kw_bool(kw, "sort");
                arity(m, args, 0, 0);
                sort_values(items, reverse);
                return Value::none();
            }
            no_kwargs(m, kw);
            if (m == "append") {
                arity(m, args, 1, 1);
                if (items.size() >= kMaxSeq) runtime("MemoryError: sequence too large");
                items.push_back(std::move(args[0]));
                return Value::none();
            }
            if (m == "extend") {
                arity(m, args, 1, 1);
                extend(self, args[0]);
                return Value::none();
            }
            if (m == "pop") {
                arity(m, args, 0, 1);
                if (items.empty()) runtime("IndexError: pop from empty list");
                const auto n = static_cast<std::int64_t>(items.size());
                const auto j = static_cast<std::size_t>(norm_index(args.empty() ? -1 : as_int(args[0], "pop()"), n, "pop"));
                Value v = items[j];
                items.erase(items.begin() + static_cast<std::ptrdiff_t>(j));
                return v;
            }
            if (m == "insert") {
                arity(m, args, 2, 2);
                const auto n = static_cast<std::int64_t>(items.size());
                std::int64_t j = as_int(args[0], "insert()");
                if (j < 0) j = std::max<std::int64_t>(0, j + n);
                j = std::min(j, n);
                items.insert(items.begin() + j, std::move(args[1]));
                return Value::none();
            }
            if (m == "reverse") {
                arity(m, args, 0, 0);
                std::reverse(items.begin(), items.end());
                return Value::none();
            }
            if (m == "index" || m == "count") {
                arity(m, args, 1, 1);
                std::int64_t count = 0;
                for (std::size_t j = 0; j < items.size(); ++j) {
                    tick();
                    if (equal(items[j], args[0])) {
                        if (m == "index") return Value::integer(static_cast<std::int64_t>(j));
                        ++count;
                    }
                }
                if (m == "index") runtime("ValueError: " + repr(args[0]) + " is not in list");
                return Value::integer(count);
            }
            if (m == "copy") {
                arity(m, args, 0, 0);
                return Value::list(items);
            }
            runtime("AttributeError: 'list' object has no attribute '" + m + "'");
        }
        no_kwargs(m, kw);
        if (self.k == Value::K::str) {
            const std::string& s = self.s;
            auto need_str = [&](const Value& v) -> const std::string& {
                if (v.k != Value::K::str) runtime("TypeError: must be str, not " + type_name(v));
                return v.s;
            };
            if (m == "upper" || m == "lower") {
                arity(m, args, 0, 0);
                std::string out = s;
                for (auto& c : out) c = static_cast<char>(m == "upper" ? std::toupper(static_cast<unsigned char>(c))
                                                                       : std::tolower(static_cast<unsigned char>(c)));
                return Value::str(out);
            }
            if (m == "strip") {
                arity(m, args, 0, 0);
                std::size_t a = 0, b = s.size();
                while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
                while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
                return Value::str(s.substr(a, b - a));
            }
            if (m == "join") {
                arity(m, args, 1, 1);
                std::string out;
                bool first = true;
                iterate(args[0], [&](const Value& v) {
                    if (v.k != Value::K::str) runtime("TypeError: sequence item: expected str instance, " + type_name(v) + " found");
                    if (!first) out += s;
                    first = false;
                    out += v.s;
                    return true;
                });
                return Value::str(out);
            }
            if (m == "split") {
                arity(m, args, 0, 1);
                std::vector<Value> parts;
                if (args.empty() || args[0].k == Value::K::none) {
                    std::size_t j = 0;
                    while (j < s.size()) {
                        while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
                        if (j >= s.size()) break;
                        std::size_t k = j;
                        while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
                        parts.push_back(Value::str(s.substr(j, k - j)));
                        j = k;
                    }
                } else {
                    const std::string& sep = need_str(args[0]);
                    if (sep.empty()) runtime("ValueError: empty separator");
                    std::size_t j = 0;
                    for (;;) {
                        const auto k = s.find(sep, j);
                        if (k == std::string::npos) {
                            parts.push_back(Value::str(s.substr(j)));
                            break;
                        }
                        parts.push_back(Value::str(s.substr(j, k - j)));
                        j = k + sep.size();
                    }
                }
                return Value::list(std::move(parts));
            }
            if (m == "replace") {
                arity(m, args, 2, 2);
                const std::string& a = need_str(args[0]);
                const std::string& b = need_str(args[1]);
                if (a.empty()) unsupported("replace with an empty pattern");
                std::string out;
                std::size_t j = 0;
                for (;;) {
                    const auto k = s.find(a, j);
                    if (k == std::string::npos) break;
                    out += s.substr(j, k - j) + b;
                    j = k + a.size();
                }
                out += s.substr(j);
                return Value::str(out);
            }
            if (m == "count" || m == "find") {
                arity(m, args, 1, 1);
                const std::string& a = need_str(args[0]);
                if (m == "find") {
                    const auto k = s.find(a);
                    return Value::integer(k == std::string::npos ? -1 : static_cast<std::int64_t>(k));
                }
                if (a.empty()) return Value::integer(static_cast<std::int64_t>(s.size()) + 1);
                std::int64_t c = 0;
                for (std::size_t j = s.find(a); j != std::string::npos; j = s.find(a, j + a.size())) ++c;
                return Value::integer(c);
            }
            if (m == "startswith" || m == "endswith") {
                arity(m, args, 1, 1);
                const std::string& a = need_str(args[0]);
                const bool r = a.size() <= s.size() &&
                               (m == "startswith" ? s.compare(0, a.size(), a) == 0
                                                  : s.compare(s.size() - a.size(), a.size(), a) == 0);
                return Value::boolean(r);
            }
            if (m == "isdigit") {
                arity(m, args, 0, 0);
                return Value::boolean(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c)) != 0;
                }));
            }
            runtime("AttributeError: 'str' object has no attribute '" + m + "'");
        }
        if (self.k == Value::K::tuple && (m == "index" || m == "count")) {
            Value as_list = Value::list(*self.items);
            return call_method(as_list, m, std::move(args), {});
        }
        runtime("AttributeError: '" + type_name(self) + "' object has no attribute '" + m + "'");
    }
};

}  // namespace

std::string code_run(std::string_view code, std::size_t step_budget) {
    Parser parser(tokenize(code));
    const Block prog = parser.program();
    Interp interp(step_budget);
    return interp.run(prog);
}

}  // namespace when2tool::toolkit
