#include "when2tool/toolkit/regex.hpp"

#include "when2tool/toolkit/arith.hpp"

#include <cctype>
#include <climits>
#include <map>
#include <type_traits>

namespace when2tool::toolkit {

namespace {

// Non-owning callable reference; continuations live on the caller's stack.
class Cont {
public:
    template <typename F>
    Cont(const F& f) : obj_(&f), call_([](const void* o, std::size_t j) { return (*static_cast<const F*>(o))(j); }) {}
    bool operator()(std::size_t j) const { return call_(obj_, j); }

private:
    const void* obj_;
    bool (*call_)(const void*, std::size_t);
};

enum class Kind {
    empty, literal, any, cls, seq, alt, repeat, group, lookahead, neg_lookahead, lookbehind, neg_lookbehind,
    backref, bol, eol, str_start, str_end, word_b, not_word_b
};

struct ClassItem {
    enum class Type { range, digit, not_digit, word, not_word, space, not_space } type = Type::range;
    unsigned char lo = 0, hi = 0;
};

struct Node {
    Kind kind = Kind::empty;
    char ch = 0;
    std::vector<ClassItem> items;
    bool negated = false;
    std::vector<std::unique_ptr<Node>> kids;
    int min = 0, max = 0;  // repeat; max < 0 means unbounded
    bool lazy = false;
    int group = 0;  // capture index (group) or backref target
    int width = 0;  // lookbehind width
};

bool is_word(unsigned char c) { return std::isalnum(c) || c == '_'; }
bool is_space(unsigned char c) { return c == ' ' || (c >= '\t' && c <= '\r'); }

bool class_item_matches(const ClassItem& it, unsigned char c) {
    switch (it.type) {
        case ClassItem::Type::range: return c >= it.lo && c <= it.hi;
        case ClassItem::Type::digit: return std::isdigit(c) != 0;
        case ClassItem::Type::not_digit: return std::isdigit(c) == 0;
        case ClassItem::Type::word: return is_word(c);
        case ClassItem::Type::not_word: return !is_word(c);
        case ClassItem::Type::space: return is_space(c);
        case ClassItem::Type::not_space: return !is_space(c);
    }
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view p) : p_(p) {}

    std::unique_ptr<Node> parse() {
        auto n = alternation();
        if (i_ < p_.size()) fail(p_[i_] == ')' ? "unbalanced parenthesis" : "unexpected character");
        for (int g : backrefs_) {
            if (g > groups_) fail("invalid group reference");
        }
        return n;
    }

    int groups() const { return groups_; }
    std::map<std::string, int> names() const { return names_; }

private:
    std::string_view p_;
    std::size_t i_ = 0;
    int groups_ = 0;
    std::map<std::string, int> names_;
    std::vector<int> backrefs_;

    [[noreturn]] void fail(const std::string& what) const {
        throw ToolError("regex error: " + what + " at position " + std::to_string(i_));
    }

    bool at_end() const { return i_ >= p_.size(); }
    char peek() const { return p_[i_]; }

    static std::unique_ptr<Node> make(Kind k) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        return n;
    }

    std::unique_ptr<Node> alternation() {
        auto first = sequence();
        if (at_end() || peek() != '|') return first;
        auto alt = make(Kind::alt);
        alt->kids.push_back(std::move(first));
        while (!at_end() && peek() == '|') {
            ++i_;
            alt->kids.push_back(sequence());
        }
        return alt;
    }

    std::unique_ptr<Node> sequence() {
        auto seq = make(Kind::seq);
        while (!at_end() && peek() != '|' && peek() != ')') {
            auto atom_node = atom();
            seq->kids.push_back(quantified(std::move(atom_node)));
        }
        return seq;
    }

    bool parse_int(int& out) {
        std::size_t j = i_;
        long v = 0;
        while (j < p_.size() && std::isdigit(static_cast<unsigned char>(p_[j]))) {
            v = v * 10 + (p_[j] - '0');
            if (v > 100000) fail("repetition count too large");
            ++j;
        }
        if (j == i_) return false;
        out = static_cast<int>(v);
        i_ = j;
        return true;
    }

    std::unique_ptr<Node> quantified(std::unique_ptr<Node> atom_node) {
        if (at_end()) return atom_node;
        int mn = 0, mx = 0;
        const char c = peek();
        if (c == '*') { mn = 0; mx = -1; ++i_; }
        else if (c == '+') { mn = 1; mx = -1; ++i_; }
        else if (c == '?') { mn = 0; mx = 1; ++i_; }
        else if (c == '{') {
            const std::size_t save = i_;
            ++i_;
            int a = 0, b = 0;
            const bool has_a = parse_int(a);
            bool ok = true;
            if (!at_end() && peek() == ',') {
                ++i_;
                const bool has_b = parse_int(b);
                mn = has_a ? a : 0;
                mx = has_b ? b : -1;
            } else if (has_a) {
                mn = mx = a;
            } else {
                ok = false;
            }
            if (ok && !at_end() && peek() == '}') {
                ++i_;
            } else {
                i_ = save;  // literal '{'
                return atom_node;
            }
            if (mx >= 0 && mn > mx) fail("min repeat greater than max repeat");
        } else {
            return atom_node;
        }
        switch (atom_node->kind) {
            case Kind::bol: case Kind::eol: case Kind::str_start: case Kind::str_end:
            case Kind::word_b: case Kind::not_word_b: case Kind::repeat:
                fail("nothing to repeat");
            default: break;
        }
        auto rep = make(Kind::repeat);
        rep->min = mn;
        rep->max = mx;
        if (!at_end() && peek() == '?') {
            rep->lazy = true;
            ++i_;
        } else if (!at_end() && peek() == '+') {
            fail("possessive quantifiers are not supported");
        }
        rep->kids.push_back(std::move(atom_node));
        return rep;
    }

    std::unique_ptr<Node> literal(char c) {
        auto n = make(Kind::literal);
        n->ch = c;
        return n;
    }

    std::unique_ptr<Node> class_escape(ClassItem::Type t) {
        auto n = make(Kind::cls);
        ClassItem it;
        it.type = t;
        n->items.push_back(it);
        return n;
    }

    char simple_escape(char e) {
        switch (e) {
            case 'n': return '\n';
            case 't': return '\t';
            case 'r': return '\r';
            case 'f': return '\f';
            case 'v': return '\v';
            case '0': return '\0';
            default: break;
        }
        if (std::isalnum(static_cast<unsigned char>(e))) fail(std::string("bad escape \\") + e);
        return e;
    }

    std::unique_ptr<Node> atom() {
        const char c = p_[i_++];
        switch (c) {
            case '.': return make(Kind::any);
            case '^': return make(Kind::bol);
            case '$': return make(Kind::eol);
            case '[': return char_class();
            case '(': return group();
            case '*': case '+': case '?': fail("nothing to repeat");
            case '\\': return escape();
            default: return literal(c);
        }
    }

    std::unique_ptr<Node> escape() {
        if (at_end()) fail("bad escape (end of pattern)");
        const char e = p_[i_++];
        switch (e) {
            case 'd': return class_escape(ClassItem::Type::digit);
            case 'D': return class_escape(ClassItem::Type::not_digit);
            case 'w': return class_escape(ClassItem::Type::word);
            case 'W': return class_escape(ClassItem::Type::not_word);
            case 's': return class_escape(ClassItem::Type::space);
            case 'S': return class_escape(ClassItem::Type::not_space);
            case 'b': return make(Kind::word_b);
            case 'B': return make(Kind::not_word_b);
            case 'A': return make(Kind::str_start);
            case 'Z': return make(Kind::str_end);
            default: break;
        }
        if (e >= '1' && e <= '9') {
            int g = e - '0';
            if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) g = g * 10 + (p_[i_++] - '0');
            auto n = make(Kind::backref);
            n->group = g;
            backrefs_.push_back(g);
            return n;
        }
        return literal(simple_escape(e));
    }

    std::unique_ptr<Node> char_class() {
        auto n = make(Kind::cls);
        if (!at_end() && peek() == '^') {
            n->negated = true;
            ++i_;
        }
        bool first = true;
        for (;;) {
            if (at_end()) fail("unterminated character set");
            char c = p_[i_];
            if (c == ']' && !first) {
                ++i_;
                break;
            }
            first = false;
            ++i_;
            ClassItem it;
            bool single = true;
            if (c == '\\') {
                if (at_end()) fail("bad escape in class");
                const char e = p_[i_++];
                single = false;
                switch (e) {
                    case 'd': it.type = ClassItem::Type::digit; break;
                    case 'D': it.type = ClassItem::Type::not_digit; break;
                    case 'w': it.type = ClassItem::Type::word; break;
                    case 'W': it.type = ClassItem::Type::not_word; break;
                    case 's': it.type = ClassItem::Type::space; break;
                    case 'S': it.type = ClassItem::Type::not_space; break;
                    default:
                        single = true;
                        c = e == 'b' ? '\b' : simple_escape(e);
                }
                if (!single) {
                    n->items.push_back(it);
                    continue;
                }
            }
            // Range a-z (a trailing '-' is literal).
            if (i_ + 1 < p_.size() && p_[i_] == '-' && p_[i_ + 1] != ']') {
                ++i_;
                char hi = p_[i_++];
                if (hi == '\\') {
                    if (at_end()) fail("bad escape in class");
                    hi = simple_escape(p_[i_++]);
                }
                if (static_cast<unsigned char>(hi) < static_cast<unsigned char>(c)) fail("bad character range");
                it.lo = static_cast<unsigned char>(c);
                it.hi = static_cast<unsigned char>(hi);
            } else {
                it.lo = it.hi = static_cast<unsigned char>(c);
            }
            n->items.push_back(it);
        }
        return n;
    }

    std::unique_ptr<Node> group() {
        Kind kind = Kind::group;
        int index = 0;
        if (!at_end() && peek() == '?') {
            ++i_;
            if (at_end()) fail("unexpected end of pattern");
            const char t = p_[i_++];
            if (t == ':') {
                kind = Kind::seq;  // non-capturing: parsed body returned directly
            } else if (t == '=') {
                kind = Kind::lookahead;
            } else if (t == '!') {
                kind = Kind::neg_lookahead;
            } else if (t == '<' && !at_end() && (peek() == '=' || peek() == '!')) {
                kind = p_[i_++] == '=' ? Kind::lookbehind : Kind::neg_lookbehind;
            } else if (t == 'P' && !at_end() && peek() == '<') {
                ++i_;
                const auto close = p_.find('>', i_);
                if (close == std::string_view::npos) fail("missing >");
                std::string name(p_.substr(i_, close - i_));
                if (name.empty()) fail("missing group name");
                i_ = close + 1;
                index = ++groups_;
                if (names_.count(name)) fail("redefinition of group name");
                names_[name] = index;
            } else if (t == 'P' && !at_end() && peek() == '=') {
                ++i_;
                const auto close = p_.find(')', i_);
                if (close == std::string_view::npos) fail("missing )");
                const std::string name(p_.substr(i_, close - i_));
                const auto it = names_.find(name);
                if (it == names_.end()) fail("unknown group name");
                i_ = close + 1;
                auto n = make(Kind::backref);
                n->group = it->second;
                return n;
            } else {
                fail(std::string("unsupported group construct (?") + t);
            }
        } else {
            index = ++groups_;
        }
        auto body = alternation();
        if (at_end() || peek() != ')') fail("missing ), unterminated subpattern");
        ++i_;
        if (kind == Kind::seq) return body;
        auto n = make(kind);
        n->group = index;
        if (kind == Kind::lookbehind || kind == Kind::neg_lookbehind) {
            const int w = fixed_width(*body);
            if (w < 0) fail("look-behind requires fixed-width pattern");
            n->width = w;
        }
        n->kids.push_back(std::move(body));
        return n;
    }

    static int fixed_width(const Node& n) {
        switch (n.kind) {
            case Kind::literal: case Kind::any: case Kind::cls: return 1;
            case Kind::empty: case Kind::bol: case Kind::eol: case Kind::str_start: case Kind::str_end:
            case Kind::word_b: case Kind::not_word_b: case Kind::lookahead: case Kind::neg_lookahead:
            case Kind::lookbehind: case Kind::neg_lookbehind:
                return 0;
            case Kind::seq: {
                int s = 0;
                for (const auto& k : n.kids) {
                    const int w = fixed_width(*k);
                    if (w < 0) return -1;
                    s += w;
                }
                return s;
            }
            case Kind::alt: {
                int w0 = -2;
                for (const auto& k : n.kids) {
                    const int w = fixed_width(*k);
                    if (w < 0 || (w0 != -2 && w != w0)) return -1;
                    w0 = w;
                }
                return w0 < 0 ? 0 : w0;
            }
            case Kind::repeat: {
                if (n.max != n.min) return -1;
                const int w = fixed_width(*n.kids[0]);
                return w < 0 ? -1 : w * n.min;
            }
            case Kind::group: return fixed_width(*n.kids[0]);
            case Kind::backref: return -1;
        }
        return -1;
    }
};

using Caps = std::vector<std::optional<std::pair<std::size_t, std::size_t>>>;

class Matcher {
public:
    Matcher(std::string_view text, std::size_t groups, std::size_t budget)
        : t_(text), caps_(groups + 1), budget_(budget) {}

    Caps& caps() { return caps_; }

    bool run(const Node& n, std::size_t i, Cont k) {
        if (++steps_ > budget_) throw ToolError("regex step budget exceeded");
        switch (n.kind) {
            case Kind::empty: return k(i);
            case Kind::literal: return i < t_.size() && t_[i] == n.ch && k(i + 1);
            case Kind::any: return i < t_.size() && t_[i] != '\n' && k(i + 1);
            case Kind::cls: {
                if (i >= t_.size()) return false;
                const auto c = static_cast<unsigned char>(t_[i]);
                bool hit = false;
                for (const auto& it : n.items) {
                    if (class_item_matches(it, c)) {
                        hit = true;
                        break;
                    }
                }
                return hit != n.negated && k(i + 1);
            }
            case Kind::seq: return seq(n, 0, i, k);
            case Kind::alt:
                for (const auto& kid : n.kids) {
                    if (run(*kid, i, k)) return true;
                }
                return false;
            case Kind::repeat: return repeat(n, 0, i, k);
            case Kind::group: {
                const auto g = static_cast<std::size_t>(n.group);
                auto after = [&](std::size_t j) {
                    const auto saved = caps_[g];
                    caps_[g] = std::make_pair(i, j);
                    if (k(j)) return true;
                    caps_[g] = saved;
                    return false;
                };
                return run(*n.kids[0], i, after);
            }
            case Kind::lookahead: {
                const Caps saved = caps_;
                auto accept = [](std::size_t) { return true; };
                if (!run(*n.kids[0], i, accept)) {
                    caps_ = saved;
                    return false;
                }
                if (k(i)) return true;
                caps_ = saved;
                return false;
            }
            case Kind::neg_lookahead: {
                const Caps saved = caps_;
                auto accept = [](std::size_t) { return true; };
                const bool hit = run(*n.kids[0], i, accept);
                caps_ = saved;
                return !hit && k(i);
            }
            case Kind::lookbehind:
            case Kind::neg_lookbehind: {
                const bool positive = n.kind == Kind::lookbehind;
                const Caps saved = caps_;
                bool hit = false;
                if (i >= static_cast<std::size_t>(n.width)) {
                    auto exact = [&](std::size_t j) { return j == i; };
                    hit = run(*n.kids[0], i - static_cast<std::size_t>(n.width), exact);
                }
                if (!positive) caps_ = saved;
                if (hit != positive) {
                    caps_ = saved;
                    return false;
                }
                if (k(i)) return true;
                caps_ = saved;
                return false;
            }
            case Kind::backref: {
                const auto& c = caps_[static_cast<std::size_t>(n.group)];
                if (!c) return false;
                const std::size_t len = c->second - c->first;
                if (i + len > t_.size() || t_.compare(i, len, t_.substr(c->first, len)) != 0) return false;
                return k(i + len);
            }
            case Kind::bol:
            case Kind::str_start: return i == 0 && k(i);
            case Kind::eol: return (i == t_.size() || (i + 1 == t_.size() && t_[i] == '\n')) && k(i);
            case Kind::str_end: return i == t_.size() && k(i);
            case Kind::word_b:
            case Kind::not_word_b: {
                const bool before = i > 0 && is_word(static_cast<unsigned char>(t_[i - 1]));
                const bool after = i < t_.size() && is_word(static_cast<unsigned char>(t_[i]));
                const bool boundary = before != after;
                return boundary == (n.kind == Kind::word_b) && k(i);
            }
        }
        return false;
    }

private:
    std::string_view t_;
    Caps caps_;
    std::size_t budget_;
    std::size_t steps_ = 0;

    bool seq(const Node& n, std::size_t idx, std::size_t i, Cont k) {
        if (idx == n.kids.size()) return k(i);
        auto next = [&](std::size_t j) { return seq(n, idx + 1, j, k); };
        return run(*n.kids[idx], i, next);
    }

    // An iteration that consumes nothing once the minimum is met ends the loop.
    bool repeat(const Node& n, int count, std::size_t i, Cont k) {
        if (++steps_ > budget_) throw ToolError("regex step budget exceeded");
        const bool can_more = n.max < 0 || count < n.max;
        auto more = [&]() {
            if (!can_more) return false;
            auto after = [&](std::size_t j) {
                if (j == i && count >= n.min) return false;
                return repeat(n, count + 1, j, k);
            };
            return run(*n.kids[0], i, after);
        };
        if (count < n.min) return more();
        if (n.lazy) return k(i) || more();
        return more() || k(i);
    }
};

}  // namespace

std::optional<std::string> RegexMatch::group(std::string_view text, std::size_t i) const {
    if (i >= groups.size() || !groups[i]) return std::nullopt;
    return std::string(text.substr(groups[i]->first, groups[i]->second - groups[i]->first));
}

struct Regex::Impl {
    std::unique_ptr<Node> root;
    std::size_t groups = 0;
    std::map<std::string, int> names;
    std::size_t budget = 0;
};

Regex::Regex(std::string_view pattern, std::size_t step_budget) : impl_(std::make_unique<Impl>()) {
    Parser p(pattern);
    impl_->root = p.parse();
    impl_->groups = static_cast<std::size_t>(p.groups());
    impl_->names = p.names();
    impl_->budget = step_budget;
}

Regex::~Regex() = default;
Regex::Regex(Regex&&) noexcept = default;
Regex& Regex::operator=(Regex&&) noexcept = default;

std::size_t Regex::group_count() const { return impl_->groups; }

std::optional<RegexMatch> Regex::match_at(std::string_view text, std::size_t pos) const {
    Matcher m(text, impl_->groups, impl_->budget);
    std::size_t end = 0;
    auto accept = [&](std::size_t j) {
        end = j;
        return true;
    };
    if (!m.run(*impl_->root, pos, accept)) return std::nullopt;
    RegexMatch r{pos, end, m.caps()};
    r.groups[0] = std::make_pair(pos, end);
    return r;
}

std::optional<RegexMatch> Regex::search(std::string_view text, std::size_t pos, bool must_advance) const {
    Matcher m(text, impl_->groups, impl_->budget);
    for (std::size_t s = pos; s <= text.size(); ++s) {
        std::fill(m.caps().begin(), m.caps().end(), std::nullopt);
        std::size_t end = 0;
        const bool need_progress = must_advance && s == pos;
        auto accept = [&](std::size_t j) {
            if (need_progress && j == s) return false;
            end = j;
            return true;
        };
        if (m.run(*impl_->root, s, accept)) {
            RegexMatch r{s, end, m.caps()};
            r.groups[0] = std::make_pair(s, end);
            return r;
        }
    }
    return std::nullopt;
}

std::vector<RegexMatch> Regex::finditer(std::string_view text) const {
    std::vector<RegexMatch> out;
    std::size_t pos = 0;
    bool must_advance = false;
    while (pos <= text.size()) {
        auto m = search(text, pos, must_advance);
        if (!m) break;
        must_advance = m->end == m->start;
        pos = m->end;
        out.push_back(std::move(*m));
    }
    return out;
}

PyLiteral regex_findall(std::string_view pattern, std::string_view text) {
    const Regex re(pattern);
    std::vector<PyLiteral> items;
    for (const auto& m : re.finditer(text)) {
        if (re.group_count() == 0) {
            items.push_back(PyLiteral::from_string(*m.group(text, 0)));
        } else if (re.group_count() == 1) {
            items.push_back(PyLiteral::from_string(m.group(text, 1).value_or("")));
        } else {
            std::vector<PyLiteral> tup;
            for (std::size_t g = 1; g <= re.group_count(); ++g) {
                tup.push_back(PyLiteral::from_string(m.group(text, g).value_or("")));
            }
            items.push_back(PyLiteral::tuple_of(std::move(tup)));
        }
    }
    return PyLiteral::list_of(std::move(items));
}

std::optional<std::string> regex_match(std::string_view pattern, std::string_view text) {
    const Regex re(pattern);
    auto m = re.match_at(text, 0);
    if (!m) return std::nullopt;
    return m->group(text, 0);
}

std::optional<std::string> regex_search(std::string_view pattern, std::string_view text) {
    const Regex re(pattern);
    auto m = re.search(text, 0);
    if (!m) return std::nullopt;
    return m->group(text, 0);
}

namespace {

std::string expand_template(std::string_view repl, const RegexMatch& m, std::string_view text, std::size_t groups,
                            const std::map<std::string, int>& names) {
    std::string out;
    auto emit_group = [&](std::size_t g) {
        if (g > groups) throw ToolError("invalid group reference " + std::to_string(g));
        out += m.group(text, g).value_or("");
    };
    for (std::size_t i = 0; i < repl.size(); ++i) {
        const char c = repl[i];
        if (c != '\\') {
            out += c;
            continue;
        }
        if (i + 1 >= repl.size()) throw ToolError("bad escape (end of replacement)");
        const char e = repl[++i];
        if (std::isdigit(static_cast<unsigned char>(e))) {
            std::size_t g = static_cast<std::size_t>(e - '0');
            if (i + 1 < repl.size() && std::isdigit(static_cast<unsigned char>(repl[i + 1]))) {
                g = g * 10 + static_cast<std::size_t>(repl[++i] - '0');
            }
            emit_group(g);
        } else if (e == 'g') {
            if (i + 1 >= repl.size() || repl[i + 1] != '<') throw ToolError("missing < in \\g");
            const auto close = repl.find('>', i + 2);
            if (close == std::string_view::npos) throw ToolError("missing > in \\g<...>");
            const std::string ref(repl.substr(i + 2, close - i - 2));
            i = close;
            if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                emit_group(static_cast<std::size_t>(std::stoul(ref)));
            } else {
                const auto it = names.find(ref);
                if (it == names.end()) throw ToolError("unknown group name " + ref);
                emit_group(static_cast<std::size_t>(it->second));
            }
        } else if (e == 'n') {
            out += '\n';
        } else if (e == 't') {
            out += '\t';
        } else if (e == '\\') {
            out += '\\';
        } else if (std::isalpha(static_cast<unsigned char>(e))) {
            throw ToolError(std::string("bad escape \\") + e + " in replacement");
        } else {
            out += '\\';
            out += e;
        }
    }
    return out;
}

}  // namespace

std::string regex_sub(std::string_view pattern, std::string_view repl, std::string_view text) {
    const Regex re(pattern);
    Parser names_parser(pattern);
    names_parser.parse();
    const auto names = names_parser.names();
    std::string out;
    std::size_t last = 0;
    for (const auto& m : re.finditer(text)) {
        out.append(text.substr(last, m.start - last));
        out += expand_template(repl, m, text, re.group_count(), names);
        last = m.end;
    }
    out.append(text.substr(last));
    return out;
}

std::string regex_op(std::string_view pattern, std::string_view text, std::string_view op, std::string_view repl) {
    if (op == "findall") return py_repr(regex_findall(pattern, text));
    if (op == "match") return regex_match(pattern, text).value_or("None");
    if (op == "search") return regex_search(pattern, text).value_or("None");
    if (op == "sub") return regex_sub(pattern, repl, text);
    throw ToolError("unknown regex operation: " + std::string(op));
}

}  // namespace when2tool::toolkit
