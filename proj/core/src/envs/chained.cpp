#include "envs/envs.hpp"

#include "when2tool/toolkit/arith.hpp"
#include "when2tool/toolkit/knowledge.hpp"
#include "when2tool/toolkit/pyinterp.hpp"

#include <set>

namespace when2tool::envs {

using namespace when2tool::toolkit;

namespace {

std::string n2s(long long v) { return std::to_string(v); }

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
    for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
    return s;
}

// ---------------------------------------------------------------- calculator

struct Hop {
    std::string shown;  // with x / y
    std::string expr;   // with {prev}
};

Draft chained_calc_draft(const std::string& first, const Hop& second, const Hop& third) {
    const std::string x = render_rational(calc_evaluate(first));
    const std::string y = render_rational(calc_evaluate(replace_all(second.expr, "{prev}", x)));
    const std::string z = render_rational(calc_evaluate(replace_all(third.expr, "{prev}", y)));
    Draft d;
    d.prompt = "First compute x = " + first + ". Then compute y = " + second.shown + ". Finally compute z = " + third.shown +
               ". Return z.";
    d.answer = ans_int(z);
    d.solution.push_back(step("evaluate_expression", {{"expr", first}}, StepCheck::value, x));
    d.solution.push_back(step("evaluate_expression", {{"expr", second.expr}}, StepCheck::value, y));
    d.solution.push_back(step("evaluate_expression", {{"expr", third.expr}}, StepCheck::value, z));
    return d;
}

/// One follow-up hop on `var` whose current value is `cur`; keeps the value non-negative.
Hop random_hop(Rng& r, const std::string& var, const BigInt& cur, long long lo, long long hi, bool allow_mul) {
    const long long c = r.uniform(lo, hi);
    const int kind = r.uniform_int(0, allow_mul ? 3 : 2);
    if (kind == 0) return {var + " + " + n2s(c), "{prev} + " + n2s(c)};
    if (kind == 1 && cur >= c) return {var + " - " + n2s(c), "{prev} - " + n2s(c)};
    if (kind == 2) return {var + " mod " + n2s(c), "{prev} mod " + n2s(c)};
    if (kind == 3) return {var + " × " + n2s(c), "{prev} × " + n2s(c)};
    return {var + " + " + n2s(c), "{prev} + " + n2s(c)};
}

BigInt eval_int(const std::string& expr) { return numerator(calc_evaluate(expr)); }

Draft random_chained_calc(Rng& r, long long lo, long long hi, long long hop_lo, long long hop_hi, bool allow_mul) {
    long long a = r.uniform(lo, hi), b = r.uniform(lo, hi);
    if (a < b) std::swap(a, b);
    const std::string first = n2s(a) + (r.bernoulli(0.5) ? " - " : " + ") + n2s(b);
    const BigInt x = eval_int(first);
    const Hop second = random_hop(r, "x", x, hop_lo, hop_hi, allow_mul);
    const BigInt y = eval_int(replace_all(second.expr, "{prev}", x.str()));
    const Hop third = random_hop(r, "y", y, hop_lo, hop_hi, allow_mul);
    return chained_calc_draft(first, second, third);
}

// ---------------------------------------------------------------- retriever

Draft chain_retriever_draft(std::string prompt, const std::vector<std::array<std::string, 2>>& hops,  // {query, answer}
                            std::vector<Document> target_docs, std::vector<Document> distractors, Rng& rng) {
    std::vector<Document> docs = target_docs;
    for (auto& d : distractors) docs.push_back(std::move(d));
    std::set<long long> used;
    for (auto& d : docs) {
        long long v;
        do v = rng.uniform(100, 999);
        while (!used.insert(v).second);
        d.doc_id = "doc-" + n2s(v);
    }
    std::vector<std::string> target_ids;
    for (std::size_t i = 0; i < target_docs.size(); ++i) target_ids.push_back(docs[i].doc_id);
    rng.shuffle(docs);

    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_str(hops.back()[1]);
    for (std::size_t h = 0; h < hops.size(); ++h) {
        const std::string& query = hops[h][0];
        const std::string resolved = h == 0 ? query : replace_all(query, "{prev}", hops[h - 1][1]);
        const auto hits = corpus_search(resolved, 3, docs);
        if (hits.empty() || hits.front().doc_id != target_ids[h]) throw std::logic_error("chained query does not rank its target first");
        d.solution.push_back(step("search_corpus", {{"query", query}, {"top_k", 3}}, StepCheck::top_hit, target_ids[h]));
        d.solution.push_back(step("read_doc", {{"doc_id", target_ids[h]}}, StepCheck::contains, hops[h][1]));
    }
    d.env_state["corpus"] = docs;
    return d;
}

struct AttrHop {
    const char* label;   // shown in the prompt
    const char* title;   // doc title prefix, followed by the capital
    std::string CountryFact::*field;
};

const std::vector<AttrHop>& attr_hops() {
    static const std::vector<AttrHop> v{
        {"the currency used in", "Currency used in", &CountryFact::currency},
        {"the official language spoken in", "Language spoken in", &CountryFact::language},
        {"the continent of", "Continent of", &CountryFact::continent},
    };
    return v;
}

Document location_doc(const ChainSeed& s) { return {"", "Location of " + s.landmark, s.landmark + " is located in " + s.country + "."}; }
Document capital_doc(const CountryFact& c) { return {"", "Capital of " + c.country, "The capital of " + c.country + " is " + c.capital + "."}; }
Document attr_doc(const CountryFact& c, const AttrHop& a) {
    return {"", std::string(a.title) + " " + c.capital, std::string(a.title) + " " + c.capital + ": " + c.*a.field + "."};
}

const CountryFact& country_of(const std::vector<CountryFact>& cs, const std::string& name) {
    for (const auto& c : cs) {
        if (c.country == name) return c;
    }
    throw std::logic_error("unknown country " + name);
}

Draft landmark_chain(Rng& r, const std::vector<ChainSeed>& seeds, const std::vector<CountryFact>& countries) {
    const ChainSeed& seed = r.pick(seeds);
    const CountryFact& c = country_of(countries, seed.country);
    const AttrHop& a = r.pick(attr_hops());
    std::vector<Document> targets{location_doc(seed), capital_doc(c), attr_doc(c, a)};
    std::vector<Document> distractors;
    std::vector<std::size_t> order(seeds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    r.shuffle(order);
    std::set<std::string> countries_used{c.country};
    for (std::size_t i : order) {
        if (distractors.size() >= 7) break;
        const ChainSeed& o = seeds[i];
        if (o.landmark == seed.landmark) continue;
        if (distractors.size() < 3) {
            distractors.push_back(location_doc(o));
        } else if (countries_used.insert(o.country).second) {
            const CountryFact& oc = country_of(countries, o.country);
            distractors.push_back(distractors.size() % 2 ? capital_doc(oc) : attr_doc(oc, a));
        }
    }
    std::string prompt = "First find the country x where " + seed.landmark + " is located. Then find the capital y of x. Finally find " +
                         std::string(a.label) + " y (call it z). Return z.";
    return chain_retriever_draft(std::move(prompt),
                                 {{{"Location of " + seed.landmark, c.country}},
                                  {{"Capital of {prev}", c.capital}},
                                  {{std::string(a.title) + " {prev}", c.*a.field}}},
                                 std::move(targets), std::move(distractors), r);
}

const std::vector<std::string>& emblem_colors() {
    static const std::vector<std::string> v{"reddish-brown", "slate grey",   "deep violet", "amber",      "teal",
                                            "crimson",       "pale gold",    "olive green", "cobalt blue", "ivory",
                                            "burnt orange",  "silver-white", "jade green",  "charcoal",   "rose pink"};
    return v;
}

struct FictionalChain {
    std::string town, founder, guild, color;
};

FictionalChain fictional_chain(Rng& r) {
    return {fictional_word(r, 3), fictional_word(r, 2) + " " + fictional_word(r, 2), fictional_word(r, 2) + " Guild",
            r.pick(emblem_colors())};
}

std::array<Document, 3> fictional_docs(const FictionalChain& f) {
    return {Document{"", "History of " + f.town, f.town + " was founded by " + f.founder + " after the river trade opened."},
            Document{"", "Biography of " + f.founder, f.founder + " was a lifelong member of the " + f.guild + "."},
            Document{"", "Emblem of the " + f.guild, "The emblem of the " + f.guild + " is " + f.color + "."}};
}

// ---------------------------------------------------------------- code

std::string show(const std::string& code, const char* var) { return replace_all(code, "{prev}", var); }

Draft chained_code_draft(const std::string& c1, const std::string& c2, const std::string& c3) {
    const std::string x = code_run(c1);
    const std::string y = code_run(replace_all(c2, "{prev}", x));
    const std::string z = code_run(replace_all(c3, "{prev}", y));
    for (const auto& o : {x, y, z}) {
        if (o.empty() || o.find('\n') != std::string::npos) throw std::logic_error("chained code hop must print one line");
    }
    const bool multi = (c1 + c2 + c3).find('\n') != std::string::npos;
    Draft d;
    if (!multi) {
        d.prompt = "First run " + c1 + " and call the output x. Then run " + show(c2, "x") + " and call the output y. Finally run " +
                   show(c3, "y") + " and call the output z. Return z.";
    } else {
        d.prompt = "Run the following three Python programs in order.\nProgram 1 (its output is x):\n" + c1 +
                   "\nProgram 2 (uses x; its output is y):\n" + show(c2, "x") + "\nProgram 3 (uses y; its output is z):\n" +
                   show(c3, "y") + "\nReturn z.";
    }
    d.answer = ans_int(z);
    d.solution.push_back(step("run_code", {{"code", c1}}, StepCheck::value, x));
    d.solution.push_back(step("run_code", {{"code", c2}}, StepCheck::value, y));
    d.solution.push_back(step("run_code", {{"code", c3}}, StepCheck::value, z));
    return d;
}

}  // namespace

// ---------------------------------------------------------------- ChainedCalculator

Draft gen_chained_calculator(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: return random_chained_calc(r, 5, 50, 2, 20, false);
        case Difficulty::medium: return random_chained_calc(r, 100, 999, 10, 99, true);
        case Difficulty::hard: return random_chained_calc(r, 1'000'000'000LL, 999'999'999'999LL, 1'000'000LL, 99'999'999'999LL, false);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- ChainedRetriever

Draft gen_chained_retriever(GenContext& ctx) {
    Rng& r = ctx.rng;
    if (ctx.difficulty == Difficulty::easy) return landmark_chain(r, landmarks_well_known(), countries_well_known());
    if (ctx.difficulty == Difficulty::medium) return landmark_chain(r, landmarks_less_known(), countries_less_known());

    const FictionalChain f = fictional_chain(r);
    const auto t = fictional_docs(f);
    std::vector<Document> distractors;
    std::set<std::string> names{f.town, f.founder, f.guild};
    while (distractors.size() < 7) {
        FictionalChain o = fictional_chain(r);
        if (o.color == f.color || names.count(o.town) || names.count(o.founder) || names.count(o.guild)) continue;
        names.insert({o.town, o.founder, o.guild});
        const auto od = fictional_docs(o);
        distractors.push_back(od[distractors.size() % 3]);
    }
    std::string prompt = "First find the founder x of the town of " + f.town + ". Then find the guild y that x belonged to. "
                         "Finally find the emblem color z of y. Return z.";
    return chain_retriever_draft(std::move(prompt),
                                 {{{"History of " + f.town, f.founder}}, {{"Biography of {prev}", f.guild}}, {{"Emblem of the {prev}", f.color}}},
                                 {t[0], t[1], t[2]}, std::move(distractors), r);
}

// ---------------------------------------------------------------- ChainedCodeExecutor

Draft gen_chained_code(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: {
            const long long a = r.uniform(2, 30), b = r.uniform(2, 30), c = r.uniform(2, 5), e = r.uniform(1, 20);
            return chained_code_draft("print(" + n2s(a) + "+" + n2s(b) + ")", "print({prev}*" + n2s(c) + ")",
                                      "print({prev}-" + n2s(e) + ")");
        }
        case Difficulty::medium: {
            const long long n = r.uniform(5, 20), k = r.uniform(2, 7), m = r.uniform(2, 9);
            return chained_code_draft(
                "print(sum(range(1, " + n2s(n) + ")))",
                "print(len([i for i in range({prev}) if i % " + n2s(k) + " == 0]))",
                "total = 0\nfor i in range({prev}):\n    total += i * " + n2s(m) + "\nprint(total)");
        }
        case Difficulty::hard: {
            static const std::vector<std::vector<long long>> coin_sets{{1, 5, 10}, {1, 3, 7}, {1, 4, 9}, {1, 6, 11}, {1, 5, 12}};
            const auto& coins = r.pick(coin_sets);
            std::vector<long long> arr;
            for (int i = 0; i < r.uniform_int(10, 14); ++i) arr.push_back(r.uniform(1, 60));
            std::string tail = render_int_list(arr);
            tail = tail.substr(tail.find(',') + 2);  // drop the first element
            return chained_code_draft(
                "coins = " + render_int_list(coins) + "\namount = " + n2s(r.uniform(20, 99)) +
                    "\ndp = [0] + [amount + 1] * amount\nfor v in range(1, amount + 1):\n    for c in coins:\n        if c <= v:\n            dp[v] = min(dp[v], dp[v - c] + 1)\nprint(dp[amount])",
                "a, b = 1, 1\ntotal = 0\nfor _ in range(2 * {prev}):\n    if a % 2 == 0:\n        total += a\n    a, b = b, a + b\nprint(total)",
                "arr = [{prev} % 50, " + tail +
                    "\nbest = [1] * len(arr)\nfor i in range(len(arr)):\n    for j in range(i):\n        if arr[j] < arr[i]:\n            best[i] = max(best[i], best[j] + 1)\nprint(max(best))");
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- fixtures

std::vector<Fixture> fixtures_chained(std::string_view env) {
    std::vector<Fixture> out;
    if (env == "ChainedCalculatorEnv") {
        out.push_back({Difficulty::easy, chained_calc_draft("40 - 10", {"x + 5", "{prev} + 5"}, {"y - 19", "{prev} - 19"})});
        out.push_back({Difficulty::hard, chained_calc_draft("808522010435 - 8197325888", {"x + 17046220916", "{prev} + 17046220916"},
                                                            {"y mod 2343374", "{prev} mod 2343374"})});
    } else if (env == "ChainedCodeExecutorEnv") {
        out.push_back({Difficulty::easy, chained_code_draft("print(17+6)", "print({prev}*3)", "print({prev}-7)")});
    }
    return out;
}

}  // namespace when2tool::envs
