#include "envs/envs.hpp"

#include "when2tool/toolkit/arith.hpp"
#include "when2tool/toolkit/stats.hpp"

#include <numeric>

namespace when2tool::envs {

using namespace when2tool::toolkit;

namespace {

std::string calc_answer(const std::string& expr) { return render_rational(calc_evaluate(expr)); }

Draft calc_draft(const std::string& prompt, const std::string& expr) {
    Draft d;
    d.prompt = prompt;
    d.answer = ans_int(calc_answer(expr));
    d.solution.push_back(step("evaluate_expression", {{"expr", expr}}, StepCheck::value, d.answer.text));
    return d;
}

std::string n2s(long long v) { return std::to_string(v); }

std::vector<Rational> rationals(const std::vector<long long>& xs) {
    return {xs.begin(), xs.end()};
}

json json_list(const std::vector<long long>& xs) { return json(xs); }

std::string ordinal(long long n) {
    const long long m100 = n % 100, m10 = n % 10;
    const char* suf = (m100 >= 11 && m100 <= 13) ? "th" : m10 == 1 ? "st" : m10 == 2 ? "nd" : m10 == 3 ? "rd" : "th";
    return n2s(n) + suf;
}

Draft stat_draft(std::string prompt, StatKind kind, const std::vector<long long>& xs, const std::vector<long long>& ys,
                 long long pct, std::optional<int> round_to) {
    StatRequest r;
    r.kind = kind;
    r.data = rationals(xs);
    r.data_y = rationals(ys);
    r.percentile = pct;
    r.round_to = round_to;
    const DecimalValue v = stats_compute(r);
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = round_to ? ans_dec(v.render(), *round_to) : ans_int(v.render());
    json args{{"data", json_list(xs)}, {"stat_type", std::string(to_string(kind))}};
    if (!ys.empty()) args["data_y"] = json_list(ys);
    if (kind == StatKind::percentile) args["percentile"] = pct;
    if (round_to) args["round_to"] = *round_to;
    d.solution.push_back(step("compute_stat", args, StepCheck::value, d.answer.text));
    return d;
}

std::vector<long long> sample(Rng& rng, int n, long long lo, long long hi) {
    std::vector<long long> v;
    for (int i = 0; i < n; ++i) v.push_back(rng.uniform(lo, hi));
    return v;
}

bool is_integral(const Rational& r) { return denominator(r) == 1; }

Draft comb_draft(std::string prompt, CombOp op, long long n, long long k) {
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_int(comb_compute(op, n, k).str());
    if (op == CombOp::factorial) {
        d.solution.push_back(step("factorial", {{"n", n}}, StepCheck::value, d.answer.text));
    } else {
        d.solution.push_back(step(op == CombOp::combination ? "combination" : "permutation", {{"n", n}, {"k", k}},
                                  StepCheck::value, d.answer.text));
    }
    return d;
}

std::vector<std::vector<long long>> random_matrix(Rng& rng, int n, long long lo, long long hi) {
    std::vector<std::vector<long long>> m(static_cast<std::size_t>(n));
    for (auto& row : m) row = sample(rng, n, lo, hi);
    return m;
}

IntMatrix to_big(const std::vector<std::vector<long long>>& m) {
    IntMatrix out;
    for (const auto& row : m) out.emplace_back(row.begin(), row.end());
    return out;
}

Draft matrix_draft(std::string prompt, bool det, const std::vector<std::vector<long long>>& m) {
    Draft d;
    d.prompt = std::move(prompt);
    const BigInt v = det ? matrix_determinant(to_big(m)) : matrix_trace(to_big(m));
    d.answer = ans_int(v.str());
    d.solution.push_back(step(det ? "matrix_determinant" : "matrix_trace", {{"matrix", json(m)}}, StepCheck::value, d.answer.text));
    return d;
}

Draft prime_check(std::string prompt, long long n) {
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans(AnswerKind::boolean, is_prime(static_cast<std::uint64_t>(n)) ? "True" : "False");
    d.solution.push_back(step("is_prime", {{"n", n}}, StepCheck::value, d.answer.text));
    return d;
}

Draft prime_nth(std::string prompt, long long n) {
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_int(n2s(static_cast<long long>(nth_prime(static_cast<std::uint64_t>(n)))));
    d.solution.push_back(step("nth_prime", {{"n", n}}, StepCheck::value, d.answer.text));
    return d;
}

Draft prime_factor(std::string prompt, long long n) {
    Draft d;
    d.prompt = std::move(prompt);
    d.answer = ans_str(factorize(static_cast<std::uint64_t>(n)));
    d.solution.push_back(step("factorize", {{"n", n}}, StepCheck::value, d.answer.text));
    return d;
}

constexpr const char* kFactorHint = " Write the factors in ascending order separated by \" × \".";

long long composite_in(Rng& rng, long long lo, long long hi) {
    for (;;) {
        const long long n = rng.uniform(lo, hi);
        if (!is_prime(static_cast<std::uint64_t>(n))) return n;
    }
}

}  // namespace

// ---------------------------------------------------------------- Calculator

Draft gen_calculator(GenContext& ctx) {
    Rng& r = ctx.rng;
    std::string expr;
    switch (ctx.difficulty) {
        case Difficulty::easy: {
            long long a = r.uniform(2, 40), b = r.uniform(2, 40);
            const long long c = r.uniform(2, 40);
            switch (r.uniform_int(0, 4)) {
                case 0: expr = n2s(a) + " + " + n2s(b); break;
                case 1:
                    if (a < b) std::swap(a, b);
                    expr = n2s(a) + " - " + n2s(b);
                    break;
                case 2: expr = n2s(a) + " × " + n2s(b); break;
                case 3: expr = "(" + n2s(a) + " + " + n2s(b) + ") - " + n2s(c); break;
                default: expr = "(" + n2s(a) + " × " + n2s(b) + ") + " + n2s(c); break;
            }
            break;
        }
        case Difficulty::medium: {
            const long long a = r.uniform(80, 900), b = r.uniform(80, 900), c = r.uniform(80, 900), e = r.uniform(80, 900);
            switch (r.uniform_int(0, 4)) {
                case 0: expr = "(" + n2s(a) + " × " + n2s(b) + ") - " + n2s(c) + " + " + n2s(e); break;
                case 1: expr = n2s(a) + " × " + n2s(b) + " + " + n2s(c) + " × " + n2s(e); break;
                case 2: expr = "(" + n2s(a) + " × " + n2s(b) + ") mod " + n2s(c); break;
                case 3: {
                    // exact division: the divisor is a factor of the product
                    const long long prod = a * b;
                    std::vector<long long> divs;
                    for (long long q = 80; q <= 900; ++q) {
                        if (prod % q == 0 && q != a && q != b) divs.push_back(q);
                    }
                    if (divs.empty()) {
                        expr = "(" + n2s(a) + " × " + n2s(b) + ") ÷ " + n2s(a);
                    } else {
                        expr = "(" + n2s(a) + " × " + n2s(b) + ") ÷ " + n2s(r.pick(divs));
                    }
                    break;
                }
                default: expr = "(" + n2s(a) + " + " + n2s(b) + ") × " + n2s(c) + " - " + n2s(e); break;
            }
            break;
        }
        case Difficulty::hard: {
            const long long lo = 1'000'000'000LL, hi = 1'000'000'000'000LL;
            const long long a = r.uniform(lo, hi), b = r.uniform(lo, hi), c = r.uniform(lo, hi), e = r.uniform(lo, hi);
            switch (r.uniform_int(0, 3)) {
                case 0: expr = "(" + n2s(a) + " × " + n2s(b) + ") - " + n2s(c); break;
                case 1: expr = n2s(a) + " × " + n2s(b) + " + " + n2s(c) + " × " + n2s(e); break;
                case 2: expr = "(" + n2s(std::max(a, b)) + " - " + n2s(std::min(a, b)) + ") × " + n2s(c); break;
                default: expr = "(" + n2s(a) + " × " + n2s(b) + ") mod " + n2s(c); break;
            }
            break;
        }
    }
    return calc_draft("Compute exactly: " + expr, expr);
}

// ---------------------------------------------------------------- Statistics

Draft gen_statistics(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: {
            const auto xs = sample(r, r.uniform_int(3, 5), 1, 30);
            const bool mean = r.bernoulli(0.5);
            StatRequest probe;
            probe.kind = mean ? StatKind::mean : StatKind::median;
            probe.data = rationals(xs);
            const bool exact = is_integral(stats_compute(probe).value);
            std::string prompt = std::string("What is the ") + (mean ? "mean" : "median") + " of " + join_ints(xs) + "?";
            if (!exact) prompt += " Round to 2 decimal places.";
            return stat_draft(prompt, probe.kind, xs, {}, 50, exact ? std::nullopt : std::optional<int>(2));
        }
        case Difficulty::medium: {
            const auto xs = sample(r, r.uniform_int(8, 15), 10, 99);
            if (r.bernoulli(0.5)) {
                return stat_draft("What is the standard deviation of " + join_ints(xs) + "? Round to 2 decimal places.",
                                  StatKind::std, xs, {}, 50, 2);
            }
            static constexpr long long kPcts[] = {10, 25, 75, 90};
            const long long p = kPcts[r.uniform_int(0, 3)];
            return stat_draft("What is the " + ordinal(p) + " percentile of " + join_ints(xs) +
                                  " (linear interpolation)? Round to 2 decimal places.",
                              StatKind::percentile, xs, {}, p, 2);
        }
        case Difficulty::hard: {
            const int n = r.uniform_int(20, 30);
            const auto xs = sample(r, n, 10, 99);
            const long long slope = r.uniform(-3, 3) == 0 ? 2 : r.uniform(-3, 3);
            const long long noise = r.uniform(5, 60);
            std::vector<long long> ys;
            for (auto x : xs) ys.push_back(slope * x + r.uniform(-noise, noise) + 200);
            return stat_draft("What is the Pearson correlation between X=" + join_ints(xs) + " and Y=" + join_ints(ys) +
                                  "? Round to 4 decimal places.",
                              StatKind::correlation, xs, ys, 50, 4);
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Counting

Draft gen_counting(GenContext& ctx) {
    Rng& r = ctx.rng;
    const int form = r.uniform_int(0, 2);
    long long n = 0, k = 0;
    switch (ctx.difficulty) {
        case Difficulty::easy:
            if (form == 0) {
                n = r.uniform(4, 12);
                k = r.uniform(1, n - 1);
                return comb_draft("How many ways can you choose " + n2s(k) + " items from " + n2s(n) + "?",
                                  CombOp::combination, n, k);
            }
            if (form == 1) {
                n = r.uniform(3, 8);
                return comb_draft("What is " + n2s(n) + "! (" + n2s(n) + " factorial)?", CombOp::factorial, n, 0);
            }
            n = r.uniform(4, 10);
            k = r.uniform(2, 3);
            return comb_draft("In how many ways can " + n2s(k) + " of " + n2s(n) +
                                  " runners finish first, second" + (k == 3 ? ", and third" : "") + "? Compute P(" +
                                  n2s(n) + "," + n2s(k) + ").",
                              CombOp::permutation, n, k);
        case Difficulty::medium:
            if (form == 0) {
                n = r.uniform(15, 25);
                k = r.uniform(4, n / 2);
                return comb_draft("What is C(" + n2s(n) + "," + n2s(k) + ")?", CombOp::combination, n, k);
            }
            if (form == 1) {
                n = r.uniform(10, 15);
                return comb_draft("What is " + n2s(n) + "! (" + n2s(n) + " factorial)?", CombOp::factorial, n, 0);
            }
            n = r.uniform(12, 20);
            k = r.uniform(3, 5);
            return comb_draft("Compute P(" + n2s(n) + "," + n2s(k) + ").", CombOp::permutation, n, k);
        case Difficulty::hard:
            if (form == 0 || form == 2) {
                n = r.uniform(40, 100);
                k = r.uniform(10, n / 2);
                return comb_draft("What is C(" + n2s(n) + "," + n2s(k) + ")?", CombOp::combination, n, k);
            }
            n = r.uniform(20, 30);
            return comb_draft("What is " + n2s(n) + "! (" + n2s(n) + " factorial)?", CombOp::factorial, n, 0);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Matrix

Draft gen_matrix(GenContext& ctx) {
    Rng& r = ctx.rng;
    switch (ctx.difficulty) {
        case Difficulty::easy: {
            const auto m = random_matrix(r, 2, 1, 9);
            const bool det = r.bernoulli(0.5);
            return matrix_draft(std::string("What is the ") + (det ? "determinant" : "trace") + " of the matrix " +
                                    render_int_matrix(m) + "?",
                                det, m);
        }
        case Difficulty::medium: {
            const auto m = random_matrix(r, 3, 0, 9);
            return matrix_draft("What is the determinant of the matrix " + render_int_matrix(m) + "?", true, m);
        }
        case Difficulty::hard: {
            const auto m = random_matrix(r, r.uniform_int(4, 5), -9, 9);
            return matrix_draft("What is the determinant of the matrix " + render_int_matrix(m) + "?", true, m);
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- Prime

Draft gen_prime(GenContext& ctx) {
    Rng& r = ctx.rng;
    const int form = r.uniform_int(0, 2);
    switch (ctx.difficulty) {
        case Difficulty::easy:
            if (form == 0) {
                const long long n = r.uniform(2, 100);
                return prime_check("Is " + n2s(n) + " a prime number?", n);
            }
            if (form == 1) {
                const long long n = r.uniform(1, 12);
                return prime_nth("What is the " + ordinal(n) + " prime number?", n);
            }
            {
                const long long n = composite_in(r, 4, 100);
                return prime_factor("What is the prime factorization of " + n2s(n) + "?" + kFactorHint, n);
            }
        case Difficulty::medium:
            if (form == 0) {
                const long long n = r.uniform(100, 999) | 1;
                return prime_check("Is " + n2s(n) + " a prime number?", n);
            }
            if (form == 1) {
                const long long n = r.uniform(26, 168);  // the 26th..168th primes are the 3-digit ones
                return prime_nth("What is the " + ordinal(n) + " prime number?", n);
            }
            {
                const long long n = composite_in(r, 100, 999);
                return prime_factor("What is the prime factorization of " + n2s(n) + "?" + kFactorHint, n);
            }
        case Difficulty::hard:
            if (form == 0) {
                const long long n = r.uniform(10'000, 999'999) | 1;
                return prime_check("Is " + n2s(n) + " a prime number?", n);
            }
            if (form == 1) {
                const long long n = r.uniform(1'230, 9'999);  // 5-digit primes begin at the 1229th+1
                return prime_nth("What is the " + ordinal(n) + " prime number?", n);
            }
            {
                const long long n = r.uniform(10'000, 999'999);
                return prime_factor("What is the prime factorization of " + n2s(n) + "?" + kFactorHint, n);
            }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- fixtures

std::vector<Fixture> fixtures_scale(std::string_view env) {
    std::vector<Fixture> out;
    if (env == "CalculatorEnv") {
        out.push_back({Difficulty::easy, calc_draft("Compute exactly: 20 + 20", "20 + 20")});
        out.push_back({Difficulty::medium, calc_draft("Compute exactly: (810 × 87) - 85 + 178", "(810 × 87) - 85 + 178")});
        out.push_back({Difficulty::hard, calc_draft("Compute exactly: (39006255142 × 342002902703) - 702386298",
                                                    "(39006255142 × 342002902703) - 702386298")});
    } else if (env == "StatisticsEnv") {
        out.push_back({Difficulty::easy, stat_draft("What is the median of [3, 7, 1, 9, 5]?", StatKind::median,
                                                    {3, 7, 1, 9, 5}, {}, 50, std::nullopt)});
        out.push_back({Difficulty::medium,
                       stat_draft("What is the standard deviation of [12, 15, 18, 22, 25, 30, 14, 19, 27, 11]? Round to 2 "
                                  "decimal places.",
                                  StatKind::std, {12, 15, 18, 22, 25, 30, 14, 19, 27, 11}, {}, 50, 2)});
    } else if (env == "CountingEnv") {
        out.push_back({Difficulty::easy, comb_draft("How many ways can you choose 2 items from 5?", CombOp::combination, 5, 2)});
        out.push_back({Difficulty::medium, comb_draft("Compute P(15,4).", CombOp::permutation, 15, 4)});
        out.push_back({Difficulty::hard, comb_draft("What is C(50,25)?", CombOp::combination, 50, 25)});
    } else if (env == "MatrixEnv") {
        out.push_back({Difficulty::easy, matrix_draft("What is the trace of [[3, 1], [7, 4]]?", false, {{3, 1}, {7, 4}})});
        // The printed value for this example is -17; the determinant is -36.
        out.push_back({Difficulty::medium, matrix_draft("What is the determinant of [[2, 3, 1], [4, 1, 3], [1, 2, 4]]?", true,
                                                        {{2, 3, 1}, {4, 1, 3}, {1, 2, 4}})});
    } else if (env == "PrimeEnv") {
        out.push_back({Difficulty::easy, prime_check("Is 17 a prime number?", 17)});
        out.push_back({Difficulty::medium, prime_nth("What is the 50th prime number?", 50)});
        out.push_back({Difficulty::hard, prime_factor("What is the prime factorization of 8191?", 8191)});
    }
    return out;
}

}  // namespace when2tool::envs
