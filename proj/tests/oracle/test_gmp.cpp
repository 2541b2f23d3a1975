#include "when2tool/toolkit/arith.hpp"
#include "when2tool/toolkit/stats.hpp"

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>

using namespace when2tool::toolkit;

namespace {

std::string str(const BigInt& v) { return v.str(); }

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

mpz_class floor_mod(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Random integer expression; returns its text and its GMP value.
struct Expr {
    std::string text;
    mpz_class value;
};

Expr random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> digits(1, 14), pick(0, 5);
    if (depth == 0 || pick(rng) == 0) {
        std::string s(1, static_cast<char>('1' + rng() % 9));
        for (int i = digits(rng); i > 1; --i) s += static_cast<char>('0' + rng() % 10);
        return {s, mpz_class(s)};
    }
    const Expr a = random_expr(rng, depth - 1), b = random_expr(rng, depth - 1);
    switch (pick(rng)) {
        case 0: return {"(" + a.text + " + " + b.text + ")", a.value + b.value};
        case 1: return {"(" + a.text + " - " + b.text + ")", a.value - b.value};
        case 2: return {"(" + a.text + " * " + b.text + ")", a.value * b.value};
        case 3:
            if (b.value != 0) return {"(" + a.text + " // " + b.text + ")", floor_div(a.value, b.value)};
            [[fallthrough]];
        case 4:
            if (b.value != 0) return {"(" + a.text + " % " + b.text + ")", floor_mod(a.value, b.value)};
            [[fallthrough]];
        default: return {"(" + a.text + " * " + b.text + ")", a.value * b.value};
    }
}

IntMatrix random_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(n, std::vector<BigInt>(n));
    for (auto& row : m)
        for (auto& v : row) v = d(rng);
    return m;
}

mpz_class cofactor_det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    mpz_class det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<mpz_class> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        const mpz_class term = a[0][c] * cofactor_det(minor);
        det += c % 2 ? -term : term;
    }
    return det;
}

}  // namespace

TEST(GmpOracle, CalculatorIntegerExpressions) {
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 2000; ++i) {
        const auto e = random_expr(rng, 4);
        EXPECT_EQ(render_rational(calc_evaluate(e.text)), e.value.get_str()) << e.text;
    }
}

TEST(GmpOracle, CalculatorExactDivisionAndPowers) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> v(-1000000000, 1000000000);
    std::uniform_int_distribution<int> e(0, 40);
    for (int i = 0; i < 500; ++i) {
        const long long a = v(rng), b = v(rng) | 1;
        mpq_class q(mpz_class(std::to_string(a)), mpz_class(std::to_string(b)));
        q.canonicalize();
        EXPECT_EQ(render_rational(calc_evaluate("(" + std::to_string(a) + ") / (" + std::to_string(b) + ")")), q.get_str());
        const int p = e(rng);
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), mpz_class(std::to_string(a)).get_mpz_t(), static_cast<unsigned long>(p));
        EXPECT_EQ(render_rational(calc_evaluate("(" + std::to_string(a) + ") ** " + std::to_string(p))), pw.get_str());
    }
}

TEST(GmpOracle, CountingFunctions) {
    for (unsigned long n = 0; n <= 200; n += 3) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), n);
        EXPECT_EQ(str(comb_compute(CombOp::factorial, static_cast<long long>(n))), f.get_str());
        for (unsigned long k = 0; k <= n; k += 7) {
            mpz_class c;
            mpz_bin_uiui(c.get_mpz_t(), n, k);
            EXPECT_EQ(str(comb_compute(CombOp::combination, static_cast<long long>(n), static_cast<long long>(k))), c.get_str());
            mpz_class perm = 1;
            for (unsigned long j = n - k + 1; j <= n; ++j) perm *= j;
            EXPECT_EQ(str(comb_compute(CombOp::permutation, static_cast<long long>(n), static_cast<long long>(k))), perm.get_str());
        }
    }
}

TEST(GmpOracle, DeterminantAgainstCofactorExpansion) {
    std::mt19937_64 rng(99);
    for (int n = 1; n <= 6; ++n)
        for (int rep = 0; rep < 40; ++rep) {
            const auto m = random_matrix(rng, n, -50, 50);
            std::vector<std::vector<mpz_class>> g(n, std::vector<mpz_class>(n));
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) g[r][c] = mpz_class(m[r][c].str());
            EXPECT_EQ(str(matrix_determinant(m)), cofactor_det(g).get_str());
        }
    // Singular: duplicated row.
    auto m = random_matrix(rng, 5, -9, 9);
    m[3] = m[1];
    EXPECT_EQ(str(matrix_determinant(m)), "0");
}

TEST(GmpOracle, PrimesAgainstProbablePrime) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> big(2, 1000000000000ULL);
    for (int i = 0; i < 3000; ++i) {
        const auto n = big(rng);
        EXPECT_EQ(is_prime(n), mpz_probab_prime_p(mpz_class(std::to_string(n)).get_mpz_t(), 40) > 0) << n;
    }
    mpz_class p = 1;
    for (std::uint64_t k = 1; k <= 3000; ++k) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (k % 97 == 0 || k == 1 || k == 3000) {
            EXPECT_EQ(std::to_string(nth_prime(k)), p.get_str()) << k;
        }
    }
    for (int i = 0; i < 300; ++i) {
        const auto n = big(rng) % 100000000 + 2;
        mpz_class prod = 1;
        for (auto f : prime_factors(n)) {
            EXPECT_TRUE(mpz_probab_prime_p(mpz_class(std::to_string(f)).get_mpz_t(), 40) > 0);
            prod *= mpz_class(std::to_string(f));
        }
        EXPECT_EQ(prod.get_str(), std::to_string(n));
    }
}

TEST(GmpOracle, SqrtRoundHalfEven) {
    // r = isqrt(x * 10^(2d)), bumped when sqrt exceeds r + 1/2; exact because x is an integer.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> v(0, 1000000000000LL);
    for (int i = 0; i < 1000; ++i) {
        const long long x = v(rng);
        const int d = static_cast<int>(rng() % 8);
        mpz_class scaled;
        mpz_ui_pow_ui(scaled.get_mpz_t(), 10, static_cast<unsigned long>(2 * d));
        scaled *= mpz_class(std::to_string(x));
        mpz_class root, rem;
        mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
        // root <= sqrt < root + 1; round up iff sqrt > root + 1/2, i.e. 4*scaled > (2*root+1)^2.
        // Equality is impossible: (2r+1)^2 is odd and 4*scaled is even.
        const mpz_class twice = 2 * root + 1;
        if (4 * scaled > twice * twice) root += 1;
        mpz_class unit;
        mpz_ui_pow_ui(unit.get_mpz_t(), 10, static_cast<unsigned long>(d));
        mpq_class expected(root, unit);
        expected.canonicalize();
        const Rational got = sqrt_round_half_even(Rational(x), d);
        EXPECT_EQ(render_rational(got), expected.get_str()) << x << " " << d;
    }
}

TEST(GmpOracle, RoundHalfEvenOnRationals) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long long> num(-100000000, 100000000), den(1, 5000);
    for (int i = 0; i < 3000; ++i) {
        const long long a = num(rng), b = den(rng);
        const int d = static_cast<int>(rng() % 5);
        mpz_class unit;
        mpz_ui_pow_ui(unit.get_mpz_t(), 10, static_cast<unsigned long>(d));
        // q = a * 10^d / b, rounded half to even.
        const mpz_class n = mpz_class(std::to_string(a)) * unit, m(std::to_string(b));
        mpz_class fl = floor_div(n, m);
        const mpz_class r2 = 2 * (n - fl * m);  // 2 * fractional part * m
        if (r2 > m || (r2 == m && mpz_odd_p(fl.get_mpz_t()))) fl += 1;
        mpq_class expected(fl, unit);
        expected.canonicalize();
        EXPECT_EQ(render_rational(round_half_even(Rational(a) / b, d)), expected.get_str()) << a << "/" << b << " @" << d;
    }
}
