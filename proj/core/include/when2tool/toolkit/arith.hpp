#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool::toolkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A tool-level failure. Rendered to the agent as an error payload, never a crash.
class ToolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-trajectory calculator memory backing get_last_result / clear_last_result.
struct CalculatorSession {
    std::optional<Rational> last_result;
};

/// Exact evaluation of + - * / // % ** and parentheses over integer literals.
/// `/` is exact rational division; `//` and `%` follow Python floor semantics.
/// Accepts the Unicode operators × ÷ − as aliases.
Rational calc_evaluate(std::string_view expr, CalculatorSession* session = nullptr);

/// "40", "-7/2".
std::string render_rational(const Rational& r);

/// Parses "12", "-3.25", "1e3" into an exact rational.
std::optional<Rational> parse_decimal(std::string_view text);

enum class CombOp { combination, permutation, factorial };

BigInt comb_compute(CombOp op, long long n, long long k = 0);

using IntMatrix = std::vector<std::vector<BigInt>>;

BigInt matrix_determinant(const IntMatrix& a);
BigInt matrix_trace(const IntMatrix& a);
IntMatrix matrix_multiply(const IntMatrix& a, const IntMatrix& b);
std::string render_matrix(const IntMatrix& m);

bool is_prime(std::uint64_t n);
std::uint64_t nth_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// "2 × 2 × 3"; a prime renders as itself.
std::string factorize(std::uint64_t n);

}  // namespace when2tool::toolkit
