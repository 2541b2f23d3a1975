#pragma once

#include "when2tool/toolkit/arith.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool::toolkit {

enum class StatKind { mean, median, std, percentile, correlation };

StatKind parse_stat_kind(std::string_view s);
std::string_view to_string(StatKind k);

inline constexpr int kDefaultStatDigits = 6;

struct StatRequest {
    StatKind kind = StatKind::mean;
    std::vector<Rational> data;
    std::vector<Rational> data_y;      // correlation only
    Rational percentile = 50;          // percentile only, in [0, 100]
    std::optional<int> round_to;
};

/// A rounded (or exact) decimal. `digits` < 0 means an exact integer rendering.
struct DecimalValue {
    Rational value;
    int digits = -1;

    std::string render() const;
};

/// Mean/median/percentile are exact; std (population) and Pearson correlation
/// are rounded half-even to `round_to` (default 6) using exact integer square roots.
DecimalValue stats_compute(const StatRequest& req);

/// Round-half-even of an exact rational to `digits` decimal places.
Rational round_half_even(const Rational& r, int digits);

/// sqrt(x) rounded half-even to `digits` places, exact (x >= 0).
Rational sqrt_round_half_even(const Rational& x, int digits);

/// Fixed-point rendering with exactly `digits` decimals ("6.33", "-0.50").
std::string render_fixed(const Rational& r, int digits);

/// count, mean, std, min, 25%, 50%, 75%, max.
std::string describe(const std::vector<Rational>& data, int digits = kDefaultStatDigits);

}  // namespace when2tool::toolkit
