#include "when2tool/toolkit/stats.hpp"

#include <algorithm>
#include <array>

namespace when2tool::toolkit {

namespace {

constexpr std::array<std::pair<StatKind, std::string_view>, 5> kNames{{
    {StatKind::mean, "mean"},
    {StatKind::median, "median"},
    {StatKind::std, "std"},
    {StatKind::percentile, "percentile"},
    {StatKind::correlation, "correlation"},
}};

BigInt pow10(int d) {
    BigInt p = 1;
    for (int i = 0; i < d; ++i) p *= 10;
    return p;
}

BigInt floor_int(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) % denominator(r) != 0 && r < 0) --q;
    return q;
}

Rational mean_of(const std::vector<Rational>& xs) {
    Rational s = 0;
    for (const auto& x : xs) s += x;
    return s / Rational(static_cast<long long>(xs.size()));
}

Rational percentile_of(std::vector<Rational> xs, const Rational& p) {
    std::sort(xs.begin(), xs.end());
    const Rational h = Rational(static_cast<long long>(xs.size() - 1)) * p / 100;
    const BigInt lo_i = floor_int(h);
    const auto lo = static_cast<std::size_t>(lo_i);
    const Rational frac = h - Rational(lo_i);
    if (lo + 1 >= xs.size()) return xs.back();
    return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

Rational variance_of(const std::vector<Rational>& xs) {
    const Rational m = mean_of(xs);
    Rational s = 0;
    for (const auto& x : xs) s += (x - m) * (x - m);
    return s / Rational(static_cast<long long>(xs.size()));
}

}  // namespace

StatKind parse_stat_kind(std::string_view s) {
    std::string low(s);
    for (auto& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "average" || low == "avg") return StatKind::mean;
    if (low == "stdev" || low == "stddev" || low == "standard_deviation" || low == "standard deviation")
        return StatKind::std;
    if (low == "pearson" || low == "corr") return StatKind::correlation;
    for (const auto& [k, n] : kNames) {
        if (n == low) return k;
    }
    throw ToolError("unknown statistic: " + std::string(s));
}

std::string_view to_string(StatKind k) {
    for (const auto& [kk, n] : kNames) {
        if (kk == k) return n;
    }
    return "?";
}

Rational round_half_even(const Rational& r, int digits) {
    const BigInt scale = pow10(digits);
    const Rational scaled = r * Rational(scale);
    BigInt f = floor_int(scaled);
    const Rational frac = scaled - Rational(f);
    const Rational half(1, 2);
    if (frac > half || (frac == half && f % 2 != 0)) ++f;
    return Rational(f, scale);
}

Rational sqrt_round_half_even(const Rational& x, int digits) {
    if (x < 0) throw ToolError("square root of negative value");
    // y = x * 10^(2d); answer = round(sqrt(y)) / 10^d.
    const BigInt scale = pow10(digits);
    const Rational y = x * Rational(scale * scale);
    const BigInt fy = floor_int(y);
    BigInt k = boost::multiprecision::sqrt(fy);  // floor(sqrt(floor(y))) == floor(sqrt(y))
    // Compare sqrt(y) with k + 1/2  <=>  4y vs (2k+1)^2.
    const Rational lhs = y * 4;
    const Rational rhs = Rational((2 * k + 1) * (2 * k + 1));
    if (lhs > rhs || (lhs == rhs && k % 2 != 0)) ++k;
    return Rational(k, scale);
}

std::string render_fixed(const Rational& r, int digits) {
    const BigInt scale = pow10(digits);
    const Rational scaled = r * Rational(scale);
    if (denominator(scaled) != 1) return render_fixed(round_half_even(r, digits), digits);
    BigInt n = numerator(scaled);
    const bool neg = n < 0;
    if (neg) n = -n;
    std::string s = n.str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return neg ? "-" + s : s;
}

std::string DecimalValue::render() const {
    if (digits < 0) {
        if (denominator(value) == 1) return numerator(value).str();
        return render_fixed(value, kDefaultStatDigits);
    }
    return render_fixed(value, digits);
}

DecimalValue stats_compute(const StatRequest& req) {
    if (req.data.empty()) throw ToolError("data must be non-empty");
    if (req.round_to && (*req.round_to < 0 || *req.round_to > 30)) throw ToolError("round_to out of range");
    auto finish_exact = [&](const Rational& v) {
        if (req.round_to) return DecimalValue{round_half_even(v, *req.round_to), *req.round_to};
        if (denominator(v) == 1) return DecimalValue{v, -1};
        return DecimalValue{round_half_even(v, kDefaultStatDigits), kDefaultStatDigits};
    };
    const int digits = req.round_to.value_or(kDefaultStatDigits);
    switch (req.kind) {
        case StatKind::mean: return finish_exact(mean_of(req.data));
        case StatKind::median: return finish_exact(percentile_of(req.data, 50));
        case StatKind::percentile:
            if (req.percentile < 0 || req.percentile > 100) throw ToolError("percentile must be in [0, 100]");
            return finish_exact(percentile_of(req.data, req.percentile));
        case StatKind::std: return DecimalValue{sqrt_round_half_even(variance_of(req.data), digits), digits};
        case StatKind::correlation: {
            if (req.data_y.size() != req.data.size()) throw ToolError("correlation requires equal-length lists");
            if (req.data.size() < 2) throw ToolError("correlation requires at least 2 points");
            const Rational mx = mean_of(req.data), my = mean_of(req.data_y);
            Rational sxy = 0, sxx = 0, syy = 0;
            for (std::size_t i = 0; i < req.data.size(); ++i) {
                const Rational dx = req.data[i] - mx, dy = req.data_y[i] - my;
                sxy += dx * dy;
                sxx += dx * dx;
                syy += dy * dy;
            }
            if (sxx == 0 || syy == 0) throw ToolError("correlation undefined for constant data");
            const Rational mag = sqrt_round_half_even(sxy * sxy / (sxx * syy), digits);
            return DecimalValue{sxy < 0 ? Rational(-mag) : mag, digits};
        }
    }
    throw ToolError("unknown statistic");
}

std::string describe(const std::vector<Rational>& data, int digits) {
    if (data.empty()) throw ToolError("data must be non-empty");
    const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
    auto fmt = [&](const Rational& v) {
        return denominator(v) == 1 ? numerator(v).str() : render_fixed(round_half_even(v, digits), digits);
    };
    std::string out = "count=" + std::to_string(data.size());
    out += ", mean=" + fmt(mean_of(data));
    out += ", std=" + render_fixed(sqrt_round_half_even(variance_of(data), digits), digits);
    out += ", min=" + fmt(*mn);
    out += ", 25%=" + fmt(percentile_of(data, 25));
    out += ", 50%=" + fmt(percentile_of(data, 50));
    out += ", 75%=" + fmt(percentile_of(data, 75));
    out += ", max=" + fmt(*mx);
    return out;
}

}  // namespace when2tool::toolkit
