#include "envs/envs.hpp"

#include <array>
#include <numeric>

namespace when2tool::envs {

SolutionStep step(std::string tool, json args, StepCheck check, std::string expect) {
    SolutionStep s;
    s.call.tool_name = std::move(tool);
    s.call.arguments = std::move(args);
    s.check = check;
    s.expect = std::move(expect);
    return s;
}

AnswerValue ans(AnswerKind kind, std::string text) { return AnswerValue{kind, std::move(text), -1}; }
AnswerValue ans_int(std::string text) { return ans(AnswerKind::integer, std::move(text)); }
AnswerValue ans_str(std::string text) { return ans(AnswerKind::string, std::move(text)); }
AnswerValue ans_dec(std::string text, int precision) { return AnswerValue{AnswerKind::decimal, std::move(text), precision}; }

std::size_t pool_slot(const GenContext& ctx, std::size_t pool_size) {
    std::vector<std::size_t> perm(pool_size);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(ctx.pool_seed);
    rng.shuffle(perm);
    const auto i = static_cast<std::size_t>(ctx.index);
    if (i >= pool_size) {
        throw ArgumentError("requested more tasks than the fact pool holds (" + std::to_string(pool_size) + ")");
    }
    return ctx.split == Split::train ? perm[i] : perm[pool_size - 1 - i];
}

namespace {

constexpr std::array<std::string_view, 24> kOnsets{"V", "K", "Th", "Br", "Z", "M", "Dr", "L", "S", "Gr", "T", "N",
                                                   "Qu", "R", "F", "Sh", "P", "Cr", "D", "H", "Xy", "B", "Tr", "G"};
constexpr std::array<std::string_view, 12> kVowels{"a", "e", "i", "o", "u", "ae", "ia", "or", "el", "ara", "y", "ou"};
constexpr std::array<std::string_view, 14> kCodas{"", "", "n", "th", "r", "l", "s", "x", "m", "nd", "rk", "v", "sh", "d"};

}  // namespace

std::string fictional_word(Rng& rng, int syllables) {
    std::string out;
    for (int i = 0; i < syllables; ++i) {
        std::string syl = std::string(rng.pick(std::span<const std::string_view>(kOnsets))) +
                          std::string(rng.pick(std::span<const std::string_view>(kVowels)));
        if (i == syllables - 1) syl += rng.pick(std::span<const std::string_view>(kCodas));
        if (i > 0) {
            for (auto& c : syl) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        out += syl;
    }
    return out;
}

std::string join_ints(const std::vector<long long>& xs) { return render_int_list(xs); }

std::string month_name(unsigned m) {
    static constexpr std::array<std::string_view, 12> kMonths{"January", "February", "March",     "April",
                                                              "May",     "June",     "July",      "August",
                                                              "September", "October", "November", "December"};
    return std::string(kMonths.at(m - 1));
}

}  // namespace when2tool::envs
