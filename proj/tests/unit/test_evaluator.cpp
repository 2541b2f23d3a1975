#include "when2tool/evaluator.hpp"

#include <gtest/gtest.h>

using namespace when2tool;

namespace {

AnswerValue av(AnswerKind k, std::string text, int precision = -1) { return {k, std::move(text), precision}; }

bool accepts(const AnswerValue& expected, const std::string& answer) {
    return judge(extract_answer(boxed(answer)), expected).correct;
}

}  // namespace

TEST(Extract, LastBalancedBoxed) {
    EXPECT_EQ(extract_answer("first \\boxed{1} then \\boxed{2}")->text, "2");
    EXPECT_EQ(extract_answer("\\boxed{[[1, 2], [3, 4]]}")->text, "[[1, 2], [3, 4]]");
    EXPECT_EQ(extract_answer("\\boxed{\\text{Paris}}")->text, "\\text{Paris}");  // raw; cleaned when judged
    EXPECT_TRUE(accepts(av(AnswerKind::string, "Paris"), "\\text{Paris}"));
    EXPECT_TRUE(accepts(av(AnswerKind::integer, "42"), "$42$"));
    EXPECT_FALSE(extract_answer("no answer here"));
    EXPECT_FALSE(extract_answer("\\boxed{unclosed"));
    EXPECT_EQ(boxed("x"), "\\boxed{x}");
}

TEST(Judge, FailureReasons) {
    const auto expected = av(AnswerKind::integer, "40");
    const auto none = judge(std::nullopt, expected);
    EXPECT_FALSE(none.correct);
    EXPECT_EQ(none.failure_reason, FailureReason::no_boxed_answer);
    const auto wrong = judge(extract_answer("\\boxed{41}"), expected);
    EXPECT_FALSE(wrong.correct);
    EXPECT_EQ(wrong.failure_reason, FailureReason::wrong_value);
    const auto ok = judge(extract_answer("\\boxed{40}"), expected);
    EXPECT_TRUE(ok.correct);
    EXPECT_EQ(ok.failure_reason, FailureReason::none);
}

TEST(Judge, Integers) {
    const auto e = av(AnswerKind::integer, "13340252482137117062528");
    EXPECT_TRUE(accepts(e, "13340252482137117062528"));
    EXPECT_TRUE(accepts(e, "13,340,252,482,137,117,062,528"));
    EXPECT_FALSE(accepts(e, "13340252482137117062529"));
    EXPECT_TRUE(accepts(av(AnswerKind::integer, "40"), "40.0"));
    EXPECT_TRUE(accepts(av(AnswerKind::integer, "-36"), "-36"));
    EXPECT_FALSE(accepts(av(AnswerKind::integer, "-36"), "36"));
    EXPECT_FALSE(accepts(av(AnswerKind::integer, "40"), "forty"));
}

TEST(Judge, Decimals) {
    const auto e = av(AnswerKind::decimal, "6.20", 2);
    EXPECT_TRUE(accepts(e, "6.20"));
    EXPECT_TRUE(accepts(e, "6.2"));
    EXPECT_TRUE(accepts(e, "6.197"));
    EXPECT_FALSE(accepts(e, "6.21"));
    EXPECT_FALSE(accepts(e, "6.33"));
}

TEST(Judge, Strings) {
    const auto e = av(AnswerKind::string, "Paris");
    EXPECT_TRUE(accepts(e, "paris"));
    EXPECT_TRUE(accepts(e, "  PARIS "));
    EXPECT_TRUE(accepts(e, "'Paris'"));
    EXPECT_FALSE(accepts(e, "Lyon"));
    EXPECT_TRUE(accepts(av(AnswerKind::string, "... --- ..."), "...  --- ..."));
}

TEST(Judge, Lists) {
    const auto ints = av(AnswerKind::value_list, "[7, 19, 36, 29]");
    EXPECT_TRUE(accepts(ints, "[7,19,36,29]"));
    EXPECT_TRUE(accepts(ints, "7, 19, 36, 29"));
    EXPECT_FALSE(accepts(ints, "[7, 19, 29, 36]"));
    const auto tuples = av(AnswerKind::value_list, "[('user', 'example', 'com'), ('admin', 'test', 'org')]");
    EXPECT_TRUE(accepts(tuples, "[(\"user\", \"example\", \"com\"), (\"admin\", \"test\", \"org\")]"));
    EXPECT_FALSE(accepts(tuples, "[('user', 'example', 'com')]"));
    const auto m = av(AnswerKind::matrix, "[[1, 2], [3, 4]]");
    EXPECT_TRUE(accepts(m, "[[1,2],[3,4]]"));
    EXPECT_FALSE(accepts(m, "[[1, 2], [4, 3]]"));
    const auto sl = av(AnswerKind::string_list, "9:00-10:00, 14:00-15:00");
    EXPECT_TRUE(accepts(sl, "9:00-10:00,14:00-15:00"));
    EXPECT_FALSE(accepts(sl, "14:00-15:00, 9:00-10:00"));
}

TEST(Judge, BooleansDaysDates) {
    const auto t = av(AnswerKind::boolean, "True");
    EXPECT_TRUE(accepts(t, "true"));
    EXPECT_TRUE(accepts(t, "Yes"));
    EXPECT_FALSE(accepts(t, "False"));
    const auto day = av(AnswerKind::day_name, "Sunday");
    EXPECT_TRUE(accepts(day, "sunday"));
    EXPECT_TRUE(accepts(day, "Sun"));
    EXPECT_FALSE(accepts(day, "Monday"));
    const auto date = av(AnswerKind::date, "2024-03-10");
    EXPECT_TRUE(accepts(date, "2024-03-10"));
    EXPECT_TRUE(accepts(date, "March 10, 2024"));
    EXPECT_TRUE(accepts(date, "10 March 2024"));
    EXPECT_TRUE(accepts(date, "Sunday, March 10, 2024"));
    EXPECT_FALSE(accepts(date, "2024-03-11"));
}

TEST(Judge, JsonRoundTrip) {
    Judgment j{true, av(AnswerKind::string, "5"), FailureReason::none};
    nlohmann::json js = j;
    const auto back = js.get<Judgment>();
    EXPECT_EQ(back.correct, j.correct);
    EXPECT_EQ(back.extracted, j.extracted);
    EXPECT_EQ(back.failure_reason, j.failure_reason);
}
