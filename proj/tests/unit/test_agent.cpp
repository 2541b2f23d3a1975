#include "support.hpp"

#include "when2tool/agent.hpp"
#include "when2tool/mock_backend.hpp"
#include "when2tool/toolkit/dispatch.hpp"

#include <gtest/gtest.h>

#include <atomic>

using namespace when2tool;
using w2t_test::ScriptedBackend;

namespace {

const Task& calc_task() { return w2t_test::find_task(w2t_test::single_hop_tasks(), "CalculatorEnv:hard:test:0"); }

}  // namespace

TEST(Modes, NamesRoundTrip) {
    for (auto m : {ModeKind::force, ModeKind::default_mode, ModeKind::necessary, ModeKind::sparse, ModeKind::no_tool}) {
        EXPECT_EQ(parse_mode(to_string(m)), m);
        const PromptMode rta{m, true};
        EXPECT_EQ(parse_prompt_mode(to_string(rta)), rta);
    }
    EXPECT_EQ(to_string(PromptMode{ModeKind::sparse, true}), "sparse+rta");
    EXPECT_THROW(parse_mode("loud"), ArgumentError);
}

TEST(Prompt, ModeInstructionsAndSchemas) {
    const auto& task = calc_task();
    for (auto m : {ModeKind::force, ModeKind::default_mode, ModeKind::necessary, ModeKind::sparse, ModeKind::no_tool}) {
        const auto msgs = build_prompt(task, {m, false});
        ASSERT_EQ(msgs.size(), 2u);
        EXPECT_EQ(msgs[0].role, Role::system);
        EXPECT_EQ(msgs[1].role, Role::user);
        EXPECT_EQ(msgs[1].content, task.prompt);
        const auto& sys = msgs[0].content;
        if (!prompts::mode_instruction(m).empty()) EXPECT_NE(sys.find(prompts::mode_instruction(m)), std::string::npos);
        EXPECT_NE(sys.find(prompts::kOutputFormat), std::string::npos);
        EXPECT_EQ(sys.find(prompts::kReasonThenAct), std::string::npos);
        const bool has_schema = sys.find(prompts::kToolsHeader) != std::string::npos;
        EXPECT_EQ(has_schema, m != ModeKind::no_tool);
    }
    EXPECT_NE(build_prompt(task, {ModeKind::sparse, true})[0].content.find(prompts::kReasonThenAct), std::string::npos);
    EXPECT_EQ(prompts::mode_instruction(ModeKind::default_mode), "");
    EXPECT_EQ(prompts::mode_instruction(ModeKind::sparse), "Tool calls are expensive, use sparingly.");
}

TEST(Prefill, DirectiveTexts) {
    EXPECT_EQ(PrefillDirective::make(PrefillKind::soft_direct).text, "I can solve this directly without using a tool.");
    EXPECT_EQ(PrefillDirective::make(PrefillKind::soft_tool).text, "I need to use a tool for this question.");
    EXPECT_EQ(PrefillDirective::make(PrefillKind::hard_direct).text, "\\boxed{");
    EXPECT_EQ(PrefillDirective::make(PrefillKind::hard_tool).text, "{\"name\": \"");
    EXPECT_FALSE(PrefillDirective::make(PrefillKind::none).active());
    EXPECT_TRUE(PrefillDirective::make(PrefillKind::hard_tool).is_tool());
    EXPECT_FALSE(PrefillDirective::make(PrefillKind::soft_direct).is_tool());
}

TEST(ParseCalls, ValidInvalidAndNested) {
    const auto specs = toolkit::tools_for_env("CalculatorEnv");
    const std::string text =
        "Let me compute. {\"name\": \"evaluate_expression\", \"arguments\": {\"expr\": \"(2 + 3) * {4}\"}} and "
        "{\"name\": \"get_last_result\", \"arguments\": {}} then {\"name\": \"fly\", \"arguments\": {}} "
        "and {\"name\": \"evaluate_expression\"} and {not json}";
    const auto parsed = parse_tool_calls(text, specs);
    ASSERT_EQ(parsed.calls.size(), 2u);
    EXPECT_EQ(parsed.calls[0].tool_name, "evaluate_expression");
    EXPECT_EQ(parsed.calls[0].arguments.at("expr"), "(2 + 3) * {4}");
    EXPECT_EQ(parsed.calls[1].tool_name, "get_last_result");
    EXPECT_EQ(parsed.skipped.size(), 2u);  // unknown tool, missing arguments
    EXPECT_TRUE(parse_tool_calls("\\boxed{42}", specs).calls.empty());
}

TEST(ParseCalls, CoercesArgumentTypes) {
    const auto specs = toolkit::tools_for_env("CountingEnv");
    const auto parsed = parse_tool_calls(R"({"name": "combination", "arguments": {"n": "50", "k": 25}})", specs);
    ASSERT_EQ(parsed.calls.size(), 1u);
    EXPECT_EQ(parsed.calls[0].arguments.at("n"), 50);
}

TEST(ParseCalls, HardToolPrefillCompletesToCall) {
    const auto specs = toolkit::tools_for_env("CalculatorEnv");
    const std::string text = std::string(kHardToolText) + "evaluate_expression\", \"arguments\": {\"expr\": \"1+1\"}}";
    EXPECT_EQ(parse_tool_calls(text, specs).calls.size(), 1u);
}

TEST(Limits, RoundsByHop) {
    AgentLimits l;
    EXPECT_EQ(l.rounds_for(calc_task()), 6);
    const auto multi = generate_env_tasks("ChainedCalculatorEnv", Difficulty::easy, Split::test, 1, 0);
    EXPECT_EQ(l.rounds_for(multi[0]), 10);
    l.max_rounds = 2;
    EXPECT_EQ(l.rounds_for(multi[0]), 2);
}

TEST(RunTask, ToolLoopThenAnswer) {
    const auto& task = calc_task();
    const std::string expr = task.solution[0].call.arguments.at("expr").get<std::string>();
    ScriptedBackend backend([&](const BackendRequest& req, int call) -> std::string {
        if (call == 0) return "{\"name\": \"evaluate_expression\", \"arguments\": {\"expr\": \"" + expr + "\"}}";
        EXPECT_EQ(req.messages.back().role, Role::tool);
        EXPECT_NE(req.messages.back().content.find(task.expected_answer.text), std::string::npos);
        return "The answer is \\boxed{" + task.expected_answer.text + "}";
    });
    const auto t = run_task(task, {}, {}, backend);
    EXPECT_FALSE(t.errored);
    EXPECT_EQ(t.tool_call_count, 1);
    ASSERT_EQ(t.rounds.size(), 2u);
    EXPECT_TRUE(t.rounds[0].tool_results.at(0).ok);
    EXPECT_TRUE(t.judgment.correct);
    EXPECT_EQ(t.final_output, t.rounds[0].model_text + "\n" + t.rounds[1].model_text);
}

TEST(RunTask, StopsAtRoundLimit) {
    ScriptedBackend backend(
        [](const BackendRequest&, int) { return std::string(R"({"name": "evaluate_expression", "arguments": {"expr": "1+1"}})"); });
    AgentLimits limits;
    limits.max_rounds = 3;
    const auto t = run_task(calc_task(), {}, {}, backend, limits);
    EXPECT_EQ(t.rounds.size(), 3u);
    EXPECT_EQ(t.tool_call_count, 3);
    EXPECT_FALSE(t.judgment.correct);
    EXPECT_EQ(t.judgment.failure_reason, FailureReason::no_boxed_answer);
}

TEST(RunTask, NoToolModeRefusesCalls) {
    ScriptedBackend backend(
        [](const BackendRequest&, int) { return std::string(R"({"name": "evaluate_expression", "arguments": {"expr": "1+1"}})"); });
    const auto t = run_task(calc_task(), {ModeKind::no_tool, false}, {}, backend);
    EXPECT_EQ(t.tool_call_count, 0);
    EXPECT_EQ(t.refused_calls, 1);
    EXPECT_EQ(t.rounds.size(), 1u);
}

TEST(RunTask, PrefillOnlyOnFirstRound) {
    ScriptedBackend backend([](const BackendRequest&, int call) {
        return call == 0 ? std::string(R"(evaluate_expression", "arguments": {"expr": "2+2"}})") : std::string("\\boxed{4}");
    });
    const auto t = run_task(calc_task(), {}, PrefillDirective::make(PrefillKind::hard_tool), backend);
    ASSERT_EQ(backend.requests.size(), 2u);
    EXPECT_EQ(backend.requests[0].assistant_prefill, std::optional<std::string>(std::string(kHardToolText)));
    EXPECT_FALSE(backend.requests[1].assistant_prefill);
    EXPECT_TRUE(t.rounds[0].model_text.starts_with(kHardToolText));
    EXPECT_EQ(t.tool_call_count, 1);
}

TEST(RunTask, BackendFailureMarksErrored) {
    w2t_test::DeadBackend dead;
    const auto t = run_task(calc_task(), {}, {}, dead);
    EXPECT_TRUE(t.errored);
    EXPECT_FALSE(t.error.empty());
}

TEST(RunTask, TrajectoryJsonRoundTrip) {
    MockBackend mock(MockProfile::oracle_signal(0), w2t_test::single_hop_tasks());
    auto t = run_task(calc_task(), {ModeKind::force, false}, {}, mock);
    t.probe_p = 0.25;
    nlohmann::json j = t;
    const auto back = j.get<Trajectory>();
    EXPECT_EQ(nlohmann::json(back), j);
}

TEST(MockAgent, ModesShapeToolUse) {
    const auto& all = w2t_test::single_hop_tasks();
    const auto tasks = w2t_test::pick(all, Split::test, 5);
    MockBackend mock(MockProfile::oracle_signal(0), all);
    auto total_calls = [&](PromptMode mode) {
        long n = 0;
        for (const auto& t : tasks) n += run_task(t, mode, {}, mock).tool_call_count > 0 ? 1 : 0;
        return n;
    };
    const long force = total_calls({ModeKind::force, false});
    const long def = total_calls({ModeKind::default_mode, false});
    const long sparse = total_calls({ModeKind::sparse, false});
    const long none = total_calls({ModeKind::no_tool, false});
    EXPECT_EQ(force, static_cast<long>(tasks.size()));
    EXPECT_GT(force, def);
    EXPECT_GT(def, sparse);
    EXPECT_EQ(none, 0);
}

TEST(MockAgent, DirectAnswerCorrectIffUnneeded) {
    const auto& all = w2t_test::single_hop_tasks();
    MockBackend mock(MockProfile::oracle_signal(0), all);
    for (const auto& t : w2t_test::pick(all, Split::train, 7)) {
        const auto tr = run_task(t, {ModeKind::no_tool, false}, {}, mock);
        EXPECT_EQ(tr.judgment.correct, mock.necessity(t) == 0) << t.task_id;
    }
}

TEST(MockAgent, LlamaLikeReasonThenActNarrates) {
    const auto& all = w2t_test::single_hop_tasks();
    MockBackend mock(MockProfile::llama_like(0), all);
    long calls = 0;
    for (const auto& t : w2t_test::pick(all, Split::test, 15)) calls += run_task(t, {ModeKind::default_mode, true}, {}, mock).tool_call_count;
    EXPECT_EQ(calls, 0);
}

TEST(Labeling, MatchesPlantedLabels) {
    const auto& all = w2t_test::single_hop_tasks();
    const auto tasks = w2t_test::pick(all, Split::train, 3);
    MockBackend mock(MockProfile::oracle_signal(0), all);
    const auto res = run_no_tool_labeling(tasks, mock, {}, 3);
    ASSERT_EQ(res.labels.size(), tasks.size());
    EXPECT_TRUE(res.excluded.empty());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        EXPECT_EQ(res.labels[i].task_id, tasks[i].task_id);
        EXPECT_EQ(res.labels[i].y, mock.necessity(tasks[i]));
    }
    w2t_test::DeadBackend dead;
    const auto failed = run_no_tool_labeling(tasks, dead);
    EXPECT_TRUE(failed.labels.empty());
    EXPECT_EQ(failed.excluded.size(), tasks.size());
}

TEST(Features, EncodingPassOnly) {
    ScriptedBackend backend([](const BackendRequest&, int) { return std::string(); });
    const auto h = extract_features(calc_task(), backend);
    ASSERT_EQ(backend.requests.size(), 1u);
    EXPECT_TRUE(backend.requests[0].want_hidden_states);
    EXPECT_LE(backend.requests[0].max_tokens, 0);
    EXPECT_EQ(backend.requests[0].messages, build_prompt(calc_task(), {}));
    EXPECT_EQ(h.task_id, calc_task().task_id);
    EXPECT_EQ(h.values.size(), 6u);
}

TEST(ParallelFor, CoversRangeAndRethrows) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_THROW(parallel_for(10, 3,
                              [](std::size_t i) {
                                  if (i == 7) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}
