#include "when2tool/agent.hpp"
#include "when2tool/evaluator.hpp"
#include "when2tool/probe.hpp"
#include "when2tool/taskgen.hpp"
#include "when2tool/toolkit/arith.hpp"
#include "when2tool/toolkit/dispatch.hpp"
#include "when2tool/toolkit/pyinterp.hpp"
#include "when2tool/toolkit/regex.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace when2tool;

namespace {

ProbeModel random_probe(int layers, int dim) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    ProbeModel m;
    m.layer_count = layers;
    m.hidden_dim = dim;
    const std::size_t n = static_cast<std::size_t>(layers) * static_cast<std::size_t>(dim);
    m.mean.resize(n);
    m.scale.assign(n, 1.0);
    m.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.mean[i] = z(rng);
        m.weights[i] = z(rng) * 1e-3;
    }
    return m;
}

HiddenFeatures random_features(int layers, int dim) {
    std::mt19937_64 rng(2);
    std::normal_distribution<float> z;
    HiddenFeatures h{{}, layers, dim, "bench"};
    h.values.resize(static_cast<std::size_t>(layers) * static_cast<std::size_t>(dim));
    for (auto& v : h.values) v = z(rng);
    return h;
}

}  // namespace

// Probe decision at the largest evaluated model size (81 layers x 8192).
static void BM_ProbeDecide(benchmark::State& state) {
    const int layers = static_cast<int>(state.range(0)), dim = static_cast<int>(state.range(1));
    const auto m = random_probe(layers, dim);
    const auto h = random_features(layers, dim);
    for (auto _ : state) benchmark::DoNotOptimize(probe_decide(m, h, 0.5));
    state.SetItemsProcessed(state.iterations() * layers * dim);
}
BENCHMARK(BM_ProbeDecide)->Args({37, 2560})->Args({81, 8192})->Unit(benchmark::kMicrosecond);

static void BM_TrainProbe(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::normal_distribution<float> z;
    Dataset d;
    const int n = 900, dim = static_cast<int>(state.range(0));
    for (int i = 0; i < n; ++i) {
        const int y = i % 2;
        std::vector<float> row(dim);
        for (auto& v : row) v = z(rng);
        row[0] += y ? 1.0f : -1.0f;
        d.rows.push_back(std::move(row));
        d.labels.push_back(y);
    }
    for (auto _ : state) benchmark::DoNotOptimize(train_probe(d, TrainOptions{}));
}
BENCHMARK(BM_TrainProbe)->Arg(576)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_GenerateBenchmark(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(generate_benchmark(0, BenchmarkManifest::full(0)));
}
BENCHMARK(BM_GenerateBenchmark)->Unit(benchmark::kMillisecond);

static void BM_CalcHard(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(toolkit::calc_evaluate("(4817263519284 * 9182736450192 - 1234567890123) // 7 + 31 ** 17"));
}
BENCHMARK(BM_CalcHard);

static void BM_Determinant5(benchmark::State& state) {
    const toolkit::IntMatrix m{{3, -7, 12, 5, 9}, {14, 2, -8, 6, 1}, {-4, 11, 3, 7, -2}, {8, 0, -5, 13, 4}, {6, -9, 10, 2, 15}};
    for (auto _ : state) benchmark::DoNotOptimize(toolkit::matrix_determinant(m));
}
BENCHMARK(BM_Determinant5);

static void BM_NthPrime(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(toolkit::nth_prime(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_NthPrime)->Arg(1000)->Arg(100000);

static void BM_RegexFindall(benchmark::State& state) {
    const std::string text = "contact user@example.com, admin@test.org and ops@corp.net before 2024-03-10";
    for (auto _ : state) benchmark::DoNotOptimize(toolkit::regex_findall(R"((\w+)@(\w+)\.(\w+))", text));
}
BENCHMARK(BM_RegexFindall);

static void BM_CodeRunCollatz(benchmark::State& state) {
    const std::string code = "n = 27\nsteps = 0\nwhile n != 1:\n    n = n // 2 if n % 2 == 0 else 3 * n + 1\n    steps += 1\nprint(steps)";
    for (auto _ : state) benchmark::DoNotOptimize(toolkit::code_run(code));
}
BENCHMARK(BM_CodeRunCollatz);

static void BM_ParseToolCalls(benchmark::State& state) {
    const auto specs = toolkit::tools_for_env("CalculatorEnv");
    const std::string text = "I will compute this. {\"name\": \"evaluate_expression\", \"arguments\": {\"expr\": \"(12 + 30) * 7\"}}";
    for (auto _ : state) benchmark::DoNotOptimize(parse_tool_calls(text, specs));
}
BENCHMARK(BM_ParseToolCalls);

static void BM_JudgeDate(benchmark::State& state) {
    const AnswerValue expected{AnswerKind::date, "2024-03-10", -1};
    const std::string out = "The meeting falls on \\boxed{Sunday, March 10, 2024}.";
    for (auto _ : state) benchmark::DoNotOptimize(judge(extract_answer(out), expected));
}
BENCHMARK(BM_JudgeDate);

BENCHMARK_MAIN();
