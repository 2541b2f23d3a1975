#include "support.hpp"

#include "when2tool/mock_backend.hpp"
#include "when2tool/pipeline.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace when2tool;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(FeatureCache, PersistsAndSkipsRecompute) {
    TempDir dir("w2t_cache_test");
    const auto tasks = w2t_test::pick(w2t_test::single_hop_tasks(), Split::train, 60);
    MockBackend mock(MockProfile::oracle_signal(0), w2t_test::single_hop_tasks());
    std::vector<HiddenFeatures> first;
    {
        FeatureCache cache(dir.path);
        first = cache.get_or_extract(tasks, mock, 2);
        EXPECT_EQ(cache.extracted(), tasks.size());
        EXPECT_TRUE(fs::exists(cache.file_for(mock.model_tag())));
    }
    const auto served = mock.requests_served();
    FeatureCache reopened(dir.path);
    const auto second = reopened.get_or_extract(tasks, mock, 2);
    EXPECT_EQ(reopened.extracted(), 0u);
    EXPECT_EQ(mock.requests_served(), served);
    ASSERT_EQ(second.size(), first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        EXPECT_EQ(second[i].task_id, tasks[i].task_id);
        EXPECT_EQ(second[i].values, first[i].values);
    }
    EXPECT_FALSE(reopened.find("another-model", tasks[0].task_id));
}

TEST(FeatureCache, InMemoryOnly) {
    FeatureCache cache;
    HiddenFeatures h{{1, 2, 3, 4}, 2, 2, "a"};
    cache.put("m", h);
    ASSERT_TRUE(cache.find("m", "a"));
    EXPECT_EQ(cache.find("m", "a")->values, h.values);
    EXPECT_FALSE(cache.find("m", "b"));
}

TEST(ProbePrefill, DecisionPicksMatchingPrefill) {
    EXPECT_EQ(prefill_for(Decision::direct, true).kind, PrefillKind::hard_direct);
    EXPECT_EQ(prefill_for(Decision::tool, true).kind, PrefillKind::hard_tool);
    EXPECT_EQ(prefill_for(Decision::direct, false).kind, PrefillKind::soft_direct);
    EXPECT_EQ(prefill_for(Decision::tool, false).kind, PrefillKind::soft_tool);
    EXPECT_EQ(parse_prefill_strategy("probe-hard"), PrefillStrategy::probe_hard);
}

TEST(ProbePrefill, ThresholdExtremesForceTheBranch) {
    const auto& all = w2t_test::single_hop_tasks();
    MockBackend mock(MockProfile::oracle_signal(0), all);
    // A one-feature probe reading the first hidden coordinate.
    ProbeModel probe;
    probe.layer_count = 1;
    probe.hidden_dim = 1;
    probe.layers = LayerSelection::all;
    probe.mean = {0.0};
    probe.scale = {1.0};
    probe.weights = {0.0};
    probe.bias = 0.0;
    probe.temperature = 1.0;
    HiddenFeatures h{{0.0f}, 1, 1, ""};
    for (const auto& t : w2t_test::pick(all, Split::test, 100)) {
        h.task_id = t.task_id;
        const auto direct = run_probe_prefill(t, {}, probe, h, 0.99, true, mock);
        EXPECT_EQ(direct.tool_call_count, 0) << t.task_id;
        EXPECT_EQ(direct.prefill.kind, PrefillKind::hard_direct);
        EXPECT_DOUBLE_EQ(*direct.probe_p, 0.5);
        const auto tool = run_probe_prefill(t, {}, probe, h, 0.01, true, mock);
        EXPECT_GE(tool.tool_call_count, 1) << t.task_id;
        EXPECT_TRUE(tool.judgment.correct) << t.task_id;
    }
}
