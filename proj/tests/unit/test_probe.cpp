#include "when2tool/common.hpp"
#include "when2tool/probe.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace when2tool;

namespace {

/// Two Gaussian blobs separated along the first coordinate by `gap`.
Dataset blobs(int n, int dim, double gap, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    Dataset d;
    for (int i = 0; i < n; ++i) {
        const int y = i % 3 == 0 ? 1 : 0;
        std::vector<float> row(dim);
        for (auto& v : row) v = static_cast<float>(z(rng));
        row[0] += static_cast<float>(y ? gap / 2 : -gap / 2);
        d.rows.push_back(std::move(row));
        d.labels.push_back(y);
    }
    return d;
}

double brute_auroc(const std::vector<double>& s, const std::vector<int>& y) {
    double num = 0, pairs = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (y[i] == 1 && y[j] == 0) {
                pairs += 1;
                num += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
            }
    return num / pairs;
}

std::vector<double> logits_of(const ProbeModel& m, const Dataset& d) {
    std::vector<double> out;
    for (const auto& r : d.rows) out.push_back(probe_logit(m, r));
    return out;
}

TrainOptions opts(double lambda) {
    TrainOptions o;
    o.lambda = lambda;
    return o;
}

}  // namespace

TEST(Layers, Selection) {
    HiddenFeatures h{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}, 5, 3, "t"};
    EXPECT_EQ(select_layers(h, LayerSelection::all).size(), 15u);
    EXPECT_EQ(select_layers(h, LayerSelection::mid), (std::vector<float>{6, 7, 8}));
    EXPECT_EQ(select_layers(h, LayerSelection::last), (std::vector<float>{12, 13, 14}));
    EXPECT_EQ(selected_layer(81, LayerSelection::mid), 40);
    EXPECT_EQ(selected_layer(81, LayerSelection::last), 80);
    EXPECT_EQ(selected_layer(81, LayerSelection::all), -1);
    EXPECT_EQ(parse_layer_selection("mid"), LayerSelection::mid);
}

TEST(Auroc, MatchesBruteForcePairsWithTies) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coarse(0, 5), bit(0, 1);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> s;
        std::vector<int> y;
        for (int i = 0; i < 40; ++i) {
            s.push_back(coarse(rng));
            y.push_back(bit(rng));
        }
        y[0] = 0;
        y[1] = 1;
        EXPECT_NEAR(auroc(s, y), brute_auroc(s, y), 1e-12);
    }
    const std::vector<double> s{1, 2, 3};
    EXPECT_THROW(auroc(s, std::vector<int>{1, 1, 1}), ProbeError);
    EXPECT_DOUBLE_EQ(auroc(s, std::vector<int>{0, 0, 1}), 1.0);
    EXPECT_DOUBLE_EQ(auroc(s, std::vector<int>{1, 0, 0}), 0.0);
}

TEST(Decide, SigmoidTemperatureThreshold) {
    EXPECT_DOUBLE_EQ(sigmoid(0), 0.5);
    EXPECT_NEAR(sigmoid(800), 1.0, 1e-15);
    EXPECT_NEAR(sigmoid(-800), 0.0, 1e-300);
    const auto d = decide_from_logit(2.0, 2.0, 0.5);
    EXPECT_NEAR(d.probability, sigmoid(1.0), 1e-15);
    EXPECT_EQ(d.decision, Decision::tool);
    EXPECT_EQ(decide_from_logit(0.0, 2.0, 0.5).decision, Decision::tool);  // p >= tau
    EXPECT_EQ(decide_from_logit(-0.01, 2.0, 0.5).decision, Decision::direct);
    EXPECT_THROW(decide_from_logit(0, 2, 0.0), ArgumentError);
    EXPECT_THROW(decide_from_logit(0, 2, 1.0), ArgumentError);
    // Raising tau never turns a direct decision into a tool decision.
    for (double z = -6; z <= 6; z += 0.25) {
        bool was_direct = false;
        for (double tau = 0.05; tau < 1; tau += 0.05) {
            const bool direct = decide_from_logit(z, 2.0, tau).decision == Decision::direct;
            EXPECT_FALSE(was_direct && !direct);
            was_direct = direct;
        }
    }
}

TEST(Train, SeparatesPlantedSignal) {
    const auto train = blobs(600, 20, 4.0, 1), test = blobs(600, 20, 4.0, 2);
    const auto m = train_probe(train, opts(1.0));
    EXPECT_TRUE(m.meta.converged);
    EXPECT_EQ(m.meta.n_train, 600);
    EXPECT_GT(auroc(logits_of(m, test), test.labels), 0.95);
    EXPECT_GT(probe_accuracy(logits_of(m, test), test.labels), 0.9);
    // The planted coordinate dominates the weights.
    for (std::size_t i = 1; i < m.weights.size(); ++i) EXPECT_GT(std::abs(m.weights[0]), 3 * std::abs(m.weights[i]));
}

TEST(Train, NoSignalIsNearChance) {
    const auto train = blobs(600, 20, 0.0, 5), test = blobs(600, 20, 0.0, 6);
    const auto m = train_probe(train, opts(1e4));
    EXPECT_NEAR(auroc(logits_of(m, test), test.labels), 0.5, 0.08);
}

TEST(Train, HeavyRegularizationShrinksToBaseRate) {
    const auto d = blobs(300, 10, 3.0, 7);
    double prev = INFINITY;
    for (double lambda : {1e-2, 1e0, 1e2, 1e4, 1e6, 1e9}) {
        const auto m = train_probe(d, opts(lambda));
        EXPECT_LE(m.weight_norm(), prev * (1 + 1e-6)) << lambda;
        prev = m.weight_norm();
    }
    const auto m = train_probe(d, opts(1e9));
    EXPECT_LT(m.weight_norm(), 1e-5);
    EXPECT_NEAR(m.bias, std::log(100.0 / 200.0), 1e-4);
}

TEST(Train, StandardizationAndConstantFeatures) {
    auto d = blobs(200, 4, 3.0, 9);
    for (auto& r : d.rows) {
        r[1] = 7.0f;          // constant
        r[2] *= 1000.0f;      // large scale
    }
    const auto m = train_probe(d, opts(1.0));
    EXPECT_DOUBLE_EQ(m.scale[1], 1.0);
    EXPECT_DOUBLE_EQ(m.weights[1], 0.0);
    EXPECT_NEAR(m.mean[1], 7.0, 1e-9);
    EXPECT_GT(m.scale[2], 500.0);
    for (double w : m.weights) EXPECT_TRUE(std::isfinite(w));
    // Affine rescaling of a feature leaves the standardized fit unchanged.
    auto scaled = d;
    for (auto& r : scaled.rows) r[0] = r[0] * 10.0f + 3.0f;
    const auto m2 = train_probe(scaled, opts(1.0));
    EXPECT_NEAR(m2.weights[0], m.weights[0], 1e-3);
}

TEST(Train, Errors) {
    Dataset one_class = blobs(30, 3, 1.0, 1);
    for (auto& y : one_class.labels) y = 1;
    EXPECT_THROW(train_probe(one_class, opts(1.0)), ProbeError);
    Dataset ragged = blobs(30, 3, 1.0, 1);
    ragged.rows[4].push_back(1.0f);
    EXPECT_THROW(train_probe(ragged, opts(1.0)), ProbeError);
    Dataset mismatch = blobs(30, 3, 1.0, 1);
    mismatch.labels.pop_back();
    EXPECT_THROW(train_probe(mismatch, opts(1.0)), ProbeError);
    const auto m = train_probe(blobs(30, 3, 1.0, 1), opts(1.0));
    const std::vector<float> wrong(4, 0.0f);
    EXPECT_THROW(probe_logit(m, wrong), ProbeError);
}

TEST(Train, HiddenFeatureOverloadSelectsLayers) {
    const auto d = blobs(120, 6, 4.0, 11);
    std::vector<HiddenFeatures> hs;
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        std::vector<float> v(12, 0.0f);
        std::copy(d.rows[i].begin(), d.rows[i].end(), v.begin() + 6);  // layer 1 of 2
        hs.push_back({v, 2, 6, std::to_string(i)});
    }
    TrainOptions o = opts(1.0);
    o.layers = LayerSelection::last;
    const auto a = train_probe(hs, d.labels, o);
    const auto b = train_probe(d, o);
    EXPECT_EQ(a.dimension(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(a.weights[i], b.weights[i], 1e-9);
    EXPECT_NEAR(probe_logit(a, hs[3]), probe_logit(b, d.rows[3]), 1e-9);
}

TEST(Persistence, SaveLoadRoundTrip) {
    const auto d = blobs(120, 8, 3.0, 13);
    const auto m = train_probe(d, opts(10.0));
    const auto path = std::filesystem::temp_directory_path() / "w2t_probe_roundtrip.json";
    save_probe(path, m);
    const auto back = load_probe(path);
    std::filesystem::remove(path);
    EXPECT_EQ(back.dimension(), m.dimension());
    EXPECT_EQ(back.layers, m.layers);
    EXPECT_EQ(back.meta.n_train, m.meta.n_train);
    for (const auto& r : d.rows) EXPECT_NEAR(probe_logit(back, r), probe_logit(m, r), 1e-4);
    auto bad = probe_to_json(m);
    bad["format"] = "something-else";
    EXPECT_THROW(probe_from_json(bad), ProbeError);
}

TEST(Fractions, StratifiedSubsampleAndStudy) {
    const auto d = blobs(300, 5, 3.0, 17);
    const auto half = stratified_subsample(d, 0.5, 1);
    EXPECT_EQ(half.rows.size(), 150u);
    EXPECT_EQ(std::count(half.labels.begin(), half.labels.end(), 1), 50);
    const auto tiny = stratified_subsample(d, 0.001, 1);
    EXPECT_EQ(std::count(tiny.labels.begin(), tiny.labels.end(), 1), 2);
    EXPECT_EQ(std::count(tiny.labels.begin(), tiny.labels.end(), 0), 2);
    const auto res = data_fraction_study(d, blobs(300, 5, 3.0, 18), {0.1, 1.0}, {0, 1, 2}, opts(1.0));
    ASSERT_EQ(res.size(), 2u);
    EXPECT_EQ(res[0].aurocs.size(), 3u);
    EXPECT_GT(res[1].mean_auroc, 0.9);
}
