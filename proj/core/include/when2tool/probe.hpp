#pragma once

#include "when2tool/backend.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace when2tool {

enum class LayerSelection { all, mid, last };

std::string_view to_string(LayerSelection s);
LayerSelection parse_layer_selection(std::string_view s);

/// Layer index used by mid/last; -1 for all.
int selected_layer(int layer_count, LayerSelection s);

/// all: the full L*d vector; mid: layer floor(L/2); last: layer L-1.
std::vector<float> select_layers(const HiddenFeatures& features, LayerSelection s);

class ProbeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrainOptions {
    double lambda = 1e4;
    LayerSelection layers = LayerSelection::all;
    double temperature = 2.0;
    std::uint64_t seed = 0;
    int max_iterations = 2000;
    double gradient_tolerance = 1e-6;
};

struct TrainingMeta {
    int n_train = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    double gradient_norm = 0.0;
    double objective = 0.0;
    bool converged = false;
};

struct ProbeModel {
    int layer_count = 0;
    int hidden_dim = 0;
    LayerSelection layers = LayerSelection::all;
    std::vector<double> mean;
    std::vector<double> scale;  // population std; 1 where the feature is constant
    std::vector<double> weights;
    double bias = 0.0;
    double lambda = 1e4;
    double temperature = 2.0;
    TrainingMeta meta;

    std::size_t dimension() const { return weights.size(); }
    double weight_norm() const;
};

enum class Decision { direct, tool };

std::string_view to_string(Decision d);

struct ProbeDecision {
    std::string task_id;
    double logit = 0.0;
    double probability = 0.0;
    double threshold = 0.5;
    Decision decision = Decision::direct;
};

/// Rows of already layer-selected features with binary labels.
struct Dataset {
    std::vector<std::vector<float>> rows;
    std::vector<int> labels;
};

/// Minimizes mean logistic loss + lambda/(2n) * ||w||^2 on z-scored features with
/// L-BFGS from w = 0, b = logit(base rate). Throws ProbeError on a single class or
/// inconsistent dimensions.
ProbeModel train_probe(const Dataset& data, const TrainOptions& options);
ProbeModel train_probe(const std::vector<HiddenFeatures>& features, const std::vector<int>& labels,
                       const TrainOptions& options);

/// z = w . zscore(x) + b on an already-selected vector. Throws ProbeError on a dimension mismatch.
double probe_logit(const ProbeModel& model, std::span<const float> selected);
double probe_logit(const ProbeModel& model, const HiddenFeatures& features);

double sigmoid(double x);

/// p = sigmoid(z / T); tool iff p >= tau. Requires 0 < tau < 1.
ProbeDecision decide_from_logit(double logit, double temperature, double tau);
ProbeDecision probe_decide(const ProbeModel& model, const HiddenFeatures& features, double tau);
ProbeDecision probe_decide(const ProbeModel& model, std::span<const float> selected, double tau);

/// Mann-Whitney statistic with ties counted 1/2. Throws ProbeError unless both classes occur.
double auroc(std::span<const double> scores, std::span<const int> labels);

/// Fraction of correct decisions at threshold tau on probabilities sigmoid(z).
double probe_accuracy(std::span<const double> logits, std::span<const int> labels, double tau = 0.5);

struct FractionResult {
    double fraction = 0.0;
    std::vector<double> aurocs;  // one per seed
    double mean_auroc = 0.0;
};

/// Stratified subsampling of the training set per (fraction, seed), test AUROC each time.
std::vector<FractionResult> data_fraction_study(const Dataset& train, const Dataset& test, const std::vector<double>& fractions,
                                                const std::vector<std::uint64_t>& seeds, const TrainOptions& options);

/// Stratified subsample keeping round(fraction * class size) of each class (at least 2).
Dataset stratified_subsample(const Dataset& data, double fraction, std::uint64_t seed);

nlohmann::json probe_to_json(const ProbeModel& model);
ProbeModel probe_from_json(const nlohmann::json& j);
void save_probe(const std::filesystem::path& path, const ProbeModel& model);
ProbeModel load_probe(const std::filesystem::path& path);

}  // namespace when2tool
