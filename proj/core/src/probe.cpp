#include "when2tool/probe.hpp"

#include "when2tool/common.hpp"
#include "when2tool/io.hpp"
#include "when2tool/rng.hpp"

#include <Eigen/Dense>
#include <ceres/ceres.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace when2tool {

using nlohmann::json;

namespace {

constexpr std::string_view kProbeFormat = "when2tool-probe-1";

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

class LogisticObjective final : public ceres::FirstOrderFunction {
public:
    LogisticObjective(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda) : x_(x), y_(y), lambda_(lambda) {}

    bool Evaluate(const double* params, double* cost, double* gradient) const override {
        const auto d = x_.cols();
        const double n = static_cast<double>(x_.rows());
        const Eigen::Map<const Eigen::VectorXd> w(params, d);
        const double b = params[d];
        const Eigen::VectorXd z = (x_ * w).array() + b;
        double loss = 0.0;
        Eigen::VectorXd r(z.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            loss += softplus(z[i]) - y_[i] * z[i];
            r[i] = sigmoid(z[i]) - y_[i];
        }
        *cost = loss / n + lambda_ / (2.0 * n) * w.squaredNorm();
        if (gradient) {
            Eigen::Map<Eigen::VectorXd> g(gradient, d);
            g = x_.transpose() * r / n + (lambda_ / n) * w;
            gradient[d] = r.sum() / n;
        }
        return true;
    }

    int NumParameters() const override { return static_cast<int>(x_.cols()) + 1; }

private:
    const Eigen::MatrixXd& x_;
    const Eigen::VectorXd& y_;
    double lambda_;
};

void check_dataset(const Dataset& data) {
    if (data.rows.size() != data.labels.size()) throw ProbeError("features and labels differ in length");
    if (data.rows.empty()) throw ProbeError("empty training set");
    const std::size_t dim = data.rows.front().size();
    if (dim == 0) throw ProbeError("zero-dimensional features");
    std::size_t pos = 0;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        if (data.rows[i].size() != dim) throw ProbeError("inconsistent feature dimensions");
        if (data.labels[i] != 0 && data.labels[i] != 1) throw ProbeError("labels must be 0 or 1");
        pos += static_cast<std::size_t>(data.labels[i]);
    }
    if (pos < 2 || data.rows.size() - pos < 2) throw ProbeError("training needs at least two examples of each class");
}

}  // namespace

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

std::string_view to_string(LayerSelection s) {
    switch (s) {
        case LayerSelection::all: return "all";
        case LayerSelection::mid: return "mid";
        case LayerSelection::last: return "last";
    }
    return "?";
}

LayerSelection parse_layer_selection(std::string_view s) {
    if (s == "all") return LayerSelection::all;
    if (s == "mid") return LayerSelection::mid;
    if (s == "last") return LayerSelection::last;
    throw ArgumentError("unknown layer selection: " + std::string(s));
}

std::string_view to_string(Decision d) { return d == Decision::tool ? "tool" : "direct"; }

int selected_layer(int layer_count, LayerSelection s) {
    switch (s) {
        case LayerSelection::all: return -1;
        case LayerSelection::mid: return layer_count / 2;
        case LayerSelection::last: return layer_count - 1;
    }
    return -1;
}

std::vector<float> select_layers(const HiddenFeatures& f, LayerSelection s) {
    const std::size_t expect = static_cast<std::size_t>(f.layer_count) * static_cast<std::size_t>(f.hidden_dim);
    if (f.layer_count <= 0 || f.hidden_dim <= 0 || f.values.size() != expect) {
        throw ProbeError("hidden vector length does not equal L*d");
    }
    if (s == LayerSelection::all) return f.values;
    const auto layer = static_cast<std::size_t>(selected_layer(f.layer_count, s));
    const auto d = static_cast<std::size_t>(f.hidden_dim);
    return {f.values.begin() + static_cast<std::ptrdiff_t>(layer * d), f.values.begin() + static_cast<std::ptrdiff_t>((layer + 1) * d)};
}

double ProbeModel::weight_norm() const {
    double s = 0.0;
    for (double w : weights) s += w * w;
    return std::sqrt(s);
}

ProbeModel train_probe(const Dataset& data, const TrainOptions& options) {
    check_dataset(data);
    if (!(options.lambda >= 0.0)) throw ArgumentError("lambda must be non-negative");
    if (!(options.temperature > 0.0)) throw ArgumentError("temperature must be positive");
    const auto n = static_cast<Eigen::Index>(data.rows.size());
    const auto d = static_cast<Eigen::Index>(data.rows.front().size());

    ProbeModel m;
    m.layers = options.layers;
    m.lambda = options.lambda;
    m.temperature = options.temperature;
    m.mean.assign(static_cast<std::size_t>(d), 0.0);
    m.scale.assign(static_cast<std::size_t>(d), 1.0);

    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < d; ++k) x(i, k) = data.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    std::vector<bool> constant(static_cast<std::size_t>(d), false);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double mu = x.col(k).mean();
        const double var = (x.col(k).array() - mu).square().mean();
        const double sd = std::sqrt(var);
        const auto ku = static_cast<std::size_t>(k);
        m.mean[ku] = mu;
        if (sd > 0.0 && std::isfinite(sd)) {
            m.scale[ku] = sd;
        } else {
            constant[ku] = true;
        }
        x.col(k) = (x.col(k).array() - mu) / m.scale[ku];
    }
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = data.labels[static_cast<std::size_t>(i)];

    const double base = y.mean();
    std::vector<double> params(static_cast<std::size_t>(d) + 1, 0.0);
    params.back() = std::log(base / (1.0 - base));

    auto* objective = new LogisticObjective(x, y, options.lambda);
    ceres::GradientProblem problem(objective);
    ceres::GradientProblemSolver::Options opts;
    opts.line_search_direction_type = ceres::LBFGS;
    opts.max_num_iterations = options.max_iterations;
    // Ceres tests the max-norm; dividing by sqrt(D+1) makes the 2-norm meet the tolerance.
    opts.gradient_tolerance = options.gradient_tolerance / std::sqrt(static_cast<double>(d + 1));
    opts.function_tolerance = 1e-20;
    opts.parameter_tolerance = 1e-20;
    opts.logging_type = ceres::SILENT;
    opts.minimizer_progress_to_stdout = false;
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(opts, problem, params.data(), &summary);

    m.weights.assign(params.begin(), params.end() - 1);
    for (std::size_t k = 0; k < m.weights.size(); ++k) {
        if (constant[k]) m.weights[k] = 0.0;
    }
    m.bias = params.back();

    std::vector<double> grad(params.size());
    double cost = 0.0;
    objective->Evaluate(params.data(), &cost, grad.data());
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    m.meta.n_train = static_cast<int>(n);
    m.meta.seed = options.seed;
    m.meta.iterations = static_cast<int>(summary.iterations.size());
    m.meta.gradient_norm = std::sqrt(gnorm);
    m.meta.objective = cost;
    m.meta.converged = m.meta.gradient_norm <= options.gradient_tolerance;
    return m;
}

ProbeModel train_probe(const std::vector<HiddenFeatures>& features, const std::vector<int>& labels, const TrainOptions& options) {
    if (features.empty()) throw ProbeError("empty training set");
    Dataset data;
    data.labels = labels;
    data.rows.reserve(features.size());
    for (const auto& f : features) {
        if (f.layer_count != features.front().layer_count || f.hidden_dim != features.front().hidden_dim) {
            throw ProbeError("inconsistent feature dimensions");
        }
        data.rows.push_back(select_layers(f, options.layers));
    }
    ProbeModel m = train_probe(data, options);
    m.layer_count = features.front().layer_count;
    m.hidden_dim = features.front().hidden_dim;
    return m;
}

double probe_logit(const ProbeModel& model, std::span<const float> x) {
    const std::size_t d = model.weights.size();
    if (x.size() != d) {
        throw ProbeError("feature dimension " + std::to_string(x.size()) + " does not match probe dimension " + std::to_string(d));
    }
    const double* w = model.weights.data();
    const double* mu = model.mean.data();
    const double* sd = model.scale.data();
    double z = model.bias;
    for (std::size_t i = 0; i < d; ++i) z += w[i] * ((static_cast<double>(x[i]) - mu[i]) / sd[i]);
    return z;
}

double probe_logit(const ProbeModel& model, const HiddenFeatures& f) {
    if (model.layer_count > 0 && (f.layer_count != model.layer_count || f.hidden_dim != model.hidden_dim)) {
        throw ProbeError("feature shape does not match the probe");
    }
    if (model.layers == LayerSelection::all) {
        if (f.values.size() != static_cast<std::size_t>(f.layer_count) * static_cast<std::size_t>(f.hidden_dim)) {
            throw ProbeError("hidden vector length does not equal L*d");
        }
        return probe_logit(model, std::span<const float>(f.values));
    }
    const auto sel = select_layers(f, model.layers);
    return probe_logit(model, std::span<const float>(sel));
}

ProbeDecision decide_from_logit(double logit, double temperature, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw ArgumentError("threshold must lie in (0, 1)");
    if (!(temperature > 0.0)) throw ArgumentError("temperature must be positive");
    ProbeDecision d;
    d.logit = logit;
    d.probability = sigmoid(logit / temperature);
    d.threshold = tau;
    d.decision = d.probability >= tau ? Decision::tool : Decision::direct;
    return d;
}

ProbeDecision probe_decide(const ProbeModel& model, const HiddenFeatures& features, double tau) {
    ProbeDecision d = decide_from_logit(probe_logit(model, features), model.temperature, tau);
    d.task_id = features.task_id;
    return d;
}

ProbeDecision probe_decide(const ProbeModel& model, std::span<const float> selected, double tau) {
    return decide_from_logit(probe_logit(model, selected), model.temperature, tau);
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ProbeError("scores and labels differ in length");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum = 0.0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) {
                rank_sum += mid;
                ++pos;
            }
        }
        i = j + 1;
    }
    const std::size_t neg = n - pos;
    if (pos == 0 || neg == 0) throw ProbeError("AUROC needs both classes");
    const double p = static_cast<double>(pos);
    return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

double probe_accuracy(std::span<const double> logits, std::span<const int> labels, double tau) {
    if (logits.size() != labels.size() || logits.empty()) throw ProbeError("logits and labels must be non-empty and equal length");
    std::size_t ok = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) ok += (sigmoid(logits[i]) >= tau ? 1 : 0) == labels[i];
    return static_cast<double>(ok) / static_cast<double>(logits.size());
}

Dataset stratified_subsample(const Dataset& data, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("fraction must lie in (0, 1]");
    if (data.rows.size() != data.labels.size()) throw ProbeError("features and labels differ in length");
    std::vector<std::size_t> idx[2];
    for (std::size_t i = 0; i < data.labels.size(); ++i) idx[data.labels[i] == 1].push_back(i);
    Rng rng(hash64(seed, std::string_view("subsample"), static_cast<std::uint64_t>(std::llround(fraction * 1e6))));
    std::vector<std::size_t> keep;
    for (auto& cls : idx) {
        if (cls.empty()) throw ProbeError("subsample source lacks a class");
        const auto k = std::min(cls.size(), std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(cls.size())))));
        if (fraction < 1.0) rng.shuffle(cls);
        keep.insert(keep.end(), cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(k));
    }
    std::sort(keep.begin(), keep.end());
    Dataset out;
    for (auto i : keep) {
        out.rows.push_back(data.rows[i]);
        out.labels.push_back(data.labels[i]);
    }
    return out;
}

std::vector<FractionResult> data_fraction_study(const Dataset& train, const Dataset& test, const std::vector<double>& fractions,
                                                const std::vector<std::uint64_t>& seeds, const TrainOptions& options) {
    if (seeds.empty()) throw ArgumentError("at least one seed is required");
    std::vector<FractionResult> out;
    for (double f : fractions) {
        FractionResult r;
        r.fraction = f;
        for (auto seed : seeds) {
            const Dataset sub = stratified_subsample(train, f, seed);
            TrainOptions o = options;
            o.seed = seed;
            const ProbeModel m = train_probe(sub, o);
            std::vector<double> z;
            z.reserve(test.rows.size());
            for (const auto& row : test.rows) z.push_back(probe_logit(m, std::span<const float>(row)));
            r.aurocs.push_back(auroc(z, test.labels));
        }
        r.mean_auroc = std::accumulate(r.aurocs.begin(), r.aurocs.end(), 0.0) / static_cast<double>(r.aurocs.size());
        out.push_back(std::move(r));
    }
    return out;
}

json probe_to_json(const ProbeModel& m) {
    auto floats = [](const std::vector<double>& v) {
        std::vector<float> f(v.begin(), v.end());
        return io::encode_floats(f);
    };
    return json{{"format", kProbeFormat},
                {"layer_count", m.layer_count},
                {"hidden_dim", m.hidden_dim},
                {"layers", to_string(m.layers)},
                {"dimension", m.weights.size()},
                {"lambda", m.lambda},
                {"temperature", m.temperature},
                {"bias", m.bias},
                {"meta",
                 {{"n_train", m.meta.n_train},
                  {"seed", m.meta.seed},
                  {"iterations", m.meta.iterations},
                  {"gradient_norm", m.meta.gradient_norm},
                  {"objective", m.meta.objective},
                  {"converged", m.meta.converged}}},
                {"mean_b64", floats(m.mean)},
                {"scale_b64", floats(m.scale)},
                {"weights_b64", floats(m.weights)}};
}

ProbeModel probe_from_json(const json& j) {
    try {
        if (j.at("format").get<std::string>() != kProbeFormat) throw ProbeError("unsupported probe format");
        ProbeModel m;
        m.layer_count = j.at("layer_count").get<int>();
        m.hidden_dim = j.at("hidden_dim").get<int>();
        m.layers = parse_layer_selection(j.at("layers").get<std::string>());
        m.lambda = j.at("lambda").get<double>();
        m.temperature = j.at("temperature").get<double>();
        m.bias = j.at("bias").get<double>();
        const auto& meta = j.at("meta");
        m.meta.n_train = meta.value("n_train", 0);
        m.meta.seed = meta.value("seed", std::uint64_t{0});
        m.meta.iterations = meta.value("iterations", 0);
        m.meta.gradient_norm = meta.value("gradient_norm", 0.0);
        m.meta.objective = meta.value("objective", 0.0);
        m.meta.converged = meta.value("converged", false);
        auto doubles = [&](const char* key) {
            const auto f = io::decode_floats(j.at(key).get<std::string>());
            return std::vector<double>(f.begin(), f.end());
        };
        m.mean = doubles("mean_b64");
        m.scale = doubles("scale_b64");
        m.weights = doubles("weights_b64");
        const auto dim = j.at("dimension").get<std::size_t>();
        if (m.mean.size() != dim || m.scale.size() != dim || m.weights.size() != dim) throw ProbeError("probe arrays disagree with dimension");
        if (std::any_of(m.scale.begin(), m.scale.end(), [](double s) { return !(s > 0.0); })) throw ProbeError("probe scale must be positive");
        if (!(m.temperature > 0.0)) throw ProbeError("probe temperature must be positive");
        return m;
    } catch (const ProbeError&) {
        throw;
    } catch (const std::exception& e) {
        throw ProbeError(std::string("malformed probe artifact: ") + e.what());
    }
}

void save_probe(const std::filesystem::path& path, const ProbeModel& model) { io::write_json(path, probe_to_json(model)); }

ProbeModel load_probe(const std::filesystem::path& path) { return probe_from_json(io::read_json(path)); }

}  // namespace when2tool
