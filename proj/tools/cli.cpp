#include "cli.hpp"

#include "when2tool/agent.hpp"
#include "when2tool/http_backend.hpp"
#include "when2tool/io.hpp"
#include "when2tool/metrics.hpp"
#include "when2tool/mock_backend.hpp"
#include "when2tool/pipeline.hpp"
#include "when2tool/probe.hpp"
#include "when2tool/taskgen.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace when2tool::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class MissingArtifact : public std::runtime_error {
public:
    explicit MissingArtifact(const fs::path& p) : std::runtime_error("missing artifact: " + p.string()) {}
};

class BackendUnreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BackendOpts {
    std::string kind = "http";
    std::string url;
    std::string profile = "oracle-signal";
    std::uint64_t mock_seed = 0;
    double timeout = 120.0;
    int retries = 3;
    int concurrency = 4;
    std::string model_tag;
};

void add_backend_options(CLI::App* cmd, BackendOpts& o) {
    cmd->add_option("--backend", o.kind, "Backend kind")->check(CLI::IsMember({"http", "mock"}))->capture_default_str();
    cmd->add_option("--backend-url", o.url, "Backend URL (falls back to $BACKEND_URL)");
    cmd->add_option("--mock-profile", o.profile, "Mock profile")
        ->check(CLI::IsMember({"oracle-signal", "no-signal", "llama-like"}))
        ->capture_default_str();
    cmd->add_option("--mock-seed", o.mock_seed, "Mock profile seed")->capture_default_str();
    cmd->add_option("--timeout", o.timeout, "Request timeout in seconds")->capture_default_str();
    cmd->add_option("--retries", o.retries, "Retries on transport failure")->capture_default_str();
    cmd->add_option("--concurrency", o.concurrency, "Max in-flight backend requests")->capture_default_str();
    cmd->add_option("--model-tag", o.model_tag, "Override the model tag used for caching");
}

std::unique_ptr<Backend> make_backend(const BackendOpts& o, const std::vector<Task>& tasks) {
    if (o.kind == "mock") return std::make_unique<MockBackend>(MockProfile::by_name(o.profile, o.mock_seed), tasks);
    HttpBackendOptions h;
    h.url = resolve_backend_url(o.url.empty() ? std::nullopt : std::optional<std::string>(o.url));
    h.timeout_seconds = o.timeout;
    h.max_retries = o.retries;
    h.concurrency = o.concurrency;
    h.model_tag = o.model_tag;
    return std::make_unique<HttpBackend>(std::move(h));
}

/// Fails fast with exit code 3 when the backend cannot be reached.
std::string ping(Backend& b) {
    try {
        return b.model_tag();
    } catch (const BackendError& e) {
        throw BackendUnreachable(std::string("backend unreachable: ") + e.what());
    }
}

fs::path require(const fs::path& p) {
    if (!fs::exists(p)) throw MissingArtifact(p);
    return p;
}

std::vector<Task> load_tasks(const fs::path& path) {
    std::vector<Task> out;
    for (const auto& line : io::read_lines(require(path))) out.push_back(deserialize_task(line));
    return out;
}

std::map<std::string, int> load_labels(const fs::path& path) {
    std::map<std::string, int> out;
    for (const auto& j : io::read_jsonl(require(path))) {
        const auto l = j.get<NecessityLabel>();
        out[l.task_id] = l.y;
    }
    return out;
}

std::vector<Trajectory> load_trajectories(const fs::path& dir) {
    std::vector<Trajectory> out;
    for (const auto& j : io::read_jsonl(require(dir / "trajectories.jsonl"))) out.push_back(j.get<Trajectory>());
    return out;
}

void write_trajectories(const fs::path& dir, const std::vector<Trajectory>& ts) {
    std::vector<json> rows;
    rows.reserve(ts.size());
    for (const auto& t : ts) rows.emplace_back(t);
    io::write_jsonl(dir / "trajectories.jsonl", rows);
}

/// Features of `tasks` from the cache only; a miss names the cache file.
std::vector<HiddenFeatures> cached_features(FeatureCache& cache, const std::string& tag, const std::vector<Task>& tasks) {
    std::vector<HiddenFeatures> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) {
        auto h = cache.find(tag, t.task_id);
        if (!h) throw MissingArtifact(cache.file_for(tag).string() + " (no features for " + t.task_id + ")");
        out.push_back(std::move(*h));
    }
    return out;
}

std::vector<double> parse_taus(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ArgumentError("bad threshold: " + item);
        }
    }
    return out;
}

std::string tau_dir(double tau) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "tau_%.2f", tau);
    return buf;
}

struct RunOpts {
    std::string tasks;
    std::string mode = "default";
    bool rta = false;
    std::string prefill = "none";
    std::string probe;
    double tau = 0.5;
    std::optional<double> temperature;
    std::string out;
    std::string cache = "cache";
    std::string reference;
    int parallel = 1;
    int max_rounds = 0;
    int max_tokens = 1024;
    std::uint64_t seed = 0;
};

std::vector<Trajectory> execute_run(const std::vector<Task>& tasks, PromptMode mode, PrefillStrategy strategy,
                                    const ProbeModel* probe, const std::vector<HiddenFeatures>* features, double tau,
                                    Backend& backend, const AgentLimits& limits, int parallel) {
    std::vector<Trajectory> out(tasks.size());
    parallel_for(tasks.size(), parallel, [&](std::size_t i) {
        if (strategy == PrefillStrategy::none) {
            out[i] = run_task(tasks[i], mode, PrefillDirective::make(PrefillKind::none), backend, limits);
        } else {
            out[i] = run_probe_prefill(tasks[i], mode, *probe, (*features)[i], tau, strategy == PrefillStrategy::probe_hard, backend,
                                       limits);
        }
    });
    return out;
}

MetricsReport build_report(const std::vector<Trajectory>& ts, const std::vector<Trajectory>* reference, const std::string& method,
                           GroupBy group_by) {
    MetricsReport r;
    for (GroupBy g : {GroupBy::overall, group_by}) {
        auto rows = reference ? cost_per_saved_call(ts, *reference, g, method) : aggregate(ts, g, method);
        r.rows.insert(r.rows.end(), rows.begin(), rows.end());
        if (group_by == GroupBy::overall) break;
    }
    return r;
}

int cmd_gen(std::uint64_t seed, const std::string& out_dir, int train, int test, std::ostream& out) {
    struct Part {
        const char* dir;
        BenchmarkManifest manifest;
    };
    for (Part part : {Part{"single", BenchmarkManifest::single_hop(seed)}, Part{"multi", BenchmarkManifest::multi_hop(seed)}}) {
        part.manifest.train_per_difficulty = train;
        part.manifest.test_per_difficulty = test;
        const auto tasks = generate_benchmark(seed, part.manifest);
        const fs::path dir = fs::path(out_dir) / part.dir;
        fs::create_directories(dir);
        std::vector<std::string> lines[2];
        for (const auto& t : tasks) lines[t.split == Split::test].push_back(serialize_task(t));
        const fs::path train_path = dir / "tasks.train.jsonl";
        const fs::path test_path = dir / "tasks.test.jsonl";
        io::write_lines(train_path, lines[0]);
        io::write_lines(test_path, lines[1]);
        json m = part.manifest;
        m["counts"] = {{"train", lines[0].size()}, {"test", lines[1].size()}};
        m["sha256"] = {{"tasks.train.jsonl", io::sha256_file(train_path)}, {"tasks.test.jsonl", io::sha256_file(test_path)}};
        io::write_json(dir / "manifest.json", m);
        out << part.dir << ": " << lines[0].size() << " train, " << lines[1].size() << " test -> " << dir.string() << "\n";
    }
    return kExitOk;
}

int cmd_run(const RunOpts& o, const BackendOpts& bo, std::ostream& out) {
    const auto strategy = parse_prefill_strategy(o.prefill);
    if (strategy != PrefillStrategy::none && o.probe.empty()) throw ArgumentError("--probe is required with --prefill " + o.prefill);
    if (strategy == PrefillStrategy::none && !o.probe.empty()) throw ArgumentError("--probe is only valid with a probe prefill strategy");
    std::optional<ProbeModel> probe;
    if (!o.probe.empty()) {
        probe = load_probe(require(o.probe));
        if (o.temperature) probe->temperature = *o.temperature;
    }
    std::optional<std::vector<Trajectory>> reference;
    if (!o.reference.empty()) reference = load_trajectories(o.reference);

    const auto tasks = load_tasks(o.tasks);
    auto backend = make_backend(bo, tasks);
    const std::string tag = ping(*backend);
    const PromptMode mode{parse_mode(o.mode), o.rta};
    AgentLimits limits;
    limits.max_rounds = o.max_rounds;
    limits.max_tokens = o.max_tokens;

    std::vector<HiddenFeatures> features;
    FeatureCache cache(fs::path(o.cache));
    if (probe) features = cache.get_or_extract(tasks, *backend, o.parallel);

    const auto ts = execute_run(tasks, mode, strategy, probe ? &*probe : nullptr, &features, o.tau, *backend, limits, o.parallel);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_trajectories(dir, ts);
    json cfg{{"tasks", o.tasks},
             {"backend", bo.kind},
             {"model_tag", tag},
             {"mode", to_string(mode)},
             {"prefill", o.prefill},
             {"probe", o.probe},
             {"tau", o.tau},
             {"temperature", probe ? json(probe->temperature) : json(nullptr)},
             {"max_rounds", o.max_rounds},
             {"max_tokens", o.max_tokens},
             {"parallel", o.parallel},
             {"seed", o.seed},
             {"benchmark_version", kBenchmarkVersion}};
    io::write_json(dir / "config.json", cfg);
    const auto report = build_report(ts, reference ? &*reference : nullptr, dir.filename().string(), GroupBy::env_difficulty);
    write_report(dir, report);

    const auto overall = aggregate(ts, GroupBy::overall, "run");
    if (!overall.empty()) {
        const auto& r = overall.front();
        out << "tasks " << r.trajectories << ", judged " << r.judged << ", errors " << r.errors << ", accuracy "
            << (r.accuracy ? *r.accuracy : 0.0) << "%, tool calls " << r.tool_calls << "\n";
        if (r.judged == 0 && r.errors > 0) throw BackendUnreachable("every trajectory errored: " + ts.front().error);
    }
    return kExitOk;
}

int cmd_label(const std::string& tasks_path, const std::string& out_path, int parallel, const BackendOpts& bo, std::ostream& out,
              std::ostream& err) {
    const auto tasks = load_tasks(tasks_path);
    auto backend = make_backend(bo, tasks);
    ping(*backend);
    const auto res = run_no_tool_labeling(tasks, *backend, {}, parallel);
    std::vector<json> rows;
    int positives = 0;
    for (const auto& l : res.labels) {
        rows.emplace_back(l);
        positives += l.y;
    }
    if (fs::path(out_path).has_parent_path()) fs::create_directories(fs::path(out_path).parent_path());
    io::write_jsonl(out_path, rows);
    for (const auto& id : res.excluded) err << "excluded (backend error): " << id << "\n";
    out << "labeled " << res.labels.size() << " tasks, " << positives << " tool-necessary, " << res.excluded.size() << " excluded\n";
    if (res.labels.empty() && !res.excluded.empty()) throw BackendUnreachable("every labeling run errored");
    return kExitOk;
}

int cmd_extract(const std::string& tasks_path, const std::string& cache_dir, const std::string& out_path, int parallel,
                const BackendOpts& bo, std::ostream& out) {
    const auto tasks = load_tasks(tasks_path);
    auto backend = make_backend(bo, tasks);
    ping(*backend);
    FeatureCache cache{fs::path(cache_dir)};
    std::vector<HiddenFeatures> feats;
    try {
        feats = cache.get_or_extract(tasks, *backend, parallel);
    } catch (const BackendError& e) {
        throw BackendUnreachable(e.what());
    }
    if (!out_path.empty()) {
        std::vector<json> rows(feats.begin(), feats.end());
        io::write_jsonl(out_path, rows);
    }
    out << feats.size() << " feature records (" << cache.extracted() << " extracted, " << feats.size() - cache.extracted()
        << " cached), dim " << (feats.empty() ? 0 : feats.front().dimension()) << "\n";
    return kExitOk;
}

struct TrainOpts {
    std::string tasks;
    std::string labels;
    std::string cache = "cache";
    std::string out = "probe.json";
    std::string test_tasks;
    std::string test_labels;
    double lambda = 1e4;
    std::string layers = "all";
    double temperature = 2.0;
    std::uint64_t seed = 0;
};

std::pair<std::vector<HiddenFeatures>, std::vector<int>> labeled_features(FeatureCache& cache, const std::string& tag,
                                                                          const std::vector<Task>& tasks,
                                                                          const std::map<std::string, int>& labels) {
    std::vector<Task> kept;
    std::vector<int> y;
    for (const auto& t : tasks) {
        if (auto it = labels.find(t.task_id); it != labels.end()) {
            kept.push_back(t);
            y.push_back(it->second);
        }
    }
    return {cached_features(cache, tag, kept), y};
}

int cmd_train(const TrainOpts& o, const BackendOpts& bo, std::ostream& out) {
    const auto tasks = load_tasks(o.tasks);
    const auto labels = load_labels(o.labels);
    const std::string tag = bo.model_tag.empty() ? ping(*make_backend(bo, tasks)) : bo.model_tag;
    FeatureCache cache{fs::path(o.cache)};
    auto [feats, y] = labeled_features(cache, tag, tasks, labels);
    TrainOptions opts;
    opts.lambda = o.lambda;
    opts.layers = parse_layer_selection(o.layers);
    opts.temperature = o.temperature;
    opts.seed = o.seed;
    const ProbeModel m = train_probe(feats, y, opts);
    save_probe(o.out, m);
    std::vector<double> z;
    for (const auto& f : feats) z.push_back(probe_logit(m, f));
    out << "probe: n=" << m.meta.n_train << " dim=" << m.dimension() << " lambda=" << m.lambda << " iterations=" << m.meta.iterations
        << " |grad|=" << m.meta.gradient_norm << " train AUROC=" << auroc(z, y) << "\n";
    if (!o.test_tasks.empty() || !o.test_labels.empty()) {
        if (o.test_tasks.empty() || o.test_labels.empty()) throw ArgumentError("--test-tasks and --test-labels go together");
        auto [tf, ty] = labeled_features(cache, tag, load_tasks(o.test_tasks), load_labels(o.test_labels));
        std::vector<double> tz;
        for (const auto& f : tf) tz.push_back(probe_logit(m, f));
        out << "held-out AUROC=" << auroc(tz, ty) << " accuracy=" << probe_accuracy(tz, ty) << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const RunOpts& o, const std::string& taus_text, const BackendOpts& bo, std::ostream& out) {
    const auto strategy = parse_prefill_strategy(o.prefill);
    if (strategy == PrefillStrategy::none) throw ArgumentError("sweep needs --prefill probe-soft or probe-hard");
    if (o.probe.empty()) throw ArgumentError("--probe is required");
    ProbeModel probe = load_probe(require(o.probe));
    if (o.temperature) probe.temperature = *o.temperature;
    const auto taus = parse_taus(taus_text);
    const auto tasks = load_tasks(o.tasks);
    auto backend = make_backend(bo, tasks);
    ping(*backend);
    FeatureCache cache{fs::path(o.cache)};
    const auto features = cache.get_or_extract(tasks, *backend, o.parallel);
    const PromptMode mode{parse_mode(o.mode), o.rta};
    AgentLimits limits;
    limits.max_rounds = o.max_rounds;
    limits.max_tokens = o.max_tokens;

    std::vector<std::pair<double, std::vector<Trajectory>>> runs;
    for (double tau : taus) {
        if (!(tau > 0.0 && tau < 1.0)) throw ArgumentError("thresholds must lie in (0, 1)");
    }
    const fs::path dir(o.out);
    for (double tau : taus) {
        auto ts = execute_run(tasks, mode, strategy, &probe, &features, tau, *backend, limits, o.parallel);
        const fs::path sub = dir / tau_dir(tau);
        fs::create_directories(sub);
        write_trajectories(sub, ts);
        write_report(sub, build_report(ts, nullptr, tau_dir(tau), GroupBy::env_difficulty));
        runs.emplace_back(tau, std::move(ts));
    }
    MetricsReport report;
    report.curve = sweep_curve(runs);
    write_report(dir, report);
    for (const auto& p : report.curve) out << "tau " << p.tau << ": accuracy " << p.accuracy << "%, TC " << p.tc_total << "\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& run_dirs, const std::string& reference, const std::string& group_by,
               const std::string& labels_path, const std::string& out_dir, std::ostream& out) {
    const GroupBy g = parse_group_by(group_by);
    std::optional<std::vector<Trajectory>> ref;
    if (!reference.empty()) ref = load_trajectories(reference);
    std::optional<std::map<std::string, int>> labels;
    if (!labels_path.empty()) labels = load_labels(labels_path);
    MetricsReport report;
    for (const auto& d : run_dirs) {
        const auto ts = load_trajectories(d);
        auto part = build_report(ts, ref ? &*ref : nullptr, fs::path(d).filename().string(), g);
        report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
        if (labels && !report.auroc) {
            std::vector<double> p;
            std::vector<int> y;
            for (const auto& t : ts) {
                const auto it = labels->find(t.task_id);
                if (t.probe_p && it != labels->end()) {
                    p.push_back(*t.probe_p);
                    y.push_back(it->second);
                }
            }
            if (!p.empty()) report.auroc = auroc(p, y);
        }
    }
    write_report(out_dir, report);
    out << report_csv(report.rows);
    if (report.auroc) out << "AUROC " << *report.auroc << "\n";
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"When2Tool benchmark and Probe&Prefill toolkit"};
    app.require_subcommand(1);

    std::uint64_t gen_seed = 0;
    std::string gen_out;
    int gen_train = 20, gen_test = 50;
    auto* gen = app.add_subcommand("gen", "Generate the benchmark task files");
    gen->add_option("--seed", gen_seed, "Global seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--train", gen_train, "Train tasks per (env, difficulty)")->capture_default_str();
    gen->add_option("--test", gen_test, "Test tasks per (env, difficulty)")->capture_default_str();

    RunOpts run_o;
    BackendOpts run_b;
    std::optional<double> run_temp;
    auto* runc = app.add_subcommand("run", "Run tasks against a backend");
    runc->add_option("--tasks", run_o.tasks, "Tasks JSONL")->required();
    runc->add_option("--mode", run_o.mode, "Prompt mode")
        ->check(CLI::IsMember({"force", "default", "necessary", "sparse", "no_tool"}))
        ->capture_default_str();
    runc->add_flag("--rta", run_o.rta, "Reason-then-Act");
    runc->add_option("--prefill", run_o.prefill, "Prefill strategy")
        ->check(CLI::IsMember({"none", "probe-soft", "probe-hard"}))
        ->capture_default_str();
    runc->add_option("--probe", run_o.probe, "Probe artifact");
    runc->add_option("--tau", run_o.tau, "Decision threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    runc->add_option("--temperature", run_temp, "Override the probe temperature T");
    runc->add_option("--out", run_o.out, "Run directory")->required();
    runc->add_option("--cache", run_o.cache, "Hidden-state cache directory")->capture_default_str();
    runc->add_option("--reference", run_o.reference, "Reference run directory for deltas");
    runc->add_option("--parallel", run_o.parallel, "Concurrent tasks")->check(CLI::PositiveNumber)->capture_default_str();
    runc->add_option("--max-rounds", run_o.max_rounds, "Rounds per task (0: 6 single-hop, 10 multi-hop)")->capture_default_str();
    runc->add_option("--max-tokens", run_o.max_tokens, "Tokens per generation")->capture_default_str();
    runc->add_option("--seed", run_o.seed, "Recorded seed")->capture_default_str();
    add_backend_options(runc, run_b);

    std::string label_tasks, label_out = "labels.jsonl";
    int label_parallel = 1;
    BackendOpts label_b;
    auto* label = app.add_subcommand("label", "No-tool runs producing tool-necessity labels");
    label->add_option("--tasks", label_tasks, "Tasks JSONL")->required();
    label->add_option("--out", label_out, "Labels JSONL")->capture_default_str();
    label->add_option("--parallel", label_parallel, "Concurrent tasks")->check(CLI::PositiveNumber)->capture_default_str();
    add_backend_options(label, label_b);

    std::string ex_tasks, ex_cache = "cache", ex_out;
    int ex_parallel = 1;
    BackendOpts ex_b;
    auto* extract = app.add_subcommand("extract", "Cache last-token all-layer hidden states");
    extract->add_option("--tasks", ex_tasks, "Tasks JSONL")->required();
    extract->add_option("--cache", ex_cache, "Cache directory")->capture_default_str();
    extract->add_option("--out", ex_out, "Also write the feature records here");
    extract->add_option("--parallel", ex_parallel, "Concurrent tasks")->check(CLI::PositiveNumber)->capture_default_str();
    add_backend_options(extract, ex_b);

    TrainOpts tr_o;
    BackendOpts tr_b;
    auto* train = app.add_subcommand("train-probe", "Train the tool-necessity probe");
    train->add_option("--tasks", tr_o.tasks, "Training tasks JSONL")->required();
    train->add_option("--labels", tr_o.labels, "Labels JSONL")->required();
    train->add_option("--cache", tr_o.cache, "Cache directory")->capture_default_str();
    train->add_option("--out", tr_o.out, "Probe artifact")->capture_default_str();
    train->add_option("--test-tasks", tr_o.test_tasks, "Held-out tasks JSONL");
    train->add_option("--test-labels", tr_o.test_labels, "Held-out labels JSONL");
    train->add_option("--lambda", tr_o.lambda, "L2 strength")->check(CLI::NonNegativeNumber)->capture_default_str();
    train->add_option("--layers", tr_o.layers, "Layer selection")->check(CLI::IsMember({"all", "mid", "last"}))->capture_default_str();
    train->add_option("--temperature", tr_o.temperature, "Decision temperature T")->check(CLI::PositiveNumber)->capture_default_str();
    train->add_option("--seed", tr_o.seed, "Seed")->capture_default_str();
    add_backend_options(train, tr_b);

    RunOpts sw_o;
    sw_o.prefill = "probe-hard";
    BackendOpts sw_b;
    std::string sw_taus = "0.1,0.3,0.5,0.7,0.9";
    std::optional<double> sw_temp;
    auto* sweep = app.add_subcommand("sweep", "Threshold sweep of Probe&Prefill");
    sweep->add_option("--tasks", sw_o.tasks, "Tasks JSONL")->required();
    sweep->add_option("--probe", sw_o.probe, "Probe artifact")->required();
    sweep->add_option("--out", sw_o.out, "Sweep directory")->required();
    sweep->add_option("--taus", sw_taus, "Comma-separated thresholds")->capture_default_str();
    sweep->add_option("--prefill", sw_o.prefill, "Prefill strategy")->check(CLI::IsMember({"probe-soft", "probe-hard"}))->capture_default_str();
    sweep->add_option("--mode", sw_o.mode, "Prompt mode")
        ->check(CLI::IsMember({"force", "default", "necessary", "sparse", "no_tool"}))
        ->capture_default_str();
    sweep->add_flag("--rta", sw_o.rta, "Reason-then-Act");
    sweep->add_option("--temperature", sw_temp, "Override the probe temperature T");
    sweep->add_option("--cache", sw_o.cache, "Cache directory")->capture_default_str();
    sweep->add_option("--parallel", sw_o.parallel, "Concurrent tasks")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--max-rounds", sw_o.max_rounds, "Rounds per task")->capture_default_str();
    sweep->add_option("--max-tokens", sw_o.max_tokens, "Tokens per generation")->capture_default_str();
    add_backend_options(sweep, sw_b);

    std::vector<std::string> rep_runs;
    std::string rep_ref, rep_group = "env_difficulty", rep_labels, rep_out = "report";
    auto* report = app.add_subcommand("report", "Aggregate run directories into report files");
    report->add_option("--runs", rep_runs, "Run directories")->required();
    report->add_option("--reference", rep_ref, "Reference run directory");
    report->add_option("--group-by", rep_group, "Grouping")
        ->check(CLI::IsMember({"overall", "category", "difficulty", "category_difficulty", "env", "env_difficulty"}))
        ->capture_default_str();
    report->add_option("--labels", rep_labels, "Labels JSONL for the AUROC block");
    report->add_option("--out", rep_out, "Report directory")->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(gen_seed, gen_out, gen_train, gen_test, out);
        if (*runc) {
            run_o.temperature = run_temp;
            return cmd_run(run_o, run_b, out);
        }
        if (*label) return cmd_label(label_tasks, label_out, label_parallel, label_b, out, err);
        if (*extract) return cmd_extract(ex_tasks, ex_cache, ex_out, ex_parallel, ex_b, out);
        if (*train) return cmd_train(tr_o, tr_b, out);
        if (*sweep) {
            sw_o.temperature = sw_temp;
            return cmd_sweep(sw_o, sw_taus, sw_b, out);
        }
        if (*report) return cmd_report(rep_runs, rep_ref, rep_group, rep_labels, rep_out, out);
    } catch (const BackendUnreachable& e) {
        err << "error: " << e.what() << "\n";
        return kExitBackend;
    } catch (const BackendError& e) {
        err << "error: backend unreachable: " << e.what() << "\n";
        return kExitBackend;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace when2tool::cli
