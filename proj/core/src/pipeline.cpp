#include "when2tool/pipeline.hpp"

#include "when2tool/common.hpp"
#include "when2tool/io.hpp"

#include <cctype>
#include <fstream>

namespace when2tool {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(PrefillStrategy s) {
    switch (s) {
        case PrefillStrategy::none: return "none";
        case PrefillStrategy::probe_soft: return "probe-soft";
        case PrefillStrategy::probe_hard: return "probe-hard";
    }
    return "?";
}

PrefillStrategy parse_prefill_strategy(std::string_view s) {
    if (s == "none") return PrefillStrategy::none;
    if (s == "probe-soft") return PrefillStrategy::probe_soft;
    if (s == "probe-hard") return PrefillStrategy::probe_hard;
    throw ArgumentError("unknown prefill strategy: " + std::string(s));
}

PrefillDirective prefill_for(Decision decision, bool hard) {
    if (decision == Decision::tool) return PrefillDirective::make(hard ? PrefillKind::hard_tool : PrefillKind::soft_tool);
    return PrefillDirective::make(hard ? PrefillKind::hard_direct : PrefillKind::soft_direct);
}

Trajectory run_probe_prefill(const Task& task, PromptMode mode, const ProbeModel& probe, const HiddenFeatures& features,
                             double tau, bool hard, Backend& backend, const AgentLimits& limits) {
    const ProbeDecision d = probe_decide(probe, features, tau);
    Trajectory t = run_task(task, mode, prefill_for(d.decision, hard), backend, limits);
    t.probe_p = d.probability;
    return t;
}

FeatureCache::FeatureCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {}

fs::path FeatureCache::file_for(const std::string& model_tag) const {
    std::string safe;
    for (char c : model_tag) safe.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' ? c : '_');
    return dir_.value_or(fs::path(".")) / (safe + ".features.jsonl");
}

void FeatureCache::load(const std::string& model_tag) {
    if (loaded_[model_tag]) return;
    loaded_[model_tag] = true;
    if (!dir_) return;
    const fs::path path = file_for(model_tag);
    if (!fs::exists(path)) return;
    auto& slot = entries_[model_tag];
    for (const auto& j : io::read_jsonl(path)) {
        HiddenFeatures h = j.get<HiddenFeatures>();
        slot[h.task_id] = std::move(h);
    }
}

std::optional<HiddenFeatures> FeatureCache::find(const std::string& model_tag, const std::string& task_id) const {
    std::lock_guard lock(mu_);
    const_cast<FeatureCache*>(this)->load(model_tag);
    const auto it = entries_.find(model_tag);
    if (it == entries_.end()) return std::nullopt;
    const auto jt = it->second.find(task_id);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

void FeatureCache::put(const std::string& model_tag, HiddenFeatures features) {
    std::lock_guard lock(mu_);
    load(model_tag);
    if (dir_) {
        fs::create_directories(*dir_);
        std::ofstream out(file_for(model_tag), std::ios::app);
        if (!out) throw std::runtime_error("cannot append to " + file_for(model_tag).string());
        out << json(features).dump() << "\n";
    }
    entries_[model_tag][features.task_id] = std::move(features);
}

std::vector<HiddenFeatures> FeatureCache::get_or_extract(const std::vector<Task>& tasks, Backend& backend, int parallel) {
    const std::string tag = backend.model_tag();
    std::vector<HiddenFeatures> out(tasks.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (auto h = find(tag, tasks[i].task_id)) {
            out[i] = std::move(*h);
        } else {
            missing.push_back(i);
        }
    }
    parallel_for(missing.size(), parallel, [&](std::size_t k) {
        const std::size_t i = missing[k];
        out[i] = extract_features(tasks[i], backend);
        put(tag, out[i]);
    });
    {
        std::lock_guard lock(mu_);
        extracted_ += missing.size();
    }
    return out;
}

}  // namespace when2tool
