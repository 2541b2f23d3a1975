#pragma once

#include "when2tool/agent.hpp"
#include "when2tool/backend.hpp"
#include "when2tool/probe.hpp"
#include "when2tool/task.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace when2tool {

enum class PrefillStrategy { none, probe_soft, probe_hard };

std::string_view to_string(PrefillStrategy s);
PrefillStrategy parse_prefill_strategy(std::string_view s);

/// soft/hard direct or tool prefill for a probe decision.
PrefillDirective prefill_for(Decision decision, bool hard);

/// Steps 1-3: decide from cached features, then run with the matching prefill.
Trajectory run_probe_prefill(const Task& task, PromptMode mode, const ProbeModel& probe, const HiddenFeatures& features,
                             double tau, bool hard, Backend& backend, const AgentLimits& limits = {});

/// Hidden states keyed by (task_id, model tag), persisted as JSONL under `dir`.
class FeatureCache {
public:
    /// Without a directory the cache lives in memory only.
    explicit FeatureCache(std::optional<std::filesystem::path> dir = std::nullopt);

    std::optional<HiddenFeatures> find(const std::string& model_tag, const std::string& task_id) const;
    void put(const std::string& model_tag, HiddenFeatures features);

    /// Features for every task, querying the backend only for misses. Persists new entries.
    std::vector<HiddenFeatures> get_or_extract(const std::vector<Task>& tasks, Backend& backend, int parallel = 1);

    std::size_t extracted() const { return extracted_; }
    std::filesystem::path file_for(const std::string& model_tag) const;

private:
    std::optional<std::filesystem::path> dir_;
    mutable std::mutex mu_;
    std::map<std::string, std::map<std::string, HiddenFeatures>> entries_;
    std::map<std::string, bool> loaded_;
    std::size_t extracted_ = 0;

    void load(const std::string& model_tag);
};

}  // namespace when2tool
