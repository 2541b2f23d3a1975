#pragma once

#include "when2tool/agent.hpp"
#include "when2tool/backend.hpp"
#include "when2tool/task.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace when2tool {

/// Probability of emitting a tool call given the planted label, {P(call | y=0), P(call | y=1)}.
struct CallRate {
    double unneeded = 0.0;
    double needed = 0.0;
};

struct MockProfile {
    std::string name = "oracle-signal";
    std::uint64_t seed = 0;

    // Planted competence boundary: P(y = 1) by difficulty, overridable per environment.
    std::array<double, 3> necessity_rate{0.15, 0.5, 0.9};
    std::map<std::string, std::array<double, 3>> env_necessity_rate;

    // Planted hidden states: h = signal * margin * u + N(0, I), u a fixed unit direction and
    // margin = logit(rate) - logit(m) the latent distance to the competence boundary (> 0 iff y = 1).
    double signal = 8.0;
    int layer_count = 9;  // embedding output + 8 blocks
    int hidden_dim = 64;

    // Tool-use policy per prompt mode.
    std::map<ModeKind, CallRate> call_rate;
    double rta_unneeded_scale = 0.5;
    double rta_needed_scale = 0.85;
    bool rta_narrates = false;  // reason-then-act yields prose about tools but no parsable call

    double soft_compliance = 0.9;

    static MockProfile oracle_signal(std::uint64_t seed = 0);
    static MockProfile no_signal(std::uint64_t seed = 0);
    static MockProfile llama_like(std::uint64_t seed = 0);
    /// "oracle-signal", "no-signal", "llama-like"; throws ConfigError otherwise.
    static MockProfile by_name(std::string_view name, std::uint64_t seed = 0);
};

/// Deterministic offline backend. Recognizes tasks by their prompt, answers correctly
/// without tools iff the planted label is 0, and follows the task's oracle tool
/// sequence when it decides to use tools.
class MockBackend final : public Backend {
public:
    MockBackend(MockProfile profile, std::vector<Task> tasks);

    BackendResponse generate(const BackendRequest& request) override;
    ModelMeta meta() const override;
    std::string model_tag() const override;

    /// Planted label of a known task.
    int necessity(const Task& task) const;
    const MockProfile& profile() const { return profile_; }

    /// Latent margin of a known task; positive iff the planted label is 1.
    double margin(const Task& task) const;
    /// The planted hidden vector for a prompt.
    std::vector<float> hidden_for(std::string_view prompt) const;

    /// Count of generate() calls served.
    std::size_t requests_served() const;

private:
    MockProfile profile_;
    std::vector<Task> tasks_;
    std::unordered_map<std::string, std::size_t> by_prompt_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::vector<float> direction_;
    mutable std::atomic<std::size_t> served_{0};

    const Task* lookup(const BackendRequest& request) const;
    double unit(std::string_view purpose, std::string_view key) const;
};

/// A visibly wrong answer of the same shape (integers get a changed last digit).
std::string mock_wrong_answer(const AnswerValue& expected);

/// `{"name": "<tool>", "arguments": {...}}` as the mock emits it.
std::string render_call_json(const ToolCall& call);

}  // namespace when2tool
