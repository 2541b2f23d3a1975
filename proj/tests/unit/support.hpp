#pragma once

#include "when2tool/backend.hpp"
#include "when2tool/taskgen.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace w2t_test {

/// Backend whose replies come from a callback. Records every request.
class ScriptedBackend final : public when2tool::Backend {
public:
    using Reply = std::function<std::string(const when2tool::BackendRequest&, int call)>;

    explicit ScriptedBackend(Reply reply) : reply_(std::move(reply)) {}

    when2tool::BackendResponse generate(const when2tool::BackendRequest& request) override {
        int n;
        {
            std::lock_guard lock(mu_);
            requests.push_back(request);
            n = calls_++;
        }
        when2tool::BackendResponse r;
        r.text = request.assistant_prefill.value_or("") + reply_(request, n);
        r.model_meta = meta();
        if (request.want_hidden_states) {
            r.hidden = when2tool::HiddenFeatures{std::vector<float>(6, 0.5f), 2, 3, request.task_id};
        }
        return r;
    }
    when2tool::ModelMeta meta() const override { return {"scripted", 2, 3}; }
    std::string model_tag() const override { return "scripted"; }

    std::vector<when2tool::BackendRequest> requests;

private:
    Reply reply_;
    std::mutex mu_;
    int calls_ = 0;
};

/// Always fails with a transport error.
class DeadBackend final : public when2tool::Backend {
public:
    when2tool::BackendResponse generate(const when2tool::BackendRequest&) override {
        throw when2tool::BackendError("connection refused");
    }
    when2tool::ModelMeta meta() const override { throw when2tool::BackendError("connection refused"); }
    std::string model_tag() const override { return "dead"; }
};

inline const std::vector<when2tool::Task>& single_hop_tasks() {
    static const auto tasks = when2tool::generate_benchmark(0, when2tool::BenchmarkManifest::single_hop(0));
    return tasks;
}

inline std::vector<when2tool::Task> pick(const std::vector<when2tool::Task>& all, when2tool::Split split, std::size_t stride) {
    std::vector<when2tool::Task> out;
    std::size_t i = 0;
    for (const auto& t : all)
        if (t.split == split && i++ % stride == 0) out.push_back(t);
    return out;
}

inline const when2tool::Task& find_task(const std::vector<when2tool::Task>& all, const std::string& id) {
    for (const auto& t : all)
        if (t.task_id == id) return t;
    throw std::runtime_error("no task " + id);
}

}  // namespace w2t_test
