#include "when2tool/task.hpp"

#include <array>

namespace when2tool {

namespace {

constexpr std::array<std::pair<ParamType, std::string_view>, 10> kParamTypes{{
    {ParamType::string, "string"},
    {ParamType::integer, "integer"},
    {ParamType::number, "number"},
    {ParamType::boolean, "boolean"},
    {ParamType::number_list, "number_list"},
    {ParamType::int_list, "int_list"},
    {ParamType::list, "list"},
    {ParamType::matrix, "matrix"},
    {ParamType::meeting, "meeting"},
    {ParamType::meeting_list, "meeting_list"},
}};

constexpr std::array<std::pair<StepCheck, std::string_view>, 5> kChecks{{
    {StepCheck::value, "value"},
    {StepCheck::contains, "contains"},
    {StepCheck::top_hit, "top_hit"},
    {StepCheck::nonempty, "nonempty"},
    {StepCheck::first_slot, "first_slot"},
}};

}  // namespace

std::string_view to_string(ParamType t) {
    for (const auto& [k, n] : kParamTypes) {
        if (k == t) return n;
    }
    return "?";
}

ParamType parse_param_type(std::string_view s) {
    for (const auto& [k, n] : kParamTypes) {
        if (n == s) return k;
    }
    throw ArgumentError("unknown parameter type: " + std::string(s));
}

std::string_view to_string(StepCheck c) {
    for (const auto& [k, n] : kChecks) {
        if (k == c) return n;
    }
    return "?";
}

StepCheck parse_step_check(std::string_view s) {
    for (const auto& [k, n] : kChecks) {
        if (n == s) return k;
    }
    throw ArgumentError("unknown step check: " + std::string(s));
}

const ToolParam* ToolSpec::find_param(std::string_view n) const {
    for (const auto& p : parameters) {
        if (p.name == n) return &p;
    }
    return nullptr;
}

ToolResult ToolResult::success(std::string payload, nlohmann::json data, std::string canonical) {
    return ToolResult{true, std::move(payload), std::move(data), std::move(canonical)};
}

ToolResult ToolResult::failure(std::string message) {
    return ToolResult{false, "Error: " + message, nlohmann::json{{"error", message}}, {}};
}

std::string ToolResult::render() const { return payload + "\n" + data.dump(); }

nlohmann::json substitute_prev(const nlohmann::json& args, std::string_view prev) {
    if (args.is_string()) {
        std::string s = args.get<std::string>();
        std::size_t pos = 0;
        while ((pos = s.find(kPrevPlaceholder, pos)) != std::string::npos) {
            s.replace(pos, kPrevPlaceholder.size(), prev);
            pos += prev.size();
        }
        return s;
    }
    if (args.is_array() || args.is_object()) {
        nlohmann::json out = args;
        for (auto it = out.begin(); it != out.end(); ++it) *it = substitute_prev(*it, prev);
        return out;
    }
    return args;
}

bool Task::is_multi_hop() const { return env_name.rfind("Chained", 0) == 0; }

void to_json(nlohmann::json& j, const ToolParam& p) {
    j = nlohmann::json{{"name", p.name}, {"type", to_string(p.type)}, {"required", p.required}};
    if (!p.description.empty()) j["description"] = p.description;
}

void from_json(const nlohmann::json& j, ToolParam& p) {
    p.name = j.at("name").get<std::string>();
    p.type = parse_param_type(j.at("type").get<std::string>());
    p.required = j.value("required", true);
    p.description = j.value("description", std::string{});
}

void to_json(nlohmann::json& j, const ToolSpec& s) {
    j = nlohmann::json{{"name", s.name}, {"description", s.description}, {"parameters", s.parameters}};
}

void from_json(const nlohmann::json& j, ToolSpec& s) {
    s.name = j.at("name").get<std::string>();
    s.description = j.value("description", std::string{});
    s.parameters = j.value("parameters", std::vector<ToolParam>{});
}

void to_json(nlohmann::json& j, const ToolCall& c) {
    j = nlohmann::json{{"name", c.tool_name}, {"arguments", c.arguments}, {"call_index", c.call_index}};
}

void from_json(const nlohmann::json& j, ToolCall& c) {
    c.tool_name = j.at("name").get<std::string>();
    c.arguments = j.value("arguments", nlohmann::json::object());
    c.call_index = j.value("call_index", 0);
}

void to_json(nlohmann::json& j, const SolutionStep& s) {
    j = nlohmann::json{{"call", s.call}, {"check", to_string(s.check)}, {"expect", s.expect}};
}

void from_json(const nlohmann::json& j, SolutionStep& s) {
    s.call = j.at("call").get<ToolCall>();
    s.check = parse_step_check(j.at("check").get<std::string>());
    s.expect = j.at("expect").get<std::string>();
}

void to_json(nlohmann::json& j, const Task& t) {
    j = nlohmann::json{
        {"task_id", t.task_id},
        {"env_name", t.env_name},
        {"category", to_string(t.category)},
        {"difficulty", to_string(t.difficulty)},
        {"split", to_string(t.split)},
        {"index", t.index},
        {"prompt", t.prompt},
        {"expected_answer", t.expected_answer},
        {"tool_specs", t.tool_specs},
        {"env_state", t.env_state},
        {"seed", t.seed},
        {"solution", t.solution},
    };
}

void from_json(const nlohmann::json& j, Task& t) {
    t.task_id = j.at("task_id").get<std::string>();
    t.env_name = j.at("env_name").get<std::string>();
    t.category = parse_category(j.at("category").get<std::string>());
    t.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
    t.split = parse_split(j.at("split").get<std::string>());
    t.index = j.value("index", 0);
    t.prompt = j.at("prompt").get<std::string>();
    t.expected_answer = j.at("expected_answer").get<AnswerValue>();
    t.tool_specs = j.at("tool_specs").get<std::vector<ToolSpec>>();
    t.env_state = j.value("env_state", nlohmann::json::object());
    t.seed = j.at("seed").get<std::uint64_t>();
    t.solution = j.value("solution", std::vector<SolutionStep>{});
}

std::string serialize_task(const Task& t) { return nlohmann::json(t).dump(); }

Task deserialize_task(std::string_view line) { return nlohmann::json::parse(line).get<Task>(); }

}  // namespace when2tool
