#include "support.hpp"

#include "when2tool/agent.hpp"
#include "when2tool/common.hpp"
#include "when2tool/http_backend.hpp"
#include "when2tool/mock_backend.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

using namespace when2tool;

namespace {

const Task& some_task() { return w2t_test::single_hop_tasks().at(0); }

MockBackend make_mock() { return MockBackend(MockProfile::oracle_signal(0), w2t_test::single_hop_tasks()); }

/// Plain HTTP server answering every POST with a fixed status and body.
class FixedServer {
public:
    FixedServer(int status, std::string body) {
        server_.Post(".*", [this, status, body](const httplib::Request&, httplib::Response& res) {
            ++hits;
            res.status = status;
            res.set_content(body, "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FixedServer() {
        server_.stop();
        thread_.join();
    }
    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

    std::atomic<int> hits{0};

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

HttpBackendOptions fast_options(std::string url) {
    HttpBackendOptions o;
    o.url = std::move(url);
    o.timeout_seconds = 5;
    o.max_retries = 2;
    o.backoff_seconds = 0.01;
    return o;
}

BackendRequest simple_request() {
    return {build_prompt(some_task(), {}), std::nullopt, 64, 0.0, false, some_task().task_id};
}

}  // namespace

TEST(Wire, RequestRoundTrip) {
    BackendRequest r{{{Role::system, "sys"}, {Role::user, "u \"q\""}, {Role::tool, "t"}}, "\\boxed{", 17, 0.0, true, "x:1"};
    const auto back = request_from_json(request_to_json(r));
    EXPECT_EQ(back.messages, r.messages);
    EXPECT_EQ(back.assistant_prefill, r.assistant_prefill);
    EXPECT_EQ(back.max_tokens, 17);
    EXPECT_TRUE(back.want_hidden_states);
    EXPECT_EQ(back.task_id, "x:1");
}

TEST(Wire, ResponseRoundTripIsBitExact) {
    BackendResponse r;
    r.text = "\\boxed{1}";
    r.hidden = HiddenFeatures{{1.5f, -0.0f, 3.14159274f, 1e-30f, -7.25f, 65504.f}, 2, 3, "t"};
    r.usage = {11, 4};
    r.model_meta = {"m", 2, 3};
    const auto back = response_from_json(nlohmann::json::parse(response_to_json(r).dump()));
    EXPECT_EQ(back.text, r.text);
    ASSERT_TRUE(back.hidden);
    ASSERT_EQ(back.hidden->values.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(std::signbit(back.hidden->values[i]), std::signbit(r.hidden->values[i]));
    EXPECT_EQ(back.hidden->values, r.hidden->values);
    EXPECT_EQ(back.usage.prompt_tokens, 11);
    EXPECT_EQ(back.model_meta.layer_count, 2);
}

TEST(Wire, SchemaViolationsAreProtocolErrors) {
    EXPECT_THROW(request_from_json(nlohmann::json::object()), ProtocolError);
    EXPECT_THROW(request_from_json(nlohmann::json{{"messages", {{{"role", "robot"}, {"content", "x"}}}}}), ProtocolError);
    BackendResponse r;
    r.text = "x";
    r.hidden = HiddenFeatures{{1.f, 2.f, 3.f}, 2, 3, "t"};
    r.model_meta = {"m", 2, 3};
    EXPECT_THROW(response_from_json(response_to_json(r)), ProtocolError);  // 3 != 2*3
    EXPECT_THROW(response_from_json(nlohmann::json{{"text", 5}}), ProtocolError);
}

TEST(Conformance, MockBackendPasses) {
    auto mock = make_mock();
    for (const auto& c : run_conformance(mock, build_prompt(some_task(), {}))) EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
}

TEST(Conformance, HttpClientAgainstServedMockPasses) {
    auto mock = make_mock();
    BackendServer server(mock);
    server.start();
    HttpBackend http(fast_options(server.url()));
    for (const auto& c : run_conformance(http, build_prompt(some_task(), {}))) EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
    EXPECT_EQ(http.meta().hidden_dim, mock.meta().hidden_dim);
    EXPECT_EQ(http.model_tag(), mock.meta().model);
    server.stop();
}

TEST(Conformance, ServedResultsEqualInProcessResults) {
    auto mock = make_mock();
    BackendServer server(mock);
    server.start();
    HttpBackend http(fast_options(server.url()));
    const auto tasks = w2t_test::pick(w2t_test::single_hop_tasks(), Split::test, 150);
    for (const auto& t : tasks) {
        const auto a = run_task(t, {}, {}, mock);
        const auto b = run_task(t, {}, {}, http);
        EXPECT_EQ(nlohmann::json(a), nlohmann::json(b)) << t.task_id;
        EXPECT_EQ(extract_features(t, mock).values, extract_features(t, http).values);
    }
}

TEST(Conformance, DetectsBrokenPrefill) {
    class Dropper final : public Backend {
    public:
        BackendResponse generate(const BackendRequest& r) override {
            BackendResponse out;
            out.text = "ignored prefill";
            out.model_meta = meta();
            if (r.want_hidden_states) out.hidden = HiddenFeatures{std::vector<float>(6, 0.f), 2, 3, r.task_id};
            return out;
        }
        ModelMeta meta() const override { return {"dropper", 2, 3}; }
        std::string model_tag() const override { return "dropper"; }
    } dropper;
    int failed = 0;
    for (const auto& c : run_conformance(dropper, {{Role::user, "q"}}))
        if (!c.ok) {
            ++failed;
            EXPECT_NE(c.name.find("prefill"), std::string::npos) << c.name;
        }
    EXPECT_EQ(failed, 3);
}

TEST(Http, ClientErrorIsProtocolErrorWithoutRetry) {
    FixedServer server(400, R"({"error": "bad"})");
    HttpBackend http(fast_options(server.url()));
    EXPECT_THROW(http.generate(simple_request()), ProtocolError);
    EXPECT_EQ(server.hits.load(), 1);
}

TEST(Http, MalformedBodyIsProtocolError) {
    FixedServer server(200, "not json");
    HttpBackend http(fast_options(server.url()));
    EXPECT_THROW(http.generate(simple_request()), ProtocolError);
}

TEST(Http, ServerErrorRetriedThenBackendError) {
    FixedServer server(503, R"({"error": "loading"})");
    HttpBackend http(fast_options(server.url()));
    EXPECT_THROW(http.generate(simple_request()), BackendError);
    EXPECT_EQ(server.hits.load(), 3);  // first try + 2 retries
}

TEST(Http, UnreachableIsBackendError) {
    int port;
    {
        httplib::Server probe;
        port = probe.bind_to_any_port("127.0.0.1");
    }
    HttpBackend http(fast_options("http://127.0.0.1:" + std::to_string(port)));
    EXPECT_THROW(http.generate(simple_request()), BackendError);
}

TEST(Http, ServerMapsBackendFailureTo503) {
    w2t_test::DeadBackend dead;
    BackendServer server(dead);
    server.start();
    HttpBackend http(fast_options(server.url()));
    EXPECT_THROW(http.generate(simple_request()), BackendError);
}

TEST(Http, ServerRejectsMalformedRequest) {
    auto mock = make_mock();
    BackendServer server(mock);
    const int port = server.start();
    httplib::Client cli("127.0.0.1", port);
    const auto res = cli.Post("/v1/generate", "{\"messages\": 3}", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
}

TEST(Http, UrlResolution) {
    EXPECT_EQ(resolve_backend_url(std::string("http://a:1")), "http://a:1");
    ::setenv("BACKEND_URL", "http://env:2", 1);
    EXPECT_EQ(resolve_backend_url(std::nullopt), "http://env:2");
    ::unsetenv("BACKEND_URL");
    EXPECT_THROW(resolve_backend_url(std::nullopt), ConfigError);
    EXPECT_THROW(HttpBackend(fast_options("ftp://x")), ConfigError);
}

TEST(Mock, DeterministicAndPrefixPreserving) {
    auto mock = make_mock();
    auto req = simple_request();
    EXPECT_EQ(mock.generate(req).text, mock.generate(req).text);
    req.assistant_prefill = std::string(kHardDirectText);
    const auto r = mock.generate(req);
    EXPECT_TRUE(r.text.starts_with(kHardDirectText));
    EXPECT_NE(r.text.find('}'), std::string::npos);
    EXPECT_THROW(MockProfile::by_name("psychic"), ConfigError);
}

TEST(Mock, PlantedMarginMatchesLabel) {
    auto mock = make_mock();
    int pos = 0, n = 0;
    for (const auto& t : w2t_test::single_hop_tasks()) {
        EXPECT_EQ(mock.margin(t) > 0, mock.necessity(t) == 1);
        pos += mock.necessity(t);
        ++n;
    }
    EXPECT_GT(pos, n / 4);
    EXPECT_LT(pos, 3 * n / 4);
}

TEST(Mock, UnknownPromptStillAnswers) {
    auto mock = make_mock();
    BackendRequest r{{{Role::user, "an unseen question"}}, std::nullopt, 64, 0.0, true, "unseen"};
    const auto out = mock.generate(r);
    ASSERT_TRUE(out.hidden);
    EXPECT_EQ(out.hidden->values.size(), 9u * 64u);
}
