// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "iyp/service/service.hpp"
#include "stub_server.hpp"

namespace iyp::service {
namespace {

using nlohmann::json;

std::filesystem::path fixtures_dir() {
    return std::filesystem::path(IYP_FIXTURE_DIR);
}

json base_config() {
    std::ifstream in(test::fixture_path("chatiyp.json"));
    return json::parse(in);
}

const Pipeline& shared_pipeline() {
    static const auto p = Pipeline::load(load_config(test::fixture_path("chatiyp.json")));
    return *p;
}

std::shared_ptr<const Pipeline> fixture_pipeline() {
    return {&shared_pipeline(), [](const Pipeline*) {}};
}

/// Writes a provider script to a temp file and returns a config using it.
Config config_with_script(const json& script, const std::string& name) {
    const auto path = std::filesystem::temp_directory_path() / ("iyp_" + name + ".json");
    std::ofstream(path) << script.dump();
    json c = base_config();
    c["provider"] = {{"kind", "scripted"}, {"script", path.string()}};
    return config_from_json(c, fixtures_dir());
}

json without_volatile(json j) {
    j.erase("request_id");
    j.erase("timings");
    return j;
}

// Config

TEST(Config, LoadsFixtureAndResolvesPaths) {
    const Config c = load_config(test::fixture_path("chatiyp.json"));
    ASSERT_TRUE(c.graph.ndjson.has_value());
    EXPECT_TRUE(c.graph.ndjson->is_absolute());
    EXPECT_TRUE(std::filesystem::exists(*c.graph.ndjson));
    EXPECT_TRUE(std::filesystem::exists(c.prompts_dir / "synthesize.json"));
    EXPECT_EQ(c.provider.kind, ProviderConfig::Kind::scripted);
    EXPECT_EQ(c.retrieval.min_rows, 1u);
    EXPECT_EQ(c.chat.retries, 0);
}

TEST(Config, RejectsBadInput) {
    auto bad = [](const std::function<void(json&)>& edit) {
        json c = base_config();
        edit(c);
        return c;
    };
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["grpah"] = 1; }), fixtures_dir()), ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c.erase("graph"); }), fixtures_dir()), ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["graph"] = json::object(); }), fixtures_dir()),
                 ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["retrieval"]["min_rows"] = 0; }), fixtures_dir()),
                 ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["retrieval"]["k"] = "5"; }), fixtures_dir()),
                 ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["provider"] = {{"kind", "magic"}}; }), fixtures_dir()),
                 ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["provider"] = {{"kind", "scripted"}}; }), fixtures_dir()),
                 ConfigError);
    EXPECT_THROW((void)config_from_json(bad([](json& c) { c["eval"]["metrics"] = "bleu,meteor"; }), fixtures_dir()),
                 ConfigError);
    EXPECT_THROW(
        (void)config_from_json(bad([](json& c) { c["graph"] = {{"remote", {{"url", "http://x:7474"}}}}; }), fixtures_dir()),
        ConfigError);
    EXPECT_THROW((void)load_config(fixtures_dir() / "missing.json"), ConfigError);
}

TEST(Config, EnvironmentOverridesOpenAiSettings) {
    ::setenv("IYP_CHAT_MODEL", "env-model", 1);
    ::setenv("IYP_LLM_BASE_URL", "http://127.0.0.1:9/v1", 1);
    const Config c = load_config(test::fixture_path("chatiyp.live.json"));
    ::unsetenv("IYP_CHAT_MODEL");
    ::unsetenv("IYP_LLM_BASE_URL");
    EXPECT_EQ(c.provider.kind, ProviderConfig::Kind::openai);
    EXPECT_EQ(c.provider.openai.chat_model, "env-model");
    EXPECT_EQ(c.provider.openai.base_url, "http://127.0.0.1:9/v1");
    EXPECT_EQ(c.provider_for(Role::judge).openai.chat_model, "env-model");
    EXPECT_EQ(c.provider_for(Role::embed).kind, ProviderConfig::Kind::scripted);
}

TEST(Config, RolesWithIdenticalSettingsShareOneProvider) {
    const auto providers = build_providers(load_config(test::fixture_path("chatiyp.live.json")));
    EXPECT_EQ(providers.at(Role::cypher), providers.at(Role::synthesize));
    EXPECT_NE(providers.at(Role::cypher), providers.at(Role::judge));
    EXPECT_EQ(providers.at(Role::judge)->id(), "openai:gpt-4");
    EXPECT_EQ(providers.at(Role::embed)->id(), "scripted:script");
}

// Pipeline

TEST(Pipeline, AnswersReferenceQuestion) {
    const AskResult r = shared_pipeline().ask(test::kPaperQuestion);
    EXPECT_EQ(r.cypher(), std::string(test::kPaperQuery));
    ASSERT_EQ(r.retrieval.candidates.size(), 1u);
    EXPECT_EQ(r.retrieval.candidates[0].text, "p.percent=52.0");
    EXPECT_NE(r.answer.text.find("52.0"), std::string::npos);
    EXPECT_EQ(r.retrieval.path, std::vector<retrieval::Stage>{retrieval::Stage::text_to_cypher});
    EXPECT_EQ(shared_pipeline().graph_nodes(), 8u);
    EXPECT_EQ(shared_pipeline().index().size(), 8u);
}

TEST(Pipeline, UnmappableQuestionFallsBackToVectors) {
    const AskResult r = shared_pipeline().ask("Tell me something about GOOGLE");
    EXPECT_EQ(r.cypher(), std::nullopt);
    ASSERT_GE(r.retrieval.path.size(), 2u);
    EXPECT_EQ(r.retrieval.path[1], retrieval::Stage::vector_fallback);
    EXPECT_EQ(r.retrieval.candidates.size(), 5u);
}

TEST(Pipeline, IndexFileRoundTripAndRequirement) {
    const auto path = std::filesystem::temp_directory_path() / "iyp_pipeline_index.json";
    std::filesystem::remove(path);
    json c = base_config();
    c["index_path"] = path.string();
    const Config cfg = config_from_json(c, fixtures_dir());
    EXPECT_THROW((void)Pipeline::load(cfg, {true}), ConfigError);
    retrieval::save_index(build_index_for(cfg), path);
    const auto p = Pipeline::load(cfg, {true});
    EXPECT_EQ(p->index(), shared_pipeline().index());
    std::filesystem::remove(path);
}

TEST(Pipeline, EvaluatesDevSet) {
    const auto report = shared_pipeline().evaluate(eval::load_dataset(test::fixture_path("dev.jsonl")), {});
    EXPECT_EQ(report.records.size(), 12u);
    EXPECT_TRUE(report.unevaluable.empty());
    bool found = false;
    for (const auto& g : report.groups) {
        if (g.key.difficulty == eval::Difficulty::easy && g.key.domain == eval::Domain::technical) {
            found = true;
            const auto& s = g.metrics.at("geval");
            EXPECT_EQ(s.count, 3u);
            EXPECT_EQ(s.min, 0.5);
            EXPECT_EQ(s.q1, 0.625);
            EXPECT_EQ(s.median, 0.75);
            EXPECT_EQ(s.q3, 0.875);
            EXPECT_EQ(s.max, 1.0);
            EXPECT_EQ(s.mean, 0.75);
        }
    }
    EXPECT_TRUE(found);
}

// Handlers

TEST(Service, LoadingBeforePipeline) {
    Service s(ServiceSettings{}, version());
    EXPECT_FALSE(s.ready());
    const auto h = s.handle_health();
    EXPECT_EQ(h.status, 503);
    EXPECT_EQ(h.body, (json{{"status", "loading"}}));
    EXPECT_EQ(s.handle_ask(json{{"question", "x"}}).status, 503);
    EXPECT_EQ(s.handle_schema().status, 503);
}

TEST(Service, HealthIsStable) {
    Service s(ServiceSettings{}, version());
    s.set_pipeline(fixture_pipeline());
    const auto a = s.handle_health();
    EXPECT_EQ(a.status, 200);
    EXPECT_EQ(a.body["status"], "ok");
    EXPECT_EQ(a.body["graph_nodes"], 8);
    EXPECT_EQ(a.body["index_entries"], 8);
    EXPECT_EQ(a.body["version"], version());
    EXPECT_EQ(s.handle_health().body, a.body);
}

TEST(Service, HealthOnTwoNodeFixture) {
    json c = base_config();
    c["graph"] = {{"ndjson", "tiny.ndjson"}};
    Service s(ServiceSettings{}, version());
    s.set_pipeline(Pipeline::load(config_from_json(c, fixtures_dir())));
    const auto h = s.handle_health();
    EXPECT_EQ(h.body["graph_nodes"], 2);
    EXPECT_EQ(h.body["status"], "ok");
}

TEST(Service, AskReturnsAnswerAndCypher) {
    Service s(ServiceSettings{}, version());
    s.set_pipeline(fixture_pipeline());
    const auto r = s.handle_ask(json{{"question", test::kPaperQuestion}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
    EXPECT_EQ(r.body["cypher"], test::kPaperQuery);
    EXPECT_NE(r.body["answer"].get<std::string>().find("52.0"), std::string::npos);
    EXPECT_EQ(r.body["context"], json::parse(R"([{"source":"cypher","text":"p.percent=52.0","score":1.0}])"));
    EXPECT_EQ(r.body["path"], json::array({"text_to_cypher"}));
    EXPECT_TRUE(r.body["timings"].contains("text_to_cypher"));
    EXPECT_TRUE(r.body["timings"].contains("synthesize"));
    EXPECT_TRUE(r.body["request_id"].is_string());
}

TEST(Service, AskIsStatelessApartFromIdsAndTimings) {
    Service s(ServiceSettings{}, version());
    s.set_pipeline(fixture_pipeline());
    const json req{{"question", test::kPaperQuestion}};
    const auto a = s.handle_ask(req);
    const auto b = s.handle_ask(req);
    EXPECT_NE(a.body["request_id"], b.body["request_id"]);
    EXPECT_EQ(without_volatile(a.body), without_volatile(b.body));
}

TEST(Service, RejectsInvalidRequests) {
    Service s(ServiceSettings{}, version());
    s.set_pipeline(fixture_pipeline());
    EXPECT_EQ(s.handle_ask(json{{"question", "   "}}).status, 400);
    EXPECT_EQ(s.handle_ask(json{{"question", ""}}).status, 400);
    EXPECT_EQ(s.handle_ask(json{{"q", "x"}}).status, 400);
    EXPECT_EQ(s.handle_ask(json::array()).status, 400);
    EXPECT_EQ(s.handle_ask(std::string_view("{nope")).status, 400);
    EXPECT_EQ(s.handle_ask(json{{"question", "x"}, {"extra", 1}}).status, 400);
    const auto with = [&](const json& options) {
        return s.handle_ask(json{{"question", test::kPaperQuestion}, {"options", options}}).status;
    };
    EXPECT_EQ(with({{"k", 51}}), 400);
    EXPECT_EQ(with({{"k", 0}}), 400);
    EXPECT_EQ(with({{"top_n", 21}}), 400);
    EXPECT_EQ(with({{"min_rows", 0}}), 400);
    EXPECT_EQ(with({{"min_rows", 1.5}}), 400);
    EXPECT_EQ(with({{"depth", 2}}), 400);
    EXPECT_EQ(with({{"k", 50}, {"top_n", 20}, {"min_rows", 2}}), 200);
}

TEST(Service, OptionsReachRetrieval) {
    Service s(ServiceSettings{}, version());
    s.set_pipeline(fixture_pipeline());
    const auto r = s.handle_ask(json{{"question", test::kPaperQuestion}, {"options", {{"min_rows", 2}, {"k", 3}}}});
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(r.body["path"], json::array({"text_to_cypher", "vector_fallback"}));
    EXPECT_EQ(r.body["context"].size(), 4u);
    EXPECT_EQ(r.body["cypher"], test::kPaperQuery);
}

TEST(Service, ProviderFailureIs502NamingStage) {
    const json script{{"chat", {{{"match", "Task: text_to_cypher"}, {"error", "model unavailable"}}}}};
    Service s(ServiceSettings{}, version());
    s.set_pipeline(Pipeline::load(config_with_script(script, "fail_t2c")));
    const auto r = s.handle_ask(json{{"question", test::kPaperQuestion}});
    EXPECT_EQ(r.status, 502);
    EXPECT_EQ(r.body["stage"], "text_to_cypher");
    EXPECT_NE(r.body["error"].get<std::string>().find("text_to_cypher"), std::string::npos);
}

TEST(Service, SynthesisFailureIs502) {
    json script;
    {
        std::ifstream in(test::fixture_path("script.json"));
        script = json::parse(in);
    }
    json chat = json::array({{{"match", "Task: synthesize"}, {"error", "overloaded"}, {"transient", true}}});
    for (const auto& e : script["chat"]) {
        chat.push_back(e);
    }
    script["chat"] = chat;
    Service s(ServiceSettings{}, version());
    s.set_pipeline(Pipeline::load(config_with_script(script, "fail_synth")));
    const auto r = s.handle_ask(json{{"question", test::kPaperQuestion}});
    EXPECT_EQ(r.status, 502);
    EXPECT_EQ(r.body["stage"], "synthesize");
}

TEST(Service, SchemaEndpoint) {
    Service s(ServiceSettings{}, version());
    s.set_pipeline(fixture_pipeline());
    const auto r = s.handle_schema();
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.body["labels"], json::array({"AS", "Country", "Prefix"}));
}

TEST(Service, RemoteGraphModeQueriesEndpoint) {
    test::StubServer db;
    std::atomic<int> hits{0};
    db.server().Post("/db/iyp/tx/commit", [&](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.set_content(R"({"results":[{"columns":["p.percent"],"data":[{"row":[52.0],"meta":[null]}]}],"errors":[]})",
                        "application/json");
    });
    db.start();
    json c = base_config();
    c["graph"]["remote"] = {{"url", db.url()}, {"database", "iyp"}};
    Service s(ServiceSettings{}, version());
    s.set_pipeline(Pipeline::load(config_from_json(c, fixtures_dir())));
    const auto r = s.handle_ask(json{{"question", test::kPaperQuestion}});
    ASSERT_EQ(r.status, 200) << r.body.dump();
    EXPECT_EQ(hits.load(), 1);
    EXPECT_EQ(r.body["context"][0]["text"], "p.percent=52.0");
    EXPECT_NE(r.body["diagnostics"][0]["message"].get<std::string>().find("remote:"), std::string::npos);
}

TEST(Service, RemoteGraphDownBecomesFallback) {
    json c = base_config();
    c["graph"]["remote"] = {{"url", "http://127.0.0.1:" + std::to_string(test::closed_port())}, {"timeout_ms", 2000}};
    Service s(ServiceSettings{}, version());
    s.set_pipeline(Pipeline::load(config_from_json(c, fixtures_dir())));
    const auto r = s.handle_ask(json{{"question", test::kPaperQuestion}});
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(r.body["path"][1], "vector_fallback");
    EXPECT_NE(r.body["diagnostics"][0]["message"].get<std::string>().find("execution error"), std::string::npos);
}

// HTTP transport

TEST(HttpServer, RoutesAndCors) {
    Service s(ServiceSettings{}, version());
    HttpServer server(s);
    const int port = server.bind("127.0.0.1", 0);
    std::thread t([&] { server.listen(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);
    const auto loading = client.Get("/api/health");
    ASSERT_TRUE(loading);
    EXPECT_EQ(loading->status, 503);
    s.set_pipeline(fixture_pipeline());
    const auto health = client.Get("/api/health");
    ASSERT_TRUE(health);
    EXPECT_EQ(health->status, 200);
    EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), ServiceSettings{}.cors_origin);
    EXPECT_EQ(health->get_header_value("Content-Type"), "application/json");
    const auto pre = client.Options("/api/ask");
    ASSERT_TRUE(pre);
    EXPECT_EQ(pre->status, 204);
    EXPECT_NE(pre->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);
    const auto ask = client.Post("/api/ask", json{{"question", test::kPaperQuestion}}.dump(), "application/json");
    ASSERT_TRUE(ask);
    EXPECT_EQ(ask->status, 200);
    EXPECT_EQ(json::parse(ask->body)["cypher"], test::kPaperQuery);
    const auto bad = client.Post("/api/ask", "{}", "application/json");
    ASSERT_TRUE(bad);
    EXPECT_EQ(bad->status, 400);
    const auto schema = client.Get("/api/schema");
    ASSERT_TRUE(schema);
    EXPECT_EQ(schema->status, 200);
    server.stop();
    t.join();
}

}  // namespace
}  // namespace iyp::service
