// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "iyp/cli/cli.hpp"
#include "iyp/retrieval/vector_index.hpp"
#include "stub_server.hpp"

namespace iyp::cli {
namespace {

using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string config() {
    return test::fixture_path("chatiyp.json").string();
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "iyp_cli_test" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json stable(const std::string& text) {
    json j = json::parse(text);
    j.erase("request_id");
    j.erase("timings");
    return j;
}

TEST(Cli, AskPrintsJsonWithCypher) {
    const auto r = call({"ask", "--config", config(), test::kPaperQuestion});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["cypher"], test::kPaperQuery);
    EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);
    const auto again = call({"ask", "--config", config(), test::kPaperQuestion});
    EXPECT_EQ(stable(r.out), stable(again.out));
}

TEST(Cli, AskPrettyAndOptions) {
    const auto r = call({"ask", "--config", config(), "--pretty", "--min-rows", "2", "--k", "2", test::kPaperQuestion});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 5);
    EXPECT_EQ(json::parse(r.out)["context"].size(), 3u);
    EXPECT_EQ(call({"ask", "--config", config(), "--k", "99", "q"}).code, kExitUsage);
    EXPECT_EQ(call({"ask", "--config", config(), "   "}).code, kExitUsage);
}

TEST(Cli, UsageErrorsExitTwo) {
    const auto r = call({"frobnicate"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    EXPECT_EQ(call({}).code, kExitUsage);
    EXPECT_EQ(call({"ask", "--config", config(), "--bogus", "q"}).code, kExitUsage);
    EXPECT_EQ(call({"ask", "--config", config()}).code, kExitUsage);
    EXPECT_EQ(call({"eval", "--config", config(), "--out", "x.json"}).code, kExitUsage);
    EXPECT_EQ(call({"validate-graph"}).code, kExitUsage);
    EXPECT_EQ(call({"--help"}).code, kExitOk);
}

TEST(Cli, RuntimeFailuresExitOne) {
    const auto r = call({"ask", "--config", "/nonexistent/chatiyp.json", "q"});
    EXPECT_EQ(r.code, kExitFailure);
    EXPECT_NE(r.err.find("cannot open config"), std::string::npos);
    EXPECT_EQ(call({"validate-graph", "--in", "/nonexistent.ndjson"}).code, kExitFailure);
    const auto dir = scratch("broken");
    std::ofstream(dir / "g.ndjson") << R"({"kind":"edge","id":0,"type":"X","from":0,"to":1,"props":{}})" << "\n";
    const auto bad = call({"validate-graph", "--in", (dir / "g.ndjson").string()});
    EXPECT_EQ(bad.code, kExitFailure);
    EXPECT_NE(bad.err.find("error:"), std::string::npos);
    EXPECT_EQ(call({"eval", "--config", config(), "--dataset", "/nonexistent.jsonl", "--out", (dir / "r.json").string()}).code,
              kExitFailure);
}

TEST(Cli, ValidateGraphCounts) {
    const auto r = call({"validate-graph", "--in", test::fixture_path("iyp_fixture.ndjson").string()});
    ASSERT_EQ(r.code, kExitOk);
    const json j = json::parse(r.out);
    EXPECT_EQ(j["nodes"], 8);
    EXPECT_EQ(j["edges"], 11);
    EXPECT_EQ(j["labels"]["AS"], 3);
}

TEST(Cli, IndexWritesLoadableFile) {
    const auto dir = scratch("index");
    const auto path = dir / "index.json";
    const auto r = call({"index", "--config", config(), "--out", path.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(json::parse(r.out)["entries"], 8);
    EXPECT_EQ(retrieval::load_index(path).size(), 8u);
    EXPECT_EQ(call({"index", "--config", config()}).code, kExitUsage);
}

TEST(Cli, EvalWritesReportsAndIsReproducibleWithWarmCache) {
    const auto dir = scratch("eval");
    json cfg;
    {
        std::ifstream in(config());
        cfg = json::parse(in);
    }
    const auto fixtures = std::filesystem::path(IYP_FIXTURE_DIR);
    cfg["graph"]["ndjson"] = (fixtures / "iyp_fixture.ndjson").string();
    cfg["prompts_dir"] = (std::filesystem::path(IYP_PROMPTS_DIR)).string();
    cfg["provider"]["script"] = (fixtures / "script.json").string();
    cfg["eval"]["cache_dir"] = "cache";
    std::ofstream(dir / "chatiyp.json") << cfg.dump(2);
    const std::string c = (dir / "chatiyp.json").string();
    const auto dataset = test::fixture_path("dev.jsonl").string();
    const auto first = call({"eval", "--config", c, "--dataset", dataset, "--out", (dir / "a.json").string()});
    ASSERT_EQ(first.code, kExitOk) << first.err;
    EXPECT_NE(first.err.find("easy"), std::string::npos);  // summary table
    EXPECT_TRUE(std::filesystem::exists(dir / "a.csv"));
    EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir / "cache"), std::filesystem::directory_iterator()), 12);
    const auto second = call({"eval", "--config", c, "--dataset", dataset, "--out", (dir / "b.json").string()});
    ASSERT_EQ(second.code, kExitOk);
    EXPECT_EQ(read_file(dir / "a.json"), read_file(dir / "b.json"));
    EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));
    const auto pretty = call({"eval", "--config", c, "--dataset", dataset, "--out", (dir / "p.json").string(), "--pretty"});
    EXPECT_NE(pretty.out.find("median per group"), std::string::npos);
}

TEST(Cli, EvalMetricSubset) {
    const auto dir = scratch("subset");
    const auto r = call({"eval", "--config", config(), "--dataset", test::fixture_path("dev.jsonl").string(), "--out",
                         (dir / "r.json").string(), "--metrics", "bleu,rouge"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json report = json::parse(read_file(dir / "r.json"));
    EXPECT_FALSE(report["per_record"]["e1"]["scores"].contains("geval"));
    EXPECT_TRUE(report["per_record"]["e1"]["scores"].contains("bleu"));
    EXPECT_EQ(report["config"]["metrics"], "bleu,rouge");
    EXPECT_EQ(read_file(dir / "r.csv").find(",geval,"), std::string::npos);
}

TEST(Cli, ServeAnswersUntilSignalled) {
    const int port = test::closed_port();
    Result r{};
    std::thread t([&] { r = call({"serve", "--config", config(), "--port", std::to_string(port)}); });
    httplib::Client client("127.0.0.1", port);
    bool ok = false;
    for (int i = 0; i < 200 && !ok; ++i) {
        const auto res = client.Get("/api/health");
        ok = res && res->status == 200;
        if (!ok) {
            std::this_thread::sleep_for(std::chrono::milliseconds(25));
        }
    }
    EXPECT_TRUE(ok);
    std::raise(SIGINT);
    t.join();
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("listening"), std::string::npos);
}

TEST(Cli, ServeWithBrokenPromptsExitsOne) {
    const auto dir = scratch("serve_broken");
    json cfg;
    {
        std::ifstream in(config());
        cfg = json::parse(in);
    }
    cfg["graph"]["ndjson"] = test::fixture_path("iyp_fixture.ndjson").string();
    cfg["provider"]["script"] = test::fixture_path("script.json").string();
    cfg["prompts_dir"] = (dir / "none").string();
    std::ofstream(dir / "c.json") << cfg.dump();
    EXPECT_EQ(call({"serve", "--config", (dir / "c.json").string(), "--port", "0"}).code, kExitFailure);
}

}  // namespace
}  // namespace iyp::cli
