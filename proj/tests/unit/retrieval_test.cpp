// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "iyp/cypher/executor.hpp"
#include "iyp/cypher/parser.hpp"
#include "iyp/graph/schema.hpp"
#include "iyp/llm/scripted.hpp"
#include "iyp/retrieval/orchestrator.hpp"
#include "iyp/retrieval/rerank.hpp"
#include "iyp/retrieval/text_to_cypher.hpp"
#include "iyp/retrieval/vector_index.hpp"
#include "random_graph.hpp"

namespace iyp::retrieval {
namespace {

using nlohmann::json;

const llm::PromptLibrary& prompts() {
    static const auto lib = llm::PromptLibrary::load_dir(IYP_PROMPTS_DIR);
    return lib;
}

llm::ScriptedProvider scripted(const json& script) {
    return llm::ScriptedProvider(llm::script_from_json(script));
}

json answer_question(const std::string& question, const std::string& response) {
    return {{"match", "User question: " + question}, {"response", response}};
}

RetrievalCandidate cand(const std::string& text, double score = 1.0) {
    return {Source::cypher, text, score, CypherProvenance{"q", 0}, {}};
}

TEST(ExtractQuery, Rules) {
    EXPECT_EQ(extract_query("```cypher\nMATCH (a) RETURN a;\n```"), "MATCH (a) RETURN a");
    EXPECT_EQ(extract_query("Here:\n```\nMATCH (a) RETURN a\n```\nand ```x```"), "MATCH (a) RETURN a");
    EXPECT_EQ(extract_query("  MATCH (a) RETURN a ;; "), "MATCH (a) RETURN a");
    EXPECT_EQ(extract_query("```MATCH (a) RETURN a```"), "MATCH (a) RETURN a");
    EXPECT_EQ(extract_query(""), "");
}

TEST(TextToCypher, ReferenceQuestion) {
    const auto p = scripted({{"chat", {answer_question(test::kPaperQuestion,
                                                       std::string("```cypher\n") + test::kPaperQuery + "\n```")}}});
    const auto schema = graph::schema_catalog(test::load_fixture("iyp_fixture.ndjson"));
    EXPECT_EQ(text_to_cypher(test::kPaperQuestion, schema, prompts(), p, {}), test::kPaperQuery);
}

TEST(TextToCypher, PromptCarriesSchemaAndExamples) {
    const auto schema = graph::schema_catalog(test::load_fixture("iyp_fixture.ndjson"));
    // Only answers when the rendered prompt contains the schema and the
    // few-shot pair.
    const auto p = scripted({{"chat", {{{"match", json::array({"Task: text_to_cypher", "POPULATION",
                                                              "country_code", test::kPaperQuery,
                                                              "User question: which?"})},
                                        {"response", "MATCH (a) RETURN a"}}}}});
    EXPECT_EQ(text_to_cypher("which?", schema, prompts(), p, {}), "MATCH (a) RETURN a");
}

TEST(TextToCypher, EmptyCompletion) {
    const auto p = scripted({{"chat", {{{"match", "*"}, {"response", ""}}}}});
    EXPECT_EQ(text_to_cypher("q", {}, prompts(), p, {}), "");
}

class CypherRetrieveTest : public ::testing::Test {
protected:
    graph::PropertyGraph graph_ = test::load_fixture("tiny.ndjson");
    graph::SchemaCatalog schema_ = graph::schema_catalog(graph_);
    cypher::LocalExecutor executor_{graph_};

    CypherRetrieval run_with(const std::string& response) {
        const auto p = scripted({{"chat", {{{"match", "*"}, {"response", response}}}}});
        return cypher_retrieve(test::kPaperQuestion, schema_, executor_, prompts(), p, {});
    }
};

TEST_F(CypherRetrieveTest, ReferenceQueryGivesOneCandidate) {
    const auto r = run_with(test::kPaperQuery);
    ASSERT_EQ(r.candidates.size(), 1u);
    EXPECT_EQ(r.candidates[0].text, "p.percent=52.0");
    EXPECT_EQ(r.candidates[0].source, Source::cypher);
    EXPECT_EQ(r.candidates[0].score, 1.0);
    EXPECT_EQ(std::get<CypherProvenance>(r.candidates[0].provenance).query, test::kPaperQuery);
    EXPECT_EQ(r.executed_cypher, test::kPaperQuery);
}

TEST_F(CypherRetrieveTest, WriteQueryRejected) {
    const auto r = run_with("CREATE (n)");
    EXPECT_TRUE(r.candidates.empty());
    EXPECT_FALSE(r.executed_cypher.has_value());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_NE(r.diagnostics[0].find("read-only"), std::string::npos);
    EXPECT_NE(r.diagnostics[0].find("CREATE"), std::string::npos);
}

TEST_F(CypherRetrieveTest, GibberishIsParseError) {
    const auto r = run_with("I am not sure what you mean.");
    EXPECT_TRUE(r.candidates.empty());
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].rfind("parse error", 0), 0u);
}

TEST_F(CypherRetrieveTest, ZeroRowsStillExecuted) {
    const auto r = run_with("MATCH (c:Country {country_code: 'XX'}) RETURN c");
    EXPECT_TRUE(r.candidates.empty());
    EXPECT_TRUE(r.executed_cypher.has_value());
}

TEST(RowText, ColumnOrder) {
    cypher::RowSet rows{{"b", "a"}, {{cypher::PropertyValue(1), cypher::PropertyValue("x")}}};
    EXPECT_EQ(row_text(rows, 0), "b=1; a=x");
}

TEST(VectorIndex, BuildTinyGraph) {
    const auto g = test::load_fixture("tiny.ndjson");
    const auto p = scripted({{"embedding_dim", 2}});
    const auto index = build_vector_index(g, p);
    EXPECT_EQ(index.size(), 2u);
    EXPECT_EQ(index.dimension(), 2u);
    EXPECT_EQ(index.entries()[0].node_id, 0u);
    EXPECT_EQ(index, build_vector_index(g, p));
    EXPECT_THROW((void)build_vector_index(graph::PropertyGraph{}, p), std::invalid_argument);
}

TEST(VectorIndex, BatchesAndParallelAssemblyAreDeterministic) {
    std::mt19937_64 rng(4);
    const auto g = test::random_graph(rng, 8, 10);
    const auto p = scripted({{"embedding_dim", 8}, {"seed", 3}});
    const auto serial = build_vector_index(g, p, {true, 64, 1});
    const auto batched = build_vector_index(g, p, {true, 3, 3});
    EXPECT_EQ(serial, batched);
}

TEST(VectorIndex, PersistRoundTrip) {
    const auto g = test::load_fixture("iyp_fixture.ndjson");
    const auto p = scripted({{"embedding_dim", 16}});
    const auto index = build_vector_index(g, p);
    const auto path = std::filesystem::temp_directory_path() / "iyp_index_roundtrip.json";
    save_index(index, path);
    const auto back = load_index(path);
    std::filesystem::remove(path);
    ASSERT_EQ(back.size(), index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        EXPECT_EQ(back.entries()[i].node_id, index.entries()[i].node_id);
        EXPECT_EQ(back.entries()[i].text, index.entries()[i].text);
        EXPECT_EQ(back.entries()[i].vector, index.entries()[i].vector);
    }
    EXPECT_THROW((void)index_from_json(json::parse(R"([{"node_id":1,"text":"a","vector":[1]},
                                                      {"node_id":2,"text":"b","vector":[1,0]}])")),
                 std::invalid_argument);
}

VectorIndex two_axis_index() {
    return VectorIndex({{0, "n0", {1, 0}}, {1, "n1", {0, 1}}});
}

TEST(VectorRetrieve, IdenticalVector) {
    const auto p = scripted({{"embeddings", {{"q", {1, 0}}}}});
    const auto hits = vector_retrieve("q", two_axis_index(), p, 1);
    ASSERT_EQ(hits.size(), 1u);
    EXPECT_EQ(std::get<VectorProvenance>(hits[0].provenance).node_id, 0u);
    EXPECT_EQ(hits[0].score, 1.0);
    EXPECT_EQ(hits[0].source, Source::vector);
}

TEST(VectorRetrieve, OrthogonalSecond) {
    const auto p = scripted({{"embeddings", {{"q", {1, 0}}}}});
    const auto hits = vector_retrieve("q", two_axis_index(), p, 2);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_EQ(hits[0].score, 1.0);
    EXPECT_EQ(hits[1].score, 0.0);
    EXPECT_EQ(std::get<VectorProvenance>(hits[1].provenance).node_id, 1u);
}

TEST(VectorRetrieve, HandDerivedDotProducts) {
    const auto p = scripted({{"embeddings", {{"q", {0.6, 0.8}}}}});
    const auto hits = vector_retrieve("q", two_axis_index(), p, 2);
    ASSERT_EQ(hits.size(), 2u);
    EXPECT_EQ(std::get<VectorProvenance>(hits[0].provenance).node_id, 1u);
    EXPECT_NEAR(hits[0].score, 0.8, 1e-12);
    EXPECT_EQ(std::get<VectorProvenance>(hits[1].provenance).node_id, 0u);
    EXPECT_NEAR(hits[1].score, 0.6, 1e-12);
}

TEST(VectorRetrieve, TiesByNodeIdAndMonotoneScores) {
    const VectorIndex tied({{7, "a", {1, 0}}, {3, "b", {1, 0}}, {5, "c", {0, 1}}});
    const auto p = scripted({{"embeddings", {{"q", {1, 0}}}}});
    const auto hits = vector_retrieve("q", tied, p, 3);
    EXPECT_EQ(std::get<VectorProvenance>(hits[0].provenance).node_id, 3u);
    EXPECT_EQ(std::get<VectorProvenance>(hits[1].provenance).node_id, 7u);

    std::mt19937_64 rng(8);
    const auto hp = scripted({{"embedding_dim", 12}});
    for (int i = 0; i < 50; ++i) {
        const auto g = test::random_graph(rng);
        const auto index = build_vector_index(g, hp);
        const auto all = vector_retrieve("A x name p T", index, hp, 100);
        EXPECT_EQ(all.size(), index.size());
        for (std::size_t k = 1; k < all.size(); ++k) {
            EXPECT_GE(all[k - 1].score, all[k].score);
            EXPECT_GE(all[k].score, -1.0);
            EXPECT_LE(all[k].score, 1.0);
        }
    }
    EXPECT_THROW((void)vector_retrieve("q", tied, p, 0), std::invalid_argument);
}

json rerank_script(const std::vector<std::pair<std::string, std::string>>& replies) {
    json chat = json::array();
    for (const auto& [text, reply] : replies) {
        chat.push_back({{"match", json::array({"Task: rerank", "Candidate context:\n" + text + "\n"})},
                        {"response", reply}});
    }
    return {{"chat", chat}};
}

TEST(Rerank, SortsByScriptedScores) {
    const auto p = scripted(rerank_script({{"c1", "2"}, {"c2", "9"}, {"c3", "Relevance: 5"}}));
    const auto r = rerank("q", {cand("c1"), cand("c2"), cand("c3")}, prompts(), p, {}, 2);
    ASSERT_EQ(r.candidates.size(), 2u);
    EXPECT_EQ(r.candidates[0].text, "c2");
    EXPECT_EQ(r.candidates[1].text, "c3");
    EXPECT_EQ(r.candidates[0].relevance, 9);
}

TEST(Rerank, AllKeptWhenNLarge) {
    const auto p = scripted(rerank_script({{"c1", "2"}, {"c2", "9"}, {"c3", "5"}}));
    const auto r = rerank("q", {cand("c1"), cand("c2"), cand("c3")}, prompts(), p, {}, 10);
    ASSERT_EQ(r.candidates.size(), 3u);
    EXPECT_EQ(r.candidates[2].text, "c1");
}

TEST(Rerank, UnparseableScoresZeroAndLast) {
    const auto p = scripted(rerank_script({{"c1", "no idea"}, {"c2", "1"}, {"c3", "3"}}));
    const auto r = rerank("q", {cand("c1"), cand("c2"), cand("c3")}, prompts(), p, {}, 3);
    EXPECT_EQ(r.candidates.back().text, "c1");
    EXPECT_EQ(r.candidates.back().relevance, 0);
    ASSERT_EQ(r.diagnostics.size(), 1u);
}

TEST(Rerank, TiesByScoreThenPosition) {
    const auto p = scripted(rerank_script({{"a", "5"}, {"b", "5"}, {"c", "5"}}));
    const auto r = rerank("q", {cand("a", 0.2), cand("b", 0.9), cand("c", 0.2)}, prompts(), p, {}, 3);
    EXPECT_EQ(r.candidates[0].text, "b");
    EXPECT_EQ(r.candidates[1].text, "a");
    EXPECT_EQ(r.candidates[2].text, "c");
}

TEST(Rerank, PreconditionsAndParse) {
    const auto p = scripted(rerank_script({}));
    EXPECT_THROW((void)rerank("q", {}, prompts(), p, {}, 1), std::invalid_argument);
    EXPECT_THROW((void)rerank("q", {cand("a")}, prompts(), p, {}, 0), std::invalid_argument);
    EXPECT_EQ(parse_relevance("10"), 10);
    EXPECT_EQ(parse_relevance("Score 11 then 4"), 4);
    EXPECT_EQ(parse_relevance("7.5"), std::nullopt);
    EXPECT_EQ(parse_relevance("none"), std::nullopt);
}

TEST(RerankProperty, FilterLaw) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> size(1, 9);
    std::uniform_int_distribution<int> score(0, 10);
    std::uniform_int_distribution<int> pick_n(1, 12);
    for (int i = 0; i < 100; ++i) {
        std::vector<RetrievalCandidate> in;
        std::vector<std::pair<std::string, std::string>> replies;
        for (int k = size(rng); k > 0; --k) {
            const std::string text = "cand" + std::to_string(in.size());
            in.push_back(cand(text, score(rng) / 10.0));
            replies.push_back({text, std::to_string(score(rng))});
        }
        const auto p = scripted(rerank_script(replies));
        const std::size_t n = static_cast<std::size_t>(pick_n(rng));
        const auto serial = rerank("q", in, prompts(), p, {}, n, 1);
        const auto parallel = rerank("q", in, prompts(), p, {}, n, 4);
        ASSERT_EQ(serial.candidates.size(), std::min(n, in.size()));
        EXPECT_EQ(serial.candidates, parallel.candidates);
        std::vector<std::string> seen;
        for (const auto& c : serial.candidates) {
            EXPECT_NE(std::find_if(in.begin(), in.end(), [&](const auto& x) { return x.text == c.text; }),
                      in.end());
            seen.push_back(c.text);
        }
        std::sort(seen.begin(), seen.end());
        EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
        for (std::size_t k = 1; k < serial.candidates.size(); ++k) {
            EXPECT_GE(*serial.candidates[k - 1].relevance, *serial.candidates[k].relevance);
        }
    }
}

/// A complete scripted retrieval stack over one graph.
struct Stack {
    graph::PropertyGraph graph;
    graph::SchemaCatalog schema;
    cypher::LocalExecutor executor;
    llm::ScriptedProvider cypher_llm;
    llm::ScriptedProvider embedder;
    llm::ScriptedProvider reranker;
    VectorIndex index;

    Stack(graph::PropertyGraph g, const std::string& cypher_reply, bool with_index = true,
          const std::string& rerank_reply = "5")
        : graph(std::move(g)),
          schema(graph::schema_catalog(graph)),
          executor(graph),
          cypher_llm(llm::script_from_json({{"chat", {{{"match", "*"}, {"response", cypher_reply}}}}})),
          embedder(llm::script_from_json({{"embedding_dim", 16}})),
          reranker(llm::script_from_json({{"chat", {{{"match", "*"}, {"response", rerank_reply}}}}})),
          index(with_index ? build_vector_index(graph, embedder) : VectorIndex{}) {}

    RetrievalDeps deps() const {
        return {schema, executor, index, prompts(), cypher_llm, embedder, reranker, {}};
    }
};

TEST(Retrieve, EnoughCypherRowsNoFallback) {
    const Stack s(test::load_fixture("iyp_fixture.ndjson"), test::kPaperQuery);
    const auto r = retrieve(test::kPaperQuestion, s.deps());
    EXPECT_EQ(r.path, std::vector<Stage>{Stage::text_to_cypher});
    ASSERT_EQ(r.candidates.size(), 1u);
    EXPECT_EQ(r.candidates[0].text, "p.percent=52.0");
}

TEST(Retrieve, ParseFailureFallsBackToVectors) {
    const Stack s(test::load_fixture("iyp_fixture.ndjson"), "MATCH (a:AS RETURN a");
    const auto r = retrieve(test::kPaperQuestion, s.deps());
    EXPECT_EQ(r.path, (std::vector<Stage>{Stage::text_to_cypher, Stage::vector_fallback}));
    ASSERT_EQ(r.candidates.size(), 5u);
    for (const auto& c : r.candidates) {
        EXPECT_EQ(c.source, Source::vector);
    }
    EXPECT_FALSE(r.executed_cypher.has_value());
}

TEST(Retrieve, SparseCypherPlusFallbackIsReranked) {
    // Four rows against min_rows 5: fallback appends five hits, nine > 5.
    const Stack s(test::load_fixture("iyp_fixture.ndjson"),
                  "MATCH (a)-[r:COUNTRY]->(c) RETURN a, c.country_code LIMIT 4");
    RetrievalConfig cfg;
    cfg.min_rows = 5;
    const auto r = retrieve("anything", s.deps(), cfg);
    EXPECT_EQ(r.path, (std::vector<Stage>{Stage::text_to_cypher, Stage::vector_fallback, Stage::rerank}));
    EXPECT_EQ(r.candidates.size(), 5u);
    for (const auto& c : r.candidates) {
        EXPECT_TRUE(c.relevance.has_value());
    }
}

TEST(Retrieve, ProviderFailureNamesStage) {
    Stack s(test::load_fixture("tiny.ndjson"), "x");
    const auto failing = scripted({{"chat", {{{"match", "*"}, {"error", "upstream down"}}}}});
    RetrievalDeps deps{s.schema, s.executor, s.index, prompts(), failing, s.embedder, s.reranker, {}};
    try {
        (void)retrieve("q", deps);
        FAIL();
    } catch (const StageError& e) {
        EXPECT_EQ(e.stage(), Stage::text_to_cypher);
        EXPECT_NE(std::string(e.what()).find("upstream down"), std::string::npos);
    }
}

TEST(RetrieveProperty, FallbackIffAndRerankLaw) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> small(0, 6);
    std::uniform_int_distribution<int> pos(1, 6);
    std::bernoulli_distribution coin(0.5);
    int fallbacks = 0;
    int reranks = 0;
    for (int i = 0; i < 200; ++i) {
        auto g = test::random_graph(rng);
        const int mode = small(rng) % 3;
        std::string reply;
        std::size_t cypher_rows = 0;
        if (mode == 0) {
            const std::string q = "MATCH (a) RETURN a.x LIMIT " + std::to_string(small(rng));
            cypher_rows = cypher::execute(cypher::parse(q), g).rows.size();
            reply = q;
        } else if (mode == 1) {
            reply = "MATCH (a:A RETURN a";
        } else {
            reply = "MATCH (a) DETACH DELETE a";
        }
        const bool with_index = coin(rng);
        const Stack s(std::move(g), reply, with_index, std::to_string(small(rng)));
        RetrievalConfig cfg;
        cfg.min_rows = static_cast<std::size_t>(pos(rng));
        cfg.k = static_cast<std::size_t>(pos(rng));
        cfg.rerank_above = static_cast<std::size_t>(small(rng));
        cfg.top_n = static_cast<std::size_t>(pos(rng));
        const auto r = retrieve("A x T", s.deps(), cfg);

        const bool fell_back = std::find(r.path.begin(), r.path.end(), Stage::vector_fallback) != r.path.end();
        ASSERT_EQ(fell_back, cypher_rows < cfg.min_rows) << reply;
        fallbacks += fell_back;
        const std::size_t vector_hits = fell_back ? std::min(cfg.k, s.index.size()) : 0;
        const std::size_t total = cypher_rows + vector_hits;
        const bool reranked = std::find(r.path.begin(), r.path.end(), Stage::rerank) != r.path.end();
        ASSERT_EQ(reranked, total > cfg.rerank_above);
        reranks += reranked;
        ASSERT_EQ(r.candidates.size(), reranked ? std::min(cfg.top_n, total) : total);
        if (mode != 0 && with_index) {
            EXPECT_GE(r.candidates.size(), 1u);
        }
        EXPECT_EQ(r.path.front(), Stage::text_to_cypher);
    }
    EXPECT_GT(fallbacks, 20);
    EXPECT_GT(reranks, 20);
}

TEST(Retrieve, ZeroThresholdsRejected) {
    const Stack s(test::load_fixture("tiny.ndjson"), test::kPaperQuery);
    RetrievalConfig cfg;
    cfg.min_rows = 0;
    EXPECT_THROW((void)retrieve("q", s.deps(), cfg), std::invalid_argument);
}

TEST(RetrievalJson, Shape) {
    const Stack s(test::load_fixture("tiny.ndjson"), test::kPaperQuery);
    const json j = to_json(retrieve(test::kPaperQuestion, s.deps()));
    EXPECT_EQ(j["path"], json::array({"text_to_cypher"}));
    EXPECT_EQ(j["executed_cypher"], test::kPaperQuery);
    EXPECT_EQ(j["candidates"][0]["source"], "cypher");
    EXPECT_EQ(j["candidates"][0]["provenance"]["row"], 0);
}

}  // namespace
}  // namespace iyp::retrieval
