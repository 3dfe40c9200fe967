// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cypher_oracle.hpp"
#include "fixtures.hpp"
#include "iyp/cypher/lexer.hpp"
#include "iyp/cypher/parser.hpp"
#include "iyp/cypher/read_only.hpp"
#include "iyp/cypher/render.hpp"

namespace iyp::cypher {
namespace {

TEST(Lexer, TracksPositionsAndDecodesStrings) {
    const auto tokens = tokenize("MATCH (a)\n  WHERE a.name = 'it\\'s' RETURN `odd name`");
    ASSERT_GE(tokens.size(), 3u);
    EXPECT_EQ(tokens[0].kind, TokenKind::identifier);
    EXPECT_EQ(tokens[0].line, 1u);
    EXPECT_EQ(tokens[0].column, 1u);
    const auto where = std::find_if(tokens.begin(), tokens.end(),
                                    [](const Token& t) { return t.text == "WHERE"; });
    ASSERT_NE(where, tokens.end());
    EXPECT_EQ(where->line, 2u);
    EXPECT_EQ(where->column, 3u);
    const auto str = std::find_if(tokens.begin(), tokens.end(),
                                  [](const Token& t) { return t.kind == TokenKind::string; });
    ASSERT_NE(str, tokens.end());
    EXPECT_EQ(str->text, "it's");
    EXPECT_EQ(tokens[tokens.size() - 2].kind, TokenKind::quoted_identifier);
    EXPECT_EQ(tokens[tokens.size() - 2].text, "odd name");
    EXPECT_EQ(tokens.back().kind, TokenKind::end);
}

TEST(Lexer, RejectsUnterminatedString) {
    EXPECT_THROW((void)tokenize("RETURN 'abc"), SyntaxError);
}

TEST(Parser, ReferenceQueryShape) {
    const Query q = parse(test::kPaperQuery);
    ASSERT_EQ(q.patterns.size(), 1u);
    const auto& path = q.patterns[0];
    ASSERT_EQ(path.nodes.size(), 2u);
    ASSERT_EQ(path.rels.size(), 1u);
    EXPECT_FALSE(path.nodes[0].variable.has_value());
    EXPECT_EQ(path.nodes[0].labels, std::vector<std::string>{"AS"});
    ASSERT_EQ(path.nodes[0].properties.size(), 1u);
    EXPECT_EQ(path.nodes[0].properties[0].first, "asn");
    EXPECT_EQ(path.nodes[0].properties[0].second, PropertyValue(2497));
    EXPECT_EQ(path.rels[0].variable, "p");
    EXPECT_EQ(path.rels[0].type, "POPULATION");
    EXPECT_EQ(path.rels[0].direction, Direction::undirected);
    EXPECT_EQ(path.nodes[1].labels, std::vector<std::string>{"Country"});
    EXPECT_EQ(path.nodes[1].properties[0].second, PropertyValue("JP"));
    ASSERT_EQ(q.returns.size(), 1u);
    EXPECT_EQ(q.returns[0].projection, Projection(PropertyRef{"p", "percent"}));
    EXPECT_FALSE(q.where.has_value());
    EXPECT_FALSE(q.limit.has_value());
}

TEST(Parser, ReferenceQueryCanonicalRender) {
    EXPECT_EQ(render(parse(test::kPaperQuery)),
              "MATCH (:AS {asn: 2497})-[p:POPULATION]-(:Country {country_code: 'JP'}) "
              "RETURN p.percent");
}

TEST(Parser, UnclosedNodePatternIsSyntaxError) {
    try {
        (void)parse("MATCH (a:AS RETURN a");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_EQ(e.column(), 13u);
        EXPECT_EQ(e.token(), "RETURN");
        EXPECT_NE(std::string(e.what()).find("line 1, column 13"), std::string::npos);
    }
}

TEST(Parser, KeywordsAreCaseInsensitive) {
    EXPECT_EQ(parse("match (a:AS) where a.asn > 1 return distinct a.name order by a.name desc limit 2"),
              parse("MATCH (a:AS) WHERE a.asn > 1 RETURN DISTINCT a.name ORDER BY a.name DESC LIMIT 2"));
}

TEST(Parser, TrailingSemicolonAccepted) {
    EXPECT_EQ(parse("MATCH (a) RETURN a;"), parse("MATCH (a) RETURN a"));
}

TEST(Parser, OperatorPrecedence) {
    const Query q = parse("MATCH (a) WHERE a.x = 1 OR a.x = 2 AND NOT a.y = 3 RETURN a");
    ASSERT_TRUE(q.where.has_value());
    EXPECT_EQ(q.where->kind, BoolExpr::Kind::disjunction);
    ASSERT_EQ(q.where->children.size(), 2u);
    EXPECT_EQ(q.where->children[1].kind, BoolExpr::Kind::conjunction);
    EXPECT_EQ(q.where->children[1].children[1].kind, BoolExpr::Kind::negation);
}

TEST(Parser, AggregatesAndAliases) {
    const Query q = parse("MATCH (a:AS) RETURN count(DISTINCT a.name) AS n, count(*), max(a.asn)");
    ASSERT_EQ(q.returns.size(), 3u);
    const auto& first = std::get<Aggregate>(q.returns[0].projection);
    EXPECT_EQ(first.fn, AggregateFn::count);
    EXPECT_TRUE(first.distinct);
    EXPECT_EQ(q.returns[0].alias, "n");
    EXPECT_FALSE(std::get<Aggregate>(q.returns[1].projection).argument.has_value());
    EXPECT_EQ(column_name(q.returns[1]), "count(*)");
    EXPECT_EQ(column_name(q.returns[2]), "max(a.asn)");
}

TEST(Parser, RejectsUnsupportedConstructs) {
    const std::vector<std::string> bad{
        "MATCH (a)-[*1..3]-(b) RETURN a",
        "MATCH (a)-[:T|U]-(b) RETURN a",
        "MATCH (a) RETURN a UNION MATCH (b) RETURN b",
        "MATCH (a) WITH a RETURN a",
        "OPTIONAL MATCH (a) RETURN a",
        "MATCH (a) RETURN sum(*)",
        "MATCH (a) RETURN a LIMIT -1",
        "RETURN 1",
        "MATCH (a {x: 1, x: 2}) RETURN a",
    };
    for (const auto& text : bad) {
        EXPECT_THROW((void)parse(text), SyntaxError) << text;
    }
}

TEST(Parser, SemanticChecks) {
    const std::vector<std::string> bad{
        "MATCH (a) RETURN b",
        "MATCH (a) WHERE b.x = 1 RETURN a",
        "MATCH (a)-[a]-(b) RETURN a",
        "MATCH (a)-[r]-(b)-[r]-(c) RETURN a",
        "MATCH (a) RETURN a.x, a.x",
        "MATCH (a) RETURN DISTINCT a.x ORDER BY a.y",
        "MATCH (a) RETURN count(a) AS n ORDER BY a.x",
    };
    for (const auto& text : bad) {
        EXPECT_THROW((void)parse(text), SemanticError) << text;
    }
    EXPECT_NO_THROW((void)parse("MATCH (a) RETURN count(a) AS n ORDER BY n"));
    EXPECT_NO_THROW((void)parse("MATCH (a)-[r]-(b), (b)-[s]-(a) RETURN r, s"));
}

const std::vector<std::string>& golden_corpus() {
    static const std::vector<std::string> k{
        test::kPaperQuery,
        "MATCH (a:AS)-[:ORIGINATE]->(p:Prefix) RETURN a.asn, p.prefix ORDER BY a.asn LIMIT 10",
        "MATCH (c:Country)<-[:COUNTRY]-(a:AS) RETURN c.country_code, count(a) AS n ORDER BY n DESC",
        "MATCH (a:AS) WHERE a.asn >= 2000 AND (a.name = 'IIJ' OR NOT a.asn <> 15169) RETURN a",
        "MATCH (a)-->(b), (b)--(c) WHERE a.x IS NOT NULL RETURN DISTINCT c.name",
        "MATCH (`weird var`:`Odd Label` {`key with space`: \"dq\"}) RETURN `weird var`.`key with space`",
        "MATCH (a:AS:Tier1) WHERE a.active RETURN avg(a.asn), min(a.asn), sum(a.asn)",
        "MATCH (n) WHERE n.score IS NULL RETURN n ORDER BY n.name ASC, n.id DESC",
        "MATCH (a {f: -1.5, b: true, z: null}) RETURN a.f AS value",
        "MATCH (a)-[r:T {w: 2}]->(a) RETURN r",
    };
    return k;
}

TEST(Render, ReparsesToSameAst) {
    for (const auto& text : golden_corpus()) {
        const Query q = parse(text);
        EXPECT_EQ(parse(render(q)), q) << text;
    }
}

TEST(Render, Idempotent) {
    for (const auto& text : golden_corpus()) {
        const std::string once = render(parse(text));
        EXPECT_EQ(render(parse(once)), once) << text;
    }
}

TEST(Render, RandomQueriesRoundTrip) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const std::string text = test::to_cypher(test::random_query(rng));
        const Query q = parse(text);
        EXPECT_EQ(parse(render(q)), q) << text;
    }
}

TEST(ReadOnly, RejectsWrites) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"CREATE (a:AS {asn: 1})", "CREATE"},
        {"MATCH (a) DETACH DELETE a", "DETACH"},
        {"MATCH (a) SET a.x = 1 RETURN a", "SET"},
        {"merge (a:AS {asn: 1})", "MERGE"},
        {"CALL db.labels()", "CALL"},
        {"MATCH (a) REMOVE a.x", "REMOVE"},
        {"LOAD CSV FROM 'f' AS line RETURN line", "LOAD"},
        {"DROP INDEX foo", "DROP"},
        {"MATCH (a) FOREACH (x IN [1] | SET a.y = x)", "FOREACH"},
    };
    for (const auto& [text, keyword] : cases) {
        const auto r = validate_read_only(text);
        ASSERT_TRUE(r.has_value()) << text;
        EXPECT_EQ(r->keyword, keyword) << text;
        EXPECT_THROW(require_read_only(text), ReadOnlyViolation) << text;
    }
}

TEST(ReadOnly, IgnoresKeywordsInLiteralsAndNames) {
    const std::vector<std::string> ok{
        "MATCH (a {name: 'SET'}) RETURN a",
        "MATCH (a) WHERE a.note = \"CREATE something\" RETURN a",
        "MATCH (a:Set)-[:CREATE]->(b) RETURN a.delete",
        "MATCH (a {set: 1}) RETURN a",
        "MATCH (`DELETE`) RETURN `DELETE`",
        "MATCH (a) // DELETE a\nRETURN a",
        test::kPaperQuery,
    };
    for (const auto& text : ok) {
        EXPECT_FALSE(validate_read_only(text).has_value()) << text;
    }
}

TEST(ReadOnly, ParsedQueriesAreReadOnly) {
    EXPECT_FALSE(validate_read_only(parse(test::kPaperQuery)).has_value());
}

}  // namespace
}  // namespace iyp::cypher
