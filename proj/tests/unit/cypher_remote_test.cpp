// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <mutex>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "iyp/cypher/query_executor.hpp"
#include "iyp/cypher/read_only.hpp"
#include "iyp/cypher/remote.hpp"
#include "stub_server.hpp"

namespace iyp::cypher {
namespace {

using nlohmann::json;

TEST(RemoteResponse, MapsRowsAndEntities) {
    const json body = json::parse(R"({
        "results": [{
            "columns": ["p.percent", "a", "tags"],
            "data": [{"row": [52.0, {"asn": 2497}, [1, 2]],
                      "meta": [null, {"id": 7, "type": "node"}, null]}]
        }],
        "errors": []
    })");
    const RowSet rows = parse_transaction_response(body);
    EXPECT_EQ(rows.columns, (std::vector<std::string>{"p.percent", "a", "tags"}));
    ASSERT_EQ(rows.rows.size(), 1u);
    EXPECT_EQ(std::get<PropertyValue>(rows.rows[0][0]), PropertyValue(52.0));
    const auto& a = std::get<Entity>(rows.rows[0][1]);
    EXPECT_EQ(a.kind, EntityKind::node);
    EXPECT_EQ(a.id, 7u);
    EXPECT_EQ(a.properties.at("asn"), PropertyValue(2497));
    EXPECT_EQ(std::get<PropertyValue>(rows.rows[0][2]), PropertyValue("[1,2]"));
}

TEST(RemoteResponse, ErrorsArrayRaisesFirstMessageVerbatim) {
    const json body = json::parse(R"({"results": [], "errors": [
        {"code": "Neo.ClientError.Statement.SyntaxError", "message": "Invalid input 'X'"},
        {"message": "second"}]})");
    try {
        (void)parse_transaction_response(body);
        FAIL();
    } catch (const RemoteError& e) {
        EXPECT_EQ(e.kind(), RemoteError::Kind::query);
        EXPECT_STREQ(e.what(), "Invalid input 'X'");
    }
}

TEST(RemoteResponse, MalformedBodiesAreProtocolErrors) {
    for (const char* text : {R"([])", R"({"results": []})", R"({"results": [{"data": []}]})",
                             R"({"results": [{"columns": ["a"], "data": [{"row": [1, 2]}]}]})"}) {
        try {
            (void)parse_transaction_response(json::parse(text));
            FAIL() << text;
        } catch (const RemoteError& e) {
            EXPECT_EQ(e.kind(), RemoteError::Kind::protocol) << text;
        }
    }
}

TEST(RemoteRequest, BodyShape) {
    EXPECT_EQ(transaction_request_body("MATCH (a) RETURN a").dump(),
              R"({"statements":[{"statement":"MATCH (a) RETURN a"}]})");
}

TEST(RemoteExecute, PostsToTransactionEndpoint) {
    test::StubServer stub;
    std::mutex mu;
    std::string seen_path;
    std::string seen_auth;
    json seen_body;
    stub.server().Post(R"(/db/([^/]+)/tx/commit)", [&](const httplib::Request& req,
                                                       httplib::Response& res) {
        {
            std::lock_guard lock(mu);
            seen_path = req.path;
            seen_auth = req.get_header_value("Authorization");
            seen_body = json::parse(req.body);
        }
        res.set_content(R"({"results":[{"columns":["p.percent"],"data":[{"row":[52.0]}]}],"errors":[]})",
                         "application/json");
    });
    stub.start();

    RemoteEndpointConfig cfg;
    cfg.url = stub.url();
    cfg.database = "iyp";
    cfg.bearer_token = "tok";
    const RowSet rows = execute_remote(test::kPaperQuery, cfg);
    ASSERT_EQ(rows.rows.size(), 1u);
    EXPECT_EQ(std::get<PropertyValue>(rows.rows[0][0]), PropertyValue(52.0));
    std::lock_guard lock(mu);
    EXPECT_EQ(seen_path, "/db/iyp/tx/commit");
    EXPECT_EQ(seen_auth, "Bearer tok");
    EXPECT_EQ(seen_body["statements"][0]["statement"], test::kPaperQuery);
}

TEST(RemoteExecute, NonSuccessStatus) {
    test::StubServer stub;
    stub.server().Post(R"(/db/neo4j/tx/commit)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 401;
        res.set_content("unauthorized", "text/plain");
    });
    stub.start();
    RemoteEndpointConfig cfg;
    cfg.url = stub.url();
    try {
        (void)execute_remote("MATCH (a) RETURN a", cfg);
        FAIL();
    } catch (const RemoteError& e) {
        EXPECT_EQ(e.kind(), RemoteError::Kind::http_status);
        EXPECT_EQ(e.status(), 401);
    }
}

TEST(RemoteExecute, WritesNeverLeaveTheProcess) {
    test::StubServer stub;
    int calls = 0;
    stub.server().Post(R"(/db/neo4j/tx/commit)", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.set_content("{}", "application/json");
    });
    stub.start();
    RemoteEndpointConfig cfg;
    cfg.url = stub.url();
    EXPECT_THROW((void)execute_remote("MATCH (a) DETACH DELETE a", cfg), ReadOnlyViolation);
    EXPECT_EQ(calls, 0);
}

TEST(RemoteExecute, ClosedPortFailsWithinTimeout) {
    RemoteEndpointConfig cfg;
    cfg.url = "http://127.0.0.1:" + std::to_string(test::closed_port());
    cfg.timeout = std::chrono::milliseconds(500);
    const auto start = std::chrono::steady_clock::now();
    try {
        (void)RemoteExecutor(cfg).run("MATCH (a) RETURN a");
        FAIL();
    } catch (const RemoteError& e) {
        EXPECT_TRUE(e.kind() == RemoteError::Kind::network || e.kind() == RemoteError::Kind::timeout);
    }
    EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(RemoteExecute, RejectsBadUrl) {
    RemoteEndpointConfig cfg;
    cfg.url = "ftp://example";
    EXPECT_THROW((void)execute_remote("MATCH (a) RETURN a", cfg), RemoteError);
}

}  // namespace
}  // namespace iyp::cypher
