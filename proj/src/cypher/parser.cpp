// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/parser.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <set>

#include "iyp/cypher/lexer.hpp"
#include "iyp/cypher/render.hpp"

namespace iyp::cypher {

namespace {

constexpr std::array<std::string_view, 19> kReserved = {
    "match", "where", "return", "distinct", "order", "by",   "asc",  "ascending", "desc", "descending",
    "limit", "and",   "or",     "not",      "as",    "is",   "null", "true",      "false"};

char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals(std::string_view a, std::string_view b) noexcept {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return lower(x) == lower(y); });
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    Query run() {
        Query q;
        expect_keyword("MATCH");
        q.patterns.push_back(path_pattern());
        while (accept(TokenKind::comma)) {
            q.patterns.push_back(path_pattern());
        }
        if (accept_keyword("WHERE")) {
            q.where = or_expr();
        }
        expect_keyword("RETURN");
        q.distinct = accept_keyword("DISTINCT");
        q.returns.push_back(return_item());
        while (accept(TokenKind::comma)) {
            q.returns.push_back(return_item());
        }
        if (accept_keyword("ORDER")) {
            expect_keyword("BY");
            q.order_by.push_back(sort_item());
            while (accept(TokenKind::comma)) {
                q.order_by.push_back(sort_item());
            }
        }
        if (accept_keyword("LIMIT")) {
            const Token& t = peek();
            if (t.kind != TokenKind::integer) {
                fail("LIMIT expects a non-negative integer");
            }
            std::uint64_t n = 0;
            const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
            if (ec != std::errc{}) {
                fail("LIMIT value out of range");
            }
            q.limit = n;
            next();
        }
        accept(TokenKind::semicolon);
        if (peek().kind != TokenKind::end) {
            if (peek_keyword_is_clause()) {
                fail("unsupported clause '" + peek().text + "'");
            }
            fail("unexpected token after query");
        }
        return q;
    }

private:
    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    const Token& next() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) {
            ++pos_;
        }
        return t;
    }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        throw SyntaxError(message, t.line, t.column, t.kind == TokenKind::end ? "" : t.text);
    }

    bool accept(TokenKind kind) {
        if (peek().kind == kind) {
            next();
            return true;
        }
        return false;
    }

    void expect(TokenKind kind, std::string_view what) {
        if (!accept(kind)) {
            fail("expected " + std::string(describe(kind)) + " " + std::string(what));
        }
    }

    [[nodiscard]] bool peek_keyword(std::string_view kw, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == TokenKind::identifier && iequals(t.text, kw);
    }

    [[nodiscard]] bool peek_keyword_is_clause() const {
        static constexpr std::array<std::string_view, 16> kClauses = {
            "OPTIONAL", "WITH",   "UNWIND", "UNION",  "SKIP",   "CREATE", "MERGE",  "DELETE",
            "DETACH",   "SET",    "REMOVE", "DROP",   "CALL",   "LOAD",   "FOREACH", "MATCH"};
        return std::any_of(kClauses.begin(), kClauses.end(),
                           [&](std::string_view kw) { return peek_keyword(kw); });
    }

    bool accept_keyword(std::string_view kw) {
        if (peek_keyword(kw)) {
            next();
            return true;
        }
        return false;
    }

    void expect_keyword(std::string_view kw) {
        if (!accept_keyword(kw)) {
            fail("expected " + std::string(kw));
        }
    }

    // Names following ':' or '.' may be any identifier, keywords included.
    std::string symbolic_name(std::string_view what) {
        const Token& t = peek();
        if (t.kind != TokenKind::identifier && t.kind != TokenKind::quoted_identifier) {
            fail("expected " + std::string(what));
        }
        return next().text;
    }

    [[nodiscard]] bool at_variable() const {
        const Token& t = peek();
        return t.kind == TokenKind::quoted_identifier ||
               (t.kind == TokenKind::identifier && !is_reserved_word(t.text));
    }

    std::string variable(std::string_view what) {
        if (!at_variable()) {
            fail("expected " + std::string(what));
        }
        return next().text;
    }

    PropertyMap property_map() {
        PropertyMap map;
        expect(TokenKind::lbrace, "to open a property map");
        if (accept(TokenKind::rbrace)) {
            return map;
        }
        for (;;) {
            const Token& key_token = peek();
            std::string key = symbolic_name("property key");
            if (std::any_of(map.begin(), map.end(), [&](const auto& kv) { return kv.first == key; })) {
                throw SyntaxError("duplicate key in property map", key_token.line,
                                  key_token.column, key);
            }
            expect(TokenKind::colon, "after property key");
            map.emplace_back(std::move(key), literal());
            if (accept(TokenKind::rbrace)) {
                return map;
            }
            expect(TokenKind::comma, "or '}' in property map");
        }
    }

    [[nodiscard]] bool at_literal() const {
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::integer:
            case TokenKind::floating:
            case TokenKind::string: return true;
            case TokenKind::dash:
                return peek(1).kind == TokenKind::integer || peek(1).kind == TokenKind::floating;
            case TokenKind::identifier:
                return iequals(t.text, "true") || iequals(t.text, "false") ||
                       iequals(t.text, "null");
            default: return false;
        }
    }

    PropertyValue literal() {
        const bool negative = accept(TokenKind::dash);
        const Token& t = peek();
        switch (t.kind) {
            case TokenKind::integer: {
                std::uint64_t magnitude = 0;
                const auto [p, ec] =
                    std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
                constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
                if (ec != std::errc{} || magnitude > kMax + (negative ? 1 : 0)) {
                    fail("integer literal out of range");
                }
                next();
                if (negative) {
                    return magnitude == kMax + 1 ? std::numeric_limits<std::int64_t>::min()
                                                 : -static_cast<std::int64_t>(magnitude);
                }
                return static_cast<std::int64_t>(magnitude);
            }
            case TokenKind::floating: {
                double v = 0;
                const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
                if (ec != std::errc{}) {
                    fail("float literal out of range");
                }
                next();
                return negative ? -v : v;
            }
            default: break;
        }
        if (negative) {
            fail("expected a number after '-'");
        }
        if (t.kind == TokenKind::string) {
            return next().text;
        }
        if (peek_keyword("true")) {
            next();
            return true;
        }
        if (peek_keyword("false")) {
            next();
            return false;
        }
        if (peek_keyword("null")) {
            next();
            return {};
        }
        fail("expected a literal");
    }

    NodePattern node_pattern() {
        NodePattern n;
        expect(TokenKind::lparen, "to open a node pattern");
        if (at_variable()) {
            n.variable = next().text;
        }
        while (accept(TokenKind::colon)) {
            n.labels.push_back(symbolic_name("node label"));
        }
        if (peek().kind == TokenKind::lbrace) {
            n.properties = property_map();
        }
        expect(TokenKind::rparen, "to close the node pattern");
        return n;
    }

    void rel_body(RelPattern& r) {
        if (at_variable()) {
            r.variable = next().text;
        }
        if (accept(TokenKind::colon)) {
            r.type = symbolic_name("relationship type");
            if (peek().kind == TokenKind::pipe) {
                fail("relationship type alternatives are not supported");
            }
        }
        if (peek().kind == TokenKind::star) {
            fail("variable-length relationships are not supported");
        }
        if (peek().kind == TokenKind::lbrace) {
            r.properties = property_map();
        }
        expect(TokenKind::rbracket, "to close the relationship pattern");
    }

    [[nodiscard]] bool at_relationship() const {
        return peek().kind == TokenKind::dash ||
               (peek().kind == TokenKind::lt && peek(1).kind == TokenKind::dash);
    }

    RelPattern rel_pattern() {
        RelPattern r;
        const bool left = accept(TokenKind::lt);
        expect(TokenKind::dash, "in relationship pattern");
        if (accept(TokenKind::lbracket)) {
            rel_body(r);
        }
        expect(TokenKind::dash, "in relationship pattern");
        const bool right = accept(TokenKind::gt);
        if (left && right) {
            fail("relationship cannot point both ways");
        }
        r.direction = left ? Direction::left : right ? Direction::right : Direction::undirected;
        return r;
    }

    PathPattern path_pattern() {
        PathPattern p;
        p.nodes.push_back(node_pattern());
        while (at_relationship()) {
            p.rels.push_back(rel_pattern());
            p.nodes.push_back(node_pattern());
        }
        return p;
    }

    Operand operand() {
        if (at_literal()) {
            return literal();
        }
        std::string var = variable("an operand");
        if (accept(TokenKind::dot)) {
            return PropertyRef{std::move(var), symbolic_name("property key")};
        }
        return VariableRef{std::move(var)};
    }

    BoolExpr or_expr() {
        BoolExpr first = and_expr();
        if (!peek_keyword("OR")) {
            return first;
        }
        BoolExpr out;
        out.kind = BoolExpr::Kind::disjunction;
        out.children.push_back(std::move(first));
        while (accept_keyword("OR")) {
            out.children.push_back(and_expr());
        }
        return out;
    }

    BoolExpr and_expr() {
        BoolExpr first = not_expr();
        if (!peek_keyword("AND")) {
            return first;
        }
        BoolExpr out;
        out.kind = BoolExpr::Kind::conjunction;
        out.children.push_back(std::move(first));
        while (accept_keyword("AND")) {
            out.children.push_back(not_expr());
        }
        return out;
    }

    BoolExpr not_expr() {
        if (accept_keyword("NOT")) {
            BoolExpr out;
            out.kind = BoolExpr::Kind::negation;
            out.children.push_back(not_expr());
            return out;
        }
        if (accept(TokenKind::lparen)) {
            BoolExpr inner = or_expr();
            expect(TokenKind::rparen, "to close the parenthesized expression");
            return inner;
        }
        return comparison();
    }

    BoolExpr comparison() {
        BoolExpr out;
        out.lhs = operand();
        if (accept_keyword("IS")) {
            out.kind = BoolExpr::Kind::null_check;
            out.negated = accept_keyword("NOT");
            expect_keyword("NULL");
            return out;
        }
        static constexpr std::array<std::pair<TokenKind, CompareOp>, 6> kOps = {{
            {TokenKind::eq, CompareOp::eq},
            {TokenKind::ne, CompareOp::ne},
            {TokenKind::lt, CompareOp::lt},
            {TokenKind::le, CompareOp::le},
            {TokenKind::gt, CompareOp::gt},
            {TokenKind::ge, CompareOp::ge},
        }};
        for (const auto& [kind, op] : kOps) {
            if (accept(kind)) {
                out.kind = BoolExpr::Kind::comparison;
                out.op = op;
                out.rhs = operand();
                return out;
            }
        }
        out.kind = BoolExpr::Kind::operand;
        return out;
    }

    std::optional<AggregateFn> at_aggregate() const {
        if (peek().kind != TokenKind::identifier || peek(1).kind != TokenKind::lparen) {
            return std::nullopt;
        }
        static constexpr std::array<std::pair<std::string_view, AggregateFn>, 5> kFns = {{
            {"count", AggregateFn::count},
            {"sum", AggregateFn::sum},
            {"avg", AggregateFn::avg},
            {"min", AggregateFn::min},
            {"max", AggregateFn::max},
        }};
        for (const auto& [name, fn] : kFns) {
            if (iequals(peek().text, name)) {
                return fn;
            }
        }
        return std::nullopt;
    }

    Projection projection() {
        if (const auto fn = at_aggregate()) {
            next();
            next();
            Aggregate agg;
            agg.fn = *fn;
            agg.distinct = accept_keyword("DISTINCT");
            if (peek().kind == TokenKind::star) {
                if (agg.fn != AggregateFn::count || agg.distinct) {
                    fail("only count(*) may take '*'");
                }
                next();
            } else {
                std::string var = variable("aggregate argument");
                if (accept(TokenKind::dot)) {
                    agg.argument = PropertyRef{std::move(var), symbolic_name("property key")};
                } else {
                    agg.argument = VariableRef{std::move(var)};
                }
            }
            expect(TokenKind::rparen, "to close the aggregate");
            return agg;
        }
        if (peek().kind == TokenKind::identifier && peek(1).kind == TokenKind::lparen) {
            fail("unsupported function '" + peek().text + "'");
        }
        std::string var = variable("a return expression");
        if (accept(TokenKind::dot)) {
            return PropertyRef{std::move(var), symbolic_name("property key")};
        }
        return VariableRef{std::move(var)};
    }

    ReturnItem return_item() {
        ReturnItem item{projection(), std::nullopt};
        if (accept_keyword("AS")) {
            item.alias = variable("alias name");
        }
        return item;
    }

    SortItem sort_item() {
        SortItem item{projection(), false};
        if (accept_keyword("DESC") || accept_keyword("DESCENDING")) {
            item.descending = true;
        } else if (!accept_keyword("ASC")) {
            accept_keyword("ASCENDING");
        }
        return item;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Semantic checks

struct Scope {
    std::set<std::string, std::less<>> nodes;
    std::set<std::string, std::less<>> rels;

    [[nodiscard]] bool bound(std::string_view name) const {
        return nodes.contains(name) || rels.contains(name);
    }
};

void require_bound(const Scope& scope, const std::string& name, std::string_view where) {
    if (!scope.bound(name)) {
        throw SemanticError("variable '" + name + "' in " + std::string(where) +
                            " is not bound by the MATCH pattern");
    }
}

void check_operand(const Scope& scope, const Operand& op) {
    if (const auto* v = std::get_if<VariableRef>(&op)) {
        require_bound(scope, v->name, "WHERE");
    } else if (const auto* p = std::get_if<PropertyRef>(&op)) {
        require_bound(scope, p->variable, "WHERE");
    }
}

void check_expr(const Scope& scope, const BoolExpr& e) {
    for (const auto& c : e.children) {
        check_expr(scope, c);
    }
    switch (e.kind) {
        case BoolExpr::Kind::comparison:
            check_operand(scope, e.lhs);
            check_operand(scope, e.rhs);
            break;
        case BoolExpr::Kind::null_check:
        case BoolExpr::Kind::operand: check_operand(scope, e.lhs); break;
        default: break;
    }
}

void check_projection(const Scope& scope, const Projection& p, std::string_view where) {
    std::visit(
        [&](const auto& item) {
            using T = std::decay_t<decltype(item)>;
            if constexpr (std::is_same_v<T, VariableRef>) {
                require_bound(scope, item.name, where);
            } else if constexpr (std::is_same_v<T, PropertyRef>) {
                require_bound(scope, item.variable, where);
            } else if (item.argument) {
                std::visit(
                    [&](const auto& arg) {
                        if constexpr (std::is_same_v<std::decay_t<decltype(arg)>, VariableRef>) {
                            require_bound(scope, arg.name, where);
                        } else {
                            require_bound(scope, arg.variable, where);
                        }
                    },
                    *item.argument);
            }
        },
        p);
}

void check_semantics(const Query& q) {
    Scope scope;
    for (const auto& path : q.patterns) {
        for (const auto& n : path.nodes) {
            if (n.variable) {
                if (scope.rels.contains(*n.variable)) {
                    throw SemanticError("variable '" + *n.variable +
                                        "' is used for both a node and a relationship");
                }
                scope.nodes.insert(*n.variable);
            }
        }
        for (const auto& r : path.rels) {
            if (r.variable) {
                if (scope.nodes.contains(*r.variable)) {
                    throw SemanticError("variable '" + *r.variable +
                                        "' is used for both a node and a relationship");
                }
                if (!scope.rels.insert(*r.variable).second) {
                    throw SemanticError("relationship variable '" + *r.variable +
                                        "' is bound twice in one MATCH");
                }
            }
        }
    }
    if (q.where) {
        check_expr(scope, *q.where);
    }

    std::set<std::string> columns;
    std::set<std::string, std::less<>> aliases;
    bool aggregating = false;
    for (const auto& item : q.returns) {
        check_projection(scope, item.projection, "RETURN");
        aggregating = aggregating || is_aggregate(item.projection);
        if (!columns.insert(column_name(item)).second) {
            throw SemanticError("duplicate result column '" + column_name(item) + "'");
        }
        if (item.alias) {
            aliases.insert(*item.alias);
        }
    }
    for (const auto& s : q.order_by) {
        const auto* v = std::get_if<VariableRef>(&s.projection);
        const bool names_alias = v != nullptr && aliases.contains(v->name);
        if (!names_alias) {
            check_projection(scope, s.projection, "ORDER BY");
        }
        if ((aggregating || q.distinct) && !names_alias) {
            const bool projected = std::any_of(q.returns.begin(), q.returns.end(), [&](const auto& r) {
                return r.projection == s.projection;
            });
            if (!projected) {
                throw SemanticError(
                    "ORDER BY after DISTINCT or aggregation may only use returned expressions");
            }
        }
    }
}

}  // namespace

bool is_reserved_word(std::string_view word) noexcept {
    return std::any_of(kReserved.begin(), kReserved.end(),
                       [&](std::string_view kw) { return iequals(word, kw); });
}

std::string_view aggregate_name(AggregateFn fn) noexcept {
    switch (fn) {
        case AggregateFn::count: return "count";
        case AggregateFn::sum: return "sum";
        case AggregateFn::avg: return "avg";
        case AggregateFn::min: return "min";
        case AggregateFn::max: return "max";
    }
    return "count";
}

Query parse(std::string_view query_text) {
    Query q = Parser(query_text).run();
    check_semantics(q);
    return q;
}

}  // namespace iyp::cypher
