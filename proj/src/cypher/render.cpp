// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/render.hpp"

#include "iyp/cypher/parser.hpp"

namespace iyp::cypher {

namespace {

bool simple_name(std::string_view name) noexcept {
    if (name.empty()) {
        return false;
    }
    for (std::size_t i = 0; i < name.size(); ++i) {
        const auto c = static_cast<unsigned char>(name[i]);
        const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
        const bool digit = c >= '0' && c <= '9';
        if (!(alpha || (digit && i > 0))) {
            return false;
        }
    }
    return true;
}

std::string quoted(std::string_view name) { return "`" + std::string(name) + "`"; }

// Labels, types and keys: keywords are fine in these positions.
std::string symbol(std::string_view name) {
    return simple_name(name) ? std::string(name) : quoted(name);
}

std::string var(std::string_view name) {
    return simple_name(name) && !is_reserved_word(name) ? std::string(name) : quoted(name);
}

std::string props(const PropertyMap& map) {
    std::string out = "{";
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += symbol(map[i].first);
        out += ": ";
        out += graph::to_cypher_literal(map[i].second);
    }
    out += '}';
    return out;
}

std::string node(const NodePattern& n) {
    std::string out = "(";
    if (n.variable) {
        out += var(*n.variable);
    }
    for (const auto& l : n.labels) {
        out += ':';
        out += symbol(l);
    }
    if (!n.properties.empty()) {
        if (out.size() > 1) {
            out += ' ';
        }
        out += props(n.properties);
    }
    out += ')';
    return out;
}

std::string rel(const RelPattern& r) {
    std::string body;
    if (r.variable) {
        body += var(*r.variable);
    }
    if (r.type) {
        body += ':';
        body += symbol(*r.type);
    }
    if (!r.properties.empty()) {
        if (!body.empty()) {
            body += ' ';
        }
        body += props(r.properties);
    }
    std::string out = r.direction == Direction::left ? "<-" : "-";
    if (!body.empty()) {
        out += '[' + body + ']';
    }
    out += r.direction == Direction::right ? "->" : "-";
    return out;
}

std::string operand(const Operand& op) {
    if (const auto* lit = std::get_if<PropertyValue>(&op)) {
        return graph::to_cypher_literal(*lit);
    }
    if (const auto* v = std::get_if<VariableRef>(&op)) {
        return var(v->name);
    }
    const auto& p = std::get<PropertyRef>(op);
    return var(p.variable) + "." + symbol(p.key);
}

std::string_view op_text(CompareOp op) noexcept {
    switch (op) {
        case CompareOp::eq: return "=";
        case CompareOp::ne: return "<>";
        case CompareOp::lt: return "<";
        case CompareOp::le: return "<=";
        case CompareOp::gt: return ">";
        case CompareOp::ge: return ">=";
    }
    return "=";
}

// Binding strength: OR < AND < NOT < atoms.
int precedence(const BoolExpr& e) noexcept {
    switch (e.kind) {
        case BoolExpr::Kind::disjunction: return 1;
        case BoolExpr::Kind::conjunction: return 2;
        case BoolExpr::Kind::negation: return 3;
        default: return 4;
    }
}

std::string expr(const BoolExpr& e);

// Children of an n-ary node at the same level need parentheses, otherwise
// re-parsing would flatten them into the parent.
std::string child(const BoolExpr& c, int parent_precedence) {
    const std::string text = expr(c);
    return precedence(c) <= parent_precedence && precedence(c) < 3 ? "(" + text + ")" : text;
}

std::string expr(const BoolExpr& e) {
    switch (e.kind) {
        case BoolExpr::Kind::disjunction:
        case BoolExpr::Kind::conjunction: {
            const std::string_view sep =
                e.kind == BoolExpr::Kind::disjunction ? " OR " : " AND ";
            std::string out;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i != 0) {
                    out += sep;
                }
                out += child(e.children[i], precedence(e));
            }
            return out;
        }
        case BoolExpr::Kind::negation: return "NOT " + child(e.children.front(), 3);
        case BoolExpr::Kind::comparison:
            return operand(e.lhs) + " " + std::string(op_text(e.op)) + " " + operand(e.rhs);
        case BoolExpr::Kind::null_check:
            return operand(e.lhs) + (e.negated ? " IS NOT NULL" : " IS NULL");
        case BoolExpr::Kind::operand: return operand(e.lhs);
    }
    return {};
}

}  // namespace

std::string render(const Projection& projection) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, VariableRef>) {
                return var(p.name);
            } else if constexpr (std::is_same_v<T, PropertyRef>) {
                return var(p.variable) + "." + symbol(p.key);
            } else {
                std::string out(aggregate_name(p.fn));
                out += p.distinct ? "(DISTINCT " : "(";
                if (!p.argument) {
                    out += '*';
                } else {
                    out += std::visit(
                        [](const auto& a) { return render(Projection{a}); }, *p.argument);
                }
                out += ')';
                return out;
            }
        },
        projection);
}

std::string render(const BoolExpr& e) { return expr(e); }

std::string column_name(const ReturnItem& item) {
    return item.alias ? *item.alias : render(item.projection);
}

std::string render(const Query& q) {
    std::string out = "MATCH ";
    for (std::size_t i = 0; i < q.patterns.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        const auto& p = q.patterns[i];
        out += node(p.nodes.front());
        for (std::size_t j = 0; j < p.rels.size(); ++j) {
            out += rel(p.rels[j]);
            out += node(p.nodes[j + 1]);
        }
    }
    if (q.where) {
        out += " WHERE ";
        out += expr(*q.where);
    }
    out += q.distinct ? " RETURN DISTINCT " : " RETURN ";
    for (std::size_t i = 0; i < q.returns.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += render(q.returns[i].projection);
        if (q.returns[i].alias) {
            out += " AS " + var(*q.returns[i].alias);
        }
    }
    if (!q.order_by.empty()) {
        out += " ORDER BY ";
        for (std::size_t i = 0; i < q.order_by.size(); ++i) {
            if (i != 0) {
                out += ", ";
            }
            out += render(q.order_by[i].projection);
            if (q.order_by[i].descending) {
                out += " DESC";
            }
        }
    }
    if (q.limit) {
        out += " LIMIT " + std::to_string(*q.limit);
    }
    return out;
}

}  // namespace iyp::cypher
