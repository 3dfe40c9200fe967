// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/executor.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "iyp/cypher/errors.hpp"
#include "iyp/cypher/render.hpp"

namespace iyp::cypher {

namespace {

using graph::Edge;
using graph::Node;
using graph::PropertyGraph;

enum class Truth { no, yes, unknown };

Truth negate(Truth t) noexcept {
    switch (t) {
        case Truth::no: return Truth::yes;
        case Truth::yes: return Truth::no;
        case Truth::unknown: return Truth::unknown;
    }
    return Truth::unknown;
}

struct LexLess {
    bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const noexcept {
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](const Value& x, const Value& y) { return total_less(x, y); });
    }
};

enum class SlotKind { node, edge };

struct Element {
    SlotKind kind;
    std::size_t slot;
};

/// Pattern elements mapped onto binding slots. Repeated node variables
/// share a slot; every anonymous element gets its own.
class CompiledPattern {
public:
    explicit CompiledPattern(const Query& q) {
        for (const auto& path : q.patterns) {
            std::vector<std::size_t> node_slots;
            std::vector<std::size_t> rel_slots;
            for (std::size_t j = 0; j < path.nodes.size(); ++j) {
                node_slots.push_back(slot_for(path.nodes[j].variable, SlotKind::node));
                elements_.push_back({SlotKind::node, node_slots.back()});
                if (j < path.rels.size()) {
                    rel_slots.push_back(slot_for(path.rels[j].variable, SlotKind::edge));
                    elements_.push_back({SlotKind::edge, rel_slots.back()});
                }
            }
            path_node_slots_.push_back(std::move(node_slots));
            path_rel_slots_.push_back(std::move(rel_slots));
        }
    }

    [[nodiscard]] std::size_t slot_count() const noexcept { return kinds_.size(); }
    [[nodiscard]] SlotKind slot_kind(std::size_t s) const noexcept { return kinds_[s]; }
    [[nodiscard]] const std::vector<Element>& elements() const noexcept { return elements_; }
    [[nodiscard]] std::size_t node_slot(std::size_t path, std::size_t j) const {
        return path_node_slots_[path][j];
    }
    [[nodiscard]] std::size_t rel_slot(std::size_t path, std::size_t j) const {
        return path_rel_slots_[path][j];
    }
    [[nodiscard]] std::size_t variable_slot(const std::string& name) const {
        return variables_.at(name);
    }

private:
    std::size_t slot_for(const std::optional<std::string>& variable, SlotKind kind) {
        if (variable) {
            if (const auto it = variables_.find(*variable); it != variables_.end()) {
                return it->second;
            }
        }
        kinds_.push_back(kind);
        const std::size_t s = kinds_.size() - 1;
        if (variable) {
            variables_.emplace(*variable, s);
        }
        return s;
    }

    std::vector<SlotKind> kinds_;
    std::vector<Element> elements_;
    std::vector<std::vector<std::size_t>> path_node_slots_;
    std::vector<std::vector<std::size_t>> path_rel_slots_;
    std::unordered_map<std::string, std::size_t> variables_;
};

bool properties_match(const graph::Properties& actual, const PropertyMap& wanted) {
    for (const auto& [key, value] : wanted) {
        const auto it = actual.find(key);
        if (it == actual.end() || graph::compare(it->second, value) != graph::Ordering::equal) {
            return false;
        }
    }
    return true;
}

bool node_matches(const Node& n, const NodePattern& p) {
    for (const auto& l : p.labels) {
        if (!n.has_label(l)) {
            return false;
        }
    }
    return properties_match(n.properties, p.properties);
}

bool edge_matches(const Edge& e, const RelPattern& p) {
    if (p.type && e.type != *p.type) {
        return false;
    }
    return properties_match(e.properties, p.properties);
}

using Binding = std::vector<std::uint64_t>;

class Matcher {
public:
    Matcher(const Query& q, const PropertyGraph& g, const CompiledPattern& c)
        : query_(q), graph_(g), compiled_(c), values_(c.slot_count(), 0),
          bound_(c.slot_count(), false) {}

    std::vector<Binding> run() {
        match_path(0);
        return std::move(results_);
    }

private:
    bool try_bind_node(std::size_t slot, graph::NodeId id, bool& newly_bound) {
        if (bound_[slot]) {
            newly_bound = false;
            return values_[slot] == id;
        }
        values_[slot] = id;
        bound_[slot] = true;
        newly_bound = true;
        return true;
    }

    void match_path(std::size_t pi) {
        if (pi == query_.patterns.size()) {
            results_.push_back(values_);
            return;
        }
        const auto& first = query_.patterns[pi].nodes.front();
        const std::size_t slot = compiled_.node_slot(pi, 0);
        auto visit = [&](const Node& n) {
            if (!node_matches(n, first)) {
                return;
            }
            bool newly = false;
            if (!try_bind_node(slot, n.id, newly)) {
                return;
            }
            walk(pi, 0);
            if (newly) {
                bound_[slot] = false;
            }
        };
        if (bound_[slot]) {
            visit(graph_.node(values_[slot]));
        } else {
            for (const Node& n : graph_.nodes()) {
                visit(n);
            }
        }
    }

    void walk(std::size_t pi, std::size_t j) {
        const auto& path = query_.patterns[pi];
        if (j == path.rels.size()) {
            match_path(pi + 1);
            return;
        }
        const auto& rel = path.rels[j];
        const auto& next_node = path.nodes[j + 1];
        const graph::NodeId current = values_[compiled_.node_slot(pi, j)];
        const std::size_t edge_slot = compiled_.rel_slot(pi, j);
        const std::size_t next_slot = compiled_.node_slot(pi, j + 1);

        for (graph::EdgeId eid : graph_.incident_edges(current)) {
            const Edge& e = graph_.edge(eid);
            graph::NodeId other = 0;
            switch (rel.direction) {
                case Direction::right:
                    if (e.from != current) {
                        continue;
                    }
                    other = e.to;
                    break;
                case Direction::left:
                    if (e.to != current) {
                        continue;
                    }
                    other = e.from;
                    break;
                case Direction::undirected: other = e.other_end(current); break;
            }
            if (!edge_matches(e, rel) ||
                std::find(used_edges_.begin(), used_edges_.end(), eid) != used_edges_.end()) {
                continue;
            }
            const Node& n = graph_.node(other);
            if (!node_matches(n, next_node)) {
                continue;
            }
            bool newly = false;
            if (!try_bind_node(next_slot, other, newly)) {
                continue;
            }
            values_[edge_slot] = eid;
            bound_[edge_slot] = true;
            used_edges_.push_back(eid);
            walk(pi, j + 1);
            used_edges_.pop_back();
            bound_[edge_slot] = false;
            if (newly) {
                bound_[next_slot] = false;
            }
        }
    }

    const Query& query_;
    const PropertyGraph& graph_;
    const CompiledPattern& compiled_;
    Binding values_;
    std::vector<bool> bound_;
    std::vector<graph::EdgeId> used_edges_;
    std::vector<Binding> results_;
};

// ---------------------------------------------------------------------------
// Expression evaluation over one binding

class Evaluator {
public:
    Evaluator(const PropertyGraph& g, const CompiledPattern& c) : graph_(g), compiled_(c) {}

    [[nodiscard]] Value variable(const Binding& b, const std::string& name) const {
        const std::size_t slot = compiled_.variable_slot(name);
        Entity e;
        e.id = b[slot];
        if (compiled_.slot_kind(slot) == SlotKind::node) {
            const Node& n = graph_.node(e.id);
            e.kind = EntityKind::node;
            e.labels = n.labels;
            e.properties = n.properties;
        } else {
            const Edge& edge = graph_.edge(e.id);
            e.kind = EntityKind::edge;
            e.labels = {edge.type};
            e.properties = edge.properties;
        }
        return e;
    }

    [[nodiscard]] Value property(const Binding& b, const PropertyRef& ref) const {
        const std::size_t slot = compiled_.variable_slot(ref.variable);
        const graph::Properties& props = compiled_.slot_kind(slot) == SlotKind::node
                                             ? graph_.node(b[slot]).properties
                                             : graph_.edge(b[slot]).properties;
        const auto it = props.find(ref.key);
        return it == props.end() ? Value{PropertyValue{}} : Value{it->second};
    }

    [[nodiscard]] Value operand(const Binding& b, const Operand& op) const {
        if (const auto* lit = std::get_if<PropertyValue>(&op)) {
            return *lit;
        }
        if (const auto* v = std::get_if<VariableRef>(&op)) {
            return variable(b, v->name);
        }
        return property(b, std::get<PropertyRef>(op));
    }

    [[nodiscard]] Value projection(const Binding& b, const Projection& p) const {
        if (const auto* v = std::get_if<VariableRef>(&p)) {
            return variable(b, v->name);
        }
        if (const auto* r = std::get_if<PropertyRef>(&p)) {
            return property(b, *r);
        }
        throw QueryError("aggregate '" + render(p) + "' is not valid here");
    }

    [[nodiscard]] Value aggregate_argument(const Binding& b, const Aggregate& a) const {
        return std::visit([&](const auto& arg) { return projection(b, Projection{arg}); },
                          *a.argument);
    }

    [[nodiscard]] Truth truth(const Binding& b, const BoolExpr& e) const {
        switch (e.kind) {
            case BoolExpr::Kind::conjunction: {
                Truth acc = Truth::yes;
                for (const auto& c : e.children) {
                    const Truth t = truth(b, c);
                    if (t == Truth::no) {
                        return Truth::no;
                    }
                    if (t == Truth::unknown) {
                        acc = Truth::unknown;
                    }
                }
                return acc;
            }
            case BoolExpr::Kind::disjunction: {
                Truth acc = Truth::no;
                for (const auto& c : e.children) {
                    const Truth t = truth(b, c);
                    if (t == Truth::yes) {
                        return Truth::yes;
                    }
                    if (t == Truth::unknown) {
                        acc = Truth::unknown;
                    }
                }
                return acc;
            }
            case BoolExpr::Kind::negation: return negate(truth(b, e.children.front()));
            case BoolExpr::Kind::comparison:
                return compare(operand(b, e.lhs), e.op, operand(b, e.rhs));
            case BoolExpr::Kind::null_check: {
                const bool null = is_null(operand(b, e.lhs));
                return null != e.negated ? Truth::yes : Truth::no;
            }
            case BoolExpr::Kind::operand: {
                const Value v = operand(b, e.lhs);
                if (const auto* p = std::get_if<PropertyValue>(&v)) {
                    if (const auto* flag = p->as_bool()) {
                        return *flag ? Truth::yes : Truth::no;
                    }
                }
                return Truth::unknown;
            }
        }
        return Truth::unknown;
    }

private:
    static Truth compare(const Value& a, CompareOp op, const Value& b) {
        graph::Ordering ord = graph::Ordering::incomparable;
        const auto* pa = std::get_if<PropertyValue>(&a);
        const auto* pb = std::get_if<PropertyValue>(&b);
        if (pa && pb) {
            ord = graph::compare(*pa, *pb);
        } else if (!pa && !pb) {
            // Entities only support identity tests.
            if (op != CompareOp::eq && op != CompareOp::ne) {
                return Truth::unknown;
            }
            ord = std::get<Entity>(a) == std::get<Entity>(b) ? graph::Ordering::equal
                                                             : graph::Ordering::less;
        }
        if (ord == graph::Ordering::incomparable) {
            return Truth::unknown;
        }
        bool result = false;
        switch (op) {
            case CompareOp::eq: result = ord == graph::Ordering::equal; break;
            case CompareOp::ne: result = ord != graph::Ordering::equal; break;
            case CompareOp::lt: result = ord == graph::Ordering::less; break;
            case CompareOp::le: result = ord != graph::Ordering::greater; break;
            case CompareOp::gt: result = ord == graph::Ordering::greater; break;
            case CompareOp::ge: result = ord != graph::Ordering::less; break;
        }
        return result ? Truth::yes : Truth::no;
    }

    const PropertyGraph& graph_;
    const CompiledPattern& compiled_;
};

// ---------------------------------------------------------------------------
// Aggregation

std::vector<Value> non_null_values(std::vector<Value> values, bool distinct) {
    std::erase_if(values, [](const Value& v) { return is_null(v); });
    if (distinct) {
        std::vector<Value> unique;
        std::set<std::vector<Value>, LexLess> seen;
        for (auto& v : values) {
            if (seen.insert({v}).second) {
                unique.push_back(std::move(v));
            }
        }
        return unique;
    }
    return values;
}

Value compute_aggregate(const Aggregate& a, std::size_t group_size, std::vector<Value> values) {
    if (!a.argument) {
        return static_cast<std::int64_t>(group_size);
    }
    values = non_null_values(std::move(values), a.distinct);
    const std::string fn(aggregate_name(a.fn));
    switch (a.fn) {
        case AggregateFn::count: return static_cast<std::int64_t>(values.size());
        case AggregateFn::sum:
        case AggregateFn::avg: {
            bool all_int = true;
            std::int64_t int_sum = 0;
            double sum = 0.0;
            for (const auto& v : values) {
                const auto* p = std::get_if<PropertyValue>(&v);
                if (p == nullptr || !p->is_number()) {
                    throw QueryError(fn + "() expects numeric values, got " + to_text(v));
                }
                if (const auto* i = p->as_int()) {
                    int_sum += *i;
                } else {
                    all_int = false;
                }
                sum += *p->as_number();
            }
            if (a.fn == AggregateFn::sum) {
                return all_int ? Value{int_sum} : Value{sum};
            }
            if (values.empty()) {
                return PropertyValue{};
            }
            return sum / static_cast<double>(values.size());
        }
        case AggregateFn::min:
        case AggregateFn::max: {
            if (values.empty()) {
                return PropertyValue{};
            }
            const auto cmp = [](const Value& x, const Value& y) { return total_less(x, y); };
            return a.fn == AggregateFn::min ? *std::min_element(values.begin(), values.end(), cmp)
                                            : *std::max_element(values.begin(), values.end(), cmp);
        }
    }
    return PropertyValue{};
}

struct OutputRow {
    std::vector<Value> cells;
    std::vector<Value> sort_keys;
};

}  // namespace

RowSet execute(const Query& query, const PropertyGraph& graph) {
    const CompiledPattern compiled(query);
    const Evaluator eval(graph, compiled);

    std::vector<Binding> bindings = Matcher(query, graph, compiled).run();
    std::erase_if(bindings, [&](const Binding& b) {
        return query.where && eval.truth(b, *query.where) != Truth::yes;
    });

    // Deterministic base order: bound ids in pattern element order.
    const auto& elements = compiled.elements();
    std::stable_sort(bindings.begin(), bindings.end(), [&](const Binding& a, const Binding& b) {
        for (const auto& el : elements) {
            if (a[el.slot] != b[el.slot]) {
                return a[el.slot] < b[el.slot];
            }
        }
        return false;
    });

    RowSet out;
    for (const auto& item : query.returns) {
        out.columns.push_back(column_name(item));
    }
    const bool aggregating = std::any_of(query.returns.begin(), query.returns.end(),
                                         [](const auto& r) { return is_aggregate(r.projection); });

    // ORDER BY keys resolve to a return column when they name an alias or
    // repeat a returned expression; otherwise they are evaluated per binding.
    std::vector<std::optional<std::size_t>> sort_columns;
    for (const auto& s : query.order_by) {
        std::optional<std::size_t> col;
        const auto* var = std::get_if<VariableRef>(&s.projection);
        for (std::size_t i = 0; i < query.returns.size() && !col; ++i) {
            if (var && query.returns[i].alias == var->name) {
                col = i;
            }
        }
        for (std::size_t i = 0; i < query.returns.size() && !col; ++i) {
            if (query.returns[i].projection == s.projection) {
                col = i;
            }
        }
        if (!col && (aggregating || query.distinct)) {
            throw QueryError("ORDER BY key '" + render(s.projection) +
                             "' must be returned when aggregating or using DISTINCT");
        }
        if (!col && is_aggregate(s.projection)) {
            throw QueryError("ORDER BY aggregate '" + render(s.projection) +
                             "' requires an aggregating RETURN");
        }
        sort_columns.push_back(col);
    }

    std::vector<OutputRow> rows;
    if (!aggregating) {
        rows.reserve(bindings.size());
        for (const auto& b : bindings) {
            OutputRow row;
            for (const auto& item : query.returns) {
                row.cells.push_back(eval.projection(b, item.projection));
            }
            for (std::size_t k = 0; k < query.order_by.size(); ++k) {
                row.sort_keys.push_back(sort_columns[k]
                                            ? row.cells[*sort_columns[k]]
                                            : eval.projection(b, query.order_by[k].projection));
            }
            rows.push_back(std::move(row));
        }
    } else {
        struct Group {
            std::vector<Value> key;
            std::size_t size = 0;
            std::vector<std::vector<Value>> inputs;  // per return item
        };
        std::vector<Group> groups;
        std::map<std::vector<Value>, std::size_t, LexLess> index;
        for (const auto& b : bindings) {
            std::vector<Value> key;
            for (const auto& item : query.returns) {
                if (!is_aggregate(item.projection)) {
                    key.push_back(eval.projection(b, item.projection));
                }
            }
            auto [it, inserted] = index.emplace(key, groups.size());
            if (inserted) {
                groups.push_back({std::move(key), 0, std::vector<std::vector<Value>>(query.returns.size())});
            }
            Group& g = groups[it->second];
            ++g.size;
            for (std::size_t i = 0; i < query.returns.size(); ++i) {
                const auto* agg = std::get_if<Aggregate>(&query.returns[i].projection);
                if (agg && agg->argument) {
                    g.inputs[i].push_back(eval.aggregate_argument(b, *agg));
                }
            }
        }
        for (auto& g : groups) {
            OutputRow row;
            std::size_t key_pos = 0;
            for (std::size_t i = 0; i < query.returns.size(); ++i) {
                const auto* agg = std::get_if<Aggregate>(&query.returns[i].projection);
                row.cells.push_back(agg ? compute_aggregate(*agg, g.size, std::move(g.inputs[i]))
                                        : std::move(g.key[key_pos++]));
            }
            for (const auto& col : sort_columns) {
                row.sort_keys.push_back(row.cells[*col]);
            }
            rows.push_back(std::move(row));
        }
    }

    if (query.distinct) {
        std::set<std::vector<Value>, LexLess> seen;
        std::erase_if(rows, [&](const OutputRow& r) { return !seen.insert(r.cells).second; });
    }

    if (!query.order_by.empty()) {
        std::stable_sort(rows.begin(), rows.end(), [&](const OutputRow& a, const OutputRow& b) {
            for (std::size_t k = 0; k < query.order_by.size(); ++k) {
                const bool desc = query.order_by[k].descending;
                const Value& x = a.sort_keys[k];
                const Value& y = b.sort_keys[k];
                if (total_less(x, y)) {
                    return !desc;
                }
                if (total_less(y, x)) {
                    return desc;
                }
            }
            return false;
        });
    }

    if (query.limit && rows.size() > *query.limit) {
        rows.resize(*query.limit);
    }
    out.rows.reserve(rows.size());
    for (auto& r : rows) {
        out.rows.push_back(std::move(r.cells));
    }
    return out;
}

}  // namespace iyp::cypher
