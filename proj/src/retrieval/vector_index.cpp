// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/retrieval/vector_index.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "iyp/common/parallel.hpp"
#include "iyp/graph/node_text.hpp"
#include "iyp/llm/hash_embedding.hpp"

namespace iyp::retrieval {

using nlohmann::json;

VectorIndex::VectorIndex(std::vector<IndexEntry> entries) : entries_(std::move(entries)) {
    std::set<graph::NodeId> seen;
    for (auto& e : entries_) {
        if (e.vector.empty()) {
            throw std::invalid_argument("index entry for node " + std::to_string(e.node_id) +
                                        " has an empty vector");
        }
        if (dimension_ == 0) {
            dimension_ = e.vector.size();
        } else if (e.vector.size() != dimension_) {
            throw std::invalid_argument("index entry for node " + std::to_string(e.node_id) +
                                        " has dimension " + std::to_string(e.vector.size()) +
                                        ", expected " + std::to_string(dimension_));
        }
        if (!seen.insert(e.node_id).second) {
            throw std::invalid_argument("index has two entries for node " + std::to_string(e.node_id));
        }
        llm::normalize(e.vector);
    }
}

json to_json(const VectorIndex& index) {
    json out = json::array();
    for (const auto& e : index.entries()) {
        out.push_back({{"node_id", e.node_id}, {"text", e.text}, {"vector", e.vector}});
    }
    return out;
}

VectorIndex index_from_json(const json& j) {
    if (!j.is_array()) {
        throw std::invalid_argument("vector index file must hold a JSON array");
    }
    std::vector<IndexEntry> entries;
    try {
        for (const auto& e : j) {
            entries.push_back({e.at("node_id").get<graph::NodeId>(), e.at("text").get<std::string>(),
                               e.at("vector").get<llm::EmbeddingVector>()});
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed vector index entry: ") + e.what());
    }
    return VectorIndex(std::move(entries));
}

void save_index(const VectorIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write vector index " + path.string());
    }
    out << to_json(index).dump() << '\n';
    if (!out) {
        throw std::runtime_error("failed writing vector index " + path.string());
    }
}

VectorIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open vector index " + path.string());
    }
    try {
        return index_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("vector index " + path.string() + " is not JSON: " + e.what());
    }
}

VectorIndex build_vector_index(const graph::PropertyGraph& graph, const llm::Provider& provider,
                               const IndexBuildOptions& options) {
    if (graph.node_count() == 0) {
        throw std::invalid_argument("cannot build a vector index over an empty graph");
    }
    const std::size_t batch = std::max<std::size_t>(1, options.batch_size);
    std::vector<IndexEntry> entries;
    for (const auto& node : graph.nodes()) {
        entries.push_back({node.id, graph::node_text(graph, node.id, options.include_neighbors), {}});
    }
    const std::size_t batches = (entries.size() + batch - 1) / batch;
    parallel_for(batches, options.parallelism, [&](std::size_t b) {
        const std::size_t begin = b * batch;
        const std::size_t end = std::min(entries.size(), begin + batch);
        std::vector<std::string> texts;
        for (std::size_t i = begin; i < end; ++i) {
            texts.push_back(entries[i].text);
        }
        auto vectors = llm::embed(provider, texts);
        for (std::size_t i = begin; i < end; ++i) {
            entries[i].vector = std::move(vectors[i - begin]);
        }
    });
    return VectorIndex(std::move(entries));
}

std::vector<RetrievalCandidate> vector_retrieve(std::string_view question, const VectorIndex& index,
                                                const llm::Provider& provider, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("vector_retrieve requires k >= 1");
    }
    if (index.empty()) {
        return {};
    }
    auto q = llm::embed(provider, {std::string(question)}).front();
    if (q.size() != index.dimension()) {
        throw llm::ProviderError("question embedding has dimension " + std::to_string(q.size()) +
                                 " but the index has " + std::to_string(index.dimension()));
    }
    llm::normalize(q);
    struct Hit {
        double sim;
        std::size_t entry;
    };
    std::vector<Hit> hits;
    hits.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        hits.push_back({llm::cosine(q, index.entries()[i].vector), i});
    }
    const auto& entries = index.entries();
    auto better = [&](const Hit& a, const Hit& b) {
        if (a.sim != b.sim) {
            return a.sim > b.sim;
        }
        return entries[a.entry].node_id < entries[b.entry].node_id;
    };
    const std::size_t take = std::min(k, hits.size());
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(take), hits.end(), better);
    std::vector<RetrievalCandidate> out;
    for (std::size_t i = 0; i < take; ++i) {
        const auto& e = entries[hits[i].entry];
        out.push_back({Source::vector, e.text, hits[i].sim, VectorProvenance{e.node_id, hits[i].sim}, {}});
    }
    return out;
}

}  // namespace iyp::retrieval
