// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iyp/graph/property_graph.hpp"
#include "iyp/llm/provider.hpp"
#include "iyp/retrieval/candidate.hpp"

namespace iyp::retrieval {

struct IndexEntry {
    graph::NodeId node_id = 0;
    std::string text;
    llm::EmbeddingVector vector;  // unit norm
    friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// Flat embedding index over node descriptions.
class VectorIndex {
public:
    VectorIndex() = default;
    /// Normalizes vectors; throws std::invalid_argument on mixed dimensions
    /// or repeated node ids.
    explicit VectorIndex(std::vector<IndexEntry> entries);

    [[nodiscard]] const std::vector<IndexEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

    friend bool operator==(const VectorIndex&, const VectorIndex&) = default;

private:
    std::vector<IndexEntry> entries_;
    std::size_t dimension_ = 0;
};

/// JSON array of {"node_id", "text", "vector"}.
[[nodiscard]] nlohmann::json to_json(const VectorIndex& index);
[[nodiscard]] VectorIndex index_from_json(const nlohmann::json& j);
void save_index(const VectorIndex& index, const std::filesystem::path& path);
[[nodiscard]] VectorIndex load_index(const std::filesystem::path& path);

struct IndexBuildOptions {
    bool include_neighbors = true;
    std::size_t batch_size = 64;
    std::size_t parallelism = 1;  // concurrent batches
};

/// Embeds node_text of every node. Throws std::invalid_argument for an
/// empty graph; provider errors abort the build.
[[nodiscard]] VectorIndex build_vector_index(const graph::PropertyGraph& graph,
                                             const llm::Provider& provider,
                                             const IndexBuildOptions& options = {});

/// Top-k entries by cosine to the question, ties by ascending node id.
[[nodiscard]] std::vector<RetrievalCandidate> vector_retrieve(std::string_view question,
                                                              const VectorIndex& index,
                                                              const llm::Provider& provider,
                                                              std::size_t k);

}  // namespace iyp::retrieval
