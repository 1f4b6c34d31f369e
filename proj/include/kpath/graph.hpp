#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kpath {

using vertex_t = std::uint32_t;

// Sentinel for "vertex not present" in id mappings.
inline constexpr vertex_t kNoVertex = 0xffffffffu;

struct IngestOptions {
    // Duplicate edges would duplicate result paths; the problem is defined on
    // an edge *set*, so they are dropped by default.
    bool dedup_parallel_edges = true;
    // A self-loop can never lie on a simple path; kept only for debugging.
    bool drop_self_loops = true;
};

struct EdgeList {
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    std::optional<std::uint64_t> declared_vertex_count;
};

// Directed graph in CSR form. Successor lists are sorted ascending, which
// fixes the enumeration order of every algorithm built on top and makes
// result listings byte-comparable. Immutable after construction; safe to
// share read-only across concurrent queries.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<std::uint64_t> offsets, std::vector<vertex_t> targets);

    std::size_t vertex_count() const { return offsets_.size() - 1; }
    std::uint64_t edge_count() const { return targets_.size(); }

    std::uint32_t out_degree(vertex_t v) const {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const vertex_t> successors(vertex_t v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    const std::vector<std::uint64_t>& offsets() const { return offsets_; }
    const std::vector<vertex_t>& targets() const { return targets_; }

    bool operator==(const Graph&) const = default;

private:
    std::vector<std::uint64_t> offsets_ = {0};
    std::vector<vertex_t> targets_;
};

// Reads whitespace-separated "from to" pairs, one per line. Lines starting
// with '#' or '%' are comments; blank lines are skipped. Throws parse_error
// naming the line on malformed input.
EdgeList parse_edge_list(std::istream& in);

// CSR construction. vertex_count = max id + 1 unless declared larger. Sparse
// ids are kept as-is; compaction only happens in induced_subgraph.
Graph build_graph(const EdgeList& edges, const IngestOptions& opts = {});

// Edge (v, u) becomes (u, v); same vertex set.
Graph reverse(const Graph& g);

// Bijection between a kept vertex set and the dense id range of a subgraph.
struct SubgraphMapping {
    std::vector<vertex_t> new_to_old;
    std::vector<vertex_t> old_to_new;  // sized to the old graph, kNoVertex where dropped
};

// Subgraph induced by `keep` (must be valid vertex ids; duplicates are
// tolerated). Kept vertices are renumbered densely in ascending old-id
// order, so relative orderings survive the mapping.
std::pair<Graph, SubgraphMapping> induced_subgraph(const Graph& g,
                                                   std::span<const vertex_t> keep);

// Binary CSR cache: magic "KPE1", then vertex_count and edge_count as 8-byte
// little-endian unsigned, then offsets (vertex_count+1) and targets as
// 8-byte little-endian unsigned arrays.
void write_binary_csr(std::ostream& out, const Graph& g);
Graph read_binary_csr(std::istream& in);

// Loads either format, sniffing the magic bytes. `opts` applies to the text
// path only (the binary cache stores an already-built graph).
Graph load_graph_file(const std::string& path, const IngestOptions& opts = {});

}  // namespace kpath
