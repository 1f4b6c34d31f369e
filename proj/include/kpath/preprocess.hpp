#pragma once

#include <cstdint>
#include <iosfwd>

#include "kpath/graph.hpp"

namespace kpath {

// One enumeration task: all simple s-t paths with at most k hops.
struct Query {
    vertex_t s = 0;
    vertex_t t = 0;
    std::uint32_t k = 1;
};

// Throws std::invalid_argument unless s != t, k >= 1 and both ids are in range.
void validate_query(const Graph& g, const Query& q);

// Exact hop distances from `origin` out to `radius` hops; kUnreached beyond.
struct DistanceMap {
    static constexpr std::uint32_t kUnreached = 0xffffffffu;

    std::vector<std::uint32_t> dist;
    vertex_t origin = 0;
    std::uint32_t radius = 0;

    bool reached(vertex_t v) const { return dist[v] != kUnreached; }
};

// Plain frontier-queue BFS, clipped at `radius`.
DistanceMap bounded_bfs(const Graph& g, vertex_t origin, std::uint32_t radius);

// bar[u] = sd(u, t) where that distance is at most k-1, else k+1 (bar[t] = 0).
// The k+1 default needs no special casing in the pruning check: a successor
// candidate sits at depth >= 1, so a vertex at distance >= k from t can never
// complete a path within budget anyway.
struct BarrierMap {
    std::vector<std::uint32_t> bar;
};

BarrierMap make_barrier(const Graph& g, vertex_t t, std::uint32_t k);
// Same, with the reverse graph already at hand (suite runners reuse it).
BarrierMap make_barrier_from_reverse(const Graph& grev, vertex_t t, std::uint32_t k);

// Output of Pre-BFS: the search-equivalent induced subgraph, the id bijection
// into it, the barrier over new ids, and the remapped query endpoints.
struct PreprocessResult {
    Graph subgraph;
    SubgraphMapping mapping;
    BarrierMap barrier;
    vertex_t s_new = kNoVertex;
    vertex_t t_new = kNoVertex;
    Query query;  // original-id query this result was built for
};

// Bidirectional (k-1)-hop BFS. Keeps every vertex u with both maps reached
// and sd_s[u] + sd_t[u] <= k, plus s and t themselves (the intersection rule
// can miss an endpoint exactly at distance k; forcing them in realizes the
// equivalence argument's assumption). Path sets are preserved: enumerating on
// the subgraph and mapping ids back yields exactly the original result set.
PreprocessResult pre_bfs(const Graph& g, const Query& q);
PreprocessResult pre_bfs(const Graph& g, const Graph& grev, const Query& q);

// Diagnostic text dump: query, sizes, then one "new_id old_id bar" row per
// kept vertex. Consumed by the CLI's `pre` subcommand.
void dump_preprocess(std::ostream& out, const PreprocessResult& pre);

}  // namespace kpath
