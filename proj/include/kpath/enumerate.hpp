#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpath/preprocess.hpp"

namespace kpath {

// A simple path as an ordered vertex sequence; len = size() - 1 hops.
using Path = std::vector<vertex_t>;

// The paths found by one enumerator run. Enumerators never produce
// duplicates; comparisons are order-insensitive so differently ordered
// engines can be diffed.
struct ResultSet {
    std::vector<Path> paths;

    std::size_t size() const { return paths.size(); }
    void sort_lex() { std::sort(paths.begin(), paths.end()); }
    bool set_equal(const ResultSet& other) const;
};

// One path per line as space-separated vertex ids, lexicographically sorted;
// byte-identical across enumerators that agree on the result set.
std::string to_lines(const ResultSet& rs);

struct Limits {
    std::uint64_t max_results = 10'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Plain bounded DFS with no pruning beyond the hop bound and simplicity.
// The correctness anchor for everything else; emits in lexicographic order.
ResultSet oracle_enumerate(const Graph& g, const Query& q, const Limits& limits = {});

// All-zero barrier of the right size (disables static pruning in tests).
BarrierMap zero_barrier(std::size_t vertex_count);

struct BcdfsOutcome {
    ResultSet results;
    std::vector<std::uint32_t> final_bar;  // learned barrier at termination
};

// DFS with barrier learning: a successor u is expanded only if
// len(S) + 1 + bar[u] <= k and u is not on the stack; when the subtree under
// a vertex v at depth d yields no result, bar[v] is raised to k + 1 - d so
// later probes with no more budget skip the same trap.
//
// The raise fires only when the failed subtree never skipped a successor via
// the on-stack check. A failure caused by stack blocking does not transfer
// to other stacks, and raising on it can prune paths the oracle finds; a
// blocking-free failure means the budget alone was short, which holds for
// every stack, so the raised value is a true lower bound on sd(v, t) and
// never needs restoring. Raised values only grow during a run.
BcdfsOutcome bcdfs_run(const Graph& g, const Query& q, const BarrierMap& bar0,
                       const Limits& limits = {});
ResultSet bcdfs_enumerate(const Graph& g, const Query& q, const BarrierMap& bar0,
                          const Limits& limits = {});

// 0-based position of the middle vertex of an n-vertex path (the ceil(n/2)-th
// vertex counting from 1). Join key of the two-way framework.
std::size_t middle_index(std::size_t n_vertices);

// Prepared state for the two-way join enumerator: candidate middle set M
// realized as virtual-endpoint instances plus their barriers.
struct JoinPrepared {
    Query original;
    bool feasible = false;  // false when no vertex satisfies sd_s + sd_t <= k

    Graph left_graph;  // g plus virtual target t' with edges u -> t', u in M
    Query left_query;
    BarrierMap left_bar;

    Graph right_graph;  // g plus virtual source s' with edges s' -> u, u in M
    Query right_query;
    BarrierMap right_bar;
};

JoinPrepared join_prepare(const Graph& g, const Query& q);
JoinPrepared join_prepare(const Graph& g, const Graph& grev, const Query& q);

// Enumerates both half instances with bcdfs, strips the virtual endpoints,
// and joins on the shared vertex u; a combination is kept iff it is simple
// and u sits at the middle position. Each result path has a unique middle,
// so no deduplication is needed.
ResultSet join_enumerate_prepared(const JoinPrepared& jp, const Limits& limits = {});
ResultSet join_enumerate(const Graph& g, const Query& q, const Limits& limits = {});

// Equivalence check for the preprocessing reduction: true iff the oracle
// result set on g equals the oracle result set on the pre_bfs subgraph,
// mapped back through the id bijection. Intended for small instances.
bool validate_theorem1(const Graph& g, const Query& q, const Limits& limits = {});

}  // namespace kpath
