#pragma once

#include <cstdint>

#include "kpath/preprocess.hpp"

namespace kpath {

// Seeded uniform random digraph: n vertices, round(n * avg_out_degree)
// distinct edges, no self-loops. Deterministic for a given seed.
Graph make_random_graph(std::size_t n, double avg_out_degree, std::uint64_t seed);

struct SynthInstance {
    Graph graph;
    Query query;
};

// Layered DAG: s, then `layers` ranks of `width` vertices with full bipartite
// links between consecutive ranks, then t. Every s-t path has exactly
// layers + 1 hops, so the instance is sized by width^layers.
SynthInstance make_layered_dag(std::uint32_t width, std::uint32_t layers);

// s -> hub -> {m_0 .. m_{degree-1}} -> t with the hub's out-degree as given;
// the query (s, t, 3) routes everything through the hub's successor windows.
SynthInstance make_super_node_graph(std::uint32_t hub_degree);

}  // namespace kpath
