#include "kpath/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace kpath {

Graph make_random_graph(std::size_t n, double avg_out_degree, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random graph needs at least 2 vertices");
    const auto want = static_cast<std::uint64_t>(std::llround(avg_out_degree * n));
    const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1);
    const std::uint64_t m = std::min(want, max_edges);

    std::mt19937_64 rng(seed);
    EdgeList list;
    list.declared_vertex_count = n;
    // sampling with replacement then dedup in build_graph keeps this simple;
    // the tiny duplicate rate only nudges the average degree
    list.edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const auto v = static_cast<vertex_t>(rng() % n);
        const auto u = static_cast<vertex_t>(rng() % n);
        if (v == u) continue;
        list.edges.emplace_back(v, u);
    }
    return build_graph(list);
}

SynthInstance make_layered_dag(std::uint32_t width, std::uint32_t layers) {
    if (width < 1 || layers < 1) throw std::invalid_argument("layered DAG needs width, layers >= 1");
    const vertex_t s = 0;
    const auto t = static_cast<vertex_t>(1 + width * layers);
    const auto rank_vertex = [&](std::uint32_t rank, std::uint32_t j) {
        return static_cast<vertex_t>(1 + rank * width + j);
    };

    EdgeList list;
    list.declared_vertex_count = t + 1;
    for (std::uint32_t j = 0; j < width; ++j) list.edges.emplace_back(s, rank_vertex(0, j));
    for (std::uint32_t rank = 0; rank + 1 < layers; ++rank)
        for (std::uint32_t a = 0; a < width; ++a)
            for (std::uint32_t b = 0; b < width; ++b)
                list.edges.emplace_back(rank_vertex(rank, a), rank_vertex(rank + 1, b));
    for (std::uint32_t j = 0; j < width; ++j) list.edges.emplace_back(rank_vertex(layers - 1, j), t);

    return SynthInstance{build_graph(list), Query{s, t, layers + 1}};
}

SynthInstance make_super_node_graph(std::uint32_t hub_degree) {
    if (hub_degree < 1) throw std::invalid_argument("hub degree must be >= 1");
    const vertex_t s = 0;
    const vertex_t hub = 1;
    const auto t = static_cast<vertex_t>(2 + hub_degree);

    EdgeList list;
    list.declared_vertex_count = t + 1;
    list.edges.emplace_back(s, hub);
    for (std::uint32_t i = 0; i < hub_degree; ++i) {
        const auto mid = static_cast<vertex_t>(2 + i);
        list.edges.emplace_back(hub, mid);
        list.edges.emplace_back(mid, t);
    }
    return SynthInstance{build_graph(list), Query{s, t, 3}};
}

}  // namespace kpath
