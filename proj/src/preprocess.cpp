#include "kpath/preprocess.hpp"

#include <ostream>
#include <stdexcept>

namespace kpath {

void validate_query(const Graph& g, const Query& q) {
    if (q.s >= g.vertex_count() || q.t >= g.vertex_count())
        throw std::invalid_argument("query endpoint out of range");
    if (q.s == q.t) throw std::invalid_argument("query requires s != t");
    if (q.k < 1) throw std::invalid_argument("hop constraint must be >= 1");
}

DistanceMap bounded_bfs(const Graph& g, vertex_t origin, std::uint32_t radius) {
    if (origin >= g.vertex_count()) throw std::invalid_argument("BFS origin out of range");
    DistanceMap dm;
    dm.origin = origin;
    dm.radius = radius;
    dm.dist.assign(g.vertex_count(), DistanceMap::kUnreached);
    dm.dist[origin] = 0;

    std::vector<vertex_t> frontier{origin}, next;
    for (std::uint32_t d = 0; d < radius && !frontier.empty(); ++d) {
        next.clear();
        for (vertex_t v : frontier) {
            for (vertex_t u : g.successors(v)) {
                if (dm.dist[u] != DistanceMap::kUnreached) continue;
                dm.dist[u] = d + 1;
                next.push_back(u);
            }
        }
        frontier.swap(next);
    }
    return dm;
}

BarrierMap make_barrier_from_reverse(const Graph& grev, vertex_t t, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("hop constraint must be >= 1");
    const DistanceMap sd_t = bounded_bfs(grev, t, k - 1);
    BarrierMap bm;
    bm.bar.resize(grev.vertex_count());
    for (vertex_t v = 0; v < grev.vertex_count(); ++v)
        bm.bar[v] = sd_t.reached(v) ? sd_t.dist[v] : k + 1;
    return bm;
}

BarrierMap make_barrier(const Graph& g, vertex_t t, std::uint32_t k) {
    return make_barrier_from_reverse(reverse(g), t, k);
}

PreprocessResult pre_bfs(const Graph& g, const Graph& grev, const Query& q) {
    validate_query(g, q);
    const std::uint32_t radius = q.k - 1;
    const DistanceMap sd_s = bounded_bfs(g, q.s, radius);
    const DistanceMap sd_t = bounded_bfs(grev, q.t, radius);

    std::vector<vertex_t> keep;
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        if (v == q.s || v == q.t) {
            keep.push_back(v);
            continue;
        }
        if (sd_s.reached(v) && sd_t.reached(v) && sd_s.dist[v] + sd_t.dist[v] <= q.k)
            keep.push_back(v);
    }

    PreprocessResult pre;
    auto [sub, mapping] = induced_subgraph(g, keep);
    pre.subgraph = std::move(sub);
    pre.mapping = std::move(mapping);
    pre.barrier.bar.resize(pre.subgraph.vertex_count());
    for (vertex_t nv = 0; nv < pre.subgraph.vertex_count(); ++nv) {
        const vertex_t old = pre.mapping.new_to_old[nv];
        pre.barrier.bar[nv] = sd_t.reached(old) ? sd_t.dist[old] : q.k + 1;
    }
    pre.s_new = pre.mapping.old_to_new[q.s];
    pre.t_new = pre.mapping.old_to_new[q.t];
    pre.query = q;
    return pre;
}

PreprocessResult pre_bfs(const Graph& g, const Query& q) { return pre_bfs(g, reverse(g), q); }

void dump_preprocess(std::ostream& out, const PreprocessResult& pre) {
    out << "s=" << pre.query.s << " t=" << pre.query.t << " k=" << pre.query.k << "\n";
    out << "vertices=" << pre.subgraph.vertex_count() << " edges=" << pre.subgraph.edge_count()
        << "\n";
    out << "new_id old_id bar\n";
    for (vertex_t nv = 0; nv < pre.subgraph.vertex_count(); ++nv)
        out << nv << " " << pre.mapping.new_to_old[nv] << " " << pre.barrier.bar[nv] << "\n";
}

}  // namespace kpath
