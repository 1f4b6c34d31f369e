#include "kpath/enumerate.hpp"

#include <span>
#include <unordered_map>

#include "kpath/errors.hpp"

namespace kpath {

namespace {

// Deadline polling is amortized over many visits; the mask keeps the clock
// read off the hot path.
struct Ticker {
    const Limits& limits;
    std::uint64_t ticks = 0;

    void tick() {
        if ((++ticks & 0xfff) != 0 || !limits.deadline) return;
        if (std::chrono::steady_clock::now() > *limits.deadline) throw enumeration_timeout();
    }
};

void push_result(ResultSet& out, Path p, const Limits& limits) {
    out.paths.push_back(std::move(p));
    if (out.paths.size() > limits.max_results) throw path_limit_exceeded(limits.max_results);
}

}  // namespace

bool ResultSet::set_equal(const ResultSet& other) const {
    if (paths.size() != other.paths.size()) return false;
    std::vector<Path> a = paths, b = other.paths;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

std::string to_lines(const ResultSet& rs) {
    std::vector<Path> sorted = rs.paths;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const Path& p : sorted) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(p[i]);
        }
        out += '\n';
    }
    return out;
}

BarrierMap zero_barrier(std::size_t vertex_count) {
    return BarrierMap{std::vector<std::uint32_t>(vertex_count, 0)};
}

namespace {

struct OracleCtx {
    const Graph& g;
    const Query& q;
    const Limits& limits;
    ResultSet& out;
    std::vector<vertex_t> stack;
    std::vector<char> on_stack;
    Ticker ticker;

    void explore(vertex_t v, std::uint32_t depth) {
        if (depth >= q.k) return;  // any extension would exceed the hop bound
        for (vertex_t u : g.successors(v)) {
            ticker.tick();
            if (u == q.t) {
                Path p = stack;
                p.push_back(u);
                push_result(out, std::move(p), limits);
                continue;
            }
            if (on_stack[u]) continue;
            stack.push_back(u);
            on_stack[u] = 1;
            explore(u, depth + 1);
            stack.pop_back();
            on_stack[u] = 0;
        }
    }
};

}  // namespace

ResultSet oracle_enumerate(const Graph& g, const Query& q, const Limits& limits) {
    validate_query(g, q);
    ResultSet out;
    OracleCtx ctx{g, q, limits, out, {q.s}, std::vector<char>(g.vertex_count(), 0), {limits}};
    ctx.on_stack[q.s] = 1;
    ctx.explore(q.s, 0);
    return out;
}

namespace {

struct BcdfsCtx {
    const Graph& g;
    const Query& q;
    std::vector<std::uint32_t>& bar;
    const Limits& limits;
    ResultSet& out;
    std::vector<vertex_t> stack;
    std::vector<char> on_stack;
    Ticker ticker;

    struct Sub {
        bool found;    // some result emitted below this point
        bool blocked;  // some successor was skipped because it sat on the stack
    };

    Sub explore(vertex_t v, std::uint32_t depth) {
        bool found = false;
        bool blocked = false;
        for (vertex_t u : g.successors(v)) {
            ticker.tick();
            if (u == q.t) {
                if (depth + 1 <= q.k) {
                    Path p = stack;
                    p.push_back(u);
                    push_result(out, std::move(p), limits);
                    found = true;
                }
                continue;
            }
            if (on_stack[u]) {
                blocked = true;
                continue;
            }
            if (std::uint64_t{depth} + 1 + bar[u] > q.k) continue;
            stack.push_back(u);
            on_stack[u] = 1;
            const Sub sub = explore(u, depth + 1);
            stack.pop_back();
            on_stack[u] = 0;
            found |= sub.found;
            blocked |= sub.blocked;
        }
        // A blocking-free failure holds for every stack: the budget alone was
        // short, so k + 1 - depth lower-bounds sd(v, t) and the raise is
        // permanent. A blocked failure says nothing once the stack changes.
        if (!found && !blocked) bar[v] = std::max(bar[v], q.k + 1 - depth);
        return {found, blocked};
    }
};

}  // namespace

BcdfsOutcome bcdfs_run(const Graph& g, const Query& q, const BarrierMap& bar0,
                       const Limits& limits) {
    validate_query(g, q);
    if (bar0.bar.size() != g.vertex_count())
        throw std::invalid_argument("barrier size does not match graph");
    BcdfsOutcome outcome;
    outcome.final_bar = bar0.bar;
    BcdfsCtx ctx{g,
                 q,
                 outcome.final_bar,
                 limits,
                 outcome.results,
                 {q.s},
                 std::vector<char>(g.vertex_count(), 0),
                 {limits}};
    ctx.on_stack[q.s] = 1;
    ctx.explore(q.s, 0);
    return outcome;
}

ResultSet bcdfs_enumerate(const Graph& g, const Query& q, const BarrierMap& bar0,
                          const Limits& limits) {
    return bcdfs_run(g, q, bar0, limits).results;
}

std::size_t middle_index(std::size_t n_vertices) { return (n_vertices - 1) / 2; }

JoinPrepared join_prepare(const Graph& g, const Graph& grev, const Query& q) {
    validate_query(g, q);
    JoinPrepared jp;
    jp.original = q;

    const DistanceMap sd_s = bounded_bfs(g, q.s, q.k);
    const DistanceMap sd_t = bounded_bfs(grev, q.t, q.k);
    jp.feasible = sd_s.reached(q.t) && sd_s.dist[q.t] <= q.k;
    if (!jp.feasible) return jp;

    // Candidate middles: every vertex of a result path satisfies the distance
    // sum test, so this superset covers all true middle vertices; the join
    // filter discards the rest.
    std::vector<vertex_t> middles;
    for (vertex_t v = 0; v < g.vertex_count(); ++v)
        if (sd_s.reached(v) && sd_t.reached(v) && sd_s.dist[v] + sd_t.dist[v] <= q.k)
            middles.push_back(v);

    const auto virt = static_cast<vertex_t>(g.vertex_count());
    const std::uint32_t k_left = q.k / 2 + 1;
    const std::uint32_t k_right = (q.k + 1) / 2 + 1;

    EdgeList base;
    base.declared_vertex_count = g.vertex_count() + 1;
    for (vertex_t v = 0; v < g.vertex_count(); ++v)
        for (vertex_t u : g.successors(v)) base.edges.emplace_back(v, u);

    EdgeList left = base;
    for (vertex_t u : middles) left.edges.emplace_back(u, virt);
    jp.left_graph = build_graph(left);
    jp.left_query = {q.s, virt, k_left};
    jp.left_bar = make_barrier(jp.left_graph, virt, k_left);

    EdgeList right = std::move(base);
    for (vertex_t u : middles) right.edges.emplace_back(virt, u);
    jp.right_graph = build_graph(right);
    jp.right_query = {virt, q.t, k_right};
    jp.right_bar = make_barrier(jp.right_graph, q.t, k_right);
    return jp;
}

JoinPrepared join_prepare(const Graph& g, const Query& q) {
    return join_prepare(g, reverse(g), q);
}

ResultSet join_enumerate_prepared(const JoinPrepared& jp, const Limits& limits) {
    ResultSet out;
    if (!jp.feasible) return out;

    const ResultSet left = bcdfs_enumerate(jp.left_graph, jp.left_query, jp.left_bar, limits);
    const ResultSet right = bcdfs_enumerate(jp.right_graph, jp.right_query, jp.right_bar, limits);

    // Strip the virtual source and bucket right halves by their join vertex.
    std::unordered_map<vertex_t, std::vector<std::span<const vertex_t>>> right_by_front;
    for (const Path& r : right.paths) {
        const std::span<const vertex_t> real(r.data() + 1, r.size() - 1);
        right_by_front[real.front()].push_back(real);
    }

    Ticker ticker{limits};
    for (const Path& l : left.paths) {
        const std::span<const vertex_t> real(l.data(), l.size() - 1);  // drop t'
        const auto it = right_by_front.find(real.back());
        if (it == right_by_front.end()) continue;
        for (const auto r : it->second) {
            ticker.tick();
            const std::size_t n = real.size() + r.size() - 1;
            if (middle_index(n) != real.size() - 1) continue;  // u must be the middle
            bool simple = true;
            for (std::size_t i = 1; i < r.size() && simple; ++i)
                for (vertex_t v : real)
                    if (v == r[i]) {
                        simple = false;
                        break;
                    }
            if (!simple) continue;
            Path p(real.begin(), real.end());
            p.insert(p.end(), r.begin() + 1, r.end());
            push_result(out, std::move(p), limits);
        }
    }
    out.sort_lex();
    return out;
}

ResultSet join_enumerate(const Graph& g, const Query& q, const Limits& limits) {
    return join_enumerate_prepared(join_prepare(g, q), limits);
}

bool validate_theorem1(const Graph& g, const Query& q, const Limits& limits) {
    const ResultSet whole = oracle_enumerate(g, q, limits);
    const PreprocessResult pre = pre_bfs(g, q);
    const ResultSet reduced =
        oracle_enumerate(pre.subgraph, Query{pre.s_new, pre.t_new, q.k}, limits);
    ResultSet mapped;
    mapped.paths.reserve(reduced.paths.size());
    for (const Path& p : reduced.paths) {
        Path orig;
        orig.reserve(p.size());
        for (vertex_t v : p) orig.push_back(pre.mapping.new_to_old[v]);
        mapped.paths.push_back(std::move(orig));
    }
    return mapped.set_equal(whole);
}

}  // namespace kpath
