#include <doctest.h>

#include <map>
#include <set>

#include "kpath/pefp.hpp"
#include "kpath/synth.hpp"
#include "testutil.hpp"

using namespace kpath;

namespace {

Graph diamond() { return testutil::from_edges({{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

PathRecord rec(std::uint64_t id, std::vector<vertex_t> vertices) {
    PathRecord r;
    r.vertices = std::move(vertices);
    r.id = id;
    return r;
}

TierConfig cfg(std::uint64_t cap, std::uint64_t theta2, Batching order = Batching::Dfs) {
    TierConfig c;
    c.buffer_capacity = cap;
    c.processing_capacity = theta2;
    c.batching = order;
    return c;
}

}  // namespace

TEST_CASE("batch_dfs truncates a wide record and leaves it on top") {
    const Graph g = testutil::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    TierState st;
    st.buffer.push_back(rec(0, {0}));

    const Batch batch = batch_dfs(st, g, 3);
    REQUIRE(batch.size() == 1);
    CHECK(batch[0].win_begin == 0);
    CHECK(batch[0].win_end == 3);
    REQUIRE(st.buffer.size() == 1);  // partially consumed, stays for the next batch
    CHECK(st.buffer.back().nbr_start == 0);
    CHECK(st.buffer.back().nbr_end == 3);

    const Batch rest = batch_dfs(st, g, 3);
    REQUIRE(rest.size() == 1);
    CHECK(rest[0].win_begin == 3);
    CHECK(rest[0].win_end == 5);
    CHECK(st.buffer.empty());  // window reached the out-degree, record retired
}

TEST_CASE("batch_dfs spans records from the top of the buffer") {
    const Graph g = testutil::from_edges({{0, 2}, {1, 2}, {2, 3}, {2, 4}});
    TierState st;
    st.buffer.push_back(rec(0, {0, 2}));  // bottom
    st.buffer.push_back(rec(1, {1, 2}));  // top; both end at vertex 2 (degree 2)

    const Batch batch = batch_dfs(st, g, 3);
    REQUIRE(batch.size() == 2);
    CHECK(batch[0].record.id == 1);  // top first, full 2-wide window
    CHECK(batch[0].win_end - batch[0].win_begin == 2);
    CHECK(batch[1].record.id == 0);  // next record contributes the remaining slot
    CHECK(batch[1].win_begin == 0);
    CHECK(batch[1].win_end == 1);
    REQUIRE(st.buffer.size() == 1);  // top removed, bottom retained with cursor advanced
    CHECK(st.buffer.back().id == 0);
    CHECK(st.buffer.back().nbr_end == 1);
}

TEST_CASE("batch_dfs on an empty buffer yields an empty batch") {
    const Graph g = diamond();
    TierState st;
    CHECK(batch_dfs(st, g, 4).empty());
}

TEST_CASE("next_batch prefers the buffer and leaves external alone") {
    const Graph g = testutil::from_edges({{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    TierState st;
    st.buffer.push_back(rec(1, {0, 1}));
    st.external.push_back(rec(2, {0, 2}));
    TierStats stats;

    const Batch batch = next_batch(st, g, cfg(4, 8), stats);
    REQUIRE(batch.size() == 1);
    CHECK(batch[0].record.id == 1);
    CHECK(st.external.size() == 1);
    CHECK(stats.external_reads == 0);
    CHECK(stats.batches == 1);
}

TEST_CASE("next_batch refills the most recently spilled block") {
    const Graph g = testutil::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    TierState st;
    for (std::uint64_t i = 0; i < 5; ++i) st.external.push_back(rec(i, {0}));
    TierStats stats;
    TierConfig c = cfg(8, 100);
    c.theta1 = 3;

    const Batch batch = next_batch(st, g, c, stats);
    CHECK(stats.external_reads == 3);
    CHECK(st.external.size() == 2);
    // ids 2,3,4 moved as a block; batching then walks from the top (id 4)
    REQUIRE(!batch.empty());
    CHECK(batch[0].record.id == 4);
    std::set<std::uint64_t> batched;
    for (const BatchEntry& e : batch) batched.insert(e.record.id);
    CHECK(batched == std::set<std::uint64_t>{2, 3, 4});
}

TEST_CASE("next_batch with both tiers empty signals termination") {
    TierState st;
    TierStats stats;
    CHECK(next_batch(st, diamond(), cfg(4, 8), stats).empty());
    CHECK(stats.batches == 0);
}

TEST_CASE("pefp on the diamond stays in the buffer when it fits") {
    const Graph g = diamond();
    const Query q{0, 3, 2};
    const PreprocessResult pre = pre_bfs(g, q);
    for (std::uint64_t cap : {2ull, 4ull, 64ull}) {
        const PefpOutcome out = pefp_enumerate(pre, q, cfg(cap, 8));
        CHECK(out.results.set_equal(oracle_enumerate(g, q)));
        CHECK(out.stats.external_writes == 0);
        CHECK(out.stats.external_reads == 0);
        CHECK(out.stats.emitted == 2);
    }
}

TEST_CASE("pefp with a one-slot buffer spills but still agrees") {
    const Graph g = diamond();
    const Query q{0, 3, 2};
    const PreprocessResult pre = pre_bfs(g, q);
    const PefpOutcome out = pefp_enumerate(pre, q, cfg(1, 8));
    CHECK(out.results.set_equal(oracle_enumerate(g, q)));
    CHECK(out.stats.external_writes > 0);
    CHECK(out.stats.external_reads == out.stats.external_writes);
    CHECK(out.stats.peak_buffer <= 1);
}

TEST_CASE("pefp equals the oracle under every configuration") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Graph g = make_random_graph(16 + (seed % 4) * 12, 3.0, 10'000 + seed);
        const Query q{static_cast<vertex_t>(seed % g.vertex_count()),
                      static_cast<vertex_t>((seed * 7 + 2) % g.vertex_count()),
                      static_cast<std::uint32_t>(2 + seed % 5)};
        if (q.s == q.t) continue;
        const ResultSet expect = oracle_enumerate(g, q);
        const PreprocessResult pre = pre_bfs(g, q);
        for (std::uint64_t cap : {1ull, 3ull, 64ull}) {
            for (std::uint64_t theta2 : {1ull, 7ull, 256ull}) {
                for (Batching order : {Batching::Dfs, Batching::Fifo}) {
                    TierConfig c = cfg(cap, theta2, order);
                    c.parallel_verify = (seed % 2) == 0;
                    const PefpOutcome out = pefp_enumerate(pre, q, c);
                    CHECK(out.results.set_equal(expect));
                    CHECK(out.stats.peak_buffer <= cap);
                    CHECK(out.stats.peak_batch_slots <= theta2);
                    CHECK(out.stats.emitted == expect.size());
                }
            }
        }
    }
}

TEST_CASE("pefp_enumerate_fifo equals pefp_enumerate") {
    const Graph g = make_random_graph(40, 3.0, 11'000);
    const Query q{0, 17, 4};
    const PreprocessResult pre = pre_bfs(g, q);
    const PefpOutcome dfs = pefp_enumerate(pre, q, cfg(4, 8));
    const PefpOutcome fifo = pefp_enumerate_fifo(pre, q, cfg(4, 8));
    CHECK(dfs.results.set_equal(fifo.results));
}

TEST_CASE("degenerate instance: no edges, no results, no traffic") {
    const Graph g = testutil::from_edges({}, 4);
    const Query q{0, 3, 3};
    const PreprocessResult pre = pre_bfs(g, q);
    for (const Batching order : {Batching::Dfs, Batching::Fifo}) {
        const PefpOutcome out = pefp_enumerate(pre, q, cfg(4, 8, order));
        CHECK(out.results.size() == 0);
        CHECK(out.stats.external_writes == 0);
        CHECK(out.stats.external_reads == 0);
        CHECK(out.stats.emitted == 0);
    }
}

TEST_CASE("every record's windows tile its successor range exactly once") {
    const Graph g = make_random_graph(32, 3.5, 12'000);
    const Query q{0, 9, 5};
    const PreprocessResult pre = pre_bfs(g, q);

    struct Windows {
        vertex_t last = 0;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> spans;
    };
    std::map<std::uint64_t, Windows> seen;
    PefpHooks hooks;
    hooks.on_window = [&](const BatchEntry& e) {
        Windows& w = seen[e.record.id];
        w.last = e.record.vertices.back();
        w.spans.emplace_back(e.win_begin, e.win_end);
    };

    const PefpOutcome out = pefp_enumerate(pre, q, cfg(3, 4), {}, &hooks);
    CHECK(out.results.set_equal(oracle_enumerate(g, q)));
    for (const auto& [id, w] : seen) {
        std::uint32_t expect_begin = 0;
        for (const auto& [b, e] : w.spans) {
            CHECK(b == expect_begin);  // contiguous, no overlap, no gap
            CHECK(e >= b);
            expect_begin = e;
        }
        CHECK(expect_begin == pre.subgraph.out_degree(w.last));
    }
}

TEST_CASE("valid extensions always leave room for the target hop") {
    const Graph g = make_random_graph(32, 3.0, 13'000);
    const Query q{0, 11, 4};
    const PreprocessResult pre = pre_bfs(g, q);
    PefpHooks hooks;
    hooks.on_verify = [&](const VerifyInput& in, VerifyKind kind) {
        if (kind != VerifyKind::Valid) return;
        CHECK(in.successor != in.target);
        CHECK(in.path_len + 2 <= in.k);  // stored paths keep len <= k-1
    };
    pefp_enumerate(pre, q, cfg(4, 8), {}, &hooks);
}

TEST_CASE("super node successors are batched without breaching capacity") {
    const std::uint32_t theta2 = 8;
    const SynthInstance inst = make_super_node_graph(100 * theta2);
    const PreprocessResult pre = pre_bfs(inst.graph, inst.query);
    const PefpOutcome out = pefp_enumerate(pre, inst.query, cfg(2, theta2));
    CHECK(out.results.size() == 100 * theta2);
    CHECK(out.stats.peak_batch_slots <= theta2);
    CHECK(out.stats.peak_buffer <= 2);
}

TEST_CASE("batch-dfs spills less than fifo on the layered DAG") {
    const SynthInstance inst = make_layered_dag(8, 5);  // k = 6
    TierConfig c = cfg(64, 32);
    const PreprocessResult pre = pre_bfs(inst.graph, inst.query);
    const PefpOutcome dfs = pefp_enumerate(pre, inst.query, c);
    const PefpOutcome fifo = pefp_enumerate_fifo(pre, inst.query, c);
    CHECK(dfs.results.set_equal(fifo.results));
    CHECK(dfs.results.size() == 32768);  // 8^5 full-length routes
    CHECK(dfs.stats.external_writes < fifo.stats.external_writes);
}

TEST_CASE("the engaged parallel kernel matches the serial reference bit for bit") {
    // hub degree and theta2 large enough that batches cross the parallel grain
    const SynthInstance inst = make_super_node_graph(8192);
    const PreprocessResult pre = pre_bfs(inst.graph, inst.query);
    TierConfig serial = cfg(4096, 8192);
    serial.parallel_verify = false;
    TierConfig parallel = cfg(4096, 8192);
    parallel.parallel_verify = true;
    const PefpOutcome a = pefp_enumerate(pre, inst.query, serial);
    const PefpOutcome b = pefp_enumerate(pre, inst.query, parallel);
    CHECK(a.results.paths == b.results.paths);  // same order, not just same set
    CHECK(a.stats.to_kv_text() == b.stats.to_kv_text());
    CHECK(a.results.size() == 8192);
}

TEST_CASE("flush policy and parallelism change stats, never results") {
    const Graph g = make_random_graph(48, 3.5, 14'000);
    const Query q{3, 30, 5};
    const PreprocessResult pre = pre_bfs(g, q);
    const ResultSet expect = oracle_enumerate(g, q);
    for (FlushPolicy fp : {FlushPolicy::Segment, FlushPolicy::All}) {
        for (bool par : {false, true}) {
            TierConfig c = cfg(8, 16);
            c.flush = fp;
            c.parallel_verify = par;
            CHECK(pefp_enumerate(pre, q, c).results.set_equal(expect));
        }
    }
}

TEST_CASE("tier stats serialize as a flat key=value block") {
    const Graph g = diamond();
    const Query q{0, 3, 2};
    const PefpOutcome out = pefp_enumerate(pre_bfs(g, q), q, cfg(4, 8));
    const std::string text = out.stats.to_kv_text();
    CHECK(text.find("external_writes=0\n") != std::string::npos);
    CHECK(text.find("emitted=2\n") != std::string::npos);
    CHECK(text.find("batches=") != std::string::npos);
}

TEST_CASE("config validation") {
    const Graph g = diamond();
    const Query q{0, 3, 2};
    const PreprocessResult pre = pre_bfs(g, q);
    CHECK_THROWS_AS(pefp_enumerate(pre, q, cfg(0, 8)), std::invalid_argument);
    CHECK_THROWS_AS(pefp_enumerate(pre, q, cfg(4, 0)), std::invalid_argument);
    TierConfig bad = cfg(2, 8);
    bad.theta1 = 4;  // would overflow the buffer on refill
    CHECK_THROWS_AS(pefp_enumerate(pre, q, bad), std::invalid_argument);
    CHECK_THROWS_AS(pefp_enumerate(pre, Query{0, 3, 3}, cfg(4, 8)), std::invalid_argument);
}
