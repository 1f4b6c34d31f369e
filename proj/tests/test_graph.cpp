#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "kpath/errors.hpp"
#include "kpath/graph.hpp"
#include "kpath/synth.hpp"
#include "testutil.hpp"

using namespace kpath;

TEST_CASE("parse_edge_list reads pairs in file order") {
    std::istringstream in("0 1\n1 2\n");
    const EdgeList el = parse_edge_list(in);
    REQUIRE(el.edges.size() == 2);
    CHECK(el.edges[0] == std::pair<vertex_t, vertex_t>{0, 1});
    CHECK(el.edges[1] == std::pair<vertex_t, vertex_t>{1, 2});
}

TEST_CASE("parse_edge_list skips comments and blank lines") {
    std::istringstream in("# c\n\n% another\n3 0\n");
    const EdgeList el = parse_edge_list(in);
    REQUIRE(el.edges.size() == 1);
    CHECK(el.edges[0] == std::pair<vertex_t, vertex_t>{3, 0});
}

TEST_CASE("parse_edge_list tolerates CRLF line endings") {
    std::istringstream in("0 1\r\n# c\r\n2 3\r\n");
    const EdgeList el = parse_edge_list(in);
    REQUIRE(el.edges.size() == 2);
    CHECK(el.edges[1] == std::pair<vertex_t, vertex_t>{2, 3});
}

TEST_CASE("parse_edge_list names the offending line") {
    std::istringstream bad_token("0 x\n");
    CHECK_THROWS_WITH_AS(parse_edge_list(bad_token), doctest::Contains("line 1"), parse_error);

    std::istringstream bad_arity("0 1\n2\n");
    CHECK_THROWS_WITH_AS(parse_edge_list(bad_arity), doctest::Contains("line 2"), parse_error);

    std::istringstream trailing("0 1 2\n");
    CHECK_THROWS_AS(parse_edge_list(trailing), parse_error);

    std::istringstream negative("-1 0\n");
    CHECK_THROWS_AS(parse_edge_list(negative), parse_error);
}

TEST_CASE("build_graph produces sorted CSR") {
    const Graph g = testutil::from_edges({{0, 2}, {0, 1}, {1, 2}});
    CHECK(g.offsets() == std::vector<std::uint64_t>{0, 2, 3, 3});
    CHECK(g.targets() == std::vector<vertex_t>{1, 2, 2});
}

TEST_CASE("build_graph with declared count and no edges") {
    EdgeList el;
    el.declared_vertex_count = 3;
    const Graph g = build_graph(el);
    CHECK(g.offsets() == std::vector<std::uint64_t>{0, 0, 0, 0});
    CHECK(g.targets().empty());
}

TEST_CASE("duplicate edges deduplicated by default") {
    const Graph g = testutil::from_edges({{1, 0}, {1, 0}});
    CHECK(g.offsets() == std::vector<std::uint64_t>{0, 0, 1});
    CHECK(g.targets() == std::vector<vertex_t>{0});

    EdgeList el;
    el.edges = {{1, 0}, {1, 0}};
    IngestOptions keep;
    keep.dedup_parallel_edges = false;
    CHECK(build_graph(el, keep).edge_count() == 2);
}

TEST_CASE("self-loops dropped by default, retained on request") {
    EdgeList el;
    el.edges = {{0, 0}, {0, 1}};
    CHECK(build_graph(el).edge_count() == 1);

    IngestOptions keep;
    keep.drop_self_loops = false;
    CHECK(build_graph(el, keep).edge_count() == 2);
}

TEST_CASE("reverse flips a single edge") {
    const Graph g(std::vector<std::uint64_t>{0, 1, 1}, std::vector<vertex_t>{1});
    const Graph r = reverse(g);
    CHECK(r.offsets() == std::vector<std::uint64_t>{0, 0, 1});
    CHECK(r.targets() == std::vector<vertex_t>{0});
    CHECK(reverse(Graph{}) == Graph{});
}

TEST_CASE("reverse is an involution and swaps successor/predecessor sets") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Graph g = make_random_graph(4 + seed * 3, 2.5, seed);
        CHECK(reverse(reverse(g)) == g);
        const Graph r = reverse(g);
        for (vertex_t v = 0; v < g.vertex_count(); ++v) {
            std::vector<vertex_t> preds = testutil::brute_predecessors(g, v);
            std::sort(preds.begin(), preds.end());
            const auto succ = r.successors(v);
            CHECK(std::vector<vertex_t>(succ.begin(), succ.end()) == preds);
        }
    }
}

TEST_CASE("induced_subgraph keeps exactly the surviving edges") {
    const Graph g = testutil::from_edges({{0, 1}, {1, 2}, {0, 2}});
    const std::vector<vertex_t> keep{0, 2};
    const auto [sub, map] = induced_subgraph(g, keep);
    REQUIRE(sub.vertex_count() == 2);
    CHECK(sub.edge_count() == 1);
    CHECK(map.new_to_old == std::vector<vertex_t>{0, 2});
    CHECK(map.old_to_new[1] == kNoVertex);
    CHECK(sub.successors(map.old_to_new[0])[0] == map.old_to_new[2]);
}

TEST_CASE("induced_subgraph with full and empty keep sets") {
    const Graph g = testutil::from_edges({{0, 1}, {1, 2}, {0, 2}});
    std::vector<vertex_t> all{0, 1, 2};
    const auto [same, map] = induced_subgraph(g, all);
    CHECK(same == g);
    CHECK(map.new_to_old == all);

    const auto [empty, _] = induced_subgraph(g, std::vector<vertex_t>{});
    CHECK(empty.vertex_count() == 0);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("induced_subgraph matches a brute-force edge filter on random graphs") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 12; ++trial) {
        const Graph g = make_random_graph(18, 2.5, 40'000 + trial);
        std::vector<vertex_t> keep;
        for (vertex_t v = 0; v < g.vertex_count(); ++v)
            if (rng() % 2) keep.push_back(v);
        const auto [sub, map] = induced_subgraph(g, keep);

        std::set<std::pair<vertex_t, vertex_t>> expected;
        for (vertex_t v : keep)
            for (vertex_t u : g.successors(v))
                if (map.old_to_new[u] != kNoVertex) expected.emplace(v, u);

        std::set<std::pair<vertex_t, vertex_t>> got;
        for (vertex_t nv = 0; nv < sub.vertex_count(); ++nv)
            for (vertex_t nu : sub.successors(nv))
                got.emplace(map.new_to_old[nv], map.new_to_old[nu]);
        CHECK(got == expected);
    }
}

TEST_CASE("CSR well-formedness after constructors") {
    for (std::uint64_t seed = 10; seed < 14; ++seed) {
        const Graph g = make_random_graph(20, 3.0, seed);
        REQUIRE(g.offsets().front() == 0);
        REQUIRE(g.offsets().back() == g.edge_count());
        CHECK(std::is_sorted(g.offsets().begin(), g.offsets().end()));
        for (vertex_t v = 0; v < g.vertex_count(); ++v) {
            const auto succ = g.successors(v);
            CHECK(std::is_sorted(succ.begin(), succ.end()));
            for (vertex_t u : succ) CHECK(u < g.vertex_count());
        }
    }
}

TEST_CASE("binary CSR cache round-trips") {
    const Graph g = make_random_graph(30, 2.0, 99);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_binary_csr(buf, g);
    CHECK(read_binary_csr(buf) == g);
}

TEST_CASE("binary CSR cache rejects bad magic") {
    std::stringstream buf("XXXX\0\0\0\0", std::ios::in | std::ios::binary);
    CHECK_THROWS_AS(read_binary_csr(buf), parse_error);
}
