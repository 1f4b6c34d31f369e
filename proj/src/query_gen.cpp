#include "kpath/query_gen.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kpath/errors.hpp"

namespace kpath {

QuerySet gen_queries(const Graph& g, std::uint32_t k, std::size_t count, std::uint64_t seed) {
    if (g.vertex_count() < 2) throw std::runtime_error("graph admits no valid query pair");
    if (k < 1) throw std::invalid_argument("hop constraint must be >= 1");

    std::vector<vertex_t> sources;
    for (vertex_t v = 0; v < g.vertex_count(); ++v)
        if (g.out_degree(v) > 0) sources.push_back(v);
    if (sources.empty()) throw std::runtime_error("graph admits no valid query pair");

    // raw modulo draws keep the stream identical across standard libraries
    std::mt19937_64 rng(seed);
    QuerySet qs;
    qs.seed = seed;
    qs.k = k;
    std::uint64_t budget = 100 * static_cast<std::uint64_t>(count);
    std::vector<vertex_t> reachable;
    while (qs.queries.size() < count) {
        if (budget-- == 0)
            throw std::runtime_error("query generation retry budget exhausted");
        const vertex_t s = sources[rng() % sources.size()];
        const DistanceMap dm = bounded_bfs(g, s, k);
        reachable.clear();
        for (vertex_t v = 0; v < g.vertex_count(); ++v)
            if (v != s && dm.reached(v)) reachable.push_back(v);
        if (reachable.empty()) continue;
        const vertex_t t = reachable[rng() % reachable.size()];
        qs.queries.push_back(Query{s, t, k});
    }
    return qs;
}

void write_queries(std::ostream& out, const QuerySet& qs) {
    out << "# kpath-queries k=" << qs.k << " seed=" << qs.seed << "\n";
    for (const Query& q : qs.queries) out << q.s << " " << q.t << "\n";
}

QuerySet read_queries(std::istream& in) {
    QuerySet qs;
    qs.k = 0;  // stays 0 when the header is absent; callers must supply k
    std::string line;
    std::size_t line_no = 0;
    bool have_k = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#' || line[first] == '%') {
            std::uint32_t k = 0;
            unsigned long long seed = 0;
            if (std::sscanf(line.c_str() + first, "# kpath-queries k=%u seed=%llu", &k, &seed) ==
                2) {
                qs.k = k;
                qs.seed = seed;
                have_k = true;
            }
            continue;
        }
        std::istringstream tokens(line);
        std::uint64_t s = 0, t = 0;
        if (!(tokens >> s >> t))
            throw parse_error("line " + std::to_string(line_no) + ": expected 's t' pair");
        std::string extra;
        if (tokens >> extra)
            throw parse_error("line " + std::to_string(line_no) + ": trailing token");
        qs.queries.push_back(
            Query{static_cast<vertex_t>(s), static_cast<vertex_t>(t), qs.k});
    }
    if (have_k)
        for (Query& q : qs.queries) q.k = qs.k;
    return qs;
}

}  // namespace kpath
