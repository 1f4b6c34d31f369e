#pragma once

#include <cstdint>
#include <iosfwd>

#include "kpath/preprocess.hpp"

namespace kpath {

struct QuerySet {
    std::vector<Query> queries;
    std::uint64_t seed = 0;
    std::uint32_t k = 1;
};

// Draws s uniformly among vertices with out-degree > 0, then t uniformly
// among the vertices a k-hop BFS from s reaches (excluding s), so every pair
// admits at least one result candidate by construction. Deterministic for a
// fixed seed. Throws std::runtime_error when the retry budget (100 * count)
// runs out before `count` pairs are found.
QuerySet gen_queries(const Graph& g, std::uint32_t k, std::size_t count, std::uint64_t seed);

// Text form: a "# kpath-queries k=<k> seed=<seed>" header, then one "s t"
// pair per line.
void write_queries(std::ostream& out, const QuerySet& qs);
QuerySet read_queries(std::istream& in);

}  // namespace kpath
