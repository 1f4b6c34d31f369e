#pragma once

#include <cstdint>
#include <span>

#include "kpath/graph.hpp"

namespace kpath {

enum class VerifyKind : std::uint8_t {
    Emit,            // successor is the target: a result path
    Valid,           // passed all three checks; extend and keep searching
    InvalidBarrier,  // len(p) + 1 + bar[u] > k
    InvalidVisited,  // successor already on the path
};

// One expansion candidate: an intermediate path, a successor of its last
// vertex, that successor's barrier, and the query bounds.
struct VerifyInput {
    std::span<const vertex_t> path;
    vertex_t successor = 0;
    std::uint32_t barrier_u = 0;
    std::uint32_t path_len = 0;  // == path.size() - 1
    vertex_t target = 0;
    std::uint32_t k = 0;
};

// Stage predicates. Each reads only its own slice of the input, so the three
// can run in any order (or concurrently) and be merged afterwards.

inline bool target_stage(vertex_t successor, vertex_t target) { return successor == target; }

inline bool barrier_stage(std::uint32_t path_len, std::uint32_t barrier_u, std::uint32_t k) {
    return std::uint64_t{path_len} + 1 + barrier_u <= k;
}

// Plain O(len) scan; len is bounded by the hop constraint.
inline bool visited_stage(std::span<const vertex_t> path, vertex_t successor) {
    for (vertex_t v : path)
        if (v == successor) return false;
    return true;
}

// Target hit dominates, then barrier failure, then visited failure. This
// priority makes the merged result identical to the sequential short-circuit
// order for every input, not just the ones live inside an engine run.
inline VerifyKind merge_stages(bool target_hit, bool barrier_ok, bool unvisited) {
    if (target_hit) return VerifyKind::Emit;
    if (!barrier_ok) return VerifyKind::InvalidBarrier;
    if (!unvisited) return VerifyKind::InvalidVisited;
    return VerifyKind::Valid;
}

// Sequential reference: target check, barrier check, visited check, each
// stage run only if the previous one passed.
inline VerifyKind verify(const VerifyInput& in) {
    if (in.successor == in.target) return VerifyKind::Emit;
    if (std::uint64_t{in.path_len} + 1 + in.barrier_u > in.k) return VerifyKind::InvalidBarrier;
    for (vertex_t v : in.path)
        if (v == in.successor) return VerifyKind::InvalidVisited;
    return VerifyKind::Valid;
}

// Data-separated form: all three stages evaluated independently, then merged.
// Pointwise identical to verify(); this is the form the engine batches.
inline VerifyKind verify_staged(const VerifyInput& in) {
    const bool hit = target_stage(in.successor, in.target);
    const bool barrier_ok = barrier_stage(in.path_len, in.barrier_u, in.k);
    const bool unvisited = visited_stage(in.path, in.successor);
    return merge_stages(hit, barrier_ok, unvisited);
}

}  // namespace kpath
