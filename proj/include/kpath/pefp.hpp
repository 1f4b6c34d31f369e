#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "kpath/enumerate.hpp"
#include "kpath/verify.hpp"

namespace kpath {

enum class Batching : std::uint8_t {
    Dfs,   // consume the buffer from its top: newest (longest) paths first
    Fifo,  // consume from its bottom: oldest (shortest) first; comparator only
};

enum class FlushPolicy : std::uint8_t {
    Segment,  // spill the oldest theta1-sized segment, keep the newest hot
    All,      // spill the whole buffer
};

struct TierConfig {
    std::uint64_t buffer_capacity = 4096;
    std::uint64_t processing_capacity = 1024;  // theta2: successor slots per batch
    std::uint64_t theta1 = 0;                  // external<->buffer segment; 0 = capacity/2
    Batching batching = Batching::Dfs;
    FlushPolicy flush = FlushPolicy::Segment;
    // Classify and materialize each batch with OpenMP instead of the serial
    // reference loop. Off by default: the engine is single-threaded per
    // query, and in-batch parallelism pays only on wide machines with large
    // processing areas (see the bench tool for local numbers).
    bool parallel_verify = false;

    std::uint64_t effective_theta1() const {
        const std::uint64_t t1 = theta1 ? theta1 : buffer_capacity / 2;
        return t1 ? t1 : 1;
    }
};

// Movement counters that make the tier model's memory traffic measurable.
struct TierStats {
    std::uint64_t external_writes = 0;  // records spilled buffer -> external
    std::uint64_t external_reads = 0;   // records refilled external -> buffer
    std::uint64_t batches = 0;          // batch assembly calls
    std::uint64_t expansions = 0;       // successor verifications
    std::uint64_t emitted = 0;          // result paths
    std::uint64_t peak_buffer = 0;      // high-water marks (invariant checks)
    std::uint64_t peak_batch_slots = 0;

    std::string to_kv_text() const;
};

// An intermediate simple path plus the cursor window over its unconsumed
// successors: [0, nbr_end) has already been handed out; the window handed to
// the most recent batch was [nbr_start, nbr_end).
struct PathRecord {
    std::vector<vertex_t> vertices;
    std::uint32_t nbr_start = 0;
    std::uint32_t nbr_end = 0;
    std::uint64_t id = 0;  // engine-assigned; stable across tier moves
};

// A record snapshot plus the successor window this batch will expand.
struct BatchEntry {
    PathRecord record;
    std::uint32_t win_begin = 0;
    std::uint32_t win_end = 0;
};
using Batch = std::vector<BatchEntry>;

// The tiered containers: a capacity-bounded buffer (work is pushed and
// batched at the back) and an unbounded external spill area, also stack-like
// at its back. Capacities are enforced by the engine, not the containers.
struct TierState {
    std::deque<PathRecord> buffer;
    std::vector<PathRecord> external;
    std::uint64_t next_id = 0;
};

// Walks the buffer from its consumption end and hands out successor windows
// until `theta` slots are claimed or the buffer is exhausted. A record whose
// window reaches its out-degree leaves the buffer; a partially consumed
// record stays put with advanced cursors and resumes in the next batch, so a
// super node's successors are covered by disjoint windows exactly once.
Batch batch_dfs(TierState& st, const Graph& g, std::uint64_t theta,
                Batching order = Batching::Dfs);

// Buffer-first refill: batch straight from the buffer when it has records;
// otherwise move up to theta1 records from the external tail back into the
// buffer (a contiguous block, order preserved) and batch from those. An empty
// batch signals termination.
Batch next_batch(TierState& st, const Graph& g, const TierConfig& cfg, TierStats& stats);

// Test/diagnostic taps. Called in deterministic order regardless of the
// verification schedule.
struct PefpHooks {
    std::function<void(const BatchEntry&)> on_window;
    std::function<void(const VerifyInput&, VerifyKind)> on_verify;
    std::function<void(std::size_t buffer_size, std::uint64_t batch_slots)> on_batch;
};

struct PefpOutcome {
    ResultSet results;  // original-id paths, mapped back through the bijection
    TierStats stats;
};

// Batched expansion-and-verification over the tier model. Seeds the tiers
// with the single-vertex path {s}, then alternates batch assembly, windowed
// one-hop expansion, staged verification, and write-back of valid extensions,
// spilling to the external area whenever the buffer is about to overflow.
// The result set is invariant under every TierConfig knob; only TierStats
// depend on them.
PefpOutcome pefp_enumerate(const PreprocessResult& pre, const Query& q, const TierConfig& cfg,
                           const Limits& limits = {}, const PefpHooks* hooks = nullptr);

// Same engine with FIFO batching order; exists as the Batch-DFS comparator.
PefpOutcome pefp_enumerate_fifo(const PreprocessResult& pre, const Query& q, TierConfig cfg,
                                const Limits& limits = {}, const PefpHooks* hooks = nullptr);

}  // namespace kpath
