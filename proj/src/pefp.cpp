#include "kpath/pefp.hpp"

#include <algorithm>
#include <stdexcept>

#include "kpath/errors.hpp"

namespace kpath {

namespace {

// Batches below this size are classified serially; forking a team per
// micro-batch costs more than the scans and path builds it would split.
constexpr std::size_t kParallelGrain = 4096;

void flush_buffer(TierState& st, const TierConfig& cfg, TierStats& stats) {
    const std::size_t n = cfg.flush == FlushPolicy::All
                              ? st.buffer.size()
                              : std::min<std::size_t>(cfg.effective_theta1(), st.buffer.size());
    // the oldest (bottom) segment spills; the newest paths stay hot for Batch-DFS
    for (std::size_t i = 0; i < n; ++i) {
        st.external.push_back(std::move(st.buffer.front()));
        st.buffer.pop_front();
    }
    stats.external_writes += n;
}

void push_record(TierState& st, PathRecord rec, const TierConfig& cfg, TierStats& stats) {
    if (st.buffer.size() >= cfg.buffer_capacity) flush_buffer(st, cfg, stats);
    st.buffer.push_back(std::move(rec));
    stats.peak_buffer = std::max<std::uint64_t>(stats.peak_buffer, st.buffer.size());
}

}  // namespace

std::string TierStats::to_kv_text() const {
    std::string s;
    s += "external_writes=" + std::to_string(external_writes) + "\n";
    s += "external_reads=" + std::to_string(external_reads) + "\n";
    s += "batches=" + std::to_string(batches) + "\n";
    s += "expansions=" + std::to_string(expansions) + "\n";
    s += "emitted=" + std::to_string(emitted) + "\n";
    s += "peak_buffer=" + std::to_string(peak_buffer) + "\n";
    s += "peak_batch_slots=" + std::to_string(peak_batch_slots) + "\n";
    return s;
}

Batch batch_dfs(TierState& st, const Graph& g, std::uint64_t theta, Batching order) {
    Batch out;
    std::uint64_t cnt = 0;
    while (!st.buffer.empty() && cnt < theta) {
        PathRecord& rec = order == Batching::Dfs ? st.buffer.back() : st.buffer.front();
        const std::uint32_t deg = g.out_degree(rec.vertices.back());
        const std::uint32_t ptr1 = rec.nbr_end;
        const std::uint64_t room = theta - cnt;
        const std::uint32_t ptr2 =
            (ptr1 + room < deg) ? static_cast<std::uint32_t>(ptr1 + room) : deg;
        rec.nbr_start = ptr1;
        rec.nbr_end = ptr2;
        cnt += ptr2 - ptr1;
        if (ptr2 == deg) {
            // fully dispatched: the record's life continues only in this batch
            out.push_back(BatchEntry{std::move(rec), ptr1, ptr2});
            if (order == Batching::Dfs)
                st.buffer.pop_back();
            else
                st.buffer.pop_front();
        } else {
            // window truncated, so cnt just hit theta; the record keeps its
            // place and resumes from ptr2 next time
            out.push_back(BatchEntry{rec, ptr1, ptr2});
        }
    }
    return out;
}

Batch next_batch(TierState& st, const Graph& g, const TierConfig& cfg, TierStats& stats) {
    if (st.buffer.empty()) {
        if (st.external.empty()) return {};
        // refill with the most recently spilled block, order preserved
        const std::size_t m = std::min<std::size_t>(cfg.effective_theta1(), st.external.size());
        const auto first = st.external.end() - static_cast<std::ptrdiff_t>(m);
        for (auto it = first; it != st.external.end(); ++it) st.buffer.push_back(std::move(*it));
        st.external.erase(first, st.external.end());
        stats.external_reads += m;
    }
    ++stats.batches;
    return batch_dfs(st, g, cfg.processing_capacity, cfg.batching);
}

namespace {

struct Item {
    std::uint32_t entry;
    vertex_t successor;
};

PefpOutcome run_engine(const PreprocessResult& pre, const Query& q, const TierConfig& cfg,
                       const Limits& limits, const PefpHooks* hooks) {
    if (cfg.buffer_capacity < 1 || cfg.processing_capacity < 1)
        throw std::invalid_argument("tier capacities must be >= 1");
    if (cfg.effective_theta1() > cfg.buffer_capacity)
        throw std::invalid_argument("theta1 exceeds buffer capacity");
    if (q.s != pre.query.s || q.t != pre.query.t || q.k != pre.query.k)
        throw std::invalid_argument("preprocess result was built for a different query");

    const Graph& sub = pre.subgraph;
    const std::vector<vertex_t>& new_to_old = pre.mapping.new_to_old;
    const vertex_t t_new = pre.t_new;

    PefpOutcome out;
    TierState st;
    // The seed {s} is conceptually the first processing batch; routing it
    // through the window machinery keeps every batch theta2-bounded even when
    // s itself is a super node.
    st.buffer.push_back(PathRecord{{pre.s_new}, 0, 0, st.next_id++});
    out.stats.peak_buffer = 1;

    std::vector<Item> items;
    std::vector<VerifyKind> kinds;
    std::vector<Path> built;  // parallel-path scratch, reused across batches
    while (true) {
        if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline)
            throw enumeration_timeout();

        const Batch batch = next_batch(st, sub, cfg, out.stats);
        if (batch.empty()) break;

        items.clear();
        std::uint64_t slots = 0;
        for (std::uint32_t ei = 0; ei < batch.size(); ++ei) {
            const BatchEntry& e = batch[ei];
            if (hooks && hooks->on_window) hooks->on_window(e);
            const auto succ = sub.successors(e.record.vertices.back());
            for (std::uint32_t j = e.win_begin; j < e.win_end; ++j)
                items.push_back(Item{ei, succ[j]});
            slots += e.win_end - e.win_begin;
        }
        out.stats.peak_batch_slots = std::max(out.stats.peak_batch_slots, slots);
        if (hooks && hooks->on_batch) hooks->on_batch(st.buffer.size(), slots);

        const auto make_input = [&](std::size_t i) {
            const BatchEntry& e = batch[items[i].entry];
            return VerifyInput{e.record.vertices,
                               items[i].successor,
                               pre.barrier.bar[items[i].successor],
                               static_cast<std::uint32_t>(e.record.vertices.size() - 1),
                               t_new,
                               q.k};
        };
        const auto build_emit = [&](const VerifyInput& in, Path& p) {
            p.clear();
            p.reserve(in.path.size() + 1);
            for (vertex_t v : in.path) p.push_back(new_to_old[v]);
            p.push_back(new_to_old[in.successor]);
        };
        const auto build_extension = [&](const VerifyInput& in, Path& p) {
            p.clear();
            p.reserve(in.path.size() + 1);
            p.assign(in.path.begin(), in.path.end());
            p.push_back(in.successor);
        };

        // The stage predicates are pure and the new paths depend only on
        // their own item, so classification and path materialization run in
        // any order. Write-back below is in batch order, which pins the
        // emitted sequence, the buffer contents and every flush point
        // regardless of the schedule.
        kinds.resize(items.size());
        const bool go_parallel = cfg.parallel_verify && items.size() >= kParallelGrain;
        if (go_parallel) {
            built.resize(items.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(items.size()); ++i) {
                const VerifyInput in = make_input(i);
                const VerifyKind kind = verify_staged(in);
                kinds[i] = kind;
                if (kind == VerifyKind::Emit)
                    build_emit(in, built[i]);
                else if (kind == VerifyKind::Valid)
                    build_extension(in, built[i]);
            }
        } else {
            // serial reference: the sequential short-circuit form, applied
            // item by item
            for (std::size_t i = 0; i < items.size(); ++i) kinds[i] = verify(make_input(i));
        }

        for (std::size_t i = 0; i < items.size(); ++i) {
            if (hooks && hooks->on_verify) hooks->on_verify(make_input(i), kinds[i]);
            switch (kinds[i]) {
                case VerifyKind::Emit: {
                    if (go_parallel)
                        out.results.paths.push_back(std::move(built[i]));
                    else {
                        out.results.paths.emplace_back();
                        build_emit(make_input(i), out.results.paths.back());
                    }
                    ++out.stats.emitted;
                    if (out.results.paths.size() > limits.max_results)
                        throw path_limit_exceeded(limits.max_results);
                    break;
                }
                case VerifyKind::Valid: {
                    PathRecord nr;
                    if (go_parallel)
                        nr.vertices = std::move(built[i]);
                    else
                        build_extension(make_input(i), nr.vertices);
                    nr.id = st.next_id++;
                    // stored-path invariant: a kept extension is strictly
                    // shorter than the bound and never ends at t
                    if (nr.vertices.size() > q.k || nr.vertices.back() == t_new)
                        throw std::logic_error("stored-path invariant violated");
                    push_record(st, std::move(nr), cfg, out.stats);
                    break;
                }
                case VerifyKind::InvalidBarrier:
                case VerifyKind::InvalidVisited:
                    break;
            }
        }
        out.stats.expansions += items.size();
    }
    return out;
}

}  // namespace

PefpOutcome pefp_enumerate(const PreprocessResult& pre, const Query& q, const TierConfig& cfg,
                           const Limits& limits, const PefpHooks* hooks) {
    return run_engine(pre, q, cfg, limits, hooks);
}

PefpOutcome pefp_enumerate_fifo(const PreprocessResult& pre, const Query& q, TierConfig cfg,
                                const Limits& limits, const PefpHooks* hooks) {
    cfg.batching = Batching::Fifo;
    return run_engine(pre, q, cfg, limits, hooks);
}

}  // namespace kpath
