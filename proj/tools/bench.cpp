// Benchmark: the OpenMP in-batch verification kernel against the serial
// reference, and Batch-DFS against FIFO batching, on a layered DAG and a
// dense random graph.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kpath/pefp.hpp"
#include "kpath/query_gen.hpp"
#include "kpath/synth.hpp"

using namespace kpath;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const PreprocessResult& pre, const Query& q, const TierConfig& cfg, int reps,
              PefpOutcome& out) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        out = pefp_enumerate(pre, q, cfg);
        const std::chrono::duration<double, std::milli> d = Clock::now() - start;
        best = std::min(best, d.count());
    }
    return best;
}

void bench_instance(const std::string& name, const SynthInstance& inst, TierConfig base,
                    int reps) {
    const PreprocessResult pre = pre_bfs(inst.graph, inst.query);
    std::cout << "\n== " << name << ": n=" << inst.graph.vertex_count()
              << " m=" << inst.graph.edge_count() << " k=" << inst.query.k
              << " (cap=" << base.buffer_capacity << " theta2=" << base.processing_capacity
              << ")\n";
    std::cout << std::left << std::setw(22) << "variant" << std::right << std::setw(12)
              << "best_ms" << std::setw(12) << "paths" << std::setw(12) << "ext_w"
              << std::setw(12) << "ext_r" << std::setw(10) << "batches" << "\n";

    PefpOutcome reference;
    bool have_reference = false;
    for (const Batching order : {Batching::Dfs, Batching::Fifo}) {
        for (const bool parallel : {false, true}) {
            TierConfig cfg = base;
            cfg.batching = order;
            cfg.parallel_verify = parallel;
            PefpOutcome out;
            const double ms = run_ms(pre, inst.query, cfg, reps, out);
            const std::string variant = std::string(order == Batching::Dfs ? "dfs" : "fifo") +
                                        (parallel ? " + omp-verify" : " + serial-verify");
            std::cout << std::left << std::setw(22) << variant << std::right << std::setw(12)
                      << std::fixed << std::setprecision(3) << ms << std::setw(12)
                      << out.results.size() << std::setw(12) << out.stats.external_writes
                      << std::setw(12) << out.stats.external_reads << std::setw(10)
                      << out.stats.batches << "\n";
            if (!have_reference) {
                reference = std::move(out);
                have_reference = true;
            } else if (!reference.results.set_equal(out.results)) {
                std::cout << "RESULT MISMATCH against the first variant\n";
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pefp kernel benchmark"};
    std::uint32_t width = 8, layers = 5;
    std::size_t n = 400;
    double deg = 10.0;
    std::uint64_t seed = 7, cap = 512, theta2 = 1024;
    int reps = 3;
    app.add_option("--width", width, "layered DAG width");
    app.add_option("--layers", layers, "layered DAG inner layers");
    app.add_option("--n", n, "random graph vertices");
    app.add_option("--deg", deg, "random graph average out-degree");
    app.add_option("--seed", seed, "random graph seed");
    app.add_option("--buffer-cap", cap, "buffer capacity");
    app.add_option("--theta2", theta2, "processing slots per batch");
    app.add_option("--reps", reps, "repetitions (best kept)");
    CLI11_PARSE(app, argc, argv);

    TierConfig base;
    base.buffer_capacity = cap;
    base.processing_capacity = theta2;

    bench_instance("layered DAG", make_layered_dag(width, layers), base, reps);

    const Graph g = make_random_graph(n, deg, seed);
    const QuerySet qs = gen_queries(g, 5, 1, seed);
    bench_instance("dense random", SynthInstance{g, qs.queries.front()}, base, reps);
    return 0;
}
