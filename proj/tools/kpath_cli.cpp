// Command-line front end: graph ingestion, query generation, enumeration
// suites with cross-algorithm validation, preprocessing diagnostics, and
// format conversion.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kpath/pefp.hpp"
#include "kpath/report.hpp"
#include "kpath/synth.hpp"

using namespace kpath;

namespace {

struct TierFlags {
    std::uint64_t buffer_cap = 4096;
    std::uint64_t theta1 = 0;
    std::uint64_t theta2 = 1024;
    std::string batching = "dfs";
    std::string flush = "segment";
    bool parallel_verify = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--buffer-cap", buffer_cap, "buffer area capacity in records");
        cmd->add_option("--theta1", theta1, "external<->buffer segment size (0 = cap/2)");
        cmd->add_option("--theta2", theta2, "processing area successor slots per batch");
        cmd->add_option("--batching", batching, "pefp batching order")
            ->check(CLI::IsMember({"dfs", "fifo"}));
        cmd->add_option("--flush", flush, "buffer flush policy")
            ->check(CLI::IsMember({"segment", "all"}));
        cmd->add_flag("--parallel-verify", parallel_verify,
                      "use the OpenMP in-batch verification kernel");
    }

    TierConfig to_config() const {
        TierConfig cfg;
        cfg.buffer_capacity = buffer_cap;
        cfg.theta1 = theta1;
        cfg.processing_capacity = theta2;
        cfg.batching = batching == "fifo" ? Batching::Fifo : Batching::Dfs;
        cfg.flush = flush == "all" ? FlushPolicy::All : FlushPolicy::Segment;
        cfg.parallel_verify = parallel_verify;
        return cfg;
    }
};

QuerySet load_or_generate_queries(const Graph& g, const std::string& queries_path,
                                  std::uint32_t k, std::size_t gen_count, std::uint64_t seed) {
    if (!queries_path.empty()) {
        std::ifstream in(queries_path);
        if (!in) throw std::runtime_error("cannot open queries file: " + queries_path);
        QuerySet qs = read_queries(in);
        if (k > 0) {
            qs.k = k;
            for (Query& q : qs.queries) q.k = k;
        }
        if (qs.k < 1) throw std::runtime_error("queries file lacks k; pass --k");
        return qs;
    }
    if (k < 1) throw std::runtime_error("pass --k when generating queries");
    return gen_queries(g, k, gen_count, seed);
}

void write_paths_files(const std::string& prefix, const std::vector<Algo>& algos,
                       const RunReport& report) {
    for (std::size_t ai = 0; ai < algos.size(); ++ai) {
        const std::string path = prefix + "." + std::string(algo_name(algos[ai])) + ".txt";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot open " + path);
        for (const QueryReport& qr : report.queries) {
            out << "# s=" << qr.query.s << " t=" << qr.query.t << " k=" << qr.query.k << "\n";
            if (ai < qr.kept_paths.size()) out << to_lines(qr.kept_paths[ai]);
        }
    }
}

std::vector<Algo> parse_algos(const std::string& csv) {
    std::vector<Algo> algos;
    std::stringstream ss(csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        const auto algo = algo_from_name(name);
        if (!algo) throw std::runtime_error("unknown algorithm: " + name);
        algos.push_back(*algo);
    }
    if (algos.empty()) throw std::runtime_error("no algorithms selected");
    return algos;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-hop constrained s-t simple path enumeration"};
    app.require_subcommand(1);

    IngestOptions ingest;
    app.add_flag_callback(
        "--keep-self-loops", [&] { ingest.drop_self_loops = false; },
        "retain self-loops at ingest (debugging)");
    app.add_flag_callback(
        "--keep-parallel-edges", [&] { ingest.dedup_parallel_edges = false; },
        "retain duplicate edges at ingest (debugging)");

    // gen: seeded query generation
    auto* gen = app.add_subcommand("gen", "generate reachable query pairs");
    std::string gen_graph, gen_out;
    std::uint32_t gen_k = 4;
    std::size_t gen_count = 100;
    std::uint64_t gen_seed = 1;
    gen->add_option("--graph", gen_graph, "edge list or KPE1 cache")->required();
    gen->add_option("--k", gen_k, "hop constraint")->required();
    gen->add_option("--count", gen_count, "number of queries");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // run: enumeration suite with cross-algorithm validation
    auto* run = app.add_subcommand("run", "run an enumeration suite");
    std::string run_graph, run_queries, run_algos = "bcdfs,join,pefp";
    std::string run_format = "text", run_emit_paths, run_dump_pre;
    std::uint32_t run_k = 0;
    std::size_t run_gen_count = 10;
    std::uint64_t run_seed = 1, run_max_results = 10'000'000;
    int run_reps = 3, run_jobs = 1;
    double run_timeout_ms = 0;
    bool run_no_timing = false;
    TierFlags run_tier;
    run->add_option("--graph", run_graph)->required();
    run->add_option("--queries", run_queries, "query file; omit to generate");
    run->add_option("--k", run_k, "hop constraint (overrides the query file)");
    run->add_option("--gen-count", run_gen_count, "queries to generate when no file given");
    run->add_option("--seed", run_seed, "generation seed");
    run->add_option("--algos", run_algos, "comma list of oracle,bcdfs,join,pefp,pefp-fifo");
    run->add_option("--reps", run_reps, "timing repetitions per query");
    run->add_option("--timeout-ms", run_timeout_ms, "per-run timeout in milliseconds");
    run->add_option("--jobs", run_jobs, "queries executed concurrently");
    run->add_option("--max-results", run_max_results, "result overflow guard");
    run->add_option("--format", run_format)->check(CLI::IsMember({"text", "jsonl"}));
    run->add_flag("--no-timing", run_no_timing, "zero timing fields (golden files)");
    run->add_option("--emit-paths", run_emit_paths,
                    "write sorted path listings to <prefix>.<algo>.txt");
    run->add_option("--dump-pre", run_dump_pre, "write preprocessing dumps to this file");
    run_tier.attach(run);

    // check: equality gate only
    auto* check = app.add_subcommand("check", "cross-algorithm equality check");
    std::string check_graph, check_queries, check_algos = "oracle,bcdfs,join,pefp,pefp-fifo";
    std::uint32_t check_k = 0;
    std::size_t check_gen_count = 10;
    std::uint64_t check_seed = 1;
    TierFlags check_tier;
    check->add_option("--graph", check_graph)->required();
    check->add_option("--queries", check_queries);
    check->add_option("--k", check_k);
    check->add_option("--gen-count", check_gen_count);
    check->add_option("--seed", check_seed);
    check->add_option("--algos", check_algos);
    check_tier.attach(check);

    // pre: preprocessing diagnostics for one query
    auto* pre_cmd = app.add_subcommand("pre", "dump preprocessing for one query");
    std::string pre_graph;
    std::uint64_t pre_s = 0, pre_t = 0;
    std::uint32_t pre_k = 4;
    pre_cmd->add_option("--graph", pre_graph)->required();
    pre_cmd->add_option("--s", pre_s)->required();
    pre_cmd->add_option("--t", pre_t)->required();
    pre_cmd->add_option("--k", pre_k)->required();

    // convert: edge list <-> binary CSR cache
    auto* convert = app.add_subcommand("convert", "convert between edge list and KPE1 cache");
    std::string conv_in, conv_out;
    bool to_binary = false, to_text = false;
    convert->add_option("--in", conv_in)->required();
    convert->add_option("--out", conv_out)->required();
    convert->add_flag("--to-binary", to_binary, "write a KPE1 CSR cache");
    convert->add_flag("--to-text", to_text, "write an edge list");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const Graph g = load_graph_file(gen_graph, ingest);
            const QuerySet qs = gen_queries(g, gen_k, gen_count, gen_seed);
            if (gen_out.empty()) {
                write_queries(std::cout, qs);
            } else {
                std::ofstream out(gen_out);
                if (!out) throw std::runtime_error("cannot open " + gen_out);
                write_queries(out, qs);
            }
        } else if (run->parsed()) {
            const Graph g = load_graph_file(run_graph, ingest);
            const QuerySet qs =
                load_or_generate_queries(g, run_queries, run_k, run_gen_count, run_seed);
            SuiteOptions opt;
            opt.algos = parse_algos(run_algos);
            opt.tier = run_tier.to_config();
            opt.repetitions = run_reps;
            opt.max_results = run_max_results;
            if (run_timeout_ms > 0)
                opt.timeout = std::chrono::milliseconds(static_cast<long>(run_timeout_ms));
            opt.jobs = run_jobs;
            opt.no_timing = run_no_timing;
            opt.keep_paths = !run_emit_paths.empty();
            const RunReport report = run_suite(g, qs, opt);
            if (run_format == "jsonl")
                emit_report_jsonl(std::cout, report);
            else
                emit_report_text(std::cout, report);
            if (!run_emit_paths.empty()) write_paths_files(run_emit_paths, opt.algos, report);
            if (!run_dump_pre.empty()) {
                std::ofstream out(run_dump_pre);
                if (!out) throw std::runtime_error("cannot open " + run_dump_pre);
                for (const Query& q : qs.queries) dump_preprocess(out, pre_bfs(g, q));
            }
            if (report.equality_failed) {
                std::cerr << "equality gate failed: " << report.first_mismatch << "\n";
                return 2;
            }
        } else if (check->parsed()) {
            const Graph g = load_graph_file(check_graph, ingest);
            const QuerySet qs =
                load_or_generate_queries(g, check_queries, check_k, check_gen_count, check_seed);
            SuiteOptions opt;
            opt.algos = parse_algos(check_algos);
            if (opt.algos.size() < 2) throw std::runtime_error("check needs >= 2 algorithms");
            opt.tier = check_tier.to_config();
            opt.repetitions = 1;
            const RunReport report = run_suite(g, qs, opt);
            if (report.equality_failed) {
                std::cerr << "MISMATCH: " << report.first_mismatch << "\n";
                return 2;
            }
            std::cout << "all " << qs.queries.size() << " queries agree across "
                      << opt.algos.size() << " algorithms\n";
        } else if (pre_cmd->parsed()) {
            const Graph g = load_graph_file(pre_graph, ingest);
            const Query q{static_cast<vertex_t>(pre_s), static_cast<vertex_t>(pre_t), pre_k};
            dump_preprocess(std::cout, pre_bfs(g, q));
        } else if (convert->parsed()) {
            if (to_binary == to_text)
                throw std::runtime_error("pass exactly one of --to-binary / --to-text");
            const Graph g = load_graph_file(conv_in, ingest);
            if (to_binary) {
                std::ofstream out(conv_out, std::ios::binary);
                if (!out) throw std::runtime_error("cannot open " + conv_out);
                write_binary_csr(out, g);
            } else {
                std::ofstream out(conv_out);
                if (!out) throw std::runtime_error("cannot open " + conv_out);
                for (vertex_t v = 0; v < g.vertex_count(); ++v)
                    for (vertex_t u : g.successors(v)) out << v << " " << u << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
