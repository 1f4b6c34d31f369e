#include "kpath/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>

#include <json.hpp>

#include "kpath/errors.hpp"

namespace kpath {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point from) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - from).count());
}

// First sorted path present in exactly one of the two sets.
std::string first_diff(const ResultSet& ref, const ResultSet& got) {
    std::vector<Path> a = ref.paths, b = got.paths;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<Path> only;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(only));
    if (only.empty()) return "(sets equal)";
    std::string s;
    for (std::size_t i = 0; i < only.front().size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(only.front()[i]);
    }
    return s;
}

}  // namespace

std::string_view algo_name(Algo a) {
    switch (a) {
        case Algo::Oracle: return "oracle";
        case Algo::Bcdfs: return "bcdfs";
        case Algo::Join: return "join";
        case Algo::Pefp: return "pefp";
        case Algo::PefpFifo: return "pefp-fifo";
    }
    return "?";
}

std::optional<Algo> algo_from_name(std::string_view name) {
    for (Algo a : {Algo::Oracle, Algo::Bcdfs, Algo::Join, Algo::Pefp, Algo::PefpFifo})
        if (algo_name(a) == name) return a;
    return std::nullopt;
}

std::string_view status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::Overflow: return "overflow";
        case RunStatus::Timeout: return "timeout";
        case RunStatus::Mismatch: return "mismatch";
        case RunStatus::Error: return "error";
    }
    return "?";
}

namespace {

struct SingleRun {
    QueryRun run;
    ResultSet paths;
};

SingleRun execute(const Graph& g, const Graph& grev, const Query& q, Algo algo,
                  const SuiteOptions& opt) {
    SingleRun sr;
    sr.run.algo = algo;
    const int reps = std::max(1, opt.repetitions);
    std::uint64_t t1_total = 0, t2_total = 0;
    try {
        for (int rep = 0; rep < reps; ++rep) {
            Limits limits;
            limits.max_results = opt.max_results;
            if (opt.timeout) limits.deadline = Clock::now() + *opt.timeout;

            const auto t1_start = Clock::now();
            switch (algo) {
                case Algo::Oracle: {
                    t1_total += elapsed_ns(t1_start);
                    const auto t2_start = Clock::now();
                    ResultSet rs = oracle_enumerate(g, q, limits);
                    t2_total += elapsed_ns(t2_start);
                    if (rep == 0) sr.paths = std::move(rs);
                    break;
                }
                case Algo::Bcdfs: {
                    const BarrierMap bar = make_barrier_from_reverse(grev, q.t, q.k);
                    t1_total += elapsed_ns(t1_start);
                    const auto t2_start = Clock::now();
                    ResultSet rs = bcdfs_enumerate(g, q, bar, limits);
                    t2_total += elapsed_ns(t2_start);
                    if (rep == 0) sr.paths = std::move(rs);
                    break;
                }
                case Algo::Join: {
                    const JoinPrepared jp = join_prepare(g, grev, q);
                    t1_total += elapsed_ns(t1_start);
                    const auto t2_start = Clock::now();
                    ResultSet rs = join_enumerate_prepared(jp, limits);
                    t2_total += elapsed_ns(t2_start);
                    if (rep == 0) sr.paths = std::move(rs);
                    break;
                }
                case Algo::Pefp:
                case Algo::PefpFifo: {
                    TierConfig cfg = opt.tier;
                    if (algo == Algo::PefpFifo) cfg.batching = Batching::Fifo;
                    const PreprocessResult pre = pre_bfs(g, grev, q);
                    t1_total += elapsed_ns(t1_start);
                    const auto t2_start = Clock::now();
                    PefpOutcome po = pefp_enumerate(pre, q, cfg, limits);
                    t2_total += elapsed_ns(t2_start);
                    if (rep == 0) {
                        sr.paths = std::move(po.results);
                        sr.run.tier = po.stats;
                    }
                    break;
                }
            }
        }
        sr.run.count = sr.paths.size();
    } catch (const path_limit_exceeded&) {
        sr.run.status = RunStatus::Overflow;
    } catch (const enumeration_timeout&) {
        sr.run.status = RunStatus::Timeout;
    } catch (const std::exception& e) {
        sr.run.status = RunStatus::Error;
        sr.run.note = e.what();
    }
    if (!opt.no_timing) {
        sr.run.t1_ns = t1_total / reps;
        sr.run.t2_ns = t2_total / reps;
    }
    return sr;
}

}  // namespace

RunReport run_suite(const Graph& g, const QuerySet& qs, const SuiteOptions& opt) {
    RunReport report;
    report.queries.resize(qs.queries.size());
    const Graph grev = reverse(g);
    const auto total = static_cast<std::int64_t>(qs.queries.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, opt.jobs)) \
    if (opt.jobs > 1)
#endif
    for (std::int64_t qi = 0; qi < total; ++qi) {
        const Query q = qs.queries[qi];
        QueryReport& qr = report.queries[qi];
        qr.query = q;

        std::vector<ResultSet> sets;
        sets.reserve(opt.algos.size());
        for (Algo algo : opt.algos) {
            SingleRun sr = execute(g, grev, q, algo, opt);
            qr.runs.push_back(std::move(sr.run));
            sets.push_back(std::move(sr.paths));
        }

        // equality gate: every OK run must produce the set of the first OK run
        std::size_t ref = opt.algos.size();
        for (std::size_t ai = 0; ai < qr.runs.size(); ++ai) {
            if (qr.runs[ai].status != RunStatus::Ok) continue;
            if (ref == opt.algos.size()) {
                ref = ai;
                continue;
            }
            if (!sets[ref].set_equal(sets[ai])) {
                qr.runs[ai].status = RunStatus::Mismatch;
                qr.runs[ai].note = "query s=" + std::to_string(q.s) + " t=" + std::to_string(q.t) +
                                   " k=" + std::to_string(q.k) + ": " +
                                   std::string(algo_name(qr.runs[ai].algo)) + " found " +
                                   std::to_string(sets[ai].size()) + " paths vs " +
                                   std::string(algo_name(qr.runs[ref].algo)) + " " +
                                   std::to_string(sets[ref].size()) +
                                   "; first differing path: " + first_diff(sets[ref], sets[ai]);
            }
        }
        if (opt.keep_paths) qr.kept_paths = std::move(sets);
    }

    for (const QueryReport& qr : report.queries)
        for (const QueryRun& run : qr.runs)
            if (run.status == RunStatus::Mismatch) {
                report.equality_failed = true;
                if (report.first_mismatch.empty()) report.first_mismatch = run.note;
            }
    return report;
}

void emit_report_text(std::ostream& out, const RunReport& report) {
    out << std::left << std::setw(10) << "algorithm" << std::right << std::setw(8) << "s"
        << std::setw(8) << "t" << std::setw(4) << "k" << std::setw(10) << "count" << std::setw(12)
        << "t1_us" << std::setw(12) << "t2_us" << std::setw(12) << "total_us" << std::setw(8)
        << "ext_r" << std::setw(8) << "ext_w" << std::setw(9) << "batches"
        << "  status\n";
    struct Agg {
        std::uint64_t n = 0, t1 = 0, t2 = 0, count = 0;
    };
    std::map<Algo, Agg> aggs;
    for (const QueryReport& qr : report.queries) {
        for (const QueryRun& run : qr.runs) {
            out << std::left << std::setw(10) << algo_name(run.algo) << std::right << std::setw(8)
                << qr.query.s << std::setw(8) << qr.query.t << std::setw(4) << qr.query.k
                << std::setw(10) << run.count << std::setw(12) << run.t1_ns / 1000 << std::setw(12)
                << run.t2_ns / 1000 << std::setw(12) << (run.t1_ns + run.t2_ns) / 1000
                << std::setw(8) << run.tier.external_reads << std::setw(8)
                << run.tier.external_writes << std::setw(9) << run.tier.batches << "  "
                << status_name(run.status) << "\n";
            if (run.status == RunStatus::Ok) {
                Agg& a = aggs[run.algo];
                ++a.n;
                a.t1 += run.t1_ns;
                a.t2 += run.t2_ns;
                a.count += run.count;
            }
        }
    }
    out << "\naverages over ok runs:\n";
    for (const auto& [algo, a] : aggs) {
        if (a.n == 0) continue;
        out << "  " << std::left << std::setw(10) << algo_name(algo) << std::right
            << " queries=" << a.n << " avg_t1_us=" << a.t1 / a.n / 1000
            << " avg_t2_us=" << a.t2 / a.n / 1000
            << " avg_total_us=" << (a.t1 + a.t2) / a.n / 1000 << " avg_count=" << a.count / a.n
            << "\n";
    }
    if (report.equality_failed) out << "\nEQUALITY FAILED: " << report.first_mismatch << "\n";
}

void emit_report_jsonl(std::ostream& out, const RunReport& report) {
    for (const QueryReport& qr : report.queries) {
        for (const QueryRun& run : qr.runs) {
            nlohmann::ordered_json j;
            j["algorithm"] = std::string(algo_name(run.algo));
            j["s"] = qr.query.s;
            j["t"] = qr.query.t;
            j["k"] = qr.query.k;
            j["count"] = run.count;
            j["t1_ns"] = run.t1_ns;
            j["t2_ns"] = run.t2_ns;
            j["external_reads"] = run.tier.external_reads;
            j["external_writes"] = run.tier.external_writes;
            j["batches"] = run.tier.batches;
            j["status"] = std::string(status_name(run.status));
            out << j.dump() << "\n";
        }
    }
}

}  // namespace kpath
