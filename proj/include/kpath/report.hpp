#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpath/pefp.hpp"
#include "kpath/query_gen.hpp"

namespace kpath {

enum class Algo : std::uint8_t { Oracle, Bcdfs, Join, Pefp, PefpFifo };

std::string_view algo_name(Algo a);
std::optional<Algo> algo_from_name(std::string_view name);

enum class RunStatus : std::uint8_t { Ok, Overflow, Timeout, Mismatch, Error };

std::string_view status_name(RunStatus s);

// One (query, algorithm) execution. t1 is preprocessing, t2 enumeration;
// total time is their sum by definition. Tier counters are meaningful for
// the pefp variants only.
struct QueryRun {
    Algo algo = Algo::Oracle;
    std::uint64_t count = 0;
    std::uint64_t t1_ns = 0;
    std::uint64_t t2_ns = 0;
    TierStats tier;
    RunStatus status = RunStatus::Ok;
    std::string note;
};

struct QueryReport {
    Query query;
    std::vector<QueryRun> runs;          // one per selected algorithm, in order
    std::vector<ResultSet> kept_paths;   // parallel to runs; filled when keep_paths
};

struct RunReport {
    std::vector<QueryReport> queries;    // in query order
    bool equality_failed = false;
    std::string first_mismatch;          // minimal counterexample description
};

struct SuiteOptions {
    std::vector<Algo> algos{Algo::Bcdfs, Algo::Join, Algo::Pefp};
    TierConfig tier;
    int repetitions = 3;                 // timings averaged over this many runs
    std::uint64_t max_results = 10'000'000;
    std::optional<std::chrono::milliseconds> timeout;  // per (query, algorithm) run
    int jobs = 1;                        // queries executed concurrently
    bool no_timing = false;              // zero t1/t2 at the source (golden files)
    bool keep_paths = false;             // retain per-algorithm result sets
};

// Runs every selected algorithm on every query, timing preprocessing and
// enumeration separately. When two or more algorithms are selected their
// result sets are compared; a mismatch marks the run and the report but does
// not abort the suite. Overflow and timeout likewise surface as per-run
// statuses. Reports are assembled in query order regardless of `jobs`.
RunReport run_suite(const Graph& g, const QuerySet& qs, const SuiteOptions& opt);

// Human-readable table plus per-algorithm averages.
void emit_report_text(std::ostream& out, const RunReport& report);

// One record per (query, algorithm) line with fixed keys: algorithm, s, t,
// k, count, t1_ns, t2_ns, external_reads, external_writes, batches, status.
void emit_report_jsonl(std::ostream& out, const RunReport& report);

}  // namespace kpath
