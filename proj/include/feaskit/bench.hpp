#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "feaskit/problem.hpp"
#include "feaskit/solver.hpp"

namespace feaskit {

struct SolverSpec {
    std::string name;
    SolverConfig config;
};

// The seven-solver lineup used throughout the experiments: PACA/SSPM/MCSP
// with 1/k and 1/sqrt(k) perturbations plus the unperturbed CARMprod.
std::vector<SolverSpec> default_benchmark_solvers();

struct SuiteConfig {
    std::vector<int> dims;
    std::vector<int> counts;
    int instances_per_cell = 10;
    int repetitions = 3;
    std::vector<SolverSpec> solvers = default_benchmark_solvers();
    std::uint64_t master_seed = 0;
    GenParams gen_params;
    // 0 = auto (hardware concurrency, capped by FEASKIT_THREADS); 1 = sequential.
    int threads = 0;
};

struct RunResult {
    std::string problem_id;
    int n = 0;
    int m = 0;
    std::string solver;
    std::string status;  // feasible_exact | feasible_within_tol | max_iter | failed
    long iterations = 0;
    double wall_time_s = 0.0;  // median over repetitions, warmup excluded

    bool solved() const {
        return status == "feasible_exact" || status == "feasible_within_tol";
    }
};

// Runs every (problem, solver) cell: instance and start are generated
// deterministically from the master seed, each solver executes
// repetitions+1 times with the first run discarded as warmup, and the
// median wall time is recorded. Per-run errors become "failed" results.
std::vector<RunResult> run_suite(const SuiteConfig& cfg);

struct ProfilePoint {
    double tau = 1.0;
    double rho = 0.0;
};

struct ProfileCurve {
    std::string solver;
    std::vector<ProfilePoint> points;  // right-continuous staircase
};

// Dolan-More performance profiles on wall-clock time. Ratios are taken
// against the best finishing solver per problem; unsolved runs get +inf.
std::vector<ProfileCurve> performance_profile(const std::vector<RunResult>& results);

struct SolverStats {
    std::string solver;
    int completed = 0;
    int failed = 0;
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Wall-time aggregates per solver over completed runs only.
std::vector<SolverStats> summarize_stats(const std::vector<RunResult>& results);

void emit_csv(const std::vector<RunResult>& results, std::ostream& out);
void emit_csv(const std::vector<ProfileCurve>& curves, std::ostream& out);
void emit_csv(const std::vector<SolverStats>& stats, std::ostream& out);
void emit_csv(const std::vector<RunResult>& results, const std::string& path);
void emit_csv(const std::vector<ProfileCurve>& curves, const std::string& path);
void emit_csv(const std::vector<SolverStats>& stats, const std::string& path);

std::vector<RunResult> read_results_csv(std::istream& in);
std::vector<RunResult> read_results_csv_file(const std::string& path);

// Staircase plot with a log2 tau axis and one curve per solver.
// Byte-deterministic for identical inputs.
void emit_profile_svg(const std::vector<ProfileCurve>& curves, const std::string& path);

std::string format_stats_table(const std::vector<SolverStats>& stats);

}  // namespace feaskit
