// feaskit: convex-feasibility solver toolkit.
//
//   feaskit generate  — random intersecting-ellipsoid instances
//   feaskit solve     — run one solver on an instance file
//   feaskit bench     — timing suite with CSV/SVG reports
//   feaskit profile   — performance profiles from a results CSV

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feaskit/bench.hpp"
#include "feaskit/problem.hpp"
#include "feaskit/product_space.hpp"
#include "feaskit/rng.hpp"
#include "feaskit/solver.hpp"

namespace {

int cmd_generate(int n, int m, std::uint64_t seed, const feaskit::GenParams& params,
                 const std::string& out) {
    const auto inst = feaskit::generate_ellipsoid_instance(n, m, seed, params);
    if (out == "-") {
        std::cout << feaskit::write_instance(inst);
    } else {
        feaskit::save_instance(inst, out);
        std::cerr << "wrote " << inst.id() << " to " << out << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& algorithm,
              const std::string& schedule, double tol, bool tol_set, long max_iter,
              const std::string& trace_path, std::uint64_t x0_seed) {
    const auto inst = feaskit::load_instance(instance_path);

    feaskit::SolverConfig cfg = feaskit::SolverConfig::defaults(feaskit::parse_algorithm(algorithm));
    if (!schedule.empty()) cfg.schedule = feaskit::PerturbationSchedule::parse(schedule);
    if (tol_set) cfg.feasibility_tol = tol;
    cfg.max_iter = max_iter;
    cfg.record_trace = !trace_path.empty();

    const feaskit::Vector x0 = feaskit::sample_infeasible_start(inst, x0_seed);
    const auto report = feaskit::run(cfg, inst, x0);

    std::cout << feaskit::report_to_json(report, false);
    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) throw feaskit::IoError("cannot open for writing: " + trace_path);
        out << feaskit::report_to_json(report, true);
    }
    return report.status == feaskit::SolveStatus::MaxIterReached ? 2 : 0;
}

int cmd_bench(const std::vector<int>& dims, const std::vector<int>& counts, int instances,
              int reps, std::uint64_t seed, const std::string& out_dir, bool sequential) {
    feaskit::SuiteConfig cfg;
    cfg.dims = dims;
    cfg.counts = counts;
    cfg.instances_per_cell = instances;
    cfg.repetitions = reps;
    cfg.master_seed = seed;
    if (sequential) cfg.threads = 1;

    std::filesystem::create_directories(out_dir);
    const auto results = feaskit::run_suite(cfg);
    const auto curves = feaskit::performance_profile(results);
    const auto stats = feaskit::summarize_stats(results);

    feaskit::emit_csv(results, out_dir + "/results.csv");
    feaskit::emit_csv(curves, out_dir + "/profile.csv");
    feaskit::emit_csv(stats, out_dir + "/stats.csv");
    feaskit::emit_profile_svg(curves, out_dir + "/profile.svg");

    std::cout << feaskit::format_stats_table(stats);
    std::cerr << "wrote results.csv, profile.csv, stats.csv, profile.svg to " << out_dir << "\n";
    return 0;
}

int cmd_profile(const std::string& results_path, const std::string& out_svg,
                const std::string& out_csv) {
    const auto results = feaskit::read_results_csv_file(results_path);
    const auto curves = feaskit::performance_profile(results);
    if (!out_csv.empty()) feaskit::emit_csv(curves, out_csv);
    if (!out_svg.empty()) feaskit::emit_profile_svg(curves, out_svg);
    std::cout << feaskit::format_stats_table(feaskit::summarize_stats(results));
    return 0;
}

int cmd_verify_equivalence(int trials, std::uint64_t seed, long iters, double threshold) {
    feaskit::Xoshiro256pp rng(seed);
    double worst = 0.0;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng.next() % 10);
        const int m = 1 + static_cast<int>(rng.next() % 5);
        const std::uint64_t inst_seed = rng.next();
        const auto inst = feaskit::generate_ellipsoid_instance(n, m, inst_seed);
        const feaskit::Vector x0 = feaskit::sample_infeasible_start(inst, rng.next());
        const auto sched = (t % 2 == 0) ? feaskit::PerturbationSchedule::power_law(1.0, 1.0)
                                        : feaskit::PerturbationSchedule::power_law(1.0, 0.5);
        try {
            const double err = feaskit::check_equivalence(inst, x0, sched, iters);
            worst = std::max(worst, err);
            if (err > threshold) {
                ++failures;
                std::cerr << "trial " << t << " (" << inst.id() << "): error " << err << "\n";
            }
        } catch (const feaskit::Error& e) {
            ++failures;
            std::cerr << "trial " << t << " (" << inst.id() << "): " << e.what() << "\n";
        }
    }
    std::cout << "verify-equivalence: " << trials << " trials, max relative error " << worst
              << " (threshold " << threshold << ")\n";
    if (failures > 0) {
        std::cerr << failures << " trial(s) failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feaskit: finitely convergent circumcenter solvers for convex feasibility"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a random ellipsoid-intersection instance");
    int gen_n = 20, gen_m = 5;
    std::uint64_t gen_seed = 1;
    feaskit::GenParams params;
    double b_scale = -1.0;
    std::string gen_out = "-";
    gen->add_option("--n", gen_n, "dimension")->required();
    gen->add_option("--m", gen_m, "number of ellipsoids")->required();
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("--eig-lo", params.eig_lo, "smallest eigenvalue");
    gen->add_option("--eig-hi", params.eig_hi, "largest eigenvalue");
    gen->add_option("--b-scale", b_scale, "center scale (default 1/sqrt(n))");
    gen->add_option("--c-lo", params.c_lo, "lower bound for c");
    gen->add_option("--c-hi", params.c_hi, "upper bound for c");
    gen->add_option("--out", gen_out, "output file (- for stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "Run one solver on an instance file");
    std::string solve_instance, solve_alg = "paca", solve_sched, solve_trace;
    double solve_tol = 0.0;
    long solve_max_iter = 100000;
    std::uint64_t solve_x0_seed = 1;
    solve->add_option("--instance", solve_instance, "instance JSON file")->required();
    solve->add_option("--algorithm", solve_alg, "paca|sspm|mcsp|carmprod");
    solve->add_option("--schedule", solve_sched, "zero | powerlaw:nu=F,r=F");
    auto* tol_opt = solve->add_option("--tol", solve_tol, "feasibility tolerance");
    solve->add_option("--max-iter", solve_max_iter, "iteration cap");
    solve->add_option("--trace", solve_trace, "write full report with trace to this file");
    solve->add_option("--x0-seed", solve_x0_seed, "seed for the infeasible start");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the timing suite");
    std::vector<int> bench_dims{20, 50}, bench_counts{5, 10, 20};
    int bench_instances = 10, bench_reps = 3;
    std::uint64_t bench_seed = 1;
    std::string bench_out = "bench-out";
    bool bench_sequential = false;
    bench->add_option("--dims", bench_dims, "dimensions n")->delimiter(',');
    bench->add_option("--counts", bench_counts, "set counts m")->delimiter(',');
    bench->add_option("--instances", bench_instances, "instances per (n, m) cell");
    bench->add_option("--reps", bench_reps, "timed repetitions per run");
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("--out", bench_out, "output directory");
    bench->add_flag("--sequential", bench_sequential, "disable the worker pool for clean timing");

    // profile
    auto* profile = app.add_subcommand("profile", "Performance profiles from a results CSV");
    std::string prof_results, prof_svg, prof_csv;
    profile->add_option("--results", prof_results, "results CSV file")->required();
    profile->add_option("--out-svg", prof_svg, "SVG output path");
    profile->add_option("--out-csv", prof_csv, "CSV output path");

    // verify-equivalence (CI cross-check, hidden from help)
    auto* verify = app.add_subcommand("verify-equivalence",
                                      "Cross-check the solver against the product-space oracle");
    verify->group("");
    int ver_trials = 50;
    std::uint64_t ver_seed = 7;
    long ver_iters = 25;
    double ver_threshold = 1e-9;
    verify->add_option("--trials", ver_trials, "number of random instances");
    verify->add_option("--seed", ver_seed, "seed");
    verify->add_option("--iters", ver_iters, "iterations compared per trial");
    verify->add_option("--threshold", ver_threshold, "max allowed relative error");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (b_scale >= 0.0) params.b_scale = b_scale;
            return cmd_generate(gen_n, gen_m, gen_seed, params, gen_out);
        }
        if (solve->parsed()) {
            return cmd_solve(solve_instance, solve_alg, solve_sched, solve_tol,
                             tol_opt->count() > 0, solve_max_iter, solve_trace, solve_x0_seed);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_dims, bench_counts, bench_instances, bench_reps, bench_seed,
                             bench_out, bench_sequential);
        }
        if (profile->parsed()) return cmd_profile(prof_results, prof_svg, prof_csv);
        if (verify->parsed()) {
            return cmd_verify_equivalence(ver_trials, ver_seed, ver_iters, ver_threshold);
        }
    } catch (const feaskit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
