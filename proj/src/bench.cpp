#include "feaskit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "feaskit/rng.hpp"

namespace feaskit {

std::vector<SolverSpec> default_benchmark_solvers() {
    auto make = [](const char* name, Algorithm a, PerturbationSchedule sched) {
        SolverSpec spec;
        spec.name = name;
        spec.config = SolverConfig::defaults(a);
        spec.config.schedule = sched;
        spec.config.record_trace = false;
        return spec;
    };
    const auto inv_k = PerturbationSchedule::power_law(1.0, 1.0);
    const auto inv_sqrt = PerturbationSchedule::power_law(1.0, 0.5);
    return {
        make("PACA1", Algorithm::PACA, inv_k),
        make("PACA2", Algorithm::PACA, inv_sqrt),
        make("SSPM1", Algorithm::SSPM, inv_k),
        make("SSPM2", Algorithm::SSPM, inv_sqrt),
        make("MCSP1", Algorithm::MCSP, inv_k),
        make("MCSP2", Algorithm::MCSP, inv_sqrt),
        make("CARMprod", Algorithm::CARMprod, PerturbationSchedule::zero()),
    };
}

namespace {

struct Problem {
    std::string id;
    int n = 0;
    int m = 0;
    std::uint64_t instance_seed = 0;
    std::uint64_t start_seed = 0;
};

int resolve_threads(int requested, size_t task_count) {
    int threads = requested;
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
        if (const char* cap = std::getenv("FEASKIT_THREADS")) {
            const int limit = std::atoi(cap);
            if (limit >= 1) threads = std::min(threads, limit);
        }
    }
    return static_cast<int>(std::min<size_t>(static_cast<size_t>(threads), task_count));
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const size_t n = xs.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

RunResult execute_cell(const Problem& prob, const SolverSpec& solver, int repetitions,
                       const GenParams& gen_params) {
    RunResult res;
    res.problem_id = prob.id;
    res.n = prob.n;
    res.m = prob.m;
    res.solver = solver.name;
    try {
        const CfpInstance inst =
            generate_ellipsoid_instance(prob.n, prob.m, prob.instance_seed, gen_params);
        const Vector x0 = sample_infeasible_start(inst, prob.start_seed);

        SolverConfig cfg = solver.config;
        cfg.record_trace = false;

        std::vector<double> times;
        times.reserve(static_cast<size_t>(repetitions));
        SolveReport last;
        for (int rep = 0; rep <= repetitions; ++rep) {
            last = run(cfg, inst, x0);
            if (rep > 0) times.push_back(std::max(last.wall_time_s, 1e-9));  // first run is warmup
        }
        res.status = to_string(last.status);
        res.iterations = last.iterations;
        res.wall_time_s = median_of(std::move(times));
    } catch (const std::exception&) {
        res.status = "failed";
        res.iterations = 0;
        res.wall_time_s = 0.0;
    }
    return res;
}

std::string sanitize_csv_field(const std::string& s) {
    std::string out = s;
    for (char& ch : out) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = '_';
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<RunResult> run_suite(const SuiteConfig& cfg) {
    if (cfg.dims.empty() || cfg.counts.empty()) throw InvalidParams("suite: dims and counts must be nonempty");
    if (cfg.instances_per_cell < 1) throw InvalidParams("suite: instances_per_cell must be >= 1");
    if (cfg.repetitions < 1) throw InvalidParams("suite: repetitions must be >= 1");
    if (cfg.solvers.empty()) throw InvalidParams("suite: at least one solver");

    std::vector<Problem> problems;
    for (int n : cfg.dims) {
        for (int m : cfg.counts) {
            for (int idx = 0; idx < cfg.instances_per_cell; ++idx) {
                Problem p;
                p.n = n;
                p.m = m;
                p.instance_seed = mix_seed(cfg.master_seed,
                                           (std::uint64_t(n) << 40) ^ (std::uint64_t(m) << 20) ^
                                               std::uint64_t(idx));
                p.start_seed = mix_seed(p.instance_seed, 0x5EEDu);
                p.id = "n" + std::to_string(n) + "_m" + std::to_string(m) + "_i" +
                       std::to_string(idx);
                problems.push_back(std::move(p));
            }
        }
    }

    struct Task {
        size_t problem;
        size_t solver;
    };
    std::vector<Task> tasks;
    tasks.reserve(problems.size() * cfg.solvers.size());
    for (size_t p = 0; p < problems.size(); ++p)
        for (size_t s = 0; s < cfg.solvers.size(); ++s) tasks.push_back({p, s});

    std::vector<RunResult> results(tasks.size());
    const int threads = resolve_threads(cfg.threads, tasks.size());

    auto worker = [&](std::atomic<size_t>& next) {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            results[i] = execute_cell(problems[t.problem], cfg.solvers[t.solver], cfg.repetitions,
                                      cfg.gen_params);
        }
    };

    std::atomic<size_t> next{0};
    if (threads <= 1) {
        worker(next);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back([&] { worker(next); });
        for (auto& th : pool) th.join();
    }
    return results;  // task order is (problem, solver), independent of completion order
}

std::vector<ProfileCurve> performance_profile(const std::vector<RunResult>& results) {
    if (results.empty()) throw EmptyResults("performance_profile: no results");

    std::vector<std::string> problems, solvers;
    std::map<std::string, size_t> pidx, sidx;
    for (const auto& r : results) {
        if (pidx.emplace(r.problem_id, problems.size()).second) problems.push_back(r.problem_id);
        if (sidx.emplace(r.solver, solvers.size()).second) solvers.push_back(r.solver);
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> time(problems.size(), std::vector<double>(solvers.size(), -1.0));
    for (const auto& r : results) {
        double& slot = time[pidx[r.problem_id]][sidx[r.solver]];
        if (slot >= 0.0) {
            throw InvalidParams("performance_profile: duplicate (problem, solver) pair " +
                                r.problem_id + "/" + r.solver);
        }
        slot = r.solved() ? r.wall_time_s : inf;
    }
    for (auto& row : time)
        for (double& t : row)
            if (t < 0.0) t = inf;  // missing pair counts as unsolved

    std::vector<std::vector<double>> ratio(problems.size(), std::vector<double>(solvers.size(), inf));
    std::vector<double> finite_ratios;
    for (size_t p = 0; p < problems.size(); ++p) {
        double best = inf;
        for (double t : time[p]) best = std::min(best, t);
        for (size_t s = 0; s < solvers.size(); ++s) {
            if (std::isfinite(time[p][s]) && std::isfinite(best) && best > 0.0) {
                ratio[p][s] = time[p][s] / best;
                finite_ratios.push_back(ratio[p][s]);
            }
        }
    }

    std::sort(finite_ratios.begin(), finite_ratios.end());
    finite_ratios.erase(std::unique(finite_ratios.begin(), finite_ratios.end()),
                        finite_ratios.end());
    if (finite_ratios.empty()) finite_ratios.push_back(1.0);  // every run failed

    std::vector<ProfileCurve> curves;
    curves.reserve(solvers.size());
    const double P = static_cast<double>(problems.size());
    for (size_t s = 0; s < solvers.size(); ++s) {
        ProfileCurve curve;
        curve.solver = solvers[s];
        curve.points.reserve(finite_ratios.size());
        for (double tau : finite_ratios) {
            int count = 0;
            for (size_t p = 0; p < problems.size(); ++p)
                if (ratio[p][s] <= tau) ++count;
            curve.points.push_back({tau, static_cast<double>(count) / P});
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<SolverStats> summarize_stats(const std::vector<RunResult>& results) {
    if (results.empty()) throw EmptyResults("summarize_stats: no results");

    std::vector<std::string> solvers;
    std::map<std::string, size_t> sidx;
    for (const auto& r : results)
        if (sidx.emplace(r.solver, solvers.size()).second) solvers.push_back(r.solver);

    std::vector<SolverStats> stats(solvers.size());
    std::vector<std::vector<double>> times(solvers.size());
    for (const auto& r : results) {
        const size_t s = sidx[r.solver];
        if (r.solved()) {
            times[s].push_back(r.wall_time_s);
        } else {
            ++stats[s].failed;
        }
    }
    for (size_t s = 0; s < solvers.size(); ++s) {
        auto& st = stats[s];
        st.solver = solvers[s];
        st.completed = static_cast<int>(times[s].size());
        if (st.completed > 0) {
            double sum = 0.0;
            st.min = times[s][0];
            st.max = times[s][0];
            for (double t : times[s]) {
                sum += t;
                st.min = std::min(st.min, t);
                st.max = std::max(st.max, t);
            }
            st.mean = sum / st.completed;
            st.median = median_of(times[s]);
        }
    }
    return stats;
}

void emit_csv(const std::vector<RunResult>& results, std::ostream& out) {
    if (results.empty()) throw EmptyResults("emit_csv: no results");
    out << "problem_id,n,m,solver,status,iterations,wall_time_s\n";
    for (const auto& r : results) {
        out << sanitize_csv_field(r.problem_id) << ',' << r.n << ',' << r.m << ','
            << sanitize_csv_field(r.solver) << ',' << r.status << ',' << r.iterations << ','
            << fmt_double(r.wall_time_s) << '\n';
    }
}

void emit_csv(const std::vector<ProfileCurve>& curves, std::ostream& out) {
    if (curves.empty()) throw EmptyResults("emit_csv: no curves");
    out << "solver,tau,rho\n";
    for (const auto& c : curves)
        for (const auto& pt : c.points)
            out << sanitize_csv_field(c.solver) << ',' << fmt_double(pt.tau) << ','
                << fmt_double(pt.rho) << '\n';
}

void emit_csv(const std::vector<SolverStats>& stats, std::ostream& out) {
    if (stats.empty()) throw EmptyResults("emit_csv: no stats");
    out << "solver,completed,failed,mean_s,median_s,min_s,max_s\n";
    for (const auto& s : stats) {
        out << sanitize_csv_field(s.solver) << ',' << s.completed << ',' << s.failed << ','
            << fmt_double(s.mean) << ',' << fmt_double(s.median) << ',' << fmt_double(s.min) << ','
            << fmt_double(s.max) << '\n';
    }
}

namespace {

template <typename T>
void emit_csv_to_path(const T& payload, const std::string& path) {
    std::ostringstream buf;
    emit_csv(payload, buf);  // throws EmptyResults before touching the file
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << buf.str();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void emit_csv(const std::vector<RunResult>& results, const std::string& path) {
    emit_csv_to_path(results, path);
}
void emit_csv(const std::vector<ProfileCurve>& curves, const std::string& path) {
    emit_csv_to_path(curves, path);
}
void emit_csv(const std::vector<SolverStats>& stats, const std::string& path) {
    emit_csv_to_path(stats, path);
}

std::vector<RunResult> read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("results csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "problem_id,n,m,solver,status,iterations,wall_time_s") {
        throw ParseError("results csv: unexpected header \"" + line + "\"");
    }
    std::vector<RunResult> results;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        size_t pos = 0;
        while (true) {
            const size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(pos));
                break;
            }
            fields.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (fields.size() != 7) {
            throw ParseError("results csv line " + std::to_string(lineno) + ": expected 7 fields");
        }
        RunResult r;
        r.problem_id = fields[0];
        try {
            r.n = std::stoi(fields[1]);
            r.m = std::stoi(fields[2]);
            r.solver = fields[3];
            r.status = fields[4];
            r.iterations = std::stol(fields[5]);
            r.wall_time_s = std::stod(fields[6]);
        } catch (const std::exception&) {
            throw ParseError("results csv line " + std::to_string(lineno) + ": bad numeric field");
        }
        results.push_back(std::move(r));
    }
    if (results.empty()) throw ParseError("results csv: no data rows");
    return results;
}

std::vector<RunResult> read_results_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    return read_results_csv(in);
}

void emit_profile_svg(const std::vector<ProfileCurve>& curves, const std::string& path) {
    if (curves.empty()) throw EmptyResults("emit_profile_svg: no curves");

    const int width = 720, height = 480;
    const double left = 64, right = 24, top = 28, bottom = 52;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double max_log = 1.0;
    for (const auto& c : curves)
        for (const auto& pt : c.points) max_log = std::max(max_log, std::log2(pt.tau));
    max_log = std::ceil(max_log);

    auto xpix = [&](double tau) { return left + plot_w * (std::log2(tau) / max_log); };
    auto ypix = [&](double rho) { return top + plot_h * (1.0 - rho); };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return std::string(buf);
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
    const size_t npal = sizeof(palette) / sizeof(palette[0]);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // axes and gridlines
    svg << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (int i = 0; i <= static_cast<int>(max_log); ++i) {
        const double x = left + plot_w * (i / max_log);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(top + plot_h) << "\"/>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = top + plot_h * (i / 4.0);
        svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(left + plot_w) << "\" y2=\"" << num(y) << "\"/>\n";
    }
    svg << "</g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
    for (int i = 0; i <= static_cast<int>(max_log); ++i) {
        const double x = left + plot_w * (i / max_log);
        svg << "<text x=\"" << num(x - 6) << "\" y=\"" << num(top + plot_h + 18) << "\">2^" << i
            << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = top + plot_h * (1.0 - i / 4.0);
        svg << "<text x=\"" << num(left - 36) << "\" y=\"" << num(y + 4) << "\">" << num(i / 4.0)
            << "</text>\n";
    }
    svg << "<text x=\"" << num(left + plot_w / 2 - 60) << "\" y=\"" << num(height - 12)
        << "\">performance ratio tau (log2)</text>\n";
    svg << "<text x=\"" << num(12) << "\" y=\"" << num(top - 10)
        << "\">fraction of problems solved within tau</text>\n";
    svg << "</g>\n";

    for (size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& c = curves[ci];
        if (c.points.empty()) continue;
        std::ostringstream pts;
        double prev_y = ypix(c.points.front().rho);
        pts << num(xpix(c.points.front().tau)) << ',' << num(prev_y);
        for (size_t i = 1; i < c.points.size(); ++i) {
            const double x = xpix(c.points[i].tau);
            const double y = ypix(c.points[i].rho);
            pts << ' ' << num(x) << ',' << num(prev_y);  // horizontal run
            pts << ' ' << num(x) << ',' << num(y);       // vertical jump
            prev_y = y;
        }
        pts << ' ' << num(left + plot_w) << ',' << num(prev_y);
        svg << "<polyline fill=\"none\" stroke=\"" << palette[ci % npal]
            << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    }

    // legend
    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (size_t ci = 0; ci < curves.size(); ++ci) {
        const double y = top + 16 + 18.0 * static_cast<double>(ci);
        const double x = left + plot_w - 130;
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(y - 4) << "\" x2=\"" << num(x + 24)
            << "\" y2=\"" << num(y - 4) << "\" stroke=\"" << palette[ci % npal]
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(x + 30) << "\" y=\"" << num(y) << "\">" << curves[ci].solver
            << "</text>\n";
    }
    svg << "</g>\n</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << svg.str();
    if (!out) throw IoError("write failed: " + path);
}

std::string format_stats_table(const std::vector<SolverStats>& stats) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-10s %9s %6s %12s %12s %12s %12s\n", "solver", "completed",
                  "failed", "mean_s", "median_s", "min_s", "max_s");
    out << buf;
    for (const auto& s : stats) {
        std::snprintf(buf, sizeof(buf), "%-10s %9d %6d %12.6g %12.6g %12.6g %12.6g\n",
                      s.solver.c_str(), s.completed, s.failed, s.mean, s.median, s.min, s.max);
        out << buf;
    }
    return out.str();
}

}  // namespace feaskit
