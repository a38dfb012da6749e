#include "feaskit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include <json.hpp>

namespace feaskit {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "paca") return Algorithm::PACA;
    if (name == "sspm") return Algorithm::SSPM;
    if (name == "mcsp") return Algorithm::MCSP;
    if (name == "carmprod") return Algorithm::CARMprod;
    throw ParseError("unknown algorithm \"" + name + "\" (want paca|sspm|mcsp|carmprod)");
}

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::PACA: return "paca";
        case Algorithm::SSPM: return "sspm";
        case Algorithm::MCSP: return "mcsp";
        case Algorithm::CARMprod: return "carmprod";
    }
    return "?";
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::FeasibleExact: return "feasible_exact";
        case SolveStatus::FeasibleWithinTol: return "feasible_within_tol";
        case SolveStatus::MaxIterReached: return "max_iter";
    }
    return "?";
}

SolverConfig SolverConfig::defaults(Algorithm a) {
    SolverConfig cfg;
    cfg.algorithm = a;
    if (a == Algorithm::CARMprod) {
        cfg.schedule = PerturbationSchedule::zero();
        cfg.feasibility_tol = 1e-6;
    } else {
        cfg.schedule = PerturbationSchedule::power_law(1.0, 1.0);
        cfg.feasibility_tol = 0.0;
    }
    return cfg;
}

namespace {

std::vector<double> evaluate_all(const CfpInstance& inst, const Vector& x) {
    std::vector<double> values(static_cast<size_t>(inst.m()));
    for (int i = 0; i < inst.m(); ++i) values[static_cast<size_t>(i)] = inst.oracle(i).value(x);
    return values;
}

// Displacement toward the perturbed separating set of constraint i.
Vector displacement(const CfpInstance& inst, int i, const Vector& x, double eps, double fval) {
    const double amount = fval + eps;
    if (amount <= 0.0) return Vector::Zero(x.size());
    const Vector u = inst.oracle(i).subgradient(x);
    const double un2 = u.squaredNorm();
    if (un2 == 0.0) {
        throw ZeroSubgradientAtViolation("set " + std::to_string(i) +
                                         ": zero subgradient at a point violating f_i + eps <= 0");
    }
    return (amount / un2) * u;
}

StepResult averaged_step(const CfpInstance& inst, const Vector& x, double eps,
                         const std::vector<double>& values, bool circumcenter_relaxation,
                         double eta) {
    const int m = inst.m();
    StepRecord rec;
    rec.eps = eps;
    rec.max_violation = *std::max_element(values.begin(), values.end());
    rec.v.reserve(static_cast<size_t>(m));

    Vector w = Vector::Zero(x.size());
    double mean_sq = 0.0;
    double max_vsq = 0.0;
    for (int i = 0; i < m; ++i) {
        Vector vi = displacement(inst, i, x, eps, values[static_cast<size_t>(i)]);
        const double sq = vi.squaredNorm();
        mean_sq += sq;
        max_vsq = std::max(max_vsq, sq);
        w += vi;
        rec.v.push_back(std::move(vi));
    }
    mean_sq /= m;
    w /= m;
    rec.w = w;

    const double wsq = w.squaredNorm();
    if (wsq <= eta * eta * max_vsq) {
        rec.step_norm = 0.0;
        return {x, std::move(rec)};
    }
    const double alpha = circumcenter_relaxation ? mean_sq / wsq : 1.0;
    rec.alpha = alpha;
    Vector x_next = x - alpha * w;
    rec.step_norm = (x_next - x).norm();
    return {std::move(x_next), std::move(rec)};
}

StepResult cyclic_core(const CfpInstance& inst, const Vector& x, double eps, long k,
                       double relaxation, const std::vector<double>& values) {
    const int m = inst.m();
    const int active = static_cast<int>(k % m);
    StepRecord rec;
    rec.k = k;
    rec.eps = eps;
    rec.max_violation = *std::max_element(values.begin(), values.end());
    rec.active_set = active;

    Vector v = displacement(inst, active, x, eps, values[static_cast<size_t>(active)]);
    rec.w = v;
    rec.v.push_back(std::move(v));

    if (rec.w.squaredNorm() == 0.0) {
        rec.step_norm = 0.0;
        return {x, std::move(rec)};
    }
    rec.alpha = relaxation;
    Vector x_next = x - relaxation * rec.w;
    rec.step_norm = (x_next - x).norm();
    return {std::move(x_next), std::move(rec)};
}

void check_point(const CfpInstance& inst, const Vector& x, const char* what) {
    if (x.size() != inst.n()) {
        throw DimensionMismatch(std::string(what) + ": point dimension " +
                                std::to_string(x.size()) + ", instance dimension " +
                                std::to_string(inst.n()));
    }
}

}  // namespace

StepResult paca_step(const CfpInstance& inst, const Vector& x, double eps, double eta) {
    check_point(inst, x, "paca_step");
    if (eps < 0.0) throw InvalidParams("paca_step: eps must be >= 0");
    return averaged_step(inst, x, eps, evaluate_all(inst, x), true, eta);
}

StepResult simultaneous_step(const CfpInstance& inst, const Vector& x, double eps, double eta) {
    check_point(inst, x, "simultaneous_step");
    if (eps < 0.0) throw InvalidParams("simultaneous_step: eps must be >= 0");
    return averaged_step(inst, x, eps, evaluate_all(inst, x), false, eta);
}

StepResult cyclic_step(const CfpInstance& inst, const Vector& x, double eps, long k,
                       double relaxation) {
    check_point(inst, x, "cyclic_step");
    if (eps < 0.0) throw InvalidParams("cyclic_step: eps must be >= 0");
    if (k < 0) throw InvalidParams("cyclic_step: k must be >= 0");
    if (!(relaxation > 0.0)) throw InvalidParams("cyclic_step: relaxation must be > 0");
    return cyclic_core(inst, x, eps, k, relaxation, evaluate_all(inst, x));
}

SolveReport run(const SolverConfig& cfg_in, const CfpInstance& inst, const Vector& x0) {
    check_point(inst, x0, "run");
    SolverConfig cfg = cfg_in;
    if (cfg.algorithm == Algorithm::CARMprod) cfg.schedule = PerturbationSchedule::zero();
    if (cfg.feasibility_tol < 0.0) throw InvalidParams("run: feasibility_tol must be >= 0");
    if (cfg.max_iter < 0) throw InvalidParams("run: max_iter must be >= 0");
    if (!(cfg.mcsp_relaxation > 0.0)) throw InvalidParams("run: mcsp_relaxation must be > 0");

    const auto t0 = std::chrono::steady_clock::now();

    SolveReport rep;
    Vector x = x0;
    for (long k = 0;; ++k) {
        const std::vector<double> values = evaluate_all(inst, x);
        const double worst = *std::max_element(values.begin(), values.end());
        if (worst <= cfg.feasibility_tol) {
            rep.status = worst <= 0.0 ? SolveStatus::FeasibleExact : SolveStatus::FeasibleWithinTol;
            rep.iterations = k;
            break;
        }
        if (k >= cfg.max_iter) {
            rep.status = SolveStatus::MaxIterReached;
            rep.iterations = k;
            break;
        }

        const double eps = epsilon(cfg.schedule, k);
        StepResult step;
        switch (cfg.algorithm) {
            case Algorithm::PACA:
            case Algorithm::CARMprod:
                step = averaged_step(inst, x, eps, values, true, cfg.zero_w_threshold);
                break;
            case Algorithm::SSPM:
                step = averaged_step(inst, x, eps, values, false, cfg.zero_w_threshold);
                break;
            case Algorithm::MCSP: {
                const double relax =
                    cfg.mcsp_one_over_k ? 1.0 / (static_cast<double>(k) + 1.0) : cfg.mcsp_relaxation;
                step = cyclic_core(inst, x, eps, k, relax, values);
                break;
            }
        }
        step.rec.k = k;
        if (cfg.record_trace) rep.trace.push_back(std::move(step.rec));
        x = std::move(step.x_next);
    }

    rep.final_point = std::move(x);
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string report_to_json(const SolveReport& rep, bool include_trace) {
    nlohmann::json j;
    j["status"] = to_string(rep.status);
    j["iterations"] = rep.iterations;
    j["wall_time_s"] = rep.wall_time_s;
    nlohmann::json pt = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rep.final_point.size(); ++i) pt.push_back(rep.final_point[i]);
    j["final_point"] = std::move(pt);
    if (include_trace) {
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& rec : rep.trace) {
            nlohmann::json r;
            r["k"] = rec.k;
            r["eps"] = rec.eps;
            if (rec.alpha) r["alpha"] = *rec.alpha;
            if (rec.active_set) r["active_set"] = *rec.active_set;
            r["step_norm"] = rec.step_norm;
            r["max_violation"] = rec.max_violation;
            trace.push_back(std::move(r));
        }
        j["trace"] = std::move(trace);
    }
    return j.dump(2) + "\n";
}

}  // namespace feaskit
