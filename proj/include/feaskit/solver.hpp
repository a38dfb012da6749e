#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feaskit/problem.hpp"
#include "feaskit/schedule.hpp"

namespace feaskit {

enum class Algorithm { PACA, SSPM, MCSP, CARMprod };

Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm a);

struct SolverConfig {
    Algorithm algorithm = Algorithm::PACA;
    PerturbationSchedule schedule = PerturbationSchedule::power_law(1.0, 1.0);
    double feasibility_tol = 0.0;
    long max_iter = 100000;
    // Relative threshold for the w = 0 branch: treat the averaged
    // displacement as zero when ||w|| <= eta * max_i ||v_i||.
    double zero_w_threshold = 1e-14;
    double mcsp_relaxation = 1.0;
    // Use the 1/(k+1) relaxation schedule for MCSP instead of a constant.
    bool mcsp_one_over_k = false;
    bool record_trace = true;

    // Per-algorithm defaults: divergent 1/k perturbations and exact
    // membership (tol 0) for PACA/SSPM/MCSP; no perturbation and tol 1e-6
    // for CARMprod, which generally converges only asymptotically.
    static SolverConfig defaults(Algorithm a);
};

// One iteration of the engine. v holds the displacements computed this
// step (all m sets for PACA/SSPM/CARMprod, the single visited set for
// MCSP), w the averaged direction, alpha the relaxation actually applied
// (absent on the w = 0 branch, where the iterate does not move).
struct StepRecord {
    long k = 0;
    double eps = 0.0;
    std::vector<Vector> v;
    Vector w;
    std::optional<double> alpha;
    std::optional<int> active_set;  // MCSP only
    double step_norm = 0.0;
    double max_violation = 0.0;
};

enum class SolveStatus { FeasibleExact, FeasibleWithinTol, MaxIterReached };

const char* to_string(SolveStatus s);

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIterReached;
    Vector final_point;
    long iterations = 0;
    double wall_time_s = 0.0;
    std::vector<StepRecord> trace;
};

struct StepResult {
    Vector x_next;
    StepRecord rec;
};

// v_i = (max{0, f_i(x)+eps} / ||u_i||^2) u_i,  w = (1/m) sum_i v_i.
// If ||w|| <= eta * max_i ||v_i||, the iterate stays put and no alpha is
// recorded; otherwise alpha = ((1/m) sum ||v_i||^2) / ||w||^2 >= 1 and
// x_next = x - alpha w. Throws ZeroSubgradientAtViolation when some
// violated set returns a zero subgradient.
StepResult paca_step(const CfpInstance& inst, const Vector& x, double eps, double eta = 1e-14);

// Same displacements with the relaxation fixed at 1: x_next = x - w.
StepResult simultaneous_step(const CfpInstance& inst, const Vector& x, double eps,
                             double eta = 1e-14);

// Visits set i(k) = k mod m and moves by relaxation * v_{i(k)}.
StepResult cyclic_step(const CfpInstance& inst, const Vector& x, double eps, long k,
                       double relaxation = 1.0);

// Iterates the configured step with eps_k from the schedule. Membership is
// checked before stepping, so an already-feasible start returns at k = 0;
// the finite-termination stopping rule is feasibility_tol = 0.
SolveReport run(const SolverConfig& cfg, const CfpInstance& inst, const Vector& x0);

std::string report_to_json(const SolveReport& rep, bool include_trace);

}  // namespace feaskit
