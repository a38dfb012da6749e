#pragma once

#include <string>

#include "feaskit/errors.hpp"

namespace feaskit {

// Perturbation sequence eps_k. PowerLaw(nu, r) yields nu * (k+1)^(-r),
// strictly decreasing to 0; the shift keeps eps defined at k = 0 with
// eps_0 = nu. Zero yields 0 for every k (the unperturbed variant).
// A PowerLaw with r <= 1 has divergent partial sums, which is the regime
// that guarantees finite termination of the perturbed solvers.
struct PerturbationSchedule {
    enum class Kind { Zero, PowerLaw };

    Kind kind = Kind::Zero;
    double nu = 1.0;
    double r = 1.0;

    static PerturbationSchedule zero() { return {}; }
    static PerturbationSchedule power_law(double nu, double r);

    bool divergent() const { return kind == Kind::PowerLaw && r <= 1.0; }

    // "zero" | "powerlaw:nu=<float>,r=<float>"
    static PerturbationSchedule parse(const std::string& text);
    std::string to_string() const;
};

double epsilon(const PerturbationSchedule& s, long k);

}  // namespace feaskit
