#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "feaskit/errors.hpp"
#include "feaskit/geometry.hpp"

namespace feaskit {

// A convex constraint f: R^n -> R presented through value and one subgradient.
// This is the only interface the solvers see. Implementations must be
// immutable after construction and safe to call from concurrent workers.
class ConvexInequalityOracle {
public:
    virtual ~ConvexInequalityOracle() = default;

    virtual int dimension() const = 0;
    virtual double value(const Vector& x) const = 0;
    virtual Vector subgradient(const Vector& x) const = 0;
};

// f(x) = x^T A x + 2 x^T b - c with A symmetric positive definite and c > 0.
// The gradient is 2(Ax + b).
class Ellipsoid final : public ConvexInequalityOracle {
public:
    Ellipsoid(Eigen::MatrixXd A, Vector b, double c);

    int dimension() const override { return static_cast<int>(A_.rows()); }
    double value(const Vector& x) const override;
    Vector subgradient(const Vector& x) const override;

    const Eigen::MatrixXd& A() const { return A_; }
    const Vector& b() const { return b_; }
    double c() const { return c_; }

private:
    Eigen::MatrixXd A_;
    Vector b_;
    double c_;
};

// f(x) = a^T x - beta. Handy for tests and tiny hand instances.
class AffineOracle final : public ConvexInequalityOracle {
public:
    AffineOracle(Vector a, double beta);

    int dimension() const override { return static_cast<int>(a_.size()); }
    double value(const Vector& x) const override { return a_.dot(x) - beta_; }
    Vector subgradient(const Vector&) const override { return a_; }

private:
    Vector a_;
    double beta_;
};

using OraclePtr = std::shared_ptr<const ConvexInequalityOracle>;

// A convex feasibility problem: find x with f_i(x) <= 0 for all i.
// Immutable after construction.
class CfpInstance {
public:
    CfpInstance(int n, std::vector<OraclePtr> oracles, std::optional<Vector> slater_point = {},
                std::string id = {});

    int n() const { return n_; }
    int m() const { return static_cast<int>(oracles_.size()); }
    const ConvexInequalityOracle& oracle(int i) const { return *oracles_[static_cast<size_t>(i)]; }
    const std::vector<OraclePtr>& oracles() const { return oracles_; }
    const std::optional<Vector>& slater_point() const { return slater_point_; }
    const std::string& id() const { return id_; }

    // min_i (-f_i(slater_point)); positive by the construction invariant.
    double slater_margin() const;

private:
    int n_;
    std::vector<OraclePtr> oracles_;
    std::optional<Vector> slater_point_;
    std::string id_;
};

// max_i f_i(x); x is feasible iff the result is <= 0.
double max_violation(const CfpInstance& inst, const Vector& x);

bool is_feasible(const CfpInstance& inst, const Vector& x, double tol);

struct GenParams {
    double eig_lo = 0.5;
    double eig_hi = 2.0;
    // Scale applied to the Gaussian centers b^i; unset means 1/sqrt(n).
    std::optional<double> b_scale;
    double c_lo = 1.0;
    double c_hi = 2.0;
};

// Random intersecting ellipsoids with the origin as certified Slater point
// (margin min_i c_i >= c_lo). A_i = Q^T diag(lambda) Q with Q the orthogonal
// factor of a seeded Gaussian matrix and lambda log-uniform in
// [eig_lo, eig_hi]. Deterministic in (n, m, seed, params).
CfpInstance generate_ellipsoid_instance(int n, int m, std::uint64_t seed,
                                        const GenParams& params = {});

// Seeded Gaussian direction from the Slater point, radius doubled from 1
// until max_violation > 0. Throws CannotEscape after 60 doublings.
Vector sample_infeasible_start(const CfpInstance& inst, std::uint64_t seed);

// JSON serialization (schema "cfp-ellipsoids-v1"). Only all-ellipsoid
// instances are serializable; write_instance throws InvalidParams otherwise.
std::string write_instance(const CfpInstance& inst);
CfpInstance read_instance(const std::string& text);

void save_instance(const CfpInstance& inst, const std::string& path);
CfpInstance load_instance(const std::string& path);

}  // namespace feaskit
