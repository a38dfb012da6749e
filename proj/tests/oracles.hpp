#pragma once

// Reference computations for the tests. These deliberately take different
// numerical routes than the library (generic dense LU, bisector
// intersection, finite differences) so the checks are not circular.

#include <cmath>
#include <functional>
#include <memory>

#include <Eigen/Dense>

#include "feaskit/problem.hpp"
#include "feaskit/solver.hpp"

namespace testor {

using feaskit::Vector;

// minimize ||y - x||^2 s.t. a^T y <= alpha, solved as an equality-
// constrained QP through its KKT system with a generic dense LU:
//   [ 2I  a ] [y]      [2x   ]
//   [ a^T 0 ] [lam] =  [alpha]
// (only reached when x is strictly outside the halfspace).
inline Vector qp_project_halfspace(const Vector& a, double alpha, const Vector& x) {
    if (a.dot(x) <= alpha) return x;
    const Eigen::Index n = x.size();
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = 2.0 * Eigen::MatrixXd::Identity(n, n);
    kkt.topRightCorner(n, 1) = a;
    kkt.bottomLeftCorner(1, n) = a.transpose();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = 2.0 * x;
    rhs[n] = alpha;
    const Eigen::VectorXd sol = Eigen::FullPivLU<Eigen::MatrixXd>(kkt).solve(rhs);
    return sol.head(n);
}

// Circumcenter of three points in the plane from the two perpendicular
// bisector equations, solved with Cramer's rule.
inline Eigen::Vector2d circumcenter2d_bisectors(const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                                                const Eigen::Vector2d& r) {
    const double a11 = 2.0 * (q.x() - p.x()), a12 = 2.0 * (q.y() - p.y());
    const double a21 = 2.0 * (r.x() - p.x()), a22 = 2.0 * (r.y() - p.y());
    const double b1 = q.squaredNorm() - p.squaredNorm();
    const double b2 = r.squaredNorm() - p.squaredNorm();
    const double det = a11 * a22 - a12 * a21;
    return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

inline Vector central_difference_gradient(const std::function<double(const Vector&)>& f,
                                          const Vector& x, double h = 1e-6) {
    Vector g(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        Vector hi = x, lo = x;
        hi[j] += h;
        lo[j] -= h;
        g[j] = (f(hi) - f(lo)) / (2.0 * h);
    }
    return g;
}

// f1(x) = x - 1, f2(x) = -x - 1 on the line; feasible set [-1, 1],
// Slater point 0 with margin 1.
inline feaskit::CfpInstance two_halfspace_line() {
    Vector a1(1), a2(1);
    a1 << 1.0;
    a2 << -1.0;
    std::vector<feaskit::OraclePtr> oracles{
        std::make_shared<feaskit::AffineOracle>(a1, 1.0),
        std::make_shared<feaskit::AffineOracle>(a2, 1.0),
    };
    return feaskit::CfpInstance(1, std::move(oracles), Vector(Vector::Zero(1)), "line");
}

// Single unit ball f(x) = ||x||^2 - 1.
inline feaskit::CfpInstance unit_ball(int n) {
    std::vector<feaskit::OraclePtr> oracles{std::make_shared<feaskit::Ellipsoid>(
        Eigen::MatrixXd::Identity(n, n), Vector(Vector::Zero(n)), 1.0)};
    return feaskit::CfpInstance(n, std::move(oracles), Vector(Vector::Zero(n)), "unit-ball");
}

// Replays a solve trace: x_{k+1} = x_k - alpha_k w_k, identity on the
// w = 0 branch. Returns the full iterate path x_0 ... x_T.
inline std::vector<Vector> replay_iterates(const Vector& x0,
                                           const std::vector<feaskit::StepRecord>& trace) {
    std::vector<Vector> path{x0};
    for (const auto& rec : trace) {
        const Vector& x = path.back();
        if (rec.alpha) {
            path.push_back(x - *rec.alpha * rec.w);
        } else {
            path.push_back(x);
        }
    }
    return path;
}

}  // namespace testor
