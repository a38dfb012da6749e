#pragma once

#include <Eigen/Core>

#include "feaskit/errors.hpp"

namespace feaskit {

using Vector = Eigen::VectorXd;

// Closed halfspace {y : normal^T y <= offset}.
struct Halfspace {
    Vector normal;
    double offset = 0.0;

    Halfspace(Vector a, double alpha);
};

// Orthogonal projection onto h: x - (max{0, a^T x - alpha} / ||a||^2) a.
Vector project_halfspace(const Halfspace& h, const Vector& x);

// Reflection across h: 2 P(x) - x.
Vector reflect(const Halfspace& h, const Vector& x);

// The point in the affine hull of {x, y, z} equidistant to all three.
// Coincident inputs are collapsed first: all equal -> x, exactly two
// distinct -> their midpoint. Throws DegenerateConfiguration when the
// 2x2 Gram system is singular (distinct collinear points) or the
// computed center misses equidistance by more than
// tol * (1 + max pairwise distance).
Vector circumcenter3(const Vector& x, const Vector& y, const Vector& z, double tol = 1e-10);

}  // namespace feaskit
