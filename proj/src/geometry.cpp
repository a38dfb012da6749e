#include "feaskit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace feaskit {

namespace {

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size()) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
    }
}

}  // namespace

Halfspace::Halfspace(Vector a, double alpha) : normal(std::move(a)), offset(alpha) {
    if (normal.size() == 0 || normal.norm() == 0.0) {
        throw InvalidParams("halfspace normal must be nonzero");
    }
}

Vector project_halfspace(const Halfspace& h, const Vector& x) {
    require_same_dim(h.normal, x, "project_halfspace");
    const double excess = h.normal.dot(x) - h.offset;
    if (excess <= 0.0) return x;
    return x - (excess / h.normal.squaredNorm()) * h.normal;
}

Vector reflect(const Halfspace& h, const Vector& x) {
    return 2.0 * project_halfspace(h, x) - x;
}

Vector circumcenter3(const Vector& x, const Vector& y, const Vector& z, double tol) {
    require_same_dim(x, y, "circumcenter3");
    require_same_dim(x, z, "circumcenter3");

    const double dxy = (y - x).norm();
    const double dxz = (z - x).norm();
    const double dyz = (z - y).norm();

    // Collapse (near-)duplicates; CRM triples degenerate exactly at fixed points.
    const double dup = 1e-14 * (1.0 + x.norm());
    if (dxy <= dup && dxz <= dup) return x;
    if (dxy <= dup) return 0.5 * (x + z);
    if (dxz <= dup || dyz <= dup) return 0.5 * (x + y);

    // c = x + s d1 + t d2 with the two equidistance conditions
    //   ||c - x|| = ||c - y||  and  ||c - x|| = ||c - z||
    // reducing to the Gram system
    //   [ <d1,d1>  <d1,d2> ] [s]   [ <d1,d1>/2 ]
    //   [ <d1,d2>  <d2,d2> ] [t] = [ <d2,d2>/2 ].
    const Vector d1 = y - x;
    const Vector d2 = z - x;
    double a11 = d1.squaredNorm();
    double a12 = d1.dot(d2);
    double a21 = a12;
    double a22 = d2.squaredNorm();
    double b1 = 0.5 * a11;
    double b2 = 0.5 * a22;

    const double maxabs = std::max({std::abs(a11), std::abs(a12), std::abs(a22)});
    const double pivot_tol = 1e-13 * maxabs;

    if (std::abs(a21) > std::abs(a11)) {
        std::swap(a11, a21);
        std::swap(a12, a22);
        std::swap(b1, b2);
    }
    if (std::abs(a11) <= pivot_tol) {
        throw DegenerateConfiguration("circumcenter3: singular Gram system");
    }
    const double factor = a21 / a11;
    a22 -= factor * a12;
    b2 -= factor * b1;
    if (std::abs(a22) <= pivot_tol) {
        throw DegenerateConfiguration(
            "circumcenter3: no equidistant point in the affine hull (collinear inputs)");
    }
    const double t = b2 / a22;
    const double s = (b1 - a12 * t) / a11;

    Vector c = x + s * d1 + t * d2;

    const double rx = (c - x).norm();
    const double ry = (c - y).norm();
    const double rz = (c - z).norm();
    const double allow = tol * (1.0 + std::max({dxy, dxz, dyz}));
    if (std::abs(rx - ry) > allow || std::abs(rx - rz) > allow) {
        throw DegenerateConfiguration("circumcenter3: equidistance check failed (ill-conditioned triple)");
    }
    return c;
}

}  // namespace feaskit
