#include <doctest.h>

#include <Eigen/Dense>

#include "feaskit/geometry.hpp"
#include "feaskit/rng.hpp"
#include "oracles.hpp"

using feaskit::Halfspace;
using feaskit::Vector;

namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("halfspace projection: coordinate examples") {
    const Halfspace h(vec2(1, 0), 0.0);

    const Vector p = feaskit::project_halfspace(h, vec2(2, 3));
    CHECK(p[0] == doctest::Approx(0.0).epsilon(0).scale(1));
    CHECK(p[1] == doctest::Approx(3.0));

    // already inside: identity
    const Vector q = feaskit::project_halfspace(h, vec2(-1, 5));
    CHECK(q[0] == -1.0);
    CHECK(q[1] == 5.0);
}

TEST_CASE("halfspace projection: frozen value checked against the QP oracle") {
    const Vector a = vec2(3, 4);
    const Vector x = vec2(2, 2);
    const Halfspace h(a, 1.0);

    const Vector p = feaskit::project_halfspace(h, x);
    CHECK(p[0] == doctest::Approx(0.44).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(-0.08).epsilon(1e-14));

    const Vector ref = testor::qp_project_halfspace(a, 1.0, x);
    CHECK((p - ref).norm() <= 1e-12);
}

TEST_CASE("halfspace projection: dimension mismatch") {
    const Halfspace h(vec2(1, 0), 0.0);
    Vector x(3);
    x << 1, 2, 3;
    CHECK_THROWS_AS(feaskit::project_halfspace(h, x), feaskit::DimensionMismatch);
    CHECK_THROWS_AS(Halfspace(Vector(Vector::Zero(2)), 1.0), feaskit::InvalidParams);
}

TEST_CASE("halfspace projection matches the QP oracle on fuzzed cases") {
    feaskit::Xoshiro256pp rng(20240501);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 20);
        Vector a = rng.gaussian_vector(n);
        if (a.norm() < 1e-8) a[0] += 1.0;
        const double alpha = 2.0 * rng.gaussian();
        const Vector x = 3.0 * rng.gaussian_vector(n);

        const Halfspace h(a, alpha);
        const Vector p = feaskit::project_halfspace(h, x);
        const Vector ref = testor::qp_project_halfspace(a, alpha, x);
        worst = std::max(worst, (p - ref).norm());

        // membership, idempotence, and parallelism of the displacement
        CHECK(a.dot(p) <= alpha + 1e-12 * (1.0 + std::abs(alpha)));
        CHECK((feaskit::project_halfspace(h, p) - p).norm() <= 1e-12);
        const Vector d = x - p;
        const Vector residual = d - (d.dot(a) / a.squaredNorm()) * a;
        CHECK(residual.norm() <= 1e-12 * (1.0 + d.norm()));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("reflect: mirror and fixed point") {
    const Halfspace h(vec2(1, 0), 0.0);
    const Vector r = feaskit::reflect(h, vec2(2, 3));
    CHECK(r[0] == doctest::Approx(-2.0));
    CHECK(r[1] == doctest::Approx(3.0));

    // interior points are fixed
    const Vector inside = vec2(-1, 5);
    CHECK((feaskit::reflect(h, inside) - inside).norm() == 0.0);

    // double reflection returns the outside point
    CHECK((feaskit::reflect(h, r) - vec2(2, 3)).norm() <= 1e-14);
}

TEST_CASE("reflect: frozen value from the QP-verified projection") {
    // 2 * (0.44, -0.08) - (2, 2)
    const Halfspace h(vec2(3, 4), 1.0);
    const Vector r = feaskit::reflect(h, vec2(2, 2));
    const Vector ref = 2.0 * testor::qp_project_halfspace(vec2(3, 4), 1.0, vec2(2, 2)) - vec2(2, 2);
    CHECK(r[0] == doctest::Approx(-1.12).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(-2.16).epsilon(1e-14));
    CHECK((r - ref).norm() <= 1e-12);
}

TEST_CASE("circumcenter3: duplicate collapsing") {
    const Vector p = vec2(1, 2), q = vec2(3, -1);

    CHECK((feaskit::circumcenter3(p, p, p) - p).norm() == 0.0);

    const Vector mid = 0.5 * (p + q);
    CHECK((feaskit::circumcenter3(p, q, q) - mid).norm() == 0.0);
    CHECK((feaskit::circumcenter3(p, p, q) - mid).norm() == 0.0);
    CHECK((feaskit::circumcenter3(p, q, p) - mid).norm() == 0.0);
}

TEST_CASE("circumcenter3: planar example against the bisector oracle") {
    const Vector c = feaskit::circumcenter3(vec2(0, 0), vec2(2, 0), vec2(1, 1));
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c[1] == doctest::Approx(0.0).epsilon(0).scale(1e-13));

    const Eigen::Vector2d ref =
        testor::circumcenter2d_bisectors({0, 0}, {2, 0}, {1, 1});
    CHECK((c - Vector(ref)).norm() <= 1e-12);
}

TEST_CASE("circumcenter3: distinct collinear points are degenerate") {
    Vector a(3), b(3), c(3);
    a << 0, 0, 0;
    b << 1, 1, 0;
    c << 2, 2, 0;
    CHECK_THROWS_AS(feaskit::circumcenter3(a, b, c), feaskit::DegenerateConfiguration);
}

TEST_CASE("circumcenter3: fuzzed equidistance and affine-hull membership") {
    feaskit::Xoshiro256pp rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 8);
        const Vector x = 2.0 * rng.gaussian_vector(n);
        const Vector y = x + rng.gaussian_vector(n);
        const Vector z = x + rng.gaussian_vector(n);
        const double tol = 1e-10;

        Vector c;
        try {
            c = feaskit::circumcenter3(x, y, z, tol);
        } catch (const feaskit::DegenerateConfiguration&) {
            continue;  // nearly collinear random triple
        }
        const double maxd = std::max({(y - x).norm(), (z - x).norm(), (z - y).norm()});
        const double allow = tol * (1.0 + maxd);
        const double rx = (c - x).norm(), ry = (c - y).norm(), rz = (c - z).norm();
        CHECK(std::abs(rx - ry) <= allow);
        CHECK(std::abs(rx - rz) <= allow);

        // c - x must lie in span{y - x, z - x}
        Eigen::MatrixXd basis(n, 2);
        basis.col(0) = y - x;
        basis.col(1) = z - x;
        const Vector coeff = basis.colPivHouseholderQr().solve(c - x);
        CHECK((basis * coeff - (c - x)).norm() <= 1e-9 * (1.0 + (c - x).norm()));
    }
}

TEST_CASE("circumcenter planar fuzz against the bisector oracle") {
    feaskit::Xoshiro256pp rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector x = 2.0 * rng.gaussian_vector(2);
        const Vector y = 2.0 * rng.gaussian_vector(2);
        const Vector z = 2.0 * rng.gaussian_vector(2);
        Eigen::Vector2d p(x[0], x[1]), q(y[0], y[1]), r(z[0], z[1]);
        const double area2 = std::abs((q - p).x() * (r - p).y() - (q - p).y() * (r - p).x());
        if (area2 < 1e-3) continue;  // skip nearly degenerate triangles
        const Vector c = feaskit::circumcenter3(x, y, z);
        const Eigen::Vector2d ref = testor::circumcenter2d_bisectors(p, q, r);
        CHECK((c - Vector(ref)).norm() <= 1e-8 * (1.0 + ref.norm()));
    }
}
