#include "feaskit/product_space.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "feaskit/geometry.hpp"
#include "feaskit/solver.hpp"

namespace feaskit {

BlockVector::BlockVector(int n, int m) : n_(n), m_(m), data_(Vector::Zero(long(n) * m)) {
    if (n < 1 || m < 1) throw InvalidParams("block vector: n and m must be >= 1");
}

BlockVector::BlockVector(Vector flat, int n, int m) : n_(n), m_(m), data_(std::move(flat)) {
    if (n < 1 || m < 1) throw InvalidParams("block vector: n and m must be >= 1");
    if (data_.size() != long(n) * m) {
        throw DimensionMismatch("block vector: flat size " + std::to_string(data_.size()) +
                                " != n*m = " + std::to_string(long(n) * m));
    }
}

BlockVector BlockVector::diagonal(const Vector& x, int m) {
    BlockVector out(static_cast<int>(x.size()), m);
    for (int i = 0; i < m; ++i) out.block(i) = x;
    return out;
}

Vector BlockVector::block_mean() const {
    Vector mean = Vector::Zero(n_);
    for (int i = 0; i < m_; ++i) mean += block(i);
    return mean / m_;
}

double BlockVector::diagonal_deviation() const {
    const Vector mean = block_mean();
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) worst = std::max(worst, (block(i) - mean).norm());
    return worst / (1.0 + mean.norm());
}

BlockVector project_diagonal(const BlockVector& v) {
    return BlockVector::diagonal(v.block_mean(), v.blocks());
}

namespace {

Vector common_block(const CfpInstance& inst, const BlockVector& xblk, const char* what) {
    if (xblk.block_dim() != inst.n() || xblk.blocks() != inst.m()) {
        throw DimensionMismatch(std::string(what) + ": block shape does not match the instance");
    }
    if (!xblk.is_diagonal(1e-8)) {
        throw InvalidParams(std::string(what) + ": oracle is restricted to diagonal block vectors");
    }
    return xblk.block_mean();
}

}  // namespace

BlockVector project_separators(const CfpInstance& inst, const BlockVector& xblk, double eps) {
    if (eps < 0.0) throw InvalidParams("project_separators: eps must be >= 0");
    const Vector x = common_block(inst, xblk, "project_separators");

    BlockVector out(inst.n(), inst.m());
    for (int i = 0; i < inst.m(); ++i) {
        const double fx = inst.oracle(i).value(x);
        if (fx + eps <= 0.0) {
            out.block(i) = x;  // x already inside the perturbed set
            continue;
        }
        const Vector u = inst.oracle(i).subgradient(x);
        if (u.squaredNorm() == 0.0) {
            throw ZeroSubgradientAtViolation("set " + std::to_string(i) +
                                             ": zero subgradient at a violating point");
        }
        // {z : u^T(z - x) + f_i(x) + eps <= 0} = {z : u^T z <= u^T x - f_i(x) - eps}
        const Halfspace h(u, u.dot(x) - fx - eps);
        out.block(i) = project_halfspace(h, x);
    }
    return out;
}

BlockVector crm_step(const CfpInstance& inst, const BlockVector& xblk, double eps, double eta,
                     double circ_tol) {
    const Vector x = common_block(inst, xblk, "crm_step");

    const BlockVector proj = project_separators(inst, xblk, eps);
    BlockVector y(2.0 * proj.flat() - xblk.flat(), xblk.block_dim(), xblk.blocks());
    const BlockVector pd = project_diagonal(y);
    BlockVector z(2.0 * pd.flat() - y.flat(), xblk.block_dim(), xblk.blocks());

    // Averaged displacement: P_D(R_S(x)) = x - 2w for diagonal x.
    const Vector w = 0.5 * (x - pd.block_mean());
    double max_vsq = 0.0;
    for (int i = 0; i < xblk.blocks(); ++i) {
        max_vsq = std::max(max_vsq, (xblk.block(i) - proj.block(i)).squaredNorm());
    }
    if (w.squaredNorm() <= eta * eta * max_vsq) return xblk;

    Vector center = circumcenter3(xblk.flat(), y.flat(), z.flat(), circ_tol);
    return BlockVector(std::move(center), xblk.block_dim(), xblk.blocks());
}

double check_equivalence(const CfpInstance& inst, const Vector& x0,
                         const PerturbationSchedule& sched, long K) {
    if (K < 1) throw InvalidParams("check_equivalence: K must be >= 1");
    if (x0.size() != inst.n()) throw DimensionMismatch("check_equivalence: x0 dimension");

    Vector xp = x0;
    BlockVector xc = BlockVector::diagonal(x0, inst.m());
    double max_err = 0.0;

    for (long k = 0; k < K; ++k) {
        const bool stop_p = max_violation(inst, xp) <= 0.0;
        const bool stop_c = max_violation(inst, xc.block_mean()) <= 0.0;
        if (stop_p != stop_c) {
            throw MismatchedTermination("PACA and the CRM oracle disagree at iteration " +
                                        std::to_string(k));
        }
        if (stop_p) return max_err;

        const double eps = epsilon(sched, k);
        xp = paca_step(inst, xp, eps).x_next;
        xc = crm_step(inst, xc, eps);

        const double scale = 1.0 + xp.norm();
        for (int i = 0; i < inst.m(); ++i) {
            max_err = std::max(max_err, (xc.block(i) - xp).norm() / scale);
        }
    }
    return max_err;
}

}  // namespace feaskit
