#pragma once

#include "feaskit/problem.hpp"
#include "feaskit/schedule.hpp"

namespace feaskit {

// Element of R^{nm} seen as m blocks of R^n. Used by the product-space
// CRM oracle that cross-checks the solver engine.
class BlockVector {
public:
    BlockVector(int n, int m);
    BlockVector(Vector flat, int n, int m);

    static BlockVector diagonal(const Vector& x, int m);

    int block_dim() const { return n_; }
    int blocks() const { return m_; }

    Eigen::VectorBlock<Vector> block(int i) { return data_.segment(long(i) * n_, n_); }
    Eigen::VectorBlock<const Vector> block(int i) const { return data_.segment(long(i) * n_, n_); }

    const Vector& flat() const { return data_; }
    Vector& flat() { return data_; }

    Vector block_mean() const;
    // max_i ||block_i - mean|| relative to 1 + ||mean||.
    double diagonal_deviation() const;
    bool is_diagonal(double rtol = 1e-12) const { return diagonal_deviation() <= rtol; }

private:
    int n_;
    int m_;
    Vector data_;
};

// Every block replaced by the arithmetic mean of the blocks; the orthogonal
// projection onto the diagonal subspace.
BlockVector project_diagonal(const BlockVector& v);

// Blockwise projection onto the perturbed separating halfspaces: block i
// becomes the projection of the common block x onto
// {z : u_i^T (z - x) + f_i(x) + eps <= 0} (identity when f_i(x)+eps <= 0).
// Requires a (numerically) diagonal input.
BlockVector project_separators(const CfpInstance& inst, const BlockVector& xblk, double eps);

// One circumcentered-reflection step in R^{nm} between the separator
// product and the diagonal: circumcenter3(x, R_S(x), R_D(R_S(x))).
// The relaxation is recovered implicitly through the generic circumcenter,
// independent of the solver's closed-form path. When the averaged
// displacement vanishes the step is the identity, mirroring the solver's
// w = 0 branch.
BlockVector crm_step(const CfpInstance& inst, const BlockVector& xblk, double eps,
                     double eta = 1e-14, double circ_tol = 1e-9);

// Runs PACA and the product-space CRM side by side for at most K iterations
// from x0 / diagonal(x0) with the same eps_k. Returns the maximum relative
// deviation between the PACA iterate and every block of the CRM iterate.
// Throws MismatchedTermination if one sequence reaches feasibility at an
// iteration where the other does not.
double check_equivalence(const CfpInstance& inst, const Vector& x0,
                         const PerturbationSchedule& sched, long K);

}  // namespace feaskit
