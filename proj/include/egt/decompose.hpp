// Orthogonal decompositions built from the projection map A -> PAP.
//
// Every component is computed by closed form (symmetrize / antisymmetrize
// PAP), never by orthogonalizing the K/N basis families: those families are
// linearly independent but not mutually orthonormal, so they stay on the
// test-oracle side.
#pragma once

#include "egt/core.hpp"

namespace egt {

/// Gamma(A) = P_r A P_c. Row and column sums of the result vanish and the
/// map is idempotent.
template <typename Derived>
MatrixX<typename Derived::Scalar> gamma(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> pr = projection_matrix<Scalar>(a.rows());
  const MatrixX<Scalar> pc = a.rows() == a.cols()
                                 ? pr
                                 : projection_matrix<Scalar>(a.cols());
  return pr * a.derived() * pc;
}

/// Unique three-part split A = S + C + N with S symmetric zero-sum-free
/// (anti-zero-sum), N antisymmetric circulation (anti-potential), and
/// C = A - PAP in the kernel. The parts are mutually orthogonal under the
/// trace inner product.
template <typename Scalar>
Decomposition<Scalar> decompose_symmetric(const MatrixGame<Scalar>& g) {
  const MatrixX<Scalar> range = gamma(g.payoff);
  Decomposition<Scalar> d;
  d.anti_zero_sum = (range + range.transpose()) / Scalar(2);
  d.anti_potential = (range - range.transpose()) / Scalar(2);
  d.kernel = g.payoff - range;
  d.residual =
      (g.payoff - (d.anti_zero_sum + d.kernel + d.anti_potential)).norm();
  return d;
}

/// Bimatrix split. With Abar = P_r A P_c and Bbar = P_r B P_c the range part
/// P(A,B)P = (V,V) + (N,-N) separates into V = (Abar+Bbar)/2 and
/// N = (Abar-Bbar)/2; the remainder lies in the kernel.
template <typename Scalar>
BimatrixDecomposition<Scalar> decompose_bimatrix(const BimatrixGame<Scalar>& g) {
  const MatrixX<Scalar> abar = gamma(g.a);
  const MatrixX<Scalar> bbar = gamma(g.b);
  const MatrixX<Scalar> v = (abar + bbar) / Scalar(2);
  const MatrixX<Scalar> n = (abar - bbar) / Scalar(2);
  BimatrixDecomposition<Scalar> d;
  d.anti_zero_sum = BimatrixGame<Scalar>(v, v);
  d.anti_potential = BimatrixGame<Scalar>(n, -n);
  d.kernel = BimatrixGame<Scalar>(g.a - abar, g.b - bbar);
  const Scalar ra =
      (g.a - (d.anti_zero_sum.a + d.kernel.a + d.anti_potential.a)).norm();
  const Scalar rb =
      (g.b - (d.anti_zero_sum.b + d.kernel.b + d.anti_potential.b)).norm();
  d.residual = std::hypot(ra, rb);
  return d;
}

// ---------------------------------------------------------------------------
// Kernel structure.

/// Four-term split A = PAP + (I-P)AP + PA(I-P) + (I-P)A(I-P); the first term
/// is the range part, the other three lie in the kernel of Gamma.
template <typename Scalar = double>
struct SandholmSplit {
  MatrixX<Scalar> range_part;
  MatrixX<Scalar> left_kernel;   // (I-P) A P
  MatrixX<Scalar> right_kernel;  // P A (I-P)
  MatrixX<Scalar> both_kernel;   // (I-P) A (I-P)
};

template <typename Derived>
SandholmSplit<typename Derived::Scalar> sandholm_split(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> pr = projection_matrix<Scalar>(a.rows());
  const MatrixX<Scalar> pc = a.rows() == a.cols()
                                 ? pr
                                 : projection_matrix<Scalar>(a.cols());
  const MatrixX<Scalar> qr = MatrixX<Scalar>::Identity(a.rows(), a.rows()) - pr;
  const MatrixX<Scalar> qc = MatrixX<Scalar>::Identity(a.cols(), a.cols()) - pc;
  SandholmSplit<Scalar> s;
  s.range_part = pr * a.derived() * pc;
  s.left_kernel = qr * a.derived() * pc;
  s.right_kernel = pr * a.derived() * qc;
  s.both_kernel = qr * a.derived() * qc;
  return s;
}

/// Representation of a kernel element as passive + constant game. The split
/// is representation-dependent: the all-ones matrix is both column-constant
/// and row-constant, so passive/constant/offset is a convenient
/// normalization, not an orthogonal decomposition.
template <typename Scalar = double>
struct KernelSplit {
  MatrixX<Scalar> passive_part;   // (1/l) 11^T C, column-constant
  MatrixX<Scalar> constant_part;  // (1/l) C 11^T, row-constant
  MatrixX<Scalar> offset;         // -(1/l^2) 11^T C 11^T
};

/// Requires Gamma(c) = 0 within the classify tolerance (scaled by the input
/// norm); the three parts always sum back to c exactly.
template <typename Derived, typename Scalar = typename Derived::Scalar>
KernelSplit<Scalar> kernel_split(const Eigen::MatrixBase<Derived>& c,
                                 const Tolerances<Scalar>& tol = {}) {
  if (c.rows() != c.cols()) {
    throw DimensionError("kernel_split: input must be square");
  }
  const Scalar gamma_residual = gamma(c).norm();
  if (gamma_residual > tol.classify * (Scalar(1) + c.norm())) {
    throw PreconditionError(
        "kernel_split: input is not in the kernel of Gamma",
        static_cast<double>(gamma_residual));
  }
  const Index l = c.rows();
  const MatrixX<Scalar> ones = MatrixX<Scalar>::Ones(l, l);
  KernelSplit<Scalar> k;
  k.passive_part = ones * c.derived() / Scalar(l);
  k.constant_part = c.derived() * ones / Scalar(l);
  k.offset = -(ones * c.derived() * ones) / Scalar(l * l);
  return k;
}

/// A bimatrix game (A, B) with l_r = l_c is a one-population game when
/// B = A^T; returns that A. Throws NotSymmetricError carrying |A - B^T|
/// otherwise.
template <typename Scalar>
MatrixGame<Scalar> symmetrize(const BimatrixGame<Scalar>& g,
                              const Tolerances<Scalar>& tol = {}) {
  if (g.rows() != g.cols()) {
    throw DimensionError("symmetrize: requires l_r = l_c");
  }
  const Scalar defect = (g.a - g.b.transpose()).norm();
  if (defect > tol.abs + tol.rel * std::max(g.a.norm(), g.b.norm())) {
    throw NotSymmetricError("symmetrize: b is not the transpose of a",
                            static_cast<double>(defect));
  }
  return MatrixGame<Scalar>(g.a);
}

}  // namespace egt
