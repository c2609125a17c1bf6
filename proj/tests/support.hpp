// Shared test helpers: seeded random game generators for every subspace and
// the independent oracles (least-squares projection onto the explicit basis
// families, finite differences) that the closed-form implementations are
// checked against. Everything here must stay independent of the code paths
// under test: projections go through stacked SVD solves, never through
// egt::decompose_*.
#pragma once

#include <random>
#include <vector>

#include "egt/bases.hpp"
#include "egt/core.hpp"

namespace support {

using egt::Index;
using Matrix = egt::MatrixX<double>;
using Vector = egt::VectorX<double>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 generator(0x5eed5eedULL);
  return generator;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Matrix random_matrix(Index rows, Index cols, double lo = -1.0,
                            double hi = 1.0) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
  return m;
}

inline Matrix random_symmetric(Index l) {
  Matrix m = random_matrix(l, l);
  return ((m + m.transpose()) / 2.0).eval();
}

inline Matrix random_antisymmetric(Index l) {
  Matrix m = random_matrix(l, l);
  return ((m - m.transpose()) / 2.0).eval();
}

// Column-constant matrix: a passive game.
inline Matrix random_passive(Index l) {
  Matrix m(l, l);
  for (Index j = 0; j < l; ++j) m.col(j).setConstant(uniform(-1.0, 1.0));
  return m;
}

inline Matrix random_potential_game(Index l) {
  return random_symmetric(l) + random_passive(l);
}

inline Matrix random_zero_sum_game(Index l) {
  return random_antisymmetric(l) + random_passive(l);
}

inline Matrix random_combination(const std::vector<Matrix>& family, double lo,
                                 double hi) {
  Matrix sum = Matrix::Zero(family.front().rows(), family.front().cols());
  for (const auto& member : family) sum += uniform(lo, hi) * member;
  return sum;
}

// Exact members of the orthogonal subspaces, built from the basis families.
inline Matrix random_anti_zero_sum(Index l) {
  return random_combination(egt::family_K<double>(l), -1.0, 1.0);
}

inline Matrix random_anti_potential(Index l) {
  if (l < 3) return Matrix::Zero(l, l);
  return random_combination(egt::family_N<double>(l), -1.0, 1.0);
}

inline Matrix random_kernel_member(Index l) {
  return random_combination(egt::family_kernel<double>(l), -1.0, 1.0);
}

inline Vector random_interior_point(Index l, double floor = 0.05) {
  Vector x(l);
  for (Index i = 0; i < l; ++i) x(i) = floor + uniform(0.0, 1.0);
  return x / x.sum();
}

// ---------------------------------------------------------------------------
// Oracles.

// Least-squares projection of `target` onto the span of `family`, computed
// from the stacked vectorized family via SVD. This is the brute-force
// counterpart of the closed-form projections in egt/decompose.hpp.
inline Matrix projection_oracle(const std::vector<Matrix>& family,
                                const Matrix& target) {
  if (family.empty()) return Matrix::Zero(target.rows(), target.cols());
  Matrix stacked(target.size(), static_cast<Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    stacked.col(static_cast<Index>(k)) = family[k].reshaped();
  }
  Eigen::BDCSVD<Matrix> svd(stacked,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  const Vector coeffs = svd.solve(Vector(target.reshaped()));
  return (stacked * coeffs).reshaped(target.rows(), target.cols()).eval();
}

// Replicator field written out directly from the defining formula; used by
// the finite-difference oracles so they do not depend on egt/dynamics.hpp.
inline Vector raw_replicator(const Matrix& a, const Vector& x) {
  const Vector ax = a * x;
  return x.array() * (ax.array() - x.dot(ax));
}

// Divergence of the field in the chart (x_2, ..., x_l), x_1 = 1 - sum,
// by central differences.
inline double fd_divergence(const Matrix& a, const Vector& x,
                            double eps = 1e-6) {
  const Index l = a.rows();
  double total = 0.0;
  for (Index k = 1; k < l; ++k) {
    Vector hi = x, lo = x;
    hi(k) += eps;
    hi(0) -= eps;
    lo(k) -= eps;
    lo(0) += eps;
    total += (raw_replicator(a, hi)(k) - raw_replicator(a, lo)(k)) / (2 * eps);
  }
  return total;
}

// Full Jacobian of the raw field by central differences.
inline Matrix fd_jacobian(const Matrix& a, const Vector& x,
                          double eps = 1e-6) {
  const Index l = a.rows();
  Matrix jac(l, l);
  for (Index j = 0; j < l; ++j) {
    Vector hi = x, lo = x;
    hi(j) += eps;
    lo(j) -= eps;
    jac.col(j) = (raw_replicator(a, hi) - raw_replicator(a, lo)) / (2 * eps);
  }
  return jac;
}

}  // namespace support
