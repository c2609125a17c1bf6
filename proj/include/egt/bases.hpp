// Explicit basis matrices for the game subspaces and the associated
// dimension counts. Indices in this header are 1-based so the generated
// matrices can be checked position by position against their definitions.
//
// Families:
//   K^(ij)      symmetric, zero row/col sums; span the anti-zero-sum space.
//   N^(ij)      extended Rock-Paper-Scissors on {1,i,j}; span the
//               anti-potential space of one-population games.
//   E_gamma^(j) ones in column j (passive game).
//   E_eta^(i)   ones in row i (constant game).
//   E_kappa^(ij) the 2x2 block [[-1,1],[1,-1]] at rows {i,i+1} x cols
//               {j,j+1}; span the range of A -> PAP.
//   (E_kappa, -E_kappa) / (E_kappa, E_kappa)  extended Matching Pennies
//               pairs spanning the bimatrix anti-potential / anti-zero-sum
//               spaces.
#pragma once

#include <vector>

#include "egt/core.hpp"

namespace egt {

enum class BasisKind {
  K,
  N,
  EGamma,
  EEta,
  EKappa,
  MPAntiPotential,
  MPAntiZeroSum,
};

namespace detail {

inline void require_index(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail

/// K^(ij): -1 at (i,i) and (j,j), +1 at (i,j) and (j,i). Needs 1 <= i < j <= l.
template <typename Scalar = double>
MatrixX<Scalar> basis_K(Index l, Index i, Index j) {
  detail::require_index(l >= 2 && i >= 1 && i < j && j <= l,
                        "basis_K: requires 1 <= i < j <= l");
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(l, l);
  m(i - 1, i - 1) = Scalar(-1);
  m(j - 1, j - 1) = Scalar(-1);
  m(i - 1, j - 1) = Scalar(1);
  m(j - 1, i - 1) = Scalar(1);
  return m;
}

/// N^(ij): antisymmetric with zero row/col sums; its restriction to the
/// strategies {1,i,j} is Rock-Paper-Scissors. Needs 2 <= i < j <= l.
template <typename Scalar = double>
MatrixX<Scalar> basis_N(Index l, Index i, Index j) {
  detail::require_index(l >= 3 && i >= 2 && i < j && j <= l,
                        "basis_N: requires 2 <= i < j <= l");
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(l, l);
  m(0, i - 1) = Scalar(-1);
  m(0, j - 1) = Scalar(1);
  m(i - 1, 0) = Scalar(1);
  m(i - 1, j - 1) = Scalar(-1);
  m(j - 1, 0) = Scalar(-1);
  m(j - 1, i - 1) = Scalar(1);
  return m;
}

/// E_gamma^(j): ones in column j.
template <typename Scalar = double>
MatrixX<Scalar> basis_E_gamma(Index rows, Index cols, Index j) {
  detail::require_index(rows >= 1 && j >= 1 && j <= cols,
                        "basis_E_gamma: requires 1 <= j <= cols");
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(rows, cols);
  m.col(j - 1).setOnes();
  return m;
}

template <typename Scalar = double>
MatrixX<Scalar> basis_E_gamma(Index l, Index j) {
  return basis_E_gamma<Scalar>(l, l, j);
}

/// E_eta^(i) = (E_gamma^(i))^T: ones in row i.
template <typename Scalar = double>
MatrixX<Scalar> basis_E_eta(Index rows, Index cols, Index i) {
  detail::require_index(cols >= 1 && i >= 1 && i <= rows,
                        "basis_E_eta: requires 1 <= i <= rows");
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(rows, cols);
  m.row(i - 1).setOnes();
  return m;
}

template <typename Scalar = double>
MatrixX<Scalar> basis_E_eta(Index l, Index i) {
  return basis_E_eta<Scalar>(l, l, i);
}

/// E_kappa^(ij): [[-1,1],[1,-1]] in rows {i,i+1} x cols {j,j+1}, zeros
/// elsewhere. Needs 1 <= i < rows and 1 <= j < cols. Both 1 E_kappa and
/// E_kappa 1 vanish.
template <typename Scalar = double>
MatrixX<Scalar> basis_E_kappa(Index rows, Index cols, Index i, Index j) {
  detail::require_index(i >= 1 && i < rows && j >= 1 && j < cols,
                        "basis_E_kappa: requires 1 <= i < rows and 1 <= j < cols");
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(rows, cols);
  m(i - 1, j - 1) = Scalar(-1);
  m(i - 1, j) = Scalar(1);
  m(i, j - 1) = Scalar(1);
  m(i, j) = Scalar(-1);
  return m;
}

template <typename Scalar = double>
MatrixX<Scalar> basis_E_kappa(Index l, Index i, Index j) {
  return basis_E_kappa<Scalar>(l, l, i, j);
}

/// Extended Matching Pennies pair (E_kappa^(ij), -E_kappa^(ij)).
template <typename Scalar = double>
BimatrixGame<Scalar> mp_anti_potential(Index rows, Index cols, Index i, Index j) {
  MatrixX<Scalar> e = basis_E_kappa<Scalar>(rows, cols, i, j);
  return BimatrixGame<Scalar>(e, -e);
}

/// The pair (E_kappa^(ij), E_kappa^(ij)) spanning the bimatrix
/// anti-zero-sum space.
template <typename Scalar = double>
BimatrixGame<Scalar> mp_anti_zero_sum(Index rows, Index cols, Index i, Index j) {
  MatrixX<Scalar> e = basis_E_kappa<Scalar>(rows, cols, i, j);
  return BimatrixGame<Scalar>(e, e);
}

/// Dispatch for the single-matrix kinds; index arguments that a kind does
/// not use are ignored.
template <typename Scalar = double>
MatrixX<Scalar> basis_matrix(BasisKind kind, Index rows, Index cols, Index i,
                             Index j) {
  switch (kind) {
    case BasisKind::K:
      if (rows != cols) throw DimensionError("basis K: requires a square shape");
      return basis_K<Scalar>(rows, i, j);
    case BasisKind::N:
      if (rows != cols) throw DimensionError("basis N: requires a square shape");
      return basis_N<Scalar>(rows, i, j);
    case BasisKind::EGamma:
      return basis_E_gamma<Scalar>(rows, cols, j);
    case BasisKind::EEta:
      return basis_E_eta<Scalar>(rows, cols, i);
    case BasisKind::EKappa:
      return basis_E_kappa<Scalar>(rows, cols, i, j);
    default:
      throw DomainError("basis_matrix: kind is a bimatrix pair, not a single matrix");
  }
}

// ---------------------------------------------------------------------------
// Dimension reports.

struct DimensionReport {
  Index dim_potential = 0;
  Index dim_anti_potential = 0;
  Index dim_zero_sum = 0;
  Index dim_anti_zero_sum = 0;
  Index dim_kernel = 0;
  Index dim_range = 0;
};

/// Subspace dimensions for one-population games on l strategies:
///   dim M      = l(l+1)/2 + l - 1        dim M-perp = (l-1)(l-2)/2
///   dim N      = l^2 - l(l-1)/2          dim N-perp = l(l-1)/2
///   dim ker    = 2l - 1                  dim range  = (l-1)^2
inline DimensionReport dimensions(Index l) {
  if (l < 2) throw DomainError("dimensions: l must be >= 2");
  DimensionReport r;
  r.dim_potential = l * (l + 1) / 2 + l - 1;
  r.dim_anti_potential = (l - 1) * (l - 2) / 2;
  r.dim_anti_zero_sum = l * (l - 1) / 2;
  r.dim_zero_sum = l * l - r.dim_anti_zero_sum;
  r.dim_kernel = 2 * l - 1;
  r.dim_range = (l - 1) * (l - 1);
  return r;
}

/// Bimatrix counterpart; the total space has dimension 2 l_r l_c.
inline DimensionReport bimatrix_dimensions(Index lr, Index lc) {
  if (lr < 2 || lc < 2) {
    throw DomainError("bimatrix_dimensions: l_r and l_c must be >= 2");
  }
  DimensionReport r;
  const Index complement = (lr - 1) * (lc - 1);
  r.dim_potential = lr * lc + lr + lc - 1;
  r.dim_anti_potential = complement;
  r.dim_zero_sum = 2 * lr * lc - complement;
  r.dim_anti_zero_sum = complement;
  r.dim_kernel = 2 * (lr + lc) - 2;
  r.dim_range = 2 * complement;
  return r;
}

// ---------------------------------------------------------------------------
// Family enumerators. The index ranges are fixed by the dimension counts;
// each family is linearly independent and spans its subspace (verified by
// numerical rank in the tests).

template <typename Scalar = double>
std::vector<MatrixX<Scalar>> family_K(Index l) {
  std::vector<MatrixX<Scalar>> out;
  for (Index i = 1; i < l; ++i)
    for (Index j = i + 1; j <= l; ++j) out.push_back(basis_K<Scalar>(l, i, j));
  return out;
}

template <typename Scalar = double>
std::vector<MatrixX<Scalar>> family_N(Index l) {
  std::vector<MatrixX<Scalar>> out;
  for (Index i = 2; i < l; ++i)
    for (Index j = i + 1; j <= l; ++j) out.push_back(basis_N<Scalar>(l, i, j));
  return out;
}

template <typename Scalar = double>
std::vector<MatrixX<Scalar>> family_E_kappa(Index lr, Index lc) {
  std::vector<MatrixX<Scalar>> out;
  for (Index i = 1; i < lr; ++i)
    for (Index j = 1; j < lc; ++j)
      out.push_back(basis_E_kappa<Scalar>(lr, lc, i, j));
  return out;
}

/// {E_eta^(i)}_{i>=2} together with every E_gamma^(j): a basis of ker(PAP),
/// 2l - 1 elements.
template <typename Scalar = double>
std::vector<MatrixX<Scalar>> family_kernel(Index l) {
  std::vector<MatrixX<Scalar>> out;
  for (Index i = 2; i <= l; ++i) out.push_back(basis_E_eta<Scalar>(l, i));
  for (Index j = 1; j <= l; ++j) out.push_back(basis_E_gamma<Scalar>(l, j));
  return out;
}

/// Spanning set of the potential-game subspace: the symmetric matrices plus
/// every passive game (not independent; rank is l(l+1)/2 + l - 1).
template <typename Scalar = double>
std::vector<MatrixX<Scalar>> family_potential(Index l) {
  std::vector<MatrixX<Scalar>> out;
  for (Index i = 1; i <= l; ++i) {
    for (Index j = i; j <= l; ++j) {
      MatrixX<Scalar> m = MatrixX<Scalar>::Zero(l, l);
      m(i - 1, j - 1) = Scalar(1);
      m(j - 1, i - 1) = Scalar(1);
      out.push_back(std::move(m));
    }
  }
  for (Index j = 1; j <= l; ++j) out.push_back(basis_E_gamma<Scalar>(l, j));
  return out;
}

/// Spanning set of the zero-sum subspace: antisymmetric matrices plus every
/// passive game (rank l^2 - l(l-1)/2).
template <typename Scalar = double>
std::vector<MatrixX<Scalar>> family_zero_sum(Index l) {
  std::vector<MatrixX<Scalar>> out;
  for (Index i = 1; i <= l; ++i) {
    for (Index j = i + 1; j <= l; ++j) {
      MatrixX<Scalar> m = MatrixX<Scalar>::Zero(l, l);
      m(i - 1, j - 1) = Scalar(1);
      m(j - 1, i - 1) = Scalar(-1);
      out.push_back(std::move(m));
    }
  }
  for (Index j = 1; j <= l; ++j) out.push_back(basis_E_gamma<Scalar>(l, j));
  return out;
}

/// Numerical rank of the span: stack the matrices vectorized as rows and
/// count singular values above max(dims) * machine-eps * sigma_max.
template <typename Scalar>
Index numerical_rank(const std::vector<MatrixX<Scalar>>& family) {
  if (family.empty()) return 0;
  const Index n = family.front().size();
  MatrixX<Scalar> stacked(static_cast<Index>(family.size()), n);
  for (Index k = 0; k < stacked.rows(); ++k) {
    detail::require_same_shape(family[static_cast<std::size_t>(k)],
                               family.front(), "numerical_rank");
    stacked.row(k) =
        family[static_cast<std::size_t>(k)].reshaped().transpose();
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(stacked);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const Scalar threshold = Scalar(std::max(stacked.rows(), stacked.cols())) *
                           Eigen::NumTraits<Scalar>::epsilon() * sv(0);
  Index rank = 0;
  for (Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > threshold) ++rank;
  }
  return rank;
}

}  // namespace egt
