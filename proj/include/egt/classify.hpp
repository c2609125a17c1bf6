// Predicates on games: potential / zero-sum via the cycle criteria, the
// stable / null-stable / strictly stable trichotomy via the spectrum of the
// anti-zero-sum component, the closed-form three-strategy criteria, and the
// sign-pattern digraph of anti-potential games.
//
// Each criterion is evaluated two ways: the cycle sums (orthogonality
// against the K/N families, expanded entrywise) and the Frobenius norm of
// the corresponding component. Both residuals are reported; thresholds are
// tol * (1 + norm(game)).
#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <sstream>
#include <vector>

#include "egt/decompose.hpp"

namespace egt {

template <typename Scalar = double>
struct CriterionResult {
  bool value = false;
  Scalar cycle_residual = Scalar(0);      // max |cycle sum|
  Scalar component_residual = Scalar(0);  // norm of the orthogonal component
  std::vector<Index> witness;  // 1-based indices of the first violated cycle
};

namespace detail {

template <typename Scalar>
Scalar bimatrix_norm(const BimatrixGame<Scalar>& g) {
  return std::hypot(g.a.norm(), g.b.norm());
}

}  // namespace detail

/// Six-term cycle criterion: A is potential iff
/// a(l,m)-a(k,m)+a(k,l)-a(m,l)+a(m,k)-a(l,k) = 0 for every strategy triple.
template <typename Scalar>
CriterionResult<Scalar> is_potential(const MatrixGame<Scalar>& g,
                                     const Tolerances<Scalar>& tol = {}) {
  const auto& a = g.payoff;
  const Scalar threshold = tol.classify * (Scalar(1) + a.norm());
  CriterionResult<Scalar> r;
  for (Index k = 0; k < g.l(); ++k) {
    for (Index l = k + 1; l < g.l(); ++l) {
      for (Index m = l + 1; m < g.l(); ++m) {
        const Scalar cycle = a(l, m) - a(k, m) + a(k, l) - a(m, l) +
                             a(m, k) - a(l, k);
        r.cycle_residual = std::max(r.cycle_residual, std::abs(cycle));
        if (std::abs(cycle) > threshold && r.witness.empty()) {
          r.witness = {k + 1, l + 1, m + 1};
        }
      }
    }
  }
  r.component_residual = decompose_symmetric(g).anti_potential.norm();
  r.value = r.cycle_residual <= threshold;
  return r;
}

/// Four-term cycle criterion: A is zero-sum iff
/// a(j,i)-a(i,i)+a(i,j)-a(j,j) = 0 for every strategy pair.
template <typename Scalar>
CriterionResult<Scalar> is_zero_sum(const MatrixGame<Scalar>& g,
                                    const Tolerances<Scalar>& tol = {}) {
  const auto& a = g.payoff;
  const Scalar threshold = tol.classify * (Scalar(1) + a.norm());
  CriterionResult<Scalar> r;
  for (Index i = 0; i < g.l(); ++i) {
    for (Index j = i + 1; j < g.l(); ++j) {
      const Scalar cycle = a(j, i) - a(i, i) + a(i, j) - a(j, j);
      r.cycle_residual = std::max(r.cycle_residual, std::abs(cycle));
      if (std::abs(cycle) > threshold && r.witness.empty()) {
        r.witness = {i + 1, j + 1};
      }
    }
  }
  r.component_residual = decompose_symmetric(g).anti_zero_sum.norm();
  r.value = r.cycle_residual <= threshold;
  return r;
}

/// Bimatrix potential criterion over all pairs of row and column strategies.
template <typename Scalar>
CriterionResult<Scalar> is_potential(const BimatrixGame<Scalar>& g,
                                     const Tolerances<Scalar>& tol = {}) {
  const auto& a = g.a;
  const auto& b = g.b;
  const Scalar threshold =
      tol.classify * (Scalar(1) + detail::bimatrix_norm(g));
  CriterionResult<Scalar> r;
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index ip = i + 1; ip < g.rows(); ++ip) {
      for (Index j = 0; j < g.cols(); ++j) {
        for (Index jp = j + 1; jp < g.cols(); ++jp) {
          const Scalar cycle = a(ip, j) - a(i, j) + b(ip, jp) - b(ip, j) +
                               a(i, jp) - a(ip, jp) + b(i, j) - b(i, jp);
          r.cycle_residual = std::max(r.cycle_residual, std::abs(cycle));
          if (std::abs(cycle) > threshold && r.witness.empty()) {
            r.witness = {i + 1, ip + 1, j + 1, jp + 1};
          }
        }
      }
    }
  }
  const auto d = decompose_bimatrix(g);
  r.component_residual = detail::bimatrix_norm(d.anti_potential);
  r.value = r.cycle_residual <= threshold;
  return r;
}

/// Bimatrix zero-sum criterion; differs from the potential one by the signs
/// on the b terms.
template <typename Scalar>
CriterionResult<Scalar> is_zero_sum(const BimatrixGame<Scalar>& g,
                                    const Tolerances<Scalar>& tol = {}) {
  const auto& a = g.a;
  const auto& b = g.b;
  const Scalar threshold =
      tol.classify * (Scalar(1) + detail::bimatrix_norm(g));
  CriterionResult<Scalar> r;
  for (Index i = 0; i < g.rows(); ++i) {
    for (Index ip = i + 1; ip < g.rows(); ++ip) {
      for (Index j = 0; j < g.cols(); ++j) {
        for (Index jp = j + 1; jp < g.cols(); ++jp) {
          const Scalar cycle = a(ip, j) - a(i, j) - b(ip, jp) + b(ip, j) +
                               a(i, jp) - a(ip, jp) - b(i, j) + b(i, jp);
          r.cycle_residual = std::max(r.cycle_residual, std::abs(cycle));
          if (std::abs(cycle) > threshold && r.witness.empty()) {
            r.witness = {i + 1, ip + 1, j + 1, jp + 1};
          }
        }
      }
    }
  }
  const auto d = decompose_bimatrix(g);
  r.component_residual = detail::bimatrix_norm(d.anti_zero_sum);
  r.value = r.cycle_residual <= threshold;
  return r;
}

// ---------------------------------------------------------------------------
// Stability.

template <typename Scalar = double>
struct StabilityReport {
  bool is_potential = false;
  bool is_zero_sum = false;
  bool is_null_stable = false;
  bool is_stable = false;
  bool is_strict_stable = false;
  // Eigenvalues of the anti-zero-sum part restricted to the simplex tangent
  // space (the zero eigenvalue paired with the all-ones eigenvector is
  // dropped). Ascending order.
  std::vector<Scalar> tangent_eigenvalues;
  Scalar max_criterion_residual = Scalar(0);
  std::vector<Index> witness;  // first violated zero-sum four-cycle, if any
};

namespace detail {

// Eigenvalues of a symmetric matrix with the one paired to the all-ones
// eigenvector removed; that eigenvalue is structurally zero for matrices
// with vanishing row sums.
template <typename Scalar>
std::vector<Scalar> tangent_spectrum(const MatrixX<Scalar>& s) {
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(s);
  if (solver.info() != Eigen::Success) {
    throw PreconditionError("tangent_spectrum: eigendecomposition failed", 0.0);
  }
  const Index l = s.rows();
  const VectorX<Scalar> ones =
      VectorX<Scalar>::Constant(l, Scalar(1) / std::sqrt(Scalar(l)));
  Index drop = 0;
  Scalar best = Scalar(-1);
  for (Index k = 0; k < l; ++k) {
    const Scalar overlap = std::abs(solver.eigenvectors().col(k).dot(ones));
    if (overlap > best) {
      best = overlap;
      drop = k;
    }
  }
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(l - 1));
  for (Index k = 0; k < l; ++k) {
    if (k != drop) out.push_back(solver.eigenvalues()(k));
  }
  return out;
}

}  // namespace detail

/// Full classification of a one-population game. Stability flags come from
/// the spectrum of S = anti-zero-sum part on the tangent space: stable <=>
/// all eigenvalues <= t, null-stable <=> all |eigenvalues| <= t, strictly
/// stable <=> all < -t, with t = tol.classify * (1 + |A|).
template <typename Scalar>
StabilityReport<Scalar> stability_report(const MatrixGame<Scalar>& g,
                                         const Tolerances<Scalar>& tol = {}) {
  const auto potential = is_potential(g, tol);
  const auto zero_sum = is_zero_sum(g, tol);
  const auto d = decompose_symmetric(g);

  StabilityReport<Scalar> r;
  r.is_potential = potential.value;
  r.is_zero_sum = zero_sum.value;
  r.max_criterion_residual =
      std::max(potential.cycle_residual, zero_sum.cycle_residual);
  r.witness = zero_sum.witness;
  r.tangent_eigenvalues = detail::tangent_spectrum(d.anti_zero_sum);

  // One threshold family for all three flags. S inherits rounding noise of
  // order eps * |A| from the projection, so margins must be relative to the
  // input norm; a margin relative to |S| alone would classify the noise of
  // an exactly zero-sum game by its sign.
  const Scalar threshold = tol.classify * (Scalar(1) + g.payoff.norm());
  r.is_stable = true;
  r.is_null_stable = true;
  r.is_strict_stable = !r.tangent_eigenvalues.empty();
  for (const Scalar lambda : r.tangent_eigenvalues) {
    if (lambda > threshold) r.is_stable = false;
    if (std::abs(lambda) > threshold) r.is_null_stable = false;
    if (!(lambda < -threshold)) r.is_strict_stable = false;
  }
  return r;
}

/// Bimatrix stability collapses: a bimatrix game is stable iff null-stable
/// iff zero-sum, and never strictly stable. The reported eigenvalues are
/// those of the symmetric part of the embedded range component; they come in
/// +/- pairs.
template <typename Scalar>
StabilityReport<Scalar> bimatrix_stability(const BimatrixGame<Scalar>& g,
                                           const Tolerances<Scalar>& tol = {}) {
  const auto potential = is_potential(g, tol);
  const auto zero_sum = is_zero_sum(g, tol);
  const auto d = decompose_bimatrix(g);

  StabilityReport<Scalar> r;
  r.is_potential = potential.value;
  r.is_zero_sum = zero_sum.value;
  r.is_null_stable = zero_sum.value;
  r.is_stable = zero_sum.value;
  r.is_strict_stable = false;
  r.max_criterion_residual =
      std::max(potential.cycle_residual, zero_sum.cycle_residual);
  r.witness = zero_sum.witness;

  const MatrixX<Scalar> embedded = d.anti_zero_sum.block_embedding();
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(
      ((embedded + embedded.transpose()) / Scalar(2)).eval());
  r.tangent_eigenvalues.assign(
      solver.eigenvalues().data(),
      solver.eigenvalues().data() + solver.eigenvalues().size());
  return r;
}

// ---------------------------------------------------------------------------
// Closed-form three-strategy criteria.

/// The anti-zero-sum matrix parameterized by its off-diagonal entries
/// (a, b, c); diagonal chosen so all row sums vanish.
template <typename Scalar = double>
MatrixX<Scalar> strict_stable_3_matrix(Scalar a, Scalar b, Scalar c) {
  MatrixX<Scalar> s(3, 3);
  s << -a - b, a, b,
       a, -a - c, c,
       b, c, -b - c;
  return s;
}

/// Exact three-strategy strict-stability test: 4a+b+c > 0 and ab+bc+ca > 0.
template <typename Scalar = double>
bool strict_stable_3(Scalar a, Scalar b, Scalar c) {
  return (Scalar(4) * a + b + c > Scalar(0)) &&
         (a * b + b * c + c * a > Scalar(0));
}

/// Zero-diagonal symmetric game with off-diagonal entries beta_12, beta_13,
/// beta_23.
template <typename Scalar = double>
MatrixX<Scalar> offdiag_3_matrix(Scalar b12, Scalar b13, Scalar b23) {
  MatrixX<Scalar> m(3, 3);
  m << Scalar(0), b12, b13,
       b12, Scalar(0), b23,
       b13, b23, Scalar(0);
  return m;
}

/// Strict stability of the zero-diagonal game: beta_12 > 0 and
/// (b12+b23+b13)^2 > 2 (b12^2 + b23^2 + b13^2).
template <typename Scalar = double>
bool strict_stable_offdiag_3(Scalar b12, Scalar b13, Scalar b23) {
  const Scalar sum = b12 + b23 + b13;
  return b12 > Scalar(0) &&
         sum * sum > Scalar(2) * (b12 * b12 + b23 * b23 + b13 * b13);
}

// ---------------------------------------------------------------------------
// Sign-pattern representation of anti-potential games.

/// Binary preference relation read off a +/-1/0-valued antisymmetric matrix:
/// the edge (i, j) means strategy i beats strategy j (entry +1 at (i, j)).
struct PreferenceDigraph {
  Index nodes = 0;
  std::vector<std::pair<Index, Index>> edges;  // 1-based, row-major order
};

template <typename Scalar>
PreferenceDigraph preference_digraph(const MatrixGame<Scalar>& g,
                                     const Tolerances<Scalar>& tol = {}) {
  const auto& a = g.payoff;
  const Index l = g.l();
  MatrixX<Scalar> rounded(l, l);
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < l; ++j) {
      const Scalar r = std::round(a(i, j));
      if (std::abs(a(i, j) - r) > tol.classify || std::abs(r) > Scalar(1)) {
        throw DomainError("preference_digraph: entries must be -1, 0 or +1");
      }
      rounded(i, j) = r;
    }
  }
  if ((rounded + rounded.transpose()).norm() > tol.classify) {
    throw DomainError("preference_digraph: matrix must be antisymmetric");
  }
  PreferenceDigraph d;
  d.nodes = l;
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < l; ++j) {
      if (rounded(i, j) == Scalar(1)) d.edges.emplace_back(i + 1, j + 1);
    }
  }
  return d;
}

inline std::string to_dot(const PreferenceDigraph& d) {
  std::ostringstream os;
  os << "digraph {\n";
  for (Index i = 1; i <= d.nodes; ++i) os << "  " << i << ";\n";
  for (const auto& [from, to] : d.edges) {
    os << "  " << from << " -> " << to << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace egt
