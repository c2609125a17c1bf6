// Construction of Zeeman games: one-population games with a pure-strategy
// ESS coexisting with an attracting interior fixed point. The symmetric part
// is assembled from prescribed eigenvalues and a fixed orthogonal
// eigenvector frame (rotated about the all-ones axis for l = 3), then an
// anti-potential circulation of intensity eta is added.
#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "egt/core.hpp"

namespace egt {

template <typename Scalar = double>
struct Zeeman3Params {
  Scalar alpha = Scalar(0);  // 2*alpha is an eigenvalue of the symmetric part
  Scalar beta = Scalar(0);   // 2*beta likewise
  Scalar eta = Scalar(0);    // anti-potential intensity
  Scalar theta = Scalar(0);  // eigenvector rotation angle, radians
};

template <typename Scalar = double>
struct Zeeman4Params {
  Scalar alpha = Scalar(0);
  Scalar beta = Scalar(0);
  Scalar gamma = Scalar(0);
  Scalar eta = Scalar(0);
};

enum class InteriorType { Sink, Center, Source, Indeterminate };

inline const char* to_string(InteriorType t) {
  switch (t) {
    case InteriorType::Sink: return "sink";
    case InteriorType::Center: return "center";
    case InteriorType::Source: return "source";
    default: return "indeterminate";
  }
}

template <typename Scalar = double>
struct ZeemanReport {
  std::optional<Index> ess_strategy;  // 1-based; unset when no strict pure NE
  InteriorType interior_type = InteriorType::Indeterminate;
  std::vector<std::complex<Scalar>> jacobian_eigenvalues;
};

/// Rotation of R^3 about the axis (1,1,1):
/// R = I - P + (cos(theta) I + sin(theta) N / sqrt(3)) P with N the
/// Rock-Paper-Scissors matrix. Fixes the all-ones vector and acts as a
/// planar rotation (an isometry) on the simplex tangent space.
template <typename Scalar = double>
MatrixX<Scalar> rotation_matrix(Scalar theta) {
  MatrixX<Scalar> n(3, 3);
  n << Scalar(0), Scalar(-1), Scalar(1),
       Scalar(1), Scalar(0), Scalar(-1),
       Scalar(-1), Scalar(1), Scalar(0);
  const MatrixX<Scalar> p = projection_matrix<Scalar>(3);
  const MatrixX<Scalar> i = MatrixX<Scalar>::Identity(3, 3);
  return i - p +
         (std::cos(theta) * i + std::sin(theta) / std::sqrt(Scalar(3)) * n) * p;
}

namespace detail {

template <typename Scalar>
MatrixX<Scalar> zeeman3_frame() {
  MatrixX<Scalar> e(3, 3);  // columns: (1,1,1), (1,0,-1), (1,-2,1)
  e << Scalar(1), Scalar(1), Scalar(1),
       Scalar(1), Scalar(0), Scalar(-2),
       Scalar(1), Scalar(-1), Scalar(1);
  return e;
}

template <typename Scalar>
MatrixX<Scalar> zeeman4_frame() {
  MatrixX<Scalar> e(4, 4);  // columns: (1,1,1,1), (1,0,0,-1), (1,0,-2,1), (1,-3,1,1)
  e << Scalar(1), Scalar(1), Scalar(1), Scalar(1),
       Scalar(1), Scalar(0), Scalar(0), Scalar(-3),
       Scalar(1), Scalar(0), Scalar(-2), Scalar(1),
       Scalar(1), Scalar(-1), Scalar(1), Scalar(1);
  return e;
}

template <typename Scalar>
MatrixX<Scalar> zeeman4_circulation() {
  MatrixX<Scalar> n(4, 4);
  n << Scalar(0), Scalar(1), Scalar(0), Scalar(-1),
       Scalar(-1), Scalar(0), Scalar(1), Scalar(0),
       Scalar(0), Scalar(-1), Scalar(0), Scalar(1),
       Scalar(1), Scalar(0), Scalar(-1), Scalar(0);
  return n;
}

// Full complex spectrum, ascending by real part then imaginary part.
template <typename Scalar>
std::vector<std::complex<Scalar>> spectrum(const MatrixX<Scalar>& a) {
  Eigen::EigenSolver<MatrixX<Scalar>> solver(a);
  if (solver.info() != Eigen::Success) {
    throw PreconditionError("spectrum: eigendecomposition failed", 0.0);
  }
  std::vector<std::complex<Scalar>> out(
      solver.eigenvalues().data(),
      solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
  });
  return out;
}

}  // namespace detail

/// Strict pure Nash equilibrium test at strategy s (1-based):
/// a(s,s) > a(k,s) + margin for every k != s.
template <typename Scalar>
bool is_strict_pure_nash(const MatrixGame<Scalar>& g, Index s, Scalar margin) {
  if (s < 1 || s > g.l()) {
    throw DomainError("is_strict_pure_nash: strategy index out of range");
  }
  for (Index k = 0; k < g.l(); ++k) {
    if (k == s - 1) continue;
    if (!(g.payoff(s - 1, s - 1) - g.payoff(k, s - 1) > margin)) return false;
  }
  return true;
}

/// Three-strategy Zeeman game
///   A = R (E diag(0, 2 alpha, 2 beta) E^-1) R^-1 + eta N,
/// R the rotation about (1,1,1) by theta. Row and column sums vanish; the
/// nonzero eigenvalues are (alpha+beta) +- sqrt((alpha-beta)^2 - 3 eta^2)
/// for every theta.
template <typename Scalar>
MatrixGame<Scalar> zeeman3(const Zeeman3Params<Scalar>& p) {
  const MatrixX<Scalar> e = detail::zeeman3_frame<Scalar>();
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(3, 3);
  d(1, 1) = Scalar(2) * p.alpha;
  d(2, 2) = Scalar(2) * p.beta;
  const MatrixX<Scalar> r = rotation_matrix<Scalar>(p.theta);
  MatrixX<Scalar> circulation(3, 3);
  circulation << Scalar(0), Scalar(1), Scalar(-1),
                 Scalar(-1), Scalar(0), Scalar(1),
                 Scalar(1), Scalar(-1), Scalar(0);
  const MatrixX<Scalar> a =
      r * (e * d * e.inverse()) * r.inverse() + p.eta * circulation;
  return MatrixGame<Scalar>(a);
}

/// Jacobian of the replicator field at the barycenter for games with
/// vanishing row and column sums: A / l. Throws PreconditionError carrying
/// the larger of |A 1| and |1^T A| when the hypotheses fail.
template <typename Scalar>
MatrixX<Scalar> jacobian_at_barycenter(const MatrixGame<Scalar>& g,
                                       const Tolerances<Scalar>& tol = {}) {
  const Scalar row_residual = (g.payoff * VectorX<Scalar>::Ones(g.l())).norm();
  const Scalar col_residual =
      (g.payoff.transpose() * VectorX<Scalar>::Ones(g.l())).norm();
  const Scalar worst = std::max(row_residual, col_residual);
  if (worst > tol.classify * (Scalar(1) + g.payoff.norm())) {
    throw PreconditionError(
        "jacobian_at_barycenter: game must have zero row and column sums",
        static_cast<double>(worst));
  }
  return g.payoff / Scalar(g.l());
}

template <typename Scalar>
ZeemanReport<Scalar> zeeman3_classify(const Zeeman3Params<Scalar>& p,
                                      const Tolerances<Scalar>& tol = {}) {
  const MatrixGame<Scalar> game = zeeman3(p);
  const Scalar scale = std::max(
      {Scalar(1), std::abs(p.alpha), std::abs(p.beta), std::abs(p.eta)});
  const Scalar margin = tol.classify * scale;

  ZeemanReport<Scalar> report;
  for (Index s = 1; s <= 3; ++s) {
    if (is_strict_pure_nash(game, s, margin)) {
      report.ess_strategy = s;
      break;
    }
  }

  // Complex pair iff (alpha-beta)^2 < 3 eta^2; then the common real part is
  // alpha + beta. Outside that regime the construction makes no claim.
  const Scalar disc = (p.alpha - p.beta) * (p.alpha - p.beta) -
                      Scalar(3) * p.eta * p.eta;
  if (disc < -tol.classify * scale * scale) {
    const Scalar trace_half = p.alpha + p.beta;
    if (trace_half < -margin) {
      report.interior_type = InteriorType::Sink;
    } else if (trace_half > margin) {
      report.interior_type = InteriorType::Source;
    } else {
      report.interior_type = InteriorType::Center;
    }
  } else {
    report.interior_type = InteriorType::Indeterminate;
  }

  report.jacobian_eigenvalues =
      detail::spectrum<Scalar>(game.payoff / Scalar(3));
  return report;
}

/// Four-strategy Zeeman game A = E diag(0, alpha, beta, gamma) E^-1 + eta N4
/// with the fixed orthogonal frame E and the 4-cycle circulation N4.
/// Characteristic polynomial:
///   t (t^3 - (a+b+g) t^2 + (ab+bg+ga+4 eta^2) t - abg - (6a+2b+4g) eta^2 / 3).
template <typename Scalar>
MatrixGame<Scalar> zeeman4(const Zeeman4Params<Scalar>& p) {
  const MatrixX<Scalar> e = detail::zeeman4_frame<Scalar>();
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(4, 4);
  d(1, 1) = p.alpha;
  d(2, 2) = p.beta;
  d(3, 3) = p.gamma;
  const MatrixX<Scalar> a =
      e * d * e.inverse() + p.eta * detail::zeeman4_circulation<Scalar>();
  return MatrixGame<Scalar>(a);
}

template <typename Scalar>
ZeemanReport<Scalar> zeeman4_classify(const Zeeman4Params<Scalar>& p,
                                      const Tolerances<Scalar>& tol = {}) {
  const MatrixGame<Scalar> game = zeeman4(p);
  const Scalar scale =
      std::max({Scalar(1), std::abs(p.alpha), std::abs(p.beta),
                std::abs(p.gamma), std::abs(p.eta)});
  const Scalar margin = tol.classify * scale;

  ZeemanReport<Scalar> report;
  for (Index s = 1; s <= 4; ++s) {
    if (is_strict_pure_nash(game, s, margin)) {
      report.ess_strategy = s;
      break;
    }
  }

  // Routh-Hurwitz on the cubic factor of the characteristic polynomial;
  // margins are scaled by parameter magnitude to the degree of each form.
  const Scalar m1 = tol.classify * scale;
  const Scalar m2 = tol.classify * scale * scale;
  const Scalar m3 = tol.classify * scale * scale * scale;
  const Scalar sum = p.alpha + p.beta + p.gamma;
  const Scalar pairs = p.alpha * p.beta + p.beta * p.gamma +
                       p.gamma * p.alpha + Scalar(4) * p.eta * p.eta;
  const Scalar triple = p.alpha * p.beta * p.gamma +
                        (Scalar(6) * p.alpha + Scalar(2) * p.beta +
                         Scalar(4) * p.gamma) *
                            p.eta * p.eta / Scalar(3);
  const bool sink = (sum < -m1) && (pairs > m2) && (triple < -m3) &&
                    (triple - sum * pairs > m3);

  report.jacobian_eigenvalues =
      detail::spectrum<Scalar>(game.payoff / Scalar(4));

  if (sink) {
    report.interior_type = InteriorType::Sink;
  } else {
    // Fall back to the numeric spectrum; the eigenvalue paired with the
    // all-ones eigenvector is the structural zero, drop the one nearest it.
    auto eigs = detail::spectrum<Scalar>(game.payoff);
    Index zero_at = 0;
    Scalar best = std::numeric_limits<Scalar>::max();
    for (std::size_t k = 0; k < eigs.size(); ++k) {
      if (std::abs(eigs[k]) < best) {
        best = std::abs(eigs[k]);
        zero_at = static_cast<Index>(k);
      }
    }
    Scalar max_re = -std::numeric_limits<Scalar>::max();
    for (std::size_t k = 0; k < eigs.size(); ++k) {
      if (static_cast<Index>(k) == zero_at) continue;
      max_re = std::max(max_re, eigs[k].real());
    }
    if (max_re > margin) {
      report.interior_type = InteriorType::Source;
    } else if (max_re >= -margin) {
      report.interior_type = InteriorType::Center;
    } else {
      report.interior_type = InteriorType::Indeterminate;
    }
  }
  return report;
}

}  // namespace egt
