// Replicator dynamics: field evaluation for one and two populations, the
// potential / monotonic / conservative field split induced by the game
// decomposition, fixed-step RK4 integration on the simplex, the logarithmic
// integral H(x) = sum log x_i, and the closed-form simplex divergence.
#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "egt/decompose.hpp"

namespace egt {

// ---------------------------------------------------------------------------
// Simplex points.

template <typename Scalar = double>
struct SimplexPoint {
  VectorX<Scalar> x;

  /// Validates nonnegativity (within tol.abs) and unit sum (within
  /// tol.abs + tol.rel); tiny negative entries are clamped to zero.
  static SimplexPoint checked(VectorX<Scalar> v,
                              const Tolerances<Scalar>& tol = {}) {
    if (v.size() < 1) throw DomainError("simplex point: empty vector");
    if (!v.allFinite()) throw DomainError("simplex point: entries must be finite");
    if (v.minCoeff() < -tol.abs) {
      throw DomainError("simplex point: negative coordinate");
    }
    if (std::abs(v.sum() - Scalar(1)) > tol.abs + tol.rel) {
      throw DomainError("simplex point: coordinates must sum to 1");
    }
    v = v.cwiseMax(Scalar(0));
    return SimplexPoint{std::move(v)};
  }

  static SimplexPoint barycenter(Index l) {
    return SimplexPoint{VectorX<Scalar>::Constant(l, Scalar(1) / Scalar(l))};
  }

  static SimplexPoint vertex(Index l, Index i) {  // 1-based strategy index
    if (i < 1 || i > l) throw DomainError("simplex vertex: index out of range");
    VectorX<Scalar> v = VectorX<Scalar>::Zero(l);
    v(i - 1) = Scalar(1);
    return SimplexPoint{std::move(v)};
  }

  Index size() const { return x.size(); }
  bool interior() const { return x.size() > 0 && x.minCoeff() > Scalar(0); }
};

namespace detail {

// Raw field evaluation, valid for any x (polynomial in x). Callers are
// responsible for simplex validation.
template <typename Scalar>
VectorX<Scalar> replicator_raw(const MatrixX<Scalar>& a,
                               const VectorX<Scalar>& x) {
  const VectorX<Scalar> ax = a * x;
  const Scalar mean = x.dot(ax);
  return x.array() * (ax.array() - mean);
}

template <typename Scalar>
void require_matching_point(const MatrixX<Scalar>& a,
                            const SimplexPoint<Scalar>& x, const char* where) {
  if (x.size() != a.rows()) {
    throw DimensionError(std::string(where) + ": point length " +
                         std::to_string(x.size()) + " does not match game size " +
                         std::to_string(a.rows()));
  }
}

}  // namespace detail

/// One-population replicator field xdot_i = x_i ((Ax)_i - x^T A x).
/// The result is tangent: its coordinates sum to zero.
template <typename Scalar>
VectorX<Scalar> replicator_field(const MatrixGame<Scalar>& g,
                                 const SimplexPoint<Scalar>& x) {
  detail::require_matching_point(g.payoff, x, "replicator_field");
  return detail::replicator_raw(g.payoff, x.x);
}

/// Two-population field: xdot_i = x_i ((Ay)_i - x^T A y) and
/// ydot_j = y_j ((B^T x)_j - y^T B^T x).
template <typename Scalar>
std::pair<VectorX<Scalar>, VectorX<Scalar>> replicator_field_bimatrix(
    const BimatrixGame<Scalar>& g, const SimplexPoint<Scalar>& x,
    const SimplexPoint<Scalar>& y) {
  if (x.size() != g.rows() || y.size() != g.cols()) {
    throw DimensionError("replicator_field_bimatrix: point lengths do not match game shape");
  }
  const VectorX<Scalar> ay = g.a * y.x;
  const VectorX<Scalar> btx = g.b.transpose() * x.x;
  VectorX<Scalar> xdot = x.x.array() * (ay.array() - x.x.dot(ay));
  VectorX<Scalar> ydot = y.x.array() * (btx.array() - y.x.dot(btx));
  return {std::move(xdot), std::move(ydot)};
}

// ---------------------------------------------------------------------------
// Field split.

/// Replicator field of A written as the field of S (gradient-like part),
/// of the constant game G = sum eta_i E_eta^(i) (monotone part, eta_1 = 0),
/// and of N (circulating part). The parts sum to the field of the
/// passive-stripped game; passive games contribute a generally nonzero field
/// of their own, which is exactly what stripping removes.
template <typename Scalar = double>
struct FieldSplit {
  VectorX<Scalar> potential_part;
  VectorX<Scalar> monotonic_part;
  VectorX<Scalar> conservative_part;
};

namespace detail {

// Row levels of the constant-game part of the kernel component, normalized
// so eta_1 = 0. The discarded remainder is column-constant, i.e. passive.
template <typename Scalar>
VectorX<Scalar> constant_levels(const MatrixX<Scalar>& kernel_component,
                                const Tolerances<Scalar>& tol) {
  const auto split = kernel_split(kernel_component, tol);
  const MatrixX<Scalar> row_constant = split.constant_part + split.offset;
  VectorX<Scalar> eta = row_constant.col(0);
  eta.array() -= eta(0);
  return eta;
}

}  // namespace detail

/// A minus its passive component: the game S + N + sum eta_i E_eta^(i) whose
/// replicator field equals the sum of the three split parts.
template <typename Scalar>
MatrixGame<Scalar> strip_passive(const MatrixGame<Scalar>& g,
                                 const Tolerances<Scalar>& tol = {}) {
  const auto d = decompose_symmetric(g);
  const VectorX<Scalar> eta = detail::constant_levels(d.kernel, tol);
  const MatrixX<Scalar> constant_game =
      eta * VectorX<Scalar>::Ones(g.l()).transpose();
  return MatrixGame<Scalar>(d.anti_zero_sum + d.anti_potential + constant_game);
}

template <typename Scalar>
FieldSplit<Scalar> field_split(const MatrixGame<Scalar>& g,
                               const SimplexPoint<Scalar>& x,
                               const Tolerances<Scalar>& tol = {}) {
  detail::require_matching_point(g.payoff, x, "field_split");
  const auto d = decompose_symmetric(g);
  const VectorX<Scalar> eta = detail::constant_levels(d.kernel, tol);

  FieldSplit<Scalar> s;
  s.potential_part = detail::replicator_raw(d.anti_zero_sum, x.x);
  s.monotonic_part = x.x.array() * (eta.array() - x.x.dot(eta));
  // x^T N x = 0 for antisymmetric N, so x_i (Nx)_i is already the field of N.
  s.conservative_part = x.x.array() * (d.anti_potential * x.x).array();
  return s;
}

// ---------------------------------------------------------------------------
// Trajectories.

/// States sampled at uniform times. For two-population runs each state is
/// the concatenation (x; y) and dim_y > 0. invariant_values carries
/// H = sum log x_i (both populations for bimatrix runs) when tracking is
/// requested; H is NaN on the boundary.
template <typename Scalar = double>
struct Trajectory {
  std::vector<Scalar> times;
  std::vector<VectorX<Scalar>> states;
  std::vector<Scalar> invariant_values;
  Index dim_x = 0;
  Index dim_y = 0;  // zero for one-population runs
};

namespace detail {

template <typename Scalar>
Scalar log_integral(const VectorX<Scalar>& state) {
  if (state.minCoeff() <= Scalar(0)) {
    return std::numeric_limits<Scalar>::quiet_NaN();
  }
  return state.array().log().sum();
}

// One RK4 step of the coupled state under `field`, then renormalization of
// each population block back onto its simplex. Coordinates below -tol.abs
// abort the run; smaller undershoots are clamped to zero.
template <typename Scalar, typename Field>
void rk4_run(VectorX<Scalar> state, Scalar t_end, Scalar h, bool track,
             const std::vector<std::pair<Index, Index>>& blocks, Field field,
             Trajectory<Scalar>& out, const Tolerances<Scalar>& tol) {
  if (!(h > Scalar(0)) || !(t_end > Scalar(0))) {
    throw DomainError("integrate: t_end and step must be positive");
  }
  const auto steps = static_cast<long long>(std::llround(t_end / h));
  if (steps < 1) throw DomainError("integrate: t_end shorter than one step");

  const auto record = [&](Scalar t, const VectorX<Scalar>& s) {
    out.times.push_back(t);
    out.states.push_back(s);
    if (track) out.invariant_values.push_back(log_integral(s));
  };
  record(Scalar(0), state);

  for (long long k = 1; k <= steps; ++k) {
    const VectorX<Scalar> k1 = field(state);
    const VectorX<Scalar> k2 = field(state + (h / Scalar(2)) * k1);
    const VectorX<Scalar> k3 = field(state + (h / Scalar(2)) * k2);
    const VectorX<Scalar> k4 = field(state + h * k3);
    state += (h / Scalar(6)) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);

    for (const auto& [offset, len] : blocks) {
      auto block = state.segment(offset, len);
      const Scalar lowest = block.minCoeff();
      if (lowest < -tol.abs) {
        const auto& last = out.states.back();
        throw IntegrationError(
            "integrate: state left the simplex",
            static_cast<double>(-lowest),
            static_cast<double>(out.times.back()),
            std::vector<double>(last.data(), last.data() + last.size()));
      }
      block = block.cwiseMax(Scalar(0));
      block /= block.sum();
    }
    record(Scalar(k) * h, state);
  }
}

}  // namespace detail

/// Classical fixed-step RK4 for the one-population dynamics; records every
/// step. States are renormalized onto the simplex after each step.
template <typename Scalar>
Trajectory<Scalar> integrate(const MatrixGame<Scalar>& g,
                             const SimplexPoint<Scalar>& x0, Scalar t_end,
                             Scalar h, bool track_invariant = false,
                             const Tolerances<Scalar>& tol = {}) {
  detail::require_matching_point(g.payoff, x0, "integrate");
  Trajectory<Scalar> out;
  out.dim_x = g.l();
  detail::rk4_run<Scalar>(
      x0.x, t_end, h, track_invariant, {{Index(0), g.l()}},
      [&](const VectorX<Scalar>& s) {
        return detail::replicator_raw(g.payoff, s);
      },
      out, tol);
  return out;
}

/// Two-population RK4; the integrated state is the concatenation (x; y).
template <typename Scalar>
Trajectory<Scalar> integrate_bimatrix(const BimatrixGame<Scalar>& g,
                                      const SimplexPoint<Scalar>& x0,
                                      const SimplexPoint<Scalar>& y0,
                                      Scalar t_end, Scalar h,
                                      bool track_invariant = false,
                                      const Tolerances<Scalar>& tol = {}) {
  if (x0.size() != g.rows() || y0.size() != g.cols()) {
    throw DimensionError("integrate_bimatrix: start points do not match game shape");
  }
  const Index lr = g.rows(), lc = g.cols();
  VectorX<Scalar> state(lr + lc);
  state << x0.x, y0.x;
  Trajectory<Scalar> out;
  out.dim_x = lr;
  out.dim_y = lc;
  detail::rk4_run<Scalar>(
      state, t_end, h, track_invariant, {{Index(0), lr}, {lr, lc}},
      [&](const VectorX<Scalar>& s) {
        const VectorX<Scalar> x = s.head(lr);
        const VectorX<Scalar> y = s.tail(lc);
        const VectorX<Scalar> ay = g.a * y;
        const VectorX<Scalar> btx = g.b.transpose() * x;
        VectorX<Scalar> ds(lr + lc);
        ds.head(lr) = x.array() * (ay.array() - x.dot(ay));
        ds.tail(lc) = y.array() * (btx.array() - y.dot(btx));
        return ds;
      },
      out, tol);
  return out;
}

// ---------------------------------------------------------------------------
// Conservation diagnostics.

/// Derivative of H(x) = sum log x_i along the flow:
/// LH = sum_i (Ax)_i - l * x^T A x. Positive everywhere off the barycenter
/// for games built from K matrices with positive weights plus any
/// anti-potential part; identically zero for anti-potential games.
template <typename Scalar>
Scalar lyapunov_derivative(const MatrixGame<Scalar>& g,
                           const SimplexPoint<Scalar>& x) {
  detail::require_matching_point(g.payoff, x, "lyapunov_derivative");
  if (!x.interior()) {
    throw DomainError("lyapunov_derivative: point must be interior (log undefined)");
  }
  const VectorX<Scalar> ax = g.payoff * x.x;
  return ax.sum() - Scalar(g.l()) * x.x.dot(ax);
}

/// Divergence of the replicator field in the simplex coordinates
/// (x_2, ..., x_l):
/// div = sum_k (Ax)_k - l <x,Ax> + sum_k x_k a_kk - <x, A^T x>.
/// Vanishes identically for anti-potential games.
template <typename Scalar>
Scalar divergence(const MatrixGame<Scalar>& g, const SimplexPoint<Scalar>& x) {
  detail::require_matching_point(g.payoff, x, "divergence");
  const VectorX<Scalar> ax = g.payoff * x.x;
  const VectorX<Scalar> atx = g.payoff.transpose() * x.x;
  return ax.sum() - Scalar(g.l()) * x.x.dot(ax) +
         x.x.dot(g.payoff.diagonal()) - x.x.dot(atx);
}

/// Two-population divergence:
/// div = sum_i (Ay)_i - l_r <x,Ay> + sum_j (B^T x)_j - l_c <y,B^T x>.
template <typename Scalar>
Scalar divergence_bimatrix(const BimatrixGame<Scalar>& g,
                           const SimplexPoint<Scalar>& x,
                           const SimplexPoint<Scalar>& y) {
  if (x.size() != g.rows() || y.size() != g.cols()) {
    throw DimensionError("divergence_bimatrix: point lengths do not match game shape");
  }
  const VectorX<Scalar> ay = g.a * y.x;
  const VectorX<Scalar> btx = g.b.transpose() * x.x;
  return ay.sum() - Scalar(g.rows()) * x.x.dot(ay) + btx.sum() -
         Scalar(g.cols()) * y.x.dot(btx);
}

}  // namespace egt
