// Core value types for finite normal-form games, the trace inner product,
// and the simplex projection matrix shared by every other header.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace egt {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// Errors. Validation problems (shapes, indices, malformed inputs) and numeric
// precondition failures are kept distinct so callers can map them to
// different exit codes.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// Carries the measured residual that violated a numeric precondition.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0;
};

class NotSymmetricError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class IntegrationError : public PreconditionError {
 public:
  IntegrationError(const std::string& what, double residual, double last_time,
                   std::vector<double> last_state)
      : PreconditionError(what, residual),
        last_time_(last_time),
        last_state_(std::move(last_state)) {}
  double last_time() const { return last_time_; }
  const std::vector<double>& last_state() const { return last_state_; }

 private:
  double last_time_ = 0;
  std::vector<double> last_state_;
};

namespace detail {

inline std::string shape_string(Index rows, Index cols) {
  std::ostringstream os;
  os << rows << "x" << cols;
  return os.str();
}

template <typename DerivedA, typename DerivedB>
void require_same_shape(const Eigen::MatrixBase<DerivedA>& a,
                        const Eigen::MatrixBase<DerivedB>& b,
                        const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(where) + ": shape mismatch (" +
                         shape_string(a.rows(), a.cols()) + " vs " +
                         shape_string(b.rows(), b.cols()) + ")");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tolerances. `abs` guards exact reconstructions, `rel` guards comparisons
// between nonzero quantities, `classify` thresholds criterion residuals
// relative to the game norm.

template <typename Scalar = double>
struct Tolerances {
  Scalar abs = Scalar(1e-12);
  Scalar rel = Scalar(1e-9);
  Scalar classify = Scalar(1e-9);

  void ensure_valid() const {
    if (!(abs > Scalar(0)) || !(rel > Scalar(0)) || !(classify > Scalar(0))) {
      throw DomainError("tolerances: all fields must be strictly positive");
    }
  }
};

// Frobenius distance test against abs + rel * norm; the uniform equality
// contract for games and components.
template <typename DerivedA, typename DerivedB, typename Scalar>
bool near(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b, const Tolerances<Scalar>& tol) {
  detail::require_same_shape(a, b, "near");
  const Scalar scale = std::max(a.norm(), b.norm());
  return (a - b).norm() <= tol.abs + tol.rel * scale;
}

// ---------------------------------------------------------------------------
// Inner products.

/// Trace inner product <A,B> = tr(A^T B) = sum of entrywise products.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner_product(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_same_shape(a, b, "inner_product");
  return (a.derived().array() * b.derived().array()).sum();
}

// ---------------------------------------------------------------------------
// Simplex projection.

/// Orthogonal projection onto the tangent space of the unit simplex,
/// P = I - (1/l) 11^T. Satisfies P = P^T, P^2 = P, P1 = 0.
template <typename Scalar = double>
MatrixX<Scalar> projection_matrix(Index l) {
  if (l < 1) throw DomainError("projection_matrix: l must be >= 1");
  return MatrixX<Scalar>::Identity(l, l) -
         MatrixX<Scalar>::Constant(l, l, Scalar(1) / Scalar(l));
}

// ---------------------------------------------------------------------------
// Game value types. Pure values: freely copyable, no shared state.

/// One-population game: a single l x l payoff matrix (row = own strategy).
template <typename Scalar = double>
struct MatrixGame {
  MatrixX<Scalar> payoff;

  MatrixGame() = default;
  explicit MatrixGame(MatrixX<Scalar> m) : payoff(std::move(m)) {
    if (payoff.rows() != payoff.cols() || payoff.rows() < 2) {
      throw DimensionError("matrix game: payoff must be square with l >= 2, got " +
                           detail::shape_string(payoff.rows(), payoff.cols()));
    }
    if (!payoff.allFinite()) {
      throw DomainError("matrix game: payoff entries must be finite");
    }
  }

  Index l() const { return payoff.rows(); }
};

/// Two-population game: payoff pair (a, b), both l_r x l_c. Row player
/// receives a(i,j), column player b(i,j).
template <typename Scalar = double>
struct BimatrixGame {
  MatrixX<Scalar> a;
  MatrixX<Scalar> b;

  BimatrixGame() = default;
  BimatrixGame(MatrixX<Scalar> a_in, MatrixX<Scalar> b_in)
      : a(std::move(a_in)), b(std::move(b_in)) {
    detail::require_same_shape(a, b, "bimatrix game");
    if (a.rows() < 2 || a.cols() < 2) {
      throw DimensionError("bimatrix game: needs l_r >= 2 and l_c >= 2, got " +
                           detail::shape_string(a.rows(), a.cols()));
    }
    if (!a.allFinite() || !b.allFinite()) {
      throw DomainError("bimatrix game: payoff entries must be finite");
    }
  }

  Index rows() const { return a.rows(); }
  Index cols() const { return a.cols(); }

  /// View as the (l_r+l_c) x (l_r+l_c) matrix [[0, A], [B^T, 0]].
  MatrixX<Scalar> block_embedding() const {
    const Index lr = rows(), lc = cols();
    MatrixX<Scalar> m = MatrixX<Scalar>::Zero(lr + lc, lr + lc);
    m.topRightCorner(lr, lc) = a;
    m.bottomLeftCorner(lc, lr) = b.transpose();
    return m;
  }
};

/// <(A,B),(C,D)> = <A,C> + <B,D>; equals the trace form on block embeddings.
template <typename Scalar>
Scalar bimatrix_inner_product(const BimatrixGame<Scalar>& g1,
                              const BimatrixGame<Scalar>& g2) {
  detail::require_same_shape(g1.a, g2.a, "bimatrix_inner_product");
  return inner_product(g1.a, g2.a) + inner_product(g1.b, g2.b);
}

// ---------------------------------------------------------------------------
// Decomposition results.

/// The three orthogonal components of a one-population game:
/// anti_zero_sum (symmetric, zero row/col sums), anti_potential
/// (antisymmetric, zero row/col sums), and the kernel of A -> PAP.
template <typename Scalar = double>
struct Decomposition {
  MatrixX<Scalar> anti_zero_sum;
  MatrixX<Scalar> kernel;
  MatrixX<Scalar> anti_potential;
  Scalar residual = Scalar(0);  // frobenius norm of input minus sum of parts
};

/// Same split for bimatrix games; components are stored as payoff pairs.
template <typename Scalar = double>
struct BimatrixDecomposition {
  BimatrixGame<Scalar> anti_zero_sum;
  BimatrixGame<Scalar> kernel;
  BimatrixGame<Scalar> anti_potential;
  Scalar residual = Scalar(0);
};

}  // namespace egt
