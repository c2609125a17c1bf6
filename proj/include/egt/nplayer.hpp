// n-player games with a common strategy set: dense payoff tensors, subspace
// dimension formulas, the explicit small bases (three-player anti-potential
// games, anti-zero-sum product tensors), exact zero-sum detection with a
// constructive pairwise witness, and projection-based decomposition for
// small (n, l).
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "egt/core.hpp"

namespace egt {

namespace detail {

inline long long checked_power(Index base, Index exp) {
  long long r = 1;
  for (Index k = 0; k < exp; ++k) {
    if (r > (1LL << 50) / base) {
      throw DomainError("tensor size overflows the supported range");
    }
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Hard guard for dense enumeration: all tensor constructions below require
/// l^n <= kTensorEntryGuard.
inline constexpr long long kTensorEntryGuard = 4096;

/// An n-player game: one payoff tensor per player, each of shape l^n, stored
/// flat with player 1's strategy index varying fastest. Strategy profiles
/// are 1-based.
template <typename Scalar = double>
struct TensorGame {
  Index players = 0;
  Index strategies = 0;
  std::vector<VectorX<Scalar>> payoffs;

  TensorGame() = default;

  static TensorGame zeros(Index n, Index l) {
    if (n < 2 || l < 2) {
      throw DomainError("tensor game: needs n >= 2 players and l >= 2 strategies");
    }
    const long long entries = detail::checked_power(l, n);
    TensorGame g;
    g.players = n;
    g.strategies = l;
    g.payoffs.assign(static_cast<std::size_t>(n),
                     VectorX<Scalar>::Zero(static_cast<Index>(entries)));
    return g;
  }

  Index entries() const { return payoffs.empty() ? 0 : payoffs.front().size(); }

  Index flat(const std::vector<Index>& profile) const {
    if (static_cast<Index>(profile.size()) != players) {
      throw DimensionError("tensor game: profile length must equal player count");
    }
    Index f = 0;
    Index stride = 1;
    for (Index p = 0; p < players; ++p) {
      const Index i = profile[static_cast<std::size_t>(p)];
      if (i < 1 || i > strategies) {
        throw DomainError("tensor game: strategy index out of range");
      }
      f += (i - 1) * stride;
      stride *= strategies;
    }
    return f;
  }

  Scalar at(Index player, const std::vector<Index>& profile) const {
    return payoffs[static_cast<std::size_t>(player - 1)](flat(profile));
  }

  void set(Index player, const std::vector<Index>& profile, Scalar value) {
    payoffs[static_cast<std::size_t>(player - 1)](flat(profile)) = value;
  }

  /// All payoff tensors concatenated player by player.
  VectorX<Scalar> vectorized() const {
    VectorX<Scalar> v(players * entries());
    for (Index p = 0; p < players; ++p) {
      v.segment(p * entries(), entries()) =
          payoffs[static_cast<std::size_t>(p)];
    }
    return v;
  }

  static TensorGame from_vectorized(Index n, Index l,
                                    const VectorX<Scalar>& v) {
    TensorGame g = zeros(n, l);
    if (v.size() != n * g.entries()) {
      throw DimensionError("tensor game: vectorized length mismatch");
    }
    for (Index p = 0; p < n; ++p) {
      g.payoffs[static_cast<std::size_t>(p)] =
          v.segment(p * g.entries(), g.entries());
    }
    return g;
  }

  Scalar norm() const { return vectorized().norm(); }

  TensorGame& operator+=(const TensorGame& o) {
    for (std::size_t p = 0; p < payoffs.size(); ++p) payoffs[p] += o.payoffs[p];
    return *this;
  }
  TensorGame& operator-=(const TensorGame& o) {
    for (std::size_t p = 0; p < payoffs.size(); ++p) payoffs[p] -= o.payoffs[p];
    return *this;
  }
  TensorGame& operator*=(Scalar c) {
    for (auto& t : payoffs) t *= c;
    return *this;
  }
  friend TensorGame operator+(TensorGame a, const TensorGame& b) { return a += b; }
  friend TensorGame operator-(TensorGame a, const TensorGame& b) { return a -= b; }
  friend TensorGame operator*(Scalar c, TensorGame a) { return a *= c; }
};

namespace detail {

template <typename Scalar>
void require_same_tensor_shape(const TensorGame<Scalar>& a,
                               const TensorGame<Scalar>& b, const char* where) {
  if (a.players != b.players || a.strategies != b.strategies) {
    throw DimensionError(std::string(where) + ": tensor games differ in shape");
  }
}

// Odometer over 1-based strategy profiles; returns false after the last one.
inline bool next_profile(std::vector<Index>& profile, Index l) {
  for (auto& i : profile) {
    if (i < l) {
      ++i;
      return true;
    }
    i = 1;
  }
  return false;
}

inline void require_tensor_guard(Index n, Index l, const char* where) {
  if (checked_power(l, n) > kTensorEntryGuard) {
    throw CapacityError(std::string(where) + ": l^n exceeds the dense-enumeration guard of " +
                        std::to_string(kTensorEntryGuard));
  }
}

}  // namespace detail

/// Sum over players of the entrywise tensor products.
template <typename Scalar>
Scalar tensor_inner_product(const TensorGame<Scalar>& g1,
                            const TensorGame<Scalar>& g2) {
  detail::require_same_tensor_shape(g1, g2, "tensor_inner_product");
  Scalar total = Scalar(0);
  for (std::size_t p = 0; p < g1.payoffs.size(); ++p) {
    total += g1.payoffs[p].dot(g2.payoffs[p]);
  }
  return total;
}

/// dim(M_n) = l^n - 1 + n l^(n-1): identical-payoff games plus passive
/// games, minus their one-dimensional overlap.
inline long long potential_dims(Index n, Index l) {
  if (n < 2 || l < 2) throw DomainError("potential_dims: needs n >= 2 and l >= 2");
  const long long ln = detail::checked_power(l, n);
  return ln - 1 + n * (ln / l);
}

/// dim(M_n-perp) = n l^n - dim(M_n). Satisfies the recursion
/// dim(M_{n+1}-perp) = (l-1)^2 n l^(n-1) + dim(M_n-perp).
inline long long anti_potential_dims(Index n, Index l) {
  if (n < 2 || l < 2) {
    throw DomainError("anti_potential_dims: needs n >= 2 and l >= 2");
  }
  return n * detail::checked_power(l, n) - potential_dims(n, l);
}

/// dim(N_n-perp) = (l-1)^n.
inline long long anti_zero_sum_dims(Index n, Index l) {
  if (n < 2 || l < 2) {
    throw DomainError("anti_zero_sum_dims: needs n >= 2 and l >= 2");
  }
  return detail::checked_power(l - 1, n);
}

// ---------------------------------------------------------------------------
// Explicit generators.

/// Passive game for player q: payoff 1 for q at every own strategy whenever
/// the other players play `others` (1-based, length n-1, ordered by player
/// skipping q); zero for everyone else.
template <typename Scalar = double>
TensorGame<Scalar> passive_tensor(Index n, Index l, Index q,
                                  const std::vector<Index>& others) {
  if (static_cast<Index>(others.size()) != n - 1) {
    throw DimensionError("passive_tensor: others profile must have n-1 entries");
  }
  TensorGame<Scalar> g = TensorGame<Scalar>::zeros(n, l);
  std::vector<Index> profile(static_cast<std::size_t>(n));
  std::size_t o = 0;
  for (Index p = 1; p <= n; ++p) {
    if (p != q) profile[static_cast<std::size_t>(p - 1)] = others[o++];
  }
  for (Index i = 1; i <= l; ++i) {
    profile[static_cast<std::size_t>(q - 1)] = i;
    g.set(q, profile, Scalar(1));
  }
  return g;
}

/// Spanning set of the potential subspace: identical-payoff unit tensors
/// (one per strategy profile) plus every passive game. Not independent;
/// rank is potential_dims(n, l).
template <typename Scalar = double>
std::vector<TensorGame<Scalar>> potential_generators(Index n, Index l) {
  detail::require_tensor_guard(n, l, "potential_generators");
  std::vector<TensorGame<Scalar>> out;
  std::vector<Index> profile(static_cast<std::size_t>(n), 1);
  do {
    TensorGame<Scalar> g = TensorGame<Scalar>::zeros(n, l);
    for (Index p = 1; p <= n; ++p) g.set(p, profile, Scalar(1));
    out.push_back(std::move(g));
  } while (detail::next_profile(profile, l));

  std::vector<Index> others(static_cast<std::size_t>(n - 1), 1);
  for (Index q = 1; q <= n; ++q) {
    std::fill(others.begin(), others.end(), Index(1));
    do {
      out.push_back(passive_tensor<Scalar>(n, l, q, others));
    } while (detail::next_profile(others, l));
  }
  return out;
}

namespace detail {

// Matching Pennies embedded in a three-player two-strategy game: players
// `first` and `second` play MP (first wins on a match) while the remaining
// player sits at `spectator_strategy` with payoff zero.
template <typename Scalar>
TensorGame<Scalar> mp3_embed(Index first, Index second, Index spectator,
                             Index spectator_strategy) {
  TensorGame<Scalar> g = TensorGame<Scalar>::zeros(3, 2);
  std::vector<Index> profile(3);
  profile[static_cast<std::size_t>(spectator - 1)] = spectator_strategy;
  for (Index i = 1; i <= 2; ++i) {
    for (Index j = 1; j <= 2; ++j) {
      profile[static_cast<std::size_t>(first - 1)] = i;
      profile[static_cast<std::size_t>(second - 1)] = j;
      const Scalar mp = (i == j) ? Scalar(-1) : Scalar(1);
      g.set(first, profile, mp);
      g.set(second, profile, -mp);
    }
  }
  return g;
}

}  // namespace detail

/// The five three-player two-strategy anti-potential basis games: the pair
/// playing Matching Pennies and the strategy pinned for the third player
/// run through (1,2 | 3 at 1), (1,3 | 2 at 1), (1,3 | 2 at 2),
/// (2,3 | 1 at 1), (2,3 | 1 at 2).
template <typename Scalar = double>
std::vector<TensorGame<Scalar>> three_player_anti_potential_basis() {
  return {detail::mp3_embed<Scalar>(1, 2, 3, 1),
          detail::mp3_embed<Scalar>(1, 3, 2, 1),
          detail::mp3_embed<Scalar>(1, 3, 2, 2),
          detail::mp3_embed<Scalar>(2, 3, 1, 1),
          detail::mp3_embed<Scalar>(2, 3, 1, 2)};
}

// ---------------------------------------------------------------------------
// Zero-sum structure.

/// One term of the pairwise witness: player_a receives `tensor`, player_b
/// receives its negative, everyone else zero.
template <typename Scalar = double>
struct ZeroSumPair {
  Index player_a = 0;
  Index player_b = 0;
  VectorX<Scalar> tensor;
};

template <typename Scalar = double>
struct ZeroSumCheck {
  bool value = false;
  Scalar max_profile_residual = Scalar(0);
  // Present exactly when value is true; summing the embedded pairs
  // reconstructs the game.
  std::vector<ZeroSumPair<Scalar>> witness;
};

/// Exact zero-sum test: at every strategy profile the players' payoffs sum
/// to zero. When they do, the game is a sum of pairwise (Z, -Z) tensors;
/// the witness uses the pairs (1, k) with Z = -A_k, k = 2..n.
template <typename Scalar>
ZeroSumCheck<Scalar> is_exact_zero_sum_tensor(const TensorGame<Scalar>& g,
                                              const Tolerances<Scalar>& tol = {}) {
  ZeroSumCheck<Scalar> check;
  VectorX<Scalar> profile_sums = VectorX<Scalar>::Zero(g.entries());
  Scalar largest_entry = Scalar(0);
  for (const auto& t : g.payoffs) {
    profile_sums += t;
    largest_entry = std::max(largest_entry, t.template lpNorm<Eigen::Infinity>());
  }
  check.max_profile_residual =
      profile_sums.template lpNorm<Eigen::Infinity>();
  check.value =
      check.max_profile_residual <= tol.classify * (Scalar(1) + largest_entry);
  if (check.value) {
    for (Index k = 2; k <= g.players; ++k) {
      check.witness.push_back(
          {Index(1), k, -g.payoffs[static_cast<std::size_t>(k - 1)]});
    }
  }
  return check;
}

/// Embed a witness pair back into a full tensor game.
template <typename Scalar>
TensorGame<Scalar> embed_zero_sum_pair(Index n, Index l,
                                       const ZeroSumPair<Scalar>& pair) {
  TensorGame<Scalar> g = TensorGame<Scalar>::zeros(n, l);
  g.payoffs[static_cast<std::size_t>(pair.player_a - 1)] = pair.tensor;
  g.payoffs[static_cast<std::size_t>(pair.player_b - 1)] = -pair.tensor;
  return g;
}

/// Basis of the anti-zero-sum subspace: for every profile with all entries
/// >= 2, the sign tensor -(e_1 - e_{i_1}) x ... x (e_1 - e_{i_n}) assigned
/// identically to every player. (l-1)^n elements.
template <typename Scalar = double>
std::vector<TensorGame<Scalar>> anti_zero_sum_tensor_basis(Index n, Index l) {
  if (n < 2 || l < 2) {
    throw DomainError("anti_zero_sum_tensor_basis: needs n >= 2 and l >= 2");
  }
  detail::require_tensor_guard(n, l, "anti_zero_sum_tensor_basis");

  std::vector<TensorGame<Scalar>> out;
  std::vector<Index> anchor(static_cast<std::size_t>(n), 2);
  const auto advance = [&]() {
    for (auto& i : anchor) {
      if (i < l) {
        ++i;
        return true;
      }
      i = 2;
    }
    return false;
  };
  do {
    TensorGame<Scalar> g = TensorGame<Scalar>::zeros(n, l);
    VectorX<Scalar> tensor = VectorX<Scalar>::Zero(g.entries());
    std::vector<Index> profile(static_cast<std::size_t>(n), 1);
    do {
      Scalar product = Scalar(-1);
      bool support = true;
      for (std::size_t p = 0; p < profile.size(); ++p) {
        if (profile[p] == 1) {
          continue;  // factor +1
        } else if (profile[p] == anchor[p]) {
          product = -product;
        } else {
          support = false;
          break;
        }
      }
      if (support) tensor(g.flat(profile)) = product;
    } while (detail::next_profile(profile, l));
    for (auto& t : g.payoffs) t = tensor;
    out.push_back(std::move(g));
  } while (advance());
  return out;
}

// ---------------------------------------------------------------------------
// Projection-based decomposition.

template <typename Scalar = double>
struct TensorDecomposition {
  TensorGame<Scalar> potential;
  TensorGame<Scalar> anti_potential;
  TensorGame<Scalar> zero_sum;
  TensorGame<Scalar> anti_zero_sum;
};

namespace detail {

// Least-squares projection of `target` onto the span of the generating set,
// with singular values below 1e-10 * sigma_max treated as zero. The
// generating sets are small by the size guard but not orthonormal.
template <typename Scalar>
VectorX<Scalar> project_onto_span(const std::vector<TensorGame<Scalar>>& span,
                                  const VectorX<Scalar>& target) {
  MatrixX<Scalar> basis(target.size(), static_cast<Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k) {
    basis.col(static_cast<Index>(k)) = span[k].vectorized();
  }
  Eigen::BDCSVD<MatrixX<Scalar>> svd(basis,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(Scalar(1e-10));
  return basis * svd.solve(target);
}

}  // namespace detail

/// Orthogonal projections onto the potential and anti-zero-sum spans; the
/// complementary components are the remainders, so each pair reconstructs
/// the input exactly.
template <typename Scalar>
TensorDecomposition<Scalar> decompose_tensor(const TensorGame<Scalar>& g) {
  detail::require_tensor_guard(g.players, g.strategies, "decompose_tensor");
  const VectorX<Scalar> v = g.vectorized();

  const VectorX<Scalar> pot = detail::project_onto_span(
      potential_generators<Scalar>(g.players, g.strategies), v);
  const VectorX<Scalar> azs = detail::project_onto_span(
      anti_zero_sum_tensor_basis<Scalar>(g.players, g.strategies), v);

  TensorDecomposition<Scalar> d;
  d.potential = TensorGame<Scalar>::from_vectorized(g.players, g.strategies, pot);
  d.anti_potential =
      TensorGame<Scalar>::from_vectorized(g.players, g.strategies, v - pot);
  d.anti_zero_sum =
      TensorGame<Scalar>::from_vectorized(g.players, g.strategies, azs);
  d.zero_sum =
      TensorGame<Scalar>::from_vectorized(g.players, g.strategies, v - azs);
  return d;
}

}  // namespace egt
