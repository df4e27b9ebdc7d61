#pragma once

// Seeded random game generators for property tests, the acceptance suite and
// the fuzz command. Draws go through Rng::uniform_int, which uses rejection
// sampling on a 64-bit Mersenne Twister, so a seed gives the same games on
// every platform.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hog/core.hpp"
#include "hog/io.hpp"

namespace hog {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
  }

  // Uniform on [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct ShapeParams {
  std::size_t min_players = 1;
  std::size_t max_players = 3;
  std::size_t min_moves = 1;
  std::size_t max_moves = 3;
  std::int64_t payoff_lo = -9;
  std::int64_t payoff_hi = 9;
};

namespace detail {

inline std::vector<double> random_tensor(Rng& rng, std::size_t length,
                                         const ShapeParams& shape) {
  std::vector<double> t(length);
  for (double& v : t) {
    v = static_cast<double>(rng.uniform_int(shape.payoff_lo, shape.payoff_hi));
  }
  return t;
}

inline PlayerDesc random_player(Rng& rng, const std::string& name,
                                const ShapeParams& shape,
                                QuantifierKind quantifier) {
  PlayerDesc d;
  d.name = name;
  const std::size_t n = static_cast<std::size_t>(rng.uniform_int(
      static_cast<std::int64_t>(shape.min_moves),
      static_cast<std::int64_t>(shape.max_moves)));
  for (std::size_t m = 0; m < n; ++m) d.moves.push_back(std::to_string(m));
  d.selection = attaining_selection(quantifier);
  d.quantifier = std::move(quantifier);
  return d;
}

}  // namespace detail

// Sequential game with integer payoffs; each round's quantifier is drawn
// from `kinds` and paired with its catalogue selection.
inline GameFile random_sequential_game(
    Rng& rng, const ShapeParams& shape,
    const std::vector<QuantifierKind>& kinds = {qk::Max{}, qk::Min{},
                                                qk::Average{}}) {
  GameFile f;
  f.kind = GameKind::kSequential;
  f.single_outcome_space = true;
  const auto rounds = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(shape.min_players),
                      static_cast<std::int64_t>(shape.max_players)));
  for (std::size_t i = 0; i < rounds; ++i) {
    f.players.push_back(detail::random_player(
        rng, "round" + std::to_string(i), shape, kinds[rng.index(kinds.size())]));
  }
  f.payoffs.push_back(
      detail::random_tensor(rng, checked_product(f.move_counts()), shape));
  return f;
}

// Simultaneous game with multiple outcome spaces (one scalar tensor per
// player) and Max quantifiers.
inline GameFile random_max_game(Rng& rng, const ShapeParams& shape) {
  GameFile f;
  f.kind = GameKind::kSimultaneous;
  const auto players = static_cast<std::size_t>(
      rng.uniform_int(static_cast<std::int64_t>(shape.min_players),
                      static_cast<std::int64_t>(shape.max_players)));
  for (std::size_t i = 0; i < players; ++i) {
    f.players.push_back(
        detail::random_player(rng, "p" + std::to_string(i), shape, qk::Max{}));
  }
  const std::uint64_t profiles = checked_product(f.move_counts());
  for (std::size_t i = 0; i < players; ++i) {
    f.payoffs.push_back(detail::random_tensor(rng, profiles, shape));
  }
  return f;
}

// Two-player stage with a shared table; players use shape.min/max_moves.
inline GameFile random_stage(Rng& rng, const ShapeParams& shape,
                             QuantifierKind phi = qk::Max{},
                             QuantifierKind psi = qk::Min{}) {
  GameFile f;
  f.kind = GameKind::kTwoPlayerStage;
  f.single_outcome_space = true;
  f.players.push_back(detail::random_player(rng, "x", shape, std::move(phi)));
  f.players.push_back(detail::random_player(rng, "y", shape, std::move(psi)));
  f.payoffs.push_back(
      detail::random_tensor(rng, checked_product(f.move_counts()), shape));
  return f;
}

// Uniformly random point of the simplex (normalized exponentials).
inline MixedStrategy random_mixed_strategy(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - rng.unit());
    sum += v;
  }
  for (double& v : p) v /= sum;
  return MixedStrategy(std::move(p));
}

}  // namespace hog
