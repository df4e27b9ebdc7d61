#pragma once

// Generalised simultaneous games: each player i has a finite move set X_i,
// an outcome function q_i over full profiles and a quantifier phi_i over X_i.
// A profile is a generalised Nash equilibrium when, for every player, the
// outcome it yields lies in phi_i of that player's unilateral-deviation table.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/outcome.hpp"

namespace hog {

using PureProfile = std::vector<MoveId>;
using OutcomeFn = std::function<Outcome(std::span<const MoveId>)>;

// Dense row-major payoff tensor: entry for profile s occupies
// [index(s) * dim, index(s) * dim + dim).
inline OutcomeFn tensor_outcome(const MixedRadix& space,
                                std::vector<double> tensor, std::size_t dim) {
  if (tensor.size() != space.size() * dim) {
    throw StructuralError("payoff tensor has length " +
                          std::to_string(tensor.size()) + ", expected " +
                          std::to_string(space.size() * dim));
  }
  auto data = std::make_shared<const std::vector<double>>(std::move(tensor));
  return [space, data, dim](std::span<const MoveId> s) {
    const std::uint64_t k = space.encode(s) * dim;
    return Outcome(data->begin() + static_cast<std::ptrdiff_t>(k),
                   data->begin() + static_cast<std::ptrdiff_t>(k + dim));
  };
}

class SimultaneousGame {
 public:
  // Multiple outcome spaces: one outcome function per player.
  SimultaneousGame(std::vector<std::size_t> move_counts,
                   std::vector<OutcomeFn> outcome_fns,
                   std::vector<std::size_t> outcome_dims,
                   std::vector<Quantifier> quantifiers)
      : space_(std::move(move_counts)),
        outcome_fns_(std::move(outcome_fns)),
        outcome_dims_(std::move(outcome_dims)),
        quantifiers_(std::move(quantifiers)) {
    validate();
  }

  static SimultaneousGame with_single_outcome_space(
      std::vector<std::size_t> move_counts, OutcomeFn q, std::size_t dim,
      std::vector<Quantifier> quantifiers) {
    const std::size_t n = move_counts.size();
    SimultaneousGame g(std::move(move_counts), std::vector<OutcomeFn>{q},
                       std::vector<std::size_t>(n, dim),
                       std::move(quantifiers), true);
    return g;
  }

  static SimultaneousGame from_tensors(std::vector<std::size_t> move_counts,
                                       std::vector<std::vector<double>> payoffs,
                                       std::vector<std::size_t> outcome_dims,
                                       std::vector<Quantifier> quantifiers) {
    const MixedRadix space(move_counts);
    if (payoffs.size() != move_counts.size() ||
        outcome_dims.size() != move_counts.size()) {
      throw StructuralError("need one payoff tensor and dimension per player");
    }
    std::vector<OutcomeFn> fns;
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
      fns.push_back(tensor_outcome(space, std::move(payoffs[i]), outcome_dims[i]));
    }
    return SimultaneousGame(std::move(move_counts), std::move(fns),
                            std::move(outcome_dims), std::move(quantifiers));
  }

  std::size_t player_count() const { return space_.arity(); }
  std::size_t move_count(std::size_t i) const { return space_.radices()[i]; }
  const std::vector<std::size_t>& move_counts() const { return space_.radices(); }
  const MixedRadix& profile_space() const { return space_; }
  bool single_outcome_space() const { return single_; }
  std::size_t outcome_dim(std::size_t i) const { return outcome_dims_[i]; }
  const Quantifier& quantifier(std::size_t i) const { return quantifiers_[i]; }

  Outcome outcome(std::size_t i, std::span<const MoveId> profile) const {
    Outcome r = outcome_fns_[single_ ? 0 : i](profile);
    if (r.size() != outcome_dims_[i]) {
      throw StructuralError("outcome function for player " + std::to_string(i) +
                            " returned dimension " + std::to_string(r.size()));
    }
    return r;
  }

  void validate_profile(std::span<const MoveId> profile) const {
    if (profile.size() != player_count()) {
      throw StructuralError("profile has " + std::to_string(profile.size()) +
                            " coordinates, game has " +
                            std::to_string(player_count()) + " players");
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (profile[i] >= move_count(i)) {
        throw StructuralError("move " + std::to_string(profile[i]) +
                              " invalid for player " + std::to_string(i));
      }
    }
  }

  // Optional display labels; empty vectors mean "use indices".
  std::vector<std::string> player_names;
  std::vector<std::vector<std::string>> move_labels;

 private:
  SimultaneousGame(std::vector<std::size_t> move_counts,
                   std::vector<OutcomeFn> outcome_fns,
                   std::vector<std::size_t> outcome_dims,
                   std::vector<Quantifier> quantifiers, bool single)
      : space_(std::move(move_counts)),
        outcome_fns_(std::move(outcome_fns)),
        outcome_dims_(std::move(outcome_dims)),
        quantifiers_(std::move(quantifiers)),
        single_(single) {
    validate();
  }

  void validate() const {
    const std::size_t n = space_.arity();
    if (n == 0) throw StructuralError("a game needs at least one player");
    for (std::size_t i = 0; i < n; ++i) {
      if (space_.radices()[i] == 0) {
        throw StructuralError("player " + std::to_string(i) +
                              " has an empty move set");
      }
    }
    if (outcome_fns_.size() != (single_ ? 1 : n) || outcome_dims_.size() != n ||
        quantifiers_.size() != n) {
      throw StructuralError(
          "need one outcome function, dimension and quantifier per player");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (outcome_dims_[i] == 0) throw StructuralError("outcome dimension 0");
      const std::size_t qd = quantifiers_[i].outcome_dim();
      if (qd != 0 && qd != outcome_dims_[i]) {
        throw StructuralError("quantifier of player " + std::to_string(i) +
                              " expects outcome dimension " +
                              std::to_string(qd) + ", outcomes have " +
                              std::to_string(outcome_dims_[i]));
      }
    }
  }

  MixedRadix space_;
  std::vector<OutcomeFn> outcome_fns_;
  std::vector<std::size_t> outcome_dims_;
  std::vector<Quantifier> quantifiers_;
  bool single_ = false;
};

// x -> q_i(profile with coordinate i replaced by x).
inline OutcomeTable unilateral_map(const SimultaneousGame& g, std::size_t i,
                                   std::span<const MoveId> profile) {
  g.validate_profile(profile);
  PureProfile deviated(profile.begin(), profile.end());
  OutcomeTable table(g.move_count(i), g.outcome_dim(i));
  for (MoveId x = 0; x < g.move_count(i); ++x) {
    deviated[i] = x;
    table.set(x, g.outcome(i, deviated));
  }
  return table;
}

inline bool is_generalised_nash(const SimultaneousGame& g,
                                std::span<const MoveId> profile, double tol) {
  g.validate_profile(profile);
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const OutcomeTable table = unilateral_map(g, i, profile);
    if (!g.quantifier(i).contains(table, table[profile[i]], tol)) return false;
  }
  return true;
}

// B(profile): every sigma with (U_i(profile), sigma_i) on the diagonal of
// phi_i for all i. Only sigma_i is constrained per player, so B is the
// product of the per-player diagonal sets; listed lexicographically.
inline std::vector<PureProfile> best_response_set(
    const SimultaneousGame& g, std::span<const MoveId> profile, double tol,
    std::uint64_t budget = kDefaultBudget) {
  g.validate_profile(profile);
  require_within_budget(g.profile_space().size(), budget, "profile space");

  std::vector<std::vector<MoveId>> diagonal(g.player_count());
  std::vector<std::size_t> sizes(g.player_count());
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    diagonal[i] = diagonal_moves(g.quantifier(i), unilateral_map(g, i, profile), tol);
    sizes[i] = diagonal[i].size();
  }
  std::vector<PureProfile> result;
  for_each_tuple(MixedRadix(sizes), [&](std::span<const MoveId> pick) {
    PureProfile sigma(pick.size());
    for (std::size_t i = 0; i < pick.size(); ++i) sigma[i] = diagonal[i][pick[i]];
    result.push_back(std::move(sigma));
  });
  return result;
}

inline std::vector<PureProfile> enumerate_pure_equilibria(
    const SimultaneousGame& g, double tol,
    std::uint64_t budget = kDefaultBudget) {
  require_within_budget(g.profile_space().size(), budget, "profile space");
  std::vector<PureProfile> result;
  for_each_tuple(g.profile_space(), [&](std::span<const MoveId> s) {
    if (is_generalised_nash(g, s, tol)) result.emplace_back(s.begin(), s.end());
  });
  return result;
}

}  // namespace hog
