#pragma once

// Normal form of a sequential game: a single-outcome-space simultaneous game
// whose player i moves by choosing a whole contingent table
// (histories of round i) -> X_i. The outcome of a profile of tables is q of
// its strategic play, and player i's quantifier only consults the outcomes of
// the constant tables.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/sequential.hpp"
#include "hog/simultaneous.hpp"

namespace hog {

// X_i^dag = (X_0 x ... x X_{i-1}) -> X_i, every table enumerated in
// mixed-radix order (the entry for history 0 is the most significant digit).
class ContingentMoveSet {
 public:
  ContingentMoveSet(std::size_t round, std::uint64_t history_count,
                    std::size_t moves)
      : round_(round), history_count_(history_count), moves_(moves) {}

  ContingentMoveSet(const SequentialGame& g, std::size_t round)
      : ContingentMoveSet(round, g.history_space(round).size(),
                          g.move_count(round)) {}

  std::size_t round() const { return round_; }
  std::uint64_t history_count() const { return history_count_; }
  std::size_t moves() const { return moves_; }

  // |X_i|^|P_i|, saturating at ResourceError::kOverflow.
  std::uint64_t size() const { return checked_power(moves_, history_count_); }

  std::vector<MoveId> table(std::uint64_t index) const {
    std::vector<MoveId> t(history_count_);
    for (std::uint64_t h = history_count_; h-- > 0;) {
      t[h] = static_cast<MoveId>(index % moves_);
      index /= moves_;
    }
    return t;
  }

  std::uint64_t index_of(std::span<const MoveId> table) const {
    if (table.size() != history_count_) {
      throw StructuralError("contingent table has wrong length");
    }
    std::uint64_t index = 0;
    for (MoveId m : table) index = index * moves_ + m;
    return index;
  }

  std::uint64_t constant_index(MoveId x) const {
    return index_of(std::vector<MoveId>(history_count_, x));
  }

 private:
  std::size_t round_;
  std::uint64_t history_count_;
  std::size_t moves_;
};

// Strategy <-> normal-form profile.
inline PureProfile to_contingent_profile(const SequentialGame& g,
                                         const SeqStrategy& pi) {
  validate_strategy(g, pi);
  PureProfile profile(g.round_count());
  for (std::size_t i = 0; i < g.round_count(); ++i) {
    profile[i] = ContingentMoveSet(g, i).index_of(pi.tables[i]);
  }
  return profile;
}

inline SeqStrategy from_contingent_profile(const SequentialGame& g,
                                           std::span<const MoveId> profile) {
  if (profile.size() != g.round_count()) {
    throw StructuralError("normal-form profile has wrong arity");
  }
  SeqStrategy pi;
  for (std::size_t i = 0; i < g.round_count(); ++i) {
    const ContingentMoveSet set(g, i);
    if (profile[i] >= set.size()) {
      throw StructuralError("contingent move index out of range");
    }
    pi.tables.push_back(set.table(profile[i]));
  }
  return pi;
}

inline SimultaneousGame to_normal_form(const SequentialGame& g,
                                       std::uint64_t budget = kDefaultBudget) {
  const std::size_t n = g.round_count();
  std::vector<std::size_t> sizes(n);
  std::uint64_t total_moves = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = ContingentMoveSet(g, i).size();
    require_within_budget(s, budget,
                          "contingent move set of round " + std::to_string(i));
    sizes[i] = static_cast<std::size_t>(s);
    total_moves += s;
  }
  require_within_budget(total_moves, budget, "total contingent moves");
  require_within_budget(checked_product(sizes), budget,
                        "normal-form profile space");

  auto tables = std::make_shared<std::vector<std::vector<std::vector<MoveId>>>>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ContingentMoveSet set(g, i);
    (*tables)[i].reserve(sizes[i]);
    for (std::uint64_t k = 0; k < sizes[i]; ++k) (*tables)[i].push_back(set.table(k));
  }

  OutcomeFn q_dag = [g, tables](std::span<const MoveId> profile) {
    SeqStrategy pi;
    pi.tables.reserve(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
      pi.tables.push_back((*tables)[i][profile[i]]);
    }
    return g.outcome(continue_play(g, pi, {}));
  };

  std::vector<Quantifier> quantifiers;
  for (std::size_t i = 0; i < n; ++i) {
    const ContingentMoveSet set(g, i);
    std::vector<MoveId> constants(g.move_count(i));
    for (MoveId x = 0; x < g.move_count(i); ++x) {
      constants[x] = static_cast<MoveId>(set.constant_index(x));
    }
    quantifiers.push_back(Quantifier::restricted(g.quantifier(i), constants));
  }

  SimultaneousGame nf = SimultaneousGame::with_single_outcome_space(
      sizes, std::move(q_dag), g.outcome_dim(), std::move(quantifiers));
  nf.player_names = g.round_names;
  return nf;
}

// Is pi, read as a profile of contingent tables, a generalised Nash
// equilibrium of the normal form? Implied by optimality of pi.
inline bool check_soundness(const SequentialGame& g, const SeqStrategy& pi,
                            double tol, std::uint64_t budget = kDefaultBudget) {
  const SimultaneousGame nf = to_normal_form(g, budget);
  return is_generalised_nash(nf, to_contingent_profile(g, pi), tol);
}

}  // namespace hog
