#pragma once

// Generalised sequential games: rounds 0..n-1 are played in order, round i
// choosing from X_i with quantifier phi_i (attained by selection eps_i), and a
// single outcome function q is applied to the finished play.
//
// A strategy assigns to every round a table from partial histories
// X_0 x ... x X_{i-1} to X_i. Histories are numbered row-major (see
// MixedRadix), so round 0 has exactly one (empty) history.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/outcome.hpp"
#include "hog/simultaneous.hpp"

namespace hog {

using Play = std::vector<MoveId>;

class SequentialGame {
 public:
  SequentialGame(std::vector<std::size_t> move_counts, OutcomeFn q,
                 std::size_t outcome_dim, std::vector<Quantifier> quantifiers,
                 std::vector<SelectionFunction> selections)
      : plays_(std::move(move_counts)),
        q_(std::move(q)),
        outcome_dim_(outcome_dim),
        quantifiers_(std::move(quantifiers)),
        selections_(std::move(selections)) {
    const std::size_t n = plays_.arity();
    if (n == 0) throw StructuralError("a sequential game needs >= 1 round");
    for (std::size_t i = 0; i < n; ++i) {
      if (plays_.radices()[i] == 0) {
        throw StructuralError("round " + std::to_string(i) +
                              " has an empty move set");
      }
    }
    if (quantifiers_.size() != n || selections_.size() != n) {
      throw StructuralError("need one quantifier and selection per round");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t qd = quantifiers_[i].outcome_dim();
      const std::size_t sd = selections_[i].outcome_dim();
      if ((qd != 0 && qd != outcome_dim_) || (sd != 0 && sd != outcome_dim_)) {
        throw StructuralError("round " + std::to_string(i) +
                              " quantifier/selection outcome dimension does "
                              "not match the game's");
      }
    }
  }

  static SequentialGame from_tensor(std::vector<std::size_t> move_counts,
                                    std::vector<double> payoff,
                                    std::size_t outcome_dim,
                                    std::vector<Quantifier> quantifiers,
                                    std::vector<SelectionFunction> selections) {
    OutcomeFn q = tensor_outcome(MixedRadix(move_counts), std::move(payoff),
                                 outcome_dim);
    return SequentialGame(std::move(move_counts), std::move(q), outcome_dim,
                          std::move(quantifiers), std::move(selections));
  }

  std::size_t round_count() const { return plays_.arity(); }
  std::size_t move_count(std::size_t i) const { return plays_.radices()[i]; }
  const std::vector<std::size_t>& move_counts() const { return plays_.radices(); }
  const MixedRadix& play_space() const { return plays_; }
  std::size_t outcome_dim() const { return outcome_dim_; }
  const Quantifier& quantifier(std::size_t i) const { return quantifiers_[i]; }
  const SelectionFunction& selection(std::size_t i) const { return selections_[i]; }
  const OutcomeFn& outcome_fn() const { return q_; }

  // Histories seen by round i: X_0 x ... x X_{i-1}.
  MixedRadix history_space(std::size_t i) const {
    return MixedRadix(std::vector<std::size_t>(
        plays_.radices().begin(),
        plays_.radices().begin() + static_cast<std::ptrdiff_t>(i)));
  }

  Outcome outcome(std::span<const MoveId> play) const {
    Outcome r = q_(play);
    if (r.size() != outcome_dim_) {
      throw StructuralError("outcome function returned dimension " +
                            std::to_string(r.size()));
    }
    return r;
  }

  std::vector<std::string> round_names;
  std::vector<std::vector<std::string>> move_labels;

 private:
  MixedRadix plays_;
  OutcomeFn q_;
  std::size_t outcome_dim_;
  std::vector<Quantifier> quantifiers_;
  std::vector<SelectionFunction> selections_;
};

struct SeqStrategy {
  // tables[i][h] is the move of round i after the history numbered h.
  std::vector<std::vector<MoveId>> tables;

  friend bool operator==(const SeqStrategy&, const SeqStrategy&) = default;
};

inline void validate_strategy(const SequentialGame& g, const SeqStrategy& pi) {
  if (pi.tables.size() != g.round_count()) {
    throw StructuralError("strategy has " + std::to_string(pi.tables.size()) +
                          " round tables, game has " +
                          std::to_string(g.round_count()) + " rounds");
  }
  for (std::size_t i = 0; i < g.round_count(); ++i) {
    const std::uint64_t histories = g.history_space(i).size();
    if (pi.tables[i].size() != histories) {
      throw StructuralError("round " + std::to_string(i) + " table has " +
                            std::to_string(pi.tables[i].size()) +
                            " entries, expected " + std::to_string(histories));
    }
    for (MoveId m : pi.tables[i]) {
      if (m >= g.move_count(i)) {
        throw StructuralError("round " + std::to_string(i) +
                              " table contains invalid move " +
                              std::to_string(m));
      }
    }
  }
}

// Extends a partial play by letting pi choose every remaining move.
inline Play continue_play(const SequentialGame& g, const SeqStrategy& pi,
                          std::span<const MoveId> prefix) {
  Play play(prefix.begin(), prefix.end());
  play.reserve(g.round_count());
  for (std::size_t j = prefix.size(); j < g.round_count(); ++j) {
    const std::uint64_t h = g.history_space(j).encode(play);
    play.push_back(pi.tables[j][h]);
  }
  return play;
}

inline Play strategic_play(const SequentialGame& g, const SeqStrategy& pi) {
  validate_strategy(g, pi);
  return continue_play(g, pi, {});
}

struct SuboptimalHistory {
  std::size_t round;
  std::vector<MoveId> history;
};

// First (round, history) at which pi violates the optimality condition
//   q(a, b_i, ..., b_n) in phi_i(x -> q(a, x, b^{a,x}_{i+1}, ..., b^{a,x}_n))
// where the b's are pi's continuation moves.
inline std::optional<SuboptimalHistory> find_suboptimal_history(
    const SequentialGame& g, const SeqStrategy& pi, double tol,
    std::uint64_t budget = kDefaultBudget) {
  validate_strategy(g, pi);
  std::uint64_t work = 0;
  for (std::size_t i = 0; i < g.round_count(); ++i) {
    const std::uint64_t cells = checked_product(
        std::vector<std::size_t>{static_cast<std::size_t>(
                                     g.history_space(i).size()),
                                 g.move_count(i)});
    work = (cells > ResourceError::kOverflow - work) ? ResourceError::kOverflow
                                                     : work + cells;
  }
  require_within_budget(work, budget, "optimality check");

  for (std::size_t i = 0; i < g.round_count(); ++i) {
    const MixedRadix histories = g.history_space(i);
    std::optional<SuboptimalHistory> failure;
    for_each_tuple(histories, [&](std::span<const MoveId> history) {
      if (failure) return;
      std::vector<MoveId> prefix(history.begin(), history.end());
      prefix.push_back(0);
      OutcomeTable table(g.move_count(i), g.outcome_dim());
      for (MoveId x = 0; x < g.move_count(i); ++x) {
        prefix.back() = x;
        table.set(x, g.outcome(continue_play(g, pi, prefix)));
      }
      const Outcome value = g.outcome(continue_play(g, pi, history));
      if (!g.quantifier(i).contains(table, value, tol)) {
        failure = SuboptimalHistory{i, {history.begin(), history.end()}};
      }
    });
    if (failure) return failure;
  }
  return std::nullopt;
}

inline bool is_optimal_strategy(const SequentialGame& g, const SeqStrategy& pi,
                                double tol,
                                std::uint64_t budget = kDefaultBudget) {
  return !find_suboptimal_history(g, pi, tol, budget).has_value();
}

// Binary product of selection functions on a table over X x Y (row-major):
//   b_x = del(y -> q(x, y)),  a = eps(x -> q(x, b_x)),  result (a, b_a).
inline std::pair<MoveId, MoveId> selection_product(const SelectionFunction& eps,
                                                   const SelectionFunction& del,
                                                   std::size_t x_count,
                                                   std::size_t y_count,
                                                   const OutcomeTable& q) {
  if (q.size() != x_count * y_count || x_count == 0 || y_count == 0) {
    throw StructuralError("product table must have |X|*|Y| > 0 entries");
  }
  std::vector<MoveId> reply(x_count);
  OutcomeTable outer(x_count, q.dim());
  for (MoveId x = 0; x < x_count; ++x) {
    OutcomeTable row(y_count, q.dim());
    for (MoveId y = 0; y < y_count; ++y) row.set(y, q[x * y_count + y]);
    reply[x] = del.select(row);
    outer.set(x, row[reply[x]]);
  }
  const MoveId a = eps.select(outer);
  return {a, reply[a]};
}

// A selection function on tuples: picks a whole tuple given an outcome
// function over tuples of that shape.
using TupleSelection = std::function<Play(const OutcomeFn&)>;

// eps (x) rest, with rest selecting the tail tuple:
//   b_x = rest(t -> q(x :: t)),  a = eps(x -> q(x :: b_x)),  result a :: b_a.
inline TupleSelection tuple_product(SelectionFunction eps, std::size_t moves,
                                    std::size_t outcome_dim,
                                    TupleSelection rest) {
  return [eps = std::move(eps), moves, outcome_dim,
          rest = std::move(rest)](const OutcomeFn& q) {
    std::vector<Play> tails(moves);
    OutcomeTable outer(moves, outcome_dim);
    for (MoveId x = 0; x < moves; ++x) {
      const OutcomeFn curried = [&q, x](std::span<const MoveId> tail) {
        Play full{x};
        full.insert(full.end(), tail.begin(), tail.end());
        return q(full);
      };
      tails[x] = rest ? rest(curried) : Play{};
      outer.set(x, curried(tails[x]));
    }
    const MoveId a = eps.select(outer);
    Play result{a};
    result.insert(result.end(), tails[a].begin(), tails[a].end());
    return result;
  };
}

// The right-nested iterated product eps_0 (x) (eps_1 (x) (... (x) eps_{n-1}))
// applied to q.
inline Play compute_optimal_play(const SequentialGame& g,
                                 std::uint64_t budget = kDefaultBudget) {
  require_within_budget(g.play_space().size(), budget, "play space");
  TupleSelection product;
  for (std::size_t i = g.round_count(); i-- > 0;) {
    product = tuple_product(g.selection(i), g.move_count(i), g.outcome_dim(),
                            std::move(product));
  }
  return product([&g](std::span<const MoveId> play) { return g.outcome(play); });
}

namespace detail {

// Backward induction from `prefix`; records eps_i's choice at every history
// reached and returns the continuation (moves of rounds prefix.size()..n-1).
inline Play solve_subgame(const SequentialGame& g, std::vector<MoveId>& prefix,
                          SeqStrategy& out) {
  const std::size_t i = prefix.size();
  if (i == g.round_count()) return {};
  std::vector<Play> tails(g.move_count(i));
  OutcomeTable table(g.move_count(i), g.outcome_dim());
  for (MoveId x = 0; x < g.move_count(i); ++x) {
    prefix.push_back(x);
    tails[x] = solve_subgame(g, prefix, out);
    Play full = prefix;
    full.insert(full.end(), tails[x].begin(), tails[x].end());
    table.set(x, g.outcome(full));
    prefix.pop_back();
  }
  const MoveId a = g.selection(i).select(table);
  out.tables[i][g.history_space(i).encode(prefix)] = a;
  Play result{a};
  result.insert(result.end(), tails[a].begin(), tails[a].end());
  return result;
}

}  // namespace detail

// Applies eps_i at every history of every round, so the optimality condition
// holds pointwise rather than only along the optimal play.
inline SeqStrategy compute_optimal_strategy(
    const SequentialGame& g, std::uint64_t budget = kDefaultBudget) {
  require_within_budget(g.play_space().size(), budget, "play space");
  SeqStrategy pi;
  pi.tables.resize(g.round_count());
  for (std::size_t i = 0; i < g.round_count(); ++i) {
    pi.tables[i].assign(g.history_space(i).size(), 0);
  }
  std::vector<MoveId> prefix;
  detail::solve_subgame(g, prefix, pi);
  return pi;
}

}  // namespace hog
