#pragma once

// Two-player single-outcome-space stages, the binary Berardi-Bezem-Coquand
// functional and psi-phi strategy verification.
//
// Player 1 chooses x in X under quantifier phi (selection eps), player 2
// chooses y in Y under psi (selection del); both see the same table q(x, y).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/outcome.hpp"
#include "hog/sequential.hpp"

namespace hog {

class TwoPlayerStage {
 public:
  TwoPlayerStage(std::size_t x_count, std::size_t y_count, OutcomeTable q,
                 Quantifier phi, Quantifier psi, SelectionFunction eps,
                 SelectionFunction del)
      : x_count_(x_count),
        y_count_(y_count),
        q_(std::move(q)),
        phi_(std::move(phi)),
        psi_(std::move(psi)),
        eps_(std::move(eps)),
        del_(std::move(del)) {
    if (x_count_ == 0 || y_count_ == 0) {
      throw StructuralError("stage move sets must be nonempty");
    }
    if (q_.size() != x_count_ * y_count_) {
      throw StructuralError("stage table has " + std::to_string(q_.size()) +
                            " entries, expected " +
                            std::to_string(x_count_ * y_count_));
    }
    for (std::size_t d : {phi_.outcome_dim(), psi_.outcome_dim(),
                          eps_.outcome_dim(), del_.outcome_dim()}) {
      if (d != 0 && d != q_.dim()) {
        throw StructuralError("stage quantifier/selection dimension mismatch");
      }
    }
  }

  std::size_t x_count() const { return x_count_; }
  std::size_t y_count() const { return y_count_; }
  const OutcomeTable& table() const { return q_; }
  const Quantifier& phi() const { return phi_; }
  const Quantifier& psi() const { return psi_; }
  const SelectionFunction& eps() const { return eps_; }
  const SelectionFunction& del() const { return del_; }

  OutcomeView outcome(MoveId x, MoveId y) const { return q_[x * y_count_ + y]; }

  // y -> q(x, y)
  OutcomeTable row(MoveId x) const {
    OutcomeTable t(y_count_, q_.dim());
    for (MoveId y = 0; y < y_count_; ++y) t.set(y, outcome(x, y));
    return t;
  }

  // x -> q(x, y)
  OutcomeTable column(MoveId y) const {
    OutcomeTable t(x_count_, q_.dim());
    for (MoveId x = 0; x < x_count_; ++x) t.set(x, outcome(x, y));
    return t;
  }

  // The theorem guaranteeing bbc's output needs both quantifiers
  // single-valued.
  bool single_valued() const {
    return phi_.single_valued() && psi_.single_valued();
  }

 private:
  std::size_t x_count_;
  std::size_t y_count_;
  OutcomeTable q_;
  Quantifier phi_;
  Quantifier psi_;
  SelectionFunction eps_;
  SelectionFunction del_;
};

using MovePair = std::pair<MoveId, MoveId>;

//   a = eps(x -> q(x, del(y -> q(x, y))))
//   b = del(y -> q(eps(x -> q(x, y)), y))
// Unlike the product of selection functions, b does not depend on a.
inline MovePair bbc(const TwoPlayerStage& s) {
  OutcomeTable outer_x(s.x_count(), s.table().dim());
  for (MoveId x = 0; x < s.x_count(); ++x) {
    outer_x.set(x, s.outcome(x, s.del().select(s.row(x))));
  }
  OutcomeTable outer_y(s.y_count(), s.table().dim());
  for (MoveId y = 0; y < s.y_count(); ++y) {
    outer_y.set(y, s.outcome(s.eps().select(s.column(y)), y));
  }
  return {s.eps().select(outer_x), s.del().select(outer_y)};
}

inline MovePair selection_product(const TwoPlayerStage& s) {
  return selection_product(s.eps(), s.del(), s.x_count(), s.y_count(),
                           s.table());
}

struct PsiPhiViolation {
  // 0: player 1's move fails against reply function f : X -> Y;
  // 1: player 2's move fails against g : Y -> X.
  std::size_t player;
  std::vector<MoveId> witness;
};

// Admissibility of a reply function is pointwise, so the admissible functions
// form the product of the per-argument admissible sets; only that product is
// enumerated.
inline std::optional<PsiPhiViolation> find_psi_phi_violation(
    const TwoPlayerStage& s, MovePair profile, double tol,
    std::uint64_t budget = kDefaultBudget) {
  const auto [a, b] = profile;
  if (a >= s.x_count() || b >= s.y_count()) {
    throw StructuralError("profile outside the stage's move sets");
  }
  const std::size_t dim = s.table().dim();

  // Player 1: f(x) in {y : q(x, y) in psi(y -> q(x, y))}.
  std::vector<std::vector<MoveId>> replies(s.x_count());
  std::vector<std::size_t> reply_counts(s.x_count());
  for (MoveId x = 0; x < s.x_count(); ++x) {
    replies[x] = diagonal_moves(s.psi(), s.row(x), tol);
    reply_counts[x] = replies[x].size();
  }
  const MixedRadix f_space(reply_counts);
  require_within_budget(f_space.size(), budget, "admissible reply functions");

  std::optional<PsiPhiViolation> violation;
  for_each_tuple(f_space, [&](std::span<const MoveId> pick) {
    if (violation) return;
    std::vector<MoveId> f(s.x_count());
    OutcomeTable induced(s.x_count(), dim);
    for (MoveId x = 0; x < s.x_count(); ++x) {
      f[x] = replies[x][pick[x]];
      induced.set(x, s.outcome(x, f[x]));
    }
    if (!s.phi().contains(induced, s.outcome(a, f[a]), tol)) {
      violation = PsiPhiViolation{0, std::move(f)};
    }
  });
  if (violation) return violation;

  // Player 2: g(y) in {x : q(x, y) in phi(x -> q(x, y))}.
  std::vector<std::vector<MoveId>> counters(s.y_count());
  std::vector<std::size_t> counter_counts(s.y_count());
  for (MoveId y = 0; y < s.y_count(); ++y) {
    counters[y] = diagonal_moves(s.phi(), s.column(y), tol);
    counter_counts[y] = counters[y].size();
  }
  const MixedRadix g_space(counter_counts);
  require_within_budget(g_space.size(), budget, "admissible counter functions");

  for_each_tuple(g_space, [&](std::span<const MoveId> pick) {
    if (violation) return;
    std::vector<MoveId> g(s.y_count());
    OutcomeTable induced(s.y_count(), dim);
    for (MoveId y = 0; y < s.y_count(); ++y) {
      g[y] = counters[y][pick[y]];
      induced.set(y, s.outcome(g[y], y));
    }
    if (!s.psi().contains(induced, s.outcome(g[b], b), tol)) {
      violation = PsiPhiViolation{1, std::move(g)};
    }
  });
  return violation;
}

inline bool is_psi_phi_profile(const TwoPlayerStage& s, MovePair profile,
                               double tol,
                               std::uint64_t budget = kDefaultBudget) {
  return !find_psi_phi_violation(s, profile, tol, budget).has_value();
}

struct BbcComparison {
  MovePair product;
  MovePair bbc;
  Outcome product_outcome;
  Outcome bbc_outcome;
  bool same_first = false;
  bool same_second = false;
};

inline BbcComparison compare_bbc_vs_product(const TwoPlayerStage& s) {
  BbcComparison c;
  c.product = selection_product(s);
  c.bbc = bbc(s);
  const auto p = s.outcome(c.product.first, c.product.second);
  const auto b = s.outcome(c.bbc.first, c.bbc.second);
  c.product_outcome.assign(p.begin(), p.end());
  c.bbc_outcome.assign(b.begin(), b.end());
  c.same_first = c.product.first == c.bbc.first;
  c.same_second = c.product.second == c.bbc.second;
  return c;
}

}  // namespace hog
