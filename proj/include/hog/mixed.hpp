#pragma once

// Mixed extension of a finite simultaneous game. Player i's strategies are
// points of the standard simplex over X_i; outcomes are the multilinear
// expectations
//   q_i*(pi) = sum_sigma (prod_j pi_{j, sigma_j}) q_i(sigma)
// and the lifted quantifier consults an outcome table over the simplex only
// through its vertices: phi_i*(p) = phi_i(p o vertex). Verification is
// therefore finite and exact for arbitrary quantifiers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hog/core.hpp"
#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/outcome.hpp"
#include "hog/simultaneous.hpp"

namespace hog {

inline constexpr double kSimplexTol = 1e-9;

// A point of the standard simplex. Inputs within tol of the simplex are
// clipped to nonnegative and renormalized; anything further away is rejected.
class MixedStrategy {
 public:
  explicit MixedStrategy(std::vector<double> probs,
                         double tol_simplex = kSimplexTol)
      : probs_(std::move(probs)) {
    if (probs_.empty()) throw StructuralError("mixed strategy over no moves");
    double sum = 0.0;
    for (double& p : probs_) {
      if (!std::isfinite(p) || p < -tol_simplex) {
        throw StructuralError("mixed strategy has entry outside the simplex: " +
                              std::to_string(p));
      }
      p = std::max(p, 0.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol_simplex) {
      throw StructuralError("mixed strategy sums to " + std::to_string(sum));
    }
    if (sum != 1.0) {
      for (double& p : probs_) p /= sum;
    }
  }

  // The canonical injection of move j.
  static MixedStrategy vertex(std::size_t n, MoveId j) {
    if (j >= n) throw StructuralError("vertex index out of range");
    std::vector<double> v(n, 0.0);
    v[j] = 1.0;
    return MixedStrategy(std::move(v));
  }

  static MixedStrategy uniform(std::size_t n) {
    return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](MoveId j) const { return probs_[j]; }
  const std::vector<double>& probs() const { return probs_; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  std::vector<double> probs_;
};

using MixedProfile = std::vector<MixedStrategy>;

inline MixedProfile vertex_profile(const SimultaneousGame& g,
                                   std::span<const MoveId> sigma) {
  g.validate_profile(sigma);
  MixedProfile pi;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    pi.push_back(MixedStrategy::vertex(g.move_count(i), sigma[i]));
  }
  return pi;
}

inline double linf_distance(const MixedProfile& a, const MixedProfile& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, linf_distance(a[i].probs(), b[i].probs()));
  }
  return d;
}

inline void validate_mixed_profile(const SimultaneousGame& g,
                                   const MixedProfile& pi) {
  if (pi.size() != g.player_count()) {
    throw StructuralError("mixed profile has " + std::to_string(pi.size()) +
                          " strategies, game has " +
                          std::to_string(g.player_count()) + " players");
  }
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (pi[i].size() != g.move_count(i)) {
      throw StructuralError("mixed strategy of player " + std::to_string(i) +
                            " has " + std::to_string(pi[i].size()) +
                            " entries, player has " +
                            std::to_string(g.move_count(i)) + " moves");
    }
  }
}

// Sum over pure profiles in lexicographic order; zero-weight terms are
// skipped, so vertex profiles reproduce q_i exactly.
inline Outcome expected_outcome(const SimultaneousGame& g, std::size_t i,
                                const MixedProfile& pi,
                                std::uint64_t budget = kDefaultBudget) {
  validate_mixed_profile(g, pi);
  require_within_budget(g.profile_space().size(), budget, "profile space");
  Outcome total(g.outcome_dim(i), 0.0);
  for_each_tuple(g.profile_space(), [&](std::span<const MoveId> sigma) {
    double w = 1.0;
    for (std::size_t j = 0; j < sigma.size() && w != 0.0; ++j) {
      w *= pi[j][sigma[j]];
    }
    if (w == 0.0) return;
    const Outcome r = g.outcome(i, sigma);
    for (std::size_t k = 0; k < r.size(); ++k) total[k] += w * r[k];
  });
  return total;
}

// x -> q_i*(pi with player i on the vertex of x). This is exactly the vertex
// restriction the lifted quantifier consults.
inline OutcomeTable mixed_unilateral_table(const SimultaneousGame& g,
                                           std::size_t i,
                                           const MixedProfile& pi,
                                           std::uint64_t budget = kDefaultBudget) {
  validate_mixed_profile(g, pi);
  MixedProfile deviated = pi;
  OutcomeTable table(g.move_count(i), g.outcome_dim(i));
  for (MoveId x = 0; x < g.move_count(i); ++x) {
    deviated[i] = MixedStrategy::vertex(g.move_count(i), x);
    table.set(x, expected_outcome(g, i, deviated, budget));
  }
  return table;
}

inline bool is_mixed_nash(const SimultaneousGame& g, const MixedProfile& pi,
                          double tol, std::uint64_t budget = kDefaultBudget) {
  validate_mixed_profile(g, pi);
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const OutcomeTable table = mixed_unilateral_table(g, i, pi, budget);
    const Outcome value = expected_outcome(g, i, pi, budget);
    if (!g.quantifier(i).contains(table, value, tol)) return false;
  }
  return true;
}

// An outcome table over the simplex, given as a function.
using SimplexFunction = std::function<Outcome(const MixedStrategy&)>;

inline OutcomeTable vertex_restriction(const SimplexFunction& p,
                                       std::size_t moves) {
  std::vector<Outcome> values;
  for (MoveId x = 0; x < moves; ++x) {
    values.push_back(p(MixedStrategy::vertex(moves, x)));
  }
  OutcomeTable t(moves, values.at(0).size());
  for (MoveId x = 0; x < moves; ++x) t.set(x, values[x]);
  return t;
}

// phi*(p) = phi(p o vertex).
class LiftedQuantifier {
 public:
  LiftedQuantifier(Quantifier inner, std::size_t moves)
      : inner_(std::move(inner)), moves_(moves) {}

  bool contains(const SimplexFunction& p, OutcomeView r, double tol) const {
    return inner_.contains(vertex_restriction(p, moves_), r, tol);
  }

 private:
  Quantifier inner_;
  std::size_t moves_;
};

// eps*(p) = vertex(eps(p o vertex)); attains phi* whenever eps attains phi.
class LiftedSelection {
 public:
  LiftedSelection(SelectionFunction inner, std::size_t moves)
      : inner_(std::move(inner)), moves_(moves) {}

  MixedStrategy select(const SimplexFunction& p) const {
    return MixedStrategy::vertex(moves_,
                                 inner_.select(vertex_restriction(p, moves_)));
  }

 private:
  SelectionFunction inner_;
  std::size_t moves_;
};

inline LiftedQuantifier lift_quantifier(Quantifier phi, std::size_t moves) {
  return LiftedQuantifier(std::move(phi), moves);
}

inline LiftedSelection lift_selection(SelectionFunction eps, std::size_t moves) {
  return LiftedSelection(std::move(eps), moves);
}

namespace detail {

inline bool profile_less(const MixedProfile& a, const MixedProfile& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].probs() != b[i].probs()) return a[i].probs() < b[i].probs();
  }
  return false;
}

inline void add_unique(std::vector<MixedProfile>& out, MixedProfile pi,
                       double tol) {
  for (const MixedProfile& seen : out) {
    if (linf_distance(seen, pi) <= tol) return;
  }
  out.push_back(std::move(pi));
}

inline std::vector<std::vector<MoveId>> nonempty_subsets(std::size_t n) {
  std::vector<std::vector<MoveId>> subsets;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<MoveId> s;
    for (MoveId k = 0; k < n; ++k) {
      if (mask & (std::uint64_t{1} << k)) s.push_back(k);
    }
    subsets.push_back(std::move(s));
  }
  return subsets;
}

// Mixed strategies of the "mover" with support in `support` that make the
// opponent indifferent across `indifferent` (payoff matrix of the opponent,
// indexed [mover move][opponent move]) with those moves among the
// opponent's best replies. Only uniquely determined solutions are kept.
inline std::vector<std::vector<double>> indifference_candidates(
    const Eigen::MatrixXd& opponent_payoff, double tol,
    std::size_t& singular) {
  const auto mover_n = static_cast<std::size_t>(opponent_payoff.rows());
  const auto opp_n = static_cast<std::size_t>(opponent_payoff.cols());
  std::vector<std::vector<double>> out;
  for (const auto& support : nonempty_subsets(mover_n)) {
    for (const auto& indiff : nonempty_subsets(opp_n)) {
      const auto k = static_cast<Eigen::Index>(support.size());
      const auto m = static_cast<Eigen::Index>(indiff.size());
      // Unknowns: x_s for s in support, then the common value v.
      Eigen::MatrixXd system = Eigen::MatrixXd::Zero(m + 1, k + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
      for (Eigen::Index t = 0; t < m; ++t) {
        for (Eigen::Index s = 0; s < k; ++s) {
          system(t, s) = opponent_payoff(static_cast<Eigen::Index>(support[s]),
                                         static_cast<Eigen::Index>(indiff[t]));
        }
        system(t, k) = -1.0;
      }
      for (Eigen::Index s = 0; s < k; ++s) system(m, s) = 1.0;
      rhs(m) = 1.0;

      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
      qr.setThreshold(1e-12);
      if (qr.rank() < k + 1) {
        ++singular;
        continue;
      }
      const Eigen::VectorXd sol = qr.solve(rhs);
      if ((system * sol - rhs).cwiseAbs().maxCoeff() > tol) continue;

      std::vector<double> x(mover_n, 0.0);
      bool feasible = true;
      double sum = 0.0;
      for (Eigen::Index s = 0; s < k; ++s) {
        double p = sol(s);
        if (p < -tol) {
          feasible = false;
          break;
        }
        if (p < tol) p = 0.0;
        x[support[s]] = p;
        sum += p;
      }
      if (!feasible || sum <= 0.0) continue;
      for (double& p : x) p /= sum;

      // The indifferent moves must be best replies.
      const double v = sol(k);
      for (std::size_t t = 0; t < opp_n && feasible; ++t) {
        double payoff = 0.0;
        for (std::size_t s = 0; s < mover_n; ++s) {
          payoff += x[s] * opponent_payoff(static_cast<Eigen::Index>(s),
                                           static_cast<Eigen::Index>(t));
        }
        if (payoff > v + tol) feasible = false;
      }
      if (!feasible) continue;

      bool duplicate = false;
      for (const auto& seen : out) {
        if (linf_distance(seen, x) <= tol) duplicate = true;
      }
      if (!duplicate) out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace detail

struct SupportEnumerationResult {
  std::vector<MixedProfile> equilibria;
  // Support/indifference systems skipped because they were rank deficient.
  std::size_t singular_systems = 0;

  // Every finite game with attained quantifiers has a mixed equilibrium, so
  // an empty result means the solver is broken.
  bool contradicts_existence() const { return equilibria.empty(); }
};

// All extreme equilibria of a 2-player game with scalar outcomes and Max
// quantifiers. Candidate strategies for each player are the unique solutions
// of the indifference systems over every (support, indifference set) pair;
// every pairing of candidates is certified with is_mixed_nash.
inline SupportEnumerationResult solve_support_enumeration_2p(
    const SimultaneousGame& g, double tol) {
  if (g.player_count() != 2) {
    throw StructuralError("support enumeration needs exactly 2 players");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (g.outcome_dim(i) != 1 ||
        !std::holds_alternative<qk::Max>(g.quantifier(i).kind())) {
      throw StructuralError(
          "support enumeration needs scalar outcomes and max quantifiers");
    }
    if (g.move_count(i) > 16) {
      throw ResourceError("support enumeration move set too large",
                          g.move_count(i));
    }
  }
  const std::size_t rows = g.move_count(0);
  const std::size_t cols = g.move_count(1);
  Eigen::MatrixXd a(rows, cols);
  Eigen::MatrixXd b(rows, cols);
  for (MoveId r = 0; r < rows; ++r) {
    for (MoveId c = 0; c < cols; ++c) {
      const PureProfile s{r, c};
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g.outcome(0, s)[0];
      b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = g.outcome(1, s)[0];
    }
  }

  SupportEnumerationResult result;
  // Row strategies equalise the column player's payoffs and vice versa.
  const auto row_candidates =
      detail::indifference_candidates(b, tol, result.singular_systems);
  const Eigen::MatrixXd a_t = a.transpose();
  const auto col_candidates =
      detail::indifference_candidates(a_t, tol, result.singular_systems);

  for (const auto& x : row_candidates) {
    for (const auto& y : col_candidates) {
      MixedProfile pi{MixedStrategy(x), MixedStrategy(y)};
      if (is_mixed_nash(g, pi, tol)) detail::add_unique(result.equilibria, std::move(pi), tol);
    }
  }
  std::sort(result.equilibria.begin(), result.equilibria.end(),
            detail::profile_less);
  return result;
}

// Points of the simplex over n moves whose coordinates are multiples of 1/k.
inline std::vector<MixedStrategy> simplex_grid(std::size_t n, std::size_t k) {
  if (k == 0) throw StructuralError("grid depth must be >= 1");
  std::vector<MixedStrategy> out;
  std::vector<std::size_t> counts(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
    if (pos + 1 == n) {
      counts[pos] = remaining;
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) {
        p[j] = static_cast<double>(counts[j]) / static_cast<double>(k);
      }
      out.emplace_back(std::move(p));
      return;
    }
    for (std::size_t c = remaining + 1; c-- > 0;) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, k);
  return out;
}

// Fallback for any number of players and any quantifiers: every profile on
// the product of simplex grids with denominator k is certified directly, and
// uncertified ones are refined by moving unsatisfied players to the vertex of
// their lowest diagonal move. Returns only certified profiles, sorted; it is
// not guaranteed to find every equilibrium.
inline std::vector<MixedProfile> solve_generic(
    const SimultaneousGame& g, std::size_t grid_depth, double tol,
    std::uint64_t budget = kDefaultBudget) {
  std::vector<std::vector<MixedStrategy>> grids;
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    grids.push_back(simplex_grid(g.move_count(i), grid_depth));
    sizes.push_back(grids.back().size());
  }
  const MixedRadix grid_space(sizes);
  require_within_budget(grid_space.size(), budget, "mixed strategy grid");
  require_within_budget(g.profile_space().size(), budget, "profile space");

  const std::size_t max_rounds = 2 * g.player_count();
  std::vector<MixedProfile> found;
  for_each_tuple(grid_space, [&](std::span<const MoveId> cell) {
    MixedProfile pi;
    for (std::size_t i = 0; i < cell.size(); ++i) pi.push_back(grids[i][cell[i]]);
    for (std::size_t round = 0; round <= max_rounds; ++round) {
      bool changed = false;
      bool certified = true;
      for (std::size_t i = 0; i < g.player_count(); ++i) {
        const OutcomeTable table = mixed_unilateral_table(g, i, pi);
        if (g.quantifier(i).contains(table, expected_outcome(g, i, pi), tol)) {
          continue;
        }
        certified = false;
        const auto moves = diagonal_moves(g.quantifier(i), table, tol);
        if (!moves.empty()) {
          MixedStrategy v = MixedStrategy::vertex(g.move_count(i), moves.front());
          if (!(v == pi[i])) {
            pi[i] = std::move(v);
            changed = true;
          }
        }
      }
      if (certified) {
        detail::add_unique(found, pi, tol);
        break;
      }
      if (!changed) break;
    }
  });
  std::sort(found.begin(), found.end(), detail::profile_less);
  return found;
}

}  // namespace hog
