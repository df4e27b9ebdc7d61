#pragma once

// Quantifiers and selection functions over finite move sets.
//
// A quantifier assigns to each outcome table p : X -> R a set of acceptable
// outcomes; it is represented by a membership test contains(p, r, tol), plus
// a canonical value when the set is a singleton. A selection function picks
// a move from an outcome table; it attains a quantifier when
// p(select(p)) is a member of the quantifier's set at p.
//
// Tie-breaking is deterministic everywhere: the lowest MoveId wins.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hog/errors.hpp"
#include "hog/indexing.hpp"
#include "hog/outcome.hpp"

namespace hog {

class Quantifier;

namespace qk {
struct Max {
  friend bool operator==(const Max&, const Max&) = default;
};
struct Min {
  friend bool operator==(const Min&, const Min&) = default;
};
// Set of fixed points {x : p(x) = x}; outcomes are move indices.
struct FixedPoint {
  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};
// Closed ball of the given radius around p(center).
struct EpsilonBall {
  MoveId center = 0;
  double radius = 0.0;
  friend bool operator==(const EpsilonBall&, const EpsilonBall&) = default;
};
// Finite stand-in for integration: the closed interval around the mean of p
// whose radius is the distance from the mean to the nearest table value.
struct Average {
  friend bool operator==(const Average&, const Average&) = default;
};
// phi(p) = inner(x -> p(positions[x])). Used for normal-form quantifiers,
// where positions are the constant contingent strategies.
struct Restricted {
  std::shared_ptr<const Quantifier> inner;
  std::vector<MoveId> positions;
};
struct Custom {
  std::string name;
  friend bool operator==(const Custom&, const Custom&) = default;
};
}  // namespace qk

using QuantifierKind = std::variant<qk::Max, qk::Min, qk::FixedPoint,
                                    qk::EpsilonBall, qk::Average,
                                    qk::Restricted, qk::Custom>;

namespace sk {
struct ArgMax {
  friend bool operator==(const ArgMax&, const ArgMax&) = default;
};
struct ArgMin {
  friend bool operator==(const ArgMin&, const ArgMin&) = default;
};
struct FixedPointWitness {
  friend bool operator==(const FixedPointWitness&,
                         const FixedPointWitness&) = default;
};
// Move whose value is nearest the mean of the table; attains qk::Average.
struct NearestAverage {
  friend bool operator==(const NearestAverage&,
                         const NearestAverage&) = default;
};
struct Constant {
  MoveId move = 0;
  friend bool operator==(const Constant&, const Constant&) = default;
};
struct Custom {
  std::string name;
  friend bool operator==(const Custom&, const Custom&) = default;
};
}  // namespace sk

using SelectionKind = std::variant<sk::ArgMax, sk::ArgMin, sk::FixedPointWitness,
                                   sk::NearestAverage, sk::Constant, sk::Custom>;

namespace detail {

inline double table_mean(const OutcomeTable& p) {
  double s = 0.0;
  for (MoveId x = 0; x < p.size(); ++x) s += p.scalar(x);
  return s / static_cast<double>(p.size());
}

inline MoveId nearest_to_mean(const OutcomeTable& p) {
  const double mean = table_mean(p);
  MoveId best = 0;
  double best_d = std::abs(p.scalar(0) - mean);
  for (MoveId x = 1; x < p.size(); ++x) {
    const double d = std::abs(p.scalar(x) - mean);
    if (d < best_d) {
      best = x;
      best_d = d;
    }
  }
  return best;
}

inline bool is_fixed_point(const OutcomeTable& p, MoveId x, double tol) {
  return std::abs(p.scalar(x) - static_cast<double>(x)) <= tol;
}

inline MoveId arg_best(const OutcomeTable& p, bool maximise) {
  MoveId best = 0;
  for (MoveId x = 1; x < p.size(); ++x) {
    const double v = p.scalar(x);
    if (maximise ? v > p.scalar(best) : v < p.scalar(best)) best = x;
  }
  return best;
}

}  // namespace detail

class Quantifier {
 public:
  using ContainsFn =
      std::function<bool(const OutcomeTable&, OutcomeView, double)>;
  using CanonicalFn = std::function<Outcome(const OutcomeTable&)>;

  static Quantifier max() {
    return Quantifier(qk::Max{}, 1, nullptr, [](const OutcomeTable& p) {
      return Outcome{p.scalar(detail::arg_best(p, true))};
    });
  }

  static Quantifier min() {
    return Quantifier(qk::Min{}, 1, nullptr, [](const OutcomeTable& p) {
      return Outcome{p.scalar(detail::arg_best(p, false))};
    });
  }

  static Quantifier fixed_point() {
    return Quantifier(
        qk::FixedPoint{}, 1,
        [](const OutcomeTable& p, OutcomeView r, double tol) {
          for (MoveId x = 0; x < p.size(); ++x) {
            if (detail::is_fixed_point(p, x, tol) &&
                std::abs(r[0] - static_cast<double>(x)) <= tol) {
              return true;
            }
          }
          return false;
        },
        nullptr);
  }

  static Quantifier epsilon_ball(MoveId center, double radius) {
    if (!(radius > 0.0)) {
      throw StructuralError("epsilon ball radius must be > 0");
    }
    return Quantifier(
        qk::EpsilonBall{center, radius}, 0,
        [center, radius](const OutcomeTable& p, OutcomeView r, double tol) {
          if (center >= p.size()) {
            throw StructuralError("epsilon ball center " +
                                  std::to_string(center) +
                                  " outside move set of size " +
                                  std::to_string(p.size()));
          }
          return euclidean_distance(r, p[center]) <= radius + tol;
        },
        nullptr);
  }

  static Quantifier average() {
    return Quantifier(
        qk::Average{}, 1,
        [](const OutcomeTable& p, OutcomeView r, double tol) {
          const double mean = detail::table_mean(p);
          const double reach =
              std::abs(p.scalar(detail::nearest_to_mean(p)) - mean);
          return std::abs(r[0] - mean) <= reach + tol;
        },
        nullptr);
  }

  static Quantifier restricted(Quantifier inner, std::vector<MoveId> positions) {
    auto shared = std::make_shared<const Quantifier>(std::move(inner));
    const std::size_t dim = shared->outcome_dim();
    auto restrict = [shared, positions](const OutcomeTable& p) {
      OutcomeTable r(positions.size(), p.dim());
      for (MoveId x = 0; x < positions.size(); ++x) {
        if (positions[x] >= p.size()) {
          throw StructuralError("restricted quantifier position out of range");
        }
        r.set(x, p[positions[x]]);
      }
      return r;
    };
    ContainsFn contains = [shared, restrict](const OutcomeTable& p,
                                             OutcomeView r, double tol) {
      return shared->contains(restrict(p), r, tol);
    };
    CanonicalFn canonical;
    if (shared->single_valued()) {
      canonical = [shared, restrict](const OutcomeTable& p) {
        return *shared->canonical(restrict(p));
      };
    }
    return Quantifier(qk::Restricted{shared, std::move(positions)}, dim,
                      std::move(contains), std::move(canonical));
  }

  // outcome_dim == 0 accepts any dimension. When only canonical is given the
  // membership test is |r - canonical(p)|_inf <= tol.
  static Quantifier custom(std::string name, std::size_t outcome_dim,
                           ContainsFn contains, CanonicalFn canonical = {}) {
    if (!contains && !canonical) {
      throw StructuralError("custom quantifier needs contains or canonical");
    }
    return Quantifier(qk::Custom{std::move(name)}, outcome_dim,
                      std::move(contains), std::move(canonical));
  }

  bool contains(const OutcomeTable& p, OutcomeView r, double tol) const {
    check_dims(p, r.size());
    if (p.size() == 0) throw StructuralError("empty outcome table");
    if (contains_) return contains_(p, r, tol);
    const Outcome c = canonical_(p);
    return linf_distance(r, c) <= tol;
  }

  bool single_valued() const { return static_cast<bool>(canonical_); }

  std::optional<Outcome> canonical(const OutcomeTable& p) const {
    if (!canonical_) return std::nullopt;
    check_dims(p, p.dim());
    return canonical_(p);
  }

  const QuantifierKind& kind() const { return kind_; }
  std::size_t outcome_dim() const { return outcome_dim_; }

 private:
  Quantifier(QuantifierKind kind, std::size_t outcome_dim, ContainsFn contains,
             CanonicalFn canonical)
      : kind_(std::move(kind)),
        outcome_dim_(outcome_dim),
        contains_(std::move(contains)),
        canonical_(std::move(canonical)) {}

  void check_dims(const OutcomeTable& p, std::size_t r_dim) const {
    if (r_dim != p.dim() || (outcome_dim_ != 0 && p.dim() != outcome_dim_)) {
      throw StructuralError(
          "outcome dimension mismatch: table " + std::to_string(p.dim()) +
          ", value " + std::to_string(r_dim) + ", quantifier " +
          (outcome_dim_ == 0 ? std::string("any")
                             : std::to_string(outcome_dim_)));
    }
  }

  QuantifierKind kind_;
  std::size_t outcome_dim_;
  ContainsFn contains_;
  CanonicalFn canonical_;
};

namespace qk {
inline bool operator==(const Restricted& a, const Restricted& b) {
  if (a.positions != b.positions) return false;
  if (!a.inner || !b.inner) return a.inner == b.inner;
  return a.inner->kind() == b.inner->kind();
}
}  // namespace qk

class SelectionFunction {
 public:
  using SelectFn = std::function<MoveId(const OutcomeTable&)>;
  using DomainFn = std::function<bool(const OutcomeTable&)>;

  static SelectionFunction argmax() {
    return SelectionFunction(sk::ArgMax{}, 1, [](const OutcomeTable& p) {
      return detail::arg_best(p, true);
    });
  }

  static SelectionFunction argmin() {
    return SelectionFunction(sk::ArgMin{}, 1, [](const OutcomeTable& p) {
      return detail::arg_best(p, false);
    });
  }

  // Lowest-index exact fixed point. Partial: throws DomainError when the
  // table has none.
  static SelectionFunction fixed_point_witness() {
    auto has_fixed_point = [](const OutcomeTable& p) {
      for (MoveId x = 0; x < p.size(); ++x) {
        if (detail::is_fixed_point(p, x, 0.0)) return true;
      }
      return false;
    };
    return SelectionFunction(
        sk::FixedPointWitness{}, 1,
        [](const OutcomeTable& p) -> MoveId {
          for (MoveId x = 0; x < p.size(); ++x) {
            if (detail::is_fixed_point(p, x, 0.0)) return x;
          }
          throw DomainError("outcome table has no fixed point");
        },
        has_fixed_point);
  }

  static SelectionFunction nearest_average() {
    return SelectionFunction(sk::NearestAverage{}, 1, &detail::nearest_to_mean);
  }

  static SelectionFunction constant(MoveId move) {
    return SelectionFunction(sk::Constant{move}, 0,
                             [move](const OutcomeTable&) { return move; });
  }

  static SelectionFunction custom(std::string name, std::size_t outcome_dim,
                                  SelectFn select, DomainFn domain = {}) {
    return SelectionFunction(sk::Custom{std::move(name)}, outcome_dim,
                             std::move(select), std::move(domain));
  }

  MoveId select(const OutcomeTable& p) const {
    if (p.size() == 0) throw StructuralError("empty outcome table");
    if (outcome_dim_ != 0 && p.dim() != outcome_dim_) {
      throw StructuralError("selection function expects outcome dimension " +
                            std::to_string(outcome_dim_) + ", got " +
                            std::to_string(p.dim()));
    }
    const MoveId x = select_(p);
    if (x >= p.size()) {
      throw StructuralError("selection returned move " + std::to_string(x) +
                            " outside move set of size " +
                            std::to_string(p.size()));
    }
    return x;
  }

  bool defined_on(const OutcomeTable& p) const { return !domain_ || domain_(p); }

  const SelectionKind& kind() const { return kind_; }
  std::size_t outcome_dim() const { return outcome_dim_; }

 private:
  SelectionFunction(SelectionKind kind, std::size_t outcome_dim,
                    SelectFn select, DomainFn domain = {})
      : kind_(std::move(kind)),
        outcome_dim_(outcome_dim),
        select_(std::move(select)),
        domain_(std::move(domain)) {}

  SelectionKind kind_;
  std::size_t outcome_dim_;
  SelectFn select_;
  DomainFn domain_;
};

// Does p(eps(p)) lie in phi(p)?
inline bool attains(const SelectionFunction& eps, const Quantifier& phi,
                    const OutcomeTable& p, double tol) {
  const MoveId x = eps.select(p);
  return phi.contains(p, p[x], tol);
}

// Searches all tables X -> grid (|X| = move_count) inside eps's domain for a
// failure of attainment; returns the first one in lexicographic order.
inline std::optional<OutcomeTable> find_attainment_counterexample(
    const SelectionFunction& eps, const Quantifier& phi,
    std::size_t move_count, const std::vector<Outcome>& grid, double tol,
    std::uint64_t budget = kDefaultBudget) {
  if (grid.empty()) throw StructuralError("outcome grid is empty");
  if (move_count == 0) throw StructuralError("move set is empty");
  const std::size_t dim = grid.front().size();
  for (const Outcome& o : grid) {
    if (o.size() != dim) throw StructuralError("ragged outcome grid");
  }
  const MixedRadix radix(std::vector<std::size_t>(move_count, grid.size()));
  require_within_budget(radix.size(), budget, "attainment table space");

  std::optional<OutcomeTable> failure;
  OutcomeTable p(move_count, dim);
  std::vector<MoveId> digits(move_count, 0);
  do {
    for (MoveId x = 0; x < move_count; ++x) p.set(x, grid[digits[x]]);
    if (eps.defined_on(p) && !attains(eps, phi, p, tol)) {
      failure = p;
      break;
    }
  } while (radix.next(digits));
  return failure;
}

inline bool attains_exhaustively(const SelectionFunction& eps,
                                 const Quantifier& phi, std::size_t move_count,
                                 const std::vector<Outcome>& grid, double tol,
                                 std::uint64_t budget = kDefaultBudget) {
  return !find_attainment_counterexample(eps, phi, move_count, grid, tol,
                                         budget)
              .has_value();
}

// A pair (p, x); it lies on the diagonal of phi when p(x) is in phi(p).
struct DiagonalPoint {
  OutcomeTable table;
  MoveId move = 0;
};

inline bool on_diagonal(const Quantifier& phi, const DiagonalPoint& point,
                        double tol) {
  return phi.contains(point.table, point.table[point.move], tol);
}

// {x : (p, x) on the diagonal of phi}, ascending.
inline std::vector<MoveId> diagonal_moves(const Quantifier& phi,
                                          const OutcomeTable& p, double tol) {
  std::vector<MoveId> moves;
  for (MoveId x = 0; x < p.size(); ++x) {
    if (phi.contains(p, p[x], tol)) moves.push_back(x);
  }
  return moves;
}

struct StandardParams {
  std::size_t outcome_dim = 1;
  // When set, move ids in parameters are range-checked against it.
  std::optional<std::size_t> move_count;
};

inline Quantifier make_standard_quantifier(const QuantifierKind& kind,
                                           const StandardParams& params = {}) {
  auto require_scalar_outcomes = [&](const char* name) {
    if (params.outcome_dim != 1) {
      throw StructuralError(std::string(name) +
                            " quantifier requires scalar outcomes, got "
                            "dimension " +
                            std::to_string(params.outcome_dim));
    }
  };
  return std::visit(
      [&](const auto& k) -> Quantifier {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, qk::Max>) {
          require_scalar_outcomes("max");
          return Quantifier::max();
        } else if constexpr (std::is_same_v<K, qk::Min>) {
          require_scalar_outcomes("min");
          return Quantifier::min();
        } else if constexpr (std::is_same_v<K, qk::FixedPoint>) {
          require_scalar_outcomes("fixed_point");
          return Quantifier::fixed_point();
        } else if constexpr (std::is_same_v<K, qk::Average>) {
          require_scalar_outcomes("average");
          return Quantifier::average();
        } else if constexpr (std::is_same_v<K, qk::EpsilonBall>) {
          if (params.move_count && k.center >= *params.move_count) {
            throw StructuralError("eps_ball center outside move set");
          }
          return Quantifier::epsilon_ball(k.center, k.radius);
        } else if constexpr (std::is_same_v<K, qk::Restricted>) {
          if (!k.inner) throw StructuralError("restricted quantifier has no inner");
          StandardParams inner_params{params.outcome_dim, k.positions.size()};
          return Quantifier::restricted(
              make_standard_quantifier(k.inner->kind(), inner_params),
              k.positions);
        } else {
          throw StructuralError("custom quantifier '" + k.name +
                                "' has no standard construction");
        }
      },
      kind);
}

inline SelectionFunction make_standard_selection(
    const SelectionKind& kind, const StandardParams& params = {}) {
  auto require_scalar_outcomes = [&](const char* name) {
    if (params.outcome_dim != 1) {
      throw StructuralError(std::string(name) +
                            " selection requires scalar outcomes");
    }
  };
  return std::visit(
      [&](const auto& k) -> SelectionFunction {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, sk::ArgMax>) {
          require_scalar_outcomes("argmax");
          return SelectionFunction::argmax();
        } else if constexpr (std::is_same_v<K, sk::ArgMin>) {
          require_scalar_outcomes("argmin");
          return SelectionFunction::argmin();
        } else if constexpr (std::is_same_v<K, sk::FixedPointWitness>) {
          require_scalar_outcomes("fixed_point_witness");
          return SelectionFunction::fixed_point_witness();
        } else if constexpr (std::is_same_v<K, sk::NearestAverage>) {
          require_scalar_outcomes("nearest_average");
          return SelectionFunction::nearest_average();
        } else if constexpr (std::is_same_v<K, sk::Constant>) {
          if (params.move_count && k.move >= *params.move_count) {
            throw StructuralError("constant selection move outside move set");
          }
          return SelectionFunction::constant(k.move);
        } else {
          throw StructuralError("custom selection '" + k.name +
                                "' has no standard construction");
        }
      },
      kind);
}

// The catalogue selection that attains a standard quantifier.
inline SelectionKind attaining_selection(const QuantifierKind& kind) {
  return std::visit(
      [](const auto& k) -> SelectionKind {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, qk::Max>) {
          return sk::ArgMax{};
        } else if constexpr (std::is_same_v<K, qk::Min>) {
          return sk::ArgMin{};
        } else if constexpr (std::is_same_v<K, qk::FixedPoint>) {
          return sk::FixedPointWitness{};
        } else if constexpr (std::is_same_v<K, qk::Average>) {
          return sk::NearestAverage{};
        } else if constexpr (std::is_same_v<K, qk::EpsilonBall>) {
          return sk::Constant{k.center};
        } else {
          throw StructuralError("no catalogue selection for this quantifier");
        }
      },
      kind);
}

inline std::string kind_name(const QuantifierKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, qk::Max>) return "max";
        else if constexpr (std::is_same_v<K, qk::Min>) return "min";
        else if constexpr (std::is_same_v<K, qk::FixedPoint>) return "fixed_point";
        else if constexpr (std::is_same_v<K, qk::EpsilonBall>) return "eps_ball";
        else if constexpr (std::is_same_v<K, qk::Average>) return "average";
        else if constexpr (std::is_same_v<K, qk::Restricted>) return "restricted";
        else return "custom:" + k.name;
      },
      kind);
}

inline std::string kind_name(const SelectionKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, sk::ArgMax>) return "argmax";
        else if constexpr (std::is_same_v<K, sk::ArgMin>) return "argmin";
        else if constexpr (std::is_same_v<K, sk::FixedPointWitness>) return "fixed_point_witness";
        else if constexpr (std::is_same_v<K, sk::NearestAverage>) return "nearest_average";
        else if constexpr (std::is_same_v<K, sk::Constant>) return "constant";
        else return "custom:" + k.name;
      },
      kind);
}

}  // namespace hog
