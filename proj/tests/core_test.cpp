#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hog/hog.hpp"

namespace hog {
namespace {

std::vector<Outcome> scalar_grid(std::initializer_list<double> values) {
  std::vector<Outcome> grid;
  for (double v : values) grid.push_back({v});
  return grid;
}

TEST(Quantifier, MaxContainsOnlyTheMaximum) {
  const auto p = OutcomeTable::scalars({1, 3, 2});
  const Quantifier phi = Quantifier::max();
  EXPECT_TRUE(phi.single_valued());
  EXPECT_EQ(*phi.canonical(p), Outcome{3});
  EXPECT_TRUE(phi.contains(p, Outcome{3}, 0.0));
  EXPECT_FALSE(phi.contains(p, Outcome{2}, 0.0));
  EXPECT_TRUE(phi.contains(p, Outcome{2.9}, 0.1 + 1e-12));
}

TEST(Quantifier, MaxOnTieStillSingleValued) {
  const auto p = OutcomeTable::scalars({2, 2});
  EXPECT_EQ(*Quantifier::max().canonical(p), Outcome{2});
  EXPECT_TRUE(Quantifier::max().contains(p, Outcome{2}, 0.0));
}

TEST(Quantifier, MinMirrorsMax) {
  const auto p = OutcomeTable::scalars({1, -4, 2});
  EXPECT_EQ(*Quantifier::min().canonical(p), Outcome{-4});
  EXPECT_FALSE(Quantifier::min().contains(p, Outcome{1}, 0.0));
}

TEST(Quantifier, EpsilonBallIsClosed) {
  const auto p = OutcomeTable::scalars({5, 5.05});
  const Quantifier phi = Quantifier::epsilon_ball(0, 0.1);
  EXPECT_FALSE(phi.single_valued());
  EXPECT_TRUE(phi.contains(p, Outcome{5.05}, 0.0));
  EXPECT_TRUE(phi.contains(p, Outcome{5.1}, 1e-12));
  EXPECT_FALSE(phi.contains(p, Outcome{5.2}, 0.0));
}

TEST(Quantifier, EpsilonBallOnVectors) {
  OutcomeTable p(2, 2);
  p.set(0, Outcome{0, 0});
  p.set(1, Outcome{0.3, 0.4});
  EXPECT_TRUE(Quantifier::epsilon_ball(0, 0.5).contains(p, p[1], 1e-12));
  EXPECT_FALSE(Quantifier::epsilon_ball(0, 0.49).contains(p, p[1], 0.0));
}

TEST(Quantifier, FixedPointSet) {
  const auto p = OutcomeTable::scalars({1, 1});
  const Quantifier phi = Quantifier::fixed_point();
  EXPECT_TRUE(phi.contains(p, Outcome{1}, 0.0));
  EXPECT_FALSE(phi.contains(p, Outcome{0}, 0.0));
  // No fixed point at all: the set is empty.
  const auto q = OutcomeTable::scalars({1, 0});
  EXPECT_FALSE(phi.contains(q, Outcome{0}, 0.0));
  EXPECT_FALSE(phi.contains(q, Outcome{1}, 0.0));
}

TEST(Quantifier, AverageContainsNearestValue) {
  const auto p = OutcomeTable::scalars({0, 1, 5});  // mean 2
  const Quantifier phi = Quantifier::average();
  EXPECT_TRUE(phi.contains(p, Outcome{1}, 0.0));
  EXPECT_TRUE(phi.contains(p, Outcome{2}, 0.0));
  EXPECT_FALSE(phi.contains(p, Outcome{0}, 0.0));
  EXPECT_FALSE(phi.contains(p, Outcome{5}, 0.0));
}

TEST(Quantifier, RestrictedLooksOnlyAtPositions) {
  const auto p = OutcomeTable::scalars({7, 1, 9, 2});
  const Quantifier phi = Quantifier::restricted(Quantifier::max(), {1, 3});
  EXPECT_TRUE(phi.single_valued());
  EXPECT_EQ(*phi.canonical(p), Outcome{2});
  EXPECT_TRUE(phi.contains(p, Outcome{2}, 0.0));
  EXPECT_FALSE(phi.contains(p, Outcome{9}, 0.0));
}

TEST(Quantifier, DimensionMismatchIsStructural) {
  OutcomeTable p(2, 2);
  EXPECT_THROW(Quantifier::max().contains(p, Outcome{0, 0}, 0.0), StructuralError);
  const auto s = OutcomeTable::scalars({1, 2});
  EXPECT_THROW(Quantifier::epsilon_ball(0, 1).contains(s, Outcome{1, 2}, 0.0),
               StructuralError);
}

TEST(Quantifier, StandardConstructorValidates) {
  EXPECT_THROW(make_standard_quantifier(qk::FixedPoint{}, {2, std::nullopt}),
               StructuralError);
  EXPECT_THROW(make_standard_quantifier(qk::Max{}, {3, std::nullopt}),
               StructuralError);
  EXPECT_THROW(make_standard_quantifier(qk::EpsilonBall{0, 0.0}), StructuralError);
  EXPECT_THROW(make_standard_quantifier(qk::EpsilonBall{4, 1.0}, {1, 3}),
               StructuralError);
  EXPECT_THROW(make_standard_quantifier(qk::Custom{"foo"}), StructuralError);
  EXPECT_NO_THROW(make_standard_quantifier(qk::EpsilonBall{2, 1.0}, {2, 3}));
}

TEST(Selection, ArgMaxTieBreaksLow) {
  EXPECT_EQ(SelectionFunction::argmax().select(OutcomeTable::scalars({1, 3, 3})), 1u);
  EXPECT_EQ(SelectionFunction::argmin().select(OutcomeTable::scalars({2, 0, 0})), 1u);
}

TEST(Selection, FixedPointWitnessOutsideDomain) {
  const auto sel = SelectionFunction::fixed_point_witness();
  const auto none = OutcomeTable::scalars({1, 0});
  EXPECT_FALSE(sel.defined_on(none));
  EXPECT_THROW(sel.select(none), DomainError);
  EXPECT_EQ(sel.select(OutcomeTable::scalars({2, 1, 2})), 1u);
}

TEST(Selection, ConstantRangeChecked) {
  EXPECT_THROW(SelectionFunction::constant(3).select(OutcomeTable::scalars({0, 1})),
               StructuralError);
  EXPECT_THROW(make_standard_selection(sk::Constant{2}, {1, 2}), StructuralError);
}

TEST(Attainment, SpecExamples) {
  EXPECT_TRUE(attains(SelectionFunction::argmax(), Quantifier::max(),
                      OutcomeTable::scalars({1, 3, 2}), 0.0));
  EXPECT_FALSE(attains(SelectionFunction::argmin(), Quantifier::max(),
                       OutcomeTable::scalars({0, 1}), 0.0));
  const auto binary = scalar_grid({0, 1});
  EXPECT_TRUE(attains_exhaustively(SelectionFunction::argmax(), Quantifier::max(),
                                   2, binary, 0.0));
  EXPECT_TRUE(attains_exhaustively(SelectionFunction::fixed_point_witness(),
                                   Quantifier::fixed_point(), 3,
                                   scalar_grid({0, 1, 2}), 0.0));
  const auto cex = find_attainment_counterexample(
      SelectionFunction::constant(0), Quantifier::max(), 2, binary, 0.0);
  ASSERT_TRUE(cex.has_value());
  EXPECT_EQ(*cex, OutcomeTable::scalars({0, 1}));
}

TEST(Attainment, ConstantCenterAttainsEpsilonBall) {
  Rng rng(7);
  const Quantifier phi = Quantifier::epsilon_ball(1, 0.5);
  for (int trial = 0; trial < 200; ++trial) {
    OutcomeTable p(3, 1);
    for (MoveId x = 0; x < 3; ++x) p.set_scalar(x, rng.unit() * 10 - 5);
    EXPECT_TRUE(attains(SelectionFunction::constant(1), phi, p, 0.0));
  }
}

// Every catalogue pairing attains its quantifier on all tables over a small
// grid, at tol 0.
TEST(Attainment, CatalogueExhaustive) {
  const auto grid = scalar_grid({-1, 0, 1, 2});
  for (std::size_t moves = 1; moves <= 4; ++moves) {
    EXPECT_TRUE(attains_exhaustively(SelectionFunction::argmax(),
                                     Quantifier::max(), moves, grid, 0.0));
    EXPECT_TRUE(attains_exhaustively(SelectionFunction::argmin(),
                                     Quantifier::min(), moves, grid, 0.0));
    EXPECT_TRUE(attains_exhaustively(SelectionFunction::nearest_average(),
                                     Quantifier::average(), moves, grid, 0.0));
    EXPECT_TRUE(attains_exhaustively(SelectionFunction::fixed_point_witness(),
                                     Quantifier::fixed_point(), moves,
                                     scalar_grid({0, 1, 2, 3}), 0.0));
    EXPECT_TRUE(attains_exhaustively(SelectionFunction::constant(0),
                                     Quantifier::epsilon_ball(0, 0.5), moves,
                                     grid, 0.0));
  }
}

TEST(Attainment, ArgMaxValueIsExactMaximum) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.index(5);
    OutcomeTable p(n, 1);
    double best = -INFINITY;
    for (MoveId x = 0; x < n; ++x) {
      const double v = static_cast<double>(rng.uniform_int(-3, 3));
      p.set_scalar(x, v);
      best = std::max(best, v);
    }
    const MoveId chosen = SelectionFunction::argmax().select(p);
    EXPECT_EQ(p.scalar(chosen), best);
    for (MoveId x = 0; x < chosen; ++x) EXPECT_LT(p.scalar(x), best);
  }
}

// For single-valued quantifiers, membership at tol 0 is equality with the
// canonical value.
TEST(Quantifier, SingleValuedConsistency) {
  Rng rng(3);
  for (const Quantifier& phi : {Quantifier::max(), Quantifier::min()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng.index(4);
      OutcomeTable p(n, 1);
      for (MoveId x = 0; x < n; ++x) {
        p.set_scalar(x, static_cast<double>(rng.uniform_int(-2, 2)));
      }
      const double c = (*phi.canonical(p))[0];
      for (int r = -3; r <= 3; ++r) {
        EXPECT_EQ(phi.contains(p, Outcome{double(r)}, 0.0), double(r) == c);
      }
    }
  }
}

TEST(Diagonal, MovesOnDiagonal) {
  const auto p = OutcomeTable::scalars({2, 5, 5, 1});
  EXPECT_EQ(diagonal_moves(Quantifier::max(), p, 0.0), (std::vector<MoveId>{1, 2}));
  EXPECT_TRUE(on_diagonal(Quantifier::min(), {p, 3}, 0.0));
  EXPECT_FALSE(on_diagonal(Quantifier::min(), {p, 0}, 0.0));
}

TEST(Budget, ExceededCarriesCount) {
  try {
    find_attainment_counterexample(SelectionFunction::argmax(), Quantifier::max(),
                                   10, scalar_grid({0, 1, 2, 3}), 0.0, 1000);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.count(), 1u << 20);
  }
}

TEST(Indexing, MixedRadixRoundTrip) {
  const MixedRadix r({2, 3, 4});
  EXPECT_EQ(r.size(), 24u);
  std::uint64_t k = 0;
  for_each_tuple(r, [&](std::span<const MoveId> d) {
    EXPECT_EQ(r.encode(d), k);
    EXPECT_EQ(r.decode(k), std::vector<MoveId>(d.begin(), d.end()));
    ++k;
  });
  EXPECT_EQ(k, 24u);
  EXPECT_EQ(checked_power(3, 50), ResourceError::kOverflow);
}

}  // namespace
}  // namespace hog
