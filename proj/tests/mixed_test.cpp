#include <gtest/gtest.h>

#include <cmath>

#include "hog/hog.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace hog {
namespace {

using testing::coordination;
using testing::matching_pennies;
using testing::rock_paper_scissors;

TEST(MixedStrategy, Validation) {
  EXPECT_THROW(MixedStrategy({0.5, 0.6}), StructuralError);
  EXPECT_THROW(MixedStrategy({1.5, -0.5}), StructuralError);
  EXPECT_THROW(MixedStrategy({}), StructuralError);
  EXPECT_THROW(MixedStrategy({NAN, 1.0}), StructuralError);
  const MixedStrategy s({-1e-12, 1.0 + 1e-12});
  EXPECT_EQ(s[0], 0.0);
  EXPECT_DOUBLE_EQ(s[1], 1.0);
}

TEST(Expected, VertexProfileIsThePureOutcome) {
  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = to_simultaneous(random_max_game(rng, {}));
    for_each_tuple(g.profile_space(), [&](std::span<const MoveId> s) {
      const MixedProfile pi = vertex_profile(g, s);
      for (std::size_t i = 0; i < g.player_count(); ++i) {
        EXPECT_EQ(expected_outcome(g, i, pi), g.outcome(i, s));
        EXPECT_EQ(mixed_unilateral_table(g, i, pi), unilateral_map(g, i, s));
      }
    });
  }
}

TEST(Expected, Examples) {
  const auto one = SimultaneousGame::from_tensors({3}, {{1, 2, 6}}, {1},
                                                  {Quantifier::max()});
  EXPECT_DOUBLE_EQ(expected_outcome(one, 0, {MixedStrategy::uniform(3)})[0], 3.0);

  const auto mp = matching_pennies();
  const MixedProfile half{MixedStrategy::uniform(2), MixedStrategy::uniform(2)};
  EXPECT_EQ(expected_outcome(mp, 0, half), Outcome{0});
  EXPECT_EQ(mixed_unilateral_table(mp, 0, half), OutcomeTable::scalars({0, 0}));
}

// Expected payoff is affine in each player's mixed strategy.
TEST(Expected, Multilinear) {
  Rng rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = to_simultaneous(random_max_game(rng, {1, 3, 1, 3, -9, 9}));
    MixedProfile pi;
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      pi.push_back(random_mixed_strategy(rng, g.move_count(i)));
    }
    const std::size_t j = rng.index(g.player_count());
    const std::size_t i = rng.index(g.player_count());
    const double t = rng.unit();
    const MixedStrategy a = random_mixed_strategy(rng, g.move_count(j));
    const MixedStrategy b = random_mixed_strategy(rng, g.move_count(j));
    std::vector<double> mix(a.size());
    for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = t * a[k] + (1 - t) * b[k];
    MixedProfile pa = pi, pb = pi, pm = pi;
    pa[j] = a;
    pb[j] = b;
    pm[j] = MixedStrategy(mix);
    const double lhs = expected_outcome(g, i, pm)[0];
    const double rhs = t * expected_outcome(g, i, pa)[0] +
                       (1 - t) * expected_outcome(g, i, pb)[0];
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(Expected, MatchesDoubleLoopOracle) {
  Rng rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const GameFile f = random_max_game(rng, {2, 2, 1, 4, -9, 9});
    const auto g = to_simultaneous(f);
    const std::size_t r = g.move_count(0), c = g.move_count(1);
    oracle::Matrix a(r, oracle::Row(c));
    for (std::size_t x = 0; x < r; ++x) {
      for (std::size_t y = 0; y < c; ++y) a[x][y] = f.payoffs[0][x * c + y];
    }
    const MixedStrategy sx = random_mixed_strategy(rng, r);
    const MixedStrategy sy = random_mixed_strategy(rng, c);
    EXPECT_NEAR(expected_outcome(g, 0, {sx, sy})[0],
                oracle::expected_2p(a, sx.probs(), sy.probs()), 1e-9);
  }
}

TEST(MixedNash, Examples) {
  const auto mp = matching_pennies();
  EXPECT_TRUE(is_mixed_nash(mp, {MixedStrategy::uniform(2), MixedStrategy::uniform(2)},
                            1e-12));
  EXPECT_FALSE(is_mixed_nash(mp, {MixedStrategy({0.6, 0.4}), MixedStrategy::uniform(2)},
                             1e-12));
  const auto co = coordination();
  EXPECT_TRUE(is_mixed_nash(co, vertex_profile(co, PureProfile{1, 1}), 0.0));
  EXPECT_FALSE(is_mixed_nash(co, vertex_profile(co, PureProfile{0, 1}), 0.0));
}

// Pure equilibria embed as vertex equilibria and conversely.
TEST(MixedNash, VertexAgreesWithPure) {
  Rng rng(73);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = to_simultaneous(random_max_game(rng, {}));
    for_each_tuple(g.profile_space(), [&](std::span<const MoveId> s) {
      EXPECT_EQ(is_mixed_nash(g, vertex_profile(g, s), 0.0),
                is_generalised_nash(g, s, 0.0));
    });
  }
}

TEST(Lifted, SelectionPicksVertex) {
  const auto lifted = lift_selection(SelectionFunction::argmax(), 2);
  const SimplexFunction flat = [](const MixedStrategy&) { return Outcome{0}; };
  EXPECT_EQ(lifted.select(flat), MixedStrategy::vertex(2, 0));
  const auto constant = lift_selection(SelectionFunction::constant(1), 3);
  EXPECT_EQ(constant.select(flat), MixedStrategy::vertex(3, 1));
}

// Linear functions on the simplex with integer vertex values: the lifted
// selection attains the lifted quantifier at tol 0.
TEST(Lifted, AttainmentOnIntegerGrids) {
  Rng rng(79);
  const std::vector<std::pair<Quantifier, SelectionFunction>> pairs = {
      {Quantifier::max(), SelectionFunction::argmax()},
      {Quantifier::min(), SelectionFunction::argmin()},
      {Quantifier::average(), SelectionFunction::nearest_average()}};
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    std::vector<double> values(n);
    for (double& v : values) v = static_cast<double>(rng.uniform_int(-5, 5));
    const SimplexFunction p = [values](const MixedStrategy& s) {
      double total = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (s[k] != 0.0) total += s[k] * values[k];
      }
      return Outcome{total};
    };
    const auto& [phi, eps] = pairs[rng.index(pairs.size())];
    const MixedStrategy chosen = lift_selection(eps, n).select(p);
    EXPECT_TRUE(lift_quantifier(phi, n).contains(p, p(chosen), 0.0));
  }
}

TEST(SupportEnumeration, MatchingPennies) {
  const auto result = solve_support_enumeration_2p(matching_pennies(), 1e-9);
  ASSERT_EQ(result.equilibria.size(), 1u);
  const MixedProfile half{MixedStrategy::uniform(2), MixedStrategy::uniform(2)};
  EXPECT_LE(linf_distance(result.equilibria[0], half), 1e-9);
  EXPECT_TRUE(is_mixed_nash(matching_pennies(), result.equilibria[0], 1e-9));
}

TEST(SupportEnumeration, RockPaperScissors) {
  const auto result = solve_support_enumeration_2p(rock_paper_scissors(), 1e-9);
  ASSERT_EQ(result.equilibria.size(), 1u);
  const MixedProfile third{MixedStrategy::uniform(3), MixedStrategy::uniform(3)};
  EXPECT_LE(linf_distance(result.equilibria[0], third), 1e-9);
}

TEST(SupportEnumeration, DominantStrategyGivesVertex) {
  const auto result = solve_support_enumeration_2p(testing::prisoners_dilemma(), 1e-9);
  ASSERT_EQ(result.equilibria.size(), 1u);
  EXPECT_EQ(result.equilibria[0],
            vertex_profile(testing::prisoners_dilemma(), PureProfile{1, 1}));
}

TEST(SupportEnumeration, CoordinationHasThree) {
  const auto result = solve_support_enumeration_2p(coordination(), 1e-9);
  ASSERT_EQ(result.equilibria.size(), 3u);
  for (const auto& pi : result.equilibria) {
    EXPECT_TRUE(is_mixed_nash(coordination(), pi, 1e-9));
  }
}

// Generic 2x2 games with no pure equilibrium: the unique equilibrium is the
// closed-form indifference solution.
TEST(SupportEnumeration, MatchesClosedForm2x2) {
  Rng rng(83);
  int checked = 0;
  while (checked < 100) {
    const GameFile f = random_max_game(rng, {2, 2, 2, 2, -9, 9});
    const auto g = to_simultaneous(f);
    if (!enumerate_pure_equilibria(g, 0.0).empty()) continue;
    const auto& a = f.payoffs[0];
    const auto& b = f.payoffs[1];
    const auto [p, q] = oracle::mixed_2x2({{a[0], a[1]}, {a[2], a[3]}},
                                          {{b[0], b[1]}, {b[2], b[3]}});
    const auto result = solve_support_enumeration_2p(g, 1e-9);
    ASSERT_EQ(result.equilibria.size(), 1u);
    EXPECT_NEAR(result.equilibria[0][0][0], p, 1e-9);
    EXPECT_NEAR(result.equilibria[0][1][0], q, 1e-9);
    ++checked;
  }
}

TEST(SupportEnumeration, AlwaysFindsCertifiedEquilibrium) {
  Rng rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = to_simultaneous(random_max_game(rng, {2, 2, 1, 4, -9, 9}));
    const auto result = solve_support_enumeration_2p(g, 1e-9);
    EXPECT_FALSE(result.contradicts_existence());
    for (const auto& pi : result.equilibria) {
      EXPECT_TRUE(is_mixed_nash(g, pi, 1e-9));
    }
  }
}

TEST(SupportEnumeration, RejectsNonMaxGames) {
  const auto f = load_game_file(testing::game_path("eps_ball.json"));
  EXPECT_THROW(solve_support_enumeration_2p(to_simultaneous(f), 1e-9),
               StructuralError);
}

TEST(Generic, FindsMatchingPenniesOnHalfGrid) {
  const auto found = solve_generic(matching_pennies(), 2, 1e-9);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0][0], MixedStrategy::uniform(2));
}

TEST(Generic, EpsilonBallProfilesAreCertified) {
  const auto g = to_simultaneous(load_game_file(testing::game_path("eps_ball.json")));
  const auto found = solve_generic(g, 2, 1e-9);
  EXPECT_FALSE(found.empty());
  for (const auto& pi : found) EXPECT_TRUE(is_mixed_nash(g, pi, 1e-9));
}

TEST(Generic, SimplexGridSize) {
  // C(k + n - 1, n - 1).
  EXPECT_EQ(simplex_grid(3, 4).size(), 15u);
  EXPECT_EQ(simplex_grid(1, 5).size(), 1u);
  EXPECT_EQ(simplex_grid(2, 1).size(), 2u);
}

}  // namespace
}  // namespace hog
