#include <gtest/gtest.h>

#include "hatlab/ordinal_line.hpp"
#include "hatlab/random_instances.hpp"
#include "hatlab/strategies.hpp"

using namespace hatlab;

namespace {

OrdinalPosition ord(std::uint32_t k, std::uint64_t n) { return OrdinalPosition::ordinal(k, n); }

LazySequence random_sequence(Rng& rng, Color mu) {
  LazySequence s{static_cast<Color>(rng() % mu), {}};
  const int count = static_cast<int>(rng() % 8);
  for (int i = 0; i < count; ++i) {
    s.exceptions[ord(static_cast<std::uint32_t>(rng() % 3), rng() % 20)] = static_cast<Color>(rng() % mu);
  }
  return s;
}

}  // namespace

TEST(OrdinalPosition, OrderingAndNames) {
  EXPECT_LT(OrdinalPosition::front_player(), ord(0, 0));
  EXPECT_LT(ord(0, 1'000'000), ord(1, 0));
  EXPECT_LT(ord(2, 3), ord(2, 4));
  EXPECT_EQ(ord(0, 7).to_string(), "7");
  EXPECT_EQ(ord(1, 0).to_string(), "w");
  EXPECT_EQ(ord(1, 2).to_string(), "w+2");
  EXPECT_EQ(ord(3, 1).to_string(), "w*3+1");
  EXPECT_EQ(OrdinalPosition::front_player().to_string(), "front");
}

TEST(SigmaPrime, Examples) {
  EXPECT_EQ(sigma_prime(LazySequence{0, {{ord(0, 5), 1}, {ord(0, 17), 2}}}, ColorSpace{3}), 0u);
  EXPECT_EQ(sigma_prime(LazySequence{2, {}}, ColorSpace{3}), 0u);
  EXPECT_EQ(sigma_prime(LazySequence{1, {{ord(0, 0), 1}, {ord(1, 4), 1}}}, ColorSpace{5}), 0u);
  EXPECT_EQ(sigma_prime(LazySequence{3, {{ord(0, 0), 1}}}, ColorSpace{5}), 3u);
}

TEST(SigmaPrime, ExtendsThePlainSumOnFiniteSupport) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Color mu = 2 + static_cast<Color>(rng() % 4);
    LazySequence s = random_sequence(rng, mu);
    s.base = 0;
    std::uint64_t total = 0;
    for (const auto& [p, c] : s.exceptions) total += c;
    EXPECT_EQ(sigma_prime(s, ColorSpace{mu}), total % mu);
  }
}

TEST(SigmaPrime, IsAHomomorphism) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Color mu = 2 + static_cast<Color>(rng() % 5);
    const LazySequence x = random_sequence(rng, mu);
    const LazySequence y = random_sequence(rng, mu);
    const ColorSpace cs{mu};
    EXPECT_EQ(sigma_prime(add(x, y, cs), cs), (sigma_prime(x, cs) + sigma_prime(y, cs)) % mu);
  }
}

TEST(RunLazy, GabayOConnorExample) {
  const LazyAssignment a{0, {{ord(0, 5), 1}, {ord(0, 17), 2}}, std::nullopt};
  const LazyGuessRecord g = run_lazy(LineStrategy::GabayOConnor, LineShape{1, false}, ColorSpace{3}, a);
  const MismatchCensus census = mismatch_census(a, g);
  EXPECT_EQ(census.incorrect, (std::vector<OrdinalPosition>{ord(0, 5), ord(0, 17)}));
  EXPECT_TRUE(census.cofinite_correct);
  EXPECT_EQ(census.incorrect_count(), Cardinal(2));
}

TEST(RunLazy, SumBroadcastExample) {
  for (Color front : {0u, 1u}) {
    const LazyAssignment a{0, {{ord(0, 3), 1}}, front};
    const LazyGuessRecord g = run_lazy(LineStrategy::SumBroadcast, LineShape{1, true}, ColorSpace{2}, a);
    EXPECT_EQ(g.front, 1u);
    for (const auto& [p, guess] : g.evaluated) EXPECT_EQ(guess, a.at(p)) << p.to_string();
    const MismatchCensus census = mismatch_census(a, g);
    EXPECT_TRUE(census.cofinite_correct);
    if (front == 1) {
      EXPECT_TRUE(census.incorrect.empty());
    } else {
      EXPECT_EQ(census.incorrect, (std::vector<OrdinalPosition>{OrdinalPosition::front_player()}));
    }
  }
}

TEST(RunLazy, ConstantAssignmentsHaveNoErrors) {
  for (Color base = 0; base < 3; ++base) {
    const LazyAssignment plain{base, {}, std::nullopt};
    for (auto kind : {LineStrategy::GabayOConnor, LineStrategy::ForwardSelector}) {
      const auto g = run_lazy(kind, LineShape{2, false}, ColorSpace{3}, plain);
      EXPECT_EQ(mismatch_census(plain, g).incorrect_count(), Cardinal(0));
    }
    const LazyAssignment fronted{base, {}, Color{0}};
    const auto g = run_lazy(LineStrategy::SumBroadcast, LineShape{2, true}, ColorSpace{3}, fronted);
    EXPECT_EQ(mismatch_census(fronted, g).incorrect_count(), Cardinal(0));
  }
}

TEST(RunLazy, ShapeMismatches) {
  const LazyAssignment plain{0, {}, std::nullopt};
  const LazyAssignment fronted{0, {}, Color{1}};
  EXPECT_THROW(run_lazy(LineStrategy::SumBroadcast, LineShape{1, false}, ColorSpace{2}, plain), HatError);
  EXPECT_THROW(run_lazy(LineStrategy::GabayOConnor, LineShape{1, true}, ColorSpace{2}, fronted), HatError);
  EXPECT_THROW(run_lazy(LineStrategy::SumBroadcast, LineShape{1, true}, ColorSpace{2}, plain), HatError);
  const LazyAssignment outside{0, {{ord(2, 0), 1}}, std::nullopt};
  try {
    run_lazy(LineStrategy::GabayOConnor, LineShape{2, false}, ColorSpace{2}, outside);
    FAIL();
  } catch (const HatError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(RunLazy, EvaluationPointsCoverLimitsAndNeighbours) {
  const LazyAssignment a{0, {{ord(0, 5), 1}, {ord(1, 0), 1}}, std::nullopt};
  const auto points = evaluation_points(LineShape{2, false}, a);
  const std::vector<OrdinalPosition> expected{ord(0, 0), ord(0, 1), ord(0, 5), ord(0, 6), ord(0, 7),
                                              ord(1, 0), ord(1, 1), ord(1, 2)};
  EXPECT_EQ(points, expected);
}

TEST(MismatchCensus, ConstantWrongRecordIsInfinitelyWrong) {
  const LazyAssignment a{0, {}, std::nullopt};
  LazyGuessRecord g;
  g.generic = 1;
  const MismatchCensus census = mismatch_census(a, g);
  EXPECT_FALSE(census.cofinite_correct);
  EXPECT_EQ(census.incorrect_count(), Cardinal::omega());
}

TEST(RunLazy, GabayOConnorErrorsAreTheDeviations) {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const LineShape shape{1 + static_cast<std::uint32_t>(rng() % 3), false};
    const ColorSpace cs{2 + static_cast<Color>(rng() % 3)};
    LazyAssignment a = random_lazy_assignment(rng, shape, cs);
    const MismatchCensus census = mismatch_census(a, run_lazy(LineStrategy::GabayOConnor, shape, cs, a));
    a.normalize();
    EXPECT_TRUE(census.cofinite_correct);
    EXPECT_EQ(census.incorrect, a.deviations());
  }
}

TEST(RunLazy, ForwardSelectorErrorsStayInsideTheDeviations) {
  Rng rng(19);
  for (int i = 0; i < 100; ++i) {
    const LineShape shape{1 + static_cast<std::uint32_t>(rng() % 3), false};
    const ColorSpace cs{2 + static_cast<Color>(rng() % 3)};
    LazyAssignment a = random_lazy_assignment(rng, shape, cs);
    const MismatchCensus census = mismatch_census(a, run_lazy(LineStrategy::ForwardSelector, shape, cs, a));
    EXPECT_TRUE(census.cofinite_correct);
    for (const auto& p : census.incorrect) EXPECT_NE(a.at(p), a.base);
  }
}

TEST(RunLazy, SumBroadcastOnlyTheFrontCanBeWrong) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const LineShape shape{1 + static_cast<std::uint32_t>(rng() % 3), true};
    const ColorSpace cs{2 + static_cast<Color>(rng() % 3)};
    const LazyAssignment a = random_lazy_assignment(rng, shape, cs);
    const LazyGuessRecord g = run_lazy(LineStrategy::SumBroadcast, shape, cs, a);
    for (const auto& [p, guess] : g.evaluated) ASSERT_EQ(guess, a.at(p)) << p.to_string();
    const MismatchCensus census = mismatch_census(a, g);
    EXPECT_TRUE(census.cofinite_correct);
    EXPECT_LE(census.incorrect.size(), 1u);
    for (const auto& p : census.incorrect) EXPECT_TRUE(p.front);
  }
}

// On a single omega block, cutting the line two places past the last
// exception and playing the finite selector reproduces the symbolic guesses.
TEST(RunLazy, ForwardSelectorAgreesWithFiniteTruncation) {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const LineShape shape{1, false};
    const ColorSpace cs{2 + static_cast<Color>(rng() % 2)};
    const LazyAssignment a = random_lazy_assignment(rng, shape, cs, 5, 10);
    std::uint64_t length = 2;
    for (const auto& [p, c] : a.exceptions) length = std::max(length, p.offset + 2);
    Assignment finite(length);
    for (std::uint64_t n = 0; n < length; ++n) finite[n] = a.at(ord(0, n));

    const Instance inst =
        build_canonical_instance(InstanceKind::Hnsf, static_cast<int>(length), static_cast<int>(cs.size),
                                 EvaluationRule::at_least_correct(0));
    const GameResult forward = run_game(inst, forward_selector(a.base), finite);
    const LazyGuessRecord symbolic = run_lazy(LineStrategy::ForwardSelector, shape, cs, a);
    for (std::uint64_t n = 0; n < length; ++n) EXPECT_EQ(forward.guesses[n], symbolic.at(ord(0, n))) << n;

    const Instance all = build_canonical_instance(InstanceKind::Hnsa, static_cast<int>(length),
                                                  static_cast<int>(cs.size), EvaluationRule::at_least_correct(0));
    const GameResult base = run_game(all, base_selector(a.base), finite);
    const LazyGuessRecord goc = run_lazy(LineStrategy::GabayOConnor, shape, cs, a);
    for (std::uint64_t n = 0; n < length; ++n) EXPECT_EQ(base.guesses[n], goc.at(ord(0, n))) << n;
  }
}
