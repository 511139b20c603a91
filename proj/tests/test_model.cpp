#include <gtest/gtest.h>

#include <random>

#include "hatlab/engine.hpp"
#include "hatlab/model.hpp"

using namespace hatlab;

namespace {

bool sees(const Instance& inst, PlayerId seer, PlayerId seen) {
  for (PlayerId q : inst.seen_by(seer)) {
    if (q == seen) return true;
  }
  return false;
}

bool hears(const Instance& inst, AskingId listener, AskingId speaker) {
  for (AskingId s : inst.heard_by(listener)) {
    if (s == speaker) return true;
  }
  return false;
}

const EvaluationRule kOne = EvaluationRule::at_least_correct(1);

}  // namespace

TEST(ValidateInstance, CanonicalHnsaIsValidWithoutWarnings) {
  const auto report = validate_instance(build_canonical_instance(InstanceKind::Hnsa, 3, 2, kOne));
  EXPECT_TRUE(report.valid());
  EXPECT_TRUE(report.warnings.empty());
}

TEST(ValidateInstance, TwoCycleInHearingIsReportedWithWitness) {
  const Instance inst = Instance::custom(2, ColorSpace{2}, {}, 2, {{0, 1}, {1, 0}}, {0, 1}, kOne);
  const auto report = validate_instance(inst);
  EXPECT_FALSE(report.valid());
  EXPECT_EQ(report.cycle_witness, (std::vector<AskingId>{0, 1}));
  EXPECT_THROW(require_valid(inst), CyclicHearingError);
}

TEST(ValidateInstance, SelfSightIsAWarningNotAnError) {
  const Instance inst = Instance::custom(2, ColorSpace{2}, {{1, 1}, {0, 1}}, 2, {}, {0, 1}, kOne);
  const auto report = validate_instance(inst);
  EXPECT_TRUE(report.valid());
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_EQ(report.self_sight, (std::vector<PlayerId>{1}));
}

TEST(ValidateInstance, LabelingGapsAndRangeErrors) {
  const Instance short_labels = Instance::custom(2, ColorSpace{2}, {}, 3, {}, {0, 1}, kOne);
  EXPECT_FALSE(validate_instance(short_labels).valid());

  const Instance bad_label = Instance::custom(2, ColorSpace{2}, {}, 2, {}, {0, 5}, kOne);
  EXPECT_FALSE(validate_instance(bad_label).valid());

  const Instance bad_sight = Instance::custom(2, ColorSpace{2}, {{0, 7}}, 2, {}, {0, 1}, kOne);
  EXPECT_FALSE(validate_instance(bad_sight).valid());
  EXPECT_THROW(require_valid(bad_sight), HatError);
}

TEST(ValidateInstance, RepeatedAskingsOfOnePlayerAreLegal) {
  const Instance inst = Instance::custom(1, ColorSpace{2}, {}, 3, {{0, 1}, {1, 2}}, {0, 0, 0}, kOne);
  EXPECT_TRUE(validate_instance(inst).valid());
}

TEST(BuildCanonicalInstance, HnsaSeesEveryoneElse) {
  const Instance inst = build_canonical_instance(InstanceKind::Hnsa, 2, 2, kOne);
  EXPECT_EQ(inst.sight().size(), 2u);
  EXPECT_TRUE(inst.hearing().empty());
  EXPECT_EQ(inst.asking_count(), 2);
}

TEST(BuildCanonicalInstance, HnsfSeesForward) {
  const Instance inst = build_canonical_instance(InstanceKind::Hnsf, 3, 2, kOne);
  EXPECT_EQ(std::vector<PlayerId>(inst.seen_by(0).begin(), inst.seen_by(0).end()), (std::vector<PlayerId>{1, 2}));
  EXPECT_TRUE(inst.seen_by(2).empty());
  EXPECT_TRUE(inst.hearing().empty());
}

TEST(BuildCanonicalInstance, HbsfFrontFirstHearsBackward) {
  const Instance inst = build_canonical_instance(InstanceKind::Hbsf, 3, 2, kOne);
  // Index 0 is the front (-1), then 0, 1.
  EXPECT_EQ(inst.player_label(0), -1);
  EXPECT_EQ(inst.player_label(2), 1);
  EXPECT_EQ(std::vector<PlayerId>(inst.seen_by(0).begin(), inst.seen_by(0).end()), (std::vector<PlayerId>{1, 2}));
  EXPECT_TRUE(inst.heard_by(0).empty());
  EXPECT_TRUE(inst.seen_by(2).empty());
  EXPECT_EQ(std::vector<AskingId>(inst.heard_by(2).begin(), inst.heard_by(2).end()), (std::vector<AskingId>{0, 1}));
}

TEST(BuildCanonicalInstance, ZeroSizesAreRejected) {
  try {
    build_canonical_instance(InstanceKind::Hnsa, 0, 2, kOne);
    FAIL();
  } catch (const HatError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroSize);
  }
  EXPECT_THROW(build_canonical_instance(InstanceKind::Hbsf, 2, 0, kOne), HatError);
}

TEST(BuildCanonicalInstance, NoSelfSightOrSelfHearing) {
  for (auto kind : {InstanceKind::Hnsa, InstanceKind::Hnsf, InstanceKind::Hbsf}) {
    for (int m = 1; m <= 6; ++m) {
      const Instance inst = build_canonical_instance(kind, m, 3, kOne);
      for (auto [a, b] : inst.sight()) EXPECT_NE(a, b);
      for (auto [a, b] : inst.hearing()) EXPECT_NE(a, b);
      EXPECT_TRUE(validate_instance(inst).valid());
    }
  }
}

TEST(BuildCanonicalInstance, LineSightIsExactlyTheLaterPositions) {
  for (auto kind : {InstanceKind::Hnsf, InstanceKind::Hbsf}) {
    for (int m = 1; m <= 6; ++m) {
      const Instance inst = build_canonical_instance(kind, m, 2, kOne);
      for (PlayerId seer = 0; seer < m; ++seer) {
        for (PlayerId other = 0; other < m; ++other) {
          EXPECT_EQ(sees(inst, seer, other), seer < other);
          EXPECT_EQ(hears(inst, seer, other), kind == InstanceKind::Hbsf && other < seer);
        }
      }
    }
  }
}

// Validation accepts exactly the instances that admit a play order.
TEST(ValidateInstance, AcceptsExactlyTheOrderableInstances) {
  std::mt19937_64 rng(7);
  int cyclic = 0;
  for (int i = 0; i < 300; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    Relation hearing;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && std::uniform_int_distribution<int>(0, 9)(rng) == 0) hearing.emplace_back(a, b);
      }
    }
    std::vector<PlayerId> labeling(static_cast<std::size_t>(n), 0);
    const Instance inst = Instance::custom(1, ColorSpace{2}, {}, n, hearing, labeling, kOne);
    const bool valid = validate_instance(inst).valid();
    bool orderable = true;
    try {
      topological_extension(inst, 0);
    } catch (const CyclicHearingError&) {
      orderable = false;
    }
    EXPECT_EQ(valid, orderable);
    cyclic += valid ? 0 : 1;
  }
  EXPECT_GT(cyclic, 0);
}

TEST(Cardinal, OmegaExceedsEveryFiniteValue) {
  EXPECT_LT(Cardinal(1'000'000), Cardinal::omega());
  EXPECT_EQ(Cardinal::omega(), Cardinal::omega());
  EXPECT_EQ(Cardinal::omega().to_string(), "omega");
}

TEST(EvaluationRule, AtLeastOmegaIsRejected) {
  EXPECT_THROW(EvaluationRule::at_least_correct(Cardinal::omega()), HatError);
}
