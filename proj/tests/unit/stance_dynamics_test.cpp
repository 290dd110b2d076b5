#include <gtest/gtest.h>

#include <random>

#include "tsa/error.hpp"
#include "tsa/stance_dynamics.hpp"

namespace tsa {
namespace {

SimState single_node_state(Stance s, double a0 = 0.5) {
  ProfileTable t(1, 1);
  t.set(0, 0, s);
  return SimState(t, a0);
}

TEST(UpdatePersistenceTest, SameStanceRaises) {
  auto state = single_node_state(Stance::support);
  EXPECT_DOUBLE_EQ(update_persistence(state, 0, 0, Stance::support, 0.2), 0.7);
  EXPECT_EQ(state.persistence(0, 0).msg_count, 1u);
}

TEST(UpdatePersistenceTest, DifferentStanceLowers) {
  auto state = single_node_state(Stance::oppose);
  EXPECT_DOUBLE_EQ(update_persistence(state, 0, 0, Stance::support, 0.2), 0.3);
}

TEST(UpdatePersistenceTest, UnknownReceiverUsesLiteralDistance) {
  // |1 - (-1)| = 2.
  auto state = single_node_state(Stance::unknown);
  EXPECT_DOUBLE_EQ(update_persistence(state, 0, 0, Stance::support, 0.2), 0.5 - 2 * 0.2);
}

TEST(UpdatePersistenceTest, ZeroInfluenceOnlyCounts) {
  auto state = single_node_state(Stance::oppose);
  EXPECT_EQ(update_persistence(state, 0, 0, Stance::support, 0.0), 0.5);
  EXPECT_EQ(update_persistence(state, 0, 0, Stance::oppose, 0.0), 0.5);
  EXPECT_EQ(state.persistence(0, 0).msg_count, 2u);
}

TEST(UpdatePersistenceTest, StepDividesByRunningCount) {
  auto state = single_node_state(Stance::oppose);
  update_persistence(state, 0, 0, Stance::oppose, 0.1);   // 0.5 + 0.1 / 1
  const double a = update_persistence(state, 0, 0, Stance::support, 0.3);  // - 0.3 / 2
  EXPECT_DOUBLE_EQ(a, 0.6 - 0.15);
}

TEST(UpdatePersistenceTest, ClampsAndRejectsBadProbability) {
  auto state = single_node_state(Stance::unknown, 0.1);
  EXPECT_EQ(update_persistence(state, 0, 0, Stance::support, 0.9), 0.0);
  auto high = single_node_state(Stance::support, 0.95);
  EXPECT_EQ(update_persistence(high, 0, 0, Stance::support, 0.9), 1.0);
  try {
    update_persistence(state, 0, 0, Stance::support, 1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::probability_out_of_range);
  }
}

TEST(TransitionTest, UnknownOrNeutralReceiver) {
  EXPECT_EQ(transition(Stance::unknown, Stance::support, 0.6, 0.5, EpsilonTie::zero),
            Stance::support);
  EXPECT_EQ(transition(Stance::unknown, Stance::support, 0.3, 0.5, EpsilonTie::zero),
            Stance::neutral);
  // p == a adopts.
  EXPECT_EQ(transition(Stance::neutral, Stance::oppose, 0.5, 0.5, EpsilonTie::zero),
            Stance::oppose);
  EXPECT_EQ(transition(Stance::neutral, Stance::oppose, 0.4, 0.5, EpsilonTie::zero),
            Stance::neutral);
}

TEST(TransitionTest, CommittedReceiver) {
  EXPECT_EQ(transition(Stance::support, Stance::support, 0.9, 0.1, EpsilonTie::one),
            Stance::support);
  EXPECT_EQ(transition(Stance::oppose, Stance::support, 0.6, 0.5, EpsilonTie::zero),
            Stance::neutral);
  EXPECT_EQ(transition(Stance::support, Stance::oppose, 0.6, 0.5, EpsilonTie::zero),
            Stance::neutral);
  EXPECT_EQ(transition(Stance::support, Stance::neutral, 0.4, 0.5, EpsilonTie::one),
            Stance::support);
  // Tie is governed by the epsilon_tie policy.
  EXPECT_EQ(transition(Stance::oppose, Stance::support, 0.5, 0.5, EpsilonTie::zero),
            Stance::oppose);
  EXPECT_EQ(transition(Stance::oppose, Stance::support, 0.5, 0.5, EpsilonTie::one),
            Stance::neutral);
}

TEST(TransitionTest, UnknownSenderRejected) {
  try {
    transition(Stance::oppose, Stance::unknown, 0.5, 0.5, EpsilonTie::zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_sender);
  }
}

TEST(TransitionTest, ClosureAndStepProperties) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::array<Stance, 3> known{Stance::oppose, Stance::neutral, Stance::support};
  for (int i = 0; i < 20000; ++i) {
    const Stance r = kAllStances[gen() % 4];
    const Stance s = known[gen() % 3];
    const double p = (gen() % 8 == 0) ? 0.5 : unit(gen);
    const double a = (gen() % 8 == 0) ? 0.5 : unit(gen);
    const auto tie = gen() % 2 ? EpsilonTie::one : EpsilonTie::zero;
    const Stance out = transition(r, s, p, a, tie);
    ASSERT_TRUE(is_known(out));
    if (r == s && r != Stance::unknown) ASSERT_EQ(out, r);
    if (r == Stance::oppose || r == Stance::support) {
      const double step = std::abs(stance_value(out) - stance_value(r));
      ASSERT_TRUE(step == 0.0 || step == 0.5);
    } else {
      ASSERT_TRUE(out == s || out == Stance::neutral);
    }
  }
}

struct AttFixture : ::testing::Test {
  // 0 -> 1 -> 2, one topic.
  SocialGraph make(Stance t0, Stance t1, Stance t2) {
    std::vector<Edge> edges{{0, 1}, {1, 2}};
    std::vector<TopicProfile> profiles{{t0}, {t1}, {t2}};
    return build_graph(3, 1, edges, profiles);
  }
  SimParams params = [] {
    SimParams p;
    p.delta_adjacent = 1.0;
    p.lambda = 0.7;
    p.mu = 0.2;
    return p;
  }();
};

TEST_F(AttFixture, UnknownReceiverAdoptsSenderStance) {
  auto g = make(Stance::support, Stance::unknown, Stance::unknown);
  SimState state(g.profiles(), 0.5);
  // p = 1 * 1/(1+2) * 1 = 1/3; a = 0.5 - 2/3 -> 0; p >= a.
  auto change = apply_att(g, state, params, 1, 0, 0, 1, Channel::adjacent);
  EXPECT_EQ(change.old_stance, Stance::unknown);
  EXPECT_EQ(change.new_stance, Stance::support);
  EXPECT_DOUBLE_EQ(change.probability, 1.0 / 3.0);
  EXPECT_EQ(change.node, 1u);
  EXPECT_EQ(change.source, 0u);
  EXPECT_TRUE(state.index().stance_class(0, Stance::support).contains(1));
  EXPECT_TRUE(state.active(0).contains(1));
  EXPECT_NO_THROW(state.check_coherence());
}

TEST_F(AttFixture, SameStanceIsNoOp) {
  auto g = make(Stance::oppose, Stance::oppose, Stance::unknown);
  SimState state(g.profiles(), 0.5);
  const auto before = state.index();
  auto change = apply_att(g, state, params, 1, 0, 0, 1, Channel::adjacent);
  EXPECT_EQ(change.old_stance, change.new_stance);
  EXPECT_EQ(state.index(), before);
  EXPECT_DOUBLE_EQ(state.persistence(1, 0).a_value, 1.0);  // 0.5 + 1.0, clamped
}

TEST_F(AttFixture, OpposerSoftensUnderStrongSupport) {
  auto g = make(Stance::support, Stance::oppose, Stance::unknown);
  SimState state(g.profiles(), 0.5);
  // p = 1 * 1/(1+1) * mu = 0.1; a = 0.5 - 0.1 = 0.4; p < a -> unchanged.
  auto weak = apply_att(g, state, params, 1, 0, 0, 1, Channel::adjacent);
  EXPECT_EQ(weak.new_stance, Stance::oppose);
  // With low persistence the same message moves 0 -> 0.5.
  SimState fragile(g.profiles(), 0.05);
  auto strong = apply_att(g, fragile, params, 1, 0, 0, 1, Channel::adjacent);
  EXPECT_EQ(strong.new_stance, Stance::neutral);
  EXPECT_TRUE(fragile.index().stance_class(0, Stance::neutral).contains(1));
  EXPECT_FALSE(fragile.index().stance_class(0, Stance::oppose).contains(1));
  EXPECT_NO_THROW(fragile.check_coherence());
}

TEST_F(AttFixture, UnknownSenderRejected) {
  auto g = make(Stance::unknown, Stance::oppose, Stance::unknown);
  SimState state(g.profiles(), 0.5);
  EXPECT_THROW(apply_att(g, state, params, 1, 0, 0, 1, Channel::adjacent), Error);
}

}  // namespace
}  // namespace tsa
