#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <numeric>
#include <random>

#include "reference/fixtures.hpp"
#include "tsa/error.hpp"
#include "tsa/metrics.hpp"

namespace tsa {
namespace {

SimTrace empty_trace(std::size_t n, std::size_t z, std::uint32_t rounds) {
  SimTrace t;
  t.params.rounds_K = rounds;
  for (std::size_t v = 0; v < n; ++v) t.node_labels.push_back(std::to_string(v));
  for (std::size_t j = 0; j < z; ++j) t.topic_labels.push_back("t" + std::to_string(j));
  return t;
}

io::GroundTruth truth_of(const ProfileTable& t) {
  io::GroundTruth g(t.node_count(), t.topic_count());
  for (NodeId v = 0; v < t.node_count(); ++v)
    for (TopicId j = 0; j < t.topic_count(); ++j) g.set(v, j, t.at(v, j));
  return g;
}

TEST(CurveTest, EmptyTraceIsFlat) {
  ProfileTable initial(4, 1);
  initial.set(0, 0, Stance::oppose);
  initial.set(1, 0, Stance::oppose);
  auto points = metrics::stance_distribution_curve(empty_trace(4, 1, 3), initial);
  ASSERT_EQ(points.size(), 4u);
  for (const auto& p : points) {
    EXPECT_EQ(p.count(Stance::oppose), 2u);
    EXPECT_EQ(p.cumulative_known, 2u);
    EXPECT_EQ(p.newly_activated, 0u);
  }
}

TEST(CurveTest, OneActivationAtRoundOne) {
  ProfileTable initial(3, 1);
  initial.set(0, 0, Stance::support);
  auto trace = empty_trace(3, 1, 2);
  trace.events.push_back({1, 0, Stance::unknown, Stance::support, 0, 0.5, Channel::adjacent, 1});
  auto points = metrics::activation_curve(trace, initial);
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0].cumulative_known, 1u);
  EXPECT_EQ(points[1].cumulative_known, 2u);
  EXPECT_EQ(points[1].newly_activated, 1u);
  EXPECT_EQ(points[2].cumulative_known, 2u);
}

TEST(CurveTest, ReplayMatchesEngineSummaries) {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = fixtures::random_case(gen);
    auto g = fixtures::graph_of(c);
    TsaEngine engine(g, c.params, c.seeds);
    engine.run();
    const auto initial = initial_profiles(g, c.seeds);
    EXPECT_EQ(metrics::replay_summaries(engine.trace(), initial), engine.trace().round_summaries);
    EXPECT_EQ(metrics::replay_final_state(initial, engine.trace().events), engine.state().profiles());
    std::size_t prev_known = 0;
    for (const auto& p : metrics::stance_distribution_curve(engine.trace(), initial)) {
      ASSERT_EQ(std::accumulate(p.counts.begin(), p.counts.end(), std::size_t{0}), std::size_t(c.n));
      if (p.round > 0 && p.topic == 0) ASSERT_GE(p.cumulative_known, prev_known);
      if (p.topic == 0) prev_known = p.cumulative_known;
    }
  }
}

TEST(CurveTest, MalformedTraceRejected) {
  ProfileTable initial(2, 1);
  auto trace = empty_trace(2, 1, 1);
  trace.events.push_back({1, 0, Stance::oppose, Stance::neutral, 0, 0.5, Channel::adjacent, 1});
  EXPECT_THROW(metrics::replay_final_state(initial, trace.events), Error);
  auto late = empty_trace(2, 1, 1);
  late.events.push_back({1, 0, Stance::unknown, Stance::neutral, 0, 0.5, Channel::adjacent, 5});
  EXPECT_THROW(metrics::stance_distribution_curve(late, initial), Error);
}

TEST(CurveTest, CsvLayout) {
  ProfileTable initial(2, 1);
  initial.set(0, 0, Stance::oppose);
  auto trace = empty_trace(2, 1, 1);
  auto points = metrics::stance_distribution_curve(trace, initial);
  EXPECT_EQ(metrics::stance_curve_csv(points, trace.topic_labels),
            "round,topic,unknown,oppose,neutral,support\n0,t0,1,1,0,0\n1,t0,1,1,0,0\n");
  EXPECT_EQ(metrics::activation_curve_csv(points, trace.topic_labels),
            "round,topic,cumulative_known,newly_activated\n0,t0,1,0\n1,t0,1,0\n");
}

TEST(AccuracyTest, PerfectAndAllWrong) {
  ProfileTable state(4, 2);
  state.set(0, 0, Stance::support);
  state.set(1, 1, Stance::neutral);
  auto truth = truth_of(state);
  EXPECT_EQ(metrics::activation_accuracy(state, truth), 1.0);
  EXPECT_EQ(metrics::stance_accuracy(state, truth), 1.0);

  ProfileTable flipped(4, 2);
  for (NodeId v = 0; v < 4; ++v)
    for (TopicId j = 0; j < 2; ++j)
      flipped.set(v, j, is_known(state.at(v, j)) ? Stance::unknown : Stance::oppose);
  EXPECT_EQ(metrics::activation_accuracy(flipped, truth), 0.0);
  EXPECT_EQ(metrics::stance_accuracy(flipped, truth), 0.0);
}

TEST(AccuracyTest, Ratios) {
  ProfileTable state(4, 1);
  ProfileTable observed(4, 1);
  observed.set(0, 0, Stance::oppose);
  state.set(0, 0, Stance::oppose);
  state.set(1, 0, Stance::support);  // truth says unknown
  EXPECT_EQ(metrics::activation_accuracy(state, truth_of(observed)), 0.75);

  ProfileTable hundred(100, 1, Stance::support);
  ProfileTable predicted = hundred;
  for (NodeId v = 0; v < 23; ++v) predicted.set(v, 0, Stance::oppose);
  EXPECT_DOUBLE_EQ(*metrics::stance_accuracy(predicted, truth_of(hundred)), 0.77);
}

TEST(AccuracyTest, NeutralIsNotSupport) {
  ProfileTable truth(1, 1, Stance::support);
  ProfileTable predicted(1, 1, Stance::neutral);
  EXPECT_EQ(metrics::stance_accuracy(predicted, truth_of(truth)), 0.0);
  EXPECT_EQ(metrics::activation_accuracy(predicted, truth_of(truth)), 1.0);
}

TEST(AccuracyTest, NoKnownTruthGivesNoStanceScore) {
  ProfileTable truth(3, 1);
  EXPECT_FALSE(metrics::stance_accuracy(truth, truth_of(truth)).has_value());
}

TEST(AccuracyTest, MissingTruthEntry) {
  ProfileTable state(2, 1);
  io::GroundTruth partial(2, 1);
  partial.set(0, 0, Stance::oppose);
  try {
    metrics::activation_accuracy(state, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::missing_truth_entry);
  }
}

TEST(AccuracyTest, ActivationDominatesAndPermutationInvariant) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 30;
    const std::size_t z = 1 + gen() % 3;
    ProfileTable state(n, z), truth(n, z);
    const std::array<Stance, 3> known{Stance::oppose, Stance::neutral, Stance::support};
    for (NodeId v = 0; v < n; ++v)
      for (TopicId j = 0; j < z; ++j) {
        state.set(v, j, kAllStances[gen() % 4]);
        truth.set(v, j, known[gen() % 3]);
      }
    const double act = metrics::activation_accuracy(state, truth_of(truth));
    const double st = *metrics::stance_accuracy(state, truth_of(truth));
    ASSERT_GE(act + 1e-12, st);

    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    ProfileTable ps(n, z), pt(n, z);
    for (NodeId v = 0; v < n; ++v)
      for (TopicId j = 0; j < z; ++j) {
        ps.set(perm[v], j, state.at(v, j));
        pt.set(perm[v], j, truth.at(v, j));
      }
    ASSERT_DOUBLE_EQ(metrics::activation_accuracy(ps, truth_of(pt)), act);
    ASSERT_DOUBLE_EQ(*metrics::stance_accuracy(ps, truth_of(pt)), st);
  }
}

TEST(AccuracyTest, ReportJson) {
  ProfileTable state(2, 2);
  state.set(0, 0, Stance::support);
  auto report = metrics::accuracy_report(state, truth_of(state), {"a", "b"});
  auto json = nlohmann::json::parse(metrics::report_to_json(report));
  EXPECT_EQ(json["a"]["activation_accuracy"], 1.0);
  EXPECT_EQ(json["a"]["stance_accuracy"], 1.0);
  EXPECT_TRUE(json["b"]["stance_accuracy"].is_null());
}

}  // namespace
}  // namespace tsa
