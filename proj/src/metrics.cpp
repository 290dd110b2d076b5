#include "tsa/metrics.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "tsa/error.hpp"

namespace tsa::metrics {

namespace {

void check_shape(const ProfileTable& state, const io::GroundTruth& truth) {
  if (state.node_count() != truth.node_count() || state.topic_count() != truth.topic_count()) {
    throw Error(ErrorCode::inconsistent_ids, "state and truth tables differ in shape");
  }
}

void require_truth(const io::GroundTruth& truth, NodeId v, TopicId j) {
  if (!truth.has(v, j)) {
    throw Error(ErrorCode::missing_truth_entry,
                "no truth for node " + std::to_string(v) + ", topic " + std::to_string(j));
  }
}

void apply_event(ProfileTable& state, const StanceChange& e) {
  if (e.node >= state.node_count() || e.source >= state.node_count() ||
      e.topic >= state.topic_count()) {
    throw Error(ErrorCode::malformed_trace, "event ids out of range");
  }
  if (state.at(e.node, e.topic) != e.old_stance) {
    throw Error(ErrorCode::malformed_trace,
                "round " + std::to_string(e.round) + ": event old stance disagrees with replay");
  }
  state.set(e.node, e.topic, e.new_stance);
}

CurvePoint snapshot(const ProfileTable& state, std::uint32_t round, TopicId j) {
  CurvePoint pt;
  pt.round = round;
  pt.topic = j;
  for (NodeId v = 0; v < state.node_count(); ++v) {
    ++pt.counts[static_cast<std::size_t>(state.at(v, j))];
  }
  pt.cumulative_known = state.node_count() - pt.count(Stance::unknown);
  return pt;
}

}  // namespace

ProfileTable replay_final_state(const ProfileTable& initial, std::span<const StanceChange> events) {
  ProfileTable state = initial;
  for (const auto& e : events) apply_event(state, e);
  return state;
}

std::vector<CurvePoint> stance_distribution_curve(const SimTrace& trace,
                                                  const ProfileTable& initial) {
  if (initial.node_count() != trace.node_labels.size() ||
      initial.topic_count() != trace.topic_labels.size()) {
    throw Error(ErrorCode::inconsistent_ids, "initial state does not match trace label tables");
  }
  std::vector<CurvePoint> out;
  ProfileTable state = initial;
  const auto z = static_cast<TopicId>(state.topic_count());
  for (TopicId j = 0; j < z; ++j) out.push_back(snapshot(state, 0, j));

  std::size_t next = 0;
  std::uint32_t previous_round = 0;
  for (std::uint32_t round = 1; round <= trace.params.rounds_K; ++round) {
    std::vector<std::size_t> activated(z, 0);
    for (; next < trace.events.size() && trace.events[next].round == round; ++next) {
      const auto& e = trace.events[next];
      apply_event(state, e);
      if (!is_known(e.old_stance) && is_known(e.new_stance)) ++activated[e.topic];
    }
    for (TopicId j = 0; j < z; ++j) {
      auto pt = snapshot(state, round, j);
      pt.newly_activated = activated[j];
      out.push_back(pt);
    }
    previous_round = round;
  }
  if (next != trace.events.size()) {
    throw Error(ErrorCode::malformed_trace,
                "event round " + std::to_string(trace.events[next].round) +
                    " out of order or beyond rounds_K = " + std::to_string(previous_round));
  }
  return out;
}

std::vector<CurvePoint> activation_curve(const SimTrace& trace, const ProfileTable& initial) {
  return stance_distribution_curve(trace, initial);
}

std::vector<RoundSummary> replay_summaries(const SimTrace& trace, const ProfileTable& initial) {
  std::vector<RoundSummary> out;
  for (const auto& pt : stance_distribution_curve(trace, initial)) {
    out.push_back(RoundSummary{pt.round, pt.topic, pt.count(Stance::unknown),
                               pt.count(Stance::oppose), pt.count(Stance::neutral),
                               pt.count(Stance::support), pt.newly_activated});
  }
  return out;
}

double activation_accuracy(const ProfileTable& final_state, const io::GroundTruth& truth,
                           TopicId topic) {
  check_shape(final_state, truth);
  if (final_state.node_count() == 0) return 1.0;
  std::size_t agree = 0;
  for (NodeId v = 0; v < final_state.node_count(); ++v) {
    require_truth(truth, v, topic);
    if (is_known(final_state.at(v, topic)) == is_known(truth.at(v, topic))) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(final_state.node_count());
}

double activation_accuracy(const ProfileTable& final_state, const io::GroundTruth& truth) {
  check_shape(final_state, truth);
  const auto z = final_state.topic_count();
  if (z == 0) return 1.0;
  double sum = 0.0;
  for (TopicId j = 0; j < z; ++j) sum += activation_accuracy(final_state, truth, j);
  return sum / static_cast<double>(z);
}

namespace {

std::pair<std::size_t, std::size_t> stance_matches(const ProfileTable& final_state,
                                                   const io::GroundTruth& truth, TopicId j) {
  std::size_t scored = 0;
  std::size_t agree = 0;
  for (NodeId v = 0; v < final_state.node_count(); ++v) {
    require_truth(truth, v, j);
    if (!is_known(truth.at(v, j))) continue;
    ++scored;
    if (final_state.at(v, j) == truth.at(v, j)) ++agree;
  }
  return {agree, scored};
}

std::optional<double> ratio(std::size_t agree, std::size_t scored) {
  if (scored == 0) return std::nullopt;
  return static_cast<double>(agree) / static_cast<double>(scored);
}

}  // namespace

std::optional<double> stance_accuracy(const ProfileTable& final_state,
                                      const io::GroundTruth& truth, TopicId topic) {
  check_shape(final_state, truth);
  auto [agree, scored] = stance_matches(final_state, truth, topic);
  return ratio(agree, scored);
}

std::optional<double> stance_accuracy(const ProfileTable& final_state,
                                      const io::GroundTruth& truth) {
  check_shape(final_state, truth);
  std::size_t agree = 0;
  std::size_t scored = 0;
  for (TopicId j = 0; j < final_state.topic_count(); ++j) {
    auto [a, s] = stance_matches(final_state, truth, j);
    agree += a;
    scored += s;
  }
  return ratio(agree, scored);
}

std::vector<TopicAccuracy> accuracy_report(const ProfileTable& final_state,
                                           const io::GroundTruth& truth,
                                           const std::vector<std::string>& topic_labels) {
  std::vector<TopicAccuracy> out;
  for (TopicId j = 0; j < final_state.topic_count(); ++j) {
    out.push_back(TopicAccuracy{topic_labels.at(j), activation_accuracy(final_state, truth, j),
                                stance_accuracy(final_state, truth, j)});
  }
  return out;
}

std::string report_to_json(const std::vector<TopicAccuracy>& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& t : report) {
    nlohmann::ordered_json entry;
    entry["activation_accuracy"] = t.activation_accuracy;
    entry["stance_accuracy"] =
        t.stance_accuracy ? nlohmann::ordered_json(*t.stance_accuracy) : nlohmann::ordered_json();
    out[t.topic] = entry;
  }
  return out.dump(2) + "\n";
}

std::string stance_curve_csv(const std::vector<CurvePoint>& points,
                             const std::vector<std::string>& topic_labels) {
  std::ostringstream out;
  out << "round,topic,unknown,oppose,neutral,support\n";
  for (const auto& p : points) {
    out << p.round << ',' << topic_labels.at(p.topic) << ',' << p.count(Stance::unknown) << ','
        << p.count(Stance::oppose) << ',' << p.count(Stance::neutral) << ','
        << p.count(Stance::support) << '\n';
  }
  return out.str();
}

std::string activation_curve_csv(const std::vector<CurvePoint>& points,
                                 const std::vector<std::string>& topic_labels) {
  std::ostringstream out;
  out << "round,topic,cumulative_known,newly_activated\n";
  for (const auto& p : points) {
    out << p.round << ',' << topic_labels.at(p.topic) << ',' << p.cumulative_known << ','
        << p.newly_activated << '\n';
  }
  return out.str();
}

}  // namespace tsa::metrics
