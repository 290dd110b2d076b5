#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsa/graph.hpp"
#include "tsa/io.hpp"
#include "tsa/propagation.hpp"

namespace tsa::metrics {

struct CurvePoint {
  std::uint32_t round = 0;
  TopicId topic = 0;
  // Indexed by Stance: unknown, oppose, neutral, support.
  std::array<std::size_t, 4> counts{};
  std::size_t cumulative_known = 0;
  std::size_t newly_activated = 0;

  std::size_t count(Stance s) const { return counts[static_cast<std::size_t>(s)]; }
  bool operator==(const CurvePoint&) const = default;
};

// Replays events onto `initial`. Throws MalformedTrace if an event's old
// stance disagrees with the replayed state or ids are out of range.
ProfileTable replay_final_state(const ProfileTable& initial, std::span<const StanceChange> events);

// One point per (round, topic) for rounds 0..rounds_K, topic-minor order.
std::vector<CurvePoint> stance_distribution_curve(const SimTrace& trace,
                                                  const ProfileTable& initial);
// Same points; the quantity of interest is cumulative_known.
std::vector<CurvePoint> activation_curve(const SimTrace& trace, const ProfileTable& initial);

// Engine summaries rebuilt from a trace.
std::vector<RoundSummary> replay_summaries(const SimTrace& trace, const ProfileTable& initial);

// Share of pairs whose known/unknown status agrees with the truth, averaged
// over topics. Every (node, topic) pair must be present in the truth.
double activation_accuracy(const ProfileTable& final_state, const io::GroundTruth& truth);
double activation_accuracy(const ProfileTable& final_state, const io::GroundTruth& truth,
                           TopicId topic);

// Exact four-valued agreement over the pairs the truth marks known.
// nullopt when there are no such pairs.
std::optional<double> stance_accuracy(const ProfileTable& final_state,
                                      const io::GroundTruth& truth);
std::optional<double> stance_accuracy(const ProfileTable& final_state,
                                      const io::GroundTruth& truth, TopicId topic);

struct TopicAccuracy {
  std::string topic;
  double activation_accuracy = 0.0;
  std::optional<double> stance_accuracy;
};

std::vector<TopicAccuracy> accuracy_report(const ProfileTable& final_state,
                                           const io::GroundTruth& truth,
                                           const std::vector<std::string>& topic_labels);
// {"<topic>": {"activation_accuracy": x, "stance_accuracy": y|null}, ...}
std::string report_to_json(const std::vector<TopicAccuracy>& report);

// "round,topic,unknown,oppose,neutral,support"
std::string stance_curve_csv(const std::vector<CurvePoint>& points,
                             const std::vector<std::string>& topic_labels);
// "round,topic,cumulative_known,newly_activated"
std::string activation_curve_csv(const std::vector<CurvePoint>& points,
                                 const std::vector<std::string>& topic_labels);

}  // namespace tsa::metrics
