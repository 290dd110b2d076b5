#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tsa/graph.hpp"
#include "tsa/influence.hpp"
#include "tsa/rng.hpp"
#include "tsa/stance_dynamics.hpp"

namespace tsa {

struct SeedEntry {
  NodeId node = 0;
  TopicId topic = 0;
  Stance stance = Stance::neutral;

  bool operator==(const SeedEntry&) const = default;
};

using SeedAssignment = std::vector<SeedEntry>;

// Class counts for one topic after a round. Round 0 is the initial state.
struct RoundSummary {
  std::uint32_t round = 0;
  TopicId topic = 0;
  std::size_t unknown = 0;
  std::size_t oppose = 0;
  std::size_t neutral = 0;
  std::size_t support = 0;
  std::size_t newly_activated = 0;

  bool operator==(const RoundSummary&) const = default;
};

struct SimTrace {
  SimParams params;
  std::uint64_t run_index = 0;
  std::vector<std::string> node_labels;
  std::vector<std::string> topic_labels;
  std::vector<StanceChange> events;
  // Not persisted by write_trace; rebuild with metrics::replay_summaries.
  std::vector<RoundSummary> round_summaries;
};

// Graph profiles overlaid with the seed stances. Throws InvalidSeedStance for
// an unknown or conflicting seed and IdOutOfRange for bad ids.
ProfileTable initial_profiles(const SocialGraph& g, std::span<const SeedEntry> seeds);

// floor(fraction * count).
std::size_t sample_size(double fraction, std::size_t count);

// Partial Fisher-Yates over the ascending pool: for i < count swap slot i with
// i + uniform_index(|pool| - i). Returns the chosen ids in ascending order.
std::vector<NodeId> sample_without_replacement(std::span<const NodeId> pool, std::size_t count,
                                               Rng& rng);

// Edge channel for topic j: each spreader of the round-start snapshot
// reaches each out-neighbour not yet in the adjacency memory.
std::vector<StanceChange> adjacent_step(const SocialGraph& g, SimState& state,
                                        const SimParams& params, TopicId j, std::uint32_t round);

// Non-edge channel for topic j: a sampled spreader subset messages a sampled
// receiver subset drawn from the nodes outside the adjacency memory.
std::vector<StanceChange> nadj_step(const SocialGraph& g, SimState& state,
                                    const SimParams& params, TopicId j, std::uint32_t round,
                                    Rng& rng);

// Round-by-round driver. Each round clears the adjacency memory when
// configured per_round, then runs adjacent_step and nadj_step for every
// topic in ascending order.
class TsaEngine {
 public:
  TsaEngine(const SocialGraph& g, const SimParams& params, std::span<const SeedEntry> seeds,
            std::uint64_t run_index = 0);

  void run_round();
  void run();

  std::uint32_t rounds_done() const noexcept { return round_; }
  const SimState& state() const noexcept { return state_; }
  const SimTrace& trace() const noexcept { return trace_; }
  SimTrace take_trace() { return std::move(trace_); }

 private:
  void summarize(std::size_t first_event);

  const SocialGraph& graph_;
  SimParams params_;
  SimState state_;
  Rng rng_;
  SimTrace trace_;
  std::uint32_t round_ = 0;
};

SimTrace run_tsa(const SocialGraph& g, const SimParams& params,
                 std::span<const SeedEntry> seeds, std::uint64_t run_index = 0);

// Runs 0..runs-1 over `threads` workers. Run i uses stream (params.rng_seed, i);
// the result vector is identical to calling run_tsa serially.
std::vector<SimTrace> run_tsa_batch(const SocialGraph& g, const SimParams& params,
                                    std::span<const SeedEntry> seeds, std::size_t runs,
                                    std::size_t threads);

}  // namespace tsa
