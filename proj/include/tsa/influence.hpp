#pragma once

#include <cstdint>
#include <span>

#include "tsa/graph.hpp"

namespace tsa {

enum class AdjacencyMemory : std::uint8_t { persistent, per_round };
// Value of the stance-shift switch when influence exactly equals persistence
// for a committed (oppose/support) receiver.
enum class EpsilonTie : std::uint8_t { zero, one };

struct SimParams {
  double delta_adjacent = 0.8;     // (0.5, 1]
  double delta_nonadjacent = 0.3;  // [0, 0.5)
  double lambda = 0.7;             // [0.5, 1]
  double mu = 0.2;                 // [0, 0.5)
  double r1 = 0.1;                 // [0, 1]
  double r2 = 0.1;                 // [0, 1]
  double mix_r = 0.7;              // [0.5, 1]
  double mix_a = 0.3;              // [0, 0.5), mix_r + mix_a = 1
  std::uint32_t rounds_K = 10;     // >= 1
  double initial_persistence_A0 = 0.5;  // [0, 1]
  std::uint64_t rng_seed = 0;
  AdjacencyMemory adjacency_memory = AdjacencyMemory::persistent;
  EpsilonTie epsilon_tie = EpsilonTie::zero;

  bool operator==(const SimParams&) const = default;
};

// Throws RangeViolation naming the first offending field.
void validate(const SimParams& params);

// sqrt(z) / (sqrt(z) + ||p_u - p_v||), summing squared differences in topic order.
double topic_similarity(std::span<const Stance> p_u, std::span<const Stance> p_v);

// f(t_v, t_u): receiver stance first, sender stance second.
double stance_factor(Stance receiver, Stance sender, double lambda, double mu) noexcept;

// Influence of sender u on receiver v for topic j, using the supplied
// (possibly evolved) profiles. delta depends on whether edge u->v exists.
double influence_probability(const SocialGraph& g, const ProfileTable& profiles, NodeId u,
                             NodeId v, TopicId j, const SimParams& params);

// Same, over the graph's load-time profiles.
double influence_probability(const SocialGraph& g, NodeId u, NodeId v, TopicId j,
                             const SimParams& params);

}  // namespace tsa
