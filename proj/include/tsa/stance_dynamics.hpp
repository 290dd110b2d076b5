#pragma once

#include <cstdint>
#include <vector>

#include "tsa/graph.hpp"
#include "tsa/influence.hpp"

namespace tsa {

struct PersistenceEntry {
  double a_value = 0.5;         // stance persistence, kept in [0, 1]
  std::uint32_t msg_count = 0;  // messages received so far for this node/topic

  bool operator==(const PersistenceEntry&) const = default;
};

enum class Channel : std::uint8_t { adjacent, nonadjacent };

// One influence attempt, receiver `node` hearing from `source`.
struct StanceChange {
  NodeId node = 0;
  TopicId topic = 0;
  Stance old_stance = Stance::unknown;
  Stance new_stance = Stance::unknown;
  NodeId source = 0;
  double probability = 0.0;
  Channel channel = Channel::adjacent;
  std::uint32_t round = 0;

  bool operator==(const StanceChange&) const = default;
};

// Mutable per-run state. Profiles, the stance index, and the per-topic
// spreader sets are kept consistent by every mutating call.
class SimState {
 public:
  SimState(ProfileTable initial, double initial_persistence);

  std::size_t node_count() const noexcept { return profiles_.node_count(); }
  std::size_t topic_count() const noexcept { return profiles_.topic_count(); }

  const ProfileTable& profiles() const noexcept { return profiles_; }
  Stance stance(NodeId v, TopicId j) const { return profiles_.at(v, j); }
  void set_stance(NodeId v, TopicId j, Stance s);

  const PersistenceEntry& persistence(NodeId v, TopicId j) const;
  PersistenceEntry& persistence(NodeId v, TopicId j);

  const StanceIndex& index() const noexcept { return index_; }

  // Nodes that spread topic j (every node with a known stance).
  const NodeSet& active(TopicId j) const { return active_[j]; }
  // Receivers already reached over an edge on topic j.
  NodeSet& adjacency_memory(TopicId j) { return adjacency_memory_[j]; }
  const NodeSet& adjacency_memory(TopicId j) const { return adjacency_memory_[j]; }

  // Full rescan against the incremental index; throws InvariantViolation.
  void check_coherence() const;

 private:
  ProfileTable profiles_;
  std::vector<PersistenceEntry> persistence_;
  StanceIndex index_;
  std::vector<NodeSet> active_;
  std::vector<NodeSet> adjacency_memory_;
};

// Applies one message of influence p from a sender holding `sender_stance`.
// Bumps the message count k, then a <- clamp(a - (|t_u - t_v| p - [t_u == t_v] p) / k).
double update_persistence(SimState& state, NodeId v, TopicId j, Stance sender_stance, double p);

// Receiver's next stance given the sender stance, influence p and persistence a.
Stance transition(Stance receiver, Stance sender, double p, double a, EpsilonTie tie);

// Sender v influences receiver q on topic j: persistence update, stance
// transition, index maintenance. Returns the resulting record.
StanceChange apply_att(const SocialGraph& g, SimState& state, const SimParams& params, NodeId q,
                       NodeId v, TopicId j, std::uint32_t round, Channel channel);

}  // namespace tsa
