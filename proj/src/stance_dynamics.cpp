#include "tsa/stance_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsa/error.hpp"

namespace tsa {

SimState::SimState(ProfileTable initial, double initial_persistence)
    : profiles_(std::move(initial)),
      persistence_(profiles_.node_count() * profiles_.topic_count(),
                   PersistenceEntry{initial_persistence, 0}),
      index_(profiles_) {
  const auto n = profiles_.node_count();
  active_.reserve(topic_count());
  adjacency_memory_.assign(topic_count(), NodeSet(n));
  for (TopicId j = 0; j < topic_count(); ++j) active_.push_back(index_.known(j));
}

void SimState::set_stance(NodeId v, TopicId j, Stance s) {
  const Stance old = profiles_.at(v, j);
  if (old == s) return;
  profiles_.set(v, j, s);
  index_.move(v, j, old, s);
  if (is_known(s)) {
    active_[j].insert(v);
  } else {
    active_[j].erase(v);
  }
}

const PersistenceEntry& SimState::persistence(NodeId v, TopicId j) const {
  return persistence_[static_cast<std::size_t>(v) * topic_count() + j];
}

PersistenceEntry& SimState::persistence(NodeId v, TopicId j) {
  return persistence_[static_cast<std::size_t>(v) * topic_count() + j];
}

void SimState::check_coherence() const {
  if (!(StanceIndex(profiles_) == index_)) {
    throw InvariantViolation("stance index diverged from profiles");
  }
  for (TopicId j = 0; j < topic_count(); ++j) {
    for (NodeId v : active_[j].to_vector()) {
      if (!index_.known(j).contains(v)) {
        throw InvariantViolation("spreader " + std::to_string(v) + " not in known set of topic " +
                                 std::to_string(j));
      }
    }
  }
  for (const auto& e : persistence_) {
    if (!(e.a_value >= 0.0 && e.a_value <= 1.0)) {
      throw InvariantViolation("persistence outside [0,1]");
    }
  }
}

double update_persistence(SimState& state, NodeId v, TopicId j, Stance sender_stance, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::probability_out_of_range, "p = " + std::to_string(p));
  }
  const Stance receiver = state.stance(v, j);
  auto& entry = state.persistence(v, j);
  entry.msg_count += 1;
  const double same = sender_stance == receiver ? 1.0 : 0.0;
  const double distance = std::abs(stance_value(sender_stance) - stance_value(receiver));
  const double step = (distance * p - same * p) / static_cast<double>(entry.msg_count);
  entry.a_value = std::clamp(entry.a_value - step, 0.0, 1.0);
  return entry.a_value;
}

Stance transition(Stance receiver, Stance sender, double p, double a, EpsilonTie tie) {
  if (sender == Stance::unknown) {
    throw Error(ErrorCode::unknown_sender, "sender stance is unknown");
  }
  if (receiver == Stance::unknown || receiver == Stance::neutral) {
    return p >= a ? sender : Stance::neutral;
  }
  if (receiver == sender) return receiver;
  bool shift = false;
  if (p > a) {
    shift = true;
  } else if (p == a) {
    shift = tie == EpsilonTie::one;
  }
  // Committed stances only ever soften halfway toward neutral.
  return shift ? Stance::neutral : receiver;
}

StanceChange apply_att(const SocialGraph& g, SimState& state, const SimParams& params, NodeId q,
                       NodeId v, TopicId j, std::uint32_t round, Channel channel) {
  const Stance sender = state.stance(v, j);
  if (!is_known(sender)) {
    throw Error(ErrorCode::unknown_sender, "sender " + std::to_string(v) +
                                               " has unknown stance on topic " +
                                               std::to_string(j));
  }
  const double p = influence_probability(g, state.profiles(), v, q, j, params);
  const Stance before = state.stance(q, j);
  const double a = update_persistence(state, q, j, sender, p);
  const Stance after = transition(before, sender, p, a, params.epsilon_tie);
  state.set_stance(q, j, after);
  return StanceChange{q, j, before, after, v, p, channel, round};
}

}  // namespace tsa
