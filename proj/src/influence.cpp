#include "tsa/influence.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "tsa/error.hpp"

namespace tsa {

namespace {

enum class Bound { closed, open };

void check_range(const char* key, double value, double lo, Bound lo_kind, double hi,
                 Bound hi_kind) {
  const bool lo_ok = lo_kind == Bound::closed ? value >= lo : value > lo;
  const bool hi_ok = hi_kind == Bound::closed ? value <= hi : value < hi;
  if (lo_ok && hi_ok && std::isfinite(value)) return;
  std::ostringstream msg;
  msg << key << " = " << value << " outside " << (lo_kind == Bound::closed ? '[' : '(') << lo
      << ", " << hi << (hi_kind == Bound::closed ? ']' : ')');
  throw Error(ErrorCode::range_violation, msg.str());
}

}  // namespace

void validate(const SimParams& p) {
  check_range("delta_adjacent", p.delta_adjacent, 0.5, Bound::open, 1.0, Bound::closed);
  check_range("delta_nonadjacent", p.delta_nonadjacent, 0.0, Bound::closed, 0.5, Bound::open);
  check_range("lambda", p.lambda, 0.5, Bound::closed, 1.0, Bound::closed);
  check_range("mu", p.mu, 0.0, Bound::closed, 0.5, Bound::open);
  check_range("r1", p.r1, 0.0, Bound::closed, 1.0, Bound::closed);
  check_range("r2", p.r2, 0.0, Bound::closed, 1.0, Bound::closed);
  check_range("mix_r", p.mix_r, 0.5, Bound::closed, 1.0, Bound::closed);
  check_range("mix_a", p.mix_a, 0.0, Bound::closed, 0.5, Bound::open);
  check_range("initial_persistence_A0", p.initial_persistence_A0, 0.0, Bound::closed, 1.0,
              Bound::closed);
  if (std::abs(p.mix_r + p.mix_a - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "mix_r + mix_a = " << (p.mix_r + p.mix_a) << ", must equal 1";
    throw Error(ErrorCode::range_violation, msg.str());
  }
  if (p.rounds_K < 1) throw Error(ErrorCode::range_violation, "rounds_K = 0, must be >= 1");
}

double topic_similarity(std::span<const Stance> p_u, std::span<const Stance> p_v) {
  if (p_u.size() != p_v.size()) {
    throw Error(ErrorCode::length_mismatch, "profiles of length " + std::to_string(p_u.size()) +
                                                " and " + std::to_string(p_v.size()));
  }
  if (p_u.empty()) throw Error(ErrorCode::empty_profile, "topic count is zero");
  double sum = 0.0;
  for (std::size_t i = 0; i < p_u.size(); ++i) {
    const double d = stance_value(p_u[i]) - stance_value(p_v[i]);
    sum += d * d;
  }
  const double root_z = std::sqrt(static_cast<double>(p_u.size()));
  return root_z / (root_z + std::sqrt(sum));
}

double stance_factor(Stance receiver, Stance sender, double lambda, double mu) noexcept {
  if (receiver == Stance::unknown || receiver == Stance::neutral || receiver == sender) {
    return 1.0;
  }
  if (std::abs(stance_value(receiver) - stance_value(sender)) <= 0.5) return lambda;
  return mu;
}

double influence_probability(const SocialGraph& g, const ProfileTable& profiles, NodeId u,
                             NodeId v, TopicId j, const SimParams& params) {
  const auto n = g.node_count();
  if (u >= n || v >= n || j >= g.topic_count()) {
    throw Error(ErrorCode::id_out_of_range, "influence(" + std::to_string(u) + "," +
                                                std::to_string(v) + ") topic " +
                                                std::to_string(j));
  }
  if (u == v) throw Error(ErrorCode::same_node, "node " + std::to_string(u));
  const double delta = g.has_edge(u, v) ? params.delta_adjacent : params.delta_nonadjacent;
  const double sim = topic_similarity(profiles.row(u), profiles.row(v));
  return delta * sim * stance_factor(profiles.at(v, j), profiles.at(u, j), params.lambda,
                                     params.mu);
}

double influence_probability(const SocialGraph& g, NodeId u, NodeId v, TopicId j,
                             const SimParams& params) {
  return influence_probability(g, g.profiles(), u, v, j, params);
}

}  // namespace tsa
