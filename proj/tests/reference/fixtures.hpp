#pragma once

// Random small cases shared by the unit and acceptance tests, plus the
// engine-vs-reference comparison.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "reference/reference_tsa.hpp"
#include "tsa/propagation.hpp"

namespace fixtures {

struct Case {
  int n = 0;
  int z = 0;
  std::set<std::pair<int, int>> edges;
  std::vector<tsa::TopicProfile> profiles;
  tsa::SeedAssignment seeds;
  tsa::SimParams params;
};

inline tsa::SocialGraph graph_of(const Case& c) {
  std::vector<tsa::Edge> edges;
  for (auto [u, v] : c.edges) edges.emplace_back(u, v);
  return tsa::build_graph(c.n, c.z, edges, c.profiles);
}

// Random graph with n <= max_n, z <= max_z, K <= max_k. Parameters are drawn
// inside their valid ranges; r1/r2 are kept large enough that the non-edge
// channel fires on tiny graphs.
inline Case random_case(std::mt19937_64& gen, int max_n = 12, int max_z = 3, int max_k = 5,
                        bool allow_support = true) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Case c;
  c.n = 2 + static_cast<int>(gen() % (max_n - 1));
  c.z = 1 + static_cast<int>(gen() % max_z);
  const double density = unit(gen) * 0.5;
  for (int u = 0; u < c.n; ++u)
    for (int v = 0; v < c.n; ++v)
      if (u != v && unit(gen) < density) c.edges.emplace(u, v);

  const std::array<tsa::Stance, 4> all{tsa::Stance::unknown, tsa::Stance::oppose,
                                       tsa::Stance::neutral, tsa::Stance::support};
  const std::array<tsa::Stance, 3> no_support{tsa::Stance::unknown, tsa::Stance::oppose,
                                              tsa::Stance::neutral};
  auto draw = [&] { return allow_support ? all[gen() % 4] : no_support[gen() % 3]; };
  c.profiles.assign(c.n, tsa::TopicProfile(c.z, tsa::Stance::unknown));
  for (int v = 0; v < c.n; ++v)
    for (int j = 0; j < c.z; ++j)
      if (unit(gen) < 0.4) c.profiles[v][j] = draw();
  for (int j = 0; j < c.z; ++j) {
    const int count = 1 + static_cast<int>(gen() % 3);
    for (int k = 0; k < count; ++k) {
      const auto v = static_cast<tsa::NodeId>(gen() % c.n);
      tsa::Stance s = draw();
      if (s == tsa::Stance::unknown) s = tsa::Stance::neutral;
      bool dup = false;
      for (const auto& e : c.seeds) dup = dup || (e.node == v && e.topic == tsa::TopicId(j));
      if (!dup) c.seeds.push_back({v, tsa::TopicId(j), s});
    }
  }

  auto& p = c.params;
  p.delta_adjacent = 0.5 + 0.5 * unit(gen) + 1e-6;
  if (p.delta_adjacent > 1.0) p.delta_adjacent = 1.0;
  p.delta_nonadjacent = 0.49 * unit(gen);
  p.lambda = 0.5 + 0.5 * unit(gen);
  p.mu = 0.49 * unit(gen);
  p.r1 = 0.2 + 0.8 * unit(gen);
  p.r2 = 0.2 + 0.8 * unit(gen);
  p.mix_r = 0.5 + 0.49 * unit(gen);
  p.mix_a = 1.0 - p.mix_r;
  p.rounds_K = 1 + static_cast<std::uint32_t>(gen() % max_k);
  p.initial_persistence_A0 = unit(gen);
  p.adjacency_memory = gen() % 2 ? tsa::AdjacencyMemory::per_round
                                 : tsa::AdjacencyMemory::persistent;
  p.epsilon_tie = gen() % 2 ? tsa::EpsilonTie::one : tsa::EpsilonTie::zero;
  p.rng_seed = gen();
  return c;
}

inline reference::Result reference_run(const Case& c, std::uint64_t run_index) {
  std::vector<std::vector<double>> stances(c.n, std::vector<double>(c.z));
  for (int v = 0; v < c.n; ++v)
    for (int j = 0; j < c.z; ++j) stances[v][j] = tsa::stance_value(c.profiles[v][j]);
  for (const auto& s : c.seeds) stances[s.node][s.topic] = tsa::stance_value(s.stance);
  return reference::run(c.n, c.z, c.edges, std::move(stances), c.params, run_index);
}

// Empty string when the engine trace and final state equal the reference
// exactly (bitwise p included); otherwise a description of the first mismatch.
inline std::string compare(const tsa::SimTrace& trace, const tsa::ProfileTable& final_state,
                           const reference::Result& ref) {
  if (trace.events.size() != ref.events.size()) {
    return "event count " + std::to_string(trace.events.size()) + " vs " +
           std::to_string(ref.events.size());
  }
  for (std::size_t i = 0; i < ref.events.size(); ++i) {
    const auto& a = trace.events[i];
    const auto& b = ref.events[i];
    const bool same = int(a.round) == b.round && int(a.topic) == b.topic &&
                      int(a.node) == b.node && int(a.source) == b.source &&
                      tsa::stance_value(a.old_stance) == b.old_stance &&
                      tsa::stance_value(a.new_stance) == b.new_stance && a.probability == b.p &&
                      (a.channel == tsa::Channel::adjacent) == b.adjacent;
    if (!same) return "event " + std::to_string(i) + " differs";
  }
  for (std::size_t v = 0; v < final_state.node_count(); ++v)
    for (std::size_t j = 0; j < final_state.topic_count(); ++j)
      if (tsa::stance_value(final_state.at(v, j)) != ref.stances[v][j])
        return "final stance of node " + std::to_string(v) + " differs";
  return {};
}

}  // namespace fixtures
