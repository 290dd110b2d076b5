#include "tsa/baseline_ic.hpp"

#include <algorithm>
#include <string>

#include "tsa/error.hpp"

namespace tsa {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::probability_out_of_range, "edge probability " + std::to_string(p));
  }
}

}  // namespace

std::size_t IcTrace::active_count() const {
  std::size_t total = 0;
  for (const auto& f : frontiers) total += f.size();
  return total;
}

IcTrace run_ic(const SocialGraph& g, const IcParams& params, std::span<const NodeId> seeds,
               Rng& rng) {
  check_probability(params.edge_probability);
  for (const auto& [edge, p] : params.per_edge) check_probability(p);

  std::vector<std::uint8_t> active(g.node_count(), 0);
  std::vector<NodeId> frontier;
  for (NodeId s : seeds) {
    if (s >= g.node_count()) {
      throw Error(ErrorCode::id_out_of_range, "seed " + std::to_string(s));
    }
    if (!active[s]) {
      active[s] = 1;
      frontier.push_back(s);
    }
  }
  std::sort(frontier.begin(), frontier.end());

  IcTrace trace;
  trace.frontiers.push_back(frontier);
  std::uint32_t round = 0;
  while (!frontier.empty()) {
    if (params.max_rounds && round >= *params.max_rounds) break;
    ++round;
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (NodeId v : g.out_neighbors(u)) {
        if (active[v]) continue;
        double p = params.edge_probability;
        if (!params.per_edge.empty()) {
          if (auto it = params.per_edge.find({u, v}); it != params.per_edge.end()) p = it->second;
        }
        if (rng.uniform01() < p) {
          active[v] = 1;
          next.push_back(v);
        }
      }
    }
    std::sort(next.begin(), next.end());
    if (!next.empty()) trace.frontiers.push_back(next);
    frontier = std::move(next);
  }
  return trace;
}

IcTrace run_ic(const SocialGraph& g, const IcParams& params, std::span<const NodeId> seeds,
               std::uint64_t run_index) {
  Rng rng(params.rng_seed, run_index);
  return run_ic(g, params, seeds, rng);
}

std::vector<std::size_t> run_ic_monte_carlo(const SocialGraph& g, const IcParams& params,
                                            std::span<const NodeId> seeds, std::size_t runs) {
  std::vector<std::size_t> counts;
  counts.reserve(runs);
  for (std::size_t i = 0; i < runs; ++i) counts.push_back(run_ic(g, params, seeds, i).active_count());
  return counts;
}

}  // namespace tsa
