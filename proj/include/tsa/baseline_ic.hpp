#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tsa/graph.hpp"
#include "tsa/rng.hpp"

namespace tsa {

struct IcParams {
  double edge_probability = 0.1;
  // Overrides edge_probability for the listed edges.
  std::map<Edge, double> per_edge;
  std::uint64_t rng_seed = 0;
  std::optional<std::uint32_t> max_rounds;
};

// frontiers[0] is the seed set; frontiers[r] the nodes first activated in round r.
struct IcTrace {
  std::vector<std::vector<NodeId>> frontiers;

  std::size_t active_count() const;
};

// Classic independent cascade: every newly active node gets exactly one
// Bernoulli attempt on each still-inactive out-neighbour, in ascending
// (spreader, neighbour) order.
IcTrace run_ic(const SocialGraph& g, const IcParams& params, std::span<const NodeId> seeds,
               Rng& rng);

// Convenience: draws from stream (params.rng_seed, run_index).
IcTrace run_ic(const SocialGraph& g, const IcParams& params, std::span<const NodeId> seeds,
               std::uint64_t run_index = 0);

// Final active counts of runs 0..runs-1.
std::vector<std::size_t> run_ic_monte_carlo(const SocialGraph& g, const IcParams& params,
                                            std::span<const NodeId> seeds, std::size_t runs);

}  // namespace tsa
