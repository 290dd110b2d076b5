#include "tsa/propagation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tsa/error.hpp"

namespace tsa {

ProfileTable initial_profiles(const SocialGraph& g, std::span<const SeedEntry> seeds) {
  ProfileTable profiles = g.profiles();
  std::vector<std::uint8_t> seeded(g.node_count() * g.topic_count(), 0);
  for (const auto& s : seeds) {
    if (s.node >= g.node_count() || s.topic >= g.topic_count()) {
      throw Error(ErrorCode::id_out_of_range,
                  "seed (" + std::to_string(s.node) + ", topic " + std::to_string(s.topic) + ")");
    }
    if (!is_known(s.stance)) {
      throw Error(ErrorCode::invalid_seed_stance,
                  "seed " + g.node_labels()[s.node] + " has unknown stance");
    }
    auto& mark = seeded[static_cast<std::size_t>(s.node) * g.topic_count() + s.topic];
    if (mark && profiles.at(s.node, s.topic) != s.stance) {
      throw Error(ErrorCode::invalid_seed_stance,
                  "conflicting seeds for node " + g.node_labels()[s.node]);
    }
    mark = 1;
    profiles.set(s.node, s.topic, s.stance);
  }
  return profiles;
}

std::size_t sample_size(double fraction, std::size_t count) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(count)));
}

std::vector<NodeId> sample_without_replacement(std::span<const NodeId> pool, std::size_t count,
                                               Rng& rng) {
  if (count > pool.size()) {
    throw Error(ErrorCode::count_exceeds_pool, "count " + std::to_string(count) +
                                                   " > pool size " + std::to_string(pool.size()));
  }
  std::vector<NodeId> work(pool.begin(), pool.end());
  for (std::size_t i = 0; i < count; ++i) {
    const auto pick = i + static_cast<std::size_t>(rng.uniform_index(work.size() - i));
    std::swap(work[i], work[pick]);
  }
  work.resize(count);
  std::sort(work.begin(), work.end());
  return work;
}

std::vector<StanceChange> adjacent_step(const SocialGraph& g, SimState& state,
                                        const SimParams& params, TopicId j, std::uint32_t round) {
  std::vector<StanceChange> events;
  const auto spreaders = state.active(j).to_vector();
  auto& memory = state.adjacency_memory(j);
  for (NodeId v : spreaders) {
    for (NodeId q : g.out_neighbors(v)) {
      if (memory.contains(q)) continue;
      events.push_back(apply_att(g, state, params, q, v, j, round, Channel::adjacent));
      memory.insert(q);
    }
  }
  return events;
}

std::vector<StanceChange> nadj_step(const SocialGraph& g, SimState& state,
                                    const SimParams& params, TopicId j, std::uint32_t round,
                                    Rng& rng) {
  std::vector<StanceChange> events;

  const auto spreader_pool = state.active(j).to_vector();
  const auto spreaders =
      sample_without_replacement(spreader_pool, sample_size(params.r1, spreader_pool.size()), rng);

  std::vector<NodeId> aware;
  std::vector<NodeId> unaware;
  const auto& known = state.index().known(j);
  for (NodeId v : state.adjacency_memory(j).complement()) {
    (known.contains(v) ? aware : unaware).push_back(v);
  }
  const std::size_t total = sample_size(params.r2, aware.size() + unaware.size());
  std::size_t aware_count = sample_size(params.mix_r, total);
  std::size_t unaware_count = total - aware_count;
  // A pool short of its quota hands the shortfall to the other pool.
  if (aware_count > aware.size()) {
    aware_count = aware.size();
    unaware_count = total - aware_count;
  } else if (unaware_count > unaware.size()) {
    unaware_count = unaware.size();
    aware_count = total - unaware_count;
  }
  auto receivers = sample_without_replacement(aware, aware_count, rng);
  const auto unaware_pick = sample_without_replacement(unaware, unaware_count, rng);
  receivers.insert(receivers.end(), unaware_pick.begin(), unaware_pick.end());
  std::sort(receivers.begin(), receivers.end());

  if (spreaders.empty()) return events;
  for (NodeId q : receivers) {
    for (NodeId v : spreaders) {
      if (v == q) continue;
      events.push_back(apply_att(g, state, params, q, v, j, round, Channel::nonadjacent));
    }
  }
  return events;
}

TsaEngine::TsaEngine(const SocialGraph& g, const SimParams& params,
                     std::span<const SeedEntry> seeds, std::uint64_t run_index)
    : graph_(g),
      params_(params),
      state_(initial_profiles(g, seeds), params.initial_persistence_A0),
      rng_(params.rng_seed, run_index) {
  validate(params_);
  if (g.topic_count() == 0) throw Error(ErrorCode::empty_profile, "graph has no topics");
  trace_.params = params_;
  trace_.run_index = run_index;
  trace_.node_labels = g.node_labels();
  trace_.topic_labels = g.topic_labels();
  summarize(0);
}

void TsaEngine::run_round() {
  ++round_;
  const std::size_t first = trace_.events.size();
  if (params_.adjacency_memory == AdjacencyMemory::per_round) {
    for (TopicId j = 0; j < state_.topic_count(); ++j) state_.adjacency_memory(j).clear();
  }
  for (TopicId j = 0; j < state_.topic_count(); ++j) {
    auto adj = adjacent_step(graph_, state_, params_, j, round_);
    trace_.events.insert(trace_.events.end(), adj.begin(), adj.end());
    auto far = nadj_step(graph_, state_, params_, j, round_, rng_);
    trace_.events.insert(trace_.events.end(), far.begin(), far.end());
  }
  summarize(first);
}

void TsaEngine::run() {
  while (round_ < params_.rounds_K) run_round();
  state_.check_coherence();
}

void TsaEngine::summarize(std::size_t first_event) {
  const auto& index = state_.index();
  for (TopicId j = 0; j < state_.topic_count(); ++j) {
    RoundSummary s;
    s.round = round_;
    s.topic = j;
    s.oppose = index.stance_class(j, Stance::oppose).size();
    s.neutral = index.stance_class(j, Stance::neutral).size();
    s.support = index.stance_class(j, Stance::support).size();
    s.unknown = state_.node_count() - index.known(j).size();
    for (std::size_t e = first_event; e < trace_.events.size(); ++e) {
      const auto& ev = trace_.events[e];
      if (ev.topic == j && !is_known(ev.old_stance) && is_known(ev.new_stance)) {
        ++s.newly_activated;
      }
    }
    trace_.round_summaries.push_back(s);
  }
}

SimTrace run_tsa(const SocialGraph& g, const SimParams& params,
                 std::span<const SeedEntry> seeds, std::uint64_t run_index) {
  TsaEngine engine(g, params, seeds, run_index);
  engine.run();
  return engine.take_trace();
}

std::vector<SimTrace> run_tsa_batch(const SocialGraph& g, const SimParams& params,
                                    std::span<const SeedEntry> seeds, std::size_t runs,
                                    std::size_t threads) {
  std::vector<SimTrace> out(runs);
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(runs, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < runs; ++i) out[i] = run_tsa(g, params, seeds, i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < runs; i = next++) {
          try {
            out[i] = run_tsa(g, params, seeds, i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tsa
