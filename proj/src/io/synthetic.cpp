#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "text.hpp"
#include "tsa/io.hpp"
#include "tsa/rng.hpp"

namespace tsa::io {

namespace {

StanceMix parse_group(std::string_view group) {
  StanceMix mix{};
  const auto fields = detail::split(group, ',');
  if (fields.size() != 4) {
    throw Error(ErrorCode::invalid_argument,
                "stance mix group '" + std::string(group) + "' needs 4 probabilities");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const auto text = fields[i].text;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), mix[i]);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(mix[i] >= 0.0) ||
        !std::isfinite(mix[i])) {
      throw Error(ErrorCode::invalid_argument, "bad probability '" + std::string(text) + "'");
    }
  }
  const double total = mix[0] + mix[1] + mix[2] + mix[3];
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::invalid_argument,
                "stance mix '" + std::string(group) + "' sums to " + std::to_string(total));
  }
  return mix;
}

Stance draw_stance(const StanceMix& mix, Rng& rng) {
  const double x = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    acc += mix[i];
    if (x < acc) return kAllStances[i];
  }
  return Stance::support;
}

}  // namespace

std::vector<StanceMix> parse_stance_mix(std::string_view text, std::size_t topics) {
  std::vector<StanceMix> out;
  for (const auto& group : detail::split(text, ';')) out.push_back(parse_group(group.text));
  if (out.size() == 1 && topics > 1) out.resize(topics, out.front());
  if (out.size() != topics) {
    throw Error(ErrorCode::invalid_argument, "stance mix has " + std::to_string(out.size()) +
                                                 " groups for " + std::to_string(topics) +
                                                 " topics");
  }
  return out;
}

DatasetBundle generate_synthetic(std::size_t n, std::size_t m, std::size_t z,
                                 const std::vector<StanceMix>& stance_mix, std::uint64_t seed,
                                 const std::filesystem::path& out_dir) {
  const std::uint64_t slots = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1);
  if (m > slots) {
    throw Error(ErrorCode::infeasible_edge_count,
                std::to_string(m) + " edges requested, a simple digraph on " + std::to_string(n) +
                    " nodes holds at most " + std::to_string(slots));
  }
  if (z == 0) throw Error(ErrorCode::invalid_argument, "topic count must be >= 1");
  if (stance_mix.size() != z) {
    throw Error(ErrorCode::invalid_argument, "stance mix needs one entry per topic");
  }
  for (const auto& mix : stance_mix) {
    double total = 0.0;
    for (double x : mix) {
      if (!(x >= 0.0)) throw Error(ErrorCode::invalid_argument, "negative stance probability");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw Error(ErrorCode::invalid_argument, "stance mix does not sum to 1");
    }
  }

  Rng rng(seed);

  // Floyd's sampling of m distinct slots out of n(n-1); slot s encodes
  // source s / (n-1) and the (s mod (n-1))-th other node as target.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = slots - m; j < slots; ++j) {
    const std::uint64_t t = rng.uniform_index(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picked(chosen.begin(), chosen.end());
  std::sort(picked.begin(), picked.end());
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t s : picked) {
    const auto u = static_cast<NodeId>(s / (n - 1));
    const auto r = static_cast<NodeId>(s % (n - 1));
    edges.emplace_back(u, r < u ? r : r + 1);
  }

  std::vector<TopicProfile> profiles(n, TopicProfile(z, Stance::unknown));
  SeedAssignment seeds;
  for (NodeId v = 0; v < n; ++v) {
    for (TopicId j = 0; j < z; ++j) {
      profiles[v][j] = draw_stance(stance_mix[j], rng);
      if (is_known(profiles[v][j])) seeds.push_back(SeedEntry{v, j, profiles[v][j]});
    }
  }

  const auto g = build_graph(n, z, edges, profiles);
  std::filesystem::create_directories(out_dir);
  DatasetBundle bundle{out_dir / "edges.tsv", out_dir / "profiles.csv", out_dir / "seeds.csv",
                       std::nullopt};
  write_graph(g, bundle.edges, bundle.profiles);
  write_seeds(seeds, g, bundle.seeds);
  return bundle;
}

}  // namespace tsa::io
