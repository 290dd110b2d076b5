#pragma once

// File formats (UTF-8 text):
//
//   edges      one edge per line, "source<TAB>target"; '#' starts a comment line
//   profiles   CSV "node_id,topic_id,stance"; omitted pairs are unknown (-1)
//   seeds      CSV "node_id,topic_id,stance", stance in {0, 0.5, 1}
//   truth      CSV "node_id,topic_id,final_stance"
//   config     JSON object with the SimParams keys
//   trace      JSON Lines: one header object (schema "tsa-trace/1", run index,
//              resolved params, node and topic label tables) followed by one
//              event object per line with keys
//              round, topic, node, old, new, source, p, channel
//
// CSV files may start with their column-name line and may contain '#'
// comment lines. Node and topic labels are arbitrary strings; dense ids are
// assigned in natural label order (numeric labels first, by value), so the
// dense numbering never depends on the order of lines in a file.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsa/graph.hpp"
#include "tsa/influence.hpp"
#include "tsa/propagation.hpp"

namespace tsa::io {

inline constexpr std::string_view kTraceSchema = "tsa-trace/1";

struct DatasetBundle {
  std::filesystem::path edges;
  std::filesystem::path profiles;
  std::filesystem::path seeds;
  std::optional<std::filesystem::path> truth;
};

// Observed final stance per (node, topic); pairs may be absent.
class GroundTruth {
 public:
  GroundTruth() = default;
  GroundTruth(std::size_t nodes, std::size_t topics)
      : stances_(nodes, topics), present_(nodes * topics, 0) {}

  std::size_t node_count() const noexcept { return stances_.node_count(); }
  std::size_t topic_count() const noexcept { return stances_.topic_count(); }

  void set(NodeId v, TopicId j, Stance s);
  bool has(NodeId v, TopicId j) const { return present_[slot(v, j)] != 0; }
  Stance at(NodeId v, TopicId j) const { return stances_.at(v, j); }

 private:
  std::size_t slot(NodeId v, TopicId j) const {
    return static_cast<std::size_t>(v) * stances_.topic_count() + j;
  }

  ProfileTable stances_;
  std::vector<std::uint8_t> present_;
};

// Natural label order used for dense id assignment.
bool label_less(std::string_view a, std::string_view b);

// Formats a stance code as it appears in files: -1, 0, 0.5, 1.
std::string format_stance(Stance s);

// Nodes are the union of edge endpoints and profile rows. With no profiles
// path the graph has zero topics (enough for the IC baseline).
SocialGraph load_graph(const std::filesystem::path& edges_path,
                       const std::optional<std::filesystem::path>& profiles_path);

// Writes edges in dense order and a full n x z profile table.
void write_graph(const SocialGraph& g, const std::filesystem::path& edges_path,
                 const std::filesystem::path& profiles_path);

// Ids resolve through the graph's label tables. Warns when empty.
SeedAssignment load_seeds(const std::filesystem::path& path, const SocialGraph& g);
// Seed nodes regardless of topic (IC baseline); topic column is not resolved.
std::vector<NodeId> load_seed_nodes(const std::filesystem::path& path, const SocialGraph& g);
void write_seeds(const SeedAssignment& seeds, const SocialGraph& g,
                 const std::filesystem::path& path);

// Full stance table in profiles format (the --initial file). Missing pairs
// load as unknown.
ProfileTable load_state(const std::filesystem::path& path,
                        const std::vector<std::string>& node_labels,
                        const std::vector<std::string>& topic_labels);
void write_state(const ProfileTable& state, const std::vector<std::string>& node_labels,
                 const std::vector<std::string>& topic_labels, const std::filesystem::path& path);

GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const std::vector<std::string>& node_labels,
                              const std::vector<std::string>& topic_labels);
void write_ground_truth(const ProfileTable& truth, const std::vector<std::string>& node_labels,
                        const std::vector<std::string>& topic_labels,
                        const std::filesystem::path& path);

// Validates every range; rejects missing required keys and unknown keys.
// Optional keys: initial_persistence_A0 (0.5), rng_seed (0),
// adjacency_memory ("persistent"), epsilon_tie ("zero").
SimParams parse_config(std::string_view json_text, std::string_view source = "<config>");
SimParams load_config(const std::filesystem::path& path);
std::string config_to_json(const SimParams& params);

void write_trace(const SimTrace& trace, const std::filesystem::path& path);
std::string trace_to_string(const SimTrace& trace);
// Round summaries are not stored; the result has them empty.
SimTrace load_trace(const std::filesystem::path& path);

// Per-topic probabilities of (unknown, oppose, neutral, support).
using StanceMix = std::array<double, 4>;

// "u,o,n,s" for every topic, or one such group per topic separated by ';'.
std::vector<StanceMix> parse_stance_mix(std::string_view text, std::size_t topics);

// Uniform simple digraph with exactly m edges, profiles drawn per mix, seeds =
// every known (node, topic) pair. Files: edges.tsv, profiles.csv, seeds.csv.
DatasetBundle generate_synthetic(std::size_t n, std::size_t m, std::size_t z,
                                 const std::vector<StanceMix>& stance_mix, std::uint64_t seed,
                                 const std::filesystem::path& out_dir);

// Writes to "<path>.tmp" and renames over `path` on commit(); an uncommitted
// writer removes its temp file.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ostream& stream();
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::unique_ptr<std::ofstream> out_;
  bool committed_ = false;
};

void write_text_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace tsa::io
