#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tsa {

using NodeId = std::uint32_t;
using TopicId = std::uint32_t;

// Four-valued stance code. The numeric value (-1, 0, 0.5, 1) is what enters
// the similarity and persistence arithmetic.
enum class Stance : std::uint8_t { unknown, oppose, neutral, support };

inline constexpr std::array<Stance, 4> kAllStances = {Stance::unknown, Stance::oppose,
                                                      Stance::neutral, Stance::support};

constexpr double stance_value(Stance s) noexcept {
  switch (s) {
    case Stance::unknown: return -1.0;
    case Stance::oppose: return 0.0;
    case Stance::neutral: return 0.5;
    case Stance::support: return 1.0;
  }
  return -1.0;
}

// Exact match against the four admissible codes; anything else is rejected.
constexpr std::optional<Stance> stance_from_value(double v) noexcept {
  if (v == -1.0) return Stance::unknown;
  if (v == 0.0) return Stance::oppose;
  if (v == 0.5) return Stance::neutral;
  if (v == 1.0) return Stance::support;
  return std::nullopt;
}

constexpr bool is_known(Stance s) noexcept { return s != Stance::unknown; }

// Dense n x z stance table, row-major by node.
class ProfileTable {
 public:
  ProfileTable() = default;
  ProfileTable(std::size_t nodes, std::size_t topics, Stance fill = Stance::unknown)
      : nodes_(nodes), topics_(topics), cells_(nodes * topics, fill) {}

  std::size_t node_count() const noexcept { return nodes_; }
  std::size_t topic_count() const noexcept { return topics_; }

  Stance at(NodeId v, TopicId j) const { return cells_[index(v, j)]; }
  void set(NodeId v, TopicId j, Stance s) { cells_[index(v, j)] = s; }

  std::span<const Stance> row(NodeId v) const {
    return {cells_.data() + static_cast<std::size_t>(v) * topics_, topics_};
  }

  bool operator==(const ProfileTable&) const = default;

 private:
  std::size_t index(NodeId v, TopicId j) const {
    return static_cast<std::size_t>(v) * topics_ + j;
  }

  std::size_t nodes_ = 0;
  std::size_t topics_ = 0;
  std::vector<Stance> cells_;
};

using TopicProfile = std::vector<Stance>;
using Edge = std::pair<NodeId, NodeId>;

// Immutable directed graph (edge u->v means information flows from u to v)
// plus the per-node topic profiles it was loaded with.
class SocialGraph {
 public:
  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  std::size_t topic_count() const noexcept { return profiles_.topic_count(); }

  // Ascending by NodeId.
  std::span<const NodeId> out_neighbors(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;

  const ProfileTable& profiles() const noexcept { return profiles_; }

  const std::vector<std::string>& node_labels() const noexcept { return node_labels_; }
  const std::vector<std::string>& topic_labels() const noexcept { return topic_labels_; }

  std::vector<Edge> edges() const;

  bool operator==(const SocialGraph&) const = default;

 private:
  friend SocialGraph build_graph(std::size_t, std::size_t, std::span<const Edge>,
                                 std::span<const TopicProfile>, std::vector<std::string>,
                                 std::vector<std::string>);

  void check_node(NodeId v) const;

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  ProfileTable profiles_;
  std::vector<std::string> node_labels_;
  std::vector<std::string> topic_labels_;
};

// Validates and freezes a graph. Labels default to the decimal dense ids.
// Throws DuplicateEdge, SelfLoop, IdOutOfRange, ProfileLengthMismatch.
SocialGraph build_graph(std::size_t node_count, std::size_t topic_count,
                        std::span<const Edge> edges, std::span<const TopicProfile> profiles,
                        std::vector<std::string> node_labels = {},
                        std::vector<std::string> topic_labels = {});

// Membership set over the dense node range with ascending iteration.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : member_(universe, 0) {}

  bool contains(NodeId v) const { return member_[v] != 0; }
  bool insert(NodeId v);
  bool erase(NodeId v);
  void clear();

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t universe() const noexcept { return member_.size(); }

  std::vector<NodeId> to_vector() const;
  // Ascending members of the complement.
  std::vector<NodeId> complement() const;

  bool operator==(const NodeSet&) const = default;

 private:
  std::vector<std::uint8_t> member_;
  std::size_t size_ = 0;
};

// Per-topic partition of the known nodes into oppose / neutral / support.
class StanceIndex {
 public:
  StanceIndex() = default;
  explicit StanceIndex(const ProfileTable& profiles);

  const NodeSet& stance_class(TopicId j, Stance s) const;
  const NodeSet& known(TopicId j) const { return topics_[j].known; }
  std::size_t topic_count() const noexcept { return topics_.size(); }

  // Moves v from its old class into the new one; unknown means "no class".
  void move(NodeId v, TopicId j, Stance from, Stance to);

  bool operator==(const StanceIndex&) const = default;

 private:
  struct TopicSets {
    NodeSet oppose;
    NodeSet neutral;
    NodeSet support;
    NodeSet known;
    bool operator==(const TopicSets&) const = default;
  };

  NodeSet& mutable_class(TopicId j, Stance s);

  std::vector<TopicSets> topics_;
};

inline StanceIndex stance_index(const ProfileTable& profiles) { return StanceIndex(profiles); }
inline StanceIndex stance_index(const SocialGraph& g) { return StanceIndex(g.profiles()); }

}  // namespace tsa
