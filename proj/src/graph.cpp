#include "tsa/graph.hpp"

#include <algorithm>
#include <string>

#include "tsa/error.hpp"

namespace tsa {

namespace {

std::vector<std::string> decimal_labels(std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

SocialGraph build_graph(std::size_t node_count, std::size_t topic_count,
                        std::span<const Edge> edges, std::span<const TopicProfile> profiles,
                        std::vector<std::string> node_labels,
                        std::vector<std::string> topic_labels) {
  if (profiles.size() != node_count) {
    throw Error(ErrorCode::profile_length_mismatch,
                "expected " + std::to_string(node_count) + " profiles, got " +
                    std::to_string(profiles.size()));
  }
  if (node_labels.empty()) node_labels = decimal_labels(node_count);
  if (topic_labels.empty()) topic_labels = decimal_labels(topic_count);
  if (node_labels.size() != node_count || topic_labels.size() != topic_count) {
    throw Error(ErrorCode::inconsistent_ids, "label table size does not match counts");
  }

  SocialGraph g;
  g.profiles_ = ProfileTable(node_count, topic_count);
  for (std::size_t v = 0; v < node_count; ++v) {
    const auto& p = profiles[v];
    if (p.size() != topic_count) {
      throw Error(ErrorCode::profile_length_mismatch,
                  "profile of node " + std::to_string(v) + " has length " +
                      std::to_string(p.size()) + ", expected " + std::to_string(topic_count));
    }
    for (std::size_t j = 0; j < topic_count; ++j) {
      g.profiles_.set(static_cast<NodeId>(v), static_cast<TopicId>(j), p[j]);
    }
  }

  std::vector<Edge> sorted(edges.begin(), edges.end());
  for (const auto& [u, v] : sorted) {
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorCode::id_out_of_range, "edge (" + std::to_string(u) + "," +
                                                  std::to_string(v) + ") with n=" +
                                                  std::to_string(node_count));
    }
    if (u == v) throw Error(ErrorCode::self_loop, "edge (" + std::to_string(u) + "," +
                                                       std::to_string(v) + ")");
  }
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::duplicate_edge, "edge (" + std::to_string(dup->first) + "," +
                                               std::to_string(dup->second) + ")");
  }

  g.offsets_.assign(node_count + 1, 0);
  for (const auto& e : sorted) ++g.offsets_[e.first + 1];
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.reserve(sorted.size());
  for (const auto& e : sorted) g.targets_.push_back(e.second);

  g.node_labels_ = std::move(node_labels);
  g.topic_labels_ = std::move(topic_labels);
  return g;
}

void SocialGraph::check_node(NodeId v) const {
  if (v >= node_count()) {
    throw Error(ErrorCode::id_out_of_range,
                "node " + std::to_string(v) + " with n=" + std::to_string(node_count()));
  }
}

std::span<const NodeId> SocialGraph::out_neighbors(NodeId v) const {
  check_node(v);
  return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool SocialGraph::has_edge(NodeId u, NodeId v) const {
  check_node(v);
  auto nbrs = out_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> SocialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : out_neighbors(u)) out.emplace_back(u, v);
  }
  return out;
}

bool NodeSet::insert(NodeId v) {
  if (member_[v]) return false;
  member_[v] = 1;
  ++size_;
  return true;
}

bool NodeSet::erase(NodeId v) {
  if (!member_[v]) return false;
  member_[v] = 0;
  --size_;
  return true;
}

void NodeSet::clear() {
  std::fill(member_.begin(), member_.end(), 0);
  size_ = 0;
}

std::vector<NodeId> NodeSet::to_vector() const {
  std::vector<NodeId> out;
  out.reserve(size_);
  for (std::size_t v = 0; v < member_.size(); ++v) {
    if (member_[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

std::vector<NodeId> NodeSet::complement() const {
  std::vector<NodeId> out;
  out.reserve(member_.size() - size_);
  for (std::size_t v = 0; v < member_.size(); ++v) {
    if (!member_[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

StanceIndex::StanceIndex(const ProfileTable& profiles) {
  const auto n = profiles.node_count();
  topics_.assign(profiles.topic_count(), TopicSets{NodeSet(n), NodeSet(n), NodeSet(n), NodeSet(n)});
  for (NodeId v = 0; v < n; ++v) {
    for (TopicId j = 0; j < profiles.topic_count(); ++j) {
      move(v, j, Stance::unknown, profiles.at(v, j));
    }
  }
}

const NodeSet& StanceIndex::stance_class(TopicId j, Stance s) const {
  const auto& t = topics_.at(j);
  switch (s) {
    case Stance::oppose: return t.oppose;
    case Stance::neutral: return t.neutral;
    case Stance::support: return t.support;
    case Stance::unknown: break;
  }
  throw InvariantViolation("unknown stance has no class set");
}

NodeSet& StanceIndex::mutable_class(TopicId j, Stance s) {
  return const_cast<NodeSet&>(std::as_const(*this).stance_class(j, s));
}

void StanceIndex::move(NodeId v, TopicId j, Stance from, Stance to) {
  if (from == to) return;
  if (is_known(from)) mutable_class(j, from).erase(v);
  if (is_known(to)) {
    mutable_class(j, to).insert(v);
    topics_[j].known.insert(v);
  } else {
    topics_[j].known.erase(v);
  }
}

}  // namespace tsa
