#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "text.hpp"
#include "tsa/io.hpp"
#include "tsa/log.hpp"

namespace tsa::io {

using detail::CsvTriple;
using detail::Field;
using detail::LineReader;
using detail::SymbolTable;

namespace {

constexpr std::string_view kProfileHeader = "node_id,topic_id,stance";
constexpr std::string_view kTruthHeader = "node_id,topic_id,final_stance";

struct RawEdge {
  std::string source;
  std::string target;
  std::size_t line;
  std::size_t target_column;
};

struct RawRow {
  std::string node;
  std::string topic;
  Stance stance;
  std::size_t line;
  std::size_t node_column;
  std::size_t topic_column;
};

std::vector<RawRow> read_rows(const std::filesystem::path& path, std::string_view header) {
  LineReader reader(path);
  std::vector<RawRow> rows;
  std::string line;
  bool first = true;
  while (reader.next(line)) {
    auto triple = detail::read_triple(reader, line, header, first);
    first = false;
    if (!triple) continue;
    rows.push_back(RawRow{std::string(triple->node.text), std::string(triple->topic.text),
                          detail::parse_stance(reader, triple->stance), reader.line_number(),
                          triple->node.column, triple->topic.column});
  }
  return rows;
}

[[noreturn]] void fail_at(const std::filesystem::path& path, const RawRow& row, ErrorCode code,
                          const std::string& message, std::size_t column) {
  throw Error(code, message, SourceLocation{path.string(), row.line, column});
}

// Resolves rows against existing label tables; each (node, topic) at most once.
template <typename Sink>
void resolve_rows(const std::filesystem::path& path, const std::vector<RawRow>& rows,
                  const std::vector<std::string>& node_labels,
                  const std::vector<std::string>& topic_labels, Sink&& sink) {
  const SymbolTable nodes(node_labels);
  const SymbolTable topics(topic_labels);
  std::set<std::pair<NodeId, TopicId>> seen;
  for (const auto& row : rows) {
    auto v = nodes.find(row.node);
    if (!v) {
      fail_at(path, row, ErrorCode::inconsistent_ids, "unknown node id '" + row.node + "'",
              row.node_column);
    }
    auto j = topics.find(row.topic);
    if (!j) {
      fail_at(path, row, ErrorCode::inconsistent_ids, "unknown topic id '" + row.topic + "'",
              row.topic_column);
    }
    if (!seen.emplace(*v, *j).second) {
      fail_at(path, row, ErrorCode::parse_error,
              "duplicate entry for (" + row.node + ", " + row.topic + ")", row.node_column);
    }
    sink(*v, *j, row.stance, row);
  }
}

void write_table(std::ostream& out, std::string_view header, const ProfileTable& table,
                 const std::vector<std::string>& node_labels,
                 const std::vector<std::string>& topic_labels) {
  out << header << '\n';
  for (NodeId v = 0; v < table.node_count(); ++v) {
    for (TopicId j = 0; j < table.topic_count(); ++j) {
      out << node_labels[v] << ',' << topic_labels[j] << ',' << format_stance(table.at(v, j))
          << '\n';
    }
  }
}

}  // namespace

void GroundTruth::set(NodeId v, TopicId j, Stance s) {
  stances_.set(v, j, s);
  present_[slot(v, j)] = 1;
}

SocialGraph load_graph(const std::filesystem::path& edges_path,
                       const std::optional<std::filesystem::path>& profiles_path) {
  std::vector<RawEdge> raw_edges;
  {
    LineReader reader(edges_path);
    std::string line;
    while (reader.next(line)) {
      auto fields = detail::split(line, '\t');
      if (fields.size() != 2) {
        reader.fail(ErrorCode::parse_error,
                    "expected 'source<TAB>target', got " + std::to_string(fields.size()) +
                        " tab-separated fields",
                    fields.size() > 2 ? fields[2].column : line.size() + 1);
      }
      for (const auto& f : fields) {
        if (f.text.empty()) reader.fail(ErrorCode::parse_error, "empty node id", f.column);
      }
      raw_edges.push_back(RawEdge{std::string(fields[0].text), std::string(fields[1].text),
                                  reader.line_number(), fields[1].column});
    }
  }
  std::vector<RawRow> rows;
  if (profiles_path) rows = read_rows(*profiles_path, kProfileHeader);

  std::vector<std::string> node_labels;
  std::vector<std::string> topic_labels;
  node_labels.reserve(raw_edges.size() * 2 + rows.size());
  for (const auto& e : raw_edges) {
    node_labels.push_back(e.source);
    node_labels.push_back(e.target);
  }
  for (const auto& r : rows) {
    node_labels.push_back(r.node);
    topic_labels.push_back(r.topic);
  }
  node_labels = detail::canonical_labels(std::move(node_labels));
  topic_labels = detail::canonical_labels(std::move(topic_labels));

  const SymbolTable nodes(node_labels);
  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  std::unordered_set<std::uint64_t> seen;
  for (const auto& e : raw_edges) {
    const NodeId u = *nodes.find(e.source);
    const NodeId v = *nodes.find(e.target);
    const SourceLocation where{edges_path.string(), e.line, e.target_column};
    if (u == v) throw Error(ErrorCode::self_loop, "edge " + e.source + " -> " + e.target, where);
    if (!seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) {
      throw Error(ErrorCode::duplicate_edge, "edge " + e.source + " -> " + e.target, where);
    }
    edges.emplace_back(u, v);
  }

  std::vector<TopicProfile> profiles(node_labels.size(),
                                     TopicProfile(topic_labels.size(), Stance::unknown));
  if (profiles_path) {
    resolve_rows(*profiles_path, rows, node_labels, topic_labels,
                 [&](NodeId v, TopicId j, Stance s, const RawRow&) { profiles[v][j] = s; });
  }
  const std::size_t n = node_labels.size();
  const std::size_t z = topic_labels.size();
  return build_graph(n, z, edges, profiles, std::move(node_labels), std::move(topic_labels));
}

void write_graph(const SocialGraph& g, const std::filesystem::path& edges_path,
                 const std::filesystem::path& profiles_path) {
  {
    AtomicFile file(edges_path);
    auto& out = file.stream();
    out << "# source\ttarget\n";
    for (const auto& [u, v] : g.edges()) {
      out << g.node_labels()[u] << '\t' << g.node_labels()[v] << '\n';
    }
    file.commit();
  }
  AtomicFile file(profiles_path);
  write_table(file.stream(), kProfileHeader, g.profiles(), g.node_labels(), g.topic_labels());
  file.commit();
}

SeedAssignment load_seeds(const std::filesystem::path& path, const SocialGraph& g) {
  const auto rows = read_rows(path, kProfileHeader);
  SeedAssignment seeds;
  seeds.reserve(rows.size());
  resolve_rows(path, rows, g.node_labels(), g.topic_labels(),
               [&](NodeId v, TopicId j, Stance s, const RawRow& row) {
                 if (!is_known(s)) {
                   fail_at(path, row, ErrorCode::invalid_seed_stance,
                           "seed stance must be 0, 0.5 or 1", row.topic_column);
                 }
                 seeds.push_back(SeedEntry{v, j, s});
               });
  if (seeds.empty()) warn("seed file " + path.string() + " has no seeds; nothing will spread");
  std::sort(seeds.begin(), seeds.end(), [](const SeedEntry& a, const SeedEntry& b) {
    return std::pair(a.node, a.topic) < std::pair(b.node, b.topic);
  });
  return seeds;
}

std::vector<NodeId> load_seed_nodes(const std::filesystem::path& path, const SocialGraph& g) {
  const SymbolTable nodes(g.node_labels());
  std::vector<NodeId> out;
  for (const auto& row : read_rows(path, kProfileHeader)) {
    auto v = nodes.find(row.node);
    if (!v) {
      fail_at(path, row, ErrorCode::inconsistent_ids, "unknown node id '" + row.node + "'",
              row.node_column);
    }
    if (!is_known(row.stance)) {
      fail_at(path, row, ErrorCode::invalid_seed_stance, "seed stance must be 0, 0.5 or 1",
              row.topic_column);
    }
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) warn("seed file " + path.string() + " has no seeds");
  return out;
}

void write_seeds(const SeedAssignment& seeds, const SocialGraph& g,
                 const std::filesystem::path& path) {
  AtomicFile file(path);
  auto& out = file.stream();
  out << kProfileHeader << '\n';
  for (const auto& s : seeds) {
    out << g.node_labels()[s.node] << ',' << g.topic_labels()[s.topic] << ','
        << format_stance(s.stance) << '\n';
  }
  file.commit();
}

ProfileTable load_state(const std::filesystem::path& path,
                        const std::vector<std::string>& node_labels,
                        const std::vector<std::string>& topic_labels) {
  ProfileTable table(node_labels.size(), topic_labels.size());
  resolve_rows(path, read_rows(path, kProfileHeader), node_labels, topic_labels,
               [&](NodeId v, TopicId j, Stance s, const RawRow&) { table.set(v, j, s); });
  return table;
}

void write_state(const ProfileTable& state, const std::vector<std::string>& node_labels,
                 const std::vector<std::string>& topic_labels, const std::filesystem::path& path) {
  AtomicFile file(path);
  write_table(file.stream(), kProfileHeader, state, node_labels, topic_labels);
  file.commit();
}

GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const std::vector<std::string>& node_labels,
                              const std::vector<std::string>& topic_labels) {
  GroundTruth truth(node_labels.size(), topic_labels.size());
  resolve_rows(path, read_rows(path, kTruthHeader), node_labels, topic_labels,
               [&](NodeId v, TopicId j, Stance s, const RawRow&) { truth.set(v, j, s); });
  return truth;
}

void write_ground_truth(const ProfileTable& truth, const std::vector<std::string>& node_labels,
                        const std::vector<std::string>& topic_labels,
                        const std::filesystem::path& path) {
  AtomicFile file(path);
  write_table(file.stream(), kTruthHeader, truth, node_labels, topic_labels);
  file.commit();
}

}  // namespace tsa::io
