#include <sstream>

#include "json_util.hpp"
#include "text.hpp"
#include "tsa/io.hpp"

namespace tsa::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json stance_json(Stance s) {
  if (s == Stance::neutral) return 0.5;
  return static_cast<int>(stance_value(s));
}

const char* channel_name(Channel c) { return c == Channel::adjacent ? "adjacent" : "nonadjacent"; }

void write_header(std::ostream& out, const SimTrace& trace) {
  ordered_json header;
  header["schema"] = kTraceSchema;
  header["run"] = trace.run_index;
  header["params"] = params_to_json(trace.params);
  header["nodes"] = trace.node_labels;
  header["topics"] = trace.topic_labels;
  out << header.dump() << '\n';
}

void write_events(std::ostream& out, const SimTrace& trace) {
  ordered_json ev;
  for (const auto& e : trace.events) {
    ev["round"] = e.round;
    ev["topic"] = trace.topic_labels.at(e.topic);
    ev["node"] = trace.node_labels.at(e.node);
    ev["old"] = stance_json(e.old_stance);
    ev["new"] = stance_json(e.new_stance);
    ev["source"] = trace.node_labels.at(e.source);
    ev["p"] = e.probability;
    ev["channel"] = channel_name(e.channel);
    out << ev.dump() << '\n';
  }
}

}  // namespace

std::string trace_to_string(const SimTrace& trace) {
  std::ostringstream out;
  write_header(out, trace);
  write_events(out, trace);
  return out.str();
}

void write_trace(const SimTrace& trace, const std::filesystem::path& path) {
  AtomicFile file(path);
  write_header(file.stream(), trace);
  write_events(file.stream(), trace);
  file.commit();
}

SimTrace load_trace(const std::filesystem::path& path) {
  detail::LineReader reader(path);
  std::string line;
  if (!reader.next(line)) reader.fail(ErrorCode::malformed_trace, "missing trace header", 1);

  SimTrace trace;
  detail::SymbolTable nodes;
  detail::SymbolTable topics;
  {
    const auto header = parse_json_text(line, reader.file(), reader.line_number());
    if (!header.is_object() || !header.contains("schema")) {
      reader.fail(ErrorCode::malformed_trace, "header has no schema field", 1);
    }
    if (header["schema"] != kTraceSchema) {
      reader.fail(ErrorCode::schema_version_mismatch,
                  "schema " + header["schema"].dump() + ", expected \"" +
                      std::string(kTraceSchema) + "\"",
                  1);
    }
    try {
      trace.run_index = header.at("run").get<std::uint64_t>();
      trace.params = params_from_json(header.at("params"));
      trace.node_labels = header.at("nodes").get<std::vector<std::string>>();
      trace.topic_labels = header.at("topics").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      reader.fail(ErrorCode::malformed_trace, std::string("bad header: ") + e.what(), 1);
    }
    nodes = detail::SymbolTable(trace.node_labels);
    topics = detail::SymbolTable(trace.topic_labels);
  }

  auto stance_of = [&](const json& v, const char* key) {
    if (!v.is_number()) reader.fail(ErrorCode::malformed_trace, std::string(key) + " not a number", 1);
    auto s = stance_from_value(v.get<double>());
    if (!s) reader.fail(ErrorCode::bad_stance_value, std::string(key) + " = " + v.dump(), 1);
    return *s;
  };
  auto label_of = [&](const detail::SymbolTable& table, const json& v, const char* key) {
    if (!v.is_string()) reader.fail(ErrorCode::malformed_trace, std::string(key) + " not a string", 1);
    auto id = table.find(v.get<std::string>());
    if (!id) reader.fail(ErrorCode::inconsistent_ids, std::string(key) + " " + v.dump() + " not in header", 1);
    return *id;
  };

  while (reader.next(line)) {
    const auto ev = parse_json_text(line, reader.file(), reader.line_number());
    try {
      StanceChange e;
      e.round = ev.at("round").get<std::uint32_t>();
      e.topic = label_of(topics, ev.at("topic"), "topic");
      e.node = label_of(nodes, ev.at("node"), "node");
      e.old_stance = stance_of(ev.at("old"), "old");
      e.new_stance = stance_of(ev.at("new"), "new");
      e.source = label_of(nodes, ev.at("source"), "source");
      e.probability = ev.at("p").get<double>();
      const auto& channel = ev.at("channel");
      if (channel == "adjacent") {
        e.channel = Channel::adjacent;
      } else if (channel == "nonadjacent") {
        e.channel = Channel::nonadjacent;
      } else {
        reader.fail(ErrorCode::malformed_trace, "channel " + channel.dump(), 1);
      }
      trace.events.push_back(e);
    } catch (const json::exception& e) {
      reader.fail(ErrorCode::malformed_trace, std::string("bad event: ") + e.what(), 1);
    }
  }
  return trace;
}

}  // namespace tsa::io
