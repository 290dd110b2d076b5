#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "text.hpp"
#include "tsa/io.hpp"

namespace tsa::io {

namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kRequired = {
    "delta_adjacent", "delta_nonadjacent", "lambda", "mu", "r1", "r2", "mix_r", "mix_a",
    "rounds_K"};
const std::set<std::string, std::less<>> kOptional = {"initial_persistence_A0", "rng_seed",
                                                      "adjacency_memory", "epsilon_tie"};

double number_at(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::range_violation, key + " must be a number, got " + v.dump());
  }
  return v.get<double>();
}

std::uint64_t unsigned_at(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::range_violation, key + " must be a non-negative integer, got " + v.dump());
  }
  return v.get<std::uint64_t>();
}

}  // namespace

SimParams params_from_json(const json& obj) {
  if (!obj.is_object()) throw Error(ErrorCode::parse_error, "config must be a JSON object");
  for (const auto& key : kRequired) {
    if (!obj.contains(key)) throw Error(ErrorCode::missing_key, "missing config key '" + key + "'");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!kRequired.count(key) && !kOptional.count(key)) {
      throw Error(ErrorCode::range_violation, "unrecognised config key '" + key + "'");
    }
  }
  SimParams p;
  p.delta_adjacent = number_at(obj, "delta_adjacent");
  p.delta_nonadjacent = number_at(obj, "delta_nonadjacent");
  p.lambda = number_at(obj, "lambda");
  p.mu = number_at(obj, "mu");
  p.r1 = number_at(obj, "r1");
  p.r2 = number_at(obj, "r2");
  p.mix_r = number_at(obj, "mix_r");
  p.mix_a = number_at(obj, "mix_a");
  const auto rounds = unsigned_at(obj, "rounds_K");
  if (rounds < 1 || rounds > 0xffffffffULL) {
    throw Error(ErrorCode::range_violation,
                "rounds_K = " + std::to_string(rounds) + " outside [1, 4294967295]");
  }
  p.rounds_K = static_cast<std::uint32_t>(rounds);
  if (obj.contains("initial_persistence_A0")) {
    p.initial_persistence_A0 = number_at(obj, "initial_persistence_A0");
  }
  if (obj.contains("rng_seed")) p.rng_seed = unsigned_at(obj, "rng_seed");
  if (obj.contains("adjacency_memory")) {
    const auto& v = obj.at("adjacency_memory");
    if (v == "persistent") {
      p.adjacency_memory = AdjacencyMemory::persistent;
    } else if (v == "per_round") {
      p.adjacency_memory = AdjacencyMemory::per_round;
    } else {
      throw Error(ErrorCode::range_violation,
                  "adjacency_memory = " + v.dump() + " not in {\"persistent\", \"per_round\"}");
    }
  }
  if (obj.contains("epsilon_tie")) {
    const auto& v = obj.at("epsilon_tie");
    if (v == "zero" || v == 0) {
      p.epsilon_tie = EpsilonTie::zero;
    } else if (v == "one" || v == 1) {
      p.epsilon_tie = EpsilonTie::one;
    } else {
      throw Error(ErrorCode::range_violation,
                  "epsilon_tie = " + v.dump() + " not in {\"zero\", \"one\"}");
    }
  }
  validate(p);
  return p;
}

nlohmann::ordered_json params_to_json(const SimParams& p) {
  nlohmann::ordered_json out;
  out["delta_adjacent"] = p.delta_adjacent;
  out["delta_nonadjacent"] = p.delta_nonadjacent;
  out["lambda"] = p.lambda;
  out["mu"] = p.mu;
  out["r1"] = p.r1;
  out["r2"] = p.r2;
  out["mix_r"] = p.mix_r;
  out["mix_a"] = p.mix_a;
  out["rounds_K"] = p.rounds_K;
  out["initial_persistence_A0"] = p.initial_persistence_A0;
  out["rng_seed"] = p.rng_seed;
  out["adjacency_memory"] =
      p.adjacency_memory == AdjacencyMemory::persistent ? "persistent" : "per_round";
  out["epsilon_tie"] = p.epsilon_tie == EpsilonTie::zero ? "zero" : "one";
  return out;
}

json parse_json_text(std::string_view text, const std::string& file, std::size_t line) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based; translate into line/column within `text`.
    std::size_t ln = line;
    std::size_t col = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++ln;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::parse_error, "invalid JSON", SourceLocation{file, ln, col});
  }
}

SimParams parse_config(std::string_view json_text, std::string_view source) {
  return params_from_json(parse_json_text(json_text, std::string(source), 1));
}

SimParams load_config(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string config_to_json(const SimParams& params) { return params_to_json(params).dump(2) + "\n"; }

}  // namespace tsa::io
