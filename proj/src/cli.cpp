#include "tsa/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <numeric>
#include <optional>
#include <sstream>

#include "tsa/baseline_ic.hpp"
#include "tsa/error.hpp"
#include "tsa/io.hpp"
#include "tsa/metrics.hpp"
#include "tsa/propagation.hpp"

namespace tsa::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFormatsHelp = R"(File formats:
  edges     "source<TAB>target" per line, '#' comments
  profiles  CSV node_id,topic_id,stance   stance in {-1, 0, 0.5, 1}; omitted pairs = -1
  seeds     CSV node_id,topic_id,stance   stance in {0, 0.5, 1}
  truth     CSV node_id,topic_id,final_stance
  config    JSON object: delta_adjacent, delta_nonadjacent, lambda, mu, r1, r2,
            mix_r, mix_a, rounds_K [, initial_persistence_A0, rng_seed,
            adjacency_memory, epsilon_tie]
  trace     JSON Lines, header {"schema":"tsa-trace/1",...} then one event per line
  initial   full stance table in profiles format (written by simulate --out-initial)
Exit codes: 0 success, 1 input error, 2 internal invariant violation.)";

struct SimulateArgs {
  std::string graph, profiles, seeds, config, out_trace, out_initial;
  std::size_t runs = 1;
  std::optional<std::uint64_t> seed_base;
  std::size_t threads = 1;
};

struct IcArgs {
  std::string graph, seeds, out;
  double p = 0.0;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> max_rounds;
};

struct GenerateArgs {
  std::size_t nodes = 0, edges = 0, topics = 1;
  std::string stance_mix, out_dir;
  std::uint64_t seed = 0;
};

struct EvaluateArgs {
  std::string trace, initial, truth, out_report;
};

struct CurvesArgs {
  std::string trace, initial, out_csv, out_activation;
};

// "trace.jsonl" + run 3 -> "trace.run3.jsonl" when several runs are written.
fs::path run_path(const fs::path& base, std::size_t run, std::size_t runs) {
  if (runs == 1) return base;
  fs::path out = base;
  out.replace_filename(base.stem().string() + ".run" + std::to_string(run) +
                       base.extension().string());
  return out;
}

void require_parent_dir(const fs::path& path) {
  const auto parent = path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Error(ErrorCode::io_error, "output directory " + parent.string() + " does not exist");
  }
}

int simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.runs < 1) throw Error(ErrorCode::invalid_argument, "--runs must be >= 1");
  require_parent_dir(a.out_trace);
  if (!a.out_initial.empty()) require_parent_dir(a.out_initial);

  SimParams params = io::load_config(a.config);
  if (a.seed_base) params.rng_seed = *a.seed_base;
  const auto g = io::load_graph(a.graph, fs::path(a.profiles));
  const auto seeds = io::load_seeds(a.seeds, g);
  if (g.topic_count() == 0) throw Error(ErrorCode::empty_profile, "profiles define no topics");
  const auto initial = initial_profiles(g, seeds);

  const auto traces = run_tsa_batch(g, params, seeds, a.runs, a.threads);

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& trace = traces[i];
    io::write_trace(trace, run_path(a.out_trace, i, a.runs));
    const auto z = g.topic_count();
    const auto last = trace.round_summaries.end() - static_cast<std::ptrdiff_t>(z);
    for (auto it = last; it != trace.round_summaries.end(); ++it) {
      out << "run " << i << " topic " << g.topic_labels()[it->topic] << ": unknown=" << it->unknown
          << " oppose=" << it->oppose << " neutral=" << it->neutral << " support=" << it->support
          << " events=" << trace.events.size() << '\n';
    }
  }
  if (!a.out_initial.empty()) {
    io::write_state(initial, g.node_labels(), g.topic_labels(), a.out_initial);
  }
  return 0;
}

int baseline_ic(const IcArgs& a, std::ostream& out) {
  if (!(a.p >= 0.0 && a.p <= 1.0)) {
    throw Error(ErrorCode::probability_out_of_range, "--p " + std::to_string(a.p) + " not in [0, 1]");
  }
  if (a.runs < 1) throw Error(ErrorCode::invalid_argument, "--runs must be >= 1");
  require_parent_dir(a.out);
  const auto g = io::load_graph(a.graph, std::nullopt);
  const auto seeds = io::load_seed_nodes(a.seeds, g);

  IcParams params;
  params.edge_probability = a.p;
  params.rng_seed = a.seed;
  params.max_rounds = a.max_rounds;
  const auto counts = run_ic_monte_carlo(g, params, seeds, a.runs);
  const double mean =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0})) /
      static_cast<double>(counts.size());

  nlohmann::ordered_json report;
  report["p"] = a.p;
  report["runs"] = a.runs;
  report["seed"] = a.seed;
  report["mean"] = mean;
  report["final_active"] = counts;
  io::write_text_atomic(a.out, report.dump() + "\n");
  out << "mean final active count over " << a.runs << " runs: " << mean << '\n';
  return 0;
}

int generate(const GenerateArgs& a, std::ostream& out) {
  const auto mix = io::parse_stance_mix(a.stance_mix, a.topics);
  const auto bundle = io::generate_synthetic(a.nodes, a.edges, a.topics, mix, a.seed, a.out_dir);
  out << "wrote " << bundle.edges.string() << ", " << bundle.profiles.string() << ", "
      << bundle.seeds.string() << '\n';
  return 0;
}

int evaluate(const EvaluateArgs& a, std::ostream& out) {
  require_parent_dir(a.out_report);
  const auto trace = io::load_trace(a.trace);
  const auto initial = io::load_state(a.initial, trace.node_labels, trace.topic_labels);
  const auto truth = io::load_ground_truth(a.truth, trace.node_labels, trace.topic_labels);
  const auto final_state = metrics::replay_final_state(initial, trace.events);
  const auto report = metrics::accuracy_report(final_state, truth, trace.topic_labels);
  const auto json = metrics::report_to_json(report);
  io::write_text_atomic(a.out_report, json);
  out << json;
  return 0;
}

int curves(const CurvesArgs& a, std::ostream& out) {
  fs::path activation_path = a.out_activation;
  if (activation_path.empty()) {
    fs::path base(a.out_csv);
    activation_path = base;
    activation_path.replace_filename(base.stem().string() + "_activation" +
                                     base.extension().string());
  }
  require_parent_dir(a.out_csv);
  require_parent_dir(activation_path);
  const auto trace = io::load_trace(a.trace);
  const auto initial = io::load_state(a.initial, trace.node_labels, trace.topic_labels);
  const auto points = metrics::stance_distribution_curve(trace, initial);
  io::write_text_atomic(a.out_csv, metrics::stance_curve_csv(points, trace.topic_labels));
  io::write_text_atomic(activation_path, metrics::activation_curve_csv(points, trace.topic_labels));
  out << "wrote " << a.out_csv << " and " << activation_path.string() << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topic- and stance-aware cascade simulator", "tsa"};
  app.footer(kFormatsHelp);
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the topic/stance-aware cascade");
  sim_cmd->add_option("--graph", sim.graph, "Edge list file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--profiles", sim.profiles, "Node topic profiles CSV")
      ->required()
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--seeds", sim.seeds, "Seed stances CSV")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--config", sim.config, "Parameter JSON")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--out-trace", sim.out_trace,
                      "Trace output (JSON Lines); with --runs N > 1 run i goes to <stem>.run<i><ext>")
      ->required();
  sim_cmd->add_option("--runs", sim.runs, "Number of runs")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--run-seed-base", sim.seed_base,
                      "Base seed S; run i draws from stream (S, i). Default: config rng_seed");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads for --runs")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out-initial", sim.out_initial,
                      "Write the initial stance table (profiles + seeds) for evaluate/curves");

  IcArgs ic;
  auto* ic_cmd = app.add_subcommand("baseline-ic", "Monte Carlo independent cascade baseline");
  ic_cmd->add_option("--graph", ic.graph, "Edge list file")->required()->check(CLI::ExistingFile);
  ic_cmd->add_option("--seeds", ic.seeds, "Seeds CSV (topic column ignored)")
      ->required()
      ->check(CLI::ExistingFile);
  ic_cmd->add_option("--p", ic.p, "Uniform edge activation probability in [0, 1]")->required();
  ic_cmd->add_option("--runs", ic.runs, "Monte Carlo runs")->check(CLI::PositiveNumber);
  ic_cmd->add_option("--out", ic.out, "JSON report: per-run final active counts and mean")
      ->required();
  ic_cmd->add_option("--seed", ic.seed, "Base seed; run i draws from stream (seed, i)");
  ic_cmd->add_option("--max-rounds", ic.max_rounds, "Stop after this many rounds");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset bundle");
  gen_cmd->add_option("--nodes", gen.nodes, "Node count")->required();
  gen_cmd->add_option("--edges", gen.edges, "Edge count, at most n(n-1)")->required();
  gen_cmd->add_option("--topics", gen.topics, "Topic count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--stance-mix", gen.stance_mix,
                      "P(unknown),P(oppose),P(neutral),P(support) for all topics, or one "
                      "group per topic separated by ';'")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Directory for edges.tsv, profiles.csv, seeds.csv")
      ->required();

  EvaluateArgs ev;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score a trace's final state against ground truth");
  ev_cmd->add_option("--trace", ev.trace, "Trace file")->required()->check(CLI::ExistingFile);
  ev_cmd->add_option("--initial", ev.initial, "Initial stance table")
      ->required()
      ->check(CLI::ExistingFile);
  ev_cmd->add_option("--truth", ev.truth, "Ground truth CSV")->required()->check(CLI::ExistingFile);
  ev_cmd->add_option("--out-report", ev.out_report, "JSON accuracy report")->required();

  CurvesArgs cv;
  auto* cv_cmd = app.add_subcommand("curves", "Per-round stance and activation curves as CSV");
  cv_cmd->add_option("--trace", cv.trace, "Trace file")->required()->check(CLI::ExistingFile);
  cv_cmd->add_option("--initial", cv.initial, "Initial stance table")
      ->required()
      ->check(CLI::ExistingFile);
  cv_cmd->add_option("--out-csv", cv.out_csv, "Stance distribution CSV")->required();
  cv_cmd->add_option("--out-activation-csv", cv.out_activation,
                     "Activation CSV (default: <out-csv stem>_activation.csv)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sim_cmd) return simulate(sim, out);
    if (*ic_cmd) return baseline_ic(ic, out);
    if (*gen_cmd) return generate(gen, out);
    if (*ev_cmd) return evaluate(ev, out);
    if (*cv_cmd) return curves(cv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace tsa::cli
