#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "temp_dir.hpp"
#include "tsa/cli.hpp"
#include "tsa/io.hpp"
#include "tsa/metrics.hpp"

namespace tsa {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kConfig = R"({"delta_adjacent": 0.8, "delta_nonadjacent": 0.3, "lambda": 0.7,
  "mu": 0.2, "r1": 0.2, "r2": 0.2, "mix_r": 0.7, "mix_a": 0.3, "rounds_K": 5, "rng_seed": 11})";

struct CliTest : ::testing::Test {
  void SetUp() override {
    auto r = run_cli({"generate", "--nodes", "40", "--edges", "120", "--topics", "2",
                      "--stance-mix", "0.8,0.1,0.05,0.05", "--seed", "3", "--out-dir",
                      (dir / "data").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    write_file(dir / "config.json", kConfig);
  }

  std::vector<std::string> simulate_args(const std::string& trace) {
    return {"simulate",   "--graph",  (dir / "data/edges.tsv").string(),
            "--profiles", (dir / "data/profiles.csv").string(),
            "--seeds",    (dir / "data/seeds.csv").string(),
            "--config",   (dir / "config.json").string(),
            "--out-trace", (dir / trace).string()};
  }

  TempDir dir;
};

TEST_F(CliTest, SimulateIsReproducible) {
  auto a = run_cli(simulate_args("a.jsonl"));
  ASSERT_EQ(a.code, 0) << a.err;
  auto b = run_cli(simulate_args("b.jsonl"));
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(read_file(dir / "a.jsonl"), read_file(dir / "b.jsonl"));
  EXPECT_NE(a.out.find("run 0 topic"), std::string::npos);

  auto args = simulate_args("c.jsonl");
  args.insert(args.end(), {"--run-seed-base", "12"});
  ASSERT_EQ(run_cli(args).code, 0);
  EXPECT_NE(read_file(dir / "a.jsonl"), read_file(dir / "c.jsonl"));
}

TEST_F(CliTest, ParallelRunsEqualSerial) {
  auto serial = simulate_args("s.jsonl");
  serial.insert(serial.end(), {"--runs", "8"});
  auto parallel = simulate_args("p.jsonl");
  parallel.insert(parallel.end(), {"--runs", "8", "--threads", "8"});
  ASSERT_EQ(run_cli(serial).code, 0);
  ASSERT_EQ(run_cli(parallel).code, 0);
  for (int i = 0; i < 8; ++i) {
    const auto suffix = ".run" + std::to_string(i) + ".jsonl";
    ASSERT_TRUE(std::filesystem::exists(dir / ("s" + suffix)));
    EXPECT_EQ(read_file(dir / ("s" + suffix)), read_file(dir / ("p" + suffix)));
  }
  EXPECT_NE(read_file(dir / "s.run0.jsonl"), read_file(dir / "s.run1.jsonl"));
}

TEST_F(CliTest, MissingConfigKeyIsNamed) {
  write_file(dir / "config.json", R"({"delta_adjacent": 0.8})");
  auto r = run_cli(simulate_args("t.jsonl"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("delta_nonadjacent"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "t.jsonl"));
}

TEST_F(CliTest, BaselineIc) {
  auto ic = [&](const std::string& p) {
    return run_cli({"baseline-ic", "--graph", (dir / "data/edges.tsv").string(), "--seeds",
                    (dir / "data/seeds.csv").string(), "--p", p, "--runs", "20", "--out",
                    (dir / "ic.json").string()});
  };
  ASSERT_EQ(ic("0").code, 0);
  auto zero = nlohmann::json::parse(read_file(dir / "ic.json"));
  ASSERT_EQ(ic("1").code, 0);
  auto one = nlohmann::json::parse(read_file(dir / "ic.json"));
  EXPECT_EQ(one["final_active"].size(), 20u);
  EXPECT_GE(one["mean"].get<double>(), zero["mean"].get<double>());
  // p = 1 is deterministic.
  EXPECT_EQ(one["final_active"][0], one["final_active"][19]);
  EXPECT_EQ(ic("1.5").code, 1);
  EXPECT_EQ(ic("-0.1").code, 1);
}

TEST_F(CliTest, EvaluateSelfConsistent) {
  auto args = simulate_args("t.jsonl");
  args.insert(args.end(), {"--out-initial", (dir / "initial.csv").string()});
  ASSERT_EQ(run_cli(args).code, 0);
  auto trace = io::load_trace(dir / "t.jsonl");
  auto initial = io::load_state(dir / "initial.csv", trace.node_labels, trace.topic_labels);
  auto final_state = metrics::replay_final_state(initial, trace.events);
  io::write_ground_truth(final_state, trace.node_labels, trace.topic_labels, dir / "truth.csv");

  auto r = run_cli({"evaluate", "--trace", (dir / "t.jsonl").string(), "--initial",
                    (dir / "initial.csv").string(), "--truth", (dir / "truth.csv").string(),
                    "--out-report", (dir / "report.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto report = nlohmann::json::parse(read_file(dir / "report.json"));
  ASSERT_EQ(report.size(), 2u);
  for (const auto& [topic, scores] : report.items()) {
    EXPECT_EQ(scores["activation_accuracy"].get<double>(), 1.0);
    EXPECT_EQ(scores["stance_accuracy"].get<double>(), 1.0);
  }

  write_file(dir / "bad_truth.csv", read_file(dir / "truth.csv") + "nobody,0,1\n");
  auto bad = run_cli({"evaluate", "--trace", (dir / "t.jsonl").string(), "--initial",
                      (dir / "initial.csv").string(), "--truth", (dir / "bad_truth.csv").string(),
                      "--out-report", (dir / "r2.json").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("nobody"), std::string::npos);
}

TEST_F(CliTest, CurvesAndMalformedTrace) {
  auto args = simulate_args("t.jsonl");
  args.insert(args.end(), {"--out-initial", (dir / "initial.csv").string()});
  ASSERT_EQ(run_cli(args).code, 0);
  auto r = run_cli({"curves", "--trace", (dir / "t.jsonl").string(), "--initial",
                    (dir / "initial.csv").string(), "--out-csv", (dir / "c.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_file(dir / "c.csv");
  EXPECT_EQ(csv.rfind("round,topic,unknown,oppose,neutral,support\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6 * 2);
  EXPECT_TRUE(std::filesystem::exists(dir / "c_activation.csv"));

  write_file(dir / "broken.jsonl", "{\"schema\": \"tsa-trace/1\"\n");
  auto bad = run_cli({"curves", "--trace", (dir / "broken.jsonl").string(), "--initial",
                      (dir / "initial.csv").string(), "--out-csv", (dir / "d.csv").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(std::filesystem::exists(dir / "d.csv"));
}

TEST(CliHelpTest, DocumentsFormats) {
  auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* word : {"simulate", "baseline-ic", "generate", "evaluate", "curves",
                           "node_id,topic_id,stance", "tsa-trace/1", "rounds_K"}) {
    EXPECT_NE(r.out.find(word), std::string::npos) << word;
  }
  EXPECT_EQ(run_cli({"simulate"}).code, 1);
  EXPECT_EQ(run_cli({"nonsense"}).code, 1);
}

}  // namespace
}  // namespace tsa
