#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "support/fixtures.hpp"
#include "synkit/serialize.hpp"

#ifndef SYNKIT_CLI_PATH
#define SYNKIT_CLI_PATH "synkit"
#endif
#ifndef SYNKIT_DATA_DIR
#define SYNKIT_DATA_DIR "data"
#endif

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SYNKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string data(const std::string& rel) { return std::string(SYNKIT_DATA_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("bundled fixtures parse to the in-code example systems") {
  const auto m = synkit::load_model(data("ct_agent.json"));
  CHECK((m.A - synkit::fixtures::ct_agent().A).cwiseAbs().maxCoeff() == 0.0);
  const auto dm = synkit::load_model(data("dt_agent.json"));
  CHECK((dm.A - synkit::fixtures::dt_agent().A).cwiseAbs().maxCoeff() == 0.0);
  const auto pc = synkit::load_precompensator(data("ct_precompensator.json"));
  CHECK((pc.Dp - synkit::fixtures::ct_precompensator().Dp).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("check command exit codes") {
  CHECK(run_cli("check --model " + data("ct_agent.json") + " --pre-compensator " +
                data("ct_precompensator.json")) == 0);
  CHECK(run_cli("check --model " + data("dt_agent.json")) == 0);

  // double integrator: named violations, exit 1
  write_text("/tmp/synkit_cli_dint.json", R"json({
    "A": [[0, 1], [0, 0]], "B": [[0], [1]], "C": [[1, 0]],
    "time_domain": "continuous"})json");
  CHECK(run_cli("check --model /tmp/synkit_cli_dint.json") == 1);

  write_text("/tmp/synkit_cli_bad.json", "{ not json");
  CHECK(run_cli("check --model /tmp/synkit_cli_bad.json") == 2);
  CHECK(run_cli("check --model /tmp/synkit_missing_file.json") == 2);
}

TEST_CASE("synth, simulate, and sweep round-trip through files") {
  const std::string out = "/tmp/synkit_cli_roundtrip";
  write_text("/tmp/synkit_cli_cfg.json", R"json({
    "model": ")json" + data("dt_agent_fullstate.json") + R"json(",
    "protocol": "dt_full",
    "graph": "cycle(4)",
    "sim": {"steps": 400, "seed": 11, "record_stride": 10},
    "output_dir": ")json" + out + R"json("})json");

  CHECK(run_cli("synth --config /tmp/synkit_cli_cfg.json") == 0);
  const std::string protocol_path = out + "/protocol.json";
  const std::string first = slurp(protocol_path);

  // synth is deterministic: a second run writes identical bytes
  CHECK(run_cli("synth --config /tmp/synkit_cli_cfg.json") == 0);
  CHECK(slurp(protocol_path) == first);

  CHECK(run_cli("simulate --config /tmp/synkit_cli_cfg.json --protocol " +
                protocol_path) == 0);
  const std::string traj = slurp(out + "/trajectory.csv");
  const std::string sync = slurp(out + "/sync_error.csv");
  CHECK(run_cli("simulate --config /tmp/synkit_cli_cfg.json --protocol " +
                protocol_path) == 0);
  CHECK(slurp(out + "/trajectory.csv") == traj);  // byte-identical reruns
  CHECK(slurp(out + "/sync_error.csv") == sync);

  CHECK(run_cli("sweep --config /tmp/synkit_cli_cfg.json --protocol " +
                protocol_path) == 0);
  CHECK(slurp(out + "/sweep.json").find("\"pass\": true") != std::string::npos);
}

TEST_CASE("gains above the certified bound are gated by the override flag") {
  const std::string out = "/tmp/synkit_cli_gate";
  write_text("/tmp/synkit_cli_gate.json", R"json({
    "model": ")json" + data("dt_agent_fullstate.json") + R"json(",
    "protocol": "dt_full",
    "graph": "cycle(4)",
    "gains": {"epsilon": 5.0},
    "sim": {"steps": 3000, "seed": 3, "record_stride": 20},
    "output_dir": ")json" + out + R"json("})json");
  CHECK(run_cli("synth --config /tmp/synkit_cli_gate.json") == 1);
  CHECK(run_cli("synth --config /tmp/synkit_cli_gate.json --override-gain-bound") == 0);
  // the overridden gain destabilizes the loop: divergence maps to exit 3
  CHECK(run_cli("simulate --config /tmp/synkit_cli_gate.json --protocol " + out +
                "/protocol.json") == 3);
}

TEST_CASE("batch runs produce per-scenario outputs") {
  write_text("/tmp/synkit_cli_batch.json", R"json({
    "output_root": "/tmp/synkit_cli_batch_out",
    "runs": [{
      "name": "star",
      "model": ")json" + data("dt_agent_fullstate.json") + R"json(",
      "protocol": "dt_full",
      "graph": "star(5)",
      "sim": {"steps": 300, "seed": 5, "record_stride": 10}
    }]})json");
  CHECK(run_cli("batch --config /tmp/synkit_cli_batch.json") == 0);
  CHECK(slurp("/tmp/synkit_cli_batch_out/star/summary.json").find("initial") !=
        std::string::npos);
}

TEST_CASE("the output-root environment variable re-roots relative paths") {
  write_text("/tmp/synkit_cli_rooted.json", R"json({
    "model": ")json" + data("dt_agent_fullstate.json") + R"json(",
    "protocol": "dt_full",
    "graph": "path(3)",
    "sim": {"steps": 50, "seed": 2, "record_stride": 10},
    "output_dir": "rooted_run"})json");
  const std::string cmd = std::string("SYNKIT_OUTPUT_ROOT=/tmp/synkit_cli_root ") +
                          SYNKIT_CLI_PATH +
                          " synth --config /tmp/synkit_cli_rooted.json > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  std::ifstream in("/tmp/synkit_cli_root/rooted_run/protocol.json");
  CHECK(in.good());
}

TEST_CASE("edge-list graphs work end to end") {
  const std::string out = "/tmp/synkit_cli_edges";
  write_text("/tmp/synkit_cli_edges.json", R"json({
    "model": ")json" + data("ct_agent.json") + R"json(",
    "pre_compensator": ")json" + data("ct_precompensator.json") + R"json(",
    "protocol": "ct_partial",
    "graph": ")json" + data("four_node_tree.edges") + R"json(",
    "sim": {"horizon": 1.0, "dt": 0.002, "seed": 1, "record_stride": 100},
    "output_dir": ")json" + out + R"json("})json");
  CHECK(run_cli("synth --config /tmp/synkit_cli_edges.json") == 0);
  CHECK(run_cli("simulate --config /tmp/synkit_cli_edges.json --protocol " + out +
                "/protocol.json") == 0);
}
