#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace fxmot;
using namespace fxmot::cli;

int main(int argc, char** argv) {
  CLI::App app{"fxmot: multi-object tracking with a flexible QUBO assignment"};
  app.require_subcommand(1);

  TrackArgs track;
  std::uint64_t track_seed = 0;
  Assigner assigner = Assigner::flexible;
  bool no_timing = false;
  auto* track_cmd = app.add_subcommand("track", "Track MOT-format detections");
  track_cmd->add_option("detections", track.det_file, "Detection file (MOT text)")->required();
  track_cmd->add_option("-o,--out", track.out_file, "Output results file")->required();
  track_cmd->add_option("-c,--config", track.config_file, "`key = value` config file");
  track_cmd->add_option("--diag", track.diag_file, "Diagnostics sidecar (default <out>.diag.txt)");
  auto* seed_opt = track_cmd->add_option("--seed", track_seed, "Overrides the SB seed");
  auto* assigner_opt =
      track_cmd->add_option("--assigner", assigner, "flexible or hungarian")
          ->transform(CLI::CheckedTransformer(
              std::map<std::string, Assigner>{{"flexible", Assigner::flexible}, {"hungarian", Assigner::hungarian}}));
  track_cmd->add_flag("--no-timing", no_timing, "Write solve_us = 0 in the sidecar");

  SimulateArgs sim;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate ground truth and detections for a scenario");
  sim_cmd->add_option("spec", sim.spec_file, std::string("Scenario spec file or ") + kBuiltinFiveObjects)
      ->required();
  sim_cmd->add_option("-o,--out", sim.out_prefix, "Output prefix (<prefix>.gt.txt, <prefix>.det.txt)")
      ->required();
  auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "Overrides the jitter seed");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score results against ground truth");
  eval_cmd->add_option("results", eval.results_file, "Tracker output (MOT text)")->required();
  eval_cmd->add_option("ground_truth", eval.gt_file, "Ground truth written by `simulate`")->required();
  eval_cmd->add_option("--anti-aging", eval.anti_aging, "Re-association allowance after an occlusion");

  SolveQuboArgs solve;
  auto* solve_cmd = app.add_subcommand("solve-qubo", "Minimize a QUBO with simulated bifurcation");
  solve_cmd->add_option("qubo", solve.qubo_file, "QUBO text file")->required();
  solve_cmd->add_option("--seed", solve.params.seed);
  solve_cmd->add_option("--a0", solve.params.a0);
  solve_cmd->add_option("--c0", solve.params.c0);
  solve_cmd->add_option("--eta", solve.params.eta);
  solve_cmd->add_option("--dt", solve.params.dt);
  solve_cmd->add_option("--steps", solve.params.n_steps);
  solve_cmd->add_option("--restarts", solve.params.restarts);
  solve_cmd->add_flag("--oracle", solve.oracle, "Also brute-force the optimum (n <= 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*track_cmd) {
    if (*seed_opt) track.seed = track_seed;
    if (*assigner_opt) track.assigner = assigner;
    track.timing = !no_timing;
    return cmd_track(track, std::cerr);
  }
  if (*sim_cmd) {
    if (*sim_seed_opt) sim.seed = sim_seed;
    return cmd_simulate(sim, std::cerr);
  }
  if (*eval_cmd) return cmd_eval(eval, std::cout, std::cerr);
  if (*solve_cmd) return cmd_solve_qubo(solve, std::cout, std::cerr);
  return kExitUsage;
}
