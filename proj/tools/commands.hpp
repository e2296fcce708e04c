#pragma once

// Subcommand bodies, kept free of argument parsing so tests can drive them directly.
// Every command returns an exit status: 0 success, 1 usage error, 2 data error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fxmot/track.hpp"

namespace fxmot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct TrackArgs {
  std::string det_file;
  std::string out_file;
  std::string config_file;  // empty: defaults
  std::string diag_file;    // empty: `<out_file>.diag.txt`
  std::optional<std::uint64_t> seed;
  std::optional<Assigner> assigner;
  bool timing = true;  // false writes solve_us = 0 so the sidecar is reproducible
};

// Diagnostics sidecar columns.
inline constexpr const char* kDiagHeader = "frame,n_t,n_d,energy_large,energy_small,repairs,solve_us";

int cmd_track(const TrackArgs& args, std::ostream& log);

inline constexpr const char* kBuiltinFiveObjects = "builtin:five_object_crossing";

struct SimulateArgs {
  std::string spec_file;  // or kBuiltinFiveObjects
  std::string out_prefix;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& log);

struct EvalArgs {
  std::string results_file;
  std::string gt_file;
  int anti_aging = 5;
};

// Prints `id_switches=N`, `occlusion_survival=F` and `occlusion_windows=K`.
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& log);

inline constexpr std::size_t kOracleMaxVariables = 20;

struct SolveQuboArgs {
  std::string qubo_file;
  SbParams params;
  bool oracle = false;
};

// Prints `bits=<b_0 b_1 ...> energy=E`; with the oracle also `oracle_bits=... oracle_energy=E`
// and `agree=0|1`.
int cmd_solve_qubo(const SolveQuboArgs& args, std::ostream& out, std::ostream& log);

}  // namespace fxmot::cli
