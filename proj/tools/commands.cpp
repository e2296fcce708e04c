#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "fxmot/errors.hpp"
#include "fxmot/scenario.hpp"
#include "mot_format.hpp"

namespace fxmot::cli {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open `" + path + "` for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open `" + path + "` for writing");
  return out;
}

// Runs `body`, mapping exceptions to exit codes with a message naming `source`.
template <class F>
int guarded(std::ostream& log, const std::string& source, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    log << "error: " << source << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
  }
  return kExitData;
}

std::string bit_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

int cmd_track(const TrackArgs& args, std::ostream& log) {
  TrackConfig cfg;
  if (!args.config_file.empty()) {
    const int rc = guarded(log, args.config_file, [&] {
      auto in = open_input(args.config_file);
      cfg = read_config(in);
      return kExitOk;
    });
    if (rc != kExitOk) return rc;
  }
  if (args.seed) cfg.sb.seed = *args.seed;
  if (args.assigner) cfg.assigner = *args.assigner;

  std::vector<MotRecord> records;
  const int rc = guarded(log, args.det_file, [&] {
    auto in = open_input(args.det_file);
    records = read_mot(in);
    return kExitOk;
  });
  if (rc != kExitOk) return rc;

  return guarded(log, args.det_file, [&] {
    validate(cfg);
    const auto frames = group_detections(records);
    const int last_frame = frames.empty() ? 0 : frames.rbegin()->first;

    auto out = open_output(args.out_file);
    auto diag = open_output(args.diag_file.empty() ? args.out_file + ".diag.txt" : args.diag_file);
    diag << kDiagHeader << '\n';

    TrackSet set;
    std::size_t failures = 0;
    const std::vector<Detection> none;
    for (int f = 1; f <= last_frame; ++f) {
      const auto it = frames.find(f);
      const auto& dets = it == frames.end() ? none : it->second;
      const std::size_t n_t = set.trackers.size();
      auto step_out = step(std::move(set), dets, cfg);
      set = std::move(step_out.tracks);
      failures += step_out.numerical_failures;

      const auto& a = step_out.assignment;
      const auto& d = a.diagnostics;
      const long long solve_us = args.timing ? std::llround(d.solve_seconds * 1e6) : 0;
      diag << f << ',' << n_t << ',' << a.large_table.n_d() << ',' << number(d.energy_large) << ','
           << number(d.energy_small) << ',' << d.repairs << ',' << solve_us << '\n';

      for (const auto& t : set.trackers) {
        if (!is_reported(t)) continue;
        const auto b = t.box();
        out << format_mot({f, t.id, b.left, b.top, b.width, b.height, t.confidence}) << '\n';
      }
    }
    if (failures > 0) log << "warning: " << failures << " Kalman update(s) failed and kept the prediction\n";
    return kExitOk;
  });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& log) {
  return guarded(log, args.spec_file, [&] {
    ScenarioSpec spec;
    if (args.spec_file == kBuiltinFiveObjects) {
      spec = five_object_crossing();
    } else {
      auto in = open_input(args.spec_file);
      spec = read_scenario_spec(in);
    }
    if (args.seed) spec.seed = *args.seed;
    const auto sc = generate(spec);
    auto gt = open_output(args.out_prefix + ".gt.txt");
    write_mot(gt, ground_truth_records(sc.truth));
    auto det = open_output(args.out_prefix + ".det.txt");
    write_mot(det, detection_records(sc.detections));
    return kExitOk;
  });
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& log) {
  if (args.anti_aging < 0) {
    log << "error: anti_aging must be non-negative\n";
    return kExitUsage;
  }
  GroundTruth gt;
  int rc = guarded(log, args.gt_file, [&] {
    auto in = open_input(args.gt_file);
    gt = ground_truth_from_records(read_mot(in));
    return kExitOk;
  });
  if (rc != kExitOk) return rc;
  TrackingResults results;
  rc = guarded(log, args.results_file, [&] {
    auto in = open_input(args.results_file);
    results = results_from_records(read_mot(in), gt.frames.size());
    return kExitOk;
  });
  if (rc != kExitOk) return rc;

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", occlusion_survival(results, gt, args.anti_aging));
  out << "id_switches=" << id_switches(results, gt) << '\n'
      << "occlusion_survival=" << buf << '\n'
      << "occlusion_windows=" << occlusion_windows(gt).size() << '\n';
  return kExitOk;
}

int cmd_solve_qubo(const SolveQuboArgs& args, std::ostream& out, std::ostream& log) {
  return guarded(log, args.qubo_file, [&] {
    auto in = open_input(args.qubo_file);
    const QuboProblem p = read_qubo(in);
    validate(args.params);
    const auto sol = solve_qubo(p, args.params);
    out << "bits=" << bit_string(sol.bits) << " energy=" << number(sol.energy) << '\n';
    if (args.oracle) {
      if (p.n() > kOracleMaxVariables) {
        log << "note: --oracle skipped, " << p.n() << " variables exceed " << kOracleMaxVariables << '\n';
      } else {
        const auto best = brute_force_qubo(p);
        const bool agree = std::abs(best.energy - sol.energy) <= 1e-9;
        out << "oracle_bits=" << bit_string(best.bits) << " oracle_energy=" << number(best.energy) << '\n'
            << "agree=" << (agree ? 1 : 0) << '\n';
      }
    }
    return kExitOk;
  });
}

}  // namespace fxmot::cli
