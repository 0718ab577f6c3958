#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pointnls/charge_solver.hpp"
#include "pointnls/classifier.hpp"
#include "pointnls_io/config.hpp"

namespace pointnls::io {

enum ExitCode : int { kOk = 0, kConfigError = 2, kSolverStall = 3, kIoError = 4 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOutcome {
  ChargeTrajectory trajectory;
  std::optional<ClassificationResult> classification;  // p > 3 only
  std::string status;                                   // Completed | BlowUp | Stalled
  std::string directory;                                // empty when nothing was written
  int exit_code = kOk;
};

/// Solves, then writes trajectory.csv, observables.csv (when snapshots are requested and
/// observables are on) and metadata.json into the resolved output directory. With
/// write = false nothing touches the filesystem. Throws IoError.
RunOutcome run(const RunConfig& cfg, bool write = true);

struct SweepRow {
  std::vector<double> coords;  // one per axis
  double mass = 0, energy = 0, me_product = 0, eta0 = 0;
  std::string verdict;  // Verdict name, or "n/a" for p <= 3
  std::string outcome;  // Completed | BlowUp | Stalled | Error
  double t_end = 0;     // last accepted node
  double t_detect = 0;  // BlowUp only
  double q_abs_initial = 0, q_abs_final = 0;
  double q_abs_late_max = 0;  // max |q| over the second half of the accepted window
  double lq_norm = 0;         // ||q||_{L^{2(p-1)}} over the accepted window
  std::string error;

  bool decided() const { return verdict == "GlobalScattersExpected" || verdict == "BlowUpExpected"; }
  bool agrees() const;
};

struct SweepSummary {
  std::vector<SweepRow> rows;  // in points() order
  std::size_t decided = 0, agreeing = 0, resumed = 0;
  std::string directory;
};

/// Deterministic key for a grid point, e.g. "amplitude=0.5_p=5".
std::string row_key(const SweepConfig& cfg, const std::vector<double>& point);

SweepRow run_row(const SweepConfig& cfg, const std::vector<double>& point);

/// Rows run in parallel (one single-threaded solve each) and are written to rows/<key>.json
/// as they finish; phase_diagram.csv is written at the end. With resume, rows whose JSON
/// exists and parses with matching coordinates are loaded instead of recomputed.
SweepSummary sweep(const SweepConfig& cfg, bool write = true);

/// 17 significant digits.
std::string fmt(double v);

}  // namespace pointnls::io
