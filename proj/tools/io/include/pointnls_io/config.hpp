#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointnls/initial_datum.hpp"

namespace pointnls::io {

inline constexpr int kSchemaVersion = 1;

/// Raised for any invalid configuration, before anything is written.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }  // 1-based, 0 when unknown

 private:
  std::string field_;
  int line_;
};

struct DatumSpec {
  std::string kind = "gaussian";  // gaussian | ground_state | zero
  double amplitude = 1.0;         // gaussian amplitude, or gain for ground_state
  double width = 1.0;
  double center = 0.0;
  double velocity = 0.0;
  double phase = 0.0;     // global phase e^{i phase}
  double dilation = 1.0;  // ground_state only

  InitialDatum build(double p) const;
};

struct RunConfig {
  std::string name = "run";
  double p = 5.0;
  DatumSpec datum;
  double dt = 1e-3;
  double T = 1.0;
  double blowup_amp = 1e6;
  double newton_tol = 1e-12;
  int newton_max_iters = 50;
  double half_width = 40.0;
  double dx = 1.0 / 16.0;
  std::vector<double> snapshots;  // times of field snapshots; snapped to the nearest node
  bool observables = true;
  std::size_t trajectory_stride = 1;
  std::string output;  // directory; relative paths resolve against POINTNLS_OUTPUT_ROOT
  unsigned threads = 1;

  void validate() const;  // throws ConfigError
};

struct Axis {
  std::string name;  // amplitude | p | width
  std::vector<double> values;
};

struct SweepConfig {
  std::string name = "sweep";
  RunConfig base;
  std::vector<Axis> axes;
  unsigned parallelism = 1;
  bool resume = true;
  std::string output;

  void validate() const;
  /// Cartesian product of the axes, last axis fastest; each entry pairs with axes[i].
  std::vector<std::vector<double>> points() const;
  RunConfig at(const std::vector<double>& point) const;
};

/// Command-line overrides applied after parsing and before validation.
struct Overrides {
  std::optional<double> dt, T;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
};

enum class ConfigKind { Run, Sweep };

ConfigKind config_kind_of_file(const std::string& path);
RunConfig load_run_config(const std::string& path, const Overrides& o = {});
SweepConfig load_sweep_config(const std::string& path, const Overrides& o = {});
RunConfig parse_run_config(const std::string& yaml_text, const Overrides& o = {});
SweepConfig parse_sweep_config(const std::string& yaml_text, const Overrides& o = {});

/// Output directory: absolute paths as given, relative ones under $POINTNLS_OUTPUT_ROOT when set.
std::string resolve_output(const std::string& path);

}  // namespace pointnls::io
