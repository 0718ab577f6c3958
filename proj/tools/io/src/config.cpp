#include "pointnls_io/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace pointnls::io {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? "" : field + ": ") + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

// Strict mapping reader: unknown keys are errors.
class Section {
 public:
  Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) throw ConfigError(path_.empty() ? "<root>" : path_, line_of(node_), "expected a mapping");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  bool has(const std::string& k) {
    seen_.insert(k);
    return static_cast<bool>(node_[k]);
  }
  YAML::Node get(const std::string& k) {
    seen_.insert(k);
    return node_[k];
  }

  template <class T>
  void read(const std::string& k, T& out) {
    const YAML::Node n = get(k);
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key(k), line_of(n), "wrong type");
    }
  }
  template <class T>
  void require(const std::string& k, T& out) {
    if (!has(k)) throw ConfigError(key(k), line_of(node_), "missing required field");
    read(k, out);
  }

  void finish() const {
    for (const auto& kv : node_) {
      const std::string k = kv.first.as<std::string>();
      if (!seen_.count(k)) throw ConfigError(key(k), line_of(kv.first), "unknown field");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

YAML::Node load_text(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, "YAML syntax error: " + e.msg);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check_header(Section& root, const std::string& expected_kind) {
  int version = 0;
  root.require("schema_version", version);
  if (version != kSchemaVersion)
    throw ConfigError("schema_version", line_of(root.get("schema_version")),
                      "unsupported version " + std::to_string(version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
  std::string kind;
  root.require("kind", kind);
  if (kind != expected_kind)
    throw ConfigError("kind", line_of(root.get("kind")), "expected '" + expected_kind + "', found '" + kind + "'");
}

// Reads the run fields of `s` into `cfg` (everything except the header).
void read_run_fields(Section& s, RunConfig& cfg, bool allow_output) {
  s.read("name", cfg.name);
  s.read("p", cfg.p);
  if (s.has("datum")) {
    Section d(s.get("datum"), s.key("datum"));
    d.read("kind", cfg.datum.kind);
    d.read("amplitude", cfg.datum.amplitude);
    d.read("width", cfg.datum.width);
    d.read("center", cfg.datum.center);
    d.read("velocity", cfg.datum.velocity);
    d.read("phase", cfg.datum.phase);
    d.read("dilation", cfg.datum.dilation);
    d.finish();
  }
  if (s.has("solver")) {
    Section v(s.get("solver"), s.key("solver"));
    v.read("dt", cfg.dt);
    v.read("T", cfg.T);
    v.read("blowup_amp", cfg.blowup_amp);
    v.read("newton_tol", cfg.newton_tol);
    v.read("newton_max_iters", cfg.newton_max_iters);
    v.finish();
  }
  if (s.has("grid")) {
    Section g(s.get("grid"), s.key("grid"));
    g.read("half_width", cfg.half_width);
    g.read("dx", cfg.dx);
    g.finish();
  }
  s.read("snapshots", cfg.snapshots);
  s.read("observables", cfg.observables);
  s.read("trajectory_stride", cfg.trajectory_stride);
  s.read("threads", cfg.threads);
  if (allow_output) s.read("output", cfg.output);
}

// Line of a dotted field path such as "solver.dt", 0 when absent.
int line_of_path(YAML::Node node, const std::string& path) {
  std::size_t start = 0;
  while (node && node.IsMap()) {
    const std::size_t dot = path.find('.', start);
    node.reset(node[path.substr(start, dot - start)]);
    if (!node) return 0;
    if (dot == std::string::npos) return line_of(node);
    start = dot + 1;
  }
  return 0;
}

// Semantic errors carry no line; recover it from the document.
template <class Fn>
void locate(const YAML::Node& root, const std::string& prefix, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    if (e.line() > 0) throw;
    const std::string field = e.field();
    int line = line_of_path(root, prefix + field);
    if (line == 0) line = line_of_path(root, prefix + field.substr(0, field.find('.')));
    const std::string what = e.what();
    const std::string msg = what.substr(what.find(": ") == std::string::npos ? 0 : what.find(": ") + 2);
    throw ConfigError(field, line, msg);
  }
}

void apply(RunConfig& cfg, const Overrides& o) {
  if (o.dt) cfg.dt = *o.dt;
  if (o.T) cfg.T = *o.T;
  if (o.out) cfg.output = *o.out;
  if (o.threads) cfg.threads = *o.threads;
}

}  // namespace

InitialDatum DatumSpec::build(double p) const {
  const cplx gain = std::polar(1.0, phase);
  if (kind == "gaussian") return InitialDatum::gaussian({amplitude, width, center, velocity}, gain);
  if (kind == "ground_state") return InitialDatum::ground_state(p, amplitude * gain, dilation);
  if (kind == "zero") return InitialDatum::zero();
  throw ConfigError("datum.kind", 0, "unknown datum kind '" + kind + "'");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& f, const std::string& m) { throw ConfigError(f, 0, m); };
  if (name.empty()) fail("name", "must not be empty");
  if (!(p > 1.0) || !std::isfinite(p)) fail("p", "must be a finite number > 1");
  if (datum.kind != "gaussian" && datum.kind != "ground_state" && datum.kind != "zero")
    fail("datum.kind", "must be gaussian, ground_state or zero");
  if (!std::isfinite(datum.amplitude)) fail("datum.amplitude", "must be finite");
  if (!(datum.width > 0.0)) fail("datum.width", "must be positive");
  if (!(datum.dilation > 0.0)) fail("datum.dilation", "must be positive");
  if (!std::isfinite(datum.center) || !std::isfinite(datum.velocity) || !std::isfinite(datum.phase))
    fail("datum", "center, velocity and phase must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("solver.dt", "must be positive");
  if (!(T >= dt) || !std::isfinite(T)) fail("solver.T", "must be finite and at least dt");
  if (!(blowup_amp > 0.0)) fail("solver.blowup_amp", "must be positive");
  if (!(newton_tol > 0.0)) fail("solver.newton_tol", "must be positive");
  if (newton_max_iters < 1) fail("solver.newton_max_iters", "must be at least 1");
  if (!(dx > 0.0) || !(half_width >= dx)) fail("grid", "need 0 < dx <= half_width");
  const double n = half_width / dx;
  if (std::abs(n - std::round(n)) > 1e-9 * n) fail("grid", "half_width must be a multiple of dx");
  for (double t : snapshots)
    if (!(t >= 0.0) || t > T + 1e-12) fail("snapshots", "times must lie in [0, T]");
  if (trajectory_stride < 1) fail("trajectory_stride", "must be at least 1");
  if (threads < 1) fail("threads", "must be at least 1");
}

void SweepConfig::validate() const {
  if (name.empty()) throw ConfigError("name", 0, "must not be empty");
  if (axes.empty()) throw ConfigError("axes", 0, "at least one axis is required");
  std::set<std::string> names;
  for (const auto& a : axes) {
    if (a.name != "amplitude" && a.name != "p" && a.name != "width")
      throw ConfigError("axes." + a.name, 0, "axis must be amplitude, p or width");
    if (!names.insert(a.name).second) throw ConfigError("axes." + a.name, 0, "duplicate axis");
    if (a.values.empty()) throw ConfigError("axes." + a.name, 0, "axis grid is empty");
  }
  if (parallelism < 1) throw ConfigError("parallelism", 0, "must be at least 1");
  for (const auto& pt : points()) at(pt).validate();
}

std::vector<std::vector<double>> SweepConfig::points() const {
  std::vector<std::vector<double>> out{{}};
  for (const auto& a : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out)
      for (double v : a.values) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    out = std::move(next);
  }
  return out;
}

RunConfig SweepConfig::at(const std::vector<double>& point) const {
  RunConfig r = base;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (axes[i].name == "amplitude") r.datum.amplitude = point[i];
    if (axes[i].name == "p") r.p = point[i];
    if (axes[i].name == "width") r.datum.width = point[i];
  }
  r.threads = 1;
  return r;
}

ConfigKind config_kind_of_file(const std::string& path) {
  const YAML::Node root = load_text(read_file(path));
  if (!root.IsMap() || !root["kind"]) throw ConfigError("kind", line_of(root), "missing required field");
  const std::string k = root["kind"].as<std::string>();
  if (k == "run") return ConfigKind::Run;
  if (k == "sweep") return ConfigKind::Sweep;
  throw ConfigError("kind", line_of(root["kind"]), "must be run or sweep");
}

RunConfig parse_run_config(const std::string& yaml_text, const Overrides& o) {
  const YAML::Node root = load_text(yaml_text);
  Section s(root, "");
  check_header(s, "run");
  RunConfig cfg;
  read_run_fields(s, cfg, true);
  s.finish();
  apply(cfg, o);
  locate(root, "", [&] { cfg.validate(); });
  return cfg;
}

SweepConfig parse_sweep_config(const std::string& yaml_text, const Overrides& o) {
  const YAML::Node root = load_text(yaml_text);
  Section s(root, "");
  check_header(s, "sweep");
  SweepConfig cfg;
  s.read("name", cfg.name);
  if (!s.has("base")) throw ConfigError("base", line_of(root), "missing required field");
  {
    Section b(s.get("base"), "base");
    read_run_fields(b, cfg.base, false);
    b.finish();
  }
  if (!s.has("axes")) throw ConfigError("axes", line_of(root), "missing required field");
  const YAML::Node axes = s.get("axes");
  if (!axes.IsSequence()) throw ConfigError("axes", line_of(axes), "expected a list");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    Section a(axes[i], "axes[" + std::to_string(i) + "]");
    Axis ax;
    a.require("name", ax.name);
    if (a.has("values")) {
      a.read("values", ax.values);
    } else {
      double from = 0.0, to = 0.0, step = 0.0;
      a.require("from", from);
      a.require("to", to);
      a.require("step", step);
      if (!(step > 0.0) || to < from) throw ConfigError(a.key("step"), line_of(axes[i]), "need step > 0 and to >= from");
      const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
      for (long k = 0; k <= n; ++k) {
        // rounded so that 0.1 + 2 * 0.1 prints as 0.3
        const double v = from + static_cast<double>(k) * step;
        ax.values.push_back(std::round(v * 1e12) / 1e12);
      }
    }
    a.finish();
    cfg.axes.push_back(std::move(ax));
  }
  s.read("parallelism", cfg.parallelism);
  s.read("resume", cfg.resume);
  s.read("output", cfg.output);
  s.finish();
  if (o.out) cfg.output = *o.out;
  if (o.threads) cfg.parallelism = *o.threads;
  if (o.dt) cfg.base.dt = *o.dt;
  if (o.T) cfg.base.T = *o.T;
  locate(root, "", [&] {
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      // base fields are reported under base.
      const bool in_base = e.field() != "name" && e.field() != "parallelism" && e.field().rfind("axes", 0) != 0;
      if (!in_base) throw;
      const std::string what = e.what();
      throw ConfigError("base." + e.field(), 0, what.substr(what.find(": ") + 2));
    }
  });
  return cfg;
}

RunConfig load_run_config(const std::string& path, const Overrides& o) { return parse_run_config(read_file(path), o); }
SweepConfig load_sweep_config(const std::string& path, const Overrides& o) {
  return parse_sweep_config(read_file(path), o);
}

std::string resolve_output(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path p(path.empty() ? "." : path);
  if (p.is_absolute()) return p.string();
  if (const char* root = std::getenv("POINTNLS_OUTPUT_ROOT"); root && *root) return (fs::path(root) / p).string();
  return p.string();
}

}  // namespace pointnls::io
