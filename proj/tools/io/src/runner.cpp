#include "pointnls_io/runner.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>

#include "pointnls/ground_state.hpp"
#include "pointnls/observables.hpp"
#include "pointnls/parallel.hpp"
#include "pointnls/reconstruction.hpp"
#include "pointnls/scattering.hpp"

#ifndef POINTNLS_VERSION
#define POINTNLS_VERSION "unknown"
#endif

namespace pointnls::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void make_dir(const fs::path& d) {
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw IoError("cannot create " + d.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

json datum_json(const DatumSpec& d) {
  return {{"kind", d.kind},     {"amplitude", d.amplitude}, {"width", d.width},      {"center", d.center},
          {"velocity", d.velocity}, {"phase", d.phase},     {"dilation", d.dilation}};
}

json config_json(const RunConfig& c) {
  return {{"schema_version", kSchemaVersion},
          {"name", c.name},
          {"p", c.p},
          {"datum", datum_json(c.datum)},
          {"solver",
           {{"dt", c.dt}, {"T", c.T}, {"blowup_amp", c.blowup_amp}, {"newton_tol", c.newton_tol},
            {"newton_max_iters", c.newton_max_iters}}},
          {"grid", {{"half_width", c.half_width}, {"dx", c.dx}}},
          {"snapshots", c.snapshots},
          {"observables", c.observables},
          {"trajectory_stride", c.trajectory_stride},
          {"output", c.output},
          {"threads", c.threads}};
}

json status_json(const SolverStatus& s) {
  json j{{"status", status_name(s)}};
  if (const auto* b = std::get_if<BlowUp>(&s)) {
    j["t_detect"] = b->t_detect;
    j["t_lower"] = b->t_lower;
    j["criterion"] = b->criterion;
  }
  if (const auto* st = std::get_if<Stalled>(&s)) {
    j["step"] = st->step;
    j["reason"] = st->reason;
  }
  return j;
}

json classification_json(const ClassificationResult& r) {
  return {{"mass", r.mass},         {"grad_sq", r.grad_sq},     {"energy", r.energy},
          {"me_product", r.me_product}, {"threshold", r.threshold}, {"eta0", r.eta0},
          {"verdict", to_string(r.verdict)}, {"sigma_c_norm", r.sigma_c_norm}, {"delta_sd", r.delta_sd},
          {"small_data", r.small_data}};
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.p = c.p;
  s.dt = c.dt;
  s.T = c.T;
  s.blowup_amp = c.blowup_amp;
  s.fp_tol = c.newton_tol;
  s.fp_max_iters = c.newton_max_iters;
  return s;
}

double late_max(const ChargeTrajectory& t) {
  const std::size_t n = t.last_index();
  double m = 0.0;
  for (std::size_t k = n / 2; k <= n; ++k) m = std::max(m, std::abs(t.q[k]));
  return m;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, bool write) {
  cfg.validate();
  const InitialDatum datum = cfg.datum.build(cfg.p);
  RunOutcome out{solve_charge(datum, solver_config(cfg)), std::nullopt, "", "", kOk};
  const ChargeTrajectory& traj = out.trajectory;
  out.status = status_name(traj.status);
  if (std::holds_alternative<Stalled>(traj.status)) out.exit_code = kSolverStall;
  if (cfg.p > 3.0) out.classification = classify(datum, cfg.p);
  if (!write) return out;

  const fs::path dir = resolve_output(cfg.output.empty() ? cfg.name : cfg.output);
  make_dir(dir);
  out.directory = dir.string();

  std::string csv = "t,re_q,im_q,abs_q\n";
  for (std::size_t k = 0; k < traj.q.size(); k += cfg.trajectory_stride) {
    const cplx q = traj.q[k];
    csv += fmt(traj.grid.node(k)) + "," + fmt(q.real()) + "," + fmt(q.imag()) + "," + fmt(std::abs(q)) + "\n";
  }
  write_text(dir / "trajectory.csv", csv);

  std::vector<double> times;
  for (double t : cfg.snapshots) {
    const double k = std::round((t - traj.grid.t0()) / traj.grid.dt());
    if (k <= static_cast<double>(traj.last_index())) times.push_back(traj.grid.node(static_cast<std::size_t>(k)));
  }
  if (cfg.observables && !times.empty()) {
    const SpatialGrid grid(cfg.half_width, cfg.dx);
    const auto snaps = reconstruct_many(traj, datum, times, grid, cfg.threads);
    std::string obs = "t,re_q,im_q,abs_q,mass,energy,eta,gap\n";
    for (const auto& s : snaps) {
      const cplx q = traj.q[traj.grid.index_of(s.t)];
      const ObservableRecord r = observe(s, cfg.p, q);
      obs += fmt(s.t) + "," + fmt(q.real()) + "," + fmt(q.imag()) + "," + fmt(std::abs(q)) + "," + fmt(r.mass) +
             "," + fmt(r.energy) + "," + fmt(r.eta) + "," + fmt(r.gap) + "\n";
    }
    write_text(dir / "observables.csv", obs);
  }

  json diag{{"t_end", traj.last_time()},
            {"max_newton_iters", traj.max_newton_iters},
            {"lq_exponent", 2.0 * (cfg.p - 1.0)},
            {"lq_norm", lq_tail(traj, 2.0 * (cfg.p - 1.0)).front()},
            {"snapshots_written", cfg.observables ? times.size() : 0}};
  if (traj.completed() && !datum.is_zero()) {
    try {
      const DecayFit f = fit_decay(traj);
      diag["decay"] = {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"t_from", f.t_from}, {"t_to", f.t_to},
                       {"samples", f.samples}};
    } catch (const std::invalid_argument& e) {
      diag["decay"] = {{"skipped", e.what()}};
    }
  }
  json meta{{"tool", "pointnls"},
            {"version", POINTNLS_VERSION},
            {"created", utc_now()},
            {"config", config_json(cfg)},
            {"result", status_json(traj.status)},
            {"diagnostics", diag}};
  if (out.classification) {
    meta["classification"] = classification_json(*out.classification);
    const Verdict v = out.classification->verdict;
    const bool blow = std::holds_alternative<BlowUp>(traj.status);
    // whether the observed outcome matches a decided verdict; null when undecided
    json predicted = nullptr;
    if (v == Verdict::BlowUpExpected) predicted = blow;
    if (v == Verdict::GlobalScattersExpected) predicted = traj.completed();
    meta["result"]["predicted"] = predicted;
  }
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
  return out;
}

bool SweepRow::agrees() const {
  if (verdict == "GlobalScattersExpected") return outcome == "Completed";
  if (verdict == "BlowUpExpected") return outcome == "BlowUp";
  return false;
}

std::string row_key(const SweepConfig& cfg, const std::vector<double>& point) {
  std::string k;
  for (std::size_t i = 0; i < cfg.axes.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s=%.12g", i ? "_" : "", cfg.axes[i].name.c_str(), point[i]);
    k += buf;
  }
  return k;
}

SweepRow run_row(const SweepConfig& cfg, const std::vector<double>& point) {
  SweepRow row;
  row.coords = point;
  const RunConfig rc = cfg.at(point);
  try {
    const InitialDatum d = rc.datum.build(rc.p);
    row.mass = d.mass();
    row.energy = d.energy(rc.p);
    row.verdict = "n/a";
    if (rc.p > 3.0) {
      const auto c = classify(d, rc.p);
      row.me_product = c.me_product;
      row.eta0 = c.eta0;
      row.verdict = to_string(c.verdict);
    }
    const ChargeTrajectory t = solve_charge(d, solver_config(rc));
    row.outcome = status_name(t.status);
    row.t_end = t.last_time();
    if (const auto* b = std::get_if<BlowUp>(&t.status)) row.t_detect = b->t_detect;
    row.q_abs_initial = std::abs(t.q.front());
    row.q_abs_final = std::abs(t.q[t.last_index()]);
    row.q_abs_late_max = late_max(t);
    row.lq_norm = lq_tail(t, 2.0 * (rc.p - 1.0)).front();
  } catch (const std::exception& e) {
    row.outcome = "Error";
    row.error = e.what();
  }
  return row;
}

namespace {

std::string fingerprint(const SweepConfig& cfg) {
  const RunConfig& b = cfg.base;
  return b.datum.kind + "|" + fmt(b.p) + "|" + fmt(b.datum.amplitude) + "|" + fmt(b.datum.width) + "|" +
         fmt(b.datum.center) + "|" + fmt(b.datum.velocity) + "|" + fmt(b.datum.phase) + "|" + fmt(b.datum.dilation) +
         "|" + fmt(b.dt) + "|" + fmt(b.T) + "|" + fmt(b.blowup_amp) + "|" + fmt(b.newton_tol) + "|" +
         std::to_string(b.newton_max_iters);
}

json row_json(const SweepConfig& cfg, const SweepRow& r) {
  json coords = json::object();
  for (std::size_t i = 0; i < cfg.axes.size(); ++i) coords[cfg.axes[i].name] = r.coords[i];
  return {{"key", row_key(cfg, r.coords)},
          {"fingerprint", fingerprint(cfg)},
          {"coords", coords},
          {"mass", r.mass},
          {"energy", r.energy},
          {"me_product", r.me_product},
          {"eta0", r.eta0},
          {"verdict", r.verdict},
          {"outcome", r.outcome},
          {"t_end", r.t_end},
          {"t_detect", r.t_detect},
          {"q_abs_initial", r.q_abs_initial},
          {"q_abs_final", r.q_abs_final},
          {"q_abs_late_max", r.q_abs_late_max},
          {"lq_norm", r.lq_norm},
          {"error", r.error}};
}

std::optional<SweepRow> load_row(const SweepConfig& cfg, const std::vector<double>& point, const fs::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.at("key") != row_key(cfg, point) || j.at("fingerprint") != fingerprint(cfg)) return std::nullopt;
    SweepRow r;
    r.coords = point;
    r.mass = j.at("mass");
    r.energy = j.at("energy");
    r.me_product = j.at("me_product");
    r.eta0 = j.at("eta0");
    r.verdict = j.at("verdict");
    r.outcome = j.at("outcome");
    r.t_end = j.at("t_end");
    r.t_detect = j.at("t_detect");
    r.q_abs_initial = j.at("q_abs_initial");
    r.q_abs_final = j.at("q_abs_final");
    r.q_abs_late_max = j.at("q_abs_late_max");
    r.lq_norm = j.at("lq_norm");
    r.error = j.at("error");
    if (r.outcome == "Error") return std::nullopt;  // retry failed rows
    return r;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

}  // namespace

SweepSummary sweep(const SweepConfig& cfg, bool write) {
  cfg.validate();
  const auto points = cfg.points();
  SweepSummary s;
  s.rows.resize(points.size());
  fs::path dir;
  if (write) {
    dir = resolve_output(cfg.output.empty() ? cfg.name : cfg.output);
    make_dir(dir / "rows");
    s.directory = dir.string();
  }
  std::vector<char> resumed(points.size(), 0);
  std::mutex io;
  std::exception_ptr io_error;
  parallel_for(points.size(), cfg.parallelism, [&](std::size_t i) {
    const fs::path file = dir / "rows" / (row_key(cfg, points[i]) + ".json");
    if (write && cfg.resume) {
      if (auto r = load_row(cfg, points[i], file)) {
        s.rows[i] = *r;
        resumed[i] = 1;
        return;
      }
    }
    s.rows[i] = run_row(cfg, points[i]);
    if (write) {
      // write to a temporary name first so a killed sweep never leaves a truncated row
      const fs::path tmp = file.string() + ".tmp";
      try {
        write_text(tmp, row_json(cfg, s.rows[i]).dump(2) + "\n");
        fs::rename(tmp, file);
      } catch (...) {
        std::lock_guard<std::mutex> lock(io);
        if (!io_error) io_error = std::current_exception();
      }
    }
  });
  if (io_error) {
    try {
      std::rethrow_exception(io_error);
    } catch (const fs::filesystem_error& e) {
      throw IoError(e.what());
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    s.resumed += resumed[i];
    if (s.rows[i].decided()) {
      ++s.decided;
      s.agreeing += s.rows[i].agrees();
    }
  }
  if (write) {
    std::string csv;
    for (const auto& a : cfg.axes) csv += a.name + ",";
    csv +=
        "mass,energy,me_product,eta0,verdict,outcome,t_end,t_detect,q_abs_initial,q_abs_final,q_abs_late_max,"
        "lq_norm,decided,agrees\n";
    for (const auto& r : s.rows) {
      for (double c : r.coords) csv += fmt(c) + ",";
      csv += fmt(r.mass) + "," + fmt(r.energy) + "," + fmt(r.me_product) + "," + fmt(r.eta0) + "," + r.verdict + "," +
             r.outcome + "," + fmt(r.t_end) + "," + fmt(r.t_detect) + "," + fmt(r.q_abs_initial) + "," +
             fmt(r.q_abs_final) + "," + fmt(r.q_abs_late_max) + "," + fmt(r.lq_norm) + "," +
             (r.decided() ? "1" : "0") + "," + (r.agrees() ? "1" : "0") + "\n";
    }
    write_text(dir / "phase_diagram.csv", csv);
  }
  return s;
}

}  // namespace pointnls::io
