#include "cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbme/bath.hpp"
#include "qbme/ep_analysis.hpp"
#include "qbme/errors.hpp"
#include "qbme/fock_oracle.hpp"
#include "qbme/lindblad.hpp"
#include "qbme/moments.hpp"
#include "qbme/nambu.hpp"
#include "qbme/reduction.hpp"
#include "qbme/scenario.hpp"

namespace qbme::cli {

namespace {

using nlohmann::json;

// Adding 0.0 folds negative zero into zero.
double unsigned_zero(double x) { return x + 0.0; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", unsigned_zero(x));
  return buf;
}

// RFC 4180: quote fields containing separators, quotes or line breaks.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

class CsvWriter {
public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << csv_field(fields[i]);
    os_ << "\r\n";
  }

private:
  std::ostream& os_;
};

json matrix_json(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ii = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(unsigned_zero(m(r, c).real()));
      ii.push_back(unsigned_zero(m(r, c).imag()));
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Scenario resolve_scenario(const std::string& ref) {
  const std::string prefix = "preset:";
  if (ref.rfind(prefix, 0) == 0) return preset(ref.substr(prefix.size()));
  return load_scenario(ref);
}

std::optional<MasterEquation> parse_me(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "local") return MasterEquation::local;
  if (s == "global") return MasterEquation::global;
  throw ScenarioError("--me must be local or global");
}

Basis parse_basis(const std::string& s) {
  if (s == "bare") return Basis::bare;
  if (s == "dressed") return Basis::dressed;
  throw ScenarioError("--basis must be bare or dressed");
}

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoul(tok));
    } catch (const std::exception&) {
      throw ScenarioError("bad mode index '" + tok + "'");
    }
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ScenarioError("--range must be FROM,TO");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ScenarioError("--range must be FROM,TO");
  }
}

void write_matrix_csv(CsvWriter& csv, const CMatrix& m, const CVector& eig) {
  csv.row({"kind", "row", "col", "re", "im"});
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      csv.row({"entry", std::to_string(r), std::to_string(c), fmt(m(r, c).real()), fmt(m(r, c).imag())});
  for (Eigen::Index k = 0; k < eig.size(); ++k)
    csv.row({"eigenvalue", std::to_string(k), "", fmt(eig(k).real()), fmt(eig(k).imag())});
}

CVector sorted_eigenvalues(const CMatrix& m) {
  return spectrum(effective_hamiltonian(m)).eigenvalues;
}

struct Options {
  std::string scenario;
  std::string output;
  std::string me;
  std::string basis = "bare";
  std::string fast;
  std::string modes;
  std::string param;
  std::string range;
  std::string report;
  std::size_t points = 0;
  bool recenter = false;
  std::size_t cutoff = 0;
  double t = 0.0;
  double dt = 0.0;
  double amplitude = 0.1;
  std::string preset_name;
};

int cmd_diagonalize(const Options& o, std::ostream& out) {
  const Scenario s = resolve_scenario(o.scenario);
  const BogoliubovTransform bt = diagonalize(scenario_system(s));
  json j;
  j["scenario"] = s.name;
  j["stable"] = true;
  j["dressed_freq"] = std::vector<double>(bt.dressed_freq.data(), bt.dressed_freq.data() + bt.dressed_freq.size());
  j["ground_shift"] = bt.ground_shift;
  j["t"] = matrix_json(bt.t);
  j["t_inv"] = matrix_json(bt.t_inv);
  out << dump(j);
  return kOk;
}

int cmd_drift(const Options& o, std::ostream& out) {
  const Scenario s = resolve_scenario(o.scenario);
  LindbladModel m = build_model(s, parse_me(o.me));
  const Basis b = parse_basis(o.basis);
  if (b == Basis::dressed && !m.transform) m.transform = diagonalize(m.hamiltonian);
  const DriftMatrix d = drift(m, b);
  CsvWriter csv(out);
  Eigen::ComplexEigenSolver<CMatrix> es(d.m, false);
  CVector eig = es.eigenvalues();
  std::sort(eig.data(), eig.data() + eig.size(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  write_matrix_csv(csv, d.m, eig);
  return kOk;
}

int cmd_eliminate(const Options& o, std::ostream& out, std::ostream& err) {
  const Scenario s = resolve_scenario(o.scenario);
  LindbladModel m = build_model(s, parse_me(o.me));
  const Basis b = s.analysis ? s.analysis->basis : parse_basis(o.basis);
  if (b == Basis::dressed && !m.transform) m.transform = diagonalize(m.hamiltonian);
  const DriftMatrix d = drift(m, b);
  std::vector<std::size_t> fast = parse_indices(o.fast);
  if (fast.empty() && s.analysis) fast = s.analysis->eliminate;
  EliminationDiagnostics diag;
  EffectiveHamiltonian h = eliminate(d, fast, &diag);
  if (o.recenter || (s.analysis && s.analysis->recenter)) h = recenter(h);
  if (diag.timescale_warning)
    err << "warning: weak timescale separation (fast rate " << fmt(diag.fast_rate) << " < 10 x slow scale "
        << fmt(diag.slow_scale) << ")\n";
  CsvWriter csv(out);
  write_matrix_csv(csv, h.h, sorted_eigenvalues(h.h));
  return kOk;
}

int cmd_ep_scan(const Options& o, std::ostream& out, std::ostream& err) {
  Scenario s = resolve_scenario(o.scenario);
  SweepSpec sweep = s.sweep.value_or(SweepSpec{});
  if (!o.param.empty()) {
    sweep.path = o.param;
    sweep.linked_paths.clear();
  }
  if (!o.range.empty()) std::tie(sweep.from, sweep.to) = parse_range(o.range);
  if (o.points) sweep.points = o.points;
  if (sweep.path.empty()) throw ScenarioError("no sweep parameter: give --param or a sweep section");
  if (!o.fast.empty() || o.recenter || !o.modes.empty()) {
    AnalysisSpec an = s.analysis.value_or(AnalysisSpec{s.frame ? s.frame->basis : Basis::bare, {}, {}, false});
    if (!o.fast.empty()) an.eliminate = parse_indices(o.fast);
    if (!o.modes.empty()) an.modes = parse_indices(o.modes);
    if (o.recenter) an.recenter = true;
    s.analysis = an;
  }
  s.sweep = sweep;
  s.validate();
  const auto me = parse_me(o.me);
  const Family family = [&](double p) { return analysis_hamiltonian(with_sweep_value(s, p), me); };
  const ScanResult r = ep_scan(family, sweep.from, sweep.to, sweep.points);

  CsvWriter csv(out);
  const auto n = r.points.empty() ? 0 : r.points.front().eigenvalues.size();
  std::vector<std::string> header{"param"};
  for (Eigen::Index k = 0; k < n; ++k) {
    header.push_back("eig" + std::to_string(k) + "_re");
    header.push_back("eig" + std::to_string(k) + "_im");
  }
  for (const char* c : {"min_gap", "coalescence", "class"}) header.emplace_back(c);
  csv.row(header);
  for (const auto& p : r.points) {
    std::vector<std::string> row{fmt(p.param_value)};
    for (Eigen::Index k = 0; k < p.eigenvalues.size(); ++k) {
      row.push_back(fmt(p.eigenvalues(k).real()));
      row.push_back(fmt(p.eigenvalues(k).imag()));
    }
    row.push_back(fmt(p.min_gap));
    row.push_back(fmt(p.coalescence));
    row.push_back(to_string(p.classification));
    csv.row(row);
  }

  json rep;
  rep["scenario"] = s.name;
  rep["param"] = sweep.path;
  rep["linked_params"] = sweep.linked_paths;
  rep["range"] = {sweep.from, sweep.to};
  rep["points"] = sweep.points;
  rep["eps"] = json::array();
  for (const auto& e : r.eps)
    rep["eps"].push_back({{"location", e.location},
                          {"refined", e.refined},
                          {"discriminant_residual", e.discriminant_residual},
                          {"coalescence", e.coalescence},
                          {"symmetry_side_low", to_string(e.symmetry_side_low)},
                          {"symmetry_side_high", to_string(e.symmetry_side_high)}});
  if (!o.report.empty()) {
    std::ofstream f(o.report);
    if (!f) throw ScenarioError("cannot write report '" + o.report + "'");
    f << dump(rep);
  } else {
    err << dump(rep);
  }
  return kOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const Scenario s = resolve_scenario(o.scenario);
  const LindbladModel m = build_model(s, parse_me(o.me));
  const std::size_t n = m.n_modes();
  const std::size_t cutoff = o.cutoff ? o.cutoff : default_cutoff(n);
  std::vector<std::size_t> cutoffs(n, cutoff);
  const double rate = m.max_rate();
  const double horizon = o.t > 0.0 ? o.t : (rate > 0.0 ? 5.0 / rate : 1.0);
  const FockRep probe(m, cutoffs);
  const double dt = o.dt > 0.0 ? o.dt : std::min(0.1 * probe.max_step(), horizon / 20.0);
  std::vector<cplx> alpha(n, cplx{o.amplitude, 0.0});
  const OracleComparison c = compare_with_drift(m, cutoffs, alpha, horizon, dt);
  json j{{"scenario", s.name},
         {"cutoffs", cutoffs},
         {"horizon", c.horizon},
         {"dt", c.dt},
         {"max_deviation", c.max_deviation},
         {"max_leakage", c.max_leakage},
         {"trace_drift", c.trace_drift},
         {"min_eigenvalue", c.min_eigenvalue},
         {"tolerance", kOracleTolerance},
         {"pass", c.max_deviation <= kOracleTolerance}};
  out << dump(j);
  return c.max_deviation <= kOracleTolerance ? kOk : kOracleDeviation;
}

int cmd_preset(const Options& o, std::ostream& out) {
  if (o.preset_name.empty()) {
    for (const auto& n : preset_names()) out << n << "\n";
    return kOk;
  }
  out << serialize_scenario(preset(o.preset_name));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic bosonic master equations: drift, elimination and exceptional points"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", o.scenario, "Scenario JSON file or preset:<name>")->required();
    sub->add_option("-o,--output", o.output, "Write the result here instead of stdout");
  };
  auto* diag = app.add_subcommand("diagonalize", "Dressed frequencies and canonical transform (JSON)");
  add_common(diag);

  auto* drift_cmd = app.add_subcommand("drift", "First-moment drift matrix (CSV)");
  add_common(drift_cmd);
  drift_cmd->add_option("--me", o.me, "Master equation: local or global");
  drift_cmd->add_option("--basis", o.basis, "Basis: bare or dressed");

  auto* elim = app.add_subcommand("eliminate", "Adiabatic elimination to an effective Hamiltonian (CSV)");
  add_common(elim);
  elim->add_option("--me", o.me, "Master equation: local or global");
  elim->add_option("--basis", o.basis, "Basis: bare or dressed");
  elim->add_option("--fast,--eliminate", o.fast, "Comma-separated fast modes");
  elim->add_flag("--recenter", o.recenter, "Remove the real part of the mean eigenvalue");

  auto* scan = app.add_subcommand("ep-scan", "Exceptional-point scan (CSV, JSON report)");
  add_common(scan);
  scan->add_option("--me", o.me, "Master equation: local or global");
  scan->add_option("--eliminate,--fast", o.fast, "Comma-separated fast modes");
  scan->add_option("--modes", o.modes, "Comma-separated retained modes");
  scan->add_option("--param", o.param, "Dotted path of the swept parameter");
  scan->add_option("--range", o.range, "FROM,TO");
  scan->add_option("--points", o.points, "Number of scan points");
  scan->add_option("--report", o.report, "Write the EP report JSON here (default: stderr)");
  scan->add_flag("--recenter", o.recenter, "Remove the real part of the mean eigenvalue");

  auto* orc = app.add_subcommand("oracle", "Compare drift propagation with the truncated-Fock oracle (JSON)");
  add_common(orc);
  orc->add_option("--me", o.me, "Master equation: local or global");
  orc->add_option("--cutoff", o.cutoff, "Fock cutoff per mode");
  orc->add_option("--t", o.t, "Horizon (default 5 / max rate)");
  orc->add_option("--dt", o.dt, "RK4 step");
  orc->add_option("--amplitude", o.amplitude, "Coherent amplitude per mode");

  auto* pre = app.add_subcommand("preset", "List presets or print one as JSON");
  pre->add_option("name", o.preset_name, "Preset name");
  pre->add_option("-o,--output", o.output, "Write the result here instead of stdout");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open output '" << o.output << "'\n";
      return kFailure;
    }
  }
  std::ostream& dest = o.output.empty() ? out : file;

  try {
    if (diag->parsed()) return cmd_diagonalize(o, dest);
    if (drift_cmd->parsed()) return cmd_drift(o, dest);
    if (elim->parsed()) return cmd_eliminate(o, dest, err);
    if (scan->parsed()) return cmd_ep_scan(o, dest, err);
    if (orc->parsed()) return cmd_oracle(o, dest);
    if (pre->parsed()) return cmd_preset(o, dest);
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const InstabilityError& e) {
    err << "unstable: " << e.what() << "\n";
    return kUnstable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace qbme::cli
