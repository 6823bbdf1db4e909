#include "qbme/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qbme/errors.hpp"
#include "qbme/reduction.hpp"

namespace qbme {

using nlohmann::json;

namespace {

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

Basis basis_from(const std::string& s) {
  if (s == "bare") return Basis::bare;
  if (s == "dressed") return Basis::dressed;
  throw ScenarioError("unknown basis '" + s + "'");
}

MasterEquation me_from(const std::string& s) {
  if (s == "local") return MasterEquation::local;
  if (s == "global") return MasterEquation::global;
  throw ScenarioError("unknown master equation '" + s + "'");
}

json bath_to_json(const BathSpec& b) {
  json sd;
  if (const auto* f = std::get_if<FlatDensity>(&b.spectral_density)) {
    sd = {{"type", "flat"}, {"value", f->value}};
  } else {
    const auto& o = std::get<OhmicDensity>(b.spectral_density);
    sd = {{"type", "ohmic"}, {"alpha", o.alpha}, {"cutoff", o.cutoff}};
  }
  return {{"mode", b.mode},
          {"statistics", b.statistics == Statistics::bose ? "bose" : "fermi"},
          {"temperature", b.temperature},
          {"chemical_potential", b.chemical_potential},
          {"spectral_density", sd}};
}

BathSpec bath_from(const json& j) {
  BathSpec b;
  b.mode = j.at("mode").get<std::size_t>();
  const std::string st = j.value("statistics", "bose");
  if (st == "bose") b.statistics = Statistics::bose;
  else if (st == "fermi") b.statistics = Statistics::fermi;
  else throw ScenarioError("unknown statistics '" + st + "'");
  b.temperature = j.value("temperature", 0.0);
  b.chemical_potential = j.value("chemical_potential", 0.0);
  const json& sd = j.at("spectral_density");
  const std::string type = sd.value("type", "flat");
  if (type == "flat") b.spectral_density = FlatDensity{sd.at("value").get<double>()};
  else if (type == "ohmic") b.spectral_density = OhmicDensity{sd.at("alpha").get<double>(), sd.at("cutoff").get<double>()};
  else throw ScenarioError("unknown spectral density type '" + type + "'");
  return b;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["master_equation"] = to_string(s.master_equation);
  j["neglect_lamb_shift"] = s.neglect_lamb_shift;
  j["modes"] = json::array();
  for (const auto& m : s.modes) j["modes"].push_back({{"name", m.name}, {"omega", m.omega}, {"chi", to_json(m.chi)}});
  j["couplings"] = json::array();
  for (const auto& c : s.couplings)
    j["couplings"].push_back({{"i", c.i}, {"j", c.j}, {"lambda", to_json(c.lambda)}, {"g", to_json(c.g)}});
  j["baths"] = json::array();
  for (const auto& b : s.baths) j["baths"].push_back(bath_to_json(b));
  if (s.frame) {
    json f{{"basis", to_string(s.frame->basis)}};
    if (s.frame->automatic) f["frequencies"] = "auto";
    else f["frequencies"] = s.frame->frequencies;
    j["frame"] = f;
  }
  if (s.sweep)
    j["sweep"] = {{"path", s.sweep->path},   {"linked_paths", s.sweep->linked_paths}, {"from", s.sweep->from},
                  {"to", s.sweep->to},       {"points", s.sweep->points}};
  if (s.analysis)
    j["analysis"] = {{"basis", to_string(s.analysis->basis)},
                     {"modes", s.analysis->modes},
                     {"eliminate", s.analysis->eliminate},
                     {"recenter", s.analysis->recenter}};
  return j;
}

Scenario scenario_from(const json& j) {
  Scenario s;
  s.name = j.value("name", "");
  s.master_equation = me_from(j.value("master_equation", "global"));
  s.neglect_lamb_shift = j.value("neglect_lamb_shift", false);
  for (const auto& m : j.at("modes"))
    s.modes.push_back({m.value("name", ""), m.at("omega").get<double>(), m.contains("chi") ? complex_from(m["chi"]) : cplx{}});
  if (j.contains("couplings"))
    for (const auto& c : j["couplings"])
      s.couplings.push_back({c.at("i").get<std::size_t>(), c.at("j").get<std::size_t>(),
                             c.contains("lambda") ? complex_from(c["lambda"]) : cplx{},
                             c.contains("g") ? complex_from(c["g"]) : cplx{}});
  if (j.contains("baths"))
    for (const auto& b : j["baths"]) s.baths.push_back(bath_from(b));
  if (j.contains("frame") && !j["frame"].is_null()) {
    const json& f = j["frame"];
    FrameSpec fr;
    fr.basis = basis_from(f.value("basis", "bare"));
    const json& freq = f.at("frequencies");
    if (freq.is_string()) {
      if (freq.get<std::string>() != "auto") throw ScenarioError("frame frequencies must be a list or \"auto\"");
      fr.automatic = true;
    } else {
      fr.frequencies = freq.get<std::vector<double>>();
    }
    s.frame = fr;
  }
  if (j.contains("sweep") && !j["sweep"].is_null()) {
    const json& w = j["sweep"];
    SweepSpec sw;
    sw.path = w.at("path").get<std::string>();
    sw.linked_paths = w.value("linked_paths", std::vector<std::string>{});
    sw.from = w.at("from").get<double>();
    sw.to = w.at("to").get<double>();
    sw.points = w.value("points", std::size_t{101});
    s.sweep = sw;
  }
  if (j.contains("analysis") && !j["analysis"].is_null()) {
    const json& a = j["analysis"];
    AnalysisSpec an;
    an.basis = basis_from(a.value("basis", "bare"));
    an.modes = a.value("modes", std::vector<std::size_t>{});
    an.eliminate = a.value("eliminate", std::vector<std::size_t>{});
    an.recenter = a.value("recenter", false);
    s.analysis = an;
  }
  return s;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ScenarioError("empty parameter path");
  return parts;
}

json* resolve(json& root, const std::string& path) {
  json* node = &root;
  for (const auto& part : split_path(path)) {
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
      } catch (const std::exception&) {
        throw ScenarioError("path '" + path + "': '" + part + "' is not an array index");
      }
      if (idx >= node->size()) throw ScenarioError("path '" + path + "': index " + part + " out of range");
      node = &(*node)[idx];
    } else if (node->is_object()) {
      if (!node->contains(part)) throw ScenarioError("path '" + path + "': no field '" + part + "'");
      node = &(*node)[part];
    } else {
      throw ScenarioError("path '" + path + "' descends into a scalar");
    }
  }
  if (!node->is_number()) throw ScenarioError("path '" + path + "' does not name a numeric field");
  return node;
}

}  // namespace

std::string to_string(MasterEquation me) { return me == MasterEquation::local ? "local" : "global"; }
std::string to_string(Basis b) { return b == Basis::bare ? "bare" : "dressed"; }

bool operator==(const BathSpec& a, const BathSpec& b) {
  if (a.mode != b.mode || a.statistics != b.statistics || a.temperature != b.temperature ||
      a.chemical_potential != b.chemical_potential || a.spectral_density.index() != b.spectral_density.index())
    return false;
  if (const auto* fa = std::get_if<FlatDensity>(&a.spectral_density))
    return fa->value == std::get<FlatDensity>(b.spectral_density).value;
  const auto& oa = std::get<OhmicDensity>(a.spectral_density);
  const auto& ob = std::get<OhmicDensity>(b.spectral_density);
  return oa.alpha == ob.alpha && oa.cutoff == ob.cutoff;
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.modes == b.modes && a.couplings == b.couplings && a.baths == b.baths &&
         a.frame == b.frame && a.sweep == b.sweep && a.master_equation == b.master_equation &&
         a.analysis == b.analysis && a.neglect_lamb_shift == b.neglect_lamb_shift;
}

void Scenario::validate() const {
  const std::size_t n = modes.size();
  if (n == 0) throw ScenarioError("scenario has no modes");
  for (const auto& c : couplings)
    if (c.i >= n || c.j >= n || c.i == c.j) throw ScenarioError("coupling indices out of range or equal");
  for (const auto& b : baths)
    if (b.mode >= n) throw ScenarioError("bath mode index out of range");
  if (frame && !frame->automatic && frame->frequencies.size() != n)
    throw ScenarioError("frame needs one frequency per mode");
  if (analysis) {
    for (std::size_t k : analysis->modes)
      if (k >= n) throw ScenarioError("analysis mode index out of range");
    for (std::size_t k : analysis->eliminate)
      if (k >= n) throw ScenarioError("eliminated mode index out of range");
  }
  if (sweep) {
    if (sweep->points < 3) throw ScenarioError("sweep needs at least 3 points");
    if (!(sweep->to > sweep->from)) throw ScenarioError("sweep needs from < to");
    json j = scenario_to_json(*this);
    resolve(j, sweep->path);
    for (const auto& p : sweep->linked_paths) resolve(j, p);
  }
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  try {
    s = scenario_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }
  s.validate();
  return s;
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

Scenario with_parameter(const Scenario& s, const std::string& path, double value) {
  json j = scenario_to_json(s);
  *resolve(j, path) = value;
  return scenario_from(j);
}

Scenario with_sweep_value(const Scenario& s, double value) {
  if (!s.sweep) throw ScenarioError("scenario has no sweep section");
  json j = scenario_to_json(s);
  *resolve(j, s.sweep->path) = value;
  for (const auto& p : s.sweep->linked_paths) *resolve(j, p) = value;
  return scenario_from(j);
}

double get_parameter(const Scenario& s, const std::string& path) {
  json j = scenario_to_json(s);
  return resolve(j, path)->get<double>();
}

QuadraticSystem scenario_system(const Scenario& s) {
  s.validate();
  std::vector<double> omega;
  for (const auto& m : s.modes) omega.push_back(m.omega);
  QuadraticSystem sys = QuadraticSystem::uncoupled(omega);
  for (std::size_t k = 0; k < s.modes.size(); ++k) sys.chi[k] = s.modes[k].chi;
  for (const auto& c : s.couplings) sys.couple(c.i, c.j, c.lambda, c.g);
  return sys;
}

LindbladModel build_model(const Scenario& s, std::optional<MasterEquation> me) {
  const QuadraticSystem sys = scenario_system(s);
  const BuildOptions opts{s.neglect_lamb_shift};
  LindbladModel m = me.value_or(s.master_equation) == MasterEquation::local
                        ? build_local(sys, s.baths, opts)
                        : build_global_degenerate(sys, s.baths, opts);
  if (s.frame) {
    Frame f{s.frame->basis, s.frame->frequencies};
    if (s.frame->basis == Basis::dressed && !m.transform) m.transform = diagonalize(sys);
    if (s.frame->automatic) {
      f.frequencies.clear();
      if (s.frame->basis == Basis::bare) f.frequencies = sys.omega;
      else
        for (Eigen::Index k = 0; k < m.transform->dressed_freq.size(); ++k)
          f.frequencies.push_back(m.transform->dressed_freq(k));
    }
    m.frame = std::move(f);
  }
  return m;
}

EffectiveHamiltonian analysis_hamiltonian(const Scenario& s, std::optional<MasterEquation> me) {
  LindbladModel m = build_model(s, me);
  AnalysisSpec an;
  if (s.analysis) an = *s.analysis;
  else if (s.frame) an.basis = s.frame->basis;
  if (an.basis == Basis::dressed && !m.transform) m.transform = diagonalize(m.hamiltonian);
  const DriftMatrix d = drift(m, an.basis);

  const std::size_t n = s.modes.size();
  const DriftMatrix reduced = an.eliminate.empty() ? d : reduced_drift(d, an.eliminate);
  std::vector<std::size_t> labels;  // original indices of the reduced modes
  for (std::size_t k = 0; k < n; ++k)
    if (std::find(an.eliminate.begin(), an.eliminate.end(), k) == an.eliminate.end()) labels.push_back(k);
  std::vector<std::size_t> keep;
  if (an.modes.empty()) {
    for (std::size_t k = 0; k < labels.size(); ++k) keep.push_back(k);
  } else {
    for (std::size_t k : an.modes) {
      const auto it = std::find(labels.begin(), labels.end(), k);
      if (it == labels.end()) throw ScenarioError("analysis mode " + std::to_string(k) + " is eliminated");
      keep.push_back(static_cast<std::size_t>(it - labels.begin()));
    }
  }
  EffectiveHamiltonian h = effective_hamiltonian(reduced, keep);
  for (auto& l : h.mode_labels) l = labels[l];
  return an.recenter ? recenter(h) : h;
}

}  // namespace qbme
