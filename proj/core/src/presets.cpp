#include "qbme/scenario.hpp"

#include <functional>
#include <map>

#include "qbme/errors.hpp"

namespace qbme {

namespace {

// Chemical potential far above every mode: a zero-temperature fermi bath
// that only pumps (incoherent gain).
constexpr double kPumpChemicalPotential = 100.0;

BathSpec loss(std::size_t mode, double rate) {
  BathSpec b;
  b.mode = mode;
  b.spectral_density = FlatDensity{rate};
  return b;
}

BathSpec gain(std::size_t mode, double rate) {
  BathSpec b = loss(mode, rate);
  b.statistics = Statistics::fermi;
  b.chemical_potential = kPumpChemicalPotential;
  return b;
}

Scenario eq1_textbook() {
  Scenario s;
  s.name = "eq1_textbook";
  s.modes = {{"a1", 1.0, {}}, {"a2", 1.0, {}}};
  s.couplings = {{0, 1, 0.2, {}}};
  s.baths = {loss(0, 0.1), gain(1, 0.1)};
  s.master_equation = MasterEquation::local;
  s.sweep = SweepSpec{"couplings.0.lambda.re", {}, 0.0, 0.2, 201};
  return s;
}

Scenario eq37_beamsplitter() {
  Scenario s;
  s.name = "eq37_beamsplitter";
  s.modes = {{"a1", 5.0, {}}, {"a2", 5.0, {}}};
  s.couplings = {{0, 1, 1.0, {}}};
  s.baths = {loss(0, 0.1), gain(1, 0.1)};
  s.master_equation = MasterEquation::global;
  s.analysis = AnalysisSpec{Basis::bare, {0, 1}, {}, false};
  s.sweep = SweepSpec{"couplings.0.lambda.re", {}, 0.05, 4.5, 90};
  return s;
}

Scenario eq44_pairing() {
  Scenario s;
  s.name = "eq44_pairing";
  s.modes = {{"a1", 5.0, {}}, {"a2", 5.0, {}}};
  s.couplings = {{0, 1, {}, 3.0}};
  s.baths = {loss(0, 0.1), gain(1, 0.1)};
  s.master_equation = MasterEquation::global;
  s.frame = FrameSpec{Basis::dressed, true, {}};
  s.analysis = AnalysisSpec{Basis::dressed, {0, 1}, {}, false};
  s.sweep = SweepSpec{"couplings.0.g.re", {}, 0.05, 4.5, 90};
  return s;
}

Scenario eq49_detuned() {
  Scenario s;
  s.name = "eq49_detuned";
  s.modes = {{"a1", 6.0, {}}, {"a2", 4.0, {}}};
  s.couplings = {{0, 1, 0.1, {}}};
  s.baths = {loss(0, 0.05), loss(1, 0.05)};
  s.master_equation = MasterEquation::global;
  s.sweep = SweepSpec{"couplings.0.lambda.re", {}, 0.01, 0.5, 50};
  return s;
}

Scenario eq60_three_mode() {
  Scenario s;
  s.name = "eq60_three_mode";
  s.modes = {{"a1", 120.0, {}}, {"a2", 119.0, {}}, {"a3", 100.0, {}}};
  s.couplings = {{0, 2, 1.0, {}}, {1, 2, 1.0, {}}};
  s.baths = {loss(0, 200.0), loss(1, 200.0), loss(2, 2e4)};
  s.master_equation = MasterEquation::global;
  s.frame = FrameSpec{Basis::bare, false, {100.0, 100.0, 100.0}};
  s.analysis = AnalysisSpec{Basis::bare, {0, 1}, {2}, true};
  s.sweep = SweepSpec{"modes.1.omega", {}, 118.0, 120.0, 201};
  return s;
}

Scenario eq71_exact_regime() {
  Scenario s;
  s.name = "eq71_exact_regime";
  s.modes = {{"a1", 102.0, {}}, {"a2", 98.0, {}}, {"a3", 100.0, {}}};
  s.couplings = {{0, 2, 1.0, {}}, {1, 2, 1.0, {}}};
  s.baths = {loss(0, 80.0), loss(1, 80.0), loss(2, 100.0)};
  s.master_equation = MasterEquation::global;
  s.frame = FrameSpec{Basis::bare, false, {100.0, 100.0, 100.0}};
  s.analysis = AnalysisSpec{Basis::bare, {0, 1}, {2}, false};
  s.sweep = SweepSpec{"baths.0.spectral_density.value", {"baths.1.spectral_density.value"}, 50.0, 150.0, 201};
  return s;
}

const std::map<std::string, std::function<Scenario()>>& registry() {
  static const std::map<std::string, std::function<Scenario()>> r{
      {"eq1_textbook", eq1_textbook},       {"eq37_beamsplitter", eq37_beamsplitter},
      {"eq44_pairing", eq44_pairing},       {"eq49_detuned", eq49_detuned},
      {"eq60_three_mode", eq60_three_mode}, {"eq71_exact_regime", eq71_exact_regime}};
  return r;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

Scenario preset(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ScenarioError("unknown preset '" + name + "'");
  return it->second();
}

}  // namespace qbme
