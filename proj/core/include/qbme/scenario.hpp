#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbme/bath.hpp"
#include "qbme/lindblad.hpp"
#include "qbme/moments.hpp"
#include "qbme/nambu.hpp"

namespace qbme {

struct ModeSpec {
  std::string name;
  double omega = 0.0;
  cplx chi{};
  bool operator==(const ModeSpec&) const = default;
};

struct CouplingSpec {
  std::size_t i = 0;
  std::size_t j = 1;
  cplx lambda{};
  cplx g{};
  bool operator==(const CouplingSpec&) const = default;
};

struct FrameSpec {
  Basis basis = Basis::bare;
  /// Rotate each mode at its own (bare or dressed) frequency.
  bool automatic = false;
  std::vector<double> frequencies;
  bool operator==(const FrameSpec&) const = default;
};

/// A numeric field addressed by a dotted path ("couplings.0.lambda.re").
/// Every path in linked_paths receives the same value.
struct SweepSpec {
  std::string path;
  std::vector<std::string> linked_paths;
  double from = 0.0;
  double to = 1.0;
  std::size_t points = 101;
  bool operator==(const SweepSpec&) const = default;
};

/// Which effective Hamiltonian the analysis commands extract.
struct AnalysisSpec {
  Basis basis = Basis::bare;
  std::vector<std::size_t> modes;      // empty: all modes not eliminated
  std::vector<std::size_t> eliminate;  // adiabatically eliminated modes
  bool recenter = false;
  bool operator==(const AnalysisSpec&) const = default;
};

enum class MasterEquation { local, global };

struct Scenario {
  std::string name;
  std::vector<ModeSpec> modes;
  std::vector<CouplingSpec> couplings;
  std::vector<BathSpec> baths;
  std::optional<FrameSpec> frame;
  std::optional<SweepSpec> sweep;
  MasterEquation master_equation = MasterEquation::global;
  std::optional<AnalysisSpec> analysis;
  bool neglect_lamb_shift = false;

  /// Indices in range, sweep paths numeric. Throws ScenarioError.
  void validate() const;
};

bool operator==(const BathSpec& a, const BathSpec& b);
bool operator==(const Scenario& a, const Scenario& b);

/// JSON text <-> Scenario. Complex numbers are {"re": x, "im": y}.
/// Parse failures throw ScenarioError.
Scenario parse_scenario(const std::string& json_text);
std::string serialize_scenario(const Scenario& s);
Scenario load_scenario(const std::string& path);

/// Copy of s with the numeric field at `path` set to value.
Scenario with_parameter(const Scenario& s, const std::string& path, double value);
/// Sets the sweep path and all linked paths.
Scenario with_sweep_value(const Scenario& s, double value);
double get_parameter(const Scenario& s, const std::string& path);

QuadraticSystem scenario_system(const Scenario& s);

/// Model from the scenario's master equation (or `me` if given), frame attached.
/// The global master equation uses the degenerate-aware builder.
LindbladModel build_model(const Scenario& s, std::optional<MasterEquation> me = std::nullopt);

/// Analysis Hamiltonian per the scenario's analysis section.
EffectiveHamiltonian analysis_hamiltonian(const Scenario& s, std::optional<MasterEquation> me = std::nullopt);

std::string to_string(MasterEquation me);
std::string to_string(Basis b);

/// Named scenarios reproducing the worked examples.
std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

}  // namespace qbme
