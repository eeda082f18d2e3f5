#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>

#include "fourflow/dynamics.hpp"
#include "fourflow/em_field.hpp"
#include "fourflow/hamiltonian.hpp"
#include "fourflow/quantum.hpp"
#include "fourflow/scenario.hpp"

namespace fourflow {

// Builders mapping validated scenario specs onto core objects. Shared by the
// dispatcher and by tests that assemble runs directly.
Potential build_potential3(const PotentialSpec& spec);
Potential1D build_potential1(const PotentialSpec& spec);
GaugePotential build_gauge(const FieldSpec& spec);
FieldConfig build_field(const FieldSpec& spec);
std::unique_ptr<HamiltonianModel> build_model(const Scenario& sc);

// Summary of one completed run. The physical parameters are echoed so the
// report is self-describing.
struct RunReport {
  RunMode mode = RunMode::canonical4d;
  std::string model_id;
  double m = 1.0;
  double e = 1.0;
  double c = 1.0;
  double hbar = 1.0;
  double dt = 0.0;
  long steps = 0;
  std::string output_path;

  // trajectory modes
  std::optional<double> max_constraint;  // max |constraint residual| over samples
  std::optional<double> final_energy;
  std::optional<DeviationReport> deviation;  // compare mode only

  // quantum mode
  std::optional<std::complex<double>> commutator;  // of the initial packet
  std::optional<EhrenfestReport> ehrenfest;
  std::optional<double> norm_drift;  // |norm(end) - norm(start)|

  double wall_seconds = 0.0;
};

// Runs a validated scenario and writes its CSV output file. Throws IoError
// when the output cannot be written, DomainError or NumericalError when the
// run itself fails.
RunReport run_scenario(const Scenario& sc);

// "key = value" lines in a fixed order; floats in shortest round-trip form.
std::string format_report(const RunReport& report);

}  // namespace fourflow
