#include "fourflow/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <utility>
#include <vector>

#include "csv_format.hpp"
#include "fourflow/errors.hpp"

namespace fourflow {

Potential build_potential3(const PotentialSpec& spec) {
  if (spec.type == "none") return Potential::none();
  if (spec.type == "uniform") return Potential::uniform(spec.v0);
  if (spec.type == "linear") return Potential::linear(spec.g);
  if (spec.type == "harmonic") return Potential::harmonic(spec.k, spec.center);
  if (spec.type == "driven_linear") return Potential::driven_linear(spec.f, spec.omega);
  throw DomainError("build_potential3: unknown potential type '" + spec.type + "'");
}

Potential1D build_potential1(const PotentialSpec& spec) {
  if (spec.type == "none") return Potential1D::none();
  if (spec.type == "uniform") return Potential1D::uniform(spec.v0);
  if (spec.type == "linear") return Potential1D::linear(spec.g1);
  if (spec.type == "harmonic") return Potential1D::harmonic(spec.k, spec.center1);
  if (spec.type == "driven_linear") return Potential1D::driven_linear(spec.f0, spec.omega);
  throw DomainError("build_potential1: unknown potential type '" + spec.type + "'");
}

GaugePotential build_gauge(const FieldSpec& spec) {
  if (spec.type == "uniform_E") return GaugePotential::for_uniform_E(spec.E);
  if (spec.type == "uniform_B") return GaugePotential::for_uniform_B(spec.B);
  if (spec.type == "crossed") return GaugePotential::for_crossed(spec.E, spec.B);
  if (spec.type == "ramp_E") return GaugePotential::for_ramp_E(spec.E);
  throw DomainError("build_gauge: unknown field type '" + spec.type + "'");
}

FieldConfig build_field(const FieldSpec& spec) {
  if (spec.type == "uniform_E") return FieldConfig::uniform_E(spec.E);
  if (spec.type == "uniform_B") return FieldConfig::uniform_B(spec.B);
  if (spec.type == "crossed") return FieldConfig::crossed(spec.E, spec.B);
  if (spec.type == "ramp_E") return FieldConfig::ramp_E(spec.E);
  throw DomainError("build_field: unknown field type '" + spec.type + "'");
}

std::unique_ptr<HamiltonianModel> build_model(const Scenario& sc) {
  const ModelSpec& m = sc.model;
  if (m.type == "free_nonrel" || m.type == "relativistic") {
    Potential pot = sc.potential ? build_potential3(*sc.potential) : Potential::none();
    if (m.type == "free_nonrel") return make_free_nonrel(m.m, std::move(pot));
    return make_relativistic(m.m, m.c, std::move(pot));
  }
  if (m.type == "charged_canonical") {
    if (!sc.field) throw DomainError("build_model: charged_canonical requires a field");
    return make_charged_canonical(m.m, m.c, m.e, build_gauge(*sc.field));
  }
  if (m.type == "optics_ray") {
    if (!sc.index) throw DomainError("build_model: optics_ray requires an index");
    const IndexSpec& ix = *sc.index;
    if (ix.type == "uniform") return make_optics_ray(m.c, IndexField::uniform(ix.n0));
    if (ix.type == "linear_gradient")
      return make_optics_ray(m.c, IndexField::linear_gradient(ix.n0, ix.alpha));
    throw DomainError("build_model: unknown index type '" + ix.type + "'");
  }
  throw DomainError("build_model: unknown model type '" + m.type + "'");
}

namespace {

double max_abs_constraint(const Trajectory& traj) {
  double m = 0.0;
  for (const Sample& s : traj.samples) m = std::max(m, std::abs(s.diag.constraint));
  return m;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file '" + path + "'");
  writer(os);
  os.flush();
  if (!os) throw IoError("failed writing output file '" + path + "'");
}

RunReport base_report(const Scenario& sc, std::string model_id) {
  RunReport rep;
  rep.mode = sc.mode;
  rep.model_id = std::move(model_id);
  rep.m = sc.model.m;
  rep.e = sc.model.e;
  rep.c = sc.model.c;
  rep.hbar = sc.model.hbar;
  rep.dt = sc.dt;
  rep.steps = sc.steps;
  rep.output_path = sc.output;
  return rep;
}

RunReport run_trajectory(const Scenario& sc) {
  if (!sc.initial) throw DomainError("run_scenario: trajectory modes require initial conditions");
  if (sc.mode == RunMode::gauge4d && !sc.field)
    throw DomainError("run_scenario: gauge4d mode requires a field");
  const auto model = build_model(sc);
  const ModifiedHamiltonian mh(*model, sc.model.c);
  const PhasePoint start =
      on_shell_init(sc.initial->t0, sc.initial->r, sc.initial->p, *model, sc.model.c);

  RunReport rep = base_report(sc, model->id());

  if (sc.mode == RunMode::compare) {
    const Trajectory four = integrate(start, sc.dt, sc.steps, mh, FlowMode::canonical4d);
    const Trajectory three = integrate(start, sc.dt, sc.steps, mh, FlowMode::reference3d);
    rep.deviation = compare_flows(four, three);
    rep.max_constraint = max_abs_constraint(four);
    rep.final_energy = four.samples.back().state.energy(sc.model.c);
    write_file(sc.output, [&](std::ostream& os) { write_trajectory_csv(os, four); });
    return rep;
  }

  std::optional<FieldConfig> field;
  FlowMode fm = FlowMode::canonical4d;
  if (sc.mode == RunMode::gauge4d) {
    fm = FlowMode::gauge4d;
    field = build_field(*sc.field);
  } else if (sc.mode == RunMode::reference3d) {
    fm = FlowMode::reference3d;
  }
  const Trajectory traj =
      integrate(start, sc.dt, sc.steps, mh, fm, field ? &*field : nullptr, sc.model.e);
  rep.max_constraint = max_abs_constraint(traj);
  rep.final_energy = traj.samples.back().state.energy(sc.model.c);
  write_file(sc.output, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
  return rep;
}

RunReport run_quantum(const Scenario& sc) {
  if (!sc.packet) throw DomainError("run_scenario: quantum mode requires a packet");
  if (sc.grid.n < 16) throw DomainError("run_scenario: grid must have at least 16 cells");
  const Potential1D V = sc.potential ? build_potential1(*sc.potential) : Potential1D::none();
  const PacketSpec& pk = *sc.packet;
  GridWavefunction psi = gaussian_packet(static_cast<std::size_t>(sc.grid.n), sc.grid.xmin,
                                         sc.grid.xmax, pk.x0, pk.k0, pk.sigma);
  const double norm0 = wavefunction_norm(psi);

  RunReport rep = base_report(sc, "schrodinger_cn:" + V.id);
  rep.commutator = commutator_expectation(psi, sc.model.hbar);

  std::vector<ExpectationRecord> records;
  records.reserve(static_cast<std::size_t>(sc.steps) + 1);
  records.push_back(record_expectations(psi, V, sc.model.m, sc.model.hbar));
  for (long i = 0; i < sc.steps; ++i) {
    psi = evolve_cn(psi, V, sc.dt, sc.model.m, sc.model.hbar);
    records.push_back(record_expectations(psi, V, sc.model.m, sc.model.hbar));
  }
  rep.ehrenfest = ehrenfest_check(records, sc.dt, sc.model.m);
  rep.norm_drift = std::abs(wavefunction_norm(psi) - norm0);
  write_file(sc.output, [&](std::ostream& os) { write_expectation_csv(os, records); });
  return rep;
}

}  // namespace

RunReport run_scenario(const Scenario& sc) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep = sc.mode == RunMode::quantum ? run_quantum(sc) : run_trajectory(sc);
  const auto t1 = std::chrono::steady_clock::now();
  rep.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return rep;
}

std::string format_report(const RunReport& rep) {
  std::string out;
  const auto text = [&out](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  const auto num = [&out](const char* key, double value) {
    out += key;
    out += " = ";
    append_csv_double(out, value);
    out += '\n';
  };

  text("mode", to_string(rep.mode));
  text("model", rep.model_id);
  num("m", rep.m);
  num("e", rep.e);
  num("c", rep.c);
  num("hbar", rep.hbar);
  num("dt", rep.dt);
  text("steps", std::to_string(rep.steps));
  text("output", rep.output_path);
  if (rep.max_constraint) num("max_constraint", *rep.max_constraint);
  if (rep.final_energy) num("final_energy", *rep.final_energy);
  if (rep.deviation) {
    num("max_position_deviation", rep.deviation->max_position);
    num("max_momentum_deviation", rep.deviation->max_momentum);
    num("max_energy_deviation", rep.deviation->max_energy);
  }
  if (rep.commutator) {
    num("commutator_re", rep.commutator->real());
    num("commutator_im", rep.commutator->imag());
  }
  if (rep.ehrenfest) {
    num("max_position_residual", rep.ehrenfest->max_position_residual);
    num("max_momentum_residual", rep.ehrenfest->max_momentum_residual);
    num("max_energy_residual", rep.ehrenfest->max_energy_residual);
  }
  if (rep.norm_drift) num("norm_drift", *rep.norm_drift);
  num("wall_seconds", rep.wall_seconds);
  return out;
}

}  // namespace fourflow
