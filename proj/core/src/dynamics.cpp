#include "fourflow/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "fourflow/errors.hpp"
#include "csv_format.hpp"

namespace fourflow {

namespace {

using State8 = std::array<double, 8>;
using State7 = std::array<double, 7>;

PhasePoint unpack8(double t, const State8& y) {
  PhasePoint s;
  s.t = t;
  s.position = {y[0], y[1], y[2], y[3]};
  s.momentum = {y[4], y[5], y[6], y[7]};
  return s;
}

State8 pack8(const PhasePoint& s) {
  return {s.position.r0, s.position.x, s.position.y, s.position.z,
          s.momentum.c0, s.momentum.c1, s.momentum.c2, s.momentum.c3};
}

void check_step_args(const PhasePoint& state, double dt, const char* who) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw DomainError(std::string(who) + ": dt must be positive and finite");
  const State8 y = pack8(state);
  for (double v : y)
    if (!std::isfinite(v)) throw DomainError(std::string(who) + ": non-finite state");
}

// Canonical RHS on the packed 8-state; t is carried by r^0, so the system is
// autonomous and the parameter passed by rk4_step is ignored.
State8 canonical_rhs(const State8& y, const ModifiedHamiltonian& mh) {
  const PhasePoint s = unpack8(0.0, y);
  const ModifiedGradient g = mh.grad_modified(s);
  return {g.dP.v0, g.dP.v1, g.dP.v2, g.dP.v3, -g.dR.c0, -g.dR.c1, -g.dR.c2, -g.dR.c3};
}

PhasePoint accept_step(double t_next, double c, const State8& y) {
  PhasePoint s = unpack8(t_next, y);
  s.position.r0 = c * t_next;  // exact solution of dr^0/dt = c
  return s;
}

}  // namespace

std::string to_string(FlowMode mode) {
  switch (mode) {
    case FlowMode::canonical4d: return "canonical4d";
    case FlowMode::gauge4d: return "gauge4d";
    case FlowMode::reference3d: return "reference3d";
  }
  return "?";
}

PhasePoint step_canonical_4d(const PhasePoint& state, double dt, const ModifiedHamiltonian& mh) {
  check_step_args(state, dt, "step_canonical_4d");
  auto rhs = [&mh](double, const State8& y) { return canonical_rhs(y, mh); };
  const State8 y = rk4_step(pack8(state), state.t, dt, rhs);
  return accept_step(state.t + dt, mh.c(), y);
}

PhasePoint step_gauge_4d(const PhasePoint& state, double dt, const ModifiedHamiltonian& mh,
                         const FieldConfig& field, double e) {
  check_step_args(state, dt, "step_gauge_4d");
  const double c = mh.c();
  auto rhs = [&mh, &field, e, c](double, const State8& y) {
    const PhasePoint s = unpack8(0.0, y);
    const ModifiedGradient g = mh.grad_modified(s);
    // Field and velocity are taken at the same stage point.
    const double t_stage = s.position.r0 / c;
    const FieldTensor F = field.tensor_at(s.position.spatial(), t_stage);
    const FourCovector f = force_term(F, g.dP, e, c);
    return State8{g.dP.v0,          g.dP.v1,          g.dP.v2,          g.dP.v3,
                  -g.dR.c0 + f.c0,  -g.dR.c1 + f.c1,  -g.dR.c2 + f.c2,  -g.dR.c3 + f.c3};
  };
  const State8 y = rk4_step(pack8(state), state.t, dt, rhs);
  return accept_step(state.t + dt, c, y);
}

State3D step_canonical_3d(const State3D& state, double dt, const HamiltonianModel& model) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw DomainError("step_canonical_3d: dt must be positive and finite");
  if (!std::isfinite(state.t) || !isfinite(state.r) || !isfinite(state.p) ||
      !std::isfinite(state.eps))
    throw DomainError("step_canonical_3d: non-finite state");

  auto rhs = [&model](double t, const State7& y) {
    const Vec3 r{y[0], y[1], y[2]};
    const Vec3 p{y[3], y[4], y[5]};
    const Vec3 dr = model.grad_p(t, r, p);
    const Vec3 dp = model.grad_r(t, r, p);
    return State7{dr.x, dr.y, dr.z, -dp.x, -dp.y, -dp.z, model.eval_dt(t, r, p)};
  };
  const State7 y0 = {state.r.x, state.r.y, state.r.z, state.p.x, state.p.y, state.p.z, state.eps};
  const State7 y = rk4_step(y0, state.t, dt, rhs);
  return {state.t + dt, {y[0], y[1], y[2]}, {y[3], y[4], y[5]}, y[6]};
}

double constraint_residual(const PhasePoint& state, const ModifiedHamiltonian& mh) {
  return mh.eval_modified(state);
}

PhasePoint embed_state3d(const State3D& s, double c) {
  PhasePoint out;
  out.t = s.t;
  out.position = {c * s.t, s.r.x, s.r.y, s.r.z};
  out.momentum = {-s.eps / c, s.p.x, s.p.y, s.p.z};
  return out;
}

namespace {

// Central differences at interior samples, second-order one-sided stencils at
// the ends; with two samples only a forward quotient is available.
void fill_energy_rate_residual(Trajectory& traj, const ModifiedHamiltonian& mh) {
  auto& s = traj.samples;
  const std::size_t n = s.size();
  const double dt = traj.dt;
  auto dhdt = [&](const Sample& smp) {
    return mh.model().eval_dt(smp.t, smp.state.spatial_position(), smp.state.spatial_momentum());
  };
  auto e = [&](std::size_t k) { return s[k].diag.energy; };

  if (n < 2) return;
  if (n == 2) {
    const double rate = (e(1) - e(0)) / dt;
    s[0].diag.energy_rate_residual = rate - dhdt(s[0]);
    s[1].diag.energy_rate_residual = rate - dhdt(s[1]);
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k)
    s[k].diag.energy_rate_residual = (e(k + 1) - e(k - 1)) / (2.0 * dt) - dhdt(s[k]);
  s[0].diag.energy_rate_residual =
      (-3.0 * e(0) + 4.0 * e(1) - e(2)) / (2.0 * dt) - dhdt(s[0]);
  s[n - 1].diag.energy_rate_residual =
      (3.0 * e(n - 1) - 4.0 * e(n - 2) + e(n - 3)) / (2.0 * dt) - dhdt(s[n - 1]);
}

Diagnostics diagnostics_4d(const PhasePoint& s, const ModifiedHamiltonian& mh) {
  Diagnostics d;
  d.constraint = mh.eval_modified(s);
  d.energy = s.energy(mh.c());
  return d;
}

}  // namespace

Trajectory integrate(const PhasePoint& initial, double dt, long n_steps,
                     const ModifiedHamiltonian& mh, FlowMode mode, const FieldConfig* field,
                     double e) {
  std::vector<std::string> issues;
  if (!(dt > 0.0) || !std::isfinite(dt)) issues.push_back("integrate: dt must be positive");
  if (n_steps < 1) issues.push_back("integrate: n_steps must be at least 1");
  {
    const double vals[] = {initial.t,           initial.position.r0, initial.position.x,
                           initial.position.y,  initial.position.z,  initial.momentum.c0,
                           initial.momentum.c1, initial.momentum.c2, initial.momentum.c3};
    for (double v : vals)
      if (!std::isfinite(v)) {
        issues.push_back("integrate: non-finite initial state");
        break;
      }
  }
  if (mode == FlowMode::gauge4d && field == nullptr)
    issues.push_back("integrate: gauge4d mode requires a field configuration");
  if (!issues.empty()) throw ValidationError(issues);

  Trajectory traj;
  traj.mode = mode;
  traj.model_id = mh.model().id();
  traj.dt = dt;
  traj.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

  auto run = [&](auto&& do_step, auto&& to_sample, auto&& state0) {
    auto state = state0;
    traj.samples.push_back(to_sample(state));
    for (long k = 0; k < n_steps; ++k) {
      try {
        state = do_step(state);
      } catch (const DomainError& ex) {
        throw DomainError("integrate: step " + std::to_string(k + 1) + " failed: " + ex.what());
      }
      traj.samples.push_back(to_sample(state));
    }
  };

  switch (mode) {
    case FlowMode::canonical4d:
      run([&](const PhasePoint& s) { return step_canonical_4d(s, dt, mh); },
          [&](const PhasePoint& s) { return Sample{s.t, s, diagnostics_4d(s, mh)}; }, initial);
      break;
    case FlowMode::gauge4d:
      run([&](const PhasePoint& s) { return step_gauge_4d(s, dt, mh, *field, e); },
          [&](const PhasePoint& s) { return Sample{s.t, s, diagnostics_4d(s, mh)}; }, initial);
      break;
    case FlowMode::reference3d: {
      State3D s0{initial.t, initial.spatial_position(), initial.spatial_momentum(),
                 initial.energy(mh.c())};
      run([&](const State3D& s) { return step_canonical_3d(s, dt, mh.model()); },
          [&](const State3D& s) {
            Diagnostics d;
            d.constraint = mh.model().eval(s.t, s.r, s.p) - s.eps;
            d.energy = s.eps;
            return Sample{s.t, embed_state3d(s, mh.c()), d};
          },
          s0);
      break;
    }
  }

  fill_energy_rate_residual(traj, mh);
  return traj;
}

DeviationReport compare_flows(const Trajectory& a, const Trajectory& b,
                              const std::function<Vec3(const Sample&)>& momentum_shift) {
  if (a.samples.size() != b.samples.size())
    throw DomainError("compare_flows: trajectories have different sample counts");
  if (a.samples.empty()) throw DomainError("compare_flows: empty trajectories");

  DeviationReport rep;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    const Sample& sa = a.samples[k];
    const Sample& sb = b.samples[k];
    if (std::fabs(sa.t - sb.t) > 1e-9 * std::max(1.0, std::fabs(sa.t)))
      throw DomainError("compare_flows: sample times disagree at index " + std::to_string(k));

    Vec3 pb = sb.state.spatial_momentum();
    if (momentum_shift) pb = pb + momentum_shift(sb);

    rep.max_position = std::max(
        rep.max_position, norm(sa.state.spatial_position() - sb.state.spatial_position()));
    rep.max_momentum = std::max(rep.max_momentum, norm(sa.state.spatial_momentum() - pb));
    rep.max_energy = std::max(rep.max_energy, std::fabs(sa.diag.energy - sb.diag.energy));
  }
  return rep;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  std::string line = "t,r0,x,y,z,pi0,pix,piy,piz,constraint,energy\n";
  os.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const Sample& s : traj.samples) {
    line.clear();
    append_csv_double(line, s.t);
    line += ',';
    append_csv_double(line, s.state.position.r0);
    line += ',';
    append_csv_double(line, s.state.position.x);
    line += ',';
    append_csv_double(line, s.state.position.y);
    line += ',';
    append_csv_double(line, s.state.position.z);
    line += ',';
    append_csv_double(line, s.state.momentum.c0);
    line += ',';
    append_csv_double(line, s.state.momentum.c1);
    line += ',';
    append_csv_double(line, s.state.momentum.c2);
    line += ',';
    append_csv_double(line, s.state.momentum.c3);
    line += ',';
    append_csv_double(line, s.diag.constraint);
    line += ',';
    append_csv_double(line, s.diag.energy);
    line += '\n';
    os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

double fitted_order(std::span<const RefinementPoint> points) {
  if (points.size() < 2) throw DomainError("fitted_order: need at least two refinement points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : points) {
    if (!(p.dt > 0.0) || !(p.error > 0.0))
      throw DomainError("fitted_order: dt and error must be positive");
    const double x = std::log(p.dt);
    const double y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fourflow
