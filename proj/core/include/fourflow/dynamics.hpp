#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fourflow/em_field.hpp"
#include "fourflow/geometry.hpp"
#include "fourflow/hamiltonian.hpp"

namespace fourflow {

// Classic fixed-step RK4. The combination (k1 + 2(k2+k3) + k4)/6 is grouped so
// that a constant right-hand side advances by exactly dt * k.
template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(const std::array<double, N>& y, double t, double dt, Rhs&& rhs) {
  const std::array<double, N> k1 = rhs(t, y);
  std::array<double, N> ytmp;
  for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + 0.5 * dt * k1[i];
  const std::array<double, N> k2 = rhs(t + 0.5 * dt, ytmp);
  for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + 0.5 * dt * k2[i];
  const std::array<double, N> k3 = rhs(t + 0.5 * dt, ytmp);
  for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + dt * k3[i];
  const std::array<double, N> k4 = rhs(t + dt, ytmp);

  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = y[i] + dt * ((k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]) / 6.0);
  return out;
}

// Reference state for the conventional 3-dimensional flow. eps tracks the
// instantaneous energy, advanced by quadrature of dH/dt alongside (r, p).
struct State3D {
  double t = 0.0;
  Vec3 r;
  Vec3 p;
  double eps = 0.0;
};

struct Diagnostics {
  // Modified-Hamiltonian residual H + pi_0 c (4d flows) or H - eps (3d flow).
  double constraint = 0.0;
  // -c pi_0 (4d flows) or eps (3d flow).
  double energy = 0.0;
  // Sampled d(energy)/dt minus dH/dt, finite-differenced across neighbouring
  // samples; O(dt^2). For gauge flows this includes the field work rate eE.v.
  double energy_rate_residual = 0.0;
};

enum class FlowMode { canonical4d, gauge4d, reference3d };

std::string to_string(FlowMode mode);

struct Sample {
  double t = 0.0;
  PhasePoint state;
  Diagnostics diag;
};

struct Trajectory {
  FlowMode mode = FlowMode::canonical4d;
  std::string model_id;
  double dt = 0.0;
  std::vector<Sample> samples;
};

// One RK4 step of the canonical extended flow
//   dr^alpha/dt = dHm/dpi_alpha,  dpi_alpha/dt = -dHm/dr^alpha.
// r^0 obeys dr^0/dt = c, which RK4 integrates exactly; the accepted step
// re-establishes position.r0 = c * t from the advanced lab time so the
// lockstep invariant holds to the last bit for any c.
PhasePoint step_canonical_4d(const PhasePoint& state, double dt, const ModifiedHamiltonian& mh);

// Same flow with the gauge force added to the momentum equation:
//   dpi_alpha/dt = -dHm/dr^alpha + (e/c) F_{alpha beta} dr^beta/dt,
// with dr^beta/dt and F evaluated at the same intermediate stage states.
// The model inside mh must be a potential-free kinetic Hamiltonian; pi is
// kinetic momentum here.
PhasePoint step_gauge_4d(const PhasePoint& state, double dt, const ModifiedHamiltonian& mh,
                         const FieldConfig& field, double e);

// One RK4 step of the conventional flow dr/dt = dH/dp, dp/dt = -dH/dr with
// eps advanced through deps/dt = dH/dt evaluated at the RK4 stages.
State3D step_canonical_3d(const State3D& state, double dt, const HamiltonianModel& model);

// Modified-Hamiltonian residual of a state; zero on the dispersion surface.
double constraint_residual(const PhasePoint& state, const ModifiedHamiltonian& mh);

// Embeds a 3d reference state into the extended phase space:
// r^0 = c t, pi_0 = -eps / c.
PhasePoint embed_state3d(const State3D& s, double c);

// Fixed-step integration producing n_steps + 1 samples (initial state
// included). mode gauge4d requires field; canonical modes ignore it.
// reference3d runs the conventional flow on mh.model() and embeds each state.
// Rejects dt <= 0, n_steps < 1 and non-finite initial data; domain errors
// raised mid-step are annotated with the failing step index.
Trajectory integrate(const PhasePoint& initial, double dt, long n_steps,
                     const ModifiedHamiltonian& mh, FlowMode mode,
                     const FieldConfig* field = nullptr, double e = 0.0);

struct DeviationReport {
  double max_position = 0.0;
  double max_momentum = 0.0;
  double max_energy = 0.0;
};

// Sample-by-sample deviation between two trajectories on the same time grid.
// momentum_shift, when given, is added to b's spatial momentum before
// comparing (e.g. (e/c)A(r, t) to map kinetic onto canonical momentum).
DeviationReport compare_flows(
    const Trajectory& a, const Trajectory& b,
    const std::function<Vec3(const Sample&)>& momentum_shift = nullptr);

// Writes "t,r0,x,y,z,pi0,pix,piy,piz,constraint,energy" rows, one per sample,
// shortest round-trip decimal representation, '\n' line ends.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// Least-squares slope of log(error) against log(dt); the measured order of a
// refinement study.
struct RefinementPoint {
  double dt = 0.0;
  double error = 0.0;
};

double fitted_order(std::span<const RefinementPoint> points);

}  // namespace fourflow
