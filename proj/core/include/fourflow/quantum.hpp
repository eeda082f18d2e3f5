#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fourflow {

// One-dimensional wavefunction on a uniform cell-centred grid
// x_j = x_left + (j + 1/2) dx, with Dirichlet zero values outside the grid.
struct GridWavefunction {
  std::vector<std::complex<double>> values;
  double x_left = 0.0;
  double dx = 0.0;
  double t = 0.0;

  std::size_t size() const { return values.size(); }
  double x_at(std::size_t j) const { return x_left + (static_cast<double>(j) + 0.5) * dx; }
};

// Scalar potential V(x, t) with analytic derivatives.
struct Potential1D {
  std::string id = "none";
  std::function<double(double, double)> value;
  std::function<double(double, double)> ddx;
  std::function<double(double, double)> ddt;

  static Potential1D none();
  static Potential1D uniform(double v0);
  // V = g x
  static Potential1D linear(double g);
  // V = k/2 (x - center)^2
  static Potential1D harmonic(double k, double center = 0.0);
  // V = -f0 sin(omega t) x
  static Potential1D driven_linear(double f0, double omega);
};

// Normalized Gaussian packet exp(-(x-x0)^2/(4 sigma^2) + i k0 x); sigma is the
// position standard deviation. Requires sigma >= 8 dx so the packet is
// resolved, and tails below 1e-8 in the outer 5% of the grid.
GridWavefunction gaussian_packet(std::size_t n, double xmin, double xmax, double x0, double k0,
                                 double sigma, double t0 = 0.0);

double wavefunction_norm(const GridWavefunction& psi);

// One Crank-Nicolson step: (1 + i dt H/2hbar) psi' = (1 - i dt H/2hbar) psi,
// H = -hbar^2/(2m) d^2/dx^2 + V(x, t + dt/2), five-point (4th order)
// Laplacian, Dirichlet boundaries. Exactly unitary in exact arithmetic;
// the step throws if the norm moves by more than 1e-12 relative.
GridWavefunction evolve_cn(const GridWavefunction& psi, const Potential1D& V, double dt, double m,
                           double hbar = 1.0);

double expectation_position(const GridWavefunction& psi);

// <psi| -i hbar d/dx |psi> with the 4th-order five-point first derivative.
double expectation_momentum(const GridWavefunction& psi, double hbar = 1.0);

// <psi| H |psi> with the same discrete Hamiltonian evolve_cn uses (so it is
// exactly conserved by the evolution for time-independent V). Throws if the
// imaginary part exceeds 1e-10.
double expectation_energy(const GridWavefunction& psi, const Potential1D& V, double t, double m,
                          double hbar = 1.0);

double expectation_dVdx(const GridWavefunction& psi, const Potential1D& V, double t);
double expectation_dVdt(const GridWavefunction& psi, const Potential1D& V, double t);

// <psi| (x p - p x) |psi>; i*hbar up to O(dx^4) for a resolved packet.
std::complex<double> commutator_expectation(const GridWavefunction& psi, double hbar = 1.0);

struct ExpectationRecord {
  double t = 0.0;
  double x_mean = 0.0;
  double p_mean = 0.0;
  double energy_mean = 0.0;
  double dVdx_mean = 0.0;
  double dVdt_mean = 0.0;
};

ExpectationRecord record_expectations(const GridWavefunction& psi, const Potential1D& V, double m,
                                      double hbar = 1.0);

// Maxima over interior records of the three correspondence residuals
//   d<x>/dt - <p>/m,  d<p>/dt + <dV/dx>,  d<H>/dt - <dV/dt>,
// time derivatives by central differences. Needs at least three records.
struct EhrenfestReport {
  double max_position_residual = 0.0;
  double max_momentum_residual = 0.0;
  double max_energy_residual = 0.0;
};

EhrenfestReport ehrenfest_check(std::span<const ExpectationRecord> records, double dt, double m);

// L2 norm of i hbar (next - prev)/dt - H[(prev + next)/2] with V at t_mid.
// Zero (to rounding) for a pair produced by evolve_cn with the same dt.
double schrodinger_residual(const GridWavefunction& prev, const GridWavefunction& next,
                            const Potential1D& V, double t_mid, double dt, double m,
                            double hbar = 1.0);

// Writes "t,x_mean,p_mean,energy_mean,dVdx_mean,dVdt_mean" rows.
void write_expectation_csv(std::ostream& os, std::span<const ExpectationRecord> records);

}  // namespace fourflow
