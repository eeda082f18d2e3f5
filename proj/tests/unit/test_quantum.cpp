#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "fourflow/errors.hpp"
#include "fourflow/quantum.hpp"

using namespace fourflow;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

GridWavefunction evolve_n(GridWavefunction psi, const Potential1D& V, double dt, long n,
                          double m) {
  for (long i = 0; i < n; ++i) psi = evolve_cn(psi, V, dt, m);
  return psi;
}

std::vector<ExpectationRecord> record_run(GridWavefunction psi, const Potential1D& V, double dt,
                                          long n, double m) {
  std::vector<ExpectationRecord> records;
  records.push_back(record_expectations(psi, V, m));
  for (long i = 0; i < n; ++i) {
    psi = evolve_cn(psi, V, dt, m);
    records.push_back(record_expectations(psi, V, m));
  }
  return records;
}

}  // namespace

TEST_SUITE_BEGIN("quantum");

TEST_CASE("gaussian packet: normalization and first moments") {
  const GridWavefunction psi = gaussian_packet(2048, -40.0, 40.0, -5.0, 0.5, 2.0);
  CHECK(psi.dx == doctest::Approx(0.0390625).epsilon(1e-15));
  CHECK(wavefunction_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation_position(psi) == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(std::abs(expectation_momentum(psi) - 0.5) <= 5e-8);
  // <H> = hbar^2 k0^2 / 2m + hbar^2 / (8 m sigma^2)
  CHECK(std::abs(expectation_energy(psi, Potential1D::none(), 0.0, 1.0) - 0.15625) <= 1e-8);
}

TEST_CASE("a real packet carries exactly zero momentum") {
  const GridWavefunction psi = gaussian_packet(512, -20.0, 20.0, 0.0, 0.0, 1.5);
  CHECK(expectation_momentum(psi) == 0.0);
}

TEST_CASE("boosting the packet shifts its momentum expectation") {
  const GridWavefunction a = gaussian_packet(1024, -20.0, 20.0, 0.0, 0.3, 1.5);
  const GridWavefunction b = gaussian_packet(1024, -20.0, 20.0, 0.0, 0.8, 1.5);
  CHECK(expectation_momentum(b) - expectation_momentum(a) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("packet construction rejects unresolvable or clipped shapes") {
  // sigma below 8 dx is unresolvable
  CHECK_THROWS_AS(gaussian_packet(128, -20.0, 20.0, 0.0, 0.0, 0.5), DomainError);
  // packet centered against the wall leaks past the Dirichlet boundary
  CHECK_THROWS_AS(gaussian_packet(1024, -20.0, 20.0, 19.0, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(gaussian_packet(1024, 20.0, -20.0, 0.0, 0.0, 2.0), DomainError);
}

TEST_CASE("crank-nicolson conserves the norm and is reversible") {
  GridWavefunction psi = gaussian_packet(1024, -20.0, 20.0, -3.0, 0.6, 1.5);
  const GridWavefunction start = psi;
  const auto V = Potential1D::harmonic(1.0);
  psi = evolve_n(std::move(psi), V, 1e-3, 100, 1.0);
  CHECK(wavefunction_norm(psi) == doctest::Approx(1.0).epsilon(1e-11));

  // stepping backwards inverts the unitary exactly in exact arithmetic
  GridWavefunction back = psi;
  for (int i = 0; i < 100; ++i) back = evolve_cn(back, V, -1e-3, 1.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < back.values.size(); ++j)
    worst = std::max(worst, std::abs(back.values[j] - start.values[j]));
  CHECK(worst <= 1e-10);
  CHECK(back.t == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("free packet drifts at the group velocity") {
  GridWavefunction psi = gaussian_packet(2048, -40.0, 40.0, -5.0, 0.5, 2.0);
  const auto V = Potential1D::none();
  psi = evolve_n(std::move(psi), V, 1e-3, 500, 1.0);
  // <x>(t) = x0 + hbar k0 t / m
  CHECK(std::abs(expectation_position(psi) - (-5.0 + 0.5 * 0.5)) <= 5e-8);
  CHECK(std::abs(expectation_momentum(psi) - 0.5) <= 5e-8);
  CHECK(std::abs(expectation_energy(psi, V, psi.t, 1.0) - 0.15625) <= 1e-8);
}

TEST_CASE("commutator expectation approaches i hbar at fourth order in dx") {
  // k0 = 0.9 keeps the k^5 moment large enough to see the truncation error
  const GridWavefunction fine = gaussian_packet(1024, -20.0, 20.0, 0.0, 0.9, 2.0);
  const std::complex<double> c = commutator_expectation(fine);
  CHECK(std::abs(c - std::complex<double>(0.0, 1.0)) <= 1e-6);

  const GridWavefunction h1 = gaussian_packet(256, -20.0, 20.0, 0.0, 1.2, 1.5);
  const GridWavefunction h2 = gaussian_packet(512, -20.0, 20.0, 0.0, 1.2, 1.5);
  const double e1 = std::abs(commutator_expectation(h1) - std::complex<double>(0.0, 1.0));
  const double e2 = std::abs(commutator_expectation(h2) - std::complex<double>(0.0, 1.0));
  CHECK(e1 / e2 >= 8.0);  // order >= 3 under dx halving; fourth order expected
}

TEST_CASE("commutator scales with hbar") {
  const GridWavefunction psi = gaussian_packet(1024, -20.0, 20.0, 0.0, 0.9, 2.0);
  const std::complex<double> c = commutator_expectation(psi, 2.0);
  CHECK(std::abs(c - std::complex<double>(0.0, 2.0)) <= 4e-6);
}

TEST_CASE("ehrenfest relations for a linear potential") {
  const auto V = Potential1D::linear(0.3);
  GridWavefunction psi = gaussian_packet(1024, -20.0, 20.0, 0.0, 0.2, 2.0);
  const auto records = record_run(std::move(psi), V, 1e-3, 400, 1.0);
  const EhrenfestReport rep = ehrenfest_check(records, 1e-3, 1.0);
  CHECK(rep.max_position_residual <= 1e-6);
  CHECK(rep.max_momentum_residual <= 1e-6);
  CHECK(rep.max_energy_residual <= 1e-8);  // static potential, no drive
  // <p>(t) = p0 - g t within the same tolerance
  CHECK(std::abs(records.back().p_mean - (0.2 - 0.3 * 0.4)) <= 1e-6);
}

TEST_CASE("coherent state in a harmonic well follows the classical oscillation") {
  // sigma = sqrt(hbar / 2 m omega) makes the packet coherent; <x> = x0 cos t
  const auto V = Potential1D::harmonic(1.0);
  const double sigma = 1.0 / std::sqrt(2.0);
  GridWavefunction psi = gaussian_packet(1024, -20.0, 20.0, 1.0, 0.0, sigma);
  const double dt = 1e-3;
  const long quarter = std::lround(kPi / 2.0 / dt);
  psi = evolve_n(std::move(psi), V, dt, quarter, 1.0);
  const double t = psi.t;
  CHECK(std::abs(expectation_position(psi) - std::cos(t)) <= 1e-5);
  // momentum swings to -x0 m omega sin t
  CHECK(std::abs(expectation_momentum(psi) + std::sin(t)) <= 1e-5);
}

TEST_CASE("driven potential pumps energy at the predicted rate") {
  const auto V = Potential1D::driven_linear(0.4, 1.5);
  const auto run = [&](double dt) {
    GridWavefunction psi = gaussian_packet(1024, -20.0, 20.0, 0.0, 0.3, 1.5);
    const auto records = record_run(std::move(psi), V, dt, std::lround(1.0 / dt), 1.0);
    return ehrenfest_check(records, dt, 1.0).max_energy_residual;
  };
  const double coarse = run(2e-3);
  const double fine = run(1e-3);
  CHECK(coarse <= 1e-2);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.3));  // O(dt^2)
}

TEST_CASE("midpoint residual certifies a consistent step pair") {
  const auto V = Potential1D::harmonic(1.0);
  const GridWavefunction prev = gaussian_packet(512, -20.0, 20.0, 1.0, 0.4, 1.5);
  const double dt = 1e-3;
  const GridWavefunction next = evolve_cn(prev, V, dt, 1.0);

  // the pair produced by the propagator satisfies its own midpoint equation
  CHECK(schrodinger_residual(prev, next, V, prev.t + dt / 2.0, dt, 1.0) <= 1e-9);

  // corrupting the successor is detected
  GridWavefunction bad = next;
  bad.values[bad.size() / 2] += 1e-6;
  CHECK(schrodinger_residual(prev, bad, V, prev.t + dt / 2.0, dt, 1.0) >= 1e-4);
}

TEST_CASE("midpoint residual of the exact flow shrinks quadratically") {
  const auto V = Potential1D::none();
  const GridWavefunction start = gaussian_packet(512, -20.0, 20.0, -2.0, 0.7, 1.5);
  const auto residual_at = [&](double dt) {
    // 64 substeps approximate the exact discrete-Hamiltonian flow over dt
    GridWavefunction next = start;
    for (int i = 0; i < 64; ++i) next = evolve_cn(next, V, dt / 64.0, 1.0);
    return schrodinger_residual(start, next, V, start.t + dt / 2.0, dt, 1.0);
  };
  const double coarse = residual_at(0.2);
  const double fine = residual_at(0.1);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("expectation records expose the potential derivatives") {
  const auto V = Potential1D::driven_linear(0.4, 1.5);
  const GridWavefunction psi = gaussian_packet(512, -20.0, 20.0, 1.0, 0.0, 1.5);
  const ExpectationRecord rec = record_expectations(psi, V, 1.0);
  CHECK(rec.t == 0.0);
  CHECK(rec.x_mean == doctest::Approx(1.0).epsilon(1e-10));
  // dV/dx = -f0 sin(omega t) -> 0 at t = 0; dV/dt = -f0 omega cos(omega t) x
  CHECK(rec.dVdx_mean == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(rec.dVdt_mean == doctest::Approx(-0.4 * 1.5 * 1.0).epsilon(1e-9));
}

TEST_CASE("argument validation") {
  const GridWavefunction psi = gaussian_packet(512, -20.0, 20.0, 0.0, 0.0, 1.5);
  CHECK_THROWS_AS(evolve_cn(psi, Potential1D::none(), 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(evolve_cn(psi, Potential1D::none(), 1e-3, 0.0), DomainError);
  const std::vector<ExpectationRecord> two(2);
  CHECK_THROWS_AS(ehrenfest_check(two, 1e-3, 1.0), DomainError);
}

TEST_CASE("expectation csv format") {
  const auto V = Potential1D::none();
  const auto records = record_run(gaussian_packet(512, -20.0, 20.0, 0.0, 0.0, 1.5), V, 1e-3, 2,
                                  1.0);
  std::ostringstream os;
  write_expectation_csv(os, records);
  const std::string text = os.str();
  CHECK(text.rfind("t,x_mean,p_mean,energy_mean,dVdx_mean,dVdt_mean\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_SUITE_END();
