#include "fourflow/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "fourflow/errors.hpp"
#include "csv_format.hpp"

namespace fourflow {

namespace {

using cplx = std::complex<double>;

// Five-point stencils, ghost values zero (Dirichlet).
// First derivative, 4th order: (-f2 + 8 f1 - 8 fm1 + fm2) / (12 dx).
cplx d1_at(const std::vector<cplx>& f, std::size_t j, double dx) {
  const std::size_t n = f.size();
  const cplx fp1 = j + 1 < n ? f[j + 1] : 0.0;
  const cplx fp2 = j + 2 < n ? f[j + 2] : 0.0;
  const cplx fm1 = j >= 1 ? f[j - 1] : 0.0;
  const cplx fm2 = j >= 2 ? f[j - 2] : 0.0;
  return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * dx);
}

// Second derivative, 4th order: (-f2 + 16 f1 - 30 f + 16 fm1 - fm2)/(12 dx^2).
cplx d2_at(const std::vector<cplx>& f, std::size_t j, double dx) {
  const std::size_t n = f.size();
  const cplx fp1 = j + 1 < n ? f[j + 1] : 0.0;
  const cplx fp2 = j + 2 < n ? f[j + 2] : 0.0;
  const cplx fm1 = j >= 1 ? f[j - 1] : 0.0;
  const cplx fm2 = j >= 2 ? f[j - 2] : 0.0;
  return (-fp2 + 16.0 * fp1 - 30.0 * f[j] + 16.0 * fm1 - fm2) / (12.0 * dx * dx);
}

// H psi with H = -hbar^2/(2m) d2 + V(x, t).
std::vector<cplx> apply_hamiltonian(const GridWavefunction& psi, const Potential1D& V, double t,
                                    double m, double hbar) {
  const std::size_t n = psi.size();
  std::vector<cplx> out(n);
  const double kin = -hbar * hbar / (2.0 * m);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = kin * d2_at(psi.values, j, psi.dx) + V.value(psi.x_at(j), t) * psi.values[j];
  return out;
}

void check_grid(const GridWavefunction& psi, const char* who) {
  if (psi.size() < 16) throw DomainError(std::string(who) + ": grid too small");
  if (!(psi.dx > 0.0)) throw DomainError(std::string(who) + ": dx must be positive");
}

// Packets must stay away from the Dirichlet walls: |psi| < 1e-8 over the
// outer 5% of cells on each side.
void check_edge_decay(const GridWavefunction& psi, const char* who) {
  const std::size_t n = psi.size();
  const std::size_t margin = std::max<std::size_t>(1, n / 20);
  for (std::size_t j = 0; j < margin; ++j) {
    if (std::abs(psi.values[j]) > 1e-8 || std::abs(psi.values[n - 1 - j]) > 1e-8)
      throw DomainError(std::string(who) +
                        ": wavefunction has not decayed below 1e-8 at the grid edges");
  }
}

// Pentadiagonal LU solve without pivoting. The Crank-Nicolson matrix
// 1 + i dt H/(2 hbar) is strictly diagonally dominant at sane step sizes;
// small pivots are reported instead of silently amplified.
void solve_penta(std::vector<cplx>& sub2, std::vector<cplx>& sub1, std::vector<cplx>& diag,
                 std::vector<cplx>& sup1, std::vector<cplx>& sup2, std::vector<cplx>& rhs) {
  const std::size_t n = diag.size();
  auto pivot_ok = [](const cplx& p) { return std::abs(p) > 1e-30 && std::isfinite(std::abs(p)); };

  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2) {
      if (!pivot_ok(diag[i - 2])) throw NumericalError("evolve_cn: linear solve failed (pivot)");
      const cplx f = sub2[i] / diag[i - 2];
      sub1[i] -= f * sup1[i - 2];
      diag[i] -= f * sup2[i - 2];
      rhs[i] -= f * rhs[i - 2];
    }
    if (i >= 1) {
      if (!pivot_ok(diag[i - 1])) throw NumericalError("evolve_cn: linear solve failed (pivot)");
      const cplx f = sub1[i] / diag[i - 1];
      diag[i] -= f * sup1[i - 1];
      if (i + 1 < n) sup1[i] -= f * sup2[i - 1];
      rhs[i] -= f * rhs[i - 1];
    }
  }
  if (!pivot_ok(diag[n - 1])) throw NumericalError("evolve_cn: linear solve failed (pivot)");
  rhs[n - 1] /= diag[n - 1];
  if (n >= 2) rhs[n - 2] = (rhs[n - 2] - sup1[n - 2] * rhs[n - 1]) / diag[n - 2];
  for (std::size_t k = n - 2; k-- > 0;)
    rhs[k] = (rhs[k] - sup1[k] * rhs[k + 1] - sup2[k] * rhs[k + 2]) / diag[k];
}

}  // namespace

Potential1D Potential1D::none() {
  Potential1D v;
  v.id = "none";
  v.value = [](double, double) { return 0.0; };
  v.ddx = [](double, double) { return 0.0; };
  v.ddt = [](double, double) { return 0.0; };
  return v;
}

Potential1D Potential1D::uniform(double v0) {
  Potential1D v;
  v.id = "uniform";
  v.value = [v0](double, double) { return v0; };
  v.ddx = [](double, double) { return 0.0; };
  v.ddt = [](double, double) { return 0.0; };
  return v;
}

Potential1D Potential1D::linear(double g) {
  Potential1D v;
  v.id = "linear";
  v.value = [g](double x, double) { return g * x; };
  v.ddx = [g](double, double) { return g; };
  v.ddt = [](double, double) { return 0.0; };
  return v;
}

Potential1D Potential1D::harmonic(double k, double center) {
  Potential1D v;
  v.id = "harmonic";
  v.value = [k, center](double x, double) { return 0.5 * k * (x - center) * (x - center); };
  v.ddx = [k, center](double x, double) { return k * (x - center); };
  v.ddt = [](double, double) { return 0.0; };
  return v;
}

Potential1D Potential1D::driven_linear(double f0, double omega) {
  Potential1D v;
  v.id = "driven_linear";
  v.value = [f0, omega](double x, double t) { return -f0 * std::sin(omega * t) * x; };
  v.ddx = [f0, omega](double, double t) { return -f0 * std::sin(omega * t); };
  v.ddt = [f0, omega](double x, double t) { return -f0 * omega * std::cos(omega * t) * x; };
  return v;
}

GridWavefunction gaussian_packet(std::size_t n, double xmin, double xmax, double x0, double k0,
                                 double sigma, double t0) {
  if (n < 16) throw DomainError("gaussian_packet: grid too small");
  if (!(xmax > xmin)) throw DomainError("gaussian_packet: xmax must exceed xmin");
  if (!(sigma > 0.0)) throw DomainError("gaussian_packet: sigma must be positive");

  GridWavefunction psi;
  psi.dx = (xmax - xmin) / static_cast<double>(n);
  psi.x_left = xmin;
  psi.t = t0;
  psi.values.resize(n);

  if (sigma < 8.0 * psi.dx)
    throw DomainError("gaussian_packet: sigma must be at least 8 dx for a resolved packet");

  for (std::size_t j = 0; j < n; ++j) {
    const double x = psi.x_at(j);
    const double arg = (x - x0) / (2.0 * sigma);
    psi.values[j] = std::polar(std::exp(-arg * arg), k0 * x);
  }
  const double nrm = wavefunction_norm(psi);
  if (!(nrm > 0.0)) throw NumericalError("gaussian_packet: vanishing norm");
  for (auto& v : psi.values) v /= nrm;

  check_edge_decay(psi, "gaussian_packet");
  return psi;
}

double wavefunction_norm(const GridWavefunction& psi) {
  double s = 0.0;
  for (const auto& v : psi.values) s += std::norm(v);
  return std::sqrt(s * psi.dx);
}

GridWavefunction evolve_cn(const GridWavefunction& psi, const Potential1D& V, double dt, double m,
                           double hbar) {
  check_grid(psi, "evolve_cn");
  check_edge_decay(psi, "evolve_cn");
  // negative dt runs the inverse unitary, a legitimate reversibility probe
  if (dt == 0.0 || !std::isfinite(dt)) throw DomainError("evolve_cn: dt must be nonzero");
  if (!(m > 0.0)) throw DomainError("evolve_cn: m must be positive");
  if (!(hbar > 0.0)) throw DomainError("evolve_cn: hbar must be positive");

  const std::size_t n = psi.size();
  const double dx = psi.dx;
  const double t_half = psi.t + 0.5 * dt;
  const cplx ik = cplx(0.0, 1.0) * (dt / (2.0 * hbar));

  // H = -hbar^2/(2m) L5 + V: stencil weights of the five-point Laplacian.
  const double w = hbar * hbar / (24.0 * m * dx * dx);  // so H diag kinetic = 30 w
  const double h_off1 = -16.0 * w;
  const double h_off2 = w;

  // A = 1 + ik H (solved), b = (1 - ik H) psi.
  std::vector<cplx> sub2(n, ik * h_off2), sub1(n, ik * h_off1), diag(n), sup1(n, ik * h_off1),
      sup2(n, ik * h_off2), rhs(n);
  for (std::size_t j = 0; j < n; ++j)
    diag[j] = 1.0 + ik * (30.0 * w + V.value(psi.x_at(j), t_half));

  const std::vector<cplx>& f = psi.values;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx fp1 = j + 1 < n ? f[j + 1] : 0.0;
    const cplx fp2 = j + 2 < n ? f[j + 2] : 0.0;
    const cplx fm1 = j >= 1 ? f[j - 1] : 0.0;
    const cplx fm2 = j >= 2 ? f[j - 2] : 0.0;
    const cplx hpsi =
        (30.0 * w + V.value(psi.x_at(j), t_half)) * f[j] + h_off1 * (fp1 + fm1) + h_off2 * (fp2 + fm2);
    rhs[j] = f[j] - ik * hpsi;
  }

  solve_penta(sub2, sub1, diag, sup1, sup2, rhs);

  GridWavefunction out;
  out.values = std::move(rhs);
  out.x_left = psi.x_left;
  out.dx = dx;
  out.t = psi.t + dt;

  const double n0 = wavefunction_norm(psi);
  const double n1 = wavefunction_norm(out);
  if (!std::isfinite(n1) || std::fabs(n1 - n0) > 1e-12 * std::max(1.0, n0))
    throw NumericalError("evolve_cn: norm not preserved within 1e-12");
  return out;
}

double expectation_position(const GridWavefunction& psi) {
  double s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) s += psi.x_at(j) * std::norm(psi.values[j]);
  return s * psi.dx;
}

double expectation_momentum(const GridWavefunction& psi, double hbar) {
  // <-i hbar d/dx> = hbar * Im(sum psi* D psi) dx
  double s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    s += std::imag(std::conj(psi.values[j]) * d1_at(psi.values, j, psi.dx));
  return hbar * s * psi.dx;
}

double expectation_energy(const GridWavefunction& psi, const Potential1D& V, double t, double m,
                          double hbar) {
  const auto hpsi = apply_hamiltonian(psi, V, t, m, hbar);
  cplx s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) s += std::conj(psi.values[j]) * hpsi[j];
  s *= psi.dx;
  if (std::fabs(s.imag()) > 1e-10)
    throw NumericalError("expectation_energy: imaginary part exceeds 1e-10");
  return s.real();
}

double expectation_dVdx(const GridWavefunction& psi, const Potential1D& V, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    s += V.ddx(psi.x_at(j), t) * std::norm(psi.values[j]);
  return s * psi.dx;
}

double expectation_dVdt(const GridWavefunction& psi, const Potential1D& V, double t) {
  double s = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j)
    s += V.ddt(psi.x_at(j), t) * std::norm(psi.values[j]);
  return s * psi.dx;
}

std::complex<double> commutator_expectation(const GridWavefunction& psi, double hbar) {
  // x (p psi) - p (x psi) with p = -i hbar D4
  const std::size_t n = psi.size();
  std::vector<cplx> xpsi(n);
  for (std::size_t j = 0; j < n; ++j) xpsi[j] = psi.x_at(j) * psi.values[j];

  const cplx mih(0.0, -hbar);
  cplx s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cplx p_psi = mih * d1_at(psi.values, j, psi.dx);
    const cplx p_xpsi = mih * d1_at(xpsi, j, psi.dx);
    s += std::conj(psi.values[j]) * (psi.x_at(j) * p_psi - p_xpsi);
  }
  return s * psi.dx;
}

ExpectationRecord record_expectations(const GridWavefunction& psi, const Potential1D& V, double m,
                                      double hbar) {
  ExpectationRecord rec;
  rec.t = psi.t;
  rec.x_mean = expectation_position(psi);
  rec.p_mean = expectation_momentum(psi, hbar);
  rec.energy_mean = expectation_energy(psi, V, psi.t, m, hbar);
  rec.dVdx_mean = expectation_dVdx(psi, V, psi.t);
  rec.dVdt_mean = expectation_dVdt(psi, V, psi.t);
  return rec;
}

EhrenfestReport ehrenfest_check(std::span<const ExpectationRecord> records, double dt, double m) {
  if (records.size() < 3) throw DomainError("ehrenfest_check: need at least three records");
  if (!(dt > 0.0)) throw DomainError("ehrenfest_check: dt must be positive");
  if (!(m > 0.0)) throw DomainError("ehrenfest_check: m must be positive");

  EhrenfestReport rep;
  for (std::size_t k = 1; k + 1 < records.size(); ++k) {
    const auto& a = records[k - 1];
    const auto& b = records[k];
    const auto& c = records[k + 1];
    const double dx_dt = (c.x_mean - a.x_mean) / (2.0 * dt);
    const double dp_dt = (c.p_mean - a.p_mean) / (2.0 * dt);
    const double dE_dt = (c.energy_mean - a.energy_mean) / (2.0 * dt);
    rep.max_position_residual =
        std::max(rep.max_position_residual, std::fabs(dx_dt - b.p_mean / m));
    rep.max_momentum_residual = std::max(rep.max_momentum_residual, std::fabs(dp_dt + b.dVdx_mean));
    rep.max_energy_residual = std::max(rep.max_energy_residual, std::fabs(dE_dt - b.dVdt_mean));
  }
  return rep;
}

double schrodinger_residual(const GridWavefunction& prev, const GridWavefunction& next,
                            const Potential1D& V, double t_mid, double dt, double m, double hbar) {
  if (prev.size() != next.size() || prev.dx != next.dx)
    throw DomainError("schrodinger_residual: grids disagree");
  if (!(dt > 0.0)) throw DomainError("schrodinger_residual: dt must be positive");

  GridWavefunction mid;
  mid.x_left = prev.x_left;
  mid.dx = prev.dx;
  mid.t = t_mid;
  mid.values.resize(prev.size());
  for (std::size_t j = 0; j < prev.size(); ++j)
    mid.values[j] = 0.5 * (prev.values[j] + next.values[j]);

  const auto hmid = apply_hamiltonian(mid, V, t_mid, m, hbar);
  const cplx ih(0.0, hbar);
  double s = 0.0;
  for (std::size_t j = 0; j < prev.size(); ++j) {
    const cplx r = ih * (next.values[j] - prev.values[j]) / dt - hmid[j];
    s += std::norm(r);
  }
  return std::sqrt(s * prev.dx);
}

void write_expectation_csv(std::ostream& os, std::span<const ExpectationRecord> records) {
  std::string line = "t,x_mean,p_mean,energy_mean,dVdx_mean,dVdt_mean\n";
  os.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const auto& r : records) {
    line.clear();
    append_csv_double(line, r.t);
    line += ',';
    append_csv_double(line, r.x_mean);
    line += ',';
    append_csv_double(line, r.p_mean);
    line += ',';
    append_csv_double(line, r.energy_mean);
    line += ',';
    append_csv_double(line, r.dVdx_mean);
    line += ',';
    append_csv_double(line, r.dVdt_mean);
    line += '\n';
    os.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

}  // namespace fourflow
