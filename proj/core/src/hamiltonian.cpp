#include "fourflow/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "fourflow/errors.hpp"

namespace fourflow {

std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, std::span<const double> scale) {
  if (x.size() != scale.size())
    throw DomainError("fd_gradient: x and scale must have the same length");

  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = std::max(1e-6 * std::fabs(scale[i]), 1e-8);
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
    if (!std::isfinite(g[i])) throw NumericalError("fd_gradient: non-finite difference quotient");
  }
  return g;
}

namespace {

// Shared finite-difference fallback over a 3-vector argument.
Vec3 fd_grad3(const std::function<double(const Vec3&)>& f, const Vec3& v) {
  const double x[3] = {v.x, v.y, v.z};
  auto wrap = [&f](std::span<const double> q) { return f({q[0], q[1], q[2]}); };
  const auto g = fd_gradient(wrap, std::span<const double>(x, 3), std::span<const double>(x, 3));
  return {g[0], g[1], g[2]};
}

double fd_ddt(const std::function<double(double)>& f, double t) {
  auto wrap = [&f](std::span<const double> q) { return f(q[0]); };
  const double x[1] = {t};
  return fd_gradient(wrap, std::span<const double>(x, 1), std::span<const double>(x, 1))[0];
}

}  // namespace

Vec3 HamiltonianModel::grad_r(double t, const Vec3& r, const Vec3& p) const {
  return fd_grad3([&](const Vec3& q) { return eval(t, q, p); }, r);
}

Vec3 HamiltonianModel::grad_p(double t, const Vec3& r, const Vec3& p) const {
  return fd_grad3([&](const Vec3& q) { return eval(t, r, q); }, p);
}

double HamiltonianModel::eval_dt(double t, const Vec3& r, const Vec3& p) const {
  return fd_ddt([&](double s) { return eval(s, r, p); }, t);
}

// ---------------------------------------------------------------------------
// Potential catalog

Potential Potential::none() {
  Potential v;
  v.id = "none";
  v.value = [](const Vec3&, double) { return 0.0; };
  v.grad = [](const Vec3&, double) { return Vec3{}; };
  v.ddt = [](const Vec3&, double) { return 0.0; };
  return v;
}

Potential Potential::uniform(double v0) {
  Potential v;
  v.id = "uniform";
  v.value = [v0](const Vec3&, double) { return v0; };
  v.grad = [](const Vec3&, double) { return Vec3{}; };
  v.ddt = [](const Vec3&, double) { return 0.0; };
  return v;
}

Potential Potential::linear(const Vec3& g) {
  Potential v;
  v.id = "linear";
  v.value = [g](const Vec3& r, double) { return dot(g, r); };
  v.grad = [g](const Vec3&, double) { return g; };
  v.ddt = [](const Vec3&, double) { return 0.0; };
  return v;
}

Potential Potential::harmonic(double k, const Vec3& center) {
  Potential v;
  v.id = "harmonic";
  v.value = [k, center](const Vec3& r, double) { return 0.5 * k * norm2(r - center); };
  v.grad = [k, center](const Vec3& r, double) { return k * (r - center); };
  v.ddt = [](const Vec3&, double) { return 0.0; };
  return v;
}

Potential Potential::driven_linear(const Vec3& f, double omega) {
  Potential v;
  v.id = "driven_linear";
  v.value = [f, omega](const Vec3& r, double t) { return -std::sin(omega * t) * dot(f, r); };
  v.grad = [f, omega](const Vec3&, double t) { return -std::sin(omega * t) * f; };
  v.ddt = [f, omega](const Vec3& r, double t) {
    return -omega * std::cos(omega * t) * dot(f, r);
  };
  return v;
}

// ---------------------------------------------------------------------------
// Refractive index catalog

IndexField IndexField::uniform(double n0) {
  IndexField n;
  n.id = "uniform";
  n.value = [n0](const Vec3&, double) { return n0; };
  n.grad = [](const Vec3&, double) { return Vec3{}; };
  n.ddt = [](const Vec3&, double) { return 0.0; };
  return n;
}

IndexField IndexField::linear_gradient(double n0, const Vec3& alpha) {
  IndexField n;
  n.id = "linear_gradient";
  n.value = [n0, alpha](const Vec3& r, double) { return n0 * (1.0 + dot(alpha, r)); };
  n.grad = [n0, alpha](const Vec3&, double) { return n0 * alpha; };
  n.ddt = [](const Vec3&, double) { return 0.0; };
  return n;
}

// ---------------------------------------------------------------------------
// Gauge potential catalog

namespace {

GaugePotential zero_gauge() {
  GaugePotential g;
  g.phi = [](const Vec3&, double) { return 0.0; };
  g.grad_phi = [](const Vec3&, double) { return Vec3{}; };
  g.dphi_dt = [](const Vec3&, double) { return 0.0; };
  g.A = [](const Vec3&, double) { return Vec3{}; };
  g.jac_A = [](const Vec3&, double) { return std::array<Vec3, 3>{}; };
  g.dA_dt = [](const Vec3&, double) { return Vec3{}; };
  return g;
}

}  // namespace

GaugePotential GaugePotential::none() {
  GaugePotential g = zero_gauge();
  g.id = "none";
  return g;
}

GaugePotential GaugePotential::for_uniform_B(const Vec3& B) {
  GaugePotential g = zero_gauge();
  g.id = "uniform_B";
  g.A = [B](const Vec3& r, double) { return 0.5 * cross(B, r); };
  // dA_j/dr_i = (1/2) eps_{jki} B_k, i.e. row i is (1/2) B x e_i.
  g.jac_A = [B](const Vec3&, double) {
    return std::array<Vec3, 3>{0.5 * cross(B, Vec3{1, 0, 0}), 0.5 * cross(B, Vec3{0, 1, 0}),
                               0.5 * cross(B, Vec3{0, 0, 1})};
  };
  return g;
}

GaugePotential GaugePotential::for_uniform_E(const Vec3& E) {
  GaugePotential g = zero_gauge();
  g.id = "uniform_E";
  g.phi = [E](const Vec3& r, double) { return -dot(E, r); };
  g.grad_phi = [E](const Vec3&, double) { return -E; };
  return g;
}

GaugePotential GaugePotential::for_crossed(const Vec3& E, const Vec3& B) {
  GaugePotential g = for_uniform_B(B);
  g.id = "crossed";
  g.phi = [E](const Vec3& r, double) { return -dot(E, r); };
  g.grad_phi = [E](const Vec3&, double) { return -E; };
  return g;
}

GaugePotential GaugePotential::for_ramp_E(const Vec3& E0) {
  GaugePotential g = zero_gauge();
  g.id = "ramp_E";
  g.phi = [E0](const Vec3& r, double t) { return -dot(E0, r) * t; };
  g.grad_phi = [E0](const Vec3&, double t) { return -t * E0; };
  g.dphi_dt = [E0](const Vec3& r, double) { return -dot(E0, r); };
  return g;
}

// ---------------------------------------------------------------------------
// Built-in models

namespace {

class FreeNonRel final : public HamiltonianModel {
public:
  FreeNonRel(double m, Potential pot) : m_(m), pot_(std::move(pot)) {
    if (!(m > 0.0)) throw DomainError("free_nonrel: m must be positive");
  }

  double eval(double t, const Vec3& r, const Vec3& p) const override {
    return norm2(p) / (2.0 * m_) + pot_.value(r, t);
  }
  Vec3 grad_r(double t, const Vec3& r, const Vec3&) const override { return pot_.grad(r, t); }
  Vec3 grad_p(double, const Vec3&, const Vec3& p) const override { return p / m_; }
  double eval_dt(double t, const Vec3& r, const Vec3&) const override { return pot_.ddt(r, t); }
  std::string id() const override { return "free_nonrel"; }

private:
  double m_;
  Potential pot_;
};

class Relativistic final : public HamiltonianModel {
public:
  Relativistic(double m, double c, Potential pot) : m_(m), c_(c), pot_(std::move(pot)) {
    if (!(m > 0.0)) throw DomainError("relativistic: m must be positive");
    if (!(c > 0.0)) throw DomainError("relativistic: c must be positive");
  }

  double eval(double t, const Vec3& r, const Vec3& p) const override {
    return kinetic(p) + pot_.value(r, t);
  }
  Vec3 grad_r(double t, const Vec3& r, const Vec3&) const override { return pot_.grad(r, t); }
  Vec3 grad_p(double, const Vec3&, const Vec3& p) const override {
    // dH/dp = c^2 p / eps_kin, the particle velocity.
    return (c_ * c_ / kinetic(p)) * p;
  }
  double eval_dt(double t, const Vec3& r, const Vec3&) const override { return pot_.ddt(r, t); }
  std::string id() const override { return "relativistic"; }

private:
  double kinetic(const Vec3& p) const { return c_ * std::sqrt(m_ * m_ * c_ * c_ + norm2(p)); }

  double m_, c_;
  Potential pot_;
};

class ChargedCanonical final : public HamiltonianModel {
public:
  ChargedCanonical(double m, double c, double e, GaugePotential gauge)
      : m_(m), c_(c), e_(e), gauge_(std::move(gauge)) {
    if (!(m > 0.0)) throw DomainError("charged_canonical: m must be positive");
    if (!(c > 0.0)) throw DomainError("charged_canonical: c must be positive");
  }

  double eval(double t, const Vec3& r, const Vec3& p) const override {
    return kinetic(r, t, p) + e_ * gauge_.phi(r, t);
  }

  Vec3 grad_r(double t, const Vec3& r, const Vec3& p) const override {
    // dH/dr_i = -(e/c) v . dA/dr_i + e dPhi/dr_i, with v = c^2 u / eps_kin.
    const Vec3 v = velocity(r, t, p);
    const auto jac = gauge_.jac_A(r, t);
    const Vec3 gphi = gauge_.grad_phi(r, t);
    return {-(e_ / c_) * dot(v, jac[0]) + e_ * gphi.x,
            -(e_ / c_) * dot(v, jac[1]) + e_ * gphi.y,
            -(e_ / c_) * dot(v, jac[2]) + e_ * gphi.z};
  }

  Vec3 grad_p(double t, const Vec3& r, const Vec3& p) const override {
    return velocity(r, t, p);
  }

  double eval_dt(double t, const Vec3& r, const Vec3& p) const override {
    const Vec3 v = velocity(r, t, p);
    return -(e_ / c_) * dot(v, gauge_.dA_dt(r, t)) + e_ * gauge_.dphi_dt(r, t);
  }

  std::string id() const override { return "charged_canonical"; }

private:
  Vec3 kinetic_momentum(const Vec3& r, double t, const Vec3& p) const {
    return p - (e_ / c_) * gauge_.A(r, t);
  }
  double kinetic(const Vec3& r, double t, const Vec3& p) const {
    return c_ * std::sqrt(m_ * m_ * c_ * c_ + norm2(kinetic_momentum(r, t, p)));
  }
  Vec3 velocity(const Vec3& r, double t, const Vec3& p) const {
    const Vec3 u = kinetic_momentum(r, t, p);
    return (c_ * c_ / kinetic(r, t, p)) * u;
  }

  double m_, c_, e_;
  GaugePotential gauge_;
};

class OpticsRay final : public HamiltonianModel {
public:
  OpticsRay(double c, IndexField index) : c_(c), index_(std::move(index)) {
    if (!(c > 0.0)) throw DomainError("optics_ray: c must be positive");
  }

  double eval(double t, const Vec3& r, const Vec3& p) const override {
    return c_ * checked_norm(p) / checked_index(r, t);
  }
  Vec3 grad_r(double t, const Vec3& r, const Vec3& p) const override {
    const double n = checked_index(r, t);
    return (-c_ * checked_norm(p) / (n * n)) * index_.grad(r, t);
  }
  Vec3 grad_p(double t, const Vec3& r, const Vec3& p) const override {
    return (c_ / (checked_index(r, t) * checked_norm(p))) * p;
  }
  double eval_dt(double t, const Vec3& r, const Vec3& p) const override {
    const double n = checked_index(r, t);
    return (-c_ * checked_norm(p) / (n * n)) * index_.ddt(r, t);
  }
  std::string id() const override { return "optics_ray"; }

private:
  static double checked_norm(const Vec3& p) {
    const double np = norm(p);
    if (!(np > 0.0)) throw DomainError("optics_ray: |p| must be positive (ray direction undefined)");
    return np;
  }
  double checked_index(const Vec3& r, double t) const {
    const double n = index_.value(r, t);
    if (!(n > 0.0)) throw DomainError("optics_ray: refractive index must be positive");
    return n;
  }

  double c_;
  IndexField index_;
};

}  // namespace

std::unique_ptr<HamiltonianModel> make_free_nonrel(double m, Potential pot) {
  return std::make_unique<FreeNonRel>(m, std::move(pot));
}

std::unique_ptr<HamiltonianModel> make_relativistic(double m, double c, Potential pot) {
  return std::make_unique<Relativistic>(m, c, std::move(pot));
}

std::unique_ptr<HamiltonianModel> make_charged_canonical(double m, double c, double e,
                                                         GaugePotential gauge) {
  return std::make_unique<ChargedCanonical>(m, c, e, std::move(gauge));
}

std::unique_ptr<HamiltonianModel> make_optics_ray(double c, IndexField index) {
  return std::make_unique<OpticsRay>(c, std::move(index));
}

// ---------------------------------------------------------------------------
// Modified Hamiltonian

ModifiedHamiltonian::ModifiedHamiltonian(const HamiltonianModel& model, double c)
    : model_(&model), c_(c) {
  if (!(c > 0.0)) throw DomainError("ModifiedHamiltonian: c must be positive");
}

double ModifiedHamiltonian::eval_modified(const PhasePoint& state) const {
  // t is read off r^0, not the integration parameter; see class comment.
  const double t = state.position.r0 / c_;
  const double h = model_->eval(t, state.position.spatial(), state.momentum.spatial());
  return h + state.momentum.c0 * c_;
}

ModifiedGradient ModifiedHamiltonian::grad_modified(const PhasePoint& state) const {
  const double t = state.position.r0 / c_;
  const Vec3 r = state.position.spatial();
  const Vec3 p = state.momentum.spatial();

  const Vec3 dr = model_->grad_r(t, r, p);
  const Vec3 dp = model_->grad_p(t, r, p);
  // dHm/dr^0 = (1/c) dH/dt;  dHm/dpi_0 = c identically.
  const double dr0 = model_->eval_dt(t, r, p) / c_;

  ModifiedGradient g;
  g.dR = {dr0, dr.x, dr.y, dr.z};
  g.dP = {c_, dp.x, dp.y, dp.z};
  return g;
}

}  // namespace fourflow
