#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fourflow/geometry.hpp"

namespace fourflow {

// Central-difference gradient of f at x. Step per component:
// h_i = max(1e-6 * |scale_i|, 1e-8). Error O(h^2).
std::vector<double> fd_gradient(const std::function<double(std::span<const double>)>& f,
                                std::span<const double> x, std::span<const double> scale);

// Scalar potential V(r, t) with analytic derivatives.
struct Potential {
  std::string id = "none";
  std::function<double(const Vec3&, double)> value;
  std::function<Vec3(const Vec3&, double)> grad;
  std::function<double(const Vec3&, double)> ddt;

  static Potential none();
  static Potential uniform(double v0);
  // V = g . r
  static Potential linear(const Vec3& g);
  // V = k/2 |r - center|^2
  static Potential harmonic(double k, const Vec3& center = {});
  // V = -sin(omega t) f . r
  static Potential driven_linear(const Vec3& f, double omega);
};

// Refractive index field n(r, t) > 0 with analytic derivatives.
struct IndexField {
  std::string id = "uniform";
  std::function<double(const Vec3&, double)> value;
  std::function<Vec3(const Vec3&, double)> grad;
  std::function<double(const Vec3&, double)> ddt;

  static IndexField uniform(double n0);
  // n = n0 (1 + alpha . r)
  static IndexField linear_gradient(double n0, const Vec3& alpha);
};

// Electromagnetic potentials (Phi, A) in Gaussian units, with the analytic
// derivatives the minimal-coupling Hamiltonian needs. jac_A[i] holds
// dA_j/dr_i over j.
struct GaugePotential {
  std::string id = "none";
  std::function<double(const Vec3&, double)> phi;
  std::function<Vec3(const Vec3&, double)> grad_phi;
  std::function<double(const Vec3&, double)> dphi_dt;
  std::function<Vec3(const Vec3&, double)> A;
  std::function<std::array<Vec3, 3>(const Vec3&, double)> jac_A;
  std::function<Vec3(const Vec3&, double)> dA_dt;

  static GaugePotential none();
  // Symmetric gauge A = (1/2) B x r for a static uniform B.
  static GaugePotential for_uniform_B(const Vec3& B);
  // Phi = -E . r for a static uniform E.
  static GaugePotential for_uniform_E(const Vec3& E);
  static GaugePotential for_crossed(const Vec3& E, const Vec3& B);
  // Phi = -(E0 . r) t, so E(t) = E0 t.
  static GaugePotential for_ramp_E(const Vec3& E0);
};

// A conventional Hamiltonian H(t, r, p): scalar value plus first derivatives.
// Implementations must be pure; derivative defaults fall back to fd_gradient.
class HamiltonianModel {
public:
  virtual ~HamiltonianModel() = default;

  virtual double eval(double t, const Vec3& r, const Vec3& p) const = 0;
  // dH/dr, analytic where available, otherwise central finite differences.
  virtual Vec3 grad_r(double t, const Vec3& r, const Vec3& p) const;
  // dH/dp
  virtual Vec3 grad_p(double t, const Vec3& r, const Vec3& p) const;
  // partial dH/dt at fixed (r, p)
  virtual double eval_dt(double t, const Vec3& r, const Vec3& p) const;

  virtual std::string id() const = 0;
};

// H = |p|^2 / 2m + V(r, t)
std::unique_ptr<HamiltonianModel> make_free_nonrel(double m, Potential pot = Potential::none());

// H = c sqrt(m^2 c^2 + |p|^2) + V(r, t)
std::unique_ptr<HamiltonianModel> make_relativistic(double m, double c,
                                                    Potential pot = Potential::none());

// Minimal coupling, Gaussian units: H = c sqrt(m^2 c^2 + |p - (e/c)A|^2) + e Phi
std::unique_ptr<HamiltonianModel> make_charged_canonical(double m, double c, double e,
                                                         GaugePotential gauge);

// Geometrical optics: H = c |p| / n(r, t). Requires |p| > 0 and n > 0.
std::unique_ptr<HamiltonianModel> make_optics_ray(double c, IndexField index);

// Gradient of the modified Hamiltonian, split by variable. dR is covariant
// (derivatives with respect to r^alpha), dP is contravariant (with respect to
// pi_alpha).
struct ModifiedGradient {
  FourCovector dR;
  FourVector dP;
};

// The modified Hamiltonian on extended phase space:
//   Hm(r^alpha, pi_alpha) = H(t, r, p) + pi_0 c,  with t = r^0 / c.
// Time dependence of H enters only through r^0, which makes the extended
// system autonomous and Hm exactly conserved along its canonical flow.
class ModifiedHamiltonian {
public:
  ModifiedHamiltonian(const HamiltonianModel& model, double c);

  double eval_modified(const PhasePoint& state) const;
  ModifiedGradient grad_modified(const PhasePoint& state) const;

  const HamiltonianModel& model() const { return *model_; }
  double c() const { return c_; }

private:
  const HamiltonianModel* model_;
  double c_;
};

}  // namespace fourflow
