#include "fourflow/geometry.hpp"

#include <cmath>

#include "fourflow/errors.hpp"
#include "fourflow/hamiltonian.hpp"

namespace fourflow {

PhasePoint on_shell_init(double t0, const Vec3& r, const Vec3& p,
                         const HamiltonianModel& model, double c) {
  if (!(c > 0.0)) throw DomainError("on_shell_init: c must be positive");
  if (!std::isfinite(t0) || !isfinite(r) || !isfinite(p))
    throw DomainError("on_shell_init: non-finite initial data");

  const double energy = model.eval(t0, r, p);
  if (!std::isfinite(energy))
    throw NumericalError("on_shell_init: model returned non-finite energy");

  PhasePoint s;
  s.t = t0;
  s.position = {c * t0, r.x, r.y, r.z};
  s.momentum = {-energy / c, p.x, p.y, p.z};
  return s;
}

}  // namespace fourflow
