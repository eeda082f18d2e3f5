#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "fourflow/geometry.hpp"

namespace fourflow {

// Covariant field tensor components F_{alpha beta} at one event, Gaussian
// units, signature (-,+,+,+). The layout is fixed by requiring that the
// four-force (e/c) F_{alpha beta} rdot^beta with rdot = (c, v) reproduce
//   dpi/dt   = e (E + (v/c) x B)
//   dpi_0/dt = -(e/c) E . v        (so d(energy)/dt = e E . v)
// which gives F_{i0} = E_i, F_{0i} = -E_i, F_{ij} = eps_{ijk} B_k.
struct FieldTensor {
  std::array<std::array<double, 4>, 4> f{};

  double operator()(int alpha, int beta) const { return f[alpha][beta]; }
};

FieldTensor field_tensor_from_EB(const Vec3& E, const Vec3& B);

// Four-force covector (e/c) F_{alpha beta} rdot^beta.
FourCovector force_term(const FieldTensor& F, const FourVector& rdot, double e, double c);

// Field configuration: E and B as functions of position and lab time.
struct FieldConfig {
  std::string id = "zero";
  std::function<std::pair<Vec3, Vec3>(const Vec3&, double)> eb;

  FieldTensor tensor_at(const Vec3& r, double t) const {
    const auto [E, B] = eb(r, t);
    return field_tensor_from_EB(E, B);
  }

  static FieldConfig zero();
  static FieldConfig uniform_E(const Vec3& E);
  static FieldConfig uniform_B(const Vec3& B);
  static FieldConfig crossed(const Vec3& E, const Vec3& B);
  // E(t) = E0 t, B = 0.
  static FieldConfig ramp_E(const Vec3& E0);
  static FieldConfig user(std::function<std::pair<Vec3, Vec3>(const Vec3&, double)> eb,
                          std::string id = "user");
};

}  // namespace fourflow
