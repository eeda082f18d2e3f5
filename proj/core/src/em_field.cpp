#include "fourflow/em_field.hpp"

namespace fourflow {

FieldTensor field_tensor_from_EB(const Vec3& E, const Vec3& B) {
  FieldTensor F;
  F.f[1][0] = E.x;
  F.f[2][0] = E.y;
  F.f[3][0] = E.z;
  F.f[0][1] = -E.x;
  F.f[0][2] = -E.y;
  F.f[0][3] = -E.z;
  F.f[1][2] = B.z;
  F.f[2][1] = -B.z;
  F.f[2][3] = B.x;
  F.f[3][2] = -B.x;
  F.f[3][1] = B.y;
  F.f[1][3] = -B.y;
  return F;
}

FourCovector force_term(const FieldTensor& F, const FourVector& rdot, double e, double c) {
  const double s = e / c;
  const std::array<double, 4> v = {rdot.v0, rdot.v1, rdot.v2, rdot.v3};
  std::array<double, 4> out{};
  for (int a = 0; a < 4; ++a) {
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) acc += F.f[a][b] * v[b];
    out[a] = s * acc;
  }
  return {out[0], out[1], out[2], out[3]};
}

FieldConfig FieldConfig::zero() {
  FieldConfig cfg;
  cfg.id = "zero";
  cfg.eb = [](const Vec3&, double) { return std::pair<Vec3, Vec3>{{}, {}}; };
  return cfg;
}

FieldConfig FieldConfig::uniform_E(const Vec3& E) {
  FieldConfig cfg;
  cfg.id = "uniform_E";
  cfg.eb = [E](const Vec3&, double) { return std::pair<Vec3, Vec3>{E, {}}; };
  return cfg;
}

FieldConfig FieldConfig::uniform_B(const Vec3& B) {
  FieldConfig cfg;
  cfg.id = "uniform_B";
  cfg.eb = [B](const Vec3&, double) { return std::pair<Vec3, Vec3>{{}, B}; };
  return cfg;
}

FieldConfig FieldConfig::crossed(const Vec3& E, const Vec3& B) {
  FieldConfig cfg;
  cfg.id = "crossed";
  cfg.eb = [E, B](const Vec3&, double) { return std::pair<Vec3, Vec3>{E, B}; };
  return cfg;
}

FieldConfig FieldConfig::ramp_E(const Vec3& E0) {
  FieldConfig cfg;
  cfg.id = "ramp_E";
  cfg.eb = [E0](const Vec3&, double t) { return std::pair<Vec3, Vec3>{t * E0, {}}; };
  return cfg;
}

FieldConfig FieldConfig::user(std::function<std::pair<Vec3, Vec3>(const Vec3&, double)> eb,
                              std::string id) {
  FieldConfig cfg;
  cfg.id = std::move(id);
  cfg.eb = std::move(eb);
  return cfg;
}

}  // namespace fourflow
