#pragma once

#include <array>
#include <cmath>

namespace fourflow {

class HamiltonianModel;

// Plain spatial 3-vector.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline bool isfinite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Metric signature (-,+,+,+): eta_00 = -1, eta_ii = +1.
inline constexpr std::array<double, 4> metric_diag = {-1.0, 1.0, 1.0, 1.0};

// Contravariant space-time position r^alpha = (ct, x, y, z).
struct FourPosition {
  double r0 = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 spatial() const { return {x, y, z}; }
};

// Generic contravariant four-vector a^alpha.
struct FourVector {
  double v0 = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;

  Vec3 spatial() const { return {v1, v2, v3}; }
};

// Covariant four-vector a_alpha. Momenta live here: pi_0 = -energy/c.
struct FourCovector {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  Vec3 spatial() const { return {c1, c2, c3}; }
};

// a^alpha = eta^{alpha beta} a_beta: flips the sign of the 0 component.
inline FourVector raise_index(const FourCovector& a) { return {-a.c0, a.c1, a.c2, a.c3}; }

// a_alpha = eta_{alpha beta} a^beta.
inline FourCovector lower_index(const FourVector& a) { return {-a.v0, a.v1, a.v2, a.v3}; }

// Sum_alpha a^alpha b_alpha. Plain component sum, no metric factor.
inline double minkowski_contract(const FourVector& a, const FourCovector& b) {
  return a.v0 * b.c0 + a.v1 * b.c1 + a.v2 * b.c2 + a.v3 * b.c3;
}

// Full invariant a.a = eta_{alpha beta} a^alpha a^beta.
inline double minkowski_norm2(const FourVector& a) {
  return minkowski_contract(a, lower_index(a));
}

// One point of the extended (8-dimensional) phase space, tagged with the lab
// time used as integration parameter. Invariant: position.r0 == c * t.
struct PhasePoint {
  double t = 0.0;
  FourPosition position;
  FourCovector momentum;

  Vec3 spatial_position() const { return position.spatial(); }
  Vec3 spatial_momentum() const { return momentum.spatial(); }
  // energy = -c * pi_0
  double energy(double c) const { return -momentum.c0 * c; }
};

// Builds a phase point on the dispersion surface: pi_0 = -H(t0, r, p)/c, so the
// modified Hamiltonian H + pi_0 c vanishes at the returned point.
PhasePoint on_shell_init(double t0, const Vec3& r, const Vec3& p,
                         const HamiltonianModel& model, double c);

}  // namespace fourflow
