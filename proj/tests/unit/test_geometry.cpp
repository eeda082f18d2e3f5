#include <cmath>
#include <random>

#include "doctest.h"
#include "fourflow/errors.hpp"
#include "fourflow/geometry.hpp"
#include "fourflow/hamiltonian.hpp"

using namespace fourflow;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("metric diagonal is timelike-negative") {
  CHECK(metric_diag[0] == -1.0);
  CHECK(metric_diag[1] == 1.0);
  CHECK(metric_diag[2] == 1.0);
  CHECK(metric_diag[3] == 1.0);
}

TEST_CASE("vec3 algebra") {
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 b{-2.0, 0.5, 4.0};
  CHECK(dot(a, b) == doctest::Approx(11.0));
  CHECK(norm(Vec3{3.0, 4.0, 0.0}) == doctest::Approx(5.0));

  const Vec3 c = cross(a, b);
  // orthogonal to both factors, anticommutes
  CHECK(dot(c, a) == doctest::Approx(0.0));
  CHECK(dot(c, b) == doctest::Approx(0.0));
  const Vec3 d = cross(b, a);
  CHECK(c.x == -d.x);
  CHECK(c.y == -d.y);
  CHECK(c.z == -d.z);

  const Vec3 s = a * 2.0 - b / 2.0;
  CHECK(s.x == doctest::Approx(3.0));
  CHECK(s.y == doctest::Approx(3.75));
  CHECK(s.z == doctest::Approx(4.0));
}

TEST_CASE("raising negates only the time component") {
  const FourCovector w{2.0, 3.0, 4.0, 5.0};
  const FourVector v = raise_index(w);
  CHECK(v.v0 == -2.0);
  CHECK(v.v1 == 3.0);
  CHECK(v.v2 == 4.0);
  CHECK(v.v3 == 5.0);

  const FourCovector back = lower_index(v);
  CHECK(back.c0 == w.c0);
  CHECK(back.c1 == w.c1);
  CHECK(back.c2 == w.c2);
  CHECK(back.c3 == w.c3);
}

TEST_CASE("raise then lower round-trips exactly for random covectors") {
  std::mt19937 rng(20240701);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const FourCovector w{u(rng), u(rng), u(rng), u(rng)};
    const FourCovector back = lower_index(raise_index(w));
    CHECK(back.c0 == w.c0);
    CHECK(back.c1 == w.c1);
    CHECK(back.c2 == w.c2);
    CHECK(back.c3 == w.c3);
  }
}

TEST_CASE("invariant interval signs") {
  // null, timelike, spacelike
  CHECK(minkowski_norm2(FourVector{1.0, 1.0, 0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(minkowski_norm2(FourVector{1.0, 0.0, 0.0, 0.0}) == doctest::Approx(-1.0));
  CHECK(minkowski_norm2(FourVector{0.0, 1.0, 2.0, 2.0}) == doctest::Approx(9.0));
}

TEST_CASE("contraction of vector with covector is the plain component sum") {
  const FourVector v{1.0, 2.0, 3.0, 4.0};
  const FourCovector w{5.0, 6.0, 7.0, 8.0};
  CHECK(minkowski_contract(v, w) == doctest::Approx(5.0 + 12.0 + 21.0 + 32.0));
}

TEST_CASE("energy is minus c times the time momentum component") {
  PhasePoint s;
  s.momentum = {-2.0, 0.0, 0.0, 0.0};
  CHECK(s.energy(3.0) == doctest::Approx(6.0));
}

TEST_CASE("on-shell initialization for a free nonrelativistic particle") {
  const auto model = make_free_nonrel(1.0);
  // H = |p|^2 / 2 = 4.5 for p = (1,2,2)
  const PhasePoint s = on_shell_init(0.25, {1.0, 0.0, 0.0}, {1.0, 2.0, 2.0}, *model, 2.0);
  CHECK(s.t == 0.25);
  CHECK(s.position.r0 == doctest::Approx(0.5));  // c t
  CHECK(s.momentum.c0 == doctest::Approx(-2.25));  // -H / c
  CHECK(s.energy(2.0) == doctest::Approx(4.5));
  CHECK(s.spatial_momentum().x == 1.0);
  CHECK(s.spatial_position().x == 1.0);
}

TEST_CASE("on-shell energy equals the model value for random states") {
  const auto model = make_free_nonrel(1.5, Potential::harmonic(2.0));
  std::mt19937 rng(20240702);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 r{u(rng), u(rng), u(rng)};
    const Vec3 p{u(rng), u(rng), u(rng)};
    const double t0 = u(rng);
    const PhasePoint s = on_shell_init(t0, r, p, *model, 1.0);
    CHECK(s.energy(1.0) == doctest::Approx(model->eval(t0, r, p)).epsilon(1e-12));
    CHECK(s.position.r0 == doctest::Approx(t0));
  }
}

TEST_CASE("on-shell initialization rejects bad input") {
  const auto model = make_free_nonrel(1.0);
  CHECK_THROWS_AS(on_shell_init(0.0, {}, {}, *model, 0.0), DomainError);
  CHECK_THROWS_AS(on_shell_init(0.0, {}, {}, *model, -1.0), DomainError);
  const double nan = std::nan("");
  CHECK_THROWS_AS(on_shell_init(0.0, {nan, 0.0, 0.0}, {}, *model, 1.0), DomainError);
  CHECK_THROWS_AS(on_shell_init(nan, {}, {}, *model, 1.0), DomainError);
}

TEST_SUITE_END();
