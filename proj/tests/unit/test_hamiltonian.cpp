#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fourflow/errors.hpp"
#include "fourflow/hamiltonian.hpp"

using namespace fourflow;

namespace {

// analytic gradients must agree with central differences at random points
void check_grads_match_fd(const HamiltonianModel& model, std::uint32_t seed, double lo, double hi,
                          double tol) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  for (int i = 0; i < 25; ++i) {
    const double t = u(rng);
    const Vec3 r{u(rng), u(rng), u(rng)};
    Vec3 p{u(rng), u(rng), u(rng)};
    if (norm(p) < 0.1) p.x += 1.0;  // keep optics rays away from |p| = 0

    const std::array<double, 3> rx{r.x, r.y, r.z};
    const std::array<double, 3> px{p.x, p.y, p.z};
    const std::array<double, 3> scale{1.0, 1.0, 1.0};

    const auto fr = fd_gradient(
        [&](std::span<const double> v) {
          return model.eval(t, {v[0], v[1], v[2]}, p);
        },
        rx, scale);
    const Vec3 gr = model.grad_r(t, r, p);
    CHECK(gr.x == doctest::Approx(fr[0]).epsilon(tol).scale(1.0));
    CHECK(gr.y == doctest::Approx(fr[1]).epsilon(tol).scale(1.0));
    CHECK(gr.z == doctest::Approx(fr[2]).epsilon(tol).scale(1.0));

    const auto fp = fd_gradient(
        [&](std::span<const double> v) {
          return model.eval(t, r, {v[0], v[1], v[2]});
        },
        px, scale);
    const Vec3 gp = model.grad_p(t, r, p);
    CHECK(gp.x == doctest::Approx(fp[0]).epsilon(tol).scale(1.0));
    CHECK(gp.y == doctest::Approx(fp[1]).epsilon(tol).scale(1.0));
    CHECK(gp.z == doctest::Approx(fp[2]).epsilon(tol).scale(1.0));

    const std::array<double, 1> tx{t};
    const auto ft = fd_gradient(
        [&](std::span<const double> v) { return model.eval(v[0], r, p); }, tx,
        std::array<double, 1>{1.0});
    CHECK(model.eval_dt(t, r, p) == doctest::Approx(ft[0]).epsilon(tol).scale(1.0));
  }
}

}  // namespace

TEST_SUITE_BEGIN("hamiltonian");

TEST_CASE("finite-difference gradient of a polynomial") {
  const auto f = [](std::span<const double> v) { return v[0] * v[0] + 3.0 * v[1]; };
  const std::array<double, 2> x{2.0, 5.0};
  const std::array<double, 2> scale{1.0, 1.0};
  const auto g = fd_gradient(f, x, scale);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("potential catalog values and derivatives") {
  const Vec3 r{1.0, 2.0, 3.0};

  SUBCASE("none and uniform") {
    CHECK(Potential::none().value(r, 0.0) == 0.0);
    CHECK(Potential::uniform(2.5).value(r, 1.0) == 2.5);
    const Vec3 g = Potential::uniform(2.5).grad(r, 1.0);
    CHECK(g.x == 0.0);
  }

  SUBCASE("linear V = g . r") {
    const auto pot = Potential::linear({1.0, -2.0, 0.5});
    CHECK(pot.value(r, 0.0) == doctest::Approx(1.0 - 4.0 + 1.5));
    CHECK(pot.grad(r, 0.0).y == -2.0);
    CHECK(pot.ddt(r, 0.0) == 0.0);
  }

  SUBCASE("harmonic V = k/2 |r - center|^2") {
    const auto pot = Potential::harmonic(2.0, {0.0, 1.0, 1.0});
    CHECK(pot.value(r, 0.0) == doctest::Approx(6.0));
    const Vec3 g = pot.grad(r, 0.0);  // k (r - center)
    CHECK(g.x == doctest::Approx(2.0));
    CHECK(g.y == doctest::Approx(2.0));
    CHECK(g.z == doctest::Approx(4.0));
  }

  SUBCASE("driven V = -sin(omega t) f . r") {
    const auto pot = Potential::driven_linear({1.0, 0.0, 0.0}, 2.0);
    const Vec3 r2{2.0, 0.0, 0.0};
    CHECK(pot.value(r2, 0.3) == doctest::Approx(-1.1292849467900707).epsilon(1e-14));
    CHECK(pot.ddt(r2, 0.3) == doctest::Approx(-3.3013424596387133).epsilon(1e-14));
    CHECK(pot.grad(r2, 0.3).x == doctest::Approx(-std::sin(0.6)).epsilon(1e-14));
  }
}

TEST_CASE("index field catalog") {
  const auto idx = IndexField::linear_gradient(1.5, {0.02, 0.0, 0.0});
  CHECK(idx.value({3.0, 0.0, 0.0}, 0.0) == doctest::Approx(1.59).epsilon(1e-14));
  CHECK(idx.grad({3.0, 0.0, 0.0}, 0.0).x == doctest::Approx(0.03).epsilon(1e-14));
  CHECK(IndexField::uniform(2.0).value({}, 0.0) == 2.0);
}

TEST_CASE("symmetric gauge reproduces its magnetic field") {
  const Vec3 B{0.0, 0.0, 2.0};
  const auto gauge = GaugePotential::for_uniform_B(B);
  const Vec3 r{1.0, 2.0, 0.0};

  const Vec3 A = gauge.A(r, 0.0);  // (1/2) B x r
  CHECK(A.x == doctest::Approx(-2.0));
  CHECK(A.y == doctest::Approx(1.0));
  CHECK(A.z == doctest::Approx(0.0));

  // curl A = B, read off the analytic Jacobian
  const auto J = gauge.jac_A(r, 0.0);
  const Vec3 curl{J[1].z - J[2].y, J[2].x - J[0].z, J[0].y - J[1].x};
  CHECK(curl.x == doctest::Approx(B.x));
  CHECK(curl.y == doctest::Approx(B.y));
  CHECK(curl.z == doctest::Approx(B.z));
  CHECK(gauge.phi(r, 0.0) == 0.0);
}

TEST_CASE("gauge jacobian matches finite differences of A") {
  const auto gauge = GaugePotential::for_crossed({0.3, -0.1, 0.2}, {0.5, 1.0, -2.0});
  const Vec3 r{0.7, -1.3, 2.1};
  const auto J = gauge.jac_A(r, 0.0);
  const double h = 1e-6;
  const auto comp = [](Vec3& v, int i) -> double& { return i == 0 ? v.x : i == 1 ? v.y : v.z; };
  for (int i = 0; i < 3; ++i) {
    Vec3 rp = r, rm = r;
    comp(rp, i) += h;
    comp(rm, i) -= h;
    const Vec3 dA = (gauge.A(rp, 0.0) - gauge.A(rm, 0.0)) / (2.0 * h);
    CHECK(J[i].x == doctest::Approx(dA.x).epsilon(1e-8).scale(1.0));
    CHECK(J[i].y == doctest::Approx(dA.y).epsilon(1e-8).scale(1.0));
    CHECK(J[i].z == doctest::Approx(dA.z).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("ramp gauge: Phi = -(E0 . r) t gives E = E0 t") {
  const Vec3 E0{0.4, 0.0, -0.2};
  const auto gauge = GaugePotential::for_ramp_E(E0);
  const Vec3 r{1.0, 2.0, 3.0};
  const double t = 2.0;
  // E = -grad Phi (A = 0), so grad_phi = -E0 t
  const Vec3 gp = gauge.grad_phi(r, t);
  CHECK(gp.x == doctest::Approx(-0.8));
  CHECK(gp.z == doctest::Approx(0.4));
  CHECK(gauge.dphi_dt(r, t) == doctest::Approx(-(0.4 * 1.0 - 0.2 * 3.0)));
  CHECK(norm(gauge.A(r, t)) == 0.0);
}

TEST_CASE("free nonrelativistic Hamiltonian") {
  const auto model = make_free_nonrel(2.0);
  const Vec3 p{1.0, 2.0, 2.0};
  CHECK(model->eval(0.0, {}, p) == doctest::Approx(2.25));
  const Vec3 gp = model->grad_p(0.0, {}, p);
  CHECK(gp.x == doctest::Approx(0.5));
  CHECK(gp.y == doctest::Approx(1.0));
  CHECK(model->id() == "free_nonrel");
  CHECK_THROWS_AS(make_free_nonrel(0.0), DomainError);
  CHECK_THROWS_AS(make_free_nonrel(-1.0), DomainError);
}

TEST_CASE("relativistic Hamiltonian") {
  const auto model = make_relativistic(1.0, 2.0);
  const Vec3 p{3.0, 0.0, 0.0};
  // c sqrt(m^2 c^2 + |p|^2) = 2 sqrt(13)
  CHECK(model->eval(0.0, {}, p) == doctest::Approx(7.211102550927978).epsilon(1e-15));
  CHECK(model->grad_p(0.0, {}, p).x == doctest::Approx(1.6641005886756874).epsilon(1e-14));
  CHECK(model->id() == "relativistic");
  CHECK_THROWS_AS(make_relativistic(1.0, 0.0), DomainError);

  // nonrelativistic limit: H - m c^2 -> |p|^2 / 2m as c grows
  const auto big_c = make_relativistic(1.0, 1e4);
  const double kin = big_c->eval(0.0, {}, {1.0, 0.0, 0.0}) - 1e8;
  CHECK(kin == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("minimal-coupling Hamiltonian with symmetric gauge") {
  const auto model =
      make_charged_canonical(1.0, 1.0, 1.0, GaugePotential::for_uniform_B({0.0, 0.0, 2.0}));
  const Vec3 r{1.0, 2.0, 0.0};
  const Vec3 p{0.5, 0.5, 0.0};
  // u = p - (e/c) A = (2.5, -0.5, 0), H = sqrt(1 + |u|^2)
  CHECK(model->eval(0.0, r, p) == doctest::Approx(2.7386127875258306).epsilon(1e-15));
  CHECK(model->id() == "charged_canonical");

  // reduces to the free relativistic value when the gauge vanishes
  const auto free_model = make_charged_canonical(1.0, 1.0, 1.0, GaugePotential::none());
  const auto rel = make_relativistic(1.0, 1.0);
  CHECK(free_model->eval(0.0, r, p) == doctest::Approx(rel->eval(0.0, r, p)).epsilon(1e-15));
}

TEST_CASE("optics Hamiltonian H = c |p| / n") {
  const auto model = make_optics_ray(1.0, IndexField::linear_gradient(1.5, {0.02, 0.0, 0.0}));
  const Vec3 r{3.0, 0.0, 0.0};
  const Vec3 p{0.6, 0.8, 0.0};  // |p| = 1
  CHECK(model->eval(0.0, r, p) == doctest::Approx(0.6289308176100629).epsilon(1e-14));
  CHECK(model->id() == "optics_ray");
  CHECK_THROWS_AS(model->eval(0.0, r, {0.0, 0.0, 0.0}), DomainError);

  const auto bad = make_optics_ray(1.0, IndexField::linear_gradient(1.0, {-1.0, 0.0, 0.0}));
  CHECK_THROWS_AS(bad->eval(0.0, {2.0, 0.0, 0.0}, p), DomainError);  // n = -1
}

TEST_CASE("analytic gradients agree with finite differences") {
  check_grads_match_fd(*make_free_nonrel(1.3, Potential::harmonic(0.7, {0.2, 0.0, -0.1})),
                       20240703, -2.0, 2.0, 1e-5);
  check_grads_match_fd(*make_free_nonrel(1.0, Potential::driven_linear({0.2, 0.1, 0.0}, 1.7)),
                       20240704, -2.0, 2.0, 1e-5);
  check_grads_match_fd(*make_relativistic(0.8, 1.4, Potential::linear({0.3, -0.2, 0.1})),
                       20240705, -2.0, 2.0, 1e-5);
  check_grads_match_fd(
      *make_charged_canonical(1.0, 1.2, 0.7,
                              GaugePotential::for_crossed({0.1, 0.2, -0.3}, {0.4, -0.5, 0.6})),
      20240706, -2.0, 2.0, 1e-5);
  check_grads_match_fd(*make_charged_canonical(1.0, 1.0, 1.0, GaugePotential::for_ramp_E(
                                                                  {0.2, -0.1, 0.05})),
                       20240707, -2.0, 2.0, 1e-5);
  check_grads_match_fd(*make_optics_ray(1.0, IndexField::linear_gradient(2.0, {0.05, 0.02, 0.0})),
                       20240708, -2.0, 2.0, 1e-5);
}

TEST_CASE("modified Hamiltonian vanishes on shell and grows with pi0") {
  const auto model = make_free_nonrel(1.0, Potential::harmonic(1.0));
  const ModifiedHamiltonian mh(*model, 2.0);
  CHECK(mh.c() == 2.0);

  const PhasePoint s = on_shell_init(0.5, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, *model, 2.0);
  CHECK(mh.eval_modified(s) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  PhasePoint off = s;
  off.momentum.c0 += 0.25;
  CHECK(mh.eval_modified(off) == doctest::Approx(0.5).epsilon(1e-14));  // + c * delta
}

TEST_CASE("modified gradient: time slot carries dH/dt / c and exactly c") {
  const auto model = make_free_nonrel(1.0, Potential::driven_linear({1.0, 0.0, 0.0}, 2.0));
  const ModifiedHamiltonian mh(*model, 2.0);
  const PhasePoint s = on_shell_init(0.3, {2.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, *model, 2.0);

  const ModifiedGradient g = mh.grad_modified(s);
  CHECK(g.dP.v0 == 2.0);  // dHm/dpi_0 = c identically
  // dHm/dr^0 = (dH/dt) / c at t = r0 / c
  CHECK(g.dR.c0 == doctest::Approx(-3.3013424596387133 / 2.0).epsilon(1e-12));
  // spatial parts match the conventional gradients
  const Vec3 gr = model->grad_r(0.3, {2.0, 0.0, 0.0}, {0.0, 0.0, 0.0});
  CHECK(g.dR.c1 == doctest::Approx(gr.x).epsilon(1e-14));
}

TEST_SUITE_END();
