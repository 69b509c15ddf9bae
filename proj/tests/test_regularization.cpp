#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "angles.hpp"
#include "doctest.h"
#include "dynamics.hpp"
#include "errors.hpp"
#include "integrate.hpp"
#include "regularization.hpp"
#include "sampling.hpp"

using namespace logblock;

namespace {
constexpr double pi = M_PI;

RegState random_admissible(SplitMix64& rng) {
  const double r = std::exp(rng.uniform(std::log(0.05), std::log(10.0)));
  return {r, rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi),
          rng.uniform(-1.0, 1.5)};
}
}  // namespace

// Established numerically, not assumed: with phi measured as position
// direction minus momentum direction, the extended momentum integral equals
// minus the physical angular momentum.
TEST_CASE("momentum sign convention") {
  SplitMix64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double qm = std::exp(rng.uniform(std::log(0.1), std::log(5.0)));
    const double qa = rng.uniform(0.0, two_pi);
    const PhysState s{{qm * std::cos(qa), qm * std::sin(qa)},
                      {rng.uniform(-3, 3), rng.uniform(-3, 3)}};
    if (norm(s.p) < 1e-3) continue;
    const double c_ext = extended_momentum(phys_to_reg(s));
    const double p_theta = cross(s.q, s.p);
    worst = std::fmax(worst, std::fabs(c_ext + p_theta) / std::fmax(1.0, qm));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("extension functions") {
  CHECK(f_ext(0.0) == 0.0);
  CHECK(f_ext(1.0) == 0.0);
  CHECK(f_ext(std::exp(1.0)) == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
  CHECK(f_ext_prime(0.0) == 0.0);
  CHECK(f_ext_prime(1.0) == 1.0);

  CHECK(g_ext(0.0) == 0.0);
  CHECK(g_ext(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(g_ext(0.1) == doctest::Approx(std::exp(-100.0)).epsilon(1e-13));
  CHECK(g_ext(0.03) == 0.0);  // exp(-1/r^2) underflows below r ~ 0.0376

  // continuity of the derivative at 0: f'(r) -> 0
  for (const double r : {1e-12, 1e-9, 1e-6}) {
    CHECK(std::fabs(f_ext_prime(r)) < 1e-4);
    CHECK(g_ext(r) == 0.0);
  }
  // monotone increase of g
  double prev = 0.0;
  for (double r = 0.2; r < 5.0; r += 0.1) {
    CHECK(g_ext(r) >= prev);
    prev = g_ext(r);
  }
}

TEST_CASE("blow-down examples") {
  const PhysState a = reg_to_phys({1.0, 0.0, 0.0, 0.0});
  CHECK(a.q.x == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(a.q.y == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.p.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.p.y == doctest::Approx(0.0).epsilon(1e-15));

  const PhysState b = reg_to_phys({1.0, pi / 2, 0.0, 0.0});
  CHECK(b.q.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b.q.y == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(b.p.x == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(reg_to_phys({0.0, 0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("chart inversion examples") {
  const RegState z = phys_to_reg({{std::exp(-1.0), 0.0}, {1.0, 0.0}});
  CHECK(z.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z.phi == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(z.psi == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(z.w == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(phys_to_reg({{0.0, 0.0}, {1.0, 0.0}}), std::domain_error);
  CHECK_THROWS_AS(phys_to_reg({{1.0, 0.0}, {0.0, 0.0}}), std::domain_error);
}

TEST_CASE("round trip through the blow-up") {
  SplitMix64 rng(2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RegState z = random_admissible(rng);
    const RegState back = phys_to_reg(reg_to_phys(z));
    const double scale = std::fmax(1.0, z.r);
    worst = std::fmax(worst, std::fabs(back.r - z.r) / scale);
    worst = std::fmax(worst, angle_dist(back.phi, z.phi));
    worst = std::fmax(worst, angle_dist(back.psi, z.psi));
    worst = std::fmax(worst, std::fabs(back.w - z.w));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("energy level recovered through the blow-down") {
  SplitMix64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const double r = std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
    const double h = rng.uniform(-1.5, 1.5);
    double w;
    try {
      w = w_from_energy(r, h);
    } catch (const infeasible_error&) {
      continue;  // radius beyond the level's outer bound
    }
    const RegState z{r, rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi), w};
    CHECK(std::fabs(hamiltonian_cartesian(reg_to_phys(z)) - h) < 1e-10);
  }
}

TEST_CASE("field values") {
  // on the collision manifold the field reduces to phi' = 2 sin(phi)
  const double w2 = 0.5 * std::log(2.0);
  for (const double phi : {0.3, 1.2, 2.5, 4.0}) {
    const RegState ds = reg_vector_field({0.0, phi, 0.7, w2});
    CHECK(ds.r == 0.0);
    CHECK(ds.phi == doctest::Approx(2.0 * std::sin(phi)).epsilon(1e-14));
    CHECK(ds.psi == 0.0);
    CHECK(ds.w == 0.0);
  }

  // cos(phi) = 0 freezes r and w, up to the rounding of cos(pi/2)
  SplitMix64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const double r = rng.uniform(0.0, 2.0);
    const double w = rng.uniform(-1.0, 1.0);
    const RegState ds = reg_vector_field({r, pi / 2, rng.uniform(0.0, two_pi), w});
    const double e2w = std::exp(2.0 * w);
    const double slack = 1e-15 * (1.0 + e2w) * (1.0 + r * r * r);
    CHECK(std::fabs(ds.r) < slack);
    CHECK(std::fabs(ds.w) < slack);
    CHECK(ds.phi == doctest::Approx(e2w - r * r).epsilon(1e-14));
    CHECK(ds.psi == doctest::Approx(r * r).epsilon(1e-14));
  }

  const RegState ds = reg_vector_field({1.0, 0.0, 0.0, 0.0});
  CHECK(ds.r == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(ds.phi == 0.0);
  CHECK(ds.psi == 0.0);
  CHECK(ds.w == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("field agrees with the mapped cartesian flow") {
  // central difference of the chart change along the cartesian flow,
  // compared against the field times the time-rescaling rate
  const Field cart = [](double, std::span<const double> y, std::span<double> dy) {
    cartesian_field_eval(y, dy);
  };
  IntegrationConfig config;
  config.rel_tol = config.abs_tol = 1e-13;

  SplitMix64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const double qm = rng.uniform(0.2, 2.0);
    const double qa = rng.uniform(0.0, two_pi);
    const PhysState s{{qm * std::cos(qa), qm * std::sin(qa)},
                      {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)}};
    if (norm(s.p) < 0.2) continue;

    const double y0[4] = {s.q.x, s.q.y, s.p.x, s.p.y};
    const double dt = 1e-6;
    const auto fwd = integrate(cart, y0, 0.0, dt, config);
    const auto bwd = integrate(cart, y0, 0.0, -dt, config);
    const auto yf = fwd.trajectory.state(fwd.trajectory.size() - 1);
    const auto yb = bwd.trajectory.state(bwd.trajectory.size() - 1);
    const RegState zf = phys_to_reg({{yf[0], yf[1]}, {yf[2], yf[3]}});
    const RegState zb = phys_to_reg({{yb[0], yb[1]}, {yb[2], yb[3]}});
    const RegState z = phys_to_reg(s);

    const RegState field = reg_vector_field(z);
    const double rate = time_reparam_rate(z);
    CHECK((zf.r - zb.r) / (2 * dt) ==
          doctest::Approx(field.r * rate).epsilon(1e-6));
    CHECK(wrap_pi(zf.phi - zb.phi) / (2 * dt) ==
          doctest::Approx(field.phi * rate).epsilon(1e-6));
    CHECK(wrap_pi(zf.psi - zb.psi) / (2 * dt) ==
          doctest::Approx(field.psi * rate).epsilon(1e-6));
    CHECK((zf.w - zb.w) / (2 * dt) ==
          doctest::Approx(field.w * rate).epsilon(1e-6));
  }
}

TEST_CASE("energy relation") {
  CHECK(extended_energy_residual({0.0, 1.0, 2.0, 0.5 * std::log(2.0)}, -3.0) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(extended_energy_residual({1.0, 0.0, 0.0, 0.5 * std::log(4.0)}, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-14));

  CHECK(w_from_energy(0.0, -7.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(w_from_energy(1.0, 1.0) == doctest::Approx(0.5 * std::log(4.0)).epsilon(1e-15));
  // value fixed by the relation w = ln(2 (h r^2 - f(r) + 1)) / 2
  CHECK(w_from_energy(0.1, 0.0) ==
        doctest::Approx(0.5 * std::log(2.0 * (1.0 - 0.01 * std::log(0.1))))
            .epsilon(1e-15));
  CHECK_THROWS_AS(w_from_energy(10.0, -5.0), infeasible_error);
}

TEST_CASE("time rescaling rate") {
  CHECK(time_reparam_rate({1.0, 0.0, 0.0, 0.0}) ==
        doctest::Approx(-std::exp(1.0)).epsilon(1e-15));
  SplitMix64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const RegState z = random_admissible(rng);
    const double rate = time_reparam_rate(z);
    CHECK(rate < 0.0);
    CHECK(phys_time_rate(z) == doctest::Approx(1.0 / rate).epsilon(1e-12));
  }
  // divergence toward collision
  CHECK(std::fabs(time_reparam_rate({0.05, 0.0, 0.0, 0.0})) > 1e100);
  CHECK_THROWS_AS(time_reparam_rate({0.0, 0.0, 0.0, 0.0}), std::domain_error);
  // physical time freezes on the manifold
  CHECK(phys_time_rate({0.0, 1.0, 0.0, 0.35}) == 0.0);
}

TEST_CASE("extended momentum") {
  CHECK(extended_momentum({0.0, 1.2, 0.4, 0.35}) == 0.0);
  CHECK(extended_momentum({1.0, pi / 2, 0.0, 0.0}) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("closed-form flow on the collision manifold") {
  CHECK(collision_manifold_solution(pi / 2, 0.0) ==
        doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(collision_manifold_solution(pi / 2, 0.5) ==
        doctest::Approx(2.0 * std::atan(std::exp(1.0))).epsilon(1e-14));
  CHECK(collision_manifold_solution(pi / 2, 500.0) ==
        doctest::Approx(pi).epsilon(1e-12));
  CHECK_THROWS_AS(collision_manifold_solution(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(collision_manifold_solution(pi, 1.0), std::domain_error);

  // numerical oracle: integrate phi' = 2 sin(phi) directly
  const Field scalar = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = 2.0 * std::sin(y[0]);
  };
  IntegrationConfig config;
  const double y0[1] = {pi / 2};
  const auto res = integrate(scalar, y0, 0.0, 0.5, config);
  CHECK(collision_manifold_solution(pi / 2, 0.5) ==
        doctest::Approx(res.trajectory.state(res.trajectory.size() - 1)[0])
            .epsilon(1e-12));
}

TEST_CASE("reversing symmetry") {
  SplitMix64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const RegState z = random_admissible(rng);
    const RegState m = reversing_symmetry(z);
    const RegState mm = reversing_symmetry(m);
    CHECK(angle_dist(mm.phi, z.phi) < 1e-13);
    CHECK(angle_dist(mm.psi, z.psi) < 1e-13);
    CHECK(mm.r == z.r);
    CHECK(mm.w == z.w);

    // conjugates the field to its negative
    const RegState f = reg_vector_field(z);
    const RegState fm = reg_vector_field(m);
    const double scale = std::fmax(1.0, std::exp(2.0 * z.w));
    CHECK(std::fabs(fm.r + f.r) / scale < 1e-13);
    CHECK(std::fabs(fm.phi + f.phi) / scale < 1e-13);
    CHECK(std::fabs(fm.psi + f.psi) / scale < 1e-13);
    CHECK(std::fabs(fm.w + f.w) / scale < 1e-13);
  }
  // maps the phi = 0 ring to the phi = pi ring
  CHECK(reversing_symmetry({0.0, 0.0, 1.0, 0.35}).phi ==
        doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("smooth extension through r = 0") {
  SplitMix64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const double phi = rng.uniform(0.0, two_pi);
    const double psi = rng.uniform(0.0, two_pi);
    const double w = rng.uniform(-0.5, 0.8);
    const RegState at0 = reg_vector_field({0.0, phi, psi, w});
    for (const double r : {1e-8, 1e-6, 1e-4}) {
      const RegState at = reg_vector_field({r, phi, psi, w});
      const double allow = 4.0 * r * r * std::fmax(1.0, std::exp(2.0 * w));
      CHECK(std::fabs(at.r - at0.r) <= allow);
      CHECK(std::fabs(at.phi - at0.phi) <= allow);
      CHECK(std::fabs(at.psi - at0.psi) <= allow);
      CHECK(std::fabs(at.w - at0.w) <= allow);
    }
  }
}

TEST_CASE("radial velocity sign is set by cos(phi)") {
  SplitMix64 rng(10);
  for (int i = 0; i < 500; ++i) {
    const double r = std::exp(rng.uniform(std::log(1e-4), std::log(0.5)));
    const double h = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, two_pi);
    if (std::fabs(std::cos(phi)) < 1e-6) continue;
    const RegState z{r, phi, 0.0, w_from_energy(r, h)};
    CHECK(std::exp(2.0 * z.w) - r * r > 0.0);
    const RegState f = reg_vector_field(z);
    if (std::cos(phi) > 0.0) CHECK(f.r < 0.0);
    if (std::cos(phi) < 0.0) CHECK(f.r > 0.0);
  }
}

TEST_CASE("manifold point embeds with the fixed momentum scale") {
  const RegState z = ManifoldPoint{1.0, 2.0}.state();
  CHECK(z.r == 0.0);
  CHECK(std::fabs(std::exp(2.0 * z.w) - 2.0) < 1e-15);
  CHECK(extended_energy_residual(z, 123.0) == doctest::Approx(0.0).epsilon(1e-15));
}
