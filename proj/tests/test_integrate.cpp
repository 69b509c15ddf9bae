#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "integrate.hpp"

using namespace logblock;

namespace {

const Field harmonic = [](double, std::span<const double> y, std::span<double> dy) {
  dy[0] = y[1];
  dy[1] = -y[0];
};

std::span<const double> last_state(const IntegrationResult& res) {
  return res.trajectory.state(res.trajectory.size() - 1);
}

}  // namespace

TEST_CASE("harmonic oscillator returns after one period") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const auto res = integrate(harmonic, y0, 0.0, 2.0 * M_PI, config);
  const auto y = last_state(res);
  CHECK(std::fabs(y[0] - 1.0) < 1e-9);
  CHECK(std::fabs(y[1]) < 1e-9);
  CHECK(res.stop == StopReason::span_completed);
}

TEST_CASE("dense output matches the closed form inside steps") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const auto res = integrate(harmonic, y0, 0.0, 5.0, config);
  std::vector<double> buf(2);
  for (int i = 0; i <= 500; ++i) {
    const double t = 5.0 * i / 500.0;
    res.trajectory.sample(t, buf);
    CHECK(std::fabs(buf[0] - std::cos(t)) < 1e-9);
    CHECK(std::fabs(buf[1] + std::sin(t)) < 1e-9);
  }
  CHECK_THROWS_AS(res.trajectory.sample(5.5, buf), std::out_of_range);
}

TEST_CASE("event location on the dense interpolant") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const EventSpec crossing{
      [](double, std::span<const double> y) { return y[0]; },
      EventDirection::falling, true, 1e-12};
  const auto res = integrate(harmonic, y0, 0.0, 10.0, config, {&crossing, 1});
  REQUIRE(res.stop == StopReason::terminal_event);
  REQUIRE(res.hits.size() == 1);
  CHECK(std::fabs(res.hits[0].tau - M_PI / 2) < 1e-10);
  CHECK(std::fabs(res.hits[0].state[0]) < 1e-12);
  // trajectory is truncated at the hit
  CHECK(res.trajectory.tau_end() == res.hits[0].tau);
}

TEST_CASE("non-terminal events record every crossing") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const EventSpec crossing{
      [](double, std::span<const double> y) { return y[0]; },
      EventDirection::any, false, 1e-12};
  const auto res = integrate(harmonic, y0, 0.0, 4.0 * M_PI, config, {&crossing, 1});
  REQUIRE(res.hits.size() == 4);
  for (std::size_t k = 0; k < res.hits.size(); ++k)
    CHECK(std::fabs(res.hits[k].tau - (M_PI / 2 + k * M_PI)) < 1e-9);
}

TEST_CASE("grazing contact without a sign change is not a hit") {
  // y = (t - 1)^2 touches zero at t = 1 from above
  const Field parabola = [](double t, std::span<const double>, std::span<double> dy) {
    dy[0] = 2.0 * (t - 1.0);
  };
  IntegrationConfig config;
  const double y0[1] = {1.0};
  const EventSpec touch{[](double, std::span<const double> y) { return y[0]; },
                        EventDirection::any, false, 1e-12};
  const auto res = integrate(parabola, y0, 0.0, 2.0, config, {&touch, 1});
  CHECK(res.hits.empty());
}

TEST_CASE("backward spans integrate and events fire") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const EventSpec crossing{
      [](double, std::span<const double> y) { return y[0]; },
      EventDirection::any, true, 1e-12};
  const auto res = integrate(harmonic, y0, 0.0, -10.0, config, {&crossing, 1});
  REQUIRE(res.stop == StopReason::terminal_event);
  CHECK(std::fabs(res.hits[0].tau + M_PI / 2) < 1e-10);
}

TEST_CASE("quadrature components accumulate integrals") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const QuadratureSpec constant{[](double, std::span<const double>) { return 1.0; }};
  const QuadratureSpec cosine{
      [](double, std::span<const double> y) { return y[0]; }};
  const QuadratureSpec specs[2] = {constant, cosine};
  const auto res = integrate_with_quadrature(harmonic, y0, 0.0, 3.0, config,
                                             {specs, 2});
  const auto y = last_state(res);
  CHECK(std::fabs(y[2] - 3.0) < 1e-12);               // integral of 1
  CHECK(std::fabs(y[3] - std::sin(3.0)) < 1e-11);     // integral of cos
}

TEST_CASE("quadrature of an identically-zero integrand is exact") {
  // a state component pinned at zero keeps the accumulator at exactly zero
  const Field frozen = [](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[0];   // stays 0 from a 0 start
    dy[1] = 2.0 * std::sin(y[1]);
  };
  const QuadratureSpec drift{[](double, std::span<const double> y) {
    return y[0] * y[0] * std::sin(y[1]);
  }};
  IntegrationConfig config;
  const double y0[2] = {0.0, 1.0};
  const auto res =
      integrate_with_quadrature(frozen, y0, 0.0, 5.0, config, {&drift, 1});
  const auto y = last_state(res);
  CHECK(y[0] == 0.0);
  CHECK(y[2] == 0.0);
}

TEST_CASE("forward-backward reversibility") {
  IntegrationConfig config;
  const double y0[2] = {0.3, 0.8};
  const auto fwd = integrate(harmonic, y0, 0.0, 37.0, config);
  const auto yf = last_state(fwd);
  const double mid[2] = {yf[0], yf[1]};
  const auto bwd = integrate(harmonic, mid, 37.0, -37.0, config);
  const auto yb = last_state(bwd);
  CHECK(std::fabs(yb[0] - y0[0]) < 1e-8);
  CHECK(std::fabs(yb[1] - y0[1]) < 1e-8);
}

TEST_CASE("tolerance scaling of the endpoint error") {
  // global error of the pair scales roughly linearly with the tolerance;
  // measure the mean reduction per tolerance halving over a wide range
  const double y0[2] = {1.0, 0.0};
  std::vector<double> errs;
  for (int k = 0; k < 16; ++k) {
    IntegrationConfig config;
    config.rel_tol = config.abs_tol = 1e-5 * std::pow(0.5, k);
    const auto res = integrate(harmonic, y0, 0.0, 20.0, config);
    const auto y = last_state(res);
    errs.push_back(std::hypot(y[0] - std::cos(20.0), y[1] + std::sin(20.0)));
  }
  const double factor =
      std::pow(errs.front() / errs.back(), 1.0 / (errs.size() - 1));
  CHECK(factor > 1.6);  // a halving should shrink the error by ~2 (+-20%)
  CHECK(factor < 2.4);
}

TEST_CASE("event times are bit-identical across runs") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const EventSpec crossing{
      [](double, std::span<const double> y) { return y[0]; },
      EventDirection::any, false, 1e-12};
  const auto a = integrate(harmonic, y0, 0.0, 50.0, config, {&crossing, 1});
  const auto b = integrate(harmonic, y0, 0.0, 50.0, config, {&crossing, 1});
  REQUIRE(a.hits.size() == b.hits.size());
  for (std::size_t i = 0; i < a.hits.size(); ++i) {
    CHECK(std::memcmp(&a.hits[i].tau, &b.hits[i].tau, sizeof(double)) == 0);
  }
}

TEST_CASE("failure modes are reported distinctly") {
  const double y0[2] = {1.0, 0.0};
  {
    IntegrationConfig config;
    config.max_steps = 3;
    CHECK_THROWS_AS(integrate(harmonic, y0, 0.0, 100.0, config),
                    MaxStepsExceeded);
  }
  {
    const Field blows_up = [](double t, std::span<const double>,
                              std::span<double> dy) {
      dy[0] = t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
      dy[1] = 0.0;
    };
    IntegrationConfig config;
    config.max_steps = 100000;
    CHECK_THROWS_AS(integrate(blows_up, y0, 0.0, 2.0, config), IntegrationError);
  }
  {
    IntegrationConfig config;
    config.rel_tol = 0.0;  // invalid
    CHECK_THROWS_AS(integrate(harmonic, y0, 0.0, 1.0, config),
                    std::invalid_argument);
  }
}

TEST_CASE("monotone node times and zero-span runs") {
  IntegrationConfig config;
  const double y0[2] = {1.0, 0.0};
  const auto res = integrate(harmonic, y0, 0.0, 7.0, config);
  for (std::size_t i = 1; i < res.trajectory.size(); ++i)
    CHECK(res.trajectory.tau(i) > res.trajectory.tau(i - 1));

  const auto nothing = integrate(harmonic, y0, 1.5, 0.0, config);
  CHECK(nothing.trajectory.size() == 1);
  CHECK(nothing.trajectory.tau(0) == 1.5);
}
