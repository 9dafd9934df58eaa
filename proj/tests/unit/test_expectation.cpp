#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "eqdense/density.hpp"
#include "eqdense/expectation.hpp"
#include "eqdense/quadrature.hpp"

using namespace eqdense;
using std::numbers::pi;

TEST_CASE("adaptive Gauss-Kronrod") {
  QuadratureConfig cfg;
  const auto r = integrate_adaptive([](double x) { return std::exp(x); }, 0, 1, cfg);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
  const auto s = integrate_adaptive([](double x) { return 1 / std::sqrt(x); }, 0, 1, cfg);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(std::abs(s.value - 2.0) <= s.error + 1e-12);
  cfg.nodes_per_panel = 21;
  const auto k21 = integrate_adaptive([](double x) { return std::cos(x); }, 0, pi / 2, cfg);
  CHECK(k21.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k21.panels >= 1);

  QuadratureConfig bad;
  bad.nodes_per_panel = 9;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = {};
  bad.rel_tol = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  QuadratureConfig tight;
  tight.max_subdivisions = 2;
  tight.rel_tol = 1e-14;
  tight.abs_tol = 1e-16;
  CHECK_FALSE(integrate_adaptive([](double x) { return std::sin(200 * x); }, 0, 10, tight).converged);
}

TEST_CASE("cube and ordered simplex") {
  QuadratureConfig cfg;
  const auto cube = integrate_unit_cube([](const double* u) { return u[0] * u[1] * u[1]; }, 2, cfg);
  CHECK(cube.value == doctest::Approx(1.0 / 6).epsilon(1e-12));
  const auto simplex = integrate_ordered_simplex([](const double*) { return 1.0; }, 3, cfg);
  CHECK(simplex.value == doctest::Approx(1.0 / 6).epsilon(1e-12));
  const auto sym = [](const double* u) { return std::exp(u[0] + u[1] + u[2]); };
  const auto a = integrate_unit_cube(sym, 3, cfg);
  const auto b = integrate_ordered_simplex(sym, 3, cfg);
  CHECK(a.value == doctest::Approx(6 * b.value).epsilon(1e-10));
  CHECK(a.value == doctest::Approx(std::pow(std::exp(1.0) - 1, 3)).epsilon(1e-10));
}

TEST_CASE("E(2,d) against oracles") {
  // mpmath quadrature of the variance form, tests/oracles/compute_oracles.py
  const std::vector<std::pair<int, double>> oracle{{2, 0.5},
                                                   {3, 0.7682955017873410937632104269925874489174},
                                                   {4, 0.979303459664419762661190825392971136455},
                                                   {5, 1.159668076471606240217286958444961467917},
                                                   {8, 1.600488453452146343924849975042732205253},
                                                   {10, 1.84476507340520755673634597458866257263}};
  for (const auto& [d, e] : oracle) {
    const auto r = expected_count_2d(d);
    CHECK(r.value == doctest::Approx(e).epsilon(1e-9));
    CHECK(std::abs(r.value - e) <= 1e-8 + r.error_estimate);
    CHECK(r.error_estimate >= 0);
    CHECK(r.dims == GameDims(2, d));
    CHECK(stable_expected_2d(d).value == doctest::Approx(e / 2).epsilon(1e-9));
    CHECK(bernstein_expected(d).value == doctest::Approx(2 * e).epsilon(1e-9));
    CHECK(stable_expected_2d(d).value <= 0.5 * upper_bound_E2(d));
  }
  CHECK(std::abs(expected_count_2d(2).value - 0.5) < 1e-8);
  CHECK_THROWS_AS(expected_count_2d(1), InvalidArgument);
}

TEST_CASE("explicit bounds on E(2,d)") {
  CHECK(upper_bound_E2(2) == doctest::Approx((1 + std::log(2.0)) / pi));
  CHECK(upper_bound_E2(10) == doctest::Approx(3 / pi * (1 + std::log(2.0) + 0.5 * std::log(9.0))));
  CHECK(lower_bound_E2(2) == doctest::Approx(1 / pi));
  for (int d = 2; d <= 200; d += 3) {
    const auto e = expected_count_2d(d);
    CHECK(lower_bound_E2(d) <= e.value + e.error_estimate);
    CHECK(e.value - e.error_estimate <= upper_bound_E2(d));
    // sqrt(d-1) <~ E_B <~ sqrt(d-1) ln(d-1) with the same constants
    const double eb = bernstein_expected(d).value;
    CHECK(eb >= 2 * lower_bound_E2(d) - 1e-9);
    CHECK(eb <= 2 * upper_bound_E2(d) + 1e-9);
  }
}

TEST_CASE("E(n,d) for n = 3, 4") {
  // scipy dblquad on the u-cube, tests/oracles/compute_oracles.py
  const std::vector<std::pair<int, double>> e3{
      {2, 0.25}, {3, 0.5691540309549779}, {4, 0.918884999458635}, {5, 1.2872915342324247}};
  for (const auto& [d, e] : e3) {
    const auto r = expected_count_nd(GameDims(3, d));
    CHECK(std::abs(r.value - e) <= 1e-8 + r.error_estimate);
  }
  CHECK(std::abs(expected_count_nd(GameDims(4, 2)).value - 0.125) < 1e-6);
  CHECK(std::abs(expected_count_nd(GameDims(2, 2)).value - 0.5) < 1e-8);
  const auto a = expected_count_nd(GameDims(2, 7));
  const auto b = expected_count_2d(7);
  CHECK(std::abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-9);
  CHECK(max_supported_d(3) == 400);
  CHECK(max_supported_d(4) == 20);
  CHECK(max_supported_d(5) == 0);
  CHECK_THROWS_AS(expected_count_nd(GameDims(4, 21)), CapacityError);
  CHECK_THROWS_AS(expected_count_nd(GameDims(5, 2)), CapacityError);
}

TEST_CASE("elliptic oracle through the quadrature") {
  for (int n : {2, 3}) {
    for (int d : {2, 5, 10, 17}) {
      const GameDims dims(n, d);
      const auto density = [&](std::span<const double> t) { return f_elliptic(dims, t); };
      const double exact = std::pow(d - 1.0, (n - 1) / 2.0);
      const auto full = integrate_full_space(dims, density);
      CHECK(std::abs(full.value - exact) / exact < 1e-6);
      // each orthant carries an equal share
      const double share = exact / (1 << (n - 1));
      CHECK(std::abs(integrate_orthant(dims, density).value - share) / share < 1e-6);
      CHECK(std::abs(integrate_orthant_symmetric(dims, density).value - share) / share < 1e-6);
    }
  }
}

TEST_CASE("asymptotic_ratio") {
  CHECK(asymptotic_ratio(2, 10) == doctest::Approx(std::log(expected_count_2d(10).value) / std::log(9.0)));
  CHECK(asymptotic_ratio(2, 10) > 0);
  CHECK_THROWS_AS(asymptotic_ratio(2, 2), InvalidArgument);
}
