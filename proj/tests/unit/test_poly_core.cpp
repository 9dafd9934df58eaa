#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "eqdense/combinatorics.hpp"
#include "eqdense/density.hpp"
#include "eqdense/legendre.hpp"
#include "eqdense/moments.hpp"
#include "eqdense/polynomial.hpp"

using namespace eqdense;

TEST_CASE("polynomial normalisation and arithmetic") {
  RationalPoly z{mpq_class(0), mpq_class(0)};
  CHECK(z.is_zero());
  CHECK(z.degree() == kZeroPolyDegree);

  RationalPoly p{mpq_class(2, 4), mpq_class(0), mpq_class(3, 9)};
  CHECK(p.coeff(0) == mpq_class(1, 2));
  CHECK(p.coeff(0).get_den() == 2);
  CHECK(p.coeff(2).get_den() == 3);

  const IntegerPoly a{-1, 1};  // t - 1
  const IntegerPoly b{1, 1};   // t + 1
  CHECK(a * b == IntegerPoly{-1, 0, 1});
  CHECK((a + b) == IntegerPoly{0, 2});
  CHECK((a - a).is_zero());
  CHECK((a * b).derivative() == IntegerPoly{0, 2});
  CHECK(IntegerPoly{1, 2, 3}.reversed() == IntegerPoly{3, 2, 1});
  CHECK(IntegerPoly{1, 2, 3}.reflected() == IntegerPoly{1, -2, 3});

  const RealPoly r{0.1, -2.5, 3.0};
  CHECK(to_real(to_rational(r)) == r);
  CHECK(r(2.0) == doctest::Approx(0.1 - 5.0 + 12.0));

  const auto [q, rem] = divmod(RationalPoly{mpq_class(-1), mpq_class(0), mpq_class(1)}, RationalPoly{mpq_class(-1), mpq_class(1)});
  CHECK(q == RationalPoly{mpq_class(1), mpq_class(1)});
  CHECK(rem.is_zero());
  CHECK_THROWS_AS(divmod(q, RationalPoly{}), InvalidArgument);
}

TEST_CASE("exact helpers") {
  const IntegerPoly p{6, -12, 18};
  CHECK(content(p) == 6);
  CHECK(primitive_part(p) == IntegerPoly{1, -2, 3});
  CHECK(primitive_integer(RationalPoly{mpq_class(1, 2), mpq_class(-1, 3)}) == IntegerPoly{-3, 2});
  CHECK(gcd(IntegerPoly{-1, 0, 1}, IntegerPoly{1, 2, 1}) == IntegerPoly{1, 1});
  CHECK(exact_divide(IntegerPoly{-1, 0, 1}, IntegerPoly{1, 1}) == IntegerPoly{-1, 1});
  CHECK_THROWS(exact_divide(IntegerPoly{1, 0, 1}, IntegerPoly{1, 1}));
  CHECK(sign_at(IntegerPoly{-2, 0, 1}, mpq_class(3, 2)) == 1);
  CHECK(sign_at(IntegerPoly{-2, 0, 1}, mpq_class(7, 5)) == -1);
  CHECK(sign_at(IntegerPoly{-1, 1}, mpq_class(1)) == 0);
}

TEST_CASE("multinomial") {
  const std::vector<int> k1{1};
  CHECK(multinomial(2, k1) == 2);
  const std::vector<int> k2{2, 1};
  CHECK(multinomial(4, k2) == 12);
  CHECK(multinomial(0, std::vector<int>{}) == 1);
  CHECK(multinomial(30, std::vector<int>{10, 10}) == mpz_class("5550996791340"));
  CHECK(log_multinomial(4, k2) == doctest::Approx(std::log(12.0)).epsilon(1e-14));
  CHECK_THROWS_AS(multinomial(2, std::vector<int>{-1}), InvalidArgument);
  CHECK_THROWS_AS(multinomial(2, std::vector<int>{2, 1}), InvalidArgument);
}

TEST_CASE("m_poly") {
  CHECK(m_poly(2) == IntegerPoly{1, 1});
  CHECK(m_poly(3) == IntegerPoly{1, 4, 1});
  CHECK(m_poly(4) == IntegerPoly{1, 9, 9, 1});
  for (int d = 2; d <= 40; ++d) {
    const auto m = m_poly(d);
    REQUIRE(m.degree() == d - 1);
    for (int k = 0; k < d; ++k) CHECK(m.coeff(k) == m.coeff(d - 1 - k));
  }
  CHECK(m_poly(1) == IntegerPoly{1});
  CHECK_THROWS_AS(m_poly(0), InvalidArgument);
}

TEST_CASE("exponent table") {
  CHECK(exponent_count(2, 1) == 3);
  CHECK(exponent_count(2, 4) == 15);
  CHECK(exponent_count(3, 19) == 1540);
  const ExponentTable t(2, 2);
  REQUIRE(t.size() == 6);
  for (std::size_t r = 0; r < t.size(); ++r) CHECK(t.index_of(t[r]) == r);
  for (std::size_t r = 1; r < t.size(); ++r) {
    const auto a = t[r - 1], b = t[r];
    CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("legendre_eval") {
  CHECK(legendre_eval(2, 3.0).p == 13.0);
  CHECK(legendre_eval(4, 1.0).p == 1.0);
  CHECK(legendre_eval(3, 2.0).p == 17.0);
  CHECK(legendre_eval(0, 5.0).p == 1.0);
  for (int d = 1; d <= 200; ++d) {
    CHECK(legendre_eval(d, 1.0).p == 1.0);
    CHECK(legendre_eval(d, 1.0).dp == doctest::Approx(d * (d + 1) / 2.0));
    CHECK(legendre_eval(d, -1.0).p == (d % 2 == 0 ? 1.0 : -1.0));
  }
  // recurrence consistency on [1, 50]
  double worst = 0;
  for (int d = 1; d < 200; ++d) {
    for (double x = 1; x <= 50; x += 0.5) {
      const auto a = legendre_eval<long double>(d + 1, x);
      const auto b = legendre_eval<long double>(d - 1, x);
      const long double lhs = (d + 1) * a.p;
      const long double rhs = (2 * d + 1) * x * a.p_prev - d * b.p;
      worst = std::max(worst, static_cast<double>(std::abs(lhs - rhs) / std::abs(lhs)));
    }
  }
  CHECK(worst < 1e-12);
  // first-derivative relation away from |x| = 1
  for (int d : {2, 5, 17}) {
    for (double x : {-3.0, -0.5, 0.3, 1.7, 4.0}) {
      const auto v = legendre_eval(d, x);
      CHECK(v.dp == doctest::Approx(d / (x * x - 1) * (x * v.p - v.p_prev)).epsilon(1e-12));
    }
  }
  // derivative near x = 1 against the closed form of P_3' = (15 x^2 - 3) / 2
  const double x = 1 + 1e-9;
  CHECK(legendre_eval(3, x).dp == doctest::Approx((15 * x * x - 3) / 2).epsilon(1e-12));
  CHECK_FALSE(std::isfinite(legendre_eval(400, 1e4).p));
  CHECK_THROWS_AS(legendre_eval(-1, 1.0), InvalidArgument);
}

TEST_CASE("legendre_ratios") {
  for (int d : {1, 3, 10, 60}) {
    for (double x : {1.0, 1.001, 2.0, 25.0}) {
      const auto v = legendre_eval<long double>(d, x);
      const auto r = legendre_ratios<long double>(d, x);
      CHECK(static_cast<double>(r.ratio) == doctest::Approx(static_cast<double>(v.p_prev / v.p)).epsilon(1e-13));
      CHECK(static_cast<double>(r.log_derivative) == doctest::Approx(static_cast<double>(v.dp / v.p)).epsilon(1e-12));
    }
  }
  // stays finite where P_d itself overflows a double
  const auto r = legendre_ratios(2000, 1e3);
  CHECK(std::isfinite(r.ratio));
  CHECK(std::isfinite(r.log_derivative));
  CHECK_THROWS_AS(legendre_ratios(3, 0.5), InvalidArgument);
}

TEST_CASE("legendre_identity_residual") {
  CHECK(legendre_identity_residual(2, 0.5) < 1e-12);
  CHECK(legendre_identity_residual(1, 0.0) == 0.0);
  CHECK(legendre_identity_residual(10, 0.9) < 1e-10);
  for (int d = 0; d <= 50; ++d) {
    for (double t : {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
      CHECK(legendre_identity_residual(d, t) < 1e-10);
    }
  }
  CHECK_THROWS_AS(legendre_identity_residual(3, 1.0), InvalidArgument);
  CHECK_THROWS_AS(legendre_identity_residual(3, -0.1), InvalidArgument);
}

TEST_CASE("weighted_moments examples") {
  {
    const std::vector<double> t{1.0};
    const auto m = weighted_moments(GameDims(2, 2), t);
    CHECK(std::exp(m.log_s) == doctest::Approx(2.0));
    CHECK(m.mean[0] == doctest::Approx(0.5));
    CHECK(m.second[0] == doctest::Approx(0.5));
  }
  {
    const std::vector<double> t{1.0};
    const auto m = weighted_moments(GameDims(2, 3), t);
    CHECK(std::exp(m.log_s) == doctest::Approx(6.0));
    CHECK(m.mean[0] == doctest::Approx(1.0));
    CHECK(m.second[0] == doctest::Approx(4.0 / 3.0));
  }
  {
    const std::vector<double> t{1.0, 1.0};
    const auto m = weighted_moments(GameDims(3, 2), t);
    CHECK(std::exp(m.log_s) == doctest::Approx(3.0));
    CHECK(m.mean[0] == doctest::Approx(1.0 / 3.0));
    CHECK(m.mean[1] == doctest::Approx(1.0 / 3.0));
  }
  CHECK_THROWS_AS(weighted_moments(GameDims(2, 3), std::vector<double>{0.0}), InvalidArgument);
  CHECK_THROWS_AS(weighted_moments(GameDims(2, 3), std::vector<double>{1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(weighted_moments(GameDims(4, 30), std::vector<double>{1, 1, 1}, 1000), CapacityError);
}

TEST_CASE("weighted_moments: linear and log routes agree, covariance is PSD") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> nd(2, 4), dd(2, 20);
  std::uniform_real_distribution<double> lt(-3, 3);
  for (int rep = 0; rep < 200; ++rep) {
    const GameDims dims(nd(rng), dd(rng));
    std::vector<double> t(static_cast<std::size_t>(dims.coords()));
    for (auto& v : t) v = std::exp(lt(rng));
    const auto a = MomentKernel(dims).evaluate(t);
    const auto b = MomentKernel(dims, kDefaultMaxTerms, true).evaluate(t);
    CHECK(a.log_s == doctest::Approx(b.log_s).epsilon(1e-12));
    const int n = dims.coords();
    for (int i = 0; i < n; ++i) {
      CHECK(a.mean[static_cast<std::size_t>(i)] >= 0);
      CHECK(a.mean[static_cast<std::size_t>(i)] <= dims.degree() + 1e-12);
      CHECK(a.mean[static_cast<std::size_t>(i)] == doctest::Approx(b.mean[static_cast<std::size_t>(i)]).epsilon(1e-11));
      for (int j = 0; j < n; ++j) {
        CHECK(a.cov_at(i, j) == a.cov_at(j, i));
        CHECK(a.second_at(i, j) == doctest::Approx(a.cov_at(i, j) + a.mean[static_cast<std::size_t>(i)] * a.mean[static_cast<std::size_t>(j)]));
      }
    }
    // Cholesky with a relative floor
    std::vector<double> c = a.covariance;
    double scale = 0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, c[static_cast<std::size_t>(i * n + i)]);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      double diag = c[static_cast<std::size_t>(j * n + j)];
      for (int k = 0; k < j; ++k) diag -= c[static_cast<std::size_t>(j * n + k)] * c[static_cast<std::size_t>(j * n + k)];
      if (diag < -1e-12 * scale) ok = false;
      const double l = std::sqrt(std::max(diag, 0.0));
      c[static_cast<std::size_t>(j * n + j)] = l;
      for (int i = j + 1; i < n; ++i) {
        double v = c[static_cast<std::size_t>(i * n + j)];
        for (int k = 0; k < j; ++k) v -= c[static_cast<std::size_t>(i * n + k)] * c[static_cast<std::size_t>(j * n + k)];
        c[static_cast<std::size_t>(i * n + j)] = l > 0 ? v / l : 0;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1000.0);
}
