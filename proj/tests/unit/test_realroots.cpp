#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "eqdense/bivariate.hpp"
#include "eqdense/realroots.hpp"
#include "planted.hpp"

using namespace eqdense;

namespace {

RationalPoly from_roots(const std::vector<mpq_class>& roots) {
  RationalPoly p{mpq_class(1)};
  for (const auto& r : roots) p = p * RationalPoly{mpq_class(-r), mpq_class(1)};
  return p;
}

RationalPoly q(std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return RationalPoly(std::move(v));
}

// Sign changes of p on a dense grid of [0, 1000] with bisection refinement.
int dense_count(const RealPoly& p) {
  int count = 0;
  double prev_x = 1e-9, prev = p(prev_x);
  for (int i = 1; i <= 1000000; ++i) {
    const double x = 1e-9 + i * 1e-3;
    const double v = p(x);
    if (v == 0 || (prev < 0) != (v < 0)) {
      if (v != 0 || prev != 0) ++count;
    }
    prev = v;
    prev_x = x;
  }
  (void)prev_x;
  return count;
}

}  // namespace

TEST_CASE("squarefree") {
  CHECK(squarefree(q({1, -2, 1})) == q({-1, 1}));
  CHECK(squarefree(q({2, -3, 1})) == q({2, -3, 1}));
  CHECK(squarefree(q({0, 0, -1, 1})) == q({0, -1, 1}));
  CHECK(squarefree(IntegerPoly{4, -4, 1}) == IntegerPoly{-2, 1});
  CHECK_THROWS_AS(squarefree(RationalPoly{}), InvalidArgument);
}

TEST_CASE("Sturm chain") {
  const SturmChain s(q({2, -3, 1}));
  CHECK(s.variations_at(mpq_class(0)) - s.variations_at(mpq_class(3)) == 2);
  CHECK(s.count_in(mpq_class(0), mpq_class(3, 2)) == 1);
  CHECK(s.count_in(mpq_class(1), mpq_class(2)) == 1);  // (a, b]
  CHECK(s.variations_at_zero() - s.variations_at_infinity() == 2);
  const SturmChain r(q({1, -2, 1}));
  CHECK(r.repeated_part() == IntegerPoly{-1, 1});
  CHECK(r.squarefree_part() == IntegerPoly{-1, 1});
  CHECK(SturmChain(q({2, -3, 1})).repeated_part() == IntegerPoly{1});
}

TEST_CASE("count_positive_roots") {
  CHECK(count_positive_roots(q({2, -3, 1})) == 2);
  CHECK(count_positive_roots(q({1, 0, 1})) == 0);
  CHECK(count_positive_roots(q({-1, 6, -11, 6})) == 3);
  CHECK(count_positive_roots(q({0, 0, -1, 1})) == 1);  // root at 0 excluded
  CHECK(count_positive_roots(q({5})) == 0);
  CHECK(count_positive_roots(from_roots({mpq_class(1, 3), mpq_class(1, 3), mpq_class(-2), mpq_class(7)})) == 2);
  CHECK_THROWS_AS(count_positive_roots(RationalPoly{}), InvalidArgument);
}

TEST_CASE("isolate_positive_roots") {
  const auto b1 = isolate_positive_roots(q({-2, 0, 1}), mpq_class(1, 1000000));
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].lo * b1[0].lo <= 2);
  CHECK(b1[0].hi * b1[0].hi >= 2);
  CHECK(b1[0].hi - b1[0].lo <= mpq_class(1, 1000000));

  const auto b2 = isolate_positive_roots(q({2, -3, 1}), mpq_class(1, 100));
  REQUIRE(b2.size() == 2);
  CHECK(b2[0].midpoint() == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(b2[1].midpoint() == doctest::Approx(2.0).epsilon(1e-2));

  std::vector<mpq_class> wilkinson;
  for (int k = 1; k <= 6; ++k) wilkinson.emplace_back(k);
  const auto b3 = isolate_positive_roots(from_roots(wilkinson), mpq_class(1, 1000));
  REQUIRE(b3.size() == 6);
  for (int k = 0; k < 6; ++k) {
    CHECK(b3[static_cast<std::size_t>(k)].lo <= k + 1);
    CHECK(b3[static_cast<std::size_t>(k)].hi >= k + 1);
  }
  for (std::size_t k = 1; k < b3.size(); ++k) CHECK(b3[k - 1].hi <= b3[k].lo);

  const auto b4 = isolate_positive_roots(from_roots({mpq_class(1, 2), mpq_class(1, 2), mpq_class(3)}), mpq_class(1, 64));
  REQUIRE(b4.size() == 2);
  CHECK(b4[0].multiplicity == 2);
  CHECK(b4[1].multiplicity == 1);

  const auto rel = isolate_positive_roots_relative(IntegerPoly{-3, 0, 1}, 1e-12);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].midpoint() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(isolate_positive_roots(q({-2, 0, 1}), mpq_class(0)), InvalidArgument);
}

TEST_CASE("planted rational roots, degree <= 12") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(1, 12), num(-40, 40), den(1, 9);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<mpq_class> roots;
    const int n = deg(rng);
    for (int i = 0; i < n; ++i) {
      mpq_class r(num(rng), den(rng));
      r.canonicalize();
      roots.push_back(r);
    }
    std::vector<mpq_class> distinct_pos;
    for (const auto& r : roots) {
      if (r > 0 && std::find(distinct_pos.begin(), distinct_pos.end(), r) == distinct_pos.end()) distinct_pos.push_back(r);
    }
    const RationalPoly p = from_roots(roots);
    REQUIRE(count_positive_roots(p) == static_cast<int>(distinct_pos.size()));
    const auto boxes = isolate_positive_roots(p, mpq_class(1, 1 << 20));
    REQUIRE(boxes.size() == distinct_pos.size());
    std::sort(distinct_pos.begin(), distinct_pos.end());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      CHECK(boxes[i].lo <= distinct_pos[i]);
      CHECK(distinct_pos[i] <= boxes[i].hi);
      const auto mult = std::count(roots.begin(), roots.end(), distinct_pos[i]);
      CHECK(boxes[i].multiplicity == mult);
    }
  }
}

TEST_CASE("Sturm count matches dense sampling of float polynomials") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> deg(1, 8);
  std::uniform_real_distribution<double> root(0.05, 900.0), coin(0, 1);
  std::normal_distribution<double> gauss;
  int checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    // roots well inside the sampled window and separated beyond the grid step
    const int n = deg(rng);
    std::vector<double> roots;
    while (static_cast<int>(roots.size()) < n) {
      const double r = coin(rng) < 0.5 ? root(rng) : -root(rng);
      bool far = true;
      for (double s : roots) far = far && std::abs(s - r) > 0.05;
      if (far) roots.push_back(r);
    }
    RealPoly p{1.0};
    for (double r : roots) p = p * RealPoly{-r, 1.0};
    p = p * RealPoly{1.0 + gauss(rng) * gauss(rng), 0.0, 1.0};  // complex pair or none
    const int exact = count_positive_roots(to_rational(p));
    // the dense count only sees well-conditioned crossings; skip if any
    // positive root is near-degenerate in double precision
    const int sampled = dense_count(p);
    if (exact != sampled) {
      const int planted = static_cast<int>(std::count_if(roots.begin(), roots.end(), [](double r) { return r > 0; }));
      CHECK(exact == planted);
      continue;
    }
    CHECK(exact == sampled);
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("verify_m_factorization") {
  const auto m3 = verify_m_factorization(3, {0.5});
  REQUIRE(m3.r.size() == 2);
  CHECK(m3.r[0] == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(m3.r[1] == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-14));
  CHECK(m3.max_residual < 1e-9);
  const auto m2 = verify_m_factorization(2, {0.1, 0.9});
  REQUIRE(m2.r.size() == 1);
  CHECK(m2.r[0] == doctest::Approx(1.0));
  CHECK(m2.max_residual < 1e-14);
  const std::vector<double> ts{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  for (int d = 2; d <= 30; ++d) {
    const auto m = verify_m_factorization(d, ts);
    CHECK(m.all_real_negative);
    CHECK(static_cast<int>(m.r.size()) == d - 1);
    CHECK(m.max_residual < 1e-8);
  }
}

TEST_CASE("classify_stability_2") {
  const RootBox half{mpq_class(1), mpq_class(1), 1};
  CHECK(classify_stability_2({1, -1}, half, 2) == Stability::Stable);
  CHECK(classify_stability_2({-1, 1}, half, 2) == Stability::Unstable);
  CHECK(classify_stability_2({1, 1}, half, 2) == Stability::Indeterminate);
  CHECK(std::string(to_string(Stability::Stable)) == "stable");
  CHECK_THROWS_AS(classify_stability_2({1, -1}, half, 3), InvalidArgument);
}

TEST_CASE("Sylvester resultant") {
  // p1 = t2 - t1, p2 = t2 + t1 - 2
  const auto p1 = BivariatePoly::from_doubles({{0, 1}, {-1, 0}});
  const auto p2 = BivariatePoly::from_doubles({{-2, 1}, {1, 0}});
  const auto r = sylvester_resultant(p1, p2, Axis::T2);
  REQUIRE(r.degree() == 1);
  CHECK(r.coeff(0) / r.coeff(1) == -1);

  // p1 = t1 t2 - 1, p2 = t2 - t1
  const auto a = BivariatePoly::from_doubles({{-1, 0}, {0, 1}});
  const auto b = BivariatePoly::from_doubles({{0, 1}, {-1, 0}});
  const auto rab = sylvester_resultant(a, b, Axis::T2);
  REQUIRE(rab.degree() == 2);
  CHECK(rab.coeff(1) == 0);
  CHECK(rab.coeff(0) / rab.coeff(2) == -1);

  const auto one = BivariatePoly::from_doubles({{1}});
  const auto rc = sylvester_resultant(one, p2, Axis::T2);
  CHECK(rc.degree() == 0);
  CHECK(rc.coeff(0) != 0);
  CHECK_THROWS_AS(sylvester_resultant(one, one, Axis::T2), InvalidArgument);
}

TEST_CASE("BivariatePoly basics") {
  const auto p = BivariatePoly::from_doubles({{1, 2}, {3, 4}});  // 1 + 2 t2 + 3 t1 + 4 t1 t2
  CHECK(p(2, 3) == doctest::Approx(1 + 6 + 6 + 24));
  CHECK(p.d_dt1(2, 3) == doctest::Approx(3 + 12));
  CHECK(p.d_dt2(2, 3) == doctest::Approx(2 + 8));
  CHECK(p.degree(Axis::T1) == 1);
  CHECK(p.total_degree() == 2);
  CHECK(p.max_norm() == 4);
  CHECK(p.substitute(Axis::T1, mpq_class(1, 2)) == RationalPoly{mpq_class(5, 2), mpq_class(4)});
  CHECK(BivariatePoly::from_doubles({{0, 0}, {0}}).is_zero());
}

TEST_CASE("count_positive_system_roots") {
  // t1 + t2 - 3, t1 t2 - 2: roots (1, 2), (2, 1)
  const auto p1 = BivariatePoly::from_doubles({{-3, 1}, {1, 0}});
  const auto p2 = BivariatePoly::from_doubles({{-2, 0}, {0, 1}});
  const auto roots = positive_system_roots(p1, p2);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(roots[0][1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(count_positive_system_roots(p1, p2) == 2);

  // t1 - t2, t1 + t2 + 1: root in the negative quadrant
  CHECK(count_positive_system_roots(BivariatePoly::from_doubles({{0, -1}, {1, 0}}),
                                    BivariatePoly::from_doubles({{1, 1}, {1, 0}})) == 0);

  // random linear systems against Cramer's rule
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 300; ++rep) {
    const double a0 = g(rng), a1 = g(rng), a2 = g(rng), b0 = g(rng), b1 = g(rng), b2 = g(rng);
    const auto l1 = BivariatePoly::from_doubles({{a0, a2}, {a1, 0}});
    const auto l2 = BivariatePoly::from_doubles({{b0, b2}, {b1, 0}});
    const double det = a1 * b2 - a2 * b1;
    const double t1 = (-a0 * b2 + a2 * b0) / det, t2 = (-a1 * b0 + a0 * b1) / det;
    CHECK(count_positive_system_roots(l1, l2) == (t1 > 0 && t2 > 0 ? 1 : 0));
  }

  CHECK_THROWS_AS(count_positive_system_roots(BivariatePoly{}, p2), DegenerateError);
  CHECK_THROWS_AS(count_positive_system_roots(p1, p1), DegenerateError);
  std::vector<std::vector<double>> big(40, std::vector<double>(1, 1.0));
  CHECK_THROWS_AS(count_positive_system_roots(BivariatePoly::from_doubles(big), p2), CapacityError);
}

TEST_CASE("planted bivariate systems") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const auto s = testing::planted_system(rng);
    CHECK(s.p1.degree(Axis::T1) <= 4);
    CHECK(s.p1.degree(Axis::T2) <= 4);
    CHECK(count_positive_system_roots(s.p1, s.p2) == s.positive);
  }
}
