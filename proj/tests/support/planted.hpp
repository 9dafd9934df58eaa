#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "eqdense/bivariate.hpp"
#include "eqdense/polynomial.hpp"

namespace eqdense::testing {

using Grid = std::vector<std::vector<mpq_class>>;  // [t1 power][t2 power]

inline Grid grid_mul(const Grid& a, const Grid& b) {
  std::size_t cols_a = 0, cols_b = 0;
  for (const auto& r : a) cols_a = std::max(cols_a, r.size());
  for (const auto& r : b) cols_b = std::max(cols_b, r.size());
  Grid out(a.size() + b.size() - 1, std::vector<mpq_class>(cols_a + cols_b - 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t k = 0; k < b.size(); ++k) {
        for (std::size_t l = 0; l < b[k].size(); ++l) out[i + k][j + l] += a[i][j] * b[k][l];
      }
    }
  }
  return out;
}

inline Grid grid_axpy(const mpq_class& alpha, const Grid& a, const mpq_class& beta, const Grid& b) {
  Grid out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t ca = i < a.size() ? a[i].size() : 0, cb = i < b.size() ? b[i].size() : 0;
    out[i].assign(std::max(ca, cb), mpq_class(0));
    for (std::size_t j = 0; j < ca; ++j) out[i][j] += alpha * a[i][j];
    for (std::size_t j = 0; j < cb; ++j) out[i][j] += beta * b[i][j];
  }
  return out;
}

inline mpq_class random_rational(std::mt19937_64& rng, int lo, int hi, int max_den) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  mpq_class r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

/// prod (t - r_i) over random rationals; `positive` receives the number of
/// distinct positive roots, optionally listed ascending in `roots`.
inline RationalPoly planted_univariate(std::mt19937_64& rng, int max_degree, int& positive,
                                       std::vector<mpq_class>* roots_out = nullptr) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  const int n = deg(rng);
  std::vector<mpq_class> roots, distinct;
  RationalPoly p{mpq_class(1)};
  for (int i = 0; i < n; ++i) {
    const mpq_class r = random_rational(rng, -30, 30, 7);
    p = p * RationalPoly{mpq_class(-r), mpq_class(1)};
    if (r > 0 && std::find(distinct.begin(), distinct.end(), r) == distinct.end()) distinct.push_back(r);
  }
  positive = static_cast<int>(distinct.size());
  if (roots_out) {
    std::sort(distinct.begin(), distinct.end());
    *roots_out = distinct;
  }
  return p;
}

struct PlantedSystem {
  BivariatePoly p1, p2;
  int positive = 0;  // planted common roots in the open positive quadrant
  std::vector<std::array<double, 2>> points;  // those roots, ascending in t1
};

/// Common roots exactly at k <= 3 planted points (a_i, b_i) with distinct a_i:
///   q1 = prod (t1 - a_i) + h(t1, t2) q2,  q2 = (t2 - g(t1)) (1 + t2^2),
/// g interpolating g(a_i) = b_i, h a random bilinear form; then the pair is
/// recombined by a random invertible 2 x 2 matrix. Degree <= 4 per variable.
inline PlantedSystem planted_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nroots(1, 3);
  const int k = nroots(rng);
  std::vector<mpq_class> a, b;
  while (static_cast<int>(a.size()) < k) {
    const mpq_class x = random_rational(rng, -12, 12, 4);
    const mpq_class y = random_rational(rng, -12, 12, 4);
    if (x == 0 || y == 0 || std::find(a.begin(), a.end(), x) != a.end()) continue;
    a.push_back(x);
    b.push_back(y);
  }
  RationalPoly prod{mpq_class(1)};
  for (const auto& x : a) prod = prod * RationalPoly{mpq_class(-x), mpq_class(1)};
  RationalPoly g;
  for (std::size_t i = 0; i < a.size(); ++i) {
    RationalPoly term{b[i]};
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != i) term = term * RationalPoly{mpq_class(-a[j] / (a[i] - a[j])), mpq_class(1 / (a[i] - a[j]))};
    }
    g += term;
  }
  Grid line(static_cast<std::size_t>(std::max(g.degree(), 0)) + 1, std::vector<mpq_class>(2));
  for (int i = 0; i <= g.degree(); ++i) line[static_cast<std::size_t>(i)][0] = -g.coeff(i);
  line[0][1] = 1;
  const Grid q2 = grid_mul(line, Grid{{mpq_class(1), mpq_class(0), mpq_class(1)}});
  Grid h(2, std::vector<mpq_class>(2));
  for (auto& row : h) {
    for (auto& c : row) c = random_rational(rng, -3, 3, 2);
  }
  Grid base(static_cast<std::size_t>(prod.degree()) + 1, std::vector<mpq_class>(1));
  for (int i = 0; i <= prod.degree(); ++i) base[static_cast<std::size_t>(i)][0] = prod.coeff(i);
  const Grid q1 = grid_axpy(1, base, 1, grid_mul(h, q2));

  mpq_class m00, m01, m10, m11;
  do {
    m00 = random_rational(rng, -4, 4, 3);
    m01 = random_rational(rng, -4, 4, 3);
    m10 = random_rational(rng, -4, 4, 3);
    m11 = random_rational(rng, -4, 4, 3);
  } while (m00 * m11 - m01 * m10 == 0);

  PlantedSystem s{BivariatePoly(grid_axpy(m00, q1, m01, q2)), BivariatePoly(grid_axpy(m10, q1, m11, q2)), 0, {}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) s.points.push_back({a[i].get_d(), b[i].get_d()});
  }
  std::sort(s.points.begin(), s.points.end());
  s.positive = static_cast<int>(s.points.size());
  return s;
}

}  // namespace eqdense::testing
