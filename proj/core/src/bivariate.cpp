#include "eqdense/bivariate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqdense/errors.hpp"
#include "eqdense/realroots.hpp"

namespace eqdense {

BivariatePoly::BivariatePoly(std::vector<std::vector<mpq_class>> coeffs) : c_(std::move(coeffs)) { trim(); }

BivariatePoly BivariatePoly::from_doubles(const std::vector<std::vector<double>>& coeffs) {
  std::vector<std::vector<mpq_class>> c(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (double v : coeffs[i]) {
      if (!std::isfinite(v)) throw InvalidArgument("BivariatePoly: non-finite coefficient");
      c[i].emplace_back(v);
    }
  }
  return BivariatePoly(std::move(c));
}

void BivariatePoly::trim() {
  std::size_t width = 0;
  for (auto& row : c_) {
    for (auto& v : row) v.canonicalize();
    while (!row.empty() && sgn(row.back()) == 0) row.pop_back();
    width = std::max(width, row.size());
  }
  while (!c_.empty() && c_.back().empty()) c_.pop_back();
  for (auto& row : c_) row.resize(width, mpq_class(0));
  cd_.assign(c_.size(), std::vector<double>(width));
  cl_.assign(c_.size(), std::vector<long double>(width));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      cd_[i][j] = c_[i][j].get_d();
      // numerator / denominator, each correctly rounded to double, then divided in long double
      const mpz_class& num = c_[i][j].get_num();
      const mpz_class& den = c_[i][j].get_den();
      long exp_num = 0, exp_den = 0;
      const double mn = mpz_get_d_2exp(&exp_num, num.get_mpz_t());
      const double md = mpz_get_d_2exp(&exp_den, den.get_mpz_t());
      cl_[i][j] = md == 0 ? 0.0L : std::ldexp(static_cast<long double>(mn) / md, static_cast<int>(exp_num - exp_den));
    }
  }
}

bool BivariatePoly::is_zero() const { return c_.empty(); }

int BivariatePoly::degree(Axis axis) const {
  if (c_.empty()) return kZeroPolyDegree;
  if (axis == Axis::T1) return static_cast<int>(c_.size()) - 1;
  return static_cast<int>(c_.front().size()) - 1;
}

int BivariatePoly::total_degree() const {
  if (c_.empty()) return kZeroPolyDegree;
  int best = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < c_[i].size(); ++j) {
      if (sgn(c_[i][j]) != 0) best = std::max(best, static_cast<int>(i + j));
    }
  }
  return best;
}

mpq_class BivariatePoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= static_cast<int>(c_.size())) return 0;
  const auto& row = c_[static_cast<std::size_t>(i)];
  if (j >= static_cast<int>(row.size())) return 0;
  return row[static_cast<std::size_t>(j)];
}

double BivariatePoly::operator()(double t1, double t2) const {
  double acc = 0;
  for (auto it = cd_.rbegin(); it != cd_.rend(); ++it) {
    double inner = 0;
    for (auto jt = it->rbegin(); jt != it->rend(); ++jt) inner = inner * t2 + *jt;
    acc = acc * t1 + inner;
  }
  return acc;
}

double BivariatePoly::d_dt1(double t1, double t2) const {
  double acc = 0;
  for (std::size_t i = cd_.size(); i-- > 1;) {
    double inner = 0;
    for (auto jt = cd_[i].rbegin(); jt != cd_[i].rend(); ++jt) inner = inner * t2 + *jt;
    acc = acc * t1 + static_cast<double>(i) * inner;
  }
  return acc;
}

double BivariatePoly::d_dt2(double t1, double t2) const {
  double acc = 0;
  for (auto it = cd_.rbegin(); it != cd_.rend(); ++it) {
    double inner = 0;
    for (std::size_t j = it->size(); j-- > 1;) inner = inner * t2 + static_cast<double>(j) * (*it)[j];
    acc = acc * t1 + inner;
  }
  return acc;
}

BivariateEval BivariatePoly::evaluate(long double t1, long double t2) const {
  BivariateEval out;
  const long double a1 = std::abs(t1), a2 = std::abs(t2);
  for (std::size_t i = cl_.size(); i-- > 0;) {
    long double v = 0, dv = 0, mag = 0;
    for (std::size_t j = cl_[i].size(); j-- > 0;) {
      dv = dv * t2 + v;
      v = v * t2 + cl_[i][j];
      mag = mag * a2 + std::abs(cl_[i][j]);
    }
    out.d_dt1 = out.d_dt1 * t1 + out.value;
    out.value = out.value * t1 + v;
    out.d_dt2 = out.d_dt2 * t1 + dv;
    out.magnitude = out.magnitude * a1 + mag;
  }
  return out;
}

double BivariatePoly::max_norm() const {
  double m = 0;
  for (const auto& row : cd_) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

std::vector<RationalPoly> BivariatePoly::in_variable(Axis axis) const {
  if (c_.empty()) return {};
  std::vector<RationalPoly> out;
  if (axis == Axis::T1) {
    for (const auto& row : c_) out.emplace_back(row);
  } else {
    const std::size_t width = c_.front().size();
    for (std::size_t j = 0; j < width; ++j) {
      std::vector<mpq_class> col(c_.size());
      for (std::size_t i = 0; i < c_.size(); ++i) col[i] = c_[i][j];
      out.emplace_back(std::move(col));
    }
  }
  return out;
}

RationalPoly BivariatePoly::substitute(Axis axis, const mpq_class& value) const {
  const std::vector<RationalPoly> parts = in_variable(axis);
  std::vector<mpq_class> out;
  if (parts.empty()) return {};
  std::size_t width = 0;
  for (const auto& p : parts) width = std::max(width, p.coeffs().size());
  out.assign(width, mpq_class(0));
  mpq_class power = 1;
  for (const auto& p : parts) {
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) out[j] += p.coeffs()[j] * power;
    power *= value;
  }
  return RationalPoly(std::move(out));
}

namespace {

// Common positive denominator for the coefficients, so that scaling by it
// yields integer polynomials.
mpz_class denominator_lcm(const std::vector<RationalPoly>& parts) {
  mpz_class den = 1;
  for (const auto& p : parts) {
    for (const auto& v : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  }
  return den;
}

std::vector<IntegerPoly> to_integer_parts(const std::vector<RationalPoly>& parts) {
  const mpz_class den = denominator_lcm(parts);
  std::vector<IntegerPoly> out;
  out.reserve(parts.size());
  for (const auto& p : parts) {
    std::vector<mpz_class> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v.get_num() * (den / v.get_den()));
    out.emplace_back(std::move(c));
  }
  return out;
}

IntegerPoly bareiss_determinant(std::vector<std::vector<IntegerPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return IntegerPoly::constant(1);
  IntegerPoly prev = IntegerPoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        IntegerPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = prev.degree() == 0 && prev.leading() == 1 ? std::move(num) : exact_divide(num, prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

RationalPoly sylvester_resultant(const BivariatePoly& p1, const BivariatePoly& p2, Axis eliminate) {
  if (p1.is_zero() || p2.is_zero()) throw InvalidArgument("sylvester_resultant: zero polynomial");
  const int m = p1.degree(eliminate);
  const int n = p2.degree(eliminate);
  if (m == 0 && n == 0) throw InvalidArgument("sylvester_resultant: both inputs constant in the eliminated variable");

  const std::vector<IntegerPoly> a = to_integer_parts(p1.in_variable(eliminate));
  const std::vector<IntegerPoly> b = to_integer_parts(p2.in_variable(eliminate));
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<IntegerPoly>> mat(size, std::vector<IntegerPoly>(size));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) {
      mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a[static_cast<std::size_t>(m - k)];
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) {
      mat[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b[static_cast<std::size_t>(n - k)];
    }
  }
  return to_rational(bareiss_determinant(std::move(mat)));
}

namespace {

struct NewtonPoint {
  long double t1, t2;
};

// Stops one iteration after the relative step first drops below tol, or
// when the step stops shrinking inside the convergence region.
NewtonPoint newton_refine(const BivariatePoly& p1, const BivariatePoly& p2, NewtonPoint x, double tol) {
  long double prev_step = INFINITY;
  for (int it = 0; it < 80; ++it) {
    const BivariateEval e1 = p1.evaluate(x.t1, x.t2);
    const BivariateEval e2 = p2.evaluate(x.t1, x.t2);
    const long double det = e1.d_dt1 * e2.d_dt2 - e1.d_dt2 * e2.d_dt1;
    if (det == 0 || !std::isfinite(det)) break;
    const long double dx = (e1.value * e2.d_dt2 - e2.value * e1.d_dt2) / det;
    const long double dy = (e1.d_dt1 * e2.value - e2.d_dt1 * e1.value) / det;
    const long double step = std::max(std::abs(dx) / std::abs(x.t1), std::abs(dy) / std::abs(x.t2));
    if (prev_step < 1e-8L && step >= prev_step) break;
    x.t1 -= dx;
    x.t2 -= dy;
    if (!std::isfinite(x.t1) || !std::isfinite(x.t2) || prev_step <= tol) break;
    prev_step = step;
  }
  return x;
}

bool passes_gate(const BivariatePoly& p, NewtonPoint x, double tol) {
  const BivariateEval e = p.evaluate(x.t1, x.t2);
  return std::abs(e.value) <= tol * e.magnitude;
}

bool close_relative(const std::array<double, 2>& u, const std::array<double, 2>& v, double tol) {
  for (int k = 0; k < 2; ++k) {
    const double scale = std::max(std::abs(u[static_cast<std::size_t>(k)]), std::abs(v[static_cast<std::size_t>(k)]));
    if (std::abs(u[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k)]) > tol * scale) return false;
  }
  return true;
}

}  // namespace

std::vector<std::array<double, 2>> positive_system_roots(const BivariatePoly& p1, const BivariatePoly& p2,
                                                         const SystemRootsOptions& opt) {
  if (p1.is_zero() || p2.is_zero()) throw DegenerateError("system contains the zero polynomial");
  for (const auto* p : {&p1, &p2}) {
    if (p->degree(Axis::T1) > opt.max_degree || p->degree(Axis::T2) > opt.max_degree) {
      throw CapacityError("system degree exceeds " + std::to_string(opt.max_degree));
    }
  }
  if (p1.degree(Axis::T2) == 0 && p2.degree(Axis::T2) == 0) {
    throw DegenerateError("system does not involve t2");
  }
  const RationalPoly res = sylvester_resultant(p1, p2, Axis::T2);
  if (res.is_zero()) throw DegenerateError("resultant vanishes identically");

  std::vector<std::array<double, 2>> roots;
  if (res.degree() <= 0) return roots;

  const auto t1_boxes = isolate_positive_roots_relative(primitive_integer(res), 1e-10);

  for (const auto& b1 : t1_boxes) {
    const mpq_class t1_exact = (b1.lo + b1.hi) / 2;
    const long double t1 = b1.midpoint();
    for (const auto* p : {&p1, &p2}) {
      const RationalPoly slice = p->substitute(Axis::T1, t1_exact);
      if (slice.degree() <= 0) continue;
      for (const auto& b2 : isolate_positive_roots_relative(primitive_integer(slice), 1e-10)) {
        const NewtonPoint x = newton_refine(p1, p2, {t1, b2.midpoint()}, opt.refine_tol);
        if (!(x.t1 > 0) || !(x.t2 > 0) || !std::isfinite(x.t1) || !std::isfinite(x.t2)) continue;
        if (std::abs(x.t1 - t1) > opt.drift_tol * t1) continue;
        if (!passes_gate(p1, x, opt.residual_tol) || !passes_gate(p2, x, opt.residual_tol)) continue;
        const std::array<double, 2> r{static_cast<double>(x.t1), static_cast<double>(x.t2)};
        const bool duplicate =
            std::any_of(roots.begin(), roots.end(), [&](const auto& q) { return close_relative(q, r, opt.dedup_tol); });
        if (!duplicate) roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int count_positive_system_roots(const BivariatePoly& p1, const BivariatePoly& p2, double refine_tol,
                                double dedup_tol) {
  SystemRootsOptions opt;
  opt.refine_tol = refine_tol;
  opt.dedup_tol = dedup_tol;
  return static_cast<int>(positive_system_roots(p1, p2, opt).size());
}

}  // namespace eqdense
