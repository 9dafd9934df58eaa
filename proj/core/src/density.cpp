#include "eqdense/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "eqdense/combinatorics.hpp"
#include "eqdense/legendre.hpp"

namespace eqdense {

namespace {

using std::numbers::pi;

void require_d(int d) {
  if (d < 2) throw InvalidArgument("density requires d >= 2, got " + std::to_string(d));
}

// Sums S0 = sum a_k s^k, S1 = sum k a_k s^(k-1), S2 = sum k(k-1) a_k s^(k-2).
struct HornerSums {
  double s0, s1, s2;
};

HornerSums horner_sums(const std::vector<double>& a, double s) {
  double s0 = 0, s1 = 0, s2 = 0;
  for (std::size_t k = a.size(); k-- > 0;) {
    s2 = s2 * s + 2 * s1;
    s1 = s1 * s + s0;
    s0 = s0 * s + a[k];
  }
  return {s0, s1, s2};
}

// Same sums divided by s^D (D = deg), evaluated in u = 1/s over the reversed
// coefficient sequence so nothing overflows for s > 1.
HornerSums scaled_horner_sums(const std::vector<double>& a, double s) {
  const double u = 1 / s;
  const int deg = static_cast<int>(a.size()) - 1;
  double s0 = 0, s1 = 0, s2 = 0;
  // sum_k a_k u^(D-k) * {1, k, k(k-1)}, ascending in j = D - k.
  double upow = 1;
  for (int j = 0; j <= deg; ++j) {
    const int k = deg - j;
    const double term = a[static_cast<std::size_t>(k)] * upow;
    s0 += term;
    s1 += term * k;
    s2 += term * k * (k - 1);
    upow *= u;
  }
  // m'(s)/s^D = u * sum k a_k u^(D-k); m''(s)/s^D = u^2 * sum k(k-1) a_k u^(D-k)
  return {s0, s1 * u, s2 * u * u};
}

}  // namespace

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::Auto: return "auto";
    case Formulation::G: return "G";
    case Formulation::Legendre: return "legendre";
    case Formulation::LegendrePair: return "legendre-pair";
    case Formulation::Closed: return "closed";
    case Formulation::General: return "general";
    case Formulation::Elliptic: return "elliptic";
  }
  return "auto";
}

Formulation parse_formulation(std::string_view name) {
  for (Formulation f : {Formulation::Auto, Formulation::G, Formulation::Legendre, Formulation::LegendrePair,
                        Formulation::Closed, Formulation::General, Formulation::Elliptic}) {
    if (name == to_string(f)) return f;
  }
  throw InvalidArgument("unknown formulation '" + std::string(name) + "'");
}

// --- TwoStrategyDensity ------------------------------------------------------

TwoStrategyDensity::TwoStrategyDensity(int d) : d_(d) {
  require_d(d);
  if (d <= kHornerMaxD) {
    const IntegerPoly m = m_poly(d);
    coeff_.reserve(m.coeffs().size());
    for (const auto& c : m.coeffs()) coeff_.push_back(c.get_d());
  } else {
    kernel_.emplace(GameDims(2, d));
  }
}

double TwoStrategyDensity::g_prime_over_t(double t) const {
  if (t < 0 || std::isnan(t)) throw InvalidArgument("f_d(t) requires t >= 0");
  const double dm1 = d_ - 1;
  if (t == 0) return 4 * dm1 * dm1;
  if (kernel_) {
    const double tt = t;
    const WeightedMoments w = kernel_->evaluate(std::span<const double>(&tt, 1));
    return 4 * w.covariance[0] / (t * t);
  }
  const double s = t * t;
  if (s == 0 || !std::isfinite(s)) {
    // t^2 under/overflows: leading-order behaviour f ~ (d-1)/pi and (d-1)/(pi t^2).
    return s == 0 ? 4 * dm1 * dm1 : 4 * dm1 * dm1 / (t * t * t * t);
  }
  const HornerSums h = s <= 1 ? horner_sums(coeff_, s) : scaled_horner_sums(coeff_, s);
  // M = m(s), M' = 2 t m'(s), M'' = 2 m'(s) + 4 s m''(s)
  const double mp_over_m = 2 * t * h.s1 / h.s0;
  const double mpp_over_m = (2 * h.s1 + 4 * s * h.s2) / h.s0;
  const double g_prime = mp_over_m + t * (mpp_over_m - mp_over_m * mp_over_m);
  return g_prime / t;
}

double TwoStrategyDensity::operator()(double t) const {
  const double q = g_prime_over_t(t);
  return std::sqrt(std::max(q, 0.0)) / (2 * pi);
}

double f2d_via_G(int d, double t) { return TwoStrategyDensity(d)(t); }

double f2d_closed(int d, double t) {
  if (t < 0 || std::isnan(t)) throw InvalidArgument("f2d_closed requires t >= 0");
  if (std::isinf(t)) return 0.0;
  const double s = t * t;
  switch (d) {
    case 2:
      return 1 / (pi * (1 + s));
    case 3:
      return 2 / pi * std::sqrt(1 + s + s * s) / (1 + 4 * s + s * s);
    case 4:
      return 3 / pi * std::sqrt(1 + 4 * s + 10 * s * s + 4 * s * s * s + s * s * s * s) /
             (1 + 9 * s + 9 * s * s + s * s * s);
    default:
      throw InvalidArgument("f2d_closed is only defined for d in {2,3,4}");
  }
}

namespace {

void require_legendre_t(double t) {
  if (!(t > 0) || t == 1 || !std::isfinite(t)) {
    throw InvalidArgument("Legendre formulations require t > 0, t != 1");
  }
}

}  // namespace

double f2d_via_legendre(int d, double t) {
  require_d(d);
  require_legendre_t(t);
  if (t > 1) return f2d_via_legendre(d, 1 / t) / (t * t);
  using Real = long double;
  const Real tl = t;
  const Real omega = (1 - tl) * (1 + tl);
  const Real x = (1 + tl * tl) / omega;
  const int deg = d - 1;
  const auto r = legendre_ratios<Real>(deg, x);
  const Real omega2 = omega * omega;
  const Real v = 4 * Real(deg) * deg / omega2 - 16 * tl * tl / (omega2 * omega2) * r.log_derivative * r.log_derivative;
  return static_cast<double>(std::sqrt(std::max(v, Real(0))) / (2 * std::numbers::pi_v<Real>));
}

double f2d_via_legendre_pair(int d, double t) {
  require_d(d);
  require_legendre_t(t);
  if (t > 1) return f2d_via_legendre_pair(d, 1 / t) / (t * t);
  using Real = long double;
  const Real tl = t;
  const Real omega = (1 - tl) * (1 + tl);
  const Real x = (1 + tl * tl) / omega;
  const int deg = d - 1;
  const auto r = legendre_ratios<Real>(deg, x);
  const Real gap = x - r.ratio;
  const Real v = 4 * Real(deg) * deg / (omega * omega) - Real(deg) * deg / (tl * tl) * gap * gap;
  return static_cast<double>(std::sqrt(std::max(v, Real(0))) / (2 * std::numbers::pi_v<Real>));
}

double f2d(int d, double t, Formulation f) {
  switch (f) {
    case Formulation::G:
      return f2d_via_G(d, t);
    case Formulation::Legendre:
      return f2d_via_legendre(d, t);
    case Formulation::LegendrePair:
      return f2d_via_legendre_pair(d, t);
    case Formulation::Closed:
      return f2d_closed(d, t);
    case Formulation::General: {
      const double tt = t;
      const GeneralDensity g = fnd_general(GameDims(2, d), std::span<const double>(&tt, 1));
      return g.value;
    }
    case Formulation::Elliptic: {
      const double tt = t;
      return f_elliptic(GameDims(2, d), std::span<const double>(&tt, 1));
    }
    case Formulation::Auto:
      break;
  }
  require_d(d);
  if (t < 0 || std::isnan(t)) throw InvalidArgument("f_d(t) requires t >= 0");
  if (t == 0 || std::abs(t - 1) < kLegendreExclusion || std::isinf(t)) return f2d_via_G(d, t);
  return f2d_via_legendre_pair(d, t);
}

double g2d(int d, double y) {
  if (!(y > 0 && y < 1)) throw InvalidArgument("g2d requires 0 < y < 1");
  const double one_minus = 1 - y;
  return f2d(d, y / one_minus) / (one_minus * one_minus);
}

// --- general n ----------------------------------------------------------------

double sphere_prefactor(int n) {
  return std::pow(pi, -0.5 * n) * std::tgamma(0.5 * n);
}

TwoPlayerDensity fn2(int n, std::span<const double> t) {
  if (n < 2) throw InvalidArgument("fn2 requires n >= 2");
  if (static_cast<int>(t.size()) != n - 1) throw InvalidArgument("fn2: t must have n-1 coordinates");
  double norm2 = 0;
  double prod = 1;
  for (double v : t) {
    if (v < 0 || std::isnan(v)) throw InvalidArgument("fn2 requires nonnegative coordinates");
    norm2 += v * v;
    prod *= v;
  }
  const double c = sphere_prefactor(n);
  TwoPlayerDensity out;
  out.value = c * std::pow(1 + norm2, -0.5 * n);
  out.bound_unit = c;
  out.bound_product = prod == 0 ? std::numeric_limits<double>::infinity() : c / (std::pow(n, 0.5 * n) * prod);
  return out;
}

GeneralDensityKernel::GeneralDensityKernel(GameDims dims, std::uint64_t max_terms)
    : moments_(dims, max_terms), prefactor_(sphere_prefactor(dims.n)) {}

namespace {

// Determinant by Gaussian elimination with partial pivoting.
double determinant(std::vector<double> a, int dim) {
  double det = 1;
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int r = col + 1; r < dim; ++r) {
      if (std::abs(a[static_cast<std::size_t>(r * dim + col)]) > std::abs(a[static_cast<std::size_t>(pivot * dim + col)])) pivot = r;
    }
    if (a[static_cast<std::size_t>(pivot * dim + col)] == 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < dim; ++c) std::swap(a[static_cast<std::size_t>(col * dim + c)], a[static_cast<std::size_t>(pivot * dim + c)]);
      det = -det;
    }
    const double p = a[static_cast<std::size_t>(col * dim + col)];
    det *= p;
    for (int r = col + 1; r < dim; ++r) {
      const double f = a[static_cast<std::size_t>(r * dim + col)] / p;
      if (f == 0) continue;
      for (int c = col; c < dim; ++c) a[static_cast<std::size_t>(r * dim + c)] -= f * a[static_cast<std::size_t>(col * dim + c)];
    }
  }
  return det;
}

}  // namespace

GeneralDensity GeneralDensityKernel::operator()(std::span<const double> t) const {
  const WeightedMoments w = moments_.evaluate(t);
  const int dim = w.dim;
  // det L = det(Cov) / prod t_i^2
  const double det_cov = determinant(w.covariance, dim);
  double hadamard = 1;
  for (int i = 0; i < dim; ++i) hadamard *= std::abs(w.cov_at(i, i));
  double scale = 1;
  for (double v : t) scale *= v * v;

  GeneralDensity out;
  if (det_cov < 0) {
    if (det_cov < -1e-10 * hadamard) {
      out.det_l = det_cov / scale;
      out.degenerate = true;
      out.value = std::numeric_limits<double>::quiet_NaN();
      return out;
    }
    out.det_l = 0;
    out.value = 0;
    return out;
  }
  out.det_l = det_cov / scale;
  // sqrt(det_cov) / prod t_i keeps the scaling exact for extreme t
  double root = std::sqrt(det_cov);
  for (double v : t) root /= v;
  out.value = prefactor_ * root;
  return out;
}

GeneralDensity fnd_general(GameDims dims, std::span<const double> t, std::uint64_t max_terms) {
  return GeneralDensityKernel(dims, max_terms)(t);
}

double f_elliptic(GameDims dims, std::span<const double> t) {
  double norm2 = 0;
  for (double v : t) norm2 += v * v;
  return sphere_prefactor(dims.n) * std::pow(static_cast<double>(dims.d - 1), 0.5 * (dims.n - 1)) *
         std::pow(1 + norm2, -0.5 * dims.n);
}

double density_value(GameDims dims, std::span<const double> t, Formulation f) {
  if (static_cast<int>(t.size()) != dims.coords()) {
    throw InvalidArgument("density: expected " + std::to_string(dims.coords()) + " coordinates");
  }
  if (f == Formulation::Elliptic) return f_elliptic(dims, t);
  if (dims.n == 2 && f != Formulation::General) return f2d(dims.d, t[0], f);
  if (f == Formulation::Auto && dims.d == 2) return fn2(dims.n, t).value;
  if (f == Formulation::Auto || f == Formulation::General) {
    const GeneralDensity g = fnd_general(dims, t);
    if (g.degenerate) throw NumericalError("det L is negative beyond tolerance");
    return g.value;
  }
  throw InvalidArgument("formulation '" + std::string(to_string(f)) + "' is only defined for n = 2");
}

double g_general(GameDims dims, std::span<const double> y) {
  if (static_cast<int>(y.size()) != dims.coords()) {
    throw InvalidArgument("g: expected " + std::to_string(dims.coords()) + " frequency coordinates");
  }
  double rest = 1;
  for (double v : y) {
    if (!(v > 0)) throw InvalidArgument("g: frequencies must lie in the open simplex");
    rest -= v;
  }
  if (!(rest > 0)) throw InvalidArgument("g: frequencies must lie in the open simplex");
  if (dims.n == 2) return g2d(dims.d, y[0]);
  std::vector<double> t(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) t[i] = y[i] / rest;
  return density_value(dims, t, Formulation::Auto) * std::pow(rest, -dims.n);
}

// --- bounds and Legendre inequalities ----------------------------------------

DensityBounds density_bounds(int d, double t) {
  require_d(d);
  if (t < 0 || std::isnan(t)) throw InvalidArgument("density_bounds requires t >= 0");
  const double dm1 = d - 1;
  DensityBounds b;
  b.over_t = t == 0 ? std::numeric_limits<double>::infinity() : std::sqrt(dm1) / (2 * pi * t);
  b.at_zero = dm1 / pi;
  if (t < 1) b.below_one = dm1 / (pi * (1 - t) * (1 + t));
  return b;
}

double legendre_identity_residual(int d, double t) {
  if (d < 0) throw InvalidArgument("legendre_identity_residual requires d >= 0");
  if (!(t >= 0 && t < 1)) throw InvalidArgument("legendre_identity_residual requires 0 <= t < 1");
  using Real = long double;
  const Real s = Real(t) * t;
  Real m = 0;
  if (d == 0) {
    m = 1;
  } else {
    const IntegerPoly mp = m_poly(d + 1);
    for (std::size_t k = mp.coeffs().size(); k-- > 0;) m = m * s + static_cast<Real>(mp.coeffs()[k].get_d());
  }
  const Real x = (1 + s) / (1 - s);
  const Real rhs = std::pow(1 - s, Real(d)) * legendre_eval<Real>(d, x).p;
  return static_cast<double>(std::abs(m - rhs) / m);
}

double turan_gap(int d, double x) {
  if (d < 1) throw InvalidArgument("turan_gap requires d >= 1");
  using Real = long double;
  const auto hi = legendre_eval<Real>(d + 1, x);  // P_{d+1}, P_d
  const Real p_next = hi.p;
  const Real p = hi.p_prev;
  const Real p_prev = legendre_eval<Real>(d - 1, x).p;
  return static_cast<double>(p_next * p_prev - p * p);
}

double turan_difference_closed(int d, double x) {
  if (d < 1) throw InvalidArgument("turan_difference_closed requires d >= 1");
  using Real = long double;
  Real harmonic = 0;
  for (int i = 1; i <= d; ++i) harmonic += Real(1) / i;
  Real nested = 0;
  Real inner = 0;
  for (int i = 1; i <= d - 1; ++i) {
    const Real pj = legendre_eval<Real>(i, x).p;
    inner += (2 * i + 1) * pj * pj;
    nested += inner / (i + 1);
  }
  const Real xl = x;
  return static_cast<double>((1 - xl * xl) / (Real(d) * (d + 1)) * (harmonic + nested));
}

double l_scan_value(int d, double x) {
  if (d < 1) throw InvalidArgument("l_scan_value requires d >= 1");
  using Real = long double;
  const auto v = legendre_eval<Real>(d + 1, x);
  const Real p_next = v.p;
  const Real p = v.p_prev;
  const Real p_prev = legendre_eval<Real>(d - 1, x).p;
  const Real p2 = p * p;
  return static_cast<double>((2 * d + 1) * p2 * p2 - p_prev * p_prev * ((2 * d - 1) * p_next * p_next + 2 * p2));
}

double increase_condition(int d, double x) {
  if (d < 0) throw InvalidArgument("increase_condition requires d >= 0");
  using Real = long double;
  const auto v = legendre_eval<Real>(d + 1, x);
  const Real pn = v.p;
  const Real p = v.p_prev;
  const Real xl = x;
  const Real dp1 = d + 1;
  return static_cast<double>(dp1 * dp1 * (pn * pn - p * p) * (pn * pn + p * p - 2 * xl * pn * p) +
                             (2 * d + 1) * (xl * xl - 1) * p * p * pn * pn);
}

}  // namespace eqdense
