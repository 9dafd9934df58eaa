#include "eqdense/verify.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "eqdense/density.hpp"
#include "eqdense/errors.hpp"
#include "eqdense/expectation.hpp"
#include "eqdense/grid.hpp"
#include "eqdense/legendre.hpp"
#include "eqdense/realroots.hpp"

namespace eqdense {

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Identities:
      return "identities";
    case Suite::Bounds:
      return "bounds";
    case Suite::Monotonicity:
      return "monotonicity";
    case Suite::Turan:
      return "turan";
    case Suite::Factorization:
      return "factorization";
    case Suite::ConjectureScan:
      break;
  }
  return "conjecture-scan";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites{Suite::Identities,   Suite::Bounds,        Suite::Monotonicity,
                                         Suite::Turan,        Suite::Factorization, Suite::ConjectureScan};
  return suites;
}

Suite parse_suite(std::string_view name) {
  for (Suite s : all_suites()) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown suite '" + std::string(name) + "'");
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Report:
      break;
  }
  return "report";
}

bool any_failure(const std::vector<CheckRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.status == CheckStatus::Fail; });
}

std::vector<double> default_t_grid() {
  auto below = GridSpec{0.01, 0.99, 20, true}.points();
  const auto above = GridSpec{1.01, 100, 20, true}.points();
  below.push_back(1.0);
  below.insert(below.end(), above.begin(), above.end());
  return below;
}

namespace {

using std::numbers::pi;
using Real = long double;

std::string fmt(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string at(const char* name, double v) { return std::string(name) + "=" + fmt(v); }

// Keeps the row with the smallest margin for each (check, d).
class Worst {
 public:
  void add(const std::string& check, int d, std::string location, double lhs, double rhs, double margin) {
    auto [it, inserted] = rows_.try_emplace({check, d});
    if (inserted || margin < it->second.margin || std::isnan(margin)) {
      if (!inserted && std::isnan(it->second.margin)) return;
      it->second = CheckRow{check, "d=" + std::to_string(d) + (location.empty() ? "" : ";" + location), lhs, rhs, margin};
    }
  }

  // Emits rows in (check order of first insertion, d) order.
  void flush(std::vector<CheckRow>& out, double tol, bool report) {
    std::vector<std::string> order;
    for (const auto& [key, row] : rows_) {
      if (std::find(order.begin(), order.end(), key.first) == order.end()) order.push_back(key.first);
    }
    for (const auto& check : order) {
      for (auto& [key, row] : rows_) {
        if (key.first != check) continue;
        row.status = report ? CheckStatus::Report : (row.margin >= -tol ? CheckStatus::Pass : CheckStatus::Fail);
        out.push_back(row);
      }
    }
    rows_.clear();
  }

 private:
  std::map<std::pair<std::string, int>, CheckRow> rows_;
};

CheckRow make_row(std::string check, std::string location, double lhs, double rhs, double margin, bool pass) {
  return {std::move(check), std::move(location), lhs, rhs, margin, pass ? CheckStatus::Pass : CheckStatus::Fail};
}

double rel_diff(Real a, Real b) {
  const Real scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : static_cast<double>(std::abs(a - b) / scale);
}

// P_k(x) for k = 0..n with first and second derivatives, all by recurrence.
struct LegendreTable {
  std::vector<Real> p, dp, d2p;
};

LegendreTable legendre_table(int n, Real x) {
  LegendreTable t;
  t.p.assign(static_cast<std::size_t>(n) + 1, 0);
  t.dp = t.p;
  t.d2p = t.p;
  t.p[0] = 1;
  if (n >= 1) {
    t.p[1] = x;
    t.dp[1] = 1;
  }
  for (int k = 1; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    t.p[i + 1] = ((2 * k + 1) * x * t.p[i] - k * t.p[i - 1]) / (k + 1);
    t.dp[i + 1] = ((2 * k + 1) * (t.p[i] + x * t.dp[i]) - k * t.dp[i - 1]) / (k + 1);
    t.d2p[i + 1] = ((2 * k + 1) * (2 * t.dp[i] + x * t.d2p[i]) - k * t.d2p[i - 1]) / (k + 1);
  }
  return t;
}

std::vector<double> x_grid_or(const VerifyOptions& opt, double hi) {
  if (!opt.x_grid.empty()) return opt.x_grid;
  return GridSpec{1, hi, static_cast<int>(2 * (hi - 1)) + 1, false}.points();
}

std::vector<double> t_grid_of(const VerifyOptions& opt) {
  return opt.t_grid.empty() ? default_t_grid() : opt.t_grid;
}

void check_range(const VerifyOptions& opt) {
  if (opt.d_lo < 1 || opt.d_hi < opt.d_lo) throw InvalidArgument("verify: invalid d range");
}

// --- identities ------------------------------------------------------------

std::vector<CheckRow> identities(const VerifyOptions& opt) {
  std::vector<CheckRow> out;
  const auto xs = x_grid_or(opt, 20);
  const auto ts = t_grid_of(opt);
  Worst w;
  for (int d = std::max(opt.d_lo, 1); d <= opt.d_hi; ++d) {
    // Legendre side, degree d.
    for (double tv : ts) {
      if (tv >= 1) continue;
      const double r = legendre_identity_residual(d, tv);
      w.add("m-legendre", d, at("t", tv), r, 1e-10, 1e-10 - r);
    }
    for (double xv : xs) {
      const Real x = xv;
      const auto tab = legendre_table(d + 1, x);
      const auto D = static_cast<std::size_t>(d);
      const Real p = tab.p[D], dp = tab.dp[D], d2p = tab.d2p[D];
      const Real dd = Real(d) * (d + 1);

      const Real ode_scale = std::abs((1 - x * x) * d2p) + std::abs(2 * x * dp) + std::abs(dd * p);
      const double ode = static_cast<double>(std::abs((1 - x * x) * d2p - 2 * x * dp + dd * p) / ode_scale);
      w.add("legendre-ode", d, at("x", xv), ode, 1e-10, 1e-10 - ode);

      if (xv > 1) {
        const Real first = Real(d) / (x * x - 1) * (x * p - tab.p[D - 1]);
        const double r1 = rel_diff(first, dp);
        w.add("first-derivative", d, at("x", xv), r1, 1e-10, 1e-10 - r1);
      }
      if (xv >= 1.1) {
        // P''/P from P'/P through the ODE, against the recurrence
        const Real ratio = (2 * x * dp / p - dd) / (1 - x * x);
        const double r2 = rel_diff(ratio, d2p / p);
        w.add("second-derivative", d, at("x", xv), r2, 1e-10, 1e-10 - r2);
      }
      const auto lr = legendre_ratios<Real>(d, x);
      const double r3 = std::max(rel_diff(lr.log_derivative, dp / p), rel_diff(lr.ratio, tab.p[D - 1] / p));
      w.add("log-derivative", d, at("x", xv), r3, 1e-10, 1e-10 - r3);

      // P_d^2 - P_{d+1} P_{d-1} against its closed form, relative to P_d^2
      Real harmonic = 0;
      for (int i = 1; i <= d; ++i) harmonic += Real(1) / i;
      Real nested = 0, inner = 0;
      for (int i = 1; i <= d - 1; ++i) {
        inner += (2 * i + 1) * tab.p[static_cast<std::size_t>(i)] * tab.p[static_cast<std::size_t>(i)];
        nested += inner / (i + 1);
      }
      const Real closed = (1 - x * x) / dd * (harmonic + nested);
      const Real direct = p * p - tab.p[D + 1] * tab.p[D - 1];
      const double r4 = static_cast<double>(std::abs(closed - direct) / (p * p));
      w.add("turan-closed", d, at("x", xv), r4, 1e-10, 1e-10 - r4);

      // H_{d+1} = H_d + (2d+1)(1-x^2) P_d^2, H_k = k^2 [P_k^2 + P_{k-1}^2 - 2x P_k P_{k-1}]
      const auto h = [&](int k, Real& mag) {
        const Real a = tab.p[static_cast<std::size_t>(k)], b = tab.p[static_cast<std::size_t>(k - 1)];
        mag += Real(k) * k * (a * a + b * b + 2 * std::abs(x * a * b));
        return Real(k) * k * (a * a + b * b - 2 * x * a * b);
      };
      Real mag = 0;
      const Real step = (2 * d + 1) * (1 - x * x) * p * p;
      const Real resid = h(d + 1, mag) - h(d, mag) - step;
      mag += std::abs(step);
      const double r5 = static_cast<double>(std::abs(resid) / mag);
      w.add("h-recursion", d, at("x", xv), r5, 1e-10, 1e-10 - r5);
    }
  }
  w.flush(out, 0, false);

  for (int d = std::max(opt.d_lo, 2); d <= opt.d_hi; ++d) {
    // Density formulations, n = 2.
    const GameDims dims(2, d);
    for (double tv : ts) {
      std::array<double, 1> t{tv};
      const double g = f2d_via_G(d, tv);
      const double general = fnd_general(dims, t).value;
      double spread = rel_diff(g, general);
      if (std::abs(tv - 1) >= kLegendreExclusion) {
        spread = std::max({spread, rel_diff(g, f2d_via_legendre(d, tv)), rel_diff(g, f2d_via_legendre_pair(d, tv))});
      }
      if (d <= 4) spread = std::max(spread, rel_diff(g, f2d_closed(d, tv)));
      w.add("formulations", d, at("t", tv), spread, 1e-9, 1e-9 - spread);

      const double inv = rel_diff(f2d(d, 1 / tv), tv * tv * f2d(d, tv));
      w.add("inversion", d, at("t", tv), inv, 1e-10, 1e-10 - inv);

      if (tv < 1) {
        const double y = tv / (1 + tv);
        const double sym = rel_diff(g2d(d, y), g2d(d, 1 - y));
        w.add("g-symmetry", d, at("y", y), sym, 1e-12, 1e-12 - sym);
      }
    }
    const double f0 = f2d(d, 0), e0 = (d - 1) / pi;
    const double r0 = rel_diff(f0, e0);
    w.add("f-at-zero", d, "t=0", f0, e0, 1e-12 - r0);
    const double f1 = f2d(d, 1), e1 = (d - 1) / (2 * pi * std::sqrt(2.0 * d - 3));
    const double r1 = rel_diff(f1, e1);
    w.add("f-at-one", d, "t=1", f1, e1, 1e-12 - r1);
  }
  w.flush(out, 0, false);
  return out;
}

// --- bounds ----------------------------------------------------------------

std::vector<CheckRow> bounds(const VerifyOptions& opt) {
  std::vector<CheckRow> out;
  const auto ts = t_grid_of(opt);
  constexpr double tol = 1e-12;  // relative rounding allowance on attained bounds
  Worst w;
  for (int d = std::max(opt.d_lo, 2); d <= opt.d_hi; ++d) {
    const auto e = expected_count_2d(d, opt.quad);
    const double lo = lower_bound_E2(d), hi = upper_bound_E2(d);
    w.add("e2-lower", d, "", e.value, lo, (e.value + e.error_estimate - lo) / lo);
    w.add("e2-upper", d, "", e.value, hi, (hi - (e.value - e.error_estimate)) / hi);
    for (double tv : ts) {
      const double f = f2d(d, tv);
      const auto b = density_bounds(d, tv);
      w.add("density-over-t", d, at("t", tv), f, b.over_t, (b.over_t - f) / b.over_t);
      w.add("density-at-zero", d, at("t", tv), f, b.at_zero, (b.at_zero - f) / b.at_zero);
      if (b.below_one) w.add("density-below-one", d, at("t", tv), f, *b.below_one, (*b.below_one - f) / *b.below_one);
    }
  }
  w.flush(out, tol, false);

  // Two-player games, n = 3 and 4: closed form, general formula and both bounds.
  if (opt.d_lo <= 2 && 2 <= opt.d_hi) {
    std::vector<double> sub;
    for (std::size_t i = 0; i < ts.size(); i += 4) sub.push_back(ts[i]);
    for (int n : {3, 4}) {
      double worst_unit = std::numeric_limits<double>::infinity(), worst_prod = worst_unit, worst_gen = 0;
      std::array<double, 3> at_unit{}, at_prod{};
      std::vector<double> t(static_cast<std::size_t>(n - 1));
      for (double a : sub) {
        for (double b : sub) {
          t[0] = a;
          t[1] = b;
          if (n == 4) t[2] = std::sqrt(a * b);
          const auto v = fn2(n, t);
          const double mu = (v.bound_unit - v.value) / v.bound_unit;
          const double mp = (v.bound_product - v.value) / v.bound_product;
          if (mu < worst_unit) worst_unit = mu, at_unit = {v.value, v.bound_unit, a};
          if (mp < worst_prod) worst_prod = mp, at_prod = {v.value, v.bound_product, a};
          worst_gen = std::max(worst_gen, rel_diff(v.value, fnd_general(GameDims(n, 2), t).value));
        }
      }
      const std::string loc = "n=" + std::to_string(n) + ";d=2";
      out.push_back(make_row("fn2-unit", loc, at_unit[0], at_unit[1], worst_unit, worst_unit >= -tol));
      out.push_back(make_row("fn2-product", loc, at_prod[0], at_prod[1], worst_prod, worst_prod >= -tol));
      out.push_back(make_row("fn2-general", loc, worst_gen, 1e-10, 1e-10 - worst_gen, worst_gen <= 1e-10));
    }
  }

  // Empirical constants in f_d(t) ~ sqrt(d-1).
  for (double tv : {0.1, 0.5, 1.0, 2.0}) {
    double c1 = std::numeric_limits<double>::infinity(), c2 = 0;
    for (int d = std::max(opt.d_lo, 2); d <= opt.d_hi; ++d) {
      const double c = f2d(d, tv) / std::sqrt(d - 1.0);
      c1 = std::min(c1, c);
      c2 = std::max(c2, c);
    }
    if (c2 == 0) break;
    CheckRow row{"sandwich", at("t", tv) + ";d=" + std::to_string(std::max(opt.d_lo, 2)) + ".." + std::to_string(opt.d_hi),
                 c1, c2, c1, CheckStatus::Report};
    out.push_back(row);
  }
  return out;
}

// --- monotonicity ----------------------------------------------------------

std::vector<CheckRow> monotonicity(const VerifyOptions& opt) {
  std::vector<CheckRow> out;
  const auto ts = t_grid_of(opt);
  std::vector<double> sorted = ts;
  std::sort(sorted.begin(), sorted.end());
  constexpr double tol = 1e-12;
  Worst w;
  const int lo = std::max(opt.d_lo, 2);
  std::vector<ExpectationResult> e, se;
  for (int d = lo; d <= opt.d_hi + 1; ++d) {
    e.push_back(expected_count_2d(d, opt.quad));
    se.push_back(stable_expected_2d(d, opt.quad));
  }
  for (int d = lo; d <= opt.d_hi; ++d) {
    for (double tv : ts) {
      const double a = f2d(d, tv) / (d - 1), b = f2d(d + 1, tv) / d;
      w.add("f-scaled-decreasing", d, at("t", tv), a, b, (a - b) / a);
    }
    const auto i = static_cast<std::size_t>(d - lo);
    const auto scaled = [&](const std::vector<ExpectationResult>& v, const char* name) {
      const double a = v[i].value / (d - 1), b = v[i + 1].value / d;
      const double slack = v[i].error_estimate / (d - 1) + v[i + 1].error_estimate / d;
      w.add(name, d, "", a, b, (a - b + slack) / a);
    };
    scaled(e, "e-scaled-decreasing");
    scaled(se, "se-scaled-decreasing");
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
      const double a = f2d(d, sorted[k]), b = f2d(d, sorted[k + 1]);
      w.add("f-decreasing-in-t", d, at("t", sorted[k + 1]), a, b, (a - b) / a);
    }
  }
  w.flush(out, tol, false);
  return out;
}

// --- reverse Turan -----------------------------------------------------------

std::vector<CheckRow> turan(const VerifyOptions& opt) {
  std::vector<CheckRow> out;
  const auto xs = x_grid_or(opt, 50);
  Worst w;
  for (int d = std::max(opt.d_lo, 1); d <= opt.d_hi; ++d) {
    for (double xv : xs) {
      const Real x = xv;
      const auto hi = legendre_eval<Real>(d + 1, x);
      const Real p = hi.p_prev;
      const Real ratio = hi.p * legendre_eval<Real>(d - 1, x).p / (p * p);
      // lhs P_d^2 and rhs P_{d+1} P_{d-1}, both over P_d^2
      w.add("reverse-turan", d, at("x", xv), 1.0, static_cast<double>(ratio), static_cast<double>(ratio - 1));
    }
  }
  w.flush(out, 1e-15, false);
  return out;
}

// --- factorization ---------------------------------------------------------

std::vector<CheckRow> factorization(const VerifyOptions& opt) {
  std::vector<CheckRow> out;
  const std::vector<double> samples{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  for (int d = std::max(opt.d_lo, 2); d <= opt.d_hi; ++d) {
    const auto m = verify_m_factorization(d, samples);
    const std::string loc = "d=" + std::to_string(d);
    const double min_r = m.r.empty() ? 0.0 : *std::min_element(m.r.begin(), m.r.end());
    const bool ok = m.all_real_negative && min_r > 0;
    out.push_back(make_row("m-roots-negative", loc, static_cast<double>(m.r.size()), d - 1.0, ok ? min_r : -1.0, ok));
    out.push_back(make_row("m-representation", loc, m.max_residual, 1e-8, 1e-8 - m.max_residual,
                           ok && m.max_residual < 1e-8));
  }
  return out;
}

// --- conjecture scan (report only) -------------------------------------------

std::vector<CheckRow> conjecture_scan(const VerifyOptions& opt) {
  std::vector<CheckRow> out;
  const auto ts = t_grid_of(opt);
  const auto xs = x_grid_or(opt, 20);
  Worst w;
  for (int d = std::max(opt.d_lo, 2); d <= opt.d_hi; ++d) {
    for (double tv : ts) {
      const double a = f2d(d, tv), b = f2d(d + 1, tv);
      w.add("f-increasing", d, at("t", tv), a, b, (b - a) / a);
    }
  }
  for (int d = std::max(opt.d_lo, 1); d <= opt.d_hi; ++d) {
    for (double xv : xs) {
      const Real x = xv;
      const auto tab = legendre_table(d + 1, x);
      const auto D = static_cast<std::size_t>(d);
      const Real pn = tab.p[D + 1], p = tab.p[D], pp = tab.p[D - 1];
      const Real p2 = p * p;
      // L_d(x) over (2d+1) P_d^4
      const Real pos = (2 * d + 1) * p2 * p2;
      const Real neg = pp * pp * ((2 * d - 1) * pn * pn + 2 * p2);
      w.add("l-nonnegative", d, at("x", xv), static_cast<double>(pos / pos), static_cast<double>(neg / pos),
            static_cast<double>((pos - neg) / pos));

      const Real dp1 = d + 1;
      const Real t1 = dp1 * dp1 * (pn * pn - p2) * (pn * pn + p2 - 2 * x * pn * p);
      const Real t2 = (2 * d + 1) * (x * x - 1) * p2 * pn * pn;
      const Real scale = std::abs(t1) + std::abs(t2);
      const double c = scale == 0 ? 0.0 : static_cast<double>((t1 + t2) / scale);
      w.add("increase-condition", d, at("x", xv), static_cast<double>(t1 / (scale == 0 ? 1 : scale)),
            static_cast<double>(-t2 / (scale == 0 ? 1 : scale)), c);
    }
  }
  w.flush(out, 0, true);

  if (opt.trends) {
    const std::array<std::pair<int, std::vector<int>>, 2> tables{
        {{3, {3, 5, 10, 20, 40, 70, 100}}, {4, {3, 5, 8, 12, 16, 20}}}};
    QuadratureConfig q = opt.quad;
    q.rel_tol = std::max(q.rel_tol, 1e-6);
    for (const auto& [n, ds] : tables) {
      for (int d : ds) {
        if (d < opt.d_lo || d > opt.d_hi) continue;
        const double ratio = asymptotic_ratio(n, d, q);
        const double limit = (n - 1) / 2.0;
        out.push_back(CheckRow{"ratio-n" + std::to_string(n), "d=" + std::to_string(d), ratio, limit, limit - ratio,
                               CheckStatus::Report});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<CheckRow> run_suite(Suite suite, const VerifyOptions& opt) {
  check_range(opt);
  opt.quad.validate();
  switch (suite) {
    case Suite::Identities:
      return identities(opt);
    case Suite::Bounds:
      return bounds(opt);
    case Suite::Monotonicity:
      return monotonicity(opt);
    case Suite::Turan:
      return turan(opt);
    case Suite::Factorization:
      return factorization(opt);
    case Suite::ConjectureScan:
      break;
  }
  return conjecture_scan(opt);
}

}  // namespace eqdense
