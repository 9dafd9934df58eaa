#include "eqdense/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "eqdense/errors.hpp"
#include "eqdense/moments.hpp"

namespace eqdense {

namespace {

// QUADPACK node tables. Kronrod abscissae in decreasing order, the last one is
// the centre; Gauss nodes sit at the odd positions.
constexpr std::array<double, 8> kXgk15 = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk15 = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg7 = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 11> kXgk21 = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720, 0.0};
constexpr std::array<double, 11> kWgk21 = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg10 = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                         0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                         0.295524224714752870173892994651338};

struct Rule {
  std::span<const double> xgk;
  std::span<const double> wgk;
  std::span<const double> wg;
  bool gauss_has_centre;
};

Rule rule_for(int nodes) {
  if (nodes == 15) return {kXgk15, kWgk15, kWg7, true};
  if (nodes == 21) return {kXgk21, kWgk21, kWg10, false};
  throw InvalidArgument("nodes_per_panel must be 15 or 21, got " + std::to_string(nodes));
}

struct Panel {
  double a, b;
  double value, error;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel evaluate_panel(const std::function<Estimate(double)>& f, double a, double b, const Rule& rule,
                     long& evaluations) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::size_t n = rule.xgk.size();  // includes centre
  std::vector<double> fv1(n - 1), fv2(n - 1);

  const Estimate fc = f(centre);
  ++evaluations;
  double res_k = rule.wgk[n - 1] * fc.value;
  double res_g = rule.gauss_has_centre ? rule.wg.back() * fc.value : 0.0;
  double res_abs = std::abs(res_k);
  double inner_err = rule.wgk[n - 1] * fc.error;

  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double dx = half * rule.xgk[j];
    const Estimate f1 = f(centre - dx);
    const Estimate f2 = f(centre + dx);
    evaluations += 2;
    fv1[j] = f1.value;
    fv2[j] = f2.value;
    const double sum = f1.value + f2.value;
    res_k += rule.wgk[j] * sum;
    res_abs += rule.wgk[j] * (std::abs(f1.value) + std::abs(f2.value));
    inner_err += rule.wgk[j] * (f1.error + f2.error);
    if (j % 2 == 1) res_g += rule.wg[j / 2] * sum;
  }

  const double mean = 0.5 * res_k;
  double res_asc = rule.wgk[n - 1] * std::abs(fc.value - mean);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    res_asc += rule.wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }

  const double value = res_k * half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0 && err != 0) err = res_asc * std::min(1.0, std::pow(200 * err / res_asc, 1.5));
  constexpr double kEps = 2.220446049250313e-16;
  constexpr double kUflow = 2.2250738585072014e-308;
  if (res_abs > kUflow / (50 * kEps)) err = std::max(50 * kEps * res_abs, err);
  err += inner_err * std::abs(half);
  return {a, b, value, err};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw InvalidArgument("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be >= 1");
  if (nodes_per_panel < 2) throw InvalidArgument("nodes_per_panel must be >= 2");
  rule_for(nodes_per_panel);
}

QuadratureResult integrate_adaptive(const std::function<Estimate(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  const Rule rule = rule_for(cfg.nodes_per_panel);
  QuadratureResult out;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  heap.push(evaluate_panel(f, a, b, rule, out.evaluations));

  auto totals = [&heap]() {
    // Copy out in a canonical order (by left end) so the sum is reproducible.
    auto copy = heap;
    std::vector<Panel> all;
    all.reserve(copy.size());
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum v, e;
    for (const auto& p : all) {
      v.add(p.value);
      e.add(p.error);
    }
    return Estimate{v.value(), e.value()};
  };

  Estimate total = totals();
  int panels = 1;
  while (total.error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value)) && panels < cfg.max_subdivisions) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;  // panel can no longer be split in floating point
    }
    heap.push(evaluate_panel(f, worst.a, mid, rule, out.evaluations));
    heap.push(evaluate_panel(f, mid, worst.b, rule, out.evaluations));
    ++panels;
    total = totals();
  }
  out.value = total.value;
  out.error = total.error;
  out.panels = panels;
  out.converged = total.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total.value));
  return out;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  return integrate_adaptive([&f](double x) { return Estimate{f(x), 0.0}; }, a, b, cfg);
}

namespace {

// Nested rule over axes [axis, dim). With `ordered`, axis k runs over
// [u_{k-1}, 1] instead of [0, 1].
Estimate integrate_axes(const std::function<double(const double*)>& f, std::vector<double>& point, int axis,
                        bool ordered, const QuadratureConfig& cfg, long& evaluations) {
  const int dim = static_cast<int>(point.size());
  const double lo = ordered && axis > 0 ? point[static_cast<std::size_t>(axis - 1)] : 0.0;
  if (axis == dim - 1) {
    const QuadratureResult r = integrate_adaptive(
        [&](double u) {
          point[static_cast<std::size_t>(axis)] = u;
          return f(point.data());
        },
        lo, 1.0, cfg);
    evaluations += r.evaluations;
    return {r.value, r.error};
  }
  QuadratureConfig inner = cfg;
  inner.rel_tol = cfg.rel_tol / 4;
  inner.abs_tol = cfg.abs_tol / 4;
  const QuadratureResult r = integrate_adaptive(
      [&](double u) {
        point[static_cast<std::size_t>(axis)] = u;
        return integrate_axes(f, point, axis + 1, ordered, inner, evaluations);
      },
      lo, 1.0, cfg);
  return {r.value, r.error};
}

QuadratureResult integrate_nested(const std::function<double(const double*)>& f, int dim, bool ordered,
                                  const QuadratureConfig& cfg) {
  if (dim < 1) throw InvalidArgument("nested cube quadrature requires dim >= 1");
  cfg.validate();
  std::vector<double> point(static_cast<std::size_t>(dim), 0.5);
  QuadratureResult out;
  const Estimate e = integrate_axes(f, point, 0, ordered, cfg, out.evaluations);
  out.value = e.value;
  out.error = e.error;
  out.converged = e.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(e.value));
  out.panels = 0;
  return out;
}

}  // namespace

QuadratureResult integrate_unit_cube(const std::function<double(const double*)>& f, int dim,
                                     const QuadratureConfig& cfg) {
  return integrate_nested(f, dim, false, cfg);
}

QuadratureResult integrate_ordered_simplex(const std::function<double(const double*)>& f, int dim,
                                           const QuadratureConfig& cfg) {
  return integrate_nested(f, dim, true, cfg);
}

}  // namespace eqdense
