#include "eqdense/expectation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "eqdense/density.hpp"

namespace eqdense {

namespace {

void require_converged(const QuadratureResult& r, const std::string& what) {
  if (!r.converged) {
    throw ConvergenceError(what + ": error estimate " + std::to_string(r.error) +
                           " above tolerance after the subdivision budget");
  }
}

}  // namespace

int max_supported_d(int n) {
  switch (n) {
    case 2: return std::numeric_limits<int>::max();
    case 3: return 400;
    case 4: return 20;
    default: return 0;
  }
}

ExpectationResult expected_count_2d(int d, const QuadratureConfig& cfg) {
  const TwoStrategyDensity f(d);
  const QuadratureResult r = integrate_adaptive([&f](double t) { return f(t); }, 0.0, 1.0, cfg);
  require_converged(r, "E(2," + std::to_string(d) + ")");
  return {2 * r.value, 2 * r.error, GameDims(2, d)};
}

namespace {

ExpectationResult orthant_impl(GameDims dims, const std::function<double(std::span<const double>)>& density,
                               bool symmetric, const QuadratureConfig& cfg) {
  const int dim = dims.coords();
  if (dim > 8) throw CapacityError("integrate_orthant supports at most 8 coordinates");
  auto integrand = [&](const double* u) {
    double t[8];
    double jac = 1;
    for (int i = 0; i < dim; ++i) {
      const double one_minus = 1 - u[i];
      t[i] = u[i] / one_minus;
      jac /= one_minus * one_minus;
    }
    return density(std::span<const double>(t, static_cast<std::size_t>(dim))) * jac;
  };
  QuadratureResult r;
  double factor = 1;
  if (symmetric && dim > 1) {
    r = integrate_ordered_simplex(integrand, dim, cfg);
    for (int k = 2; k <= dim; ++k) factor *= k;
  } else {
    r = integrate_unit_cube(integrand, dim, cfg);
  }
  require_converged(r, "orthant integral n=" + std::to_string(dims.n) + " d=" + std::to_string(dims.d));
  return {factor * r.value, factor * r.error, dims};
}

}  // namespace

ExpectationResult integrate_orthant(GameDims dims, const std::function<double(std::span<const double>)>& density,
                                    const QuadratureConfig& cfg) {
  return orthant_impl(dims, density, false, cfg);
}

ExpectationResult integrate_orthant_symmetric(GameDims dims,
                                              const std::function<double(std::span<const double>)>& density,
                                              const QuadratureConfig& cfg) {
  return orthant_impl(dims, density, true, cfg);
}

ExpectationResult integrate_full_space(GameDims dims, const std::function<double(std::span<const double>)>& density,
                                       const QuadratureConfig& cfg) {
  const int dim = dims.n - 1;
  if (dim > 8) throw CapacityError("integrate_full_space supports at most 8 coordinates");
  ExpectationResult total{0, 0, dims};
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    const auto part = integrate_orthant(
        dims,
        [&](std::span<const double> t) {
          double flipped[8];
          for (int i = 0; i < dim; ++i) flipped[i] = (mask >> i) & 1u ? -t[i] : t[i];
          return density(std::span<const double>(flipped, t.size()));
        },
        cfg);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
  }
  return total;
}

ExpectationResult expected_count_nd(GameDims dims, const QuadratureConfig& cfg) {
  if (dims.d > max_supported_d(dims.n)) {
    throw CapacityError("expected_count_nd supports n=2 (any d), n=3 (d<=400), n=4 (d<=20); got n=" +
                        std::to_string(dims.n) + " d=" + std::to_string(dims.d));
  }
  const GeneralDensityKernel kernel(dims);
  return integrate_orthant_symmetric(
      dims,
      [&kernel](std::span<const double> t) {
        const GeneralDensity g = kernel(t);
        if (g.degenerate) throw NumericalError("det L negative beyond tolerance inside E(n,d) integrand");
        return g.value;
      },
      cfg);
}

ExpectationResult stable_expected_2d(int d, const QuadratureConfig& cfg) {
  ExpectationResult r = expected_count_2d(d, cfg);
  r.value /= 2;
  r.error_estimate /= 2;
  return r;
}

ExpectationResult bernstein_expected(int d, const QuadratureConfig& cfg) {
  ExpectationResult r = expected_count_2d(d, cfg);
  r.value *= 2;
  r.error_estimate *= 2;
  return r;
}

double upper_bound_E2(int d) {
  if (d < 2) throw InvalidArgument("upper_bound_E2 requires d >= 2");
  const double dm1 = d - 1;
  return std::sqrt(dm1) / std::numbers::pi * (1 + std::numbers::ln2 + 0.5 * std::log(dm1));
}

double lower_bound_E2(int d) {
  if (d < 2) throw InvalidArgument("lower_bound_E2 requires d >= 2");
  return (d - 1) / (std::numbers::pi * std::sqrt(2.0 * d - 3));
}

double asymptotic_ratio(int n, int d, const QuadratureConfig& cfg) {
  if (d < 3) throw InvalidArgument("asymptotic_ratio requires d >= 3 (ln(d-1) vanishes at d = 2)");
  const GameDims dims(n, d);
  const double e = n == 2 ? expected_count_2d(d, cfg).value : expected_count_nd(dims, cfg).value;
  return std::log(e) / std::log(static_cast<double>(d - 1));
}

}  // namespace eqdense
