#pragma once

#include <functional>

namespace eqdense {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  int max_subdivisions = 200;  // per axis
  int nodes_per_panel = 15;    // Kronrod points: 15 (G7-K15) or 21 (G10-K21)

  void validate() const;
};

/// Integral estimate paired with its error bound.
struct Estimate {
  double value = 0;
  double error = 0;
};

struct QuadratureResult {
  double value = 0;
  double error = 0;
  int panels = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod on [a, b]. The panel with the largest error is
/// bisected first; ties go to the panel with the smaller left end, so the
/// refinement sequence is a pure function of the integrand.
///
/// The integrand may carry its own error (nested quadrature); that error is
/// integrated with the Kronrod weights and added to the panel error.
QuadratureResult integrate_adaptive(const std::function<Estimate(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg);

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg);

/// Tensor-product adaptive quadrature over the open unit cube (0,1)^dim,
/// nesting one adaptive 1D rule per axis. Inner axes run at a tighter
/// tolerance and report their error upwards.
QuadratureResult integrate_unit_cube(const std::function<double(const double*)>& f, int dim,
                                     const QuadratureConfig& cfg);

/// Same nesting over the ordered region 0 < u_1 < u_2 < ... < u_dim < 1. For
/// an integrand symmetric in its arguments the cube integral is dim! times
/// this.
QuadratureResult integrate_ordered_simplex(const std::function<double(const double*)>& f, int dim,
                                           const QuadratureConfig& cfg);

}  // namespace eqdense
