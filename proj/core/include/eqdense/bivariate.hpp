#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

#include "eqdense/polynomial.hpp"

namespace eqdense {

enum class Axis { T1, T2 };

/// Value, gradient and sum |c_ij| |t1|^i |t2|^j at a point.
struct BivariateEval {
  long double value = 0;
  long double d_dt1 = 0;
  long double d_dt2 = 0;
  long double magnitude = 0;
};

/// Dense polynomial in (t1, t2) with rational coefficients; coeff(i, j)
/// multiplies t1^i t2^j.
class BivariatePoly {
 public:
  BivariatePoly() = default;

  /// rows indexed by the t1 power, columns by the t2 power.
  explicit BivariatePoly(std::vector<std::vector<mpq_class>> coeffs);

  static BivariatePoly from_doubles(const std::vector<std::vector<double>>& coeffs);

  bool is_zero() const;
  int degree(Axis axis) const;  // kZeroPolyDegree for the zero polynomial
  int total_degree() const;

  mpq_class coeff(int i, int j) const;

  double operator()(double t1, double t2) const;
  double d_dt1(double t1, double t2) const;
  double d_dt2(double t1, double t2) const;
  BivariateEval evaluate(long double t1, long double t2) const;

  /// Largest |coefficient| as a double.
  double max_norm() const;

  /// Coefficients of powers of `axis`, each a polynomial in the other variable.
  std::vector<RationalPoly> in_variable(Axis axis) const;

  /// Substitutes an exact rational for `axis`; the result is a polynomial in
  /// the other variable.
  RationalPoly substitute(Axis axis, const mpq_class& value) const;

 private:
  void trim();

  std::vector<std::vector<mpq_class>> c_;
  std::vector<std::vector<double>> cd_;
  std::vector<std::vector<long double>> cl_;
};

/// Determinant of the Sylvester matrix of p1, p2 taken as polynomials in
/// `eliminate`, by fraction-free Bareiss elimination over Z[other]. The
/// result is defined up to a nonzero constant factor.
RationalPoly sylvester_resultant(const BivariatePoly& p1, const BivariatePoly& p2, Axis eliminate);

struct SystemRootsOptions {
  double refine_tol = 1e-13;
  double dedup_tol = 1e-7;
  double residual_tol = 1e-10;  // |p(x)| <= residual_tol * magnitude, for both equations
  double drift_tol = 1e-6;      // Newton may move t1 this far (relative) from the resultant root
  int max_degree = 32;
};

/// Common roots of p1 = p2 = 0 in the open positive quadrant. Positive roots
/// of the resultant in t1 are isolated exactly; positive roots of both
/// slices p1(t1, .) and p2(t1, .) seed a long double Newton iteration on the
/// system, and survivors of the residual and drift tests are deduplicated.
std::vector<std::array<double, 2>> positive_system_roots(const BivariatePoly& p1, const BivariatePoly& p2,
                                                         const SystemRootsOptions& opt = {});

int count_positive_system_roots(const BivariatePoly& p1, const BivariatePoly& p2, double refine_tol = 1e-13,
                                double dedup_tol = 1e-7);

}  // namespace eqdense
