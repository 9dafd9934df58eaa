#pragma once

#include <cmath>
#include <concepts>

#include "eqdense/errors.hpp"

namespace eqdense {

/// P_d(x), P_{d-1}(x) and P'_d(x).
template <std::floating_point Real>
struct BasicLegendreValue {
  Real p;
  Real p_prev;
  Real dp;
};

using LegendreValue = BasicLegendreValue<double>;

/// Legendre polynomial by the upward three-term recurrence
/// (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}.
///
/// The derivative comes from (x^2-1) P'_d = d (x P_d - P_{d-1}); close to
/// x = +-1, where that quotient cancels, the differentiated recurrence is
/// carried along instead, and the endpoint values are exact. For d = 0 the
/// previous term is reported as P_{-1} = P_0 = 1. Overflow yields non-finite values.
template <std::floating_point Real>
BasicLegendreValue<Real> legendre_eval(int d, Real x) {
  if (d < 0) throw InvalidArgument("legendre_eval requires d >= 0");
  if (d == 0) return {Real(1), Real(1), Real(0)};
  Real prev = 1, cur = x;
  Real dprev = 0, dcur = 1;
  for (int k = 1; k < d; ++k) {
    const Real next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
    const Real dnext = ((2 * k + 1) * (cur + x * dcur) - k * dprev) / (k + 1);
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
  const Real gap = x * x - 1;
  Real dp;
  if (gap == 0) {
    const Real end = Real(d) * Real(d + 1) / 2;
    dp = (x > 0 || d % 2 == 1) ? end : -end;
  } else if (std::abs(gap) < Real(1e-2)) {
    dp = dcur;
  } else {
    dp = Real(d) / gap * (x * cur - prev);
  }
  return {cur, prev, dp};
}

/// Overflow-free ratios for x >= 1: ratio = P_{d-1}/P_d and
/// log_derivative = P'_d/P_d.
template <std::floating_point Real>
struct LegendreRatios {
  Real ratio;
  Real log_derivative;
};

/// Normalised recurrences, valid for x >= 1 where every P_k is positive.
/// The derivative ratio is propagated through the differentiated recurrence,
/// independently of the first-derivative relation.
template <std::floating_point Real>
LegendreRatios<Real> legendre_ratios(int d, Real x) {
  if (d < 1) throw InvalidArgument("legendre_ratios requires d >= 1");
  if (!(x >= 1)) throw InvalidArgument("legendre_ratios requires x >= 1");
  // rho_k = P_{k-1}/P_k, sigma_k = P'_k/P_k
  Real rho = 1 / x;
  Real sigma_prev = 0;
  Real sigma = 1 / x;
  for (int k = 1; k < d; ++k) {
    const Real up = ((2 * k + 1) * x - k * rho) / (k + 1);  // P_{k+1}/P_k
    const Real sigma_next = ((2 * k + 1) * (1 + x * sigma) - k * sigma_prev * rho) / ((k + 1) * up);
    rho = 1 / up;
    sigma_prev = sigma;
    sigma = sigma_next;
  }
  return {rho, sigma};
}

}  // namespace eqdense
