#pragma once

#include <functional>
#include <span>

#include "eqdense/game_dims.hpp"
#include "eqdense/quadrature.hpp"

namespace eqdense {

struct ExpectationResult {
  double value = 0;
  double error_estimate = 0;
  GameDims dims;
};

/// E(2,d) = 2 * integral_0^1 f_d(t) dt.
ExpectationResult expected_count_2d(int d, const QuadratureConfig& cfg = {});

/// E(n,d) = integral over R_+^(n-1) of f_{n,d}, mapped to the unit cube by
/// t_i = u_i / (1 - u_i). Supported: n = 2 (any d), n = 3 with d <= 400,
/// n = 4 with d <= 20.
ExpectationResult expected_count_nd(GameDims dims, const QuadratureConfig& cfg = {});

/// Integral of an arbitrary density over R_+^dim with the same substitution.
/// The density receives t (length dim).
ExpectationResult integrate_orthant(GameDims dims, const std::function<double(std::span<const double>)>& density,
                                    const QuadratureConfig& cfg = {});

/// For densities invariant under permutations of t: integrates over the
/// ordered region only and multiplies by (n-1)!.
ExpectationResult integrate_orthant_symmetric(GameDims dims,
                                              const std::function<double(std::span<const double>)>& density,
                                              const QuadratureConfig& cfg = {});

/// Integral over all of R^dim: the 2^dim orthants are integrated separately,
/// the density receiving t with the corresponding signs flipped.
ExpectationResult integrate_full_space(GameDims dims, const std::function<double(std::span<const double>)>& density,
                                       const QuadratureConfig& cfg = {});

/// SE(2,d) = E(2,d)/2: each internal equilibrium is stable with probability 1/2.
ExpectationResult stable_expected_2d(int d, const QuadratureConfig& cfg = {});

/// Expected real zeros of the random Bernstein polynomial sum beta_k b_{k,d}(x)
/// over the whole real line: E_B = 2 E(2,d).
ExpectationResult bernstein_expected(int d, const QuadratureConfig& cfg = {});

/// sqrt(d-1)/pi * (1 + ln 2 + ln(d-1)/2)
double upper_bound_E2(int d);

/// 2 f_d(1) = (d-1) / (pi sqrt(2d-3))
double lower_bound_E2(int d);

/// ln E(n,d) / ln(d-1); d >= 3.
double asymptotic_ratio(int n, int d, const QuadratureConfig& cfg = {});

/// Largest d accepted by expected_count_nd for n (0 when n is unsupported).
int max_supported_d(int n);

}  // namespace eqdense
