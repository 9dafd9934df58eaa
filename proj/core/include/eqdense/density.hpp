#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eqdense/game_dims.hpp"
#include "eqdense/moments.hpp"

namespace eqdense {

// Above this d the Horner route overflows (M_d(1) = C(2d-2, d-1) nears
// DBL_MAX around d = 516) and the n = 2 density switches to log-domain moments.
inline constexpr int kHornerMaxD = 500;

// |t - 1| below which the Legendre formulations cancel and `f2d` uses G.
inline constexpr double kLegendreExclusion = 1e-4;

enum class Formulation { Auto, G, Legendre, LegendrePair, Closed, General, Elliptic };

std::string_view to_string(Formulation f);
Formulation parse_formulation(std::string_view name);

// ---------------------------------------------------------------------------
// Two strategies: f_d(t) = f_{2,d}(t)

/// Expected zeros per unit length of sum beta_k C(d-1,k) t^k with i.i.d.
/// standard normal beta, via G(t) = t d/dt log M_d(t):
///   f_d(t) = (1/2pi) sqrt(G'(t)/t).
/// M, M', M'' are Horner sums over exact coefficients rounded once. For
/// t > 1 the same sums are taken over the reversed coefficient sequence,
/// which only rescales M, M', M'' by t^(-2(d-1)).
class TwoStrategyDensity {
 public:
  explicit TwoStrategyDensity(int d);

  int d() const { return d_; }

  double operator()(double t) const;

  /// G'(t)/t, the quantity under the square root times (2pi)^2.
  double g_prime_over_t(double t) const;

 private:
  int d_;
  std::vector<double> coeff_;                // C(d-1,k)^2 as doubles (Horner route)
  std::optional<MomentKernel> kernel_;       // log-domain route for d > kHornerMaxD
};

double f2d_via_G(int d, double t);

/// Literal closed forms for d = 2, 3, 4.
double f2d_closed(int d, double t);

/// (2pi f_{D+1})^2 = 4D^2/(1-t^2)^2 - 16 t^2/(1-t^2)^4 (P'_D/P_D)^2 at
/// x = (1+t^2)/(1-t^2); t > 1 is folded into (0,1) by f(1/t) = t^2 f(t).
double f2d_via_legendre(int d, double t);

/// (2pi f_{D+1})^2 = 4D^2/(1-t^2)^2 - D^2/t^2 [x - P_{D-1}/P_D]^2.
double f2d_via_legendre_pair(int d, double t);

/// Dispatcher: Legendre pair away from t = 1, G close to it and at t = 0.
double f2d(int d, double t, Formulation f = Formulation::Auto);

/// Frequency-coordinate density g_d(y) = f_d(y/(1-y)) / (1-y)^2.
double g2d(int d, double y);

// ---------------------------------------------------------------------------
// General n

struct TwoPlayerDensity {
  double value;
  double bound_unit;     // pi^(-n/2) Gamma(n/2)
  double bound_product;  // pi^(-n/2) Gamma(n/2) / (n^(n/2) t_1...t_{n-1}); inf on the boundary
};

/// Closed form for d = 2: pi^(-n/2) Gamma(n/2) (1 + |t|^2)^(-n/2).
TwoPlayerDensity fn2(int n, std::span<const double> t);

struct GeneralDensity {
  double value = 0;
  double det_l = 0;
  bool degenerate = false;  // det L < 0 beyond tolerance; value is NaN
};

/// f_{n,d}(t) = pi^(-n/2) Gamma(n/2) sqrt(det L) with
/// L_ij = Cov_w(k_i, k_j) / (t_i t_j).
class GeneralDensityKernel {
 public:
  explicit GeneralDensityKernel(GameDims dims, std::uint64_t max_terms = kDefaultMaxTerms);

  const GameDims& dims() const { return moments_.dims(); }

  GeneralDensity operator()(std::span<const double> t) const;

 private:
  MomentKernel moments_;
  double prefactor_;
};

GeneralDensity fnd_general(GameDims dims, std::span<const double> t,
                           std::uint64_t max_terms = kDefaultMaxTerms);

/// Elliptic (square-root multinomial) ensemble:
/// pi^(-n/2) Gamma(n/2) (d-1)^((n-1)/2) / (1 + |t|^2)^(n/2).
double f_elliptic(GameDims dims, std::span<const double> t);

/// pi^(-n/2) Gamma(n/2)
double sphere_prefactor(int n);

/// Frequency-coordinate density: t_i = y_i / y_n with y_n = 1 - sum(y),
/// Jacobian y_n^(-n).
double g_general(GameDims dims, std::span<const double> y);

/// Density of the requested formulation at t (length n-1).
double density_value(GameDims dims, std::span<const double> t, Formulation f);

// ---------------------------------------------------------------------------
// Bounds and Legendre-side inequalities

struct DensityBounds {
  double over_t;                  // sqrt(d-1) / (2 pi t)
  double at_zero;                 // (d-1) / pi
  std::optional<double> below_one;  // (d-1) / (pi (1 - t^2)), t < 1 only
};

DensityBounds density_bounds(int d, double t);

/// |M_{d+1}(t) - (1-t^2)^d P_d((1+t^2)/(1-t^2))| / M_{d+1}(t), in long double;
/// 0 <= t < 1, d >= 0.
double legendre_identity_residual(int d, double t);

/// P_{d+1}(x) P_{d-1}(x) - P_d(x)^2; nonnegative for |x| >= 1.
double turan_gap(int d, double x);

/// Closed-form value of P_d^2 - P_{d+1} P_{d-1}:
/// (1-x^2)/(d(d+1)) [sum_{i<=d} 1/i + sum_{i<d} 1/(i+1) sum_{j<=i} (2j+1) P_j^2].
double turan_difference_closed(int d, double x);

/// L_d(x) = (2d+1) P_d^4 - P_{d-1}^2 [(2d-1) P_{d+1}^2 + 2 P_d^2].
double l_scan_value(int d, double x);

/// Left side of the necessary-and-sufficient condition for f_{d+2} >= f_{d+1}:
/// (d+1)^2 [P_{d+1}^2 - P_d^2][P_{d+1}^2 + P_d^2 - 2x P_{d+1} P_d]
///   + (2d+1)(x^2-1) P_d^2 P_{d+1}^2.
double increase_condition(int d, double x);

}  // namespace eqdense
