#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "eqdense/combinatorics.hpp"
#include "eqdense/game_dims.hpp"

namespace eqdense {

inline constexpr std::uint64_t kDefaultMaxTerms = 10'000'000;

/// Moments of the exponent multi-index k under the weights
/// w_k = c_k^2 prod t_i^(2 k_i) / S, with c_k the multinomial coefficient.
struct WeightedMoments {
  int dim = 0;
  double log_s = 0;                 // log S(t)
  std::vector<double> mean;         // E_w[k_i]
  std::vector<double> second;       // E_w[k_i k_j], row-major dim x dim
  std::vector<double> covariance;   // E_w[(k_i - m_i)(k_j - m_j)], two-pass

  double second_at(int i, int j) const { return second[static_cast<std::size_t>(i * dim + j)]; }
  double cov_at(int i, int j) const { return covariance[static_cast<std::size_t>(i * dim + j)]; }
};

/// Precomputed exponent table and coefficients for repeated moment
/// evaluation at many points (quadrature, grids).
///
/// Weights are formed in the linear domain from power tables scaled by
/// max(1, t_i^2) when every c_k^2 fits comfortably in a double, otherwise in
/// the log domain (one exp per term). `force_log` selects the latter.
class MomentKernel {
 public:
  explicit MomentKernel(GameDims dims, std::uint64_t max_terms = kDefaultMaxTerms, bool force_log = false);

  const GameDims& dims() const { return dims_; }
  std::size_t terms() const { return table_.size(); }
  bool linear() const { return linear_; }

  WeightedMoments evaluate(std::span<const double> t) const;

 private:
  GameDims dims_;
  ExponentTable table_;
  std::vector<double> log_coeff2_;  // 2 log c_k
  std::vector<double> coeff2_;      // c_k^2, linear route only
  bool linear_ = false;
};

/// One-shot evaluation; builds a MomentKernel.
WeightedMoments weighted_moments(GameDims dims, std::span<const double> t,
                                 std::uint64_t max_terms = kDefaultMaxTerms);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double s = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - s) + v;
    } else {
      comp_ += (v - s) + sum_;
    }
    sum_ = s;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

}  // namespace eqdense
