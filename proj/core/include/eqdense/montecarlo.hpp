#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "eqdense/game_dims.hpp"

namespace eqdense {

enum class SamplingKind { IndependentBeta, PayoffAlpha };

struct SamplingMode {
  SamplingKind kind = SamplingKind::IndependentBeta;
  double std = 1.0;  // PayoffAlpha only

  static SamplingMode independent_beta() { return {}; }
  static SamplingMode payoff_alpha(double std) { return {SamplingKind::PayoffAlpha, std}; }

  void validate() const;
};

std::string_view to_string(SamplingKind k);

struct MCConfig {
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  SamplingMode mode;
  int workers = 1;
  int bins = 20;
  bool record_locations = false;

  void validate() const;
};

/// Equilibrium locations in frequency coordinates. n = 2: `bins` cells on
/// [0, 1] in y = t/(1+t). n = 3: a bins x bins grid on [0, 1]^2 in
/// (y1, y2) = (t1, t2)/(1 + t1 + t2), row-major in y1.
struct Histogram {
  int n = 2;
  int bins = 0;
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;

  /// counts / (total * cell area); zero when empty.
  std::vector<double> density() const;
};

struct MCResult {
  GameDims dims;
  std::uint64_t samples = 0;         // requested
  std::uint64_t samples_used = 0;    // samples - samples_failed
  std::uint64_t samples_failed = 0;  // degenerate, excluded from numerator and denominator
  std::uint64_t total_equilibria = 0;
  std::uint64_t total_stable = 0;    // n = 2
  double mean_count = 0;
  double std_error = 0;
  std::optional<double> stable_mean;  // n = 2
  Histogram histogram;
  std::vector<std::uint64_t> count_distribution;  // samples with k equilibria
  std::vector<std::array<double, 2>> locations;   // if requested; y2 unused for n = 2
};

/// Coefficients beta^i indexed by opponent profile (k_1..k_{n-1}) in the
/// order of ExponentTable(n-1, d-1); beta[i] for i = 0..n-2.
using GameSample = std::vector<std::vector<double>>;

/// IndependentBeta: every beta^i_k i.i.d. N(0, 1). PayoffAlpha: one
/// N(0, std^2) payoff per strategy and unordered opponent profile,
/// beta^i = alpha^i - alpha^n.
GameSample sample_game(GameDims dims, const SamplingMode& mode, std::mt19937_64& rng);

struct Count2 {
  int count = 0;
  int stable = 0;
  bool degenerate = false;
  std::vector<double> roots;  // t
};

/// Positive roots of sum beta_k C(d-1, k) t^k, classified by stability.
Count2 count_sample_2(const std::vector<double>& beta, int d);

struct Count3 {
  int count = 0;
  bool degenerate = false;
  std::vector<std::array<double, 2>> roots;  // (t1, t2)
};

/// Positive common roots of the two multinomial-weighted polynomials.
Count3 count_sample_3(const std::vector<double>& beta1, const std::vector<double>& beta2, int d);

/// Seed of the stream for sample block `block`.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block);

inline constexpr std::uint64_t kBlockSize = 256;

/// Samples are split into fixed blocks, each with its own stream, so the
/// result does not depend on the worker count. n must be 2 or 3.
MCResult run_mc(GameDims dims, const MCConfig& cfg);

/// run_mc's histogram.
Histogram equilibria_histogram(GameDims dims, const MCConfig& cfg, int bins);

/// Kolmogorov-Smirnov distance between the sample and a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Normalised CDF of g_2 on [0, 1]: (atan(2y - 1) + pi/4) / (pi/2).
double g2_cdf(double y);

struct SymmetryTest {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
};

/// Chi-square test that mirrored cells of an n = 2 histogram have equal
/// mass: sum (a - b)^2 / (a + b) over pairs with a + b > 0.
SymmetryTest symmetry_chi_square(const Histogram& h);

}  // namespace eqdense
