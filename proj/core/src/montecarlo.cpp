#include "eqdense/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "eqdense/bivariate.hpp"
#include "eqdense/combinatorics.hpp"
#include "eqdense/errors.hpp"
#include "eqdense/realroots.hpp"

namespace eqdense {

void SamplingMode::validate() const {
  if (kind == SamplingKind::PayoffAlpha && !(std > 0 && std::isfinite(std))) {
    throw InvalidArgument("PayoffAlpha requires a positive finite std");
  }
}

std::string_view to_string(SamplingKind k) { return k == SamplingKind::PayoffAlpha ? "alpha" : "beta"; }

void MCConfig::validate() const {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (bins < 1) throw InvalidArgument("bins must be >= 1");
  mode.validate();
}

std::uint64_t Histogram::total() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

std::vector<double> Histogram::density() const {
  std::vector<double> out(counts.size(), 0.0);
  const std::uint64_t tot = total();
  if (tot == 0 || bins == 0) return out;
  const double width = 1.0 / bins;
  const double area = n == 2 ? width : width * width;
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / (static_cast<double>(tot) * area);
  return out;
}

GameSample sample_game(GameDims dims, const SamplingMode& mode, std::mt19937_64& rng) {
  mode.validate();
  const std::size_t profiles = static_cast<std::size_t>(exponent_count(dims.n - 1, dims.d - 1));
  const std::size_t rows = static_cast<std::size_t>(dims.n - 1);
  GameSample beta(rows, std::vector<double>(profiles));
  std::normal_distribution<double> normal(0.0, 1.0);
  if (mode.kind == SamplingKind::IndependentBeta) {
    for (auto& row : beta) {
      for (auto& v : row) v = normal(rng);
    }
    return beta;
  }
  // alpha^1 .. alpha^n, one draw per unordered opponent profile
  for (auto& row : beta) {
    for (auto& v : row) v = mode.std * normal(rng);
  }
  for (std::size_t k = 0; k < profiles; ++k) {
    const double alpha_n = mode.std * normal(rng);
    for (auto& row : beta) row[k] -= alpha_n;
  }
  return beta;
}

Count2 count_sample_2(const std::vector<double>& beta, int d) {
  if (d < 2 || static_cast<int>(beta.size()) != d) throw InvalidArgument("count_sample_2: beta must have length d");
  std::vector<mpq_class> c(beta.size());
  mpz_class binom;
  for (int k = 0; k < d; ++k) {
    if (!std::isfinite(beta[static_cast<std::size_t>(k)])) throw InvalidArgument("count_sample_2: non-finite beta");
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(k));
    c[static_cast<std::size_t>(k)] = mpq_class(beta[static_cast<std::size_t>(k)]) * binom;
  }
  const RationalPoly p(std::move(c));
  Count2 out;
  if (p.is_zero()) {
    out.degenerate = true;
    return out;
  }
  for (const auto& box : isolate_positive_roots_relative(primitive_integer(p), 1e-12)) {
    ++out.count;
    out.roots.push_back(box.midpoint());
    Stability s = classify_stability_2(beta, box, d);
    if (s == Stability::Indeterminate) {
      // P changes sign across the box; falling through zero means B' < 0.
      s = sgn(p(box.hi)) < 0 ? Stability::Stable : Stability::Unstable;
    }
    if (s == Stability::Stable) ++out.stable;
  }
  return out;
}

Count3 count_sample_3(const std::vector<double>& beta1, const std::vector<double>& beta2, int d) {
  if (d < 2) throw InvalidArgument("count_sample_3 requires d >= 2");
  const ExponentTable table(2, d - 1);
  if (beta1.size() != table.size() || beta2.size() != table.size()) {
    throw InvalidArgument("count_sample_3: beta length must be " + std::to_string(table.size()));
  }
  std::vector<std::vector<mpq_class>> c1(static_cast<std::size_t>(d), std::vector<mpq_class>(static_cast<std::size_t>(d)));
  auto c2 = c1;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto k = table[r];
    const mpz_class w = multinomial(d - 1, k);
    const auto i = static_cast<std::size_t>(k[0]), j = static_cast<std::size_t>(k[1]);
    c1[i][j] = mpq_class(beta1[r]) * w;
    c2[i][j] = mpq_class(beta2[r]) * w;
  }
  Count3 out;
  const BivariatePoly p1(std::move(c1)), p2(std::move(c2));
  try {
    out.roots = positive_system_roots(p1, p2);
  } catch (const DegenerateError&) {
    out.degenerate = true;
    return out;
  }
  out.count = static_cast<int>(out.roots.size());
  return out;
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(seed) ^ splitmix(block + 0x632be59bd9b4e019ULL));
}

namespace {

struct BlockTally {
  std::uint64_t used = 0;
  std::uint64_t failed = 0;
  std::uint64_t total = 0;
  std::uint64_t total_sq = 0;
  std::uint64_t stable = 0;
  std::vector<std::uint64_t> hist;
  std::vector<std::uint64_t> distribution;
  std::vector<std::array<double, 2>> locations;
};

int bin_of(double y, int bins) {
  const int b = static_cast<int>(std::floor(y * bins));
  return std::clamp(b, 0, bins - 1);
}

void tally_count(BlockTally& t, int count) {
  ++t.used;
  t.total += static_cast<std::uint64_t>(count);
  t.total_sq += static_cast<std::uint64_t>(count) * static_cast<std::uint64_t>(count);
  if (t.distribution.size() <= static_cast<std::size_t>(count)) t.distribution.resize(static_cast<std::size_t>(count) + 1, 0);
  ++t.distribution[static_cast<std::size_t>(count)];
}

BlockTally run_block(GameDims dims, const MCConfig& cfg, std::uint64_t block) {
  BlockTally t;
  const int bins = cfg.bins;
  t.hist.assign(dims.n == 2 ? static_cast<std::size_t>(bins) : static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins), 0);
  std::mt19937_64 rng(block_seed(cfg.seed, block));
  const std::uint64_t first = block * kBlockSize;
  const std::uint64_t last = std::min(cfg.samples, first + kBlockSize);
  for (std::uint64_t s = first; s < last; ++s) {
    const GameSample g = sample_game(dims, cfg.mode, rng);
    if (dims.n == 2) {
      const Count2 c = count_sample_2(g[0], dims.d);
      if (c.degenerate) {
        ++t.failed;
        continue;
      }
      tally_count(t, c.count);
      t.stable += static_cast<std::uint64_t>(c.stable);
      for (double r : c.roots) {
        const double y = r / (1 + r);
        ++t.hist[static_cast<std::size_t>(bin_of(y, bins))];
        if (cfg.record_locations) t.locations.push_back({y, 0.0});
      }
    } else {
      const Count3 c = count_sample_3(g[0], g[1], dims.d);
      if (c.degenerate) {
        ++t.failed;
        continue;
      }
      tally_count(t, c.count);
      for (const auto& r : c.roots) {
        const double s_inv = 1 / (1 + r[0] + r[1]);
        const double y1 = r[0] * s_inv, y2 = r[1] * s_inv;
        ++t.hist[static_cast<std::size_t>(bin_of(y1, bins) * bins + bin_of(y2, bins))];
        if (cfg.record_locations) t.locations.push_back({y1, y2});
      }
    }
  }
  return t;
}

}  // namespace

MCResult run_mc(GameDims dims, const MCConfig& cfg) {
  cfg.validate();
  if (dims.n != 2 && dims.n != 3) throw InvalidArgument("run_mc supports n = 2 or 3, got n=" + std::to_string(dims.n));
  if (dims.n == 3 && dims.d > 5) throw CapacityError("run_mc with n = 3 supports d <= 5");

  const std::uint64_t blocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
  std::vector<BlockTally> tallies(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        tallies[b] = run_block(dims, cfg, b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = blocks;
        return;
      }
    }
  };
  const int threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  MCResult out;
  out.dims = dims;
  out.samples = cfg.samples;
  out.histogram.n = dims.n;
  out.histogram.bins = cfg.bins;
  for (int i = 0; i <= cfg.bins; ++i) out.histogram.edges.push_back(static_cast<double>(i) / cfg.bins);
  out.histogram.counts.assign(dims.n == 2 ? static_cast<std::size_t>(cfg.bins)
                                          : static_cast<std::size_t>(cfg.bins) * static_cast<std::size_t>(cfg.bins),
                              0);
  std::uint64_t total_sq = 0;
  for (const auto& t : tallies) {
    out.samples_used += t.used;
    out.samples_failed += t.failed;
    out.total_equilibria += t.total;
    out.total_stable += t.stable;
    total_sq += t.total_sq;
    for (std::size_t i = 0; i < t.hist.size(); ++i) out.histogram.counts[i] += t.hist[i];
    if (out.count_distribution.size() < t.distribution.size()) out.count_distribution.resize(t.distribution.size(), 0);
    for (std::size_t i = 0; i < t.distribution.size(); ++i) out.count_distribution[i] += t.distribution[i];
    out.locations.insert(out.locations.end(), t.locations.begin(), t.locations.end());
  }
  if (out.samples_used > 0) {
    const double n = static_cast<double>(out.samples_used);
    const double sum = static_cast<double>(out.total_equilibria);
    out.mean_count = sum / n;
    if (out.samples_used > 1) {
      const double var = (static_cast<double>(total_sq) - sum * sum / n) / (n - 1);
      out.std_error = std::sqrt(std::max(0.0, var) / n);
    }
    if (dims.n == 2) out.stable_mean = static_cast<double>(out.total_stable) / n;
  }
  return out;
}

Histogram equilibria_histogram(GameDims dims, const MCConfig& cfg, int bins) {
  MCConfig c = cfg;
  c.bins = bins;
  return run_mc(dims, c).histogram;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidArgument("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double g2_cdf(double y) {
  if (y <= 0) return 0;
  if (y >= 1) return 1;
  return (std::atan(2 * y - 1) + std::numbers::pi / 4) / (std::numbers::pi / 2);
}

SymmetryTest symmetry_chi_square(const Histogram& h) {
  if (h.n != 2) throw InvalidArgument("symmetry_chi_square expects an n = 2 histogram");
  SymmetryTest out;
  const std::size_t b = h.counts.size();
  for (std::size_t i = 0; i < b / 2; ++i) {
    const double a = static_cast<double>(h.counts[i]);
    const double c = static_cast<double>(h.counts[b - 1 - i]);
    if (a + c == 0) continue;
    out.statistic += (a - c) * (a - c) / (a + c);
    ++out.dof;
  }
  if (out.dof > 0) {
    const boost::math::chi_squared dist(out.dof);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  }
  return out;
}

}  // namespace eqdense
