#include "eqdense/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace eqdense {

namespace {

ExponentTable checked_table(const GameDims& dims, std::uint64_t max_terms) {
  const std::uint64_t count = exponent_count(dims.coords(), dims.degree());
  if (count > max_terms) {
    throw CapacityError("weighted moments: " + std::to_string(count) + " exponent vectors for n=" +
                        std::to_string(dims.n) + ", d=" + std::to_string(dims.d) + " exceed the cap of " +
                        std::to_string(max_terms));
  }
  return ExponentTable(dims.coords(), dims.degree());
}

}  // namespace

MomentKernel::MomentKernel(GameDims dims, std::uint64_t max_terms, bool force_log)
    : dims_(dims), table_(checked_table(dims, max_terms)) {
  log_coeff2_.reserve(table_.size());
  double max_log = 0;
  for (std::size_t r = 0; r < table_.size(); ++r) {
    log_coeff2_.push_back(2.0 * log_multinomial(dims_.degree(), table_[r]));
    max_log = std::max(max_log, log_coeff2_.back());
  }
  // Squared coefficients comfortably inside double range: skip the exp per term.
  linear_ = !force_log && max_log < 600;
  if (linear_) {
    coeff2_.reserve(table_.size());
    for (std::size_t r = 0; r < table_.size(); ++r) {
      const double c = multinomial(dims_.degree(), table_[r]).get_d();
      coeff2_.push_back(c * c);
    }
  }
}

WeightedMoments MomentKernel::evaluate(std::span<const double> t) const {
  const int dim = dims_.coords();
  const int deg = dims_.degree();
  if (static_cast<int>(t.size()) != dim) {
    throw InvalidArgument("weighted moments: expected " + std::to_string(dim) + " coordinates");
  }
  for (int i = 0; i < dim; ++i) {
    if (!(t[static_cast<std::size_t>(i)] > 0) || !std::isfinite(t[static_cast<std::size_t>(i)])) {
      throw InvalidArgument("weighted moments: coordinates must be positive and finite");
    }
  }

  const std::size_t terms = table_.size();
  const auto udim = static_cast<std::size_t>(dim);
  std::vector<double> w(terms);
  double log_scale = 0;
  if (linear_) {
    // w_k = c_k^2 prod (s_i/sigma)^k_i sigma^(-k_n), s = t^2, sigma = max(1, s)
    double sigma = 1;
    for (int i = 0; i < dim; ++i) sigma = std::max(sigma, t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)]);
    const auto width = static_cast<std::size_t>(deg) + 1;
    std::vector<double> pow_table((udim + 1) * width);
    for (std::size_t i = 0; i <= udim; ++i) {
      const double base = i < udim ? t[i] * t[i] / sigma : 1 / sigma;
      double v = 1;
      for (std::size_t k = 0; k < width; ++k) {
        pow_table[i * width + k] = v;
        v *= base;
      }
    }
    for (std::size_t r = 0; r < terms; ++r) {
      const auto k = table_[r];
      int slack = deg;
      double v = coeff2_[r];
      for (std::size_t i = 0; i < udim; ++i) {
        v *= pow_table[i * width + static_cast<std::size_t>(k[i])];
        slack -= k[i];
      }
      w[r] = v * pow_table[udim * width + static_cast<std::size_t>(slack)];
    }
    log_scale = deg * std::log(sigma);
  } else {
    std::vector<double> two_log_t(udim);
    for (std::size_t i = 0; i < udim; ++i) two_log_t[i] = 2.0 * std::log(t[i]);
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < terms; ++r) {
      const auto k = table_[r];
      double lw = log_coeff2_[r];
      for (std::size_t i = 0; i < udim; ++i) lw += k[i] * two_log_t[i];
      w[r] = lw;
      max_log = std::max(max_log, lw);
    }
    for (std::size_t r = 0; r < terms; ++r) w[r] = std::exp(w[r] - max_log);
    log_scale = max_log;
  }

  CompensatedSum total;
  std::vector<CompensatedSum> first(udim);
  for (std::size_t r = 0; r < terms; ++r) {
    total.add(w[r]);
    const auto k = table_[r];
    for (std::size_t i = 0; i < udim; ++i) first[i].add(w[r] * k[i]);
  }
  const double s = total.value();

  WeightedMoments out;
  out.dim = dim;
  out.log_s = log_scale + std::log(s);
  out.mean.assign(udim, 0.0);
  out.second.assign(udim * udim, 0.0);
  out.covariance.assign(udim * udim, 0.0);
  for (std::size_t i = 0; i < udim; ++i) out.mean[i] = first[i].value() / s;

  // Second pass about the mean, all pairs i <= j at once.
  std::vector<CompensatedSum> acc(udim * udim);
  std::vector<double> centred(udim);
  for (std::size_t r = 0; r < terms; ++r) {
    const auto k = table_[r];
    for (std::size_t i = 0; i < udim; ++i) centred[i] = k[i] - out.mean[i];
    for (std::size_t i = 0; i < udim; ++i) {
      const double wi = w[r] * centred[i];
      for (std::size_t j = i; j < udim; ++j) acc[i * udim + j].add(wi * centred[j]);
    }
  }
  for (std::size_t i = 0; i < udim; ++i) {
    for (std::size_t j = i; j < udim; ++j) {
      const double cov = acc[i * udim + j].value() / s;
      const double m2 = cov + out.mean[i] * out.mean[j];
      out.covariance[i * udim + j] = out.covariance[j * udim + i] = cov;
      out.second[i * udim + j] = out.second[j * udim + i] = m2;
    }
  }
  return out;
}

WeightedMoments weighted_moments(GameDims dims, std::span<const double> t, std::uint64_t max_terms) {
  return MomentKernel(dims, max_terms).evaluate(t);
}

}  // namespace eqdense
