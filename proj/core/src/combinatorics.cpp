#include "eqdense/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace eqdense {

namespace {

int slack_of(int d_minus_1, std::span<const int> k) {
  if (d_minus_1 < 0) throw InvalidArgument("multinomial: d-1 must be nonnegative");
  long sum = 0;
  for (int v : k) {
    if (v < 0) throw InvalidArgument("multinomial: negative exponent");
    sum += v;
  }
  if (sum > d_minus_1) {
    throw InvalidArgument("multinomial: exponents sum to " + std::to_string(sum) + " > d-1 = " +
                          std::to_string(d_minus_1));
  }
  return d_minus_1 - static_cast<int>(sum);
}

}  // namespace

mpz_class multinomial(int d_minus_1, std::span<const int> k) {
  const int slack = slack_of(d_minus_1, k);
  // Product of binomials: C(k1, k1) C(k1+k2, k2) ... avoids big factorials.
  mpz_class result = 1;
  mpz_class b;
  unsigned long running = 0;
  auto absorb = [&](int part) {
    running += static_cast<unsigned long>(part);
    mpz_bin_uiui(b.get_mpz_t(), running, static_cast<unsigned long>(part));
    result *= b;
  };
  for (int v : k) absorb(v);
  absorb(slack);
  return result;
}

double log_multinomial(int d_minus_1, std::span<const int> k) {
  const int slack = slack_of(d_minus_1, k);
  double acc = std::lgamma(static_cast<double>(d_minus_1) + 1.0);
  for (int v : k) acc -= std::lgamma(static_cast<double>(v) + 1.0);
  acc -= std::lgamma(static_cast<double>(slack) + 1.0);
  return acc;
}

IntegerPoly m_poly(int d) {
  if (d < 1) throw InvalidArgument("m_poly requires d >= 1");
  std::vector<mpz_class> c(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(k));
    c[static_cast<std::size_t>(k)] = b * b;
  }
  return IntegerPoly(std::move(c));
}

std::uint64_t exponent_count(int dim, int total) {
  if (dim < 0 || total < 0) throw InvalidArgument("exponent_count: negative argument");
  // C(total + dim, dim) computed incrementally; each partial product is itself
  // a binomial coefficient so the division is exact.
  unsigned __int128 acc = 1;
  const auto cap = static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max());
  for (int i = 1; i <= dim; ++i) {
    acc = acc * static_cast<unsigned __int128>(total + i) / static_cast<unsigned __int128>(i);
    if (acc > cap) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

ExponentTable::ExponentTable(int dim, int total) : dim_(dim), total_(total) {
  if (dim < 0 || total < 0) throw InvalidArgument("ExponentTable: negative argument");
  if (dim == 0) return;
  const std::uint64_t count = exponent_count(dim, total);
  data_.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(dim));
  std::vector<int> k(static_cast<std::size_t>(dim), 0);
  int sum = 0;
  while (true) {
    data_.insert(data_.end(), k.begin(), k.end());
    // Increment the last coordinate; carry leftwards when the sum would exceed total.
    int pos = dim - 1;
    while (pos >= 0) {
      if (sum < total) {
        ++k[static_cast<std::size_t>(pos)];
        ++sum;
        break;
      }
      sum -= k[static_cast<std::size_t>(pos)];
      k[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::size_t ExponentTable::index_of(std::span<const int> k) const {
  // Count vectors that precede k lexicographically.
  std::size_t index = 0;
  int remaining = total_;
  for (int i = 0; i < dim_; ++i) {
    const int tail_dim = dim_ - i - 1;
    for (int v = 0; v < k[static_cast<std::size_t>(i)]; ++v) {
      index += static_cast<std::size_t>(exponent_count(tail_dim, remaining - v));
    }
    remaining -= k[static_cast<std::size_t>(i)];
  }
  return index;
}

}  // namespace eqdense
