#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eqdense/polynomial.hpp"

namespace eqdense {

/// (d-1)! / (k_1! ... k_{n-1}! k_n!) with the slack k_n = (d-1) - sum(k),
/// computed exactly.
mpz_class multinomial(int d_minus_1, std::span<const int> k);

/// log of the same multinomial coefficient, via lgamma.
double log_multinomial(int d_minus_1, std::span<const int> k);

/// M_d as a polynomial in s = t^2: coefficient C(d-1, k)^2 at s^k.
IntegerPoly m_poly(int d);

/// Number of exponent vectors of length `dim` with entries >= 0 summing to at
/// most `total`, i.e. C(total + dim, dim). Saturates at UINT64_MAX.
std::uint64_t exponent_count(int dim, int total);

/// Exponent vectors of length `dim` summing to at most `total`, in
/// lexicographic order, stored row-major.
class ExponentTable {
 public:
  ExponentTable(int dim, int total);

  int dim() const { return dim_; }
  int total() const { return total_; }
  std::size_t size() const { return dim_ == 0 ? 1 : data_.size() / static_cast<std::size_t>(dim_); }

  std::span<const int> operator[](std::size_t row) const {
    return {data_.data() + row * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

  // Position of an exponent vector in lexicographic order.
  std::size_t index_of(std::span<const int> k) const;

 private:
  int dim_;
  int total_;
  std::vector<int> data_;
};

}  // namespace eqdense
