#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "eqdense/errors.hpp"

namespace eqdense {

// Degree reported for the zero polynomial (stands in for -infinity).
inline constexpr int kZeroPolyDegree = INT_MIN;

namespace detail {

template <class T>
inline bool is_zero_coeff(const T& v) {
  return v == T(0);
}

template <class T>
inline void canonicalize_coeff(T&) {}

inline void canonicalize_coeff(mpq_class& v) { v.canonicalize(); }

}  // namespace detail

/// Dense univariate polynomial, coefficients stored in ascending degree order.
///
/// The representation is always trimmed: either empty (the zero polynomial)
/// or with a nonzero leading coefficient. Rational coefficients are kept in
/// lowest terms.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;

  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }

  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }

  static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }

  static Polynomial monomial(T value, int degree) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = std::move(value);
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }

  int degree() const { return c_.empty() ? kZeroPolyDegree : static_cast<int>(c_.size()) - 1; }

  const std::vector<T>& coeffs() const { return c_; }

  // Coefficient of t^k; zero beyond the stored range.
  T coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return T(0);
    return c_[static_cast<std::size_t>(k)];
  }

  const T& leading() const { return c_.back(); }

  template <class X>
  X operator()(const X& x) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> out(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(out));
  }

  // p(t) -> p(-t)
  Polynomial reflected() const {
    std::vector<T> out = c_;
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    return Polynomial(std::move(out));
  }

  // t^deg * p(1/t)
  Polynomial reversed() const {
    std::vector<T> out(c_.rbegin(), c_.rend());
    return Polynomial(std::move(out));
  }

  Polynomial operator-() const {
    std::vector<T> out = c_;
    for (auto& v : out) v = -v;
    return Polynomial(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), T(0));
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), T(0));
    for (std::size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::is_zero_coeff(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t k = p.c_.size(); k-- > 0;) {
      if (detail::is_zero_coeff(p.c_[k])) continue;
      if (!first) os << " + ";
      os << "(" << p.c_[k] << ")";
      if (k > 0) os << "*t^" << k;
      first = false;
    }
    return os;
  }

 private:
  void normalize() {
    for (auto& v : c_) detail::canonicalize_coeff(v);
    while (!c_.empty() && detail::is_zero_coeff(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

using RealPoly = Polynomial<double>;
using RationalPoly = Polynomial<mpq_class>;
using IntegerPoly = Polynomial<mpz_class>;

/// Quotient and remainder over a field (double or rational coefficients).
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
  if (den.is_zero()) throw InvalidArgument("polynomial division by zero");
  std::vector<T> r = num.coeffs();
  const int dn = den.degree();
  if (num.degree() < dn) return {Polynomial<T>{}, num};
  std::vector<T> q(static_cast<std::size_t>(num.degree() - dn) + 1, T(0));
  const T& lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    T factor = r[static_cast<std::size_t>(k + dn)] / lead;
    q[static_cast<std::size_t>(k)] = factor;
    if (detail::is_zero_coeff(factor)) continue;
    for (int j = 0; j <= dn; ++j) r[static_cast<std::size_t>(k + j)] -= factor * den.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(dn));
  return {Polynomial<T>(std::move(q)), Polynomial<T>(std::move(r))};
}

// --- exact helpers (implemented in polynomial.cpp) -------------------------

/// Exact rational lift of a floating polynomial; every binary double is a
/// dyadic rational so no information is lost.
RationalPoly to_rational(const RealPoly& p);

RealPoly to_real(const RationalPoly& p);
RealPoly to_real(const IntegerPoly& p);

RationalPoly to_rational(const IntegerPoly& p);

/// Primitive integer polynomial with the same roots: clears denominators,
/// divides by the content and makes the leading coefficient positive.
IntegerPoly primitive_integer(const RationalPoly& p);

/// Nonnegative gcd of the coefficients (zero for the zero polynomial).
mpz_class content(const IntegerPoly& p);

/// p / content(p); the sign of every coefficient is preserved.
IntegerPoly primitive_part(const IntegerPoly& p);

/// Pseudo-remainder scaled by a positive power of |lc(b)|, so it is a
/// positive multiple of the true remainder.
IntegerPoly signed_pseudo_remainder(const IntegerPoly& a, const IntegerPoly& b);

/// lc(b)^(deg a - deg b + 1) a mod b, the classical pseudo-remainder.
IntegerPoly pseudo_remainder(const IntegerPoly& a, const IntegerPoly& b);

/// Exact division; throws if `den` does not divide `num` over Z.
IntegerPoly exact_divide(const IntegerPoly& num, const IntegerPoly& den);

/// Monic gcd over Q.
RationalPoly gcd(RationalPoly a, RationalPoly b);

/// Primitive gcd over Z (positive leading coefficient).
IntegerPoly gcd(const IntegerPoly& a, const IntegerPoly& b);

/// Sign of p at a rational point, computed exactly.
int sign_at(const IntegerPoly& p, const mpq_class& x);

}  // namespace eqdense
