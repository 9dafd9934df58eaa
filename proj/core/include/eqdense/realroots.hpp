#pragma once

#include <gmpxx.h>

#include <vector>

#include "eqdense/polynomial.hpp"

namespace eqdense {

/// p / gcd(p, p') as a primitive integer polynomial with positive leading
/// coefficient. Same roots, all simple.
IntegerPoly squarefree(const IntegerPoly& p);
RationalPoly squarefree(const RationalPoly& p);

/// Sturm sequence p_0 = squarefree(p), p_1 = p_0', p_{k+1} = -rem(p_{k-1}, p_k).
/// Elements are stored as primitive integer polynomials; each is a positive
/// multiple of the corresponding rational remainder, so sign patterns match.
/// The remainder sequence is run once on p itself; a nonconstant last
/// element is gcd(p, p') and is divided out of every element.
class SturmChain {
 public:
  explicit SturmChain(const IntegerPoly& p);
  explicit SturmChain(const RationalPoly& p);

  const std::vector<IntegerPoly>& sequence() const { return seq_; }
  const IntegerPoly& squarefree_part() const { return seq_.front(); }

  /// Primitive gcd(p, p'); constant 1 when p is square-free.
  const IntegerPoly& repeated_part() const { return repeated_; }

  int variations_at(const mpq_class& x) const;
  int variations_at_zero() const;
  int variations_at_infinity() const;

  /// Distinct roots in (a, b], a < b.
  int count_in(const mpq_class& a, const mpq_class& b) const;

 private:
  std::vector<IntegerPoly> seq_;
  IntegerPoly repeated_;
};

/// Number of distinct real roots in (0, +inf).
int count_positive_roots(const RationalPoly& p);
int count_positive_roots(const IntegerPoly& p);

struct RootBox {
  mpq_class lo;
  mpq_class hi;
  int multiplicity = 1;

  double midpoint() const;
};

/// Disjoint isolating intervals for the positive roots, each bisected until
/// hi - lo <= width; sorted by position.
std::vector<RootBox> isolate_positive_roots(const RationalPoly& p, const mpq_class& width);
std::vector<RootBox> isolate_positive_roots(const IntegerPoly& p, const mpq_class& width);

/// Same, refined until hi - lo <= rel * lo.
std::vector<RootBox> isolate_positive_roots_relative(const IntegerPoly& p, double rel);

/// Bisects `box` (isolating a simple root of the square-free `p`) until
/// hi - lo <= rel * lo.
void refine_relative(const IntegerPoly& squarefree_p, RootBox& box, double rel);

// ---------------------------------------------------------------------------
// Verification of the M_d(t) = prod (t^2 + r_i) representation

struct MFactorization {
  int d = 0;
  std::vector<double> r;       // r_i = -s_i, ascending
  bool all_real_negative = false;
  double max_residual = 0;     // max relative error in (2 pi f)^2 over the samples
};

/// Isolates the d-1 roots of M_d(s); checks they are all real and negative
/// and compares sum 4 r_i / (t^2 + r_i)^2 with (2 pi f2d_via_G)^2.
MFactorization verify_m_factorization(int d, const std::vector<double>& t_samples);

// ---------------------------------------------------------------------------
// n = 2 stability

enum class Stability { Stable, Unstable, Indeterminate };

const char* to_string(Stability s);

/// Sign of the derivative of B(y) = sum beta_k b_{k,d-1}(y) at y* = t*/(1+t*),
/// with t* the midpoint of `box`. Negative is stable.
Stability classify_stability_2(const std::vector<double>& beta, const RootBox& box, int d);

}  // namespace eqdense
