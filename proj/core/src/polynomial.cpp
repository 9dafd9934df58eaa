#include "eqdense/polynomial.hpp"

#include <cstdlib>

namespace eqdense {

RationalPoly to_rational(const RealPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeffs().size());
  for (double v : p.coeffs()) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

RealPoly to_real(const RationalPoly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(v.get_d());
  return RealPoly(std::move(c));
}

RealPoly to_real(const IntegerPoly& p) {
  std::vector<double> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(v.get_d());
  return RealPoly(std::move(c));
}

RationalPoly to_rational(const IntegerPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

mpz_class content(const IntegerPoly& p) {
  mpz_class g = 0;
  for (const auto& v : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntegerPoly primitive_part(const IntegerPoly& p) {
  if (p.is_zero()) return p;
  const mpz_class g = content(p);
  if (g == 1) return p;
  std::vector<mpz_class> c = p.coeffs();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntegerPoly(std::move(c));
}

IntegerPoly primitive_integer(const RationalPoly& p) {
  if (p.is_zero()) return {};
  mpz_class den = 1;
  for (const auto& v : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) {
    mpz_class scaled = den / v.get_den();
    c.emplace_back(v.get_num() * scaled);
  }
  IntegerPoly out = primitive_part(IntegerPoly(std::move(c)));
  return sgn(out.leading()) < 0 ? -out : out;
}

IntegerPoly signed_pseudo_remainder(const IntegerPoly& a, const IntegerPoly& b) {
  if (b.is_zero()) throw InvalidArgument("pseudo-remainder by zero polynomial");
  const int db = b.degree();
  std::vector<mpz_class> r = a.coeffs();
  const mpz_class& lb = b.leading();
  const mpz_class abs_lb = abs(lb);
  const int sign_lb = sgn(lb);
  int dr = a.degree();
  while (dr >= db && dr != kZeroPolyDegree) {
    const mpz_class lr = r[static_cast<std::size_t>(dr)];
    const int shift = dr - db;
    for (auto& v : r) v *= abs_lb;
    for (int j = 0; j <= db; ++j) {
      auto& target = r[static_cast<std::size_t>(shift + j)];
      if (sign_lb > 0) {
        target -= lr * b.coeffs()[static_cast<std::size_t>(j)];
      } else {
        target += lr * b.coeffs()[static_cast<std::size_t>(j)];
      }
    }
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    dr = r.empty() ? kZeroPolyDegree : static_cast<int>(r.size()) - 1;
  }
  return IntegerPoly(std::move(r));
}

IntegerPoly pseudo_remainder(const IntegerPoly& a, const IntegerPoly& b) {
  if (b.is_zero()) throw InvalidArgument("pseudo-remainder by zero polynomial");
  const int db = b.degree();
  if (a.is_zero() || a.degree() < db) return a;
  std::vector<mpz_class> r = a.coeffs();
  const mpz_class& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const mpz_class lr = r[static_cast<std::size_t>(i)];
    for (auto& v : r) v *= lb;
    if (sgn(lr) != 0) {
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= lr * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r.pop_back();
  }
  return IntegerPoly(std::move(r));
}

IntegerPoly exact_divide(const IntegerPoly& num, const IntegerPoly& den) {
  if (den.is_zero()) throw InvalidArgument("exact_divide by zero polynomial");
  if (num.is_zero()) return {};
  const int dn = den.degree();
  if (num.degree() < dn) throw InvalidArgument("exact_divide: divisor degree exceeds dividend");
  std::vector<mpz_class> r = num.coeffs();
  std::vector<mpz_class> q(static_cast<std::size_t>(num.degree() - dn) + 1);
  const mpz_class& lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    auto& top = r[static_cast<std::size_t>(k + dn)];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
      throw InvalidArgument("exact_divide: division is not exact over the integers");
    }
    mpz_class factor;
    mpz_divexact(factor.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    for (int j = 0; j <= dn; ++j) r[static_cast<std::size_t>(k + j)] -= factor * den.coeffs()[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(k)] = std::move(factor);
  }
  for (const auto& v : r) {
    if (sgn(v) != 0) throw InvalidArgument("exact_divide: nonzero remainder");
  }
  return IntegerPoly(std::move(q));
}

IntegerPoly gcd(const IntegerPoly& a, const IntegerPoly& b) {
  IntegerPoly x = primitive_part(a);
  IntegerPoly y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntegerPoly r = primitive_part(signed_pseudo_remainder(x, y));
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return sgn(x.leading()) < 0 ? -x : x;
}

RationalPoly gcd(RationalPoly a, RationalPoly b) {
  if (a.is_zero() && b.is_zero()) return {};
  const IntegerPoly g = gcd(primitive_integer(a), primitive_integer(b));
  RationalPoly out = to_rational(g);
  return out * mpq_class(1 / out.leading());
}

int sign_at(const IntegerPoly& p, const mpq_class& x) {
  if (p.is_zero()) return 0;
  const mpz_class& a = x.get_num();
  const mpz_class& b = x.get_den();
  const auto& c = p.coeffs();
  mpz_class acc = c.back();
  mpz_class bpow = b;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc *= a;
    acc += c[k] * bpow;
    bpow *= b;
  }
  return sgn(acc);
}

}  // namespace eqdense
