#include "eqdense/realroots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <numbers>

#include "eqdense/combinatorics.hpp"
#include "eqdense/density.hpp"
#include "eqdense/errors.hpp"

namespace eqdense {

namespace {

IntegerPoly strip_zero_root(IntegerPoly p) {
  if (p.is_zero() || sgn(p.coeffs().front()) != 0) return p;
  std::vector<mpz_class> c = p.coeffs();
  std::size_t k = 0;
  while (k < c.size() && sgn(c[k]) == 0) ++k;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
  return IntegerPoly(std::move(c));
}

// Power of two strictly above every root modulus, from Fujiwara's bound
// 2 max |a_{n-k} / a_n|^(1/k) (with a_0 halved). Magnitudes are taken from
// frexp-style exponents, which bound each |a_i| within a factor of two.
mpq_class root_bound(const IntegerPoly& p) {
  const auto& c = p.coeffs();
  const int n = p.degree();
  const long lead_exp = static_cast<long>(mpz_sizeinbase(p.leading().get_mpz_t(), 2)) - 1;  // |a_n| >= 2^lead_exp
  double best = -1e300;
  for (int k = 1; k <= n; ++k) {
    const mpz_class& a = c[static_cast<std::size_t>(n - k)];
    if (sgn(a) == 0) continue;
    double e = static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2));  // |a| < 2^e
    if (k == n) e -= 1;
    best = std::max(best, (e - static_cast<double>(lead_exp)) / k);
  }
  if (best < -1e299) return mpq_class(1);
  const long exponent = std::max(0L, static_cast<long>(std::ceil(best)) + 2);
  mpz_class out = 1;
  out <<= static_cast<mp_bitcnt_t>(exponent);
  return mpq_class(out);
}

// Box around the exact rational root m, inside (a, b), containing no other root.
RootBox box_around(const SturmChain& chain, const mpq_class& m, const mpq_class& a, const mpq_class& b) {
  const IntegerPoly& p = chain.sequence().front();
  mpq_class delta = std::min(mpq_class(m - a), mpq_class(b - m)) / 2;
  for (;;) {
    const mpq_class lo = m - delta;
    const mpq_class hi = m + delta;
    if (sign_at(p, lo) != 0 && sign_at(p, hi) != 0 && chain.count_in(lo, hi) == 1) return {lo, hi, 1};
    delta /= 2;
  }
}

void bisect_to_width(const IntegerPoly& p, RootBox& box, const auto& done) {
  const int s_lo = sign_at(p, box.lo);
  while (!done(box)) {
    mpq_class mid = (box.lo + box.hi) / 2;
    const int s_mid = sign_at(p, mid);
    if (s_mid == 0) {
      mpq_class delta = (box.hi - box.lo) / 8;
      while (!done(RootBox{mid - delta, mid + delta, 1})) delta /= 2;
      box.lo = mid - delta;
      box.hi = mid + delta;
      return;
    }
    if (s_mid == s_lo) {
      box.lo = std::move(mid);
    } else {
      box.hi = std::move(mid);
    }
  }
}

// `g` is gcd(p, p'); each further gcd with the derivative peels one more
// layer of multiplicity.
int multiplicity_in(IntegerPoly g, const RootBox& box) {
  int m = 1;
  while (g.degree() > 0) {
    const IntegerPoly s = squarefree(g);
    if (sign_at(s, box.lo) * sign_at(s, box.hi) >= 0) break;
    ++m;
    g = gcd(g, g.derivative());
  }
  return m;
}

}  // namespace

IntegerPoly squarefree(const IntegerPoly& p) {
  if (p.is_zero()) throw InvalidArgument("squarefree: zero polynomial");
  IntegerPoly q = primitive_part(p);
  if (sgn(q.leading()) < 0) q = -q;
  if (q.degree() <= 0) return q;
  const IntegerPoly g = gcd(q, q.derivative());
  if (g.degree() <= 0) return q;
  IntegerPoly out = primitive_part(exact_divide(q, g));
  return sgn(out.leading()) < 0 ? -out : out;
}

RationalPoly squarefree(const RationalPoly& p) {
  if (p.is_zero()) throw InvalidArgument("squarefree: zero polynomial");
  return to_rational(squarefree(primitive_integer(p)));
}

namespace {

IntegerPoly divide_scalar(const IntegerPoly& p, const mpz_class& s) {
  std::vector<mpz_class> c = p.coeffs();
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
  return IntegerPoly(std::move(c));
}

mpz_class power(const mpz_class& b, int e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

}  // namespace

// Subresultant remainder sequence r_{i+1} = prem(r_{i-1}, r_i) / beta_i,
// with the sign sigma_i of each element fixed so that sigma_i r_i is a
// positive multiple of the Sturm remainder.
SturmChain::SturmChain(const IntegerPoly& p) {
  if (p.is_zero()) throw InvalidArgument("SturmChain: zero polynomial");
  IntegerPoly p0 = primitive_part(p);
  if (sgn(p0.leading()) < 0) p0 = -p0;
  seq_.push_back(std::move(p0));
  repeated_ = IntegerPoly::constant(1);
  if (seq_.front().degree() <= 0) return;
  seq_.push_back(primitive_part(seq_.front().derivative()));

  std::vector<int> sigma{1, 1};
  IntegerPoly prev = seq_[0], cur = seq_[1];
  int delta = prev.degree() - cur.degree();
  mpz_class beta = delta % 2 == 1 ? 1 : -1;  // (-1)^(delta + 1)
  mpz_class psi = -1;
  while (cur.degree() > 0) {
    const IntegerPoly prem = pseudo_remainder(prev, cur);
    if (prem.is_zero()) break;
    IntegerPoly next = divide_scalar(prem, beta);
    const int lc_sign = (delta + 1) % 2 == 0 ? 1 : sgn(cur.leading());
    sigma.push_back(-sigma[sigma.size() - 2] * sgn(beta) * lc_sign);
    const mpz_class a = cur.leading();
    const int next_delta = cur.degree() - next.degree();
    psi = power(-a, delta) / power(psi, delta - 1);
    beta = -a * power(psi, next_delta);
    seq_.push_back(next);
    prev = std::move(cur);
    cur = std::move(next);
    delta = next_delta;
  }
  for (std::size_t i = 0; i < seq_.size(); ++i) {
    if (sigma[i] < 0) seq_[i] = -seq_[i];
  }
  if (seq_.back().degree() > 0) {
    repeated_ = primitive_part(seq_.back());
    if (sgn(repeated_.leading()) < 0) repeated_ = -repeated_;
    for (auto& e : seq_) e = exact_divide(e, repeated_);
  }
}

SturmChain::SturmChain(const RationalPoly& p) : SturmChain(primitive_integer(p)) {}

namespace {

int count_variations(const std::vector<int>& signs) {
  int v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int SturmChain::variations_at(const mpq_class& x) const {
  std::vector<int> s;
  s.reserve(seq_.size());
  for (const auto& p : seq_) s.push_back(sign_at(p, x));
  return count_variations(s);
}

int SturmChain::variations_at_zero() const {
  std::vector<int> s;
  s.reserve(seq_.size());
  for (const auto& p : seq_) s.push_back(p.is_zero() ? 0 : sgn(p.coeffs().front()));
  return count_variations(s);
}

int SturmChain::variations_at_infinity() const {
  std::vector<int> s;
  s.reserve(seq_.size());
  for (const auto& p : seq_) s.push_back(p.is_zero() ? 0 : sgn(p.leading()));
  return count_variations(s);
}

int SturmChain::count_in(const mpq_class& a, const mpq_class& b) const {
  if (!(a < b)) throw InvalidArgument("SturmChain::count_in requires a < b");
  return variations_at(a) - variations_at(b);
}

int count_positive_roots(const IntegerPoly& p) {
  if (p.is_zero()) throw InvalidArgument("count_positive_roots: zero polynomial");
  const IntegerPoly q = strip_zero_root(p);
  if (q.degree() <= 0) return 0;
  const SturmChain chain(q);
  return chain.variations_at_zero() - chain.variations_at_infinity();
}

int count_positive_roots(const RationalPoly& p) {
  if (p.is_zero()) throw InvalidArgument("count_positive_roots: zero polynomial");
  return count_positive_roots(primitive_integer(p));
}

double RootBox::midpoint() const {
  const mpq_class m = (lo + hi) / 2;
  return m.get_d();
}

namespace {

// p(x) mod a prime, for a squarefree certificate: if p mod q keeps its
// degree and is coprime to its derivative, p is squarefree over Q.
using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % q); }

u64 powmod(u64 b, u64 e, u64 q) {
  u64 r = 1;
  for (; e; e >>= 1, b = mulmod(b, b, q)) {
    if (e & 1) r = mulmod(r, b, q);
  }
  return r;
}

void trim_mod(std::vector<u64>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

int gcd_degree_mod(std::vector<u64> a, std::vector<u64> b, u64 q) {
  trim_mod(a);
  trim_mod(b);
  while (!b.empty()) {
    const u64 inv = powmod(b.back(), q - 2, q);
    while (a.size() >= b.size()) {
      const u64 f = mulmod(a.back(), inv, q);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + q - mulmod(f, b[j], q)) % q;
      trim_mod(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

bool certainly_squarefree(const IntegerPoly& p) {
  constexpr u64 primes[] = {2305843009213693951ULL, 4611686018427387847ULL, 1000000007ULL};
  const auto& c = p.coeffs();
  for (u64 q : primes) {
    if (mpz_fdiv_ui(p.leading().get_mpz_t(), q) == 0) continue;
    std::vector<u64> a(c.size()), da(c.size() - 1);
    for (std::size_t i = 0; i < c.size(); ++i) a[i] = mpz_fdiv_ui(c[i].get_mpz_t(), q);
    for (std::size_t i = 1; i < c.size(); ++i) da[i - 1] = mulmod(a[i], i % q, q);
    if (gcd_degree_mod(a, da, q) == 0) return true;
  }
  return false;
}

// Sign variations of (1 + x)^n p((a + b x) / (1 + x)) for dyadic a < b: an
// upper bound on the roots in (a, b) with the same parity.
int descartes_variations(const IntegerPoly& p, const mpq_class& a, const mpq_class& b) {
  const mpz_class den = lcm(a.get_den(), b.get_den());
  const mpz_class lo = a.get_num() * (den / a.get_den());
  const mpz_class width = b.get_num() * (den / b.get_den()) - lo;
  std::vector<mpz_class> c = p.coeffs();
  const std::size_t n = c.size() - 1;
  // den^n p(y / den)
  mpz_class scale = 1;
  for (std::size_t i = n + 1; i-- > 0;) {
    c[i] *= scale;
    scale *= den;
  }
  // shift y -> lo + y, then y -> width y
  if (sgn(lo) != 0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = n; j-- > i;) c[j] += lo * c[j + 1];
    }
  }
  scale = 1;
  for (auto& v : c) {
    v *= scale;
    scale *= width;
  }
  // reverse, then shift x -> x + 1
  std::reverse(c.begin(), c.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n; j-- > i;) c[j] += c[j + 1];
  }
  int v = 0, last = 0;
  for (const auto& x : c) {
    const int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Isolation of the positive roots of a squarefree polynomial by Descartes
// bisection of (0, bound).
std::vector<RootBox> isolate_descartes(const IntegerPoly& q) {
  std::vector<RootBox> out;
  std::vector<std::pair<mpq_class, mpq_class>> work{{mpq_class(0), root_bound(q)}};
  while (!work.empty()) {
    auto [a, b] = std::move(work.back());
    work.pop_back();
    const int v = descartes_variations(q, a, b);
    if (v == 0) continue;
    if (v == 1) {
      out.push_back({a, b, 1});
      continue;
    }
    const mpq_class m = (a + b) / 2;
    if (sign_at(q, m) == 0) {
      mpq_class delta = (b - a) / 4;
      while (sign_at(q, m - delta) == 0 || sign_at(q, m + delta) == 0 || descartes_variations(q, m - delta, m) != 0 ||
             descartes_variations(q, m, m + delta) != 0) {
        delta /= 2;
      }
      out.push_back({m - delta, m + delta, 1});
      work.emplace_back(m + delta, b);
      work.emplace_back(a, m - delta);
      continue;
    }
    work.emplace_back(m, b);
    work.emplace_back(a, m);
  }
  return out;
}

template <class Done>
std::vector<RootBox> isolate_impl(const IntegerPoly& p, const Done& done) {
  if (p.is_zero()) throw InvalidArgument("isolate_positive_roots: zero polynomial");
  std::vector<RootBox> out;
  const IntegerPoly stripped = strip_zero_root(p);
  if (stripped.degree() <= 0) return out;

  if (certainly_squarefree(stripped)) {
    out = isolate_descartes(stripped);
    for (auto& box : out) bisect_to_width(stripped, box, done);
    std::sort(out.begin(), out.end(), [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });
    return out;
  }

  const SturmChain chain(stripped);
  const IntegerPoly& q = chain.squarefree_part();
  if (q.degree() <= 0) return out;

  struct Interval {
    mpq_class a, b;
    int count;
  };
  const mpq_class bound = root_bound(q);
  std::vector<Interval> work;
  const int total = chain.variations_at_zero() - chain.variations_at(bound);
  if (total > 0) work.push_back({0, bound, total});

  while (!work.empty()) {
    Interval iv = std::move(work.back());
    work.pop_back();
    if (iv.count == 0) continue;
    if (iv.count == 1) {
      out.push_back({iv.a, iv.b, 1});
      continue;
    }
    const mpq_class m = (iv.a + iv.b) / 2;
    if (sign_at(q, m) == 0) {
      RootBox box = box_around(chain, m, iv.a, iv.b);
      const int vlo = chain.variations_at(box.lo);
      const int vhi = chain.variations_at(box.hi);
      work.push_back({box.hi, iv.b, vhi - chain.variations_at(iv.b)});
      work.push_back({iv.a, box.lo, chain.variations_at(iv.a) - vlo});
      out.push_back(std::move(box));
      continue;
    }
    const int va = chain.variations_at(iv.a);
    const int vm = chain.variations_at(m);
    work.push_back({m, iv.b, iv.count - (va - vm)});
    work.push_back({iv.a, m, va - vm});
  }

  const IntegerPoly& g = chain.repeated_part();
  for (auto& box : out) {
    bisect_to_width(q, box, done);
    if (g.degree() > 0) box.multiplicity = multiplicity_in(g, box);
  }
  std::sort(out.begin(), out.end(), [](const RootBox& x, const RootBox& y) { return x.lo < y.lo; });
  return out;
}

}  // namespace

std::vector<RootBox> isolate_positive_roots(const IntegerPoly& p, const mpq_class& width) {
  if (!(width > 0)) throw InvalidArgument("isolate_positive_roots: width must be positive");
  return isolate_impl(p, [&width](const RootBox& b) { return b.hi - b.lo <= width; });
}

std::vector<RootBox> isolate_positive_roots_relative(const IntegerPoly& p, double rel) {
  if (!(rel > 0)) throw InvalidArgument("isolate_positive_roots_relative: rel must be positive");
  const mpq_class r(rel);
  return isolate_impl(p, [&r](const RootBox& b) { return b.hi - b.lo <= r * b.lo; });
}

std::vector<RootBox> isolate_positive_roots(const RationalPoly& p, const mpq_class& width) {
  if (p.is_zero()) throw InvalidArgument("isolate_positive_roots: zero polynomial");
  return isolate_positive_roots(primitive_integer(p), width);
}

void refine_relative(const IntegerPoly& squarefree_p, RootBox& box, double rel) {
  const mpq_class r(rel);
  bisect_to_width(squarefree_p, box, [&r](const RootBox& b) { return b.hi - b.lo <= r * b.lo; });
}

MFactorization verify_m_factorization(int d, const std::vector<double>& t_samples) {
  if (d < 2) throw InvalidArgument("verify_m_factorization requires d >= 2");
  MFactorization out;
  out.d = d;
  const IntegerPoly m = m_poly(d);
  const IntegerPoly reflected = m.reflected();  // roots -s_i
  auto boxes = isolate_positive_roots_relative(reflected, 1e-16);
  bool simple = true;
  for (auto& box : boxes) {
    out.r.push_back(box.midpoint());
    simple = simple && box.multiplicity == 1;
  }
  out.all_real_negative = simple && static_cast<int>(boxes.size()) == d - 1;

  for (double t : t_samples) {
    double lhs = 0;
    for (double r : out.r) lhs += 4 * r / ((t * t + r) * (t * t + r));
    const double f = f2d_via_G(d, t);
    const double rhs = 4 * std::numbers::pi * std::numbers::pi * f * f;
    out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return out;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Unstable:
      return "unstable";
    case Stability::Indeterminate:
      break;
  }
  return "indeterminate";
}

Stability classify_stability_2(const std::vector<double>& beta, const RootBox& box, int d) {
  if (d < 2 || static_cast<int>(beta.size()) != d) throw InvalidArgument("classify_stability_2: beta must have length d");
  const double t = box.midpoint();
  const double y = t / (1 + t);
  const int m = d - 2;
  double value = 0;
  double scale = 0;
  double binom = 1;
  for (int k = 0; k <= m; ++k) {
    const double b = binom * std::pow(y, k) * std::pow(1 - y, m - k);
    const double diff = beta[static_cast<std::size_t>(k + 1)] - beta[static_cast<std::size_t>(k)];
    value += diff * b;
    scale += std::abs(diff) * b;
    binom = binom * (m - k) / (k + 1);
  }
  if (!(std::abs(value) > 1e-12 * scale)) return Stability::Indeterminate;
  return value < 0 ? Stability::Stable : Stability::Unstable;
}

}  // namespace eqdense
