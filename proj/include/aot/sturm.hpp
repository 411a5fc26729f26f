#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aot/polynomial.hpp"
#include "aot/rational.hpp"

namespace aot {

// gcd of all coefficients, always >= 0 (0 only for the zero polynomial).
inline Int content(const IntPoly& p) {
  Int g = 0;
  for (const auto& c : p.coeffs()) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

// p divided by its (positive) content; preserves the sign of p everywhere.
inline IntPoly primitive_part(const IntPoly& p) {
  const Int g = content(p);
  if (g <= 1) return p;
  std::vector<Int> v(p.coeffs());
  for (auto& c : v) c /= g;
  return IntPoly(std::move(v));
}

// Pseudo-remainder: returns lc(g)^(deg f - deg g + 1) * f  mod  g, computed
// entirely over the integers.  Requires deg f >= deg g >= 0.
inline IntPoly pseudo_remainder(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("pseudo_remainder by zero");
  const std::size_t n = static_cast<std::size_t>(g.degree());
  const Int& d = g.leading();
  const auto& gc = g.coeffs();
  std::vector<Int> rc(f.coeffs());
  long e = f.degree() - g.degree() + 1;
  while (rc.size() > n) {
    // r <- d*r - lc(r) * x^(deg r - n) * g ; the top coefficient cancels.
    const Int c = rc.back();
    rc.pop_back();
    const std::size_t k = rc.size() - n;
    if (c != 0) {
      for (auto& x : rc) x *= d;
      for (std::size_t j = 0; j < n; ++j) rc[k + j] -= c * gc[j];
    }
    while (!rc.empty() && rc.back() == 0) rc.pop_back();
    --e;
    if (rc.empty()) break;
  }
  IntPoly r(std::move(rc));
  if (e > 0 && !r.is_zero())
    r = boost::multiprecision::pow(d, static_cast<unsigned>(e)) * r;
  return r;
}

// Exact sign of p at a rational point, via the homogenized integer value
// den^deg(p) * p(num/den).
inline int sign_at(const IntPoly& p, const Rat& a) {
  if (p.is_zero()) return 0;
  const Int num = numerator(a);
  const Int den = denominator(a);
  const auto& c = p.coeffs();
  Int acc = c.back();
  Int dp = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc *= num;
    dp *= den;
    acc += c[i] * dp;
  }
  return acc.sign();
}

// Divides out x^k (root at 0) and (x-1)^m (root at 1) until neither remains.
inline IntPoly deflate_unit_interval_endpoints(IntPoly p) {
  if (p.is_zero()) return p;
  std::vector<Int> c(p.coeffs());
  std::size_t shift = 0;
  while (shift < c.size() && c[shift] == 0) ++shift;
  if (shift > 0) c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  IntPoly q{std::vector<Int>(c)};
  while (!q.is_zero() && sign_at(q, Rat(1)) == 0) {
    // synthetic division by (x - 1); exact because 1 is a root
    const auto& qc = q.coeffs();
    std::vector<Int> b(qc.size() - 1);
    Int carry = qc.back();
    for (std::size_t i = b.size(); i-- > 0;) {
      b[i] = carry;
      carry += qc[i];
    }
    q = IntPoly(std::move(b));
  }
  return q;
}

namespace detail {

// Tracks sign variations at two evaluation points while the Sturm chain is
// generated, so the chain itself never has to be stored.
class VariationTracker {
 public:
  VariationTracker(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  void push(const IntPoly& f) {
    step(sign_at(f, a_), last_a_, va_);
    step(sign_at(f, b_), last_b_, vb_);
  }

  // V(a) - V(b) = number of distinct roots in (a, b]
  int drop() const { return va_ - vb_; }

 private:
  static void step(int s, int& last, int& count) {
    if (s == 0) return;
    if (last != 0 && s != last) ++count;
    last = s;
  }

  Rat a_, b_;
  int last_a_ = 0, last_b_ = 0;
  int va_ = 0, vb_ = 0;
};

// Exact scalar divisions, used for the known subresultant divisors.
inline Int divide_exact(const Int& n, const Int& d) {
  Int q, r;
  boost::multiprecision::divide_qr(n, d, q, r);
  if (r != 0) throw std::logic_error("divide_exact: inexact division");
  return q;
}

inline IntPoly divide_exact(const IntPoly& p, const Int& d) {
  if (d == 0) throw std::invalid_argument("divide_exact by zero");
  if (d == 1) return p;
  std::vector<Int> v(p.coeffs());
  for (auto& c : v) c = divide_exact(c, d);
  return IntPoly(std::move(v));
}

inline std::size_t max_coeff_bits(const IntPoly& p) {
  std::size_t mb = 0;
  for (const auto& c : p.coeffs()) {
    if (c == 0) continue;
    const std::size_t b = mpz_sizeinbase(c.backend().data(), 2);
    if (b > mb) mb = b;
  }
  return mb;
}

}  // namespace detail

// Number of distinct real roots of f in the half-open interval (a, b], by
// Sturm's theorem on a primitive pseudo-remainder chain.  The chain is
// streamed — only two consecutive elements are alive at a time — so memory
// stays flat even for degrees in the thousands.  Requires f(a) != 0.
inline int count_distinct_roots(const IntPoly& f, const Rat& a, const Rat& b) {
  if (f.is_zero()) throw std::invalid_argument("count_distinct_roots of zero polynomial");
  if (sign_at(f, a) == 0)
    throw std::invalid_argument("count_distinct_roots: left endpoint is a root");
  detail::VariationTracker vt(a, b);
  IntPoly prev = primitive_part(f);
  vt.push(prev);
  IntPoly cur = primitive_part(prev.derivative());
  if (cur.is_zero()) return 0;
  vt.push(cur);
  while (cur.degree() > 0) {
    IntPoly r = pseudo_remainder(prev, cur);
    if (r.is_zero()) break;  // chain ends at a nontrivial gcd
    // Sturm's theorem needs positive_mult * prev = q * cur - next between
    // consecutive elements; the pseudo-remainder multiplier is
    // lc(cur)^(deg prev - deg cur + 1), so flip when that is negative.
    const long delta = prev.degree() - cur.degree() + 1;
    const bool multiplier_negative = cur.leading() < 0 && (delta & 1L);
    IntPoly next = primitive_part(multiplier_negative ? std::move(r) : -r);
    vt.push(next);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return vt.drop();
}

// Distinct roots strictly inside (0,1); roots at the endpoints are divided
// out first and not counted.
inline int count_roots_open_unit(const IntPoly& p) {
  const IntPoly f = deflate_unit_interval_endpoints(p);
  if (f.is_zero()) throw std::invalid_argument("count_roots_open_unit of zero polynomial");
  if (f.degree() == 0) return 0;
  return count_distinct_roots(f, Rat(0), Rat(1));
}

// Outcome of a strict-sign check on the open unit interval: the claim
// "p has the required strict sign everywhere on (0,1)" together with the
// evidence (root count plus one exact sign sample).
struct SignCertificate {
  bool ok = false;
  int root_count = -1;  // distinct roots strictly inside (0,1)
  int sample_sign = 0;  // exact sign at x = 1/2
  std::string detail;
  explicit operator bool() const { return ok; }
};

namespace detail {

// On failure, narrow down an interval around a sign problem for reporting.
inline std::string localize_root(const IntPoly& f) {
  Rat lo(0), hi(1);
  for (int it = 0; it < 12; ++it) {
    const Rat mid = (lo + hi) / 2;
    if (sign_at(f, mid) == 0) {
      lo = hi = mid;
      break;
    }
    if (count_distinct_roots(f, lo, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  std::ostringstream os;
  os << "root near [" << rat_to_string(lo) << ", " << rat_to_string(hi) << "]";
  return os.str();
}

}  // namespace detail

// Certifies sign(p) == want_sign everywhere on (0,1):  p has no root inside
// the open interval, and one exact rational sample has the right sign.
inline SignCertificate certify_sign_on_unit_interval(const IntPoly& p, int want_sign) {
  SignCertificate cert;
  if (p.is_zero()) {
    cert.detail = "zero polynomial";
    return cert;
  }
  const IntPoly f = deflate_unit_interval_endpoints(p);
  cert.root_count = f.degree() <= 0 ? 0 : count_distinct_roots(f, Rat(0), Rat(1));
  cert.sample_sign = sign_at(p, Rat(1, 2));
  cert.ok = cert.root_count == 0 && cert.sample_sign == want_sign;
  if (cert.ok) {
    cert.detail = "no interior roots, sample sign matches";
  } else if (cert.root_count != 0) {
    cert.detail = detail::localize_root(f);
  } else {
    cert.detail = "sign at 1/2 is " + std::to_string(cert.sample_sign) +
                  ", expected " + std::to_string(want_sign);
  }
  return cert;
}

inline SignCertificate certify_negative_on_unit_interval(const IntPoly& p) {
  return certify_sign_on_unit_interval(p, -1);
}

inline SignCertificate certify_positive_on_unit_interval(const IntPoly& p) {
  return certify_sign_on_unit_interval(p, +1);
}

}  // namespace aot
