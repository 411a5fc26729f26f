#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aot/rational.hpp"

namespace aot {

// Dense univariate polynomial with exact coefficients, indexed by degree
// (coeffs()[k] multiplies x^k).  The zero polynomial has an empty
// coefficient vector and degree() == -1.  Instantiated with Rat, Int and
// (for numeric spot checks) double.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(const T& v) { return Polynomial({v}); }
  // c * x^k
  static Polynomial monomial(std::size_t k, const T& c = T(1)) {
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  // Coefficient of x^k; zero beyond the degree.
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  const T& leading() const {
    if (c_.empty()) throw std::logic_error("leading() of zero polynomial");
    return c_.back();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Polynomial(std::move(v));
  }

  Polynomial operator-() const {
    std::vector<T> v(c_);
    for (auto& x : v) x = -x;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T(0)) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const T& s, const Polynomial& p) {
    if (s == T(0)) return Polynomial();
    std::vector<T> v(p.c_);
    for (auto& x : v) x *= s;
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<T> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = T(static_cast<long>(i)) * c_[i];
    return Polynomial(std::move(v));
  }

  // Horner evaluation in an arbitrary coefficient-compatible type.
  template <class U>
  U eval(const U& x) const {
    U acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + static_cast<U>(c_[i]);
    return acc;
  }

  // p(a + b x), used for the x -> 1-x reflection in duality checks.
  Polynomial compose_affine(const T& a, const T& b) const {
    Polynomial result;           // accumulates via Horner on polynomials
    const Polynomial lin({a, b});
    for (std::size_t i = c_.size(); i-- > 0;)
      result = result * lin + constant(c_[i]);
    return result;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == T(0)) continue;
      if (!first) os << " + ";
      os << c_[i];
      if (i > 0) os << "*x^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

using RatPoly = Polynomial<Rat>;
using IntPoly = Polynomial<Int>;

// Clears denominators: the returned integer polynomial is a positive
// multiple of p, so it has the same roots and the same sign pattern.
inline IntPoly to_integer_poly(const RatPoly& p) {
  Int lcm = 1;
  for (const auto& c : p.coeffs()) lcm = boost::multiprecision::lcm(lcm, denominator(c));
  std::vector<Int> v(p.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rat& c = p.coeffs()[i];
    v[i] = numerator(c) * (lcm / denominator(c));
  }
  return IntPoly(std::move(v));
}

inline RatPoly to_rational_poly(const IntPoly& p) {
  std::vector<Rat> v(p.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(p.coeffs()[i]);
  return RatPoly(std::move(v));
}

}  // namespace aot
