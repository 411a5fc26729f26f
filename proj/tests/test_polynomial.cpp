#include "aot/polynomial.hpp"

#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

using aot::Int;
using aot::IntPoly;
using aot::Rat;
using aot::RatPoly;

namespace {

IntPoly random_poly(std::mt19937& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::vector<Int> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = coeff(rng);
  return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("construction trims and reports degree") {
  CHECK(IntPoly{}.is_zero());
  CHECK(IntPoly{}.degree() == -1);
  CHECK(IntPoly({Int(0), Int(0)}).is_zero());
  CHECK(IntPoly({Int(5)}).degree() == 0);
  CHECK(IntPoly({Int(1), Int(2), Int(0)}).degree() == 1);
  CHECK(IntPoly::monomial(3).degree() == 3);
  CHECK(IntPoly::monomial(3).coeff(3) == 1);
  CHECK(IntPoly::constant(Int(7)).coeff(0) == 7);
  CHECK(IntPoly::constant(Int(0)).is_zero());
  // coeff reads beyond the degree are zero, not errors
  CHECK(IntPoly({Int(1)}).coeff(5) == 0);
  CHECK_THROWS_AS(IntPoly{}.leading(), std::logic_error);
}

TEST_CASE("arithmetic matches hand-expanded results") {
  const IntPoly a({Int(1), Int(2)});        // 1 + 2x
  const IntPoly b({Int(-3), Int(0), Int(1)});  // x^2 - 3
  CHECK(a + b == IntPoly({Int(-2), Int(2), Int(1)}));
  CHECK(a - b == IntPoly({Int(4), Int(2), Int(-1)}));
  CHECK(a * b == IntPoly({Int(-3), Int(-6), Int(1), Int(2)}));
  CHECK(-a == IntPoly({Int(-1), Int(-2)}));
  CHECK(Int(3) * a == IntPoly({Int(3), Int(6)}));
  CHECK(a * IntPoly{} == IntPoly{});
  CHECK((a - a).is_zero());
  CHECK(a.derivative() == IntPoly::constant(Int(2)));
  CHECK(b.derivative() == IntPoly({Int(0), Int(2)}));
  CHECK(IntPoly::constant(Int(9)).derivative().is_zero());
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(-12, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const IntPoly p = random_poly(rng, 6);
    const IntPoly q = random_poly(rng, 6);
    const Rat x(num(rng), 7);
    CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
    CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
  }
  // spot value: (1 + 2x)(x^2 - 3) at x = 1/2
  const IntPoly p = IntPoly({Int(1), Int(2)}) * IntPoly({Int(-3), Int(0), Int(1)});
  CHECK(p.eval(Rat(1, 2)) == Rat(-11, 2));
}

TEST_CASE("product rule for derivatives") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const IntPoly p = random_poly(rng, 5);
    const IntPoly q = random_poly(rng, 5);
    CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
  }
}

TEST_CASE("affine composition") {
  // p(x) = x^2 + 1 composed with 1 - x gives x^2 - 2x + 2
  const IntPoly p({Int(1), Int(0), Int(1)});
  CHECK(p.compose_affine(Int(1), Int(-1)) == IntPoly({Int(2), Int(-2), Int(1)}));
  // composing twice with 1 - x is the identity
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const IntPoly q = random_poly(rng, 7);
    CHECK(q.compose_affine(Int(1), Int(-1)).compose_affine(Int(1), Int(-1)) == q);
    // evaluation agrees with substitution
    const Rat x(trial, 50);
    CHECK(q.compose_affine(Int(1), Int(-1)).eval(x) == q.eval(Rat(1) - x));
  }
}

TEST_CASE("rational-integer conversions preserve roots and signs") {
  // 1/6 + x/4 clears to 2 + 3x
  const RatPoly p({Rat(1, 6), Rat(1, 4)});
  const IntPoly cleared = aot::to_integer_poly(p);
  CHECK(cleared == IntPoly({Int(2), Int(3)}));
  CHECK(aot::to_rational_poly(cleared).eval(Rat(1, 3)) == Rat(12) * p.eval(Rat(1, 3)));
  CHECK(aot::to_integer_poly(RatPoly{}).is_zero());
  // the cleared polynomial's sign matches everywhere (positive multiple)
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> num(-20, 20);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rat> c;
    for (int k = 0; k <= 4; ++k) c.emplace_back(num(rng), 1 + (trial % 5));
    const RatPoly q(c);
    const IntPoly z = aot::to_integer_poly(q);
    const Rat x(num(rng), 13);
    const Rat qa = q.eval(x);
    const Rat za = aot::to_rational_poly(z).eval(x);
    CHECK(((qa > 0 && za > 0) || (qa < 0 && za < 0) || (qa == 0 && za == 0)));
  }
}
