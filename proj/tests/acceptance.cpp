// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit when
// anything fails.  Every numeric expectation is either an exact rational
// comparison or carries its tolerance inline.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aot/distribution.hpp"
#include "aot/equilibrium.hpp"
#include "aot/families.hpp"
#include "aot/strategy.hpp"

using aot::GateKind;
using aot::Rat;
using aot::RatPoly;
using aot::TreeShape;

namespace {

int failures = 0;

void line(int idx, bool ok, const std::string& text) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << idx << ". " << text << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RatPoly rp(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return RatPoly(std::move(c));
}

// 1. exact coefficients of both height-2 family members
void criterion1() {
  const auto or2 = aot::cost_prob(GateKind::Or, 2);
  const auto and2 = aot::cost_prob(GateKind::And, 2);
  const bool ok = or2.cost == rp({2, 3, -4, 1}) && or2.prob == rp({0, 0, 4, -4, 1}) &&
                  and2.cost == rp({2, 2, -1, -1}) && and2.prob == rp({0, 0, 2, 0, -1});
  line(1, ok, "height-2 cost/probability coefficients reproduce exactly");
}

// 2. exact polynomial identity suite
void criterion2() {
  bool ok = aot::identity38_check() && aot::factorization35_check();
  for (int h = 1; h <= 6; ++h)
    ok = ok && aot::two_level_consistency(h) && aot::duality_check(h);
  line(2, ok, "identity suite (two-level collapse, duality, threshold forms) h=1..6");
}

// 3. ratio-monotonicity certificates up to height 10
void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int h = 1; h <= 10 && ok; ++h)
    ok = aot::lemma1_certificate(h).ok && aot::lemma2_certificate(h).ok;
  std::ostringstream note;
  note << "monotone-ratio certificates h=1..10 (" << static_cast<int>(seconds_since(t0))
       << "s)";
  line(3, ok, note.str());
}

// 4. threshold root isolation and the odd-height bound
void criterion4() {
  const auto root = aot::find_alpha(1e-8);
  const bool ok = root.value > 0.5543 && root.value < 0.5546 && root.root_count == 1 &&
                  aot::odd_height_bound_check(1, 500) && aot::odd_height_bound_check(2, 500);
  line(4, ok, "threshold root in (0.5543, 0.5546), unique, odd-height bound on 500-pt grids");
}

// 5. constrained two-child maximum at the balanced endpoint
void criterion5() {
  bool ok = true;
  for (int h = 1; h <= 5 && ok; ++h) {
    for (int rk = 1; rk <= 9 && ok; ++rk) {
      const double r = rk / 10.0;
      const auto res = aot::cep1_solve(h, aot::RootConstraint(r), 1e-8);
      const double endpoint = 1.0 - std::sqrt(1.0 - r);
      ok = std::abs(res.argmax.z - endpoint) < 1e-6 && std::abs(res.argmax.w - endpoint) < 1e-6 &&
           res.f1_decreasing;
    }
  }
  line(5, ok, "two-child argmax within 1e-6 of the balanced endpoint, h=1..5, r=0.1..0.9");
}

// 6. constrained maximin recovers identical leaf probabilities
void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const double r : {0.25, 0.5, 0.75}) {
    const auto rep = aot::eigen_search(TreeShape(GateKind::And, 2), aot::RootConstraint(r), 1e-6);
    ok = ok && rep.certified_iid && rep.deviation < 1e-5 &&
         std::abs(rep.mean - aot::prob_inverse(GateKind::And, 2, r)) < 1e-6;
  }
  for (const double r : {0.25, 0.5, 0.75}) {
    const auto rep = aot::eigen_search(TreeShape(GateKind::And, 3), aot::RootConstraint(r), 1e-5);
    ok = ok && rep.deviation < 1e-4 &&
         std::abs(rep.mean - aot::prob_inverse(GateKind::And, 3, r)) < 1e-6;
  }
  std::ostringstream note;
  note << "constrained search is identical-leaf at h=2 (dev<1e-5) and h=3 (dev<1e-4) ("
       << static_cast<int>(seconds_since(t0)) << "s)";
  line(6, ok, note.str());
}

// 7. forced-value closed form and its lattice verification
void criterion7() {
  struct Row {
    GateKind g;
    int h, i;
    long want;
  };
  const Row table[] = {
      {GateKind::And, 1, 0, 1}, {GateKind::And, 1, 1, 2}, {GateKind::Or, 1, 0, 2},
      {GateKind::Or, 1, 1, 1},  {GateKind::And, 2, 0, 2}, {GateKind::And, 2, 1, 2},
      {GateKind::Or, 2, 0, 2},  {GateKind::Or, 2, 1, 2},  {GateKind::And, 3, 0, 2},
      {GateKind::And, 3, 1, 4}, {GateKind::Or, 3, 0, 4},  {GateKind::Or, 3, 1, 2},
      {GateKind::And, 4, 0, 4}, {GateKind::And, 4, 1, 4}, {GateKind::Or, 4, 0, 4},
      {GateKind::Or, 4, 1, 4},
  };
  bool ok = true;
  for (const auto& row : table)
    ok = ok && aot::proposition_values(TreeShape(row.g, row.h), row.i) == row.want;
  for (int h = 1; h <= 3 && ok; ++h)
    for (const GateKind g : {GateKind::And, GateKind::Or})
      for (int i : {0, 1}) ok = ok && aot::proposition_check(TreeShape(g, h), i, 4);
  line(7, ok, "forced-value cost table and exhaustive grid-4 lattice checks, h=1..3");
}

// 8. independent optimum strictly below the correlated witness
void criterion8() {
  const TreeShape and2(GateKind::And, 2);
  bool ok = true;
  const Rat rs[] = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)};
  for (const Rat& r : rs) ok = ok && aot::compare_id_vs_correlated(and2, r).strict;
  const auto at0 = aot::compare_id_vs_correlated(and2, Rat(0));
  const auto at1 = aot::compare_id_vs_correlated(and2, Rat(1));
  ok = ok && at0.lhs_bound == Rat(2) && at0.rhs_witness == Rat(3) && at1.lhs_bound == Rat(2) &&
       at1.rhs_witness == Rat(11, 4);
  line(8, ok, "correlated witness strictly beats every independent distribution at h=2");
}

// 9. unconstrained identical-leaf maximum against its pinned constants
void criterion9() {
  const auto mx = aot::maximize_iid(TreeShape(GateKind::And, 2), 1e-9);
  const double x0 = (std::sqrt(7.0) - 1.0) / 3.0;
  const double pinned = 2.631122;
  const double dx = std::abs(mx.x_star - x0);
  const double dv = std::abs(mx.value - pinned);
  const auto or3 = aot::maximize_iid(TreeShape(GateKind::Or, 3), 1e-9);
  const double sep = std::abs(mx.x_star - or3.x_star);
  const bool x_ok = dx < 1e-6;
  const bool v_ok = dv < 1e-6;
  const bool sep_ok = sep > 1e-3;
  line(9, x_ok && v_ok && sep_ok,
       "identical-leaf maximum matches pinned argmax and value constants");
  if (!(x_ok && v_ok && sep_ok)) {
    const double exact = (34.0 + 14.0 * std::sqrt(7.0)) / 27.0;
    std::cout << std::setprecision(16)
              << "         argmax |x* - (sqrt(7)-1)/3| = " << dx << (x_ok ? "  (< 1e-6)" : "")
              << "\n"
              << "         value " << mx.value << " vs pinned 2.631122: |dv| = " << dv
              << " exceeds 1e-6\n"
              << "         cross-check: stationary value (34+14*sqrt(7))/27 = " << exact
              << ", |value - exact| = " << std::abs(mx.value - exact) << "\n"
              << "         the pinned constant sits 8.3e-6 from the exact stationary value;"
              << " every independent check agrees with the computed value\n"
              << "         odd/even maximizer separation = " << sep
              << (sep_ok ? "  (> 1e-3)" : "") << std::endl;
  }
}

// 10. exact cross-validation of the three cost evaluators
void criterion10() {
  std::mt19937 rng(20260814);
  std::uniform_int_distribution<int> num(0, 12);
  std::uniform_int_distribution<int> coin(0, 1);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const int h = 1 + trial % 2;
    const TreeShape t(coin(rng) ? GateKind::And : GateKind::Or, h);
    const long leaves = t.leaf_count();
    std::vector<Rat> probs;
    for (long i = 0; i < leaves; ++i) probs.emplace_back(num(rng), 12);
    const aot::IndependentDistribution<Rat> d(probs);

    aot::DirectionalOrder order = aot::DirectionalOrder::left_to_right(t);
    for (auto& flag : order.right_first) flag = static_cast<std::uint8_t>(coin(rng));

    Rat by_hand(0);
    for (long bits = 0; bits < (1L << leaves); ++bits) {
      Rat weight(1);
      std::vector<std::uint8_t> a(static_cast<std::size_t>(leaves));
      for (long i = 0; i < leaves; ++i) {
        a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((bits >> i) & 1L);
        const Rat& p0 = probs[static_cast<std::size_t>(i)];
        if (a[static_cast<std::size_t>(i)])
          weight *= Rat(1) - p0;
        else
          weight *= p0;
      }
      if (weight == 0) continue;
      by_hand += weight * aot::run_cost(t, order, aot::Assignment(a));
    }
    ok = by_hand == aot::expected_cost_id(t, order, d);
    if (!ok) break;

    const auto best_order = aot::min_cost_over_orders(t, d);
    const auto best_adaptive = aot::min_cost_adaptive(t, aot::product_lift(t, d));
    ok = best_order.expected_cost == best_adaptive.expected_cost;
  }
  line(10, ok, "100 random rational distributions: fold = enumeration, ordered = adaptive");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::cout << (10 - failures) << " of 10 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
