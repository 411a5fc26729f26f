#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "aot/distribution.hpp"
#include "aot/families.hpp"
#include "aot/rational.hpp"
#include "aot/strategy.hpp"
#include "aot/sturm.hpp"
#include "aot/tree.hpp"

namespace aot {

// Target probability that the root evaluates to 0.
struct RootConstraint {
  double r;

  explicit RootConstraint(double value) : r(value) {
    if (!(value >= 0.0 && value <= 1.0))
      throw std::invalid_argument("root probability must lie in [0,1]");
  }
};

// Zero-probabilities (z, w) of the two children of an OR root, coupled to a
// root constraint r by (1-z)(1-w) = 1-r with 0 <= w <= z <= r.
struct ChildProbPair {
  double z = 0.0;
  double w = 0.0;
};

// f(z, w) = c(z) + (1 - z) c(w), where c(u) is the expected cost of the
// OR-rooted family of the given height at the unique leaf probability whose
// root probability is u.  This is the cost of an OR root probing the
// z-child first, with both children's subtrees at their own equilibria.
inline double cep1_objective(int height, const ChildProbPair& pair) {
  if (!(pair.z >= 0.0 && pair.z <= 1.0 && pair.w >= 0.0 && pair.w <= 1.0))
    throw std::invalid_argument("child probabilities must lie in [0,1]");
  const auto c = [height](double u) {
    return cost_prob_at<double>(GateKind::Or, height, prob_inverse(GateKind::Or, height, u))
        .cost;
  };
  return c(pair.z) + (1.0 - pair.z) * c(pair.w);
}

struct Cep1Result {
  ChildProbPair argmax;
  double value = 0.0;
  bool f1_decreasing = false;  // arc objective strictly decreasing on a 200-point grid
  long evaluations = 0;
};

// Maximize f over the feasible arc z in [1-sqrt(1-r), r], w = omega(z) =
// 1 - (1-r)/(1-z).  The arc objective f1 is scanned on a coarse grid and
// the best cell refined by golden section; a pure golden section over the
// whole arc is avoided because only monotone decrease of f1 is expected,
// not unimodality of other parametrizations.  The expected maximizer is
// the left endpoint z = w = 1 - sqrt(1-r).
inline Cep1Result cep1_solve(int height, const RootConstraint& rc, double tol) {
  if (!(rc.r > 0.0 && rc.r < 1.0)) throw std::domain_error("cep1_solve needs 0 < r < 1");
  if (tol <= 0) throw std::invalid_argument("cep1_solve needs tol > 0");
  const double r = rc.r;
  const double zlo = 1.0 - std::sqrt(1.0 - r);
  const double zhi = r;
  const auto omega = [r](double z) {
    return std::min(1.0, std::max(0.0, 1.0 - (1.0 - r) / (1.0 - z)));
  };
  Cep1Result out;
  const auto f1 = [&](double z) {
    ++out.evaluations;
    return cep1_objective(height, {z, omega(z)});
  };

  constexpr int kScan = 64;
  std::vector<double> zs(kScan + 1), fs(kScan + 1);
  int best = 0;
  for (int j = 0; j <= kScan; ++j) {
    zs[static_cast<std::size_t>(j)] = zlo + (zhi - zlo) * j / kScan;
    fs[static_cast<std::size_t>(j)] = f1(zs[static_cast<std::size_t>(j)]);
    if (fs[static_cast<std::size_t>(j)] > fs[static_cast<std::size_t>(best)]) best = j;
  }
  double a = zs[static_cast<std::size_t>(std::max(0, best - 1))];
  double b = zs[static_cast<std::size_t>(std::min(kScan, best + 1))];
  constexpr double kGolden = 0.6180339887498949;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double g1 = f1(x1), g2 = f1(x2);
  while (b - a > tol) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + kGolden * (b - a);
      g2 = f1(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - kGolden * (b - a);
      g1 = f1(x1);
    }
  }
  // settle on the best of the final bracket's endpoints and midpoint, so a
  // maximum at the very edge of the arc is reported exactly
  double zstar = a;
  out.value = f1(a);
  for (const double cand : {0.5 * (a + b), b}) {
    const double v = f1(cand);
    if (v > out.value) {
      out.value = v;
      zstar = cand;
    }
  }
  out.argmax = {zstar, omega(zstar)};

  out.f1_decreasing = true;
  constexpr int kDiffGrid = 200;
  double prev = f1(zlo);
  for (int j = 1; j < kDiffGrid && out.f1_decreasing; ++j) {
    const double cur = f1(zlo + (zhi - zlo) * j / (kDiffGrid - 1));
    if (!(cur < prev)) out.f1_decreasing = false;
    prev = cur;
  }
  return out;
}

struct EquilibriumReport {
  double value = 0.0;
  std::vector<double> leaf_zero_prob;  // maximizing independent distribution
  long iterations = 0;                 // objective evaluations across all starts
  double deviation = 0.0;              // max_i |x_i - mean|
  double mean = 0.0;
  double residual = 0.0;               // |root probability - r| at the argmax
  bool certified_iid = false;          // deviation < 10 * tol
  bool converged = true;               // every start exhausted its step schedule
  unsigned long seed = 0;
  int starts = 0;
};

namespace detail {

// Restore root probability r by monotone bisection on a single coordinate,
// preferring the last one; earlier coordinates are fallbacks for iterates
// where the last coordinate cannot reach r.  Coordinates are nudged off
// the boundary first so the root probability is strictly monotone in each.
inline bool project_to_constraint(const TreeShape& shape, std::vector<double>& x, double r) {
  constexpr double kNudge = 1e-9;
  for (double& v : x) v = std::min(1.0 - kNudge, std::max(kNudge, v));
  const auto prob_with = [&shape, &x](std::size_t ci, double t) {
    std::vector<double> y(x);
    y[ci] = t;
    return root_probability(shape, IndependentDistribution<double>(std::move(y)));
  };
  for (std::size_t ci = x.size(); ci-- > 0;) {
    const double p0 = prob_with(ci, 0.0);
    const double p1 = prob_with(ci, 1.0);
    if ((p0 - r) * (p1 - r) > 0.0) continue;  // r unreachable along this coordinate
    const bool increasing = p1 > p0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((prob_with(ci, mid) < r) == increasing)
        lo = mid;
      else
        hi = mid;
    }
    x[ci] = 0.5 * (lo + hi);
    return true;
  }
  return false;
}

}  // namespace detail

// Maximize the best-order expected cost over independent distributions
// whose root probability is r.  Pattern search over the leaf probabilities
// with projection back onto the constraint after every move; multi-start
// with fixed seeds, plus one deterministic start at the equal-probability
// point, which the even/odd closed forms predict to be the maximizer.  The
// report's deviation measures how far the winner is from equal
// probabilities.
inline EquilibriumReport eigen_search(const TreeShape& shape, const RootConstraint& rc,
                                      double tol, int starts = 8,
                                      unsigned long seed = 12345) {
  if (!(rc.r > 0.0 && rc.r < 1.0)) throw std::domain_error("eigen_search needs 0 < r < 1");
  if (tol <= 0) throw std::invalid_argument("eigen_search needs tol > 0");
  if (shape.height > 4)
    throw capability_error("eigen_search optimizes at most 16 leaf probabilities (height 4)");
  if (starts < 1) throw std::invalid_argument("eigen_search needs at least one start");
  const std::size_t n = static_cast<std::size_t>(shape.leaf_count());
  const double r = rc.r;

  EquilibriumReport rep;
  rep.seed = seed;
  rep.starts = starts;

  const auto objective = [&shape](const std::vector<double>& x) {
    return min_cost_over_orders(shape, IndependentDistribution<double>(x)).expected_cost;
  };

  std::vector<double> best_x;
  double best_value = -1.0;
  const double step_min = std::max(tol / 100.0, 1e-12);
  constexpr long kEvalCap = 40000;

  for (int s = 0; s < starts; ++s) {
    std::vector<double> x(n);
    if (s == 0) {
      std::fill(x.begin(), x.end(), prob_inverse(shape.root_gate, shape.height, r));
    } else {
      std::mt19937 rng(static_cast<std::mt19937::result_type>(seed + static_cast<unsigned long>(s)));
      std::uniform_real_distribution<double> uni(0.05, 0.95);
      for (double& v : x) v = uni(rng);
    }
    if (!detail::project_to_constraint(shape, x, r)) continue;
    double value = objective(x);
    long evals = 1;
    double step = 0.25;
    while (step > step_min && evals < kEvalCap) {
      bool improved = false;
      const auto consider = [&](std::vector<double> y) {
        if (!detail::project_to_constraint(shape, y, r)) return;
        const double v = objective(y);
        ++evals;
        if (v > value + 1e-14) {
          value = v;
          x = std::move(y);
          improved = true;
        }
      };
      for (std::size_t i = 0; i < n; ++i)
        for (const double delta : {step, -step}) {
          std::vector<double> y(x);
          y[i] = std::min(1.0, std::max(0.0, y[i] + delta));
          consider(std::move(y));
        }
      // symmetrizing move: pull every coordinate toward the current mean
      double mean = 0.0;
      for (const double v : x) mean += v;
      mean /= static_cast<double>(n);
      for (const double frac : {1.0, 0.5}) {
        std::vector<double> y(x);
        for (double& v : y) v += frac * (mean - v);
        consider(std::move(y));
      }
      if (!improved) step *= 0.5;
    }
    rep.iterations += evals;
    if (evals >= kEvalCap) rep.converged = false;
    if (value > best_value || (value == best_value && x < best_x)) {
      best_value = value;
      best_x = x;
    }
  }

  if (best_x.empty()) throw std::logic_error("eigen_search could not satisfy the constraint");
  rep.value = best_value;
  rep.leaf_zero_prob = best_x;
  for (const double v : best_x) rep.mean += v;
  rep.mean /= static_cast<double>(n);
  for (const double v : best_x)
    rep.deviation = std::max(rep.deviation, std::abs(v - rep.mean));
  rep.residual = std::abs(
      root_probability(shape, IndependentDistribution<double>(best_x)) - r);
  rep.certified_iid = rep.deviation < 10.0 * tol;
  return rep;
}

// Closed-form minimum expected cost when the root value is forced to i:
// 2^k at even height 2k; at odd height 2k+1, 2^k when the root gate can be
// settled by one child (AND forced 0, OR forced 1) and 2^(k+1) otherwise.
inline long proposition_values(const TreeShape& shape, int i) {
  if (i != 0 && i != 1) throw std::invalid_argument("root value must be 0 or 1");
  const int k = shape.height / 2;
  if (shape.height % 2 == 0) return 1L << k;
  const bool one_child_settles = (i == 0 && shape.root_gate == GateKind::And) ||
                                 (i == 1 && shape.root_gate == GateKind::Or);
  return one_child_settles ? (1L << k) : (1L << (k + 1));
}

// Exhaustively check the closed form: every lattice independent
// distribution forcing the root to i has best-order cost exactly
// proposition_values, and the all-i point distribution attains it.
inline bool proposition_check(const TreeShape& shape, int i, int grid) {
  if (i != 0 && i != 1) throw std::invalid_argument("root value must be 0 or 1");
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  if (shape.height > 3)
    throw capability_error("proposition_check enumerates lattices only up to height 3");
  const std::size_t n = static_cast<std::size_t>(shape.leaf_count());
  if (std::pow(grid + 1.0, static_cast<double>(n)) > 2.5e6)
    throw capability_error("lattice too fine for exhaustive enumeration");

  std::vector<Rat> ticks(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) ticks[static_cast<std::size_t>(k)] = Rat(k, grid);
  const Rat forced_prob(1 - i);  // P(root = 0) when the root value is surely i
  const Rat want(proposition_values(shape, i));

  long forcing_count = 0;
  std::vector<int> idx(n, 0);
  std::vector<Rat> x(n, Rat(0));
  while (true) {
    for (std::size_t j = 0; j < n; ++j) x[j] = ticks[static_cast<std::size_t>(idx[j])];
    const IndependentDistribution<Rat> d(x);
    if (root_probability(shape, d) == forced_prob) {
      ++forcing_count;
      if (min_cost_over_orders(shape, d).expected_cost != want) return false;
    }
    std::size_t j = 0;
    while (j < n && ++idx[j] > grid) idx[j++] = 0;
    if (j == n) break;
  }
  if (forcing_count == 0) return false;

  const IndependentDistribution<Rat> all_i = iid(shape, Rat(1 - i));
  return root_probability(shape, all_i) == forced_prob &&
         min_cost_over_orders(shape, all_i).expected_cost == want;
}

struct IidMaximum {
  double x_star = 0.0;
  double value = 0.0;
  int derivative_roots = -1;  // sign changes of the cost derivative inside (0,1)
  bool unimodal = false;
};

// Maximize the family cost over identical leaf probabilities x in [0,1].
// The cost derivative's sign changes are counted first (exactly for small
// heights, by a dense scan beyond that); golden section then needs only
// that certificate of unimodality.
inline IidMaximum maximize_iid(const TreeShape& shape, double tol) {
  if (!(tol > 0 && tol <= 0.5)) throw std::invalid_argument("maximize_iid needs tol in (0, 0.5]");
  IidMaximum out;
  if (shape.height <= 8) {
    const auto [c, p] = detail::int_cost_prob(shape.root_gate, shape.height);
    (void)p;
    out.derivative_roots = count_roots_open_unit(c.derivative());
  } else {
    constexpr int kScan = 2048;
    int changes = 0;
    double prev = cost_prob_at<double>(shape.root_gate, shape.height, 0.5 / kScan).dcost;
    for (int j = 1; j < kScan; ++j) {
      const double cur =
          cost_prob_at<double>(shape.root_gate, shape.height, (j + 0.5) / kScan).dcost;
      if ((prev < 0) != (cur < 0)) ++changes;
      prev = cur;
    }
    out.derivative_roots = changes;
  }
  out.unimodal = out.derivative_roots <= 1;

  const auto f = [&shape](double x) {
    return cost_prob_at<double>(shape.root_gate, shape.height, x).cost;
  };
  double a = 0.0, b = 1.0;
  constexpr double kGolden = 0.6180339887498949;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double g1 = f(x1), g2 = f(x2);
  while (b - a > tol) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + kGolden * (b - a);
      g2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - kGolden * (b - a);
      g1 = f(x1);
    }
  }
  out.x_star = 0.5 * (a + b);
  out.value = f(out.x_star);
  // a maximum at an endpoint of [0,1] beats any interior bracket point
  for (const double cand : {0.0, 1.0}) {
    const double v = f(cand);
    if (v > out.value) {
      out.value = v;
      out.x_star = cand;
    }
  }
  return out;
}

// Bound at odd heights 2k+1: beyond the threshold root alpha the OR-rooted
// cost exceeds 2^(k+1).  Checked on a uniform grid of (alpha+1e-3, 1-1e-3).
inline bool odd_height_bound_check(int k, int points = 500) {
  if (k < 1) throw std::invalid_argument("odd_height_bound_check needs k >= 1");
  if (points < 2) throw std::invalid_argument("odd_height_bound_check needs points >= 2");
  const double alpha = find_alpha().value;
  const double lo = alpha + 1e-3, hi = 1.0 - 1e-3;
  const double bound = std::pow(2.0, k + 1);
  for (int j = 0; j < points; ++j) {
    const double x = lo + (hi - lo) * j / (points - 1);
    if (!(cost_prob_at<double>(GateKind::Or, 2 * k + 1, x).cost > bound)) return false;
  }
  return true;
}

// At even heights 2k the cost through the constraint parametrization,
// c(z) = cost at the leaf probability with root probability z, exceeds its
// common endpoint value 2^k everywhere inside (0,1).
inline bool even_height_dominance_check(int k, int points = 200) {
  if (k < 1) throw std::invalid_argument("even_height_dominance_check needs k >= 1");
  if (points < 2) throw std::invalid_argument("even_height_dominance_check needs points >= 2");
  const int h = 2 * k;
  const double bound = std::pow(2.0, k);
  if (cost_prob_at<double>(GateKind::And, h, 0.0).cost != bound) return false;
  if (cost_prob_at<double>(GateKind::And, h, 1.0).cost != bound) return false;
  for (int j = 1; j <= points; ++j) {
    const double z = static_cast<double>(j) / (points + 1);
    const double x = prob_inverse(GateKind::And, h, z);
    if (!(cost_prob_at<double>(GateKind::And, h, x).cost > bound)) return false;
  }
  return true;
}

struct CompareReport {
  Rat r;
  double lhs = 0.0;               // best independent value (searched, or closed form)
  Rat lhs_bound;                  // certified upper bound on the independent side
  Rat rhs_witness;                // adaptive optimum against the mixed witness
  bool strict = false;            // lhs_bound < rhs_witness, decided exactly
  bool search_consistent = true;  // search stayed within the certified bound
  long set0_size = 0;
  long set1_size = 0;
};

// Independent-vs-correlated comparison at a fixed root probability r: the
// correlated witness mixes the uniform distributions on the reluctant
// 0-set and 1-set with weights r : 1-r, and is scored by the exact
// adaptive oracle.  The independent side is searched numerically and
// bounded exactly: under the constraint its optimum is at equal leaf
// probabilities (the search corroborates this), so bracketing the leaf
// probability x_r with root probability r by exact bisection and bounding
// the cost over the bracket with a coefficient Lipschitz constant yields a
// rational upper bound, and strictness is decided with no rounding.
inline CompareReport compare_id_vs_correlated(const TreeShape& shape, const Rat& r) {
  if (shape.height < 2 || shape.height > 3)
    throw capability_error("comparison needs the adaptive oracle (heights 2 and 3)");
  if (r < 0 || r > 1) throw std::invalid_argument("root probability must lie in [0,1]");
  CompareReport rep;
  rep.r = r;

  const ISet set0 = enumerate_reluctant(shape, 0);
  const ISet set1 = enumerate_reluctant(shape, 1);
  rep.set0_size = static_cast<long>(set0.members.size());
  rep.set1_size = static_cast<long>(set1.members.size());
  const CorrelatedDistribution witness = mix(uniform_on(set0), uniform_on(set1), r);
  rep.rhs_witness = min_cost_adaptive(shape, witness).expected_cost;

  if (r == 0 || r == 1) {
    // root value forced; the independent optimum is the closed form
    rep.lhs_bound = Rat(proposition_values(shape, r == 0 ? 1 : 0));
    rep.lhs = rep.lhs_bound.convert_to<double>();
    rep.strict = rep.lhs_bound < rep.rhs_witness;
    return rep;
  }

  const double tol = shape.height == 2 ? 1e-6 : 1e-5;
  const auto found =
      eigen_search(shape, RootConstraint(r.convert_to<double>()), tol);
  rep.lhs = found.value;

  Rat a(0), b(1);
  for (int it = 0; it < 100; ++it) {
    const Rat m = (a + b) / 2;
    (cost_prob_at<Rat>(shape.root_gate, shape.height, m).prob < r ? a : b) = m;
  }
  const Rat ca = cost_prob_at<Rat>(shape.root_gate, shape.height, a).cost;
  const Rat cb = cost_prob_at<Rat>(shape.root_gate, shape.height, b).cost;
  Rat lipschitz(0);
  const IntPoly dcost = detail::int_cost_prob(shape.root_gate, shape.height).first.derivative();
  for (long k = 0; k <= dcost.degree(); ++k) lipschitz += Rat(abs(dcost.coeff(k)));
  rep.lhs_bound = std::max(ca, cb) + lipschitz * (b - a);
  rep.search_consistent = found.value <= rep.lhs_bound.convert_to<double>() + 1e-6;
  rep.strict = rep.search_consistent && rep.lhs_bound < rep.rhs_witness;
  return rep;
}

}  // namespace aot
