#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "aot/rational.hpp"
#include "aot/tree.hpp"

namespace aot {

// Per-leaf probability of evaluating to 0, leaves independent.
template <class T>
struct IndependentDistribution {
  std::vector<T> leaf_zero_prob;

  IndependentDistribution() = default;
  explicit IndependentDistribution(std::vector<T> p) : leaf_zero_prob(std::move(p)) {
    for (const T& v : leaf_zero_prob)
      if (v < T(0) || v > T(1))
        throw std::invalid_argument("leaf probabilities must lie in [0,1]");
  }
};

template <class T>
IndependentDistribution<T> iid(const TreeShape& shape, const T& x) {
  return IndependentDistribution<T>(
      std::vector<T>(static_cast<std::size_t>(shape.leaf_count()), x));
}

// Probability that the root evaluates to 0, bottom-up over the gates.
template <class T>
T root_probability(const TreeShape& shape, const IndependentDistribution<T>& d) {
  const long leaves = shape.leaf_count();
  if (static_cast<long>(d.leaf_zero_prob.size()) != leaves)
    throw std::invalid_argument("distribution size does not match leaf count");
  std::vector<T> p(d.leaf_zero_prob);
  for (int depth = shape.height - 1; depth >= 0; --depth) {
    const bool is_and = shape.gate_at_depth(depth) == GateKind::And;
    std::vector<T> up(p.size() / 2);
    for (std::size_t i = 0; i < up.size(); ++i) {
      const T& a = p[2 * i];
      const T& b = p[2 * i + 1];
      // P(and = 0) = 1 - (1-a)(1-b); P(or = 0) = a b
      if (is_and)
        up[i] = a + b - a * b;
      else
        up[i] = a * b;
    }
    p = std::move(up);
  }
  return p[0];
}

// Finite-support joint distribution over full assignments.  Weights are
// exact rationals, strictly positive, and sum to 1; the support is kept
// sorted by assignment so equal distributions compare equal.
struct CorrelatedDistribution {
  std::vector<std::pair<Assignment, Rat>> support;

  CorrelatedDistribution() = default;
  explicit CorrelatedDistribution(std::vector<std::pair<Assignment, Rat>> s)
      : support(std::move(s)) {
    std::sort(support.begin(), support.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rat total(0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (support[i].second <= 0)
        throw std::invalid_argument("correlated weights must be positive");
      if (i > 0 && support[i].first == support[i - 1].first)
        throw std::invalid_argument("duplicate assignment in support");
      total += support[i].second;
    }
    if (total != 1) throw std::invalid_argument("correlated weights must sum to 1");
  }
};

// Assignments that force a given root value with the fewest forced gates:
// an AND is 0 through exactly one 0-child, an OR is 1 through exactly one
// 1-child, and the other gate evaluations are forced all the way down.
struct ISet {
  int value = 0;  // the root value every member attains
  std::vector<Assignment> members;
};

namespace detail {

// all reluctant bit-blocks for a subtree of the given gate/height/value
inline std::vector<std::vector<std::uint8_t>> reluctant_blocks(GateKind gate, int height,
                                                               int value) {
  if (height == 0) return {{static_cast<std::uint8_t>(value)}};
  const GateKind child = dual(gate);
  const bool split = (gate == GateKind::And) == (value == 0);
  std::vector<std::vector<std::uint8_t>> out;
  const auto cross = [&out](const std::vector<std::vector<std::uint8_t>>& ls,
                            const std::vector<std::vector<std::uint8_t>>& rs) {
    for (const auto& l : ls)
      for (const auto& r : rs) {
        std::vector<std::uint8_t> v(l);
        v.insert(v.end(), r.begin(), r.end());
        out.push_back(std::move(v));
      }
  };
  if (!split) {
    // both children carry the same value (AND=1 / OR=0)
    const auto sub = reluctant_blocks(child, height - 1, value);
    cross(sub, sub);
  } else {
    // exactly one child decides (AND=0 / OR=1)
    const auto deciding = reluctant_blocks(child, height - 1, value);
    const auto other = reluctant_blocks(child, height - 1, 1 - value);
    cross(deciding, other);
    cross(other, deciding);
  }
  return out;
}

}  // namespace detail

inline ISet enumerate_reluctant(const TreeShape& shape, int value) {
  if (value != 0 && value != 1) throw std::invalid_argument("root value must be 0 or 1");
  if (shape.height > 3)
    throw capability_error("enumerate_reluctant materializes supports only up to height 3");
  ISet s;
  s.value = value;
  for (auto& block : detail::reluctant_blocks(shape.root_gate, shape.height, value))
    s.members.emplace_back(std::move(block));
  std::sort(s.members.begin(), s.members.end());
  return s;
}

// Cardinality of the reluctant set, by the same recursion without
// materializing members.
inline Int reluctant_count(const TreeShape& shape, int value) {
  if (value != 0 && value != 1) throw std::invalid_argument("root value must be 0 or 1");
  struct Impl {
    static Int count(GateKind gate, int height, int value) {
      if (height == 0) return 1;
      const GateKind child = dual(gate);
      const bool split = (gate == GateKind::And) == (value == 0);
      if (!split) {
        const Int s = count(child, height - 1, value);
        return s * s;
      }
      return 2 * count(child, height - 1, value) * count(child, height - 1, 1 - value);
    }
  };
  return Impl::count(shape.root_gate, shape.height, value);
}

inline CorrelatedDistribution uniform_on(const ISet& s) {
  if (s.members.empty()) throw std::invalid_argument("uniform_on needs a nonempty set");
  std::vector<std::pair<Assignment, Rat>> support;
  support.reserve(s.members.size());
  const Rat w(1, static_cast<Int>(s.members.size()));
  for (const auto& a : s.members) support.emplace_back(a, w);
  return CorrelatedDistribution(std::move(support));
}

// r * d0 + (1-r) * d1 pointwise.  With d0 supported on root-value-0
// assignments and d1 on root-value-1, the mix's root-zero probability is r.
inline CorrelatedDistribution mix(const CorrelatedDistribution& d0,
                                  const CorrelatedDistribution& d1, const Rat& r) {
  if (r < 0 || r > 1) throw std::invalid_argument("mix weight must lie in [0,1]");
  std::vector<std::pair<Assignment, Rat>> support;
  std::size_t i = 0, j = 0;
  const auto push = [&support](const Assignment& a, const Rat& w) {
    if (w > 0) support.emplace_back(a, w);
  };
  while (i < d0.support.size() || j < d1.support.size()) {
    if (j == d1.support.size() ||
        (i < d0.support.size() && d0.support[i].first < d1.support[j].first)) {
      push(d0.support[i].first, r * d0.support[i].second);
      ++i;
    } else if (i == d0.support.size() || d1.support[j].first < d0.support[i].first) {
      push(d1.support[j].first, (1 - r) * d1.support[j].second);
      ++j;
    } else {
      push(d0.support[i].first, r * d0.support[i].second + (1 - r) * d1.support[j].second);
      ++i;
      ++j;
    }
  }
  return CorrelatedDistribution(std::move(support));
}

// The product distribution of an independent one, as an explicit support.
inline CorrelatedDistribution product_lift(const TreeShape& shape,
                                           const IndependentDistribution<Rat>& d) {
  if (shape.height > 3)
    throw capability_error("product_lift materializes supports only up to height 3");
  const long leaves = shape.leaf_count();
  if (static_cast<long>(d.leaf_zero_prob.size()) != leaves)
    throw std::invalid_argument("distribution size does not match leaf count");
  std::vector<std::pair<Assignment, Rat>> support;
  for (long bits = 0; bits < (1L << leaves); ++bits) {
    Rat w(1);
    std::vector<std::uint8_t> v(static_cast<std::size_t>(leaves));
    for (long i = 0; i < leaves; ++i) {
      const bool one = (bits >> i) & 1L;
      v[static_cast<std::size_t>(i)] = one;
      const Rat& p0 = d.leaf_zero_prob[static_cast<std::size_t>(i)];
      w *= one ? 1 - p0 : p0;
      if (w == 0) break;
    }
    if (w > 0) support.emplace_back(Assignment(std::move(v)), w);
  }
  return CorrelatedDistribution(std::move(support));
}

// P(root = 0) under a correlated distribution, by direct evaluation.
inline Rat root_probability(const TreeShape& shape, const CorrelatedDistribution& d) {
  Rat p(0);
  for (const auto& [a, w] : d.support)
    if (evaluate(shape, a) == 0) p += w;
  return p;
}

}  // namespace aot
