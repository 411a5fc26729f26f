#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aot/distribution.hpp"
#include "aot/rational.hpp"
#include "aot/tree.hpp"

namespace aot {

// A depth-first probing order: one flag per internal node (heap index n is
// stored at n-1) saying whether the right child's subtree is explored first.
struct DirectionalOrder {
  std::vector<std::uint8_t> right_first;

  static DirectionalOrder left_to_right(const TreeShape& shape) {
    return DirectionalOrder{
        std::vector<std::uint8_t>(static_cast<std::size_t>(shape.internal_count()), 0)};
  }

  bool probes_right_first(long node) const {
    return right_first.at(static_cast<std::size_t>(node - 1)) != 0;
  }
};

namespace detail {

// (value, leaves probed) of the subtree at heap node n under short-circuit
// evaluation in the given order.
inline std::pair<int, long> directional_run(const TreeShape& shape,
                                            const DirectionalOrder& order, const Assignment& a,
                                            long n, int depth) {
  const long leaves = shape.leaf_count();
  if (depth == shape.height) return {a.bits[static_cast<std::size_t>(n - leaves)], 1};
  const bool rf = order.probes_right_first(n);
  const auto [v1, c1] = directional_run(shape, order, a, 2 * n + (rf ? 1 : 0), depth + 1);
  const bool is_and = shape.gate_at_depth(depth) == GateKind::And;
  if (is_and ? v1 == 0 : v1 == 1) return {v1, c1};
  const auto [v2, c2] = directional_run(shape, order, a, 2 * n + (rf ? 0 : 1), depth + 1);
  return {is_and ? (v1 & v2) : (v1 | v2), c1 + c2};
}

}  // namespace detail

// Number of leaves a directional strategy probes on one assignment.
inline long run_cost(const TreeShape& shape, const DirectionalOrder& order, const Assignment& a) {
  if (static_cast<long>(a.bits.size()) != shape.leaf_count())
    throw std::invalid_argument("assignment size does not match leaf count");
  if (static_cast<long>(order.right_first.size()) != shape.internal_count())
    throw std::invalid_argument("order size does not match internal node count");
  return detail::directional_run(shape, order, a, 1, 0).second;
}

// A general query strategy as an explicit decision tree.  Node 0 is the
// start; a node either probes a leaf and branches on the observed bit, or
// halts (probe == -1) declaring the root value.
struct AdaptiveStrategy {
  struct Node {
    int probe = -1;  // leaf index to probe, or -1 to halt
    int value = -1;  // declared root value at a halt node
    int on0 = -1;    // next node after observing 0
    int on1 = -1;    // next node after observing 1
  };
  std::vector<Node> nodes;
};

namespace detail {

// Three-valued bottom-up evaluation: leafval holds -1 (unprobed) / 0 / 1 per
// leaf, and the result assigns every heap node -1 / 0 / 1.
inline std::vector<int> partial_eval(const TreeShape& shape, const std::vector<int>& leafval) {
  const long leaves = shape.leaf_count();
  std::vector<int> val(static_cast<std::size_t>(2 * leaves), -1);
  for (long i = 0; i < leaves; ++i) val[static_cast<std::size_t>(leaves + i)] = leafval[static_cast<std::size_t>(i)];
  for (long n = leaves - 1; n >= 1; --n) {
    int depth = 0;
    for (long m = n; m > 1; m >>= 1) ++depth;
    const bool is_and = shape.gate_at_depth(depth) == GateKind::And;
    const int l = val[static_cast<std::size_t>(2 * n)];
    const int r = val[static_cast<std::size_t>(2 * n + 1)];
    const int absorbing = is_and ? 0 : 1;
    if (l == absorbing || r == absorbing)
      val[static_cast<std::size_t>(n)] = absorbing;
    else if (l != -1 && r != -1)
      val[static_cast<std::size_t>(n)] = is_and ? (l & r) : (l | r);
  }
  return val;
}

// A leaf is live when probing it can still influence the root: it is
// unprobed and no node on its root path has settled.
inline bool leaf_is_live(const TreeShape& shape, const std::vector<int>& val, long leaf) {
  const long leaves = shape.leaf_count();
  if (val[static_cast<std::size_t>(leaves + leaf)] != -1) return false;
  for (long n = (leaves + leaf) >> 1; n >= 1; n >>= 1)
    if (val[static_cast<std::size_t>(n)] != -1) return false;
  return true;
}

}  // namespace detail

// Replay an adaptive strategy on one assignment, checking the pruning
// discipline as it goes: every probe must hit a live leaf, and the strategy
// must halt exactly when the root has settled, declaring the settled value.
inline long run_cost(const TreeShape& shape, const AdaptiveStrategy& strat, const Assignment& a) {
  const long leaves = shape.leaf_count();
  if (static_cast<long>(a.bits.size()) != leaves)
    throw std::invalid_argument("assignment size does not match leaf count");
  if (strat.nodes.empty()) throw std::invalid_argument("strategy has no nodes");
  std::vector<int> leafval(static_cast<std::size_t>(leaves), -1);
  long cost = 0;
  int at = 0;
  for (long step = 0; step <= leaves; ++step) {
    const auto& node = strat.nodes.at(static_cast<std::size_t>(at));
    const auto val = detail::partial_eval(shape, leafval);
    if (node.probe < 0) {
      if (val[1] == -1) throw std::logic_error("strategy halted before the root settled");
      if (node.value != val[1]) throw std::logic_error("strategy declared the wrong root value");
      return cost;
    }
    if (val[1] != -1) throw std::logic_error("strategy kept probing after the root settled");
    if (node.probe >= leaves) throw std::invalid_argument("probe index out of range");
    if (!detail::leaf_is_live(shape, val, node.probe))
      throw std::logic_error("strategy probed a leaf that can no longer matter");
    const int bit = a.bits[static_cast<std::size_t>(node.probe)];
    leafval[static_cast<std::size_t>(node.probe)] = bit;
    ++cost;
    at = bit == 0 ? node.on0 : node.on1;
    if (at < 0 || at >= static_cast<int>(strat.nodes.size()))
      throw std::invalid_argument("strategy branch leads nowhere");
  }
  throw std::logic_error("strategy failed to halt");
}

// Expected probe count of a directional order when leaves are independent.
// Fold per node: the second subtree is only entered when the first one did
// not short-circuit the gate.
template <class T>
struct CostAndProb {
  T cost;       // expected leaves probed in the subtree
  T zero_prob;  // probability the subtree evaluates to 0
};

namespace detail {

template <class T>
CostAndProb<T> directional_fold(const TreeShape& shape, const DirectionalOrder& order,
                                const IndependentDistribution<T>& d, long n, int depth) {
  const long leaves = shape.leaf_count();
  if (depth == shape.height)
    return {T(1), d.leaf_zero_prob[static_cast<std::size_t>(n - leaves)]};
  const bool rf = order.probes_right_first(n);
  const auto first = directional_fold(shape, order, d, 2 * n + (rf ? 1 : 0), depth + 1);
  const auto second = directional_fold(shape, order, d, 2 * n + (rf ? 0 : 1), depth + 1);
  if (shape.gate_at_depth(depth) == GateKind::And)
    return {first.cost + (T(1) - first.zero_prob) * second.cost,
            first.zero_prob + second.zero_prob - first.zero_prob * second.zero_prob};
  return {first.cost + first.zero_prob * second.cost, first.zero_prob * second.zero_prob};
}

}  // namespace detail

template <class T>
T expected_cost_id(const TreeShape& shape, const DirectionalOrder& order,
                   const IndependentDistribution<T>& d) {
  if (static_cast<long>(d.leaf_zero_prob.size()) != shape.leaf_count())
    throw std::invalid_argument("distribution size does not match leaf count");
  if (static_cast<long>(order.right_first.size()) != shape.internal_count())
    throw std::invalid_argument("order size does not match internal node count");
  return detail::directional_fold(shape, order, d, 1, 0).cost;
}

template <class T>
struct DirectionalOptimum {
  T expected_cost;
  DirectionalOrder order;
};

namespace detail {

// Under independence the best order decomposes per node: solve both
// subtrees, then probe whichever side makes the conditional continuation
// cheaper.  Ties keep the left child first.
template <class T>
CostAndProb<T> min_order_fold(const TreeShape& shape, const IndependentDistribution<T>& d,
                              DirectionalOrder& order, long n, int depth) {
  const long leaves = shape.leaf_count();
  if (depth == shape.height)
    return {T(1), d.leaf_zero_prob[static_cast<std::size_t>(n - leaves)]};
  const auto l = min_order_fold(shape, d, order, 2 * n, depth + 1);
  const auto r = min_order_fold(shape, d, order, 2 * n + 1, depth + 1);
  T cost_lr, cost_rl, zero_prob;
  if (shape.gate_at_depth(depth) == GateKind::And) {
    cost_lr = l.cost + (T(1) - l.zero_prob) * r.cost;
    cost_rl = r.cost + (T(1) - r.zero_prob) * l.cost;
    zero_prob = l.zero_prob + r.zero_prob - l.zero_prob * r.zero_prob;
  } else {
    cost_lr = l.cost + l.zero_prob * r.cost;
    cost_rl = r.cost + r.zero_prob * l.cost;
    zero_prob = l.zero_prob * r.zero_prob;
  }
  const bool rf = cost_rl < cost_lr;
  order.right_first[static_cast<std::size_t>(n - 1)] = rf ? 1 : 0;
  return {rf ? cost_rl : cost_lr, zero_prob};
}

}  // namespace detail

template <class T>
DirectionalOptimum<T> min_cost_over_orders(const TreeShape& shape,
                                           const IndependentDistribution<T>& d) {
  if (static_cast<long>(d.leaf_zero_prob.size()) != shape.leaf_count())
    throw std::invalid_argument("distribution size does not match leaf count");
  DirectionalOptimum<T> out{T(0), DirectionalOrder::left_to_right(shape)};
  out.expected_cost = detail::min_order_fold(shape, d, out.order, 1, 0).cost;
  return out;
}

// Expected probe count of a strategy against an explicit joint distribution.
inline Rat expected_cost_correlated(const TreeShape& shape, const DirectionalOrder& order,
                                    const CorrelatedDistribution& d) {
  Rat total(0);
  for (const auto& [a, w] : d.support) total += w * run_cost(shape, order, a);
  return total;
}

inline Rat expected_cost_correlated(const TreeShape& shape, const AdaptiveStrategy& strat,
                                    const CorrelatedDistribution& d) {
  Rat total(0);
  for (const auto& [a, w] : d.support) total += w * run_cost(shape, strat, a);
  return total;
}

// Cheapest directional order against a joint distribution, by exhausting
// all 2^(internal node count) orders.  Ties go to the order whose flag
// word, read with the root as the lowest bit, is smallest — so the
// all-left order when it is among the minimizers.
inline DirectionalOptimum<Rat> min_cost_directional_correlated(const TreeShape& shape,
                                                               const CorrelatedDistribution& d) {
  if (shape.height > 3)
    throw capability_error("directional search enumerates all orders only up to height 3");
  const long internals = shape.internal_count();
  DirectionalOptimum<Rat> best{Rat(0), DirectionalOrder::left_to_right(shape)};
  bool have = false;
  for (long mask = 0; mask < (1L << internals); ++mask) {
    DirectionalOrder order = DirectionalOrder::left_to_right(shape);
    for (long k = 0; k < internals; ++k)
      order.right_first[static_cast<std::size_t>(k)] = (mask >> k) & 1L;
    const Rat cost = expected_cost_correlated(shape, order, d);
    if (!have || cost < best.expected_cost) {
      best = {cost, std::move(order)};
      have = true;
    }
  }
  return best;
}

struct AdaptiveOptimum {
  Rat expected_cost;
  AdaptiveStrategy strategy;
};

namespace detail {

// Exact expectimax over information states for the adaptive optimum.  A
// state is (probed mask, observed bits); the optimal continuation cost is
// memoized, along with the minimizing probe for witness reconstruction.
struct AdaptiveSolver {
  const TreeShape& shape;
  long leaves;
  std::vector<std::pair<std::uint32_t, Rat>> support;  // assignment bitmask, weight
  std::unordered_map<std::uint32_t, Rat> value;
  std::unordered_map<std::uint32_t, int> best_probe;

  AdaptiveSolver(const TreeShape& s, const CorrelatedDistribution& d)
      : shape(s), leaves(s.leaf_count()) {
    support.reserve(d.support.size());
    for (const auto& [a, w] : d.support) {
      std::uint32_t bits = 0;
      for (long i = 0; i < leaves; ++i)
        if (a.bits[static_cast<std::size_t>(i)]) bits |= 1u << i;
      support.emplace_back(bits, w);
    }
  }

  static std::uint32_t key(std::uint32_t mask, std::uint32_t obs) { return (mask << 16) | obs; }

  std::vector<int> leaf_values(std::uint32_t mask, std::uint32_t obs) const {
    std::vector<int> lv(static_cast<std::size_t>(leaves), -1);
    for (long i = 0; i < leaves; ++i)
      if ((mask >> i) & 1u) lv[static_cast<std::size_t>(i)] = (obs >> i) & 1u;
    return lv;
  }

  // Optimal expected number of further probes from this state.
  Rat solve(std::uint32_t mask, std::uint32_t obs) {
    const std::uint32_t k = key(mask, obs);
    if (const auto it = value.find(k); it != value.end()) return it->second;
    const auto val = partial_eval(shape, leaf_values(mask, obs));
    if (val[1] != -1) {
      value.emplace(k, Rat(0));
      return Rat(0);
    }
    Rat total(0);
    std::vector<Rat> zero_mass(static_cast<std::size_t>(leaves), Rat(0));
    for (const auto& [bits, w] : support) {
      if ((bits & mask) != obs) continue;
      total += w;
      for (long i = 0; i < leaves; ++i)
        if (!((bits >> i) & 1u)) zero_mass[static_cast<std::size_t>(i)] += w;
    }
    Rat best(0);
    int best_leaf = -1;
    for (long i = 0; i < leaves; ++i) {
      if (!leaf_is_live(shape, val, i)) continue;
      const Rat& w0 = zero_mass[static_cast<std::size_t>(i)];
      const Rat w1 = total - w0;
      Rat cand(1);
      if (w0 > 0) cand += (w0 / total) * solve(mask | (1u << i), obs);
      if (w1 > 0) cand += (w1 / total) * solve(mask | (1u << i), obs | (1u << i));
      if (best_leaf < 0 || cand < best) {
        best = cand;
        best_leaf = static_cast<int>(i);
      }
    }
    value.emplace(k, best);
    best_probe.emplace(k, best_leaf);
    return best;
  }

  // Materialize the decision tree that follows the memoized policy.  States
  // the optimal play never reaches fall back to the lowest live leaf, which
  // keeps the tree legal on every assignment.
  int build(std::uint32_t mask, std::uint32_t obs, AdaptiveStrategy& strat) {
    const auto val = partial_eval(shape, leaf_values(mask, obs));
    const int id = static_cast<int>(strat.nodes.size());
    strat.nodes.emplace_back();
    if (val[1] != -1) {
      strat.nodes[static_cast<std::size_t>(id)].value = val[1];
      return id;
    }
    int probe = -1;
    if (const auto it = best_probe.find(key(mask, obs)); it != best_probe.end())
      probe = it->second;
    if (probe < 0)
      for (long i = 0; i < leaves; ++i)
        if (leaf_is_live(shape, val, i)) {
          probe = static_cast<int>(i);
          break;
        }
    const int on0 = build(mask | (1u << probe), obs, strat);
    const int on1 = build(mask | (1u << probe), obs | (1u << probe), strat);
    auto& node = strat.nodes[static_cast<std::size_t>(id)];
    node.probe = probe;
    node.on0 = on0;
    node.on1 = on1;
    return id;
  }
};

}  // namespace detail

// Optimal adaptive strategy against a joint distribution, with the exact
// expected cost and a decision tree attaining it.  Probes branch on what
// was seen so far; ties between probes go to the lowest leaf index.
inline AdaptiveOptimum min_cost_adaptive(const TreeShape& shape,
                                         const CorrelatedDistribution& d) {
  if (shape.height > 3)
    throw capability_error("adaptive search is exact only up to height 3");
  for (const auto& [a, w] : d.support)
    if (static_cast<long>(a.bits.size()) != shape.leaf_count())
      throw std::invalid_argument("support assignment size does not match leaf count");
  detail::AdaptiveSolver solver(shape, d);
  AdaptiveOptimum out;
  out.expected_cost = solver.solve(0, 0);
  solver.build(0, 0, out.strategy);
  return out;
}

}  // namespace aot
