#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aot {

// Raised when an argument is structurally valid but exceeds a documented
// size bound of the requested operation (exhaustive enumerations and exact
// searches are only offered up to small heights).
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GateKind { And, Or };

inline GateKind dual(GateKind g) { return g == GateKind::And ? GateKind::Or : GateKind::And; }

inline const char* gate_name(GateKind g) { return g == GateKind::And ? "and" : "or"; }

// A perfect binary tree of alternating gates.  The root gate is at depth 0,
// gates alternate level by level, and the 2^height leaves hold Boolean
// values.  Internal nodes are addressed heap-style (root = 1, children of n
// are 2n and 2n+1) or equivalently by the binary string of the path from
// the root ("" = root, "0" = left child, "01" = its right child, ...).
// Leaves are numbered 0..2^height-1 in left-to-right order.
struct TreeShape {
  GateKind root_gate;
  int height;

  TreeShape(GateKind g, int h) : root_gate(g), height(h) {
    if (h < 1 || h > 24) throw std::invalid_argument("tree height must be in [1, 24]");
  }

  long leaf_count() const { return 1L << height; }
  long internal_count() const { return (1L << height) - 1; }

  GateKind gate_at_depth(int depth) const {
    if (depth < 0 || depth >= height) throw std::invalid_argument("depth out of range");
    return depth % 2 == 0 ? root_gate : dual(root_gate);
  }

  friend bool operator==(const TreeShape& a, const TreeShape& b) {
    return a.root_gate == b.root_gate && a.height == b.height;
  }
};

inline TreeShape dual(const TreeShape& t) { return TreeShape(dual(t.root_gate), t.height); }

// Path string ("" = root) -> heap index, and back.
inline long address_to_heap(const std::string& addr) {
  long n = 1;
  for (char ch : addr) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("address must be a binary string");
    n = 2 * n + (ch - '0');
  }
  return n;
}

inline std::string heap_to_address(long n) {
  if (n < 1) throw std::invalid_argument("heap index must be >= 1");
  std::string s;
  while (n > 1) {
    s.push_back(static_cast<char>('0' + (n & 1)));
    n >>= 1;
  }
  return {s.rbegin(), s.rend()};
}

// One Boolean value per leaf, in leaf order.  The textual form is a
// bit-string whose first character is leaf 0 (the leftmost leaf).
struct Assignment {
  std::vector<std::uint8_t> bits;

  Assignment() = default;
  explicit Assignment(std::vector<std::uint8_t> b) : bits(std::move(b)) {
    for (auto v : bits)
      if (v > 1) throw std::invalid_argument("assignment bits must be 0 or 1");
  }

  static Assignment from_string(const std::string& s) {
    std::vector<std::uint8_t> b;
    b.reserve(s.size());
    for (char ch : s) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("assignment must be a bit-string");
      b.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return Assignment(std::move(b));
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (auto v : bits) s.push_back(static_cast<char>('0' + v));
    return s;
  }

  Assignment complement() const {
    Assignment a(*this);
    for (auto& v : a.bits) v ^= 1;
    return a;
  }

  friend bool operator==(const Assignment& x, const Assignment& y) { return x.bits == y.bits; }
  friend bool operator<(const Assignment& x, const Assignment& y) { return x.bits < y.bits; }
};

// Value of the tree under a full assignment (0 or 1).
inline int evaluate(const TreeShape& t, const Assignment& a) {
  const long leaves = t.leaf_count();
  if (static_cast<long>(a.bits.size()) != leaves)
    throw std::invalid_argument("assignment size does not match leaf count");
  // Evaluate bottom-up over the implicit heap; node n at depth d has leaves
  // in its subtree starting at heap index n*2^(height-d).
  std::vector<std::uint8_t> val(static_cast<std::size_t>(2 * leaves));
  for (long i = 0; i < leaves; ++i) val[static_cast<std::size_t>(leaves + i)] = a.bits[static_cast<std::size_t>(i)];
  for (long n = leaves - 1; n >= 1; --n) {
    int depth = 0;
    for (long m = n; m > 1; m >>= 1) ++depth;
    const bool is_and = t.gate_at_depth(depth) == GateKind::And;
    const std::uint8_t l = val[static_cast<std::size_t>(2 * n)];
    const std::uint8_t r = val[static_cast<std::size_t>(2 * n + 1)];
    val[static_cast<std::size_t>(n)] = is_and ? (l & r) : (l | r);
  }
  return val[1];
}

}  // namespace aot
