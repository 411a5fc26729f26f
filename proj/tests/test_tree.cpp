#include "aot/tree.hpp"

#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

using aot::Assignment;
using aot::GateKind;
using aot::TreeShape;

namespace {

Assignment nth_assignment(long leaves, long id) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(leaves));
  for (long i = 0; i < leaves; ++i)
    bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((id >> (leaves - 1 - i)) & 1);
  return Assignment(std::move(bits));
}

}  // namespace

TEST_CASE("shape validation and counts") {
  CHECK_THROWS_AS(TreeShape(GateKind::And, 0), std::invalid_argument);
  CHECK_THROWS_AS(TreeShape(GateKind::Or, -3), std::invalid_argument);
  CHECK_THROWS_AS(TreeShape(GateKind::Or, 25), std::invalid_argument);
  const TreeShape t(GateKind::And, 3);
  CHECK(t.leaf_count() == 8);
  CHECK(t.internal_count() == 7);
  CHECK(TreeShape(GateKind::Or, 1).leaf_count() == 2);
}

TEST_CASE("gates alternate level by level") {
  const TreeShape t(GateKind::And, 4);
  CHECK(t.gate_at_depth(0) == GateKind::And);
  CHECK(t.gate_at_depth(1) == GateKind::Or);
  CHECK(t.gate_at_depth(2) == GateKind::And);
  CHECK(t.gate_at_depth(3) == GateKind::Or);
  CHECK_THROWS_AS(t.gate_at_depth(4), std::invalid_argument);
  CHECK_THROWS_AS(t.gate_at_depth(-1), std::invalid_argument);
  const TreeShape d = aot::dual(t);
  CHECK(d.root_gate == GateKind::Or);
  CHECK(d.height == 4);
  CHECK(aot::dual(d) == t);
  CHECK(std::string(aot::gate_name(GateKind::And)) == "and");
  CHECK(std::string(aot::gate_name(GateKind::Or)) == "or");
}

TEST_CASE("heap indices and path addresses are inverse") {
  CHECK(aot::address_to_heap("") == 1);
  CHECK(aot::address_to_heap("0") == 2);
  CHECK(aot::address_to_heap("1") == 3);
  CHECK(aot::address_to_heap("01") == 5);
  CHECK(aot::address_to_heap("110") == 14);
  CHECK(aot::heap_to_address(1) == "");
  CHECK(aot::heap_to_address(5) == "01");
  CHECK(aot::heap_to_address(14) == "110");
  for (long n = 1; n < 256; ++n) CHECK(aot::address_to_heap(aot::heap_to_address(n)) == n);
  CHECK_THROWS_AS(aot::address_to_heap("02"), std::invalid_argument);
  CHECK_THROWS_AS(aot::heap_to_address(0), std::invalid_argument);
}

TEST_CASE("assignment round-trips and complements") {
  const Assignment a = Assignment::from_string("0110");
  CHECK(a.to_string() == "0110");
  CHECK(a.bits == std::vector<std::uint8_t>({0, 1, 1, 0}));
  CHECK(a.complement().to_string() == "1001");
  CHECK(a.complement().complement() == a);
  CHECK(Assignment::from_string("") == Assignment{});
  CHECK_THROWS_AS(Assignment::from_string("01x1"), std::invalid_argument);
  CHECK_THROWS_AS(Assignment({0, 2}), std::invalid_argument);
  CHECK(Assignment::from_string("0011") < Assignment::from_string("0100"));
}

TEST_CASE("evaluation of small trees") {
  const TreeShape and2(GateKind::And, 2);  // (a|b) & (c|d)
  CHECK(aot::evaluate(and2, Assignment::from_string("0101")) == 1);
  CHECK(aot::evaluate(and2, Assignment::from_string("1100")) == 0);
  CHECK(aot::evaluate(and2, Assignment::from_string("0000")) == 0);
  CHECK(aot::evaluate(and2, Assignment::from_string("1111")) == 1);
  const TreeShape or2(GateKind::Or, 2);  // (a&b) | (c&d)
  CHECK(aot::evaluate(or2, Assignment::from_string("0101")) == 0);
  CHECK(aot::evaluate(or2, Assignment::from_string("1100")) == 1);
  const TreeShape and1(GateKind::And, 1);
  CHECK(aot::evaluate(and1, Assignment::from_string("10")) == 0);
  CHECK(aot::evaluate(and1, Assignment::from_string("11")) == 1);
  CHECK_THROWS_AS(aot::evaluate(and2, Assignment::from_string("011")), std::invalid_argument);
}

TEST_CASE("complementation swaps the tree value under the dual shape") {
  for (const GateKind g : {GateKind::And, GateKind::Or}) {
    for (int h = 1; h <= 3; ++h) {
      const TreeShape t(g, h);
      const TreeShape d = aot::dual(t);
      const long total = 1L << t.leaf_count();
      for (long id = 0; id < total; ++id) {
        const Assignment a = nth_assignment(t.leaf_count(), id);
        CHECK(aot::evaluate(d, a.complement()) == 1 - aot::evaluate(t, a));
      }
    }
  }
}
