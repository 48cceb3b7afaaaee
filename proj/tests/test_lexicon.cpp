#include <random>

#include "doctest.h"
#include "examples.hpp"
#include "gridgather/lexicon.hpp"
#include "oracles.hpp"

using namespace gridgather;

namespace {

const CornerString& find_string(const std::vector<CornerString>& all, Node corner, bool inner_vertical) {
  for (const auto& s : all)
    if (s.corner() == corner && s.inner_vertical() == inner_vertical) return s;
  throw std::logic_error("missing corner string");
}

Configuration random_config(std::mt19937_64& rng, int n, int m, Coord d) {
  std::uniform_int_distribution<Coord> u(0, d);
  std::vector<Node> robots;
  for (int i = 0; i < n; ++i) robots.push_back({u(rng), u(rng)});
  std::set<Node> ms;
  while (static_cast<int>(ms.size()) < m) ms.insert({u(rng), u(rng)});
  return Configuration(robots, {ms.begin(), ms.end()});
}

}  // namespace

TEST_CASE("corner strings of a 3x2 rectangle") {
  const Configuration c({{0, 0}, {2, 1}}, {{1, 0}});
  const auto all = corner_strings(c, mer(c), Labeler::Senary);
  REQUIRE(all.size() == 8);
  CHECK(find_string(all, {0, 0}, true).symbols == "401004");
  CHECK(find_string(all, {2, 1}, true).symbols == "400104");
  for (const auto& s : all)
    CHECK(s.symbols == oracle::naive_scan(c, mer(c), s.corner(), s.inner_vertical(), false));
}

TEST_CASE("corner strings of an empty rectangle are all zero") {
  const Configuration c({{0, 0}}, {{1, 0}});
  for (const auto& s : corner_strings(c, Rect{10, 10, 12, 11}, Labeler::Senary)) CHECK(s.symbols == "000000");
}

TEST_CASE("string representation picks the short side, or the larger string on squares") {
  const Configuration c({{0, 0}, {2, 1}}, {{1, 0}});
  const auto all = corner_strings(c, mer(c), Labeler::Senary);
  const CornerString& v = find_string(all, {0, 0}, true);
  const CornerString& h = find_string(all, {0, 0}, false);
  CHECK(string_repr(v, h, mer(c)).symbols == "401004");

  const Rect square{0, 0, 1, 1};
  CornerString a{v.frame, "0110"}, b{h.frame, "1001"};
  CHECK(string_repr(a, b, square).symbols == "1001");
  CHECK(string_repr(b, a, square).symbols == "1001");
  CornerString same{h.frame, "0110"};
  CHECK(string_repr(a, same, square).symbols == "0110");
}

TEST_CASE("key corner") {
  const Configuration c({{0, 0}, {2, 1}}, {{1, 0}});
  const KeyCorner k = key_corner(c);
  CHECK(k.corner == Node{0, 0});
  CHECK(k.repr.symbols == "401004");

  const Configuration turned({{0, 0}, {2, 1}}, {{1, 0}, {1, 1}});
  try {
    key_corner(turned);
    FAIL("symmetric configuration has a key corner");
  } catch (const NoUniqueKeyCorner& e) {
    CHECK(e.tied_corners().size() == 2);
  }
}

TEST_CASE("worked key corner example") {
  const Configuration c = examples::key_corner_example();
  CHECK(mer(c) == Rect{0, 0, 8, 4});
  const KeyCorner k = key_corner(c);
  CHECK(k.corner == Node{0, 0});
  CHECK(k.repr.inner_vertical());
  CHECK(k.repr.symbols == examples::kKeyCornerString);
}

TEST_CASE("worked leading corner example") {
  const Configuration c = examples::leading_corner_example();
  const auto over_mer = maximal_reprs(c, mer(c), Labeler::LambdaBinary);
  REQUIRE(over_mer.size() == 1);
  CHECK(over_mer[0].corner() == Node{0, 0});
  CHECK(over_mer[0].symbols == examples::kLeadingCornerString);
  // Over the meeting-node rectangle the same corner leads; the string loses the empty row.
  const auto lead = leading_corners(c);
  REQUIRE(lead.size() == 1);
  CHECK(lead[0].corner() == Node{0, 1});
  CHECK(lead[0].symbols == oracle::naive_scan(c, mer_f(c), {0, 1}, true, true));
}

TEST_CASE("leading corners under symmetry") {
  CHECK(leading_corners(Configuration({{5, 5}}, {{0, 0}, {2, 0}})).size() == 2);
  const auto one = leading_corners(Configuration({{5, 5}}, {{1, 1}}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].corner() == Node{1, 1});
}

TEST_CASE("orderings of a single meeting node") {
  const Configuration c({{0, 0}, {3, 2}}, {{1, 1}});
  CHECK(ordering_O(c).ordered == std::vector<Node>{{1, 1}});
  CHECK(ordering_O_doubleprime(c, {3, 2}).ordered == std::vector<Node>{{1, 1}});
}

TEST_CASE("ordering O follows the leading corner scan") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Configuration c = random_config(rng, 2, 2 + trial % 5, 6);
    const auto lead = leading_corners(c);
    if (lead.size() != 1) {
      CHECK_THROWS_AS(ordering_O(c), Error);
      continue;
    }
    const std::string scan = oracle::naive_scan(c, mer_f(c), lead[0].corner(), lead[0].inner_vertical(), true);
    std::vector<Node> expected;
    for (std::size_t k = 0; k < scan.size(); ++k)
      if (scan[k] == '1') expected.push_back(lead[0].frame.node_at(static_cast<Coord>(k)));
    const auto order = ordering_O(c).ordered;
    CHECK(order == expected);
    // Robot moves never change it.
    const Node r = c.robots().front();
    CHECK(ordering_O(with_move(c, r, {r.x + 1, r.y})).ordered == order);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("ordering O' keeps the on-axis nodes") {
  const Configuration c({{4, 4}}, {{0, 0}, {2, 0}, {1, 2}, {1, 3}});
  const Isometry axis(IsometryKind::ReflectVertical, {2, 0});
  const auto order = ordering_O_prime(c, axis).ordered;
  CHECK(std::is_permutation(order.begin(), order.end(), std::vector<Node>{{1, 2}, {1, 3}}.begin()));
  CHECK(order.size() == 2);
  CHECK(ordering_O_prime(with_move(c, {4, 4}, {4, 5}), axis).ordered == order);
}

TEST_CASE("ordering O'' ignores non-guard robots") {
  const Configuration c({{5, 5}, {1, 1}, {2, 3}}, {{0, 0}, {2, 0}, {1, 2}});
  const auto order = ordering_O_doubleprime(c, {5, 5}).ordered;
  CHECK(order.size() == 3);
  CHECK(ordering_O_doubleprime(with_move(c, {2, 3}, {2, 2}), {5, 5}).ordered == order);
  CHECK(ordering_O_doubleprime(with_move(c, {1, 1}, {1, 0}), {5, 5}).ordered == order);
  CHECK_THROWS_AS(ordering_O_doubleprime(c, {1, 1}), Error);
}

TEST_CASE("key corner is equivariant under isometries") {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Configuration c = random_config(rng, 1 + trial % 5, 1 + trial % 3, 7);
    std::optional<KeyCorner> k;
    try {
      k = key_corner(c);
    } catch (const NoUniqueKeyCorner&) {
      continue;
    }
    for (int g = 0; g < 8; ++g) {
      const Node shift{static_cast<Coord>(trial % 13) - 6, static_cast<Coord>(trial % 7) - 3};
      const Configuration img = oracle::transform(c, g, shift);
      const KeyCorner ki = key_corner(img);
      CHECK(ki.corner == oracle::mul(oracle::linear_maps()[g], k->corner) + shift);
      CHECK(ki.repr.symbols == k->repr.symbols);
    }
    ++checked;
  }
  CHECK(checked > 1000);
}
