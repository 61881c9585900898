#include "doctest.h"

#include <stdexcept>

#include <random>

#include "bundle/coding.hpp"

using namespace bundle;

namespace {
const Code kFig = Code::parse("0,0,1,0,0,2,1,1,1,2,1,0");
}

TEST_CASE("code parsing and invariants") {
  CHECK(kFig.height() == 11);
  CHECK(kFig.maxdepth() == 2);
  CHECK(kFig.to_string() == "0,0,1,0,0,2,1,1,1,2,1,0");
  CHECK_THROWS_AS(Code::parse("1,0"), std::invalid_argument);
  CHECK_THROWS_AS(Code::parse("0,1"), std::invalid_argument);
  CHECK_THROWS_AS(Code::parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(Code::parse("0,-1,0"), std::invalid_argument);
  CHECK_THROWS_AS(Code::parse("0,x,0"), std::invalid_argument);
}

TEST_CASE("vertex text form round-trips") {
  Vertex v = Vertex::parse("5:(1,1)");
  CHECK(v.height == 5);
  CHECK(v.address == Address{1, 1});
  CHECK(v.to_string() == "5:(1,1)");
  Vertex empty = Vertex::parse("0:()");
  CHECK(empty.address.empty());
  CHECK(empty.to_string() == "0:()");
  CHECK_THROWS_AS(Vertex::parse("5:[1]"), std::invalid_argument);
  CHECK_THROWS_AS(Vertex::parse("(1,1)"), std::invalid_argument);
}

TEST_CASE("meet takes the longest common prefix") {
  CHECK(meet({1, 1}, {1, 1}) == Address{1, 1});
  CHECK(meet({1, 1}, {0, 1}) == Address{});
  CHECK(meet({1, 1}, {1, 0}) == Address{1});
}

TEST_CASE("meet is idempotent, commutative, and length-bounded") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> len(0, 5), entry(0, 2);
  for (int t = 0; t < 500; ++t) {
    Address a(len(rng)), b(len(rng));
    for (auto& e : a) e = entry(rng);
    for (auto& e : b) e = entry(rng);
    CHECK(meet(a, a) == a);
    CHECK(meet(a, b) == meet(b, a));
    CHECK(meet(a, b).size() <= std::min(a.size(), b.size()));
  }
}

TEST_CASE("prefix stability of the meet") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> len(0, 5), entry(0, 2);
  for (int t = 0; t < 500; ++t) {
    Address a1(len(rng)), b(len(rng));
    for (auto& e : a1) e = entry(rng);
    for (auto& e : b) e = entry(rng);
    Address a2 = a1;
    int extra = len(rng);
    for (int i = 0; i < extra; ++i) a2.push_back(entry(rng));
    if (is_prefix(a1, b)) continue;
    CHECK(meet(a2, b) == meet(a1, b));
  }
}

TEST_CASE("bracket scan on the worked depth word") {
  XYZ a = xyz(kFig, 5, 1);
  CHECK(a.x == 4);
  CHECK(a.y == 11);
  CHECK(a.z == 1);
  XYZ b = xyz(kFig, 5, 2);
  CHECK(b.x == 4);
  CHECK(b.y == 6);
  CHECK(b.z == 1);
  XYZ base = xyz(kFig, 7, 0);
  CHECK(base.x == 0);
  CHECK(base.y == 11);
  CHECK(base.z == 7);
  CHECK_THROWS_AS(xyz(kFig, 12, 1), std::out_of_range);
  CHECK_THROWS_AS(xyz(kFig, -1, 1), std::out_of_range);
}

TEST_CASE("bracket monotonicity and saturation") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(0, 4), entry(0, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> w{0};
    int interior = len(rng);
    for (int i = 0; i < interior; ++i) w.push_back(entry(rng));
    w.push_back(0);
    Code code(w);
    int cap = code.maxdepth() + 1;
    for (int r = 0; r <= code.height(); ++r) {
      for (int i = 1; i <= cap; ++i) {
        CHECK(xyz(code, r, i).x <= xyz(code, r, i + 1).x);
        CHECK(xyz(code, r, i).y >= xyz(code, r, i + 1).y);
      }
      CHECK(xyz(code, r, cap).x == r);
      CHECK(xyz(code, r, cap).y == r);
    }
  }
}

TEST_CASE("comparability relation on the worked example") {
  CHECK(updown(kFig, Vertex::parse("5:(1,1)"), Vertex::parse("9:(1,0)")));
  CHECK_FALSE(updown(kFig, Vertex::parse("5:(1,1)"), Vertex::parse("9:(0,1)")));
  Vertex u = Vertex::parse("5:(1,1)");
  CHECK(updown(kFig, u, u));
}

TEST_CASE("ancestor and descendant heights") {
  auto [n1, m1] = nm(kFig, Vertex::parse("5:(1,1)"), Vertex::parse("9:(0,1)"));
  CHECK(n1 == 4);
  CHECK(m1 == 11);
  Code diamond = Code::parse("0,1,0");
  auto [n2, m2] = nm(diamond, Vertex::parse("1:(0)"), Vertex::parse("1:(1)"));
  CHECK(n2 == 0);
  CHECK(m2 == 2);
  auto [n3, m3] = nm(kFig, Vertex::parse("0:()"), Vertex::parse("11:()"));
  CHECK(n3 == 0);
  CHECK(m3 == 11);
}

TEST_CASE("bracket parameter on small codes") {
  CHECK(p_param(Code::parse("0,1,0"), PwConvention::kPositive) == 1);
  CHECK(p_param(Code::parse("0,0"), PwConvention::kPositive) == 1);
  CHECK(p_param(Code::parse("0,1,0"), PwConvention::kIncludeZero) == 2);
  CHECK(p_param(Code::parse("0,0,1,0,0"), PwConvention::kPositive) == 1);
  CHECK(p_param(Code::parse("0,0,1,0"), PwConvention::kPositive) == 1);
}

TEST_CASE("bracket parameter ordering across conventions") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> len(0, 4), entry(0, 2);
  for (int t = 0; t < 300; ++t) {
    std::vector<int> w{0};
    int interior = len(rng);
    for (int i = 0; i < interior; ++i) w.push_back(entry(rng));
    w.push_back(0);
    Code code(w);
    int positive = p_param(code, PwConvention::kPositive);
    int with_zero = p_param(code, PwConvention::kIncludeZero);
    CHECK(positive <= with_zero);
    CHECK(with_zero <= code.maxdepth() + 1);
  }
}

TEST_CASE("address enumerations") {
  auto lenlex = enumerate_addresses(2, 2);
  REQUIRE(lenlex.size() == 7);
  CHECK(lenlex[0] == Address{});
  CHECK(lenlex[1] == Address{0});
  CHECK(lenlex[2] == Address{1});
  CHECK(lenlex[3] == Address{0, 0});
  auto preorder = enumerate_addresses_preorder(2, 2);
  REQUIRE(preorder.size() == 7);
  CHECK(preorder[0] == Address{});
  CHECK(preorder[1] == Address{0});
  CHECK(preorder[2] == Address{0, 0});
  CHECK(preorder[3] == Address{0, 1});
  CHECK(preorder[4] == Address{1});
  CHECK(enumeration_weight(Address{1, 0, 2}) == 6);
}
