#include "doctest.h"

#include <stdexcept>

#include "bundle/products.hpp"

using namespace bundle;

TEST_CASE("single-level composition of codes") {
  CHECK(oslash_n(Code::parse("0,1,0"), Code::parse("0,1,0"), 0) == Code::parse("0,2,1,0"));
  CHECK(oslash_n(Code::parse("0,1,0"), Code::parse("0,0"), 0) == Code::parse("0,1,0"));
  CHECK(oslash_n(Code::parse("0,0"), Code::parse("0,1,0"), 0) == Code::parse("0,1,0"));
  CHECK(oslash_n(Code::parse("0,1,0"), Code::parse("0,1,0"), 1) == Code::parse("0,1,2,0"));
  CHECK_THROWS_AS(oslash_n(Code::parse("0,1,0"), Code::parse("0,0"), 2),
                  std::out_of_range);
}

TEST_CASE("full composition of codes") {
  CHECK(oslash(Code::parse("0,1,0"), Code::parse("0,1,0")) == Code::parse("0,2,1,2,0"));
  CHECK(oslash(Code::parse("0,0"), Code::parse("0,0,1,0,0")) == Code::parse("0,0,1,0,0"));
  CHECK(oslash(Code::parse("0,1,0"), Code::parse("0,0")) == Code::parse("0,1,0"));
}

TEST_CASE("iterated family codes") {
  CHECK(family_code(Code::parse("0,1,0"), 1) == Code::parse("0,1,0"));
  CHECK(family_code(Code::parse("0,1,0"), 2) == Code::parse("0,2,1,2,0"));
  CHECK(family_code(Code::parse("0,0,1,0"), 2).height() + 1 ==
        Code::parse("0,0,1,0").height() * Code::parse("0,0,1,0").height() + 1);
  CHECK(family_code(Code::parse("0,0,1,0"), 2).depths().size() == 10);
  CHECK_THROWS_AS(family_code(Code::parse("0,1,0"), 30), SizeGuardError);
}

TEST_CASE("vertex map of the single-level product") {
  Code diamond = Code::parse("0,1,0");
  CompositeVertex top{true, Vertex::parse("2:()"), {}, {}, {}};
  CHECK(isomorphism_F(diamond, diamond, 0, top) == Vertex::parse("3:()"));
  CompositeVertex bottom{true, Vertex::parse("0:()"), {}, {}, {}};
  CHECK(isomorphism_F(diamond, diamond, 0, bottom) == Vertex::parse("0:()"));
  CompositeVertex interior{false, {}, Vertex::parse("0:()"), Vertex::parse("1:(1)"),
                           Vertex::parse("1:(0)")};
  CHECK(isomorphism_F(diamond, diamond, 0, interior) == Vertex::parse("1:(1,0)"));
  CompositeVertex bad{false, {}, Vertex::parse("0:()"), Vertex::parse("1:(1)"),
                      Vertex::parse("0:()")};
  CHECK_THROWS_AS(isomorphism_F(diamond, diamond, 0, bad), std::invalid_argument);
}

TEST_CASE("edge replacement is carried onto the composed code") {
  std::string diag;
  for (const char* base : {"0,1,0", "0,0,1,0,0", "0,0,1,0"}) {
    Code code = Code::parse(base);
    for (int n = 0; n < code.height(); ++n)
      CHECK_MESSAGE(verify_oslash_n(code, code, n, 2, &diag),
                    base << " n=" << n << ": " << diag);
    CHECK_MESSAGE(verify_oslash(code, code, 2, &diag), base << ": " << diag);
  }
  CHECK(verify_oslash(Code::parse("0,1,0"), Code::parse("0,0,1,0,0"), 2, &diag));
  CHECK(verify_oslash(Code::parse("0,2,0"), Code::parse("0,1,0"), 3, &diag));
}

TEST_CASE("bracket formulas of composed codes") {
  CHECK(check_composed_xy(Code::parse("0,1,0"), Code::parse("0,1,0")));
  CHECK(check_composed_xy(Code::parse("0,0"), Code::parse("0,0,1,0,0")));
  CHECK(check_composed_xy(Code::parse("0,2,1,0"), Code::parse("0,1,1,0")));
  CHECK(check_composed_xy(Code::parse("0,0,1,0"), Code::parse("0,2,0")));
}

TEST_CASE("bracket parameter under composition") {
  std::vector<Code> codes = {Code::parse("0,1,0"), Code::parse("0,0,1,0,0"),
                             Code::parse("0,0,1,0"), Code::parse("0,2,0"),
                             Code::parse("0,1,2,1,0")};
  for (const Code& w : codes)
    for (const Code& wp : codes) {
      int composed = p_param(oslash(w, wp), PwConvention::kPositive);
      CHECK(composed <= std::max(p_param(w, PwConvention::kPositive),
                                 p_param(wp, PwConvention::kPositive)));
    }
  // Including the i = 0 bracket makes the no-growth inequality false:
  // every height of the composed word must then reach the global midline
  // within p levels, which composition can genuinely worsen.
  Code parasol = Code::parse("0,0,1,0"), diamond = Code::parse("0,1,0");
  CHECK(p_param(parasol, PwConvention::kIncludeZero) == 2);
  CHECK(p_param(diamond, PwConvention::kIncludeZero) == 2);
  CHECK(p_param(oslash(parasol, diamond), PwConvention::kIncludeZero) == 3);
}
