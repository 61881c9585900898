#include "doctest.h"

#include <stdexcept>

#include "bundle/embed_l1.hpp"
#include "bundle/graph.hpp"

using namespace bundle;

namespace {
const Code kFig = Code::parse("0,0,1,0,0,2,1,1,1,2,1,0");
}

TEST_CASE("subdivision map basics") {
  ScaleRegistry registry(ScaleMode::kSeparated, 2);
  IntervalSet base = IntervalSet::unit_cells(0, 2);
  registry.register_set(base);
  CHECK(f_select(0, base, 0, registry).empty());
  IntervalSet full = f_select(0, base, 2, registry);
  CHECK(full.measure() == base.measure());
  IntervalSet half = f_select(1, base, 1, registry);
  CHECK(half.measure() == Rat(1));
  // Nesting in the selection count for a fixed pair.
  CHECK(intersect_measure(half, full) == half.measure());
  CHECK_THROWS_AS(f_select(0, base, 3, registry), std::invalid_argument);
  CHECK_THROWS_AS(f_select(0, IntervalSet::unit_cells(0, 5), 1, registry),
                  std::invalid_argument);
}

TEST_CASE("proportional selection against coarser sets") {
  ScaleRegistry registry(ScaleMode::kSeparated, 2);
  IntervalSet base = IntervalSet::unit_cells(0, 2);
  registry.register_set(base);
  IntervalSet fine = f_select(2, base, 1, registry);
  int nf = registry.register_set(fine);
  IntervalSet finer = f_select(3, fine, 1, registry);
  CHECK(finer.measure() == Rat(1, 2));
  CHECK(intersect_measure(base, finer) == finer.measure());
  (void)nf;
}

TEST_CASE("diamond embedding measures") {
  L1Embedding emb(Code::parse("0,1,0"), 2);
  CHECK(emb.grid_base() == 2);
  CHECK(emb.violations().empty());
  CHECK(emb.vertex_measure(Vertex::parse("1:(0)")) == Rat(1));
  CHECK(emb.vertex_measure(Vertex::parse("1:(1)")) == Rat(1));
  CHECK(emb.vertex_measure(Vertex::parse("0:()")) == Rat(0));
  CHECK(emb.intersection_measure(Vertex::parse("1:(0)"), Vertex::parse("1:(1)")) ==
        Rat(1, 2));
  CHECK(emb.dist(Vertex::parse("1:(0)"), Vertex::parse("1:(1)")) == Rat(1));
  CHECK(emb.dist(Vertex::parse("0:()"), Vertex::parse("2:()")) == Rat(2));
  CHECK(emb.vertex_set(Vertex::parse("0:()")).empty());
}

TEST_CASE("worked example distance comes out exactly") {
  L1Embedding emb(kFig, 2);
  CHECK(emb.violations().empty());
  Vertex u = Vertex::parse("5:(1,1)"), v = Vertex::parse("9:(0,1)");
  CHECK(emb.intersection_measure(u, v) == Rat(33, 7));
  CHECK(emb.dist(u, v) == Rat(32, 7));
  // Comparable pairs embed isometrically.
  Vertex w = Vertex::parse("9:(1,0)");
  CHECK(emb.dist(u, w) == Rat(4));
}

TEST_CASE("intersection formula holds across small codes") {
  for (const char* text : {"0,1,0", "0,0,1,0,0", "0,2,0", "0,1,2,1,0", "0,1,1,0",
                           "0,2,1,2,0", "0,1,2,2,1,0"}) {
    Code code = Code::parse(text);
    L1Embedding emb(code, 2);
    REQUIRE_MESSAGE(emb.violations().empty(), text << ": " << emb.violations().front());
    const auto& verts = emb.vertices();
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j) {
        const Vertex& u = verts[i];
        const Vertex& v = verts[j];
        Rat lam = emb.intersection_measure(u, v);
        Rat expected;
        if (updown(code, u, v)) {
          expected = Rat(std::min(u.height, v.height));
        } else {
          auto [n, m] = nm(code, u, v);
          expected =
              Rat(n) + Rat((long long)(u.height - n) * (v.height - n), m - n);
        }
        REQUIRE_MESSAGE(lam == expected,
                        text << " " << u.to_string() << " " << v.to_string()
                             << " got " << lam.to_string());
        Rat dist = emb.dist(u, v);
        Rat d((long long)dist_formula(code, u, v));
        CHECK(dist <= d);
        CHECK(Rat(2) * dist >= d);
        if (updown(code, u, v)) CHECK(dist == d);
      }
    CHECK(emb.check_selection_proportionality().empty());
  }
}

TEST_CASE("paper-exact scales reproduce the separated distances on the diamond") {
  Code diamond = Code::parse("0,1,0");
  L1Options exact;
  exact.scale_mode = ScaleMode::kPaperExact;
  L1Embedding a(diamond, 2), b(diamond, 2, exact);
  CHECK(b.violations().empty());
  const auto& verts = a.vertices();
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      CHECK(a.dist(verts[i], verts[j]) == b.dist(verts[i], verts[j]));
}

TEST_CASE("spec grid base is selectable and distances are base-independent") {
  Code code = Code::parse("0,1,2,1,0");
  L1Options spec_base;
  spec_base.spec_grid_base = true;
  L1Embedding a(code, 2), b(code, 2, spec_base);
  CHECK(a.grid_base() == 4);   // realized bracket widths are 4 and 2
  CHECK(b.grid_base() == 12);  // lcm(1..4)
  const auto& verts = a.vertices();
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      CHECK(a.dist(verts[i], verts[j]) == b.dist(verts[i], verts[j]));
}

TEST_CASE("interval dump of an embedded vertex") {
  L1Embedding emb(Code::parse("0,1,0"), 2);
  IntervalSet mid = emb.vertex_set(Vertex::parse("1:(0)"));
  CHECK(mid.measure() == Rat(1));
  for (const Interval& iv : mid.intervals()) {
    CHECK(iv.lo >= Rat(0));
    CHECK(iv.hi <= Rat(2));
  }
}
