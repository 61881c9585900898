#include "doctest.h"

#include <stdexcept>

#include "bundle/graph.hpp"

using namespace bundle;

namespace {
const Code kFig = Code::parse("0,0,1,0,0,2,1,1,1,2,1,0");
}

TEST_CASE("diamond materializes to four vertices and four edges") {
  BundleGraph g(Code::parse("0,1,0"), 2);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);
  CHECK(g.bottom().to_string() == "0:()");
  CHECK(g.top().to_string() == "2:()");
}

TEST_CASE("worked depth word materializes to the drawn graph") {
  BundleGraph g(kFig, 2);
  CHECK(g.vertex_count() == 23);
  CHECK(g.edge_count() == 28);
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j : g.adjacency()[i]) {
      const Vertex& u = g.vertices()[i];
      const Vertex& v = g.vertices()[j];
      CHECK(std::abs(u.height - v.height) == 1);
      CHECK((is_prefix(u.address, v.address) || is_prefix(v.address, u.address)));
    }
}

TEST_CASE("size guard rejects oversized graphs") {
  CHECK_THROWS_AS(BundleGraph(Code::parse("0,9,0"), 10, 1000), SizeGuardError);
  CHECK(vertex_count_of(Code::parse("0,1,0"), 2, 100) == 4);
}

TEST_CASE("closed-form distance matches the worked examples") {
  CHECK(dist_formula(kFig, Vertex::parse("5:(1,1)"), Vertex::parse("9:(1,0)")) == 4);
  CHECK(dist_formula(kFig, Vertex::parse("5:(1,1)"), Vertex::parse("9:(0,1)")) == 6);
  CHECK(dist_formula(kFig, Vertex::parse("2:(0)"), Vertex::parse("2:(1)")) == 2);
}

TEST_CASE("breadth-first search oracle") {
  BundleGraph diamond(Code::parse("0,1,0"), 2);
  CHECK(dist_bfs(diamond, Vertex::parse("0:()"), Vertex::parse("2:()")) == 2);
  BundleGraph g(kFig, 2);
  CHECK(dist_bfs(g, Vertex::parse("5:(1,1)"), Vertex::parse("9:(0,1)")) == 6);
  CHECK(dist_bfs(g, Vertex::parse("5:(1,1)"), Vertex::parse("5:(1,1)")) == 0);
  CHECK_THROWS_AS(dist_bfs(g, Vertex::parse("5:(1,1)"), Vertex::parse("5:(7,7)")),
                  std::invalid_argument);
}

TEST_CASE("formula equals breadth-first search on a small corpus") {
  for (const char* text : {"0,0", "0,1,0", "0,0,1,0", "0,1,1,0", "0,2,0", "0,1,2,1,0",
                           "0,0,1,0,0", "0,1,0,1,0", "0,2,1,2,0"}) {
    Code code = Code::parse(text);
    for (int kappa : {2, 3}) {
      BundleGraph g(code, kappa);
      for (int i = 0; i < g.vertex_count(); ++i)
        for (int j = i + 1; j < g.vertex_count(); ++j) {
          int formula = dist_formula(code, g.vertices()[i], g.vertices()[j]);
          int bfs = dist_bfs(g, g.vertices()[i], g.vertices()[j]);
          REQUIRE_MESSAGE(formula == bfs, text << " kappa=" << kappa << " "
                                               << g.vertices()[i].to_string() << " "
                                               << g.vertices()[j].to_string());
        }
    }
  }
}

TEST_CASE("recursive construction produces labelled graphs") {
  LabelledGraph single = build_recursive(BuildScript::init());
  CHECK(single.vertices.size() == 2);
  CHECK(single.derive_code() == Code::parse("0,0"));

  LabelledGraph path =
      build_recursive(BuildScript::parallel(BuildScript::init(), BuildScript::init()));
  CHECK(path.vertices.size() == 3);
  CHECK(path.derive_code() == Code::parse("0,0,0"));

  LabelledGraph diamond = build_recursive(
      BuildScript::series(BuildScript::parallel(BuildScript::init(), BuildScript::init()), 2));
  CHECK(diamond.vertices.size() == 4);
  CHECK(diamond.derive_code() == Code::parse("0,1,0"));
}

TEST_CASE("code round-trip of recursive constructions") {
  std::string diag;
  CHECK(verify_code_roundtrip(BuildScript::init(), &diag));
  BuildScript diamond =
      BuildScript::series(BuildScript::parallel(BuildScript::init(), BuildScript::init()), 2);
  CHECK(verify_code_roundtrip(diamond, &diag));

  // Diamond with an edge stacked on top, then doubled.
  BuildScript nested = BuildScript::series(
      BuildScript::parallel(
          BuildScript::series(
              BuildScript::parallel(BuildScript::init(), BuildScript::init()), 2),
          BuildScript::init()),
      2);
  LabelledGraph built = build_recursive(nested);
  CHECK(built.derive_code() == Code::parse("0,2,1,0"));
  CHECK(verify_code_roundtrip(nested, &diag));

  // Edge, doubled middle, edge: the smallest bottleneck ladder.
  BuildScript ladder = BuildScript::parallel(
      BuildScript::parallel(
          BuildScript::init(),
          BuildScript::series(
              BuildScript::parallel(BuildScript::init(), BuildScript::init()), 2)),
      BuildScript::init());
  LabelledGraph ladder_built = build_recursive(ladder);
  CHECK(ladder_built.derive_code() == Code::parse("0,0,1,0,0"));
  CHECK(verify_code_roundtrip(ladder, &diag));

  CHECK_THROWS_AS(
      verify_code_roundtrip(
          BuildScript::parallel(
              BuildScript::series(BuildScript::parallel(BuildScript::init(),
                                                        BuildScript::init()),
                                  2),
              BuildScript::series(BuildScript::parallel(BuildScript::init(),
                                                        BuildScript::init()),
                                  3)),
          &diag),
      std::invalid_argument);
}

TEST_CASE("binary tree of height three sits isometrically in its double") {
  Code code = Code::parse("0,1,2,3,2,1,0");
  BundleGraph g(code, 2);
  std::vector<Vertex> lower;
  for (const Vertex& v : g.vertices())
    if (v.height <= 3 && (int)v.address.size() == v.height) lower.push_back(v);
  REQUIRE(lower.size() == 15);  // binary tree with 4 levels
  for (const Vertex& u : lower)
    for (const Vertex& v : lower) {
      int tree_dist =
          (int)u.address.size() + (int)v.address.size() -
          2 * (int)meet(u.address, v.address).size();
      CHECK(dist_formula(code, u, v) == tree_dist);
    }
}

TEST_CASE("graph dump uses the line format") {
  BundleGraph g(Code::parse("0,1,0"), 2);
  std::string dump = g.dump();
  CHECK(dump.find("0:()\n") != std::string::npos);
  CHECK(dump.find("1:(0)\n") != std::string::npos);
  CHECK(dump.find("0:() -- 1:(0)\n") != std::string::npos);
}
