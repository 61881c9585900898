#include "doctest.h"

#include <stdexcept>

#include <random>

#include "bundle/embed_linf.hpp"
#include "bundle/graph.hpp"

using namespace bundle;

namespace {
const Code kFig = Code::parse("0,0,1,0,0,2,1,1,1,2,1,0");
}

TEST_CASE("coefficient maps of embedded vertices") {
  Code diamond = Code::parse("0,1,0");
  NodeCoefficients mid = psi_linf(diamond, Vertex::parse("1:(0)"));
  CHECK(mid.at({}) == 1);
  CHECK(mid.at({0}) == 1);
  CHECK(mid.at({1}) == 0);

  NodeCoefficients bottom = psi_linf(diamond, Vertex::parse("0:()"));
  CHECK(norm_linf(bottom) == 0);

  NodeCoefficients fig = psi_linf(kFig, Vertex::parse("5:(1,1)"));
  CHECK(fig.at({}) == 5);
  CHECK(fig.at({1}) == 1);
  CHECK(fig.at({1, 1}) == 1);
  CHECK(fig.coeff.size() == 3);
}

TEST_CASE("max-coefficient distance") {
  Code diamond = Code::parse("0,1,0");
  auto a = psi_linf(diamond, Vertex::parse("1:(0)"));
  auto b = psi_linf(diamond, Vertex::parse("1:(1)"));
  CHECK(dist_linf(a, b) == 1);
  auto bottom = psi_linf(diamond, Vertex::parse("0:()"));
  auto top = psi_linf(diamond, Vertex::parse("2:()"));
  CHECK(dist_linf(bottom, top) == 2);
  CHECK(dist_linf(a, a) == 0);
}

TEST_CASE("embedding bounds on small graphs") {
  for (const char* text : {"0,1,0", "0,0,1,0,0", "0,2,0", "0,1,2,1,0", "0,1,1,0"}) {
    Code code = Code::parse(text);
    BundleGraph g(code, 2);
    std::vector<NodeCoefficients> images;
    for (const Vertex& v : g.vertices()) images.push_back(psi_linf(code, v));
    for (int i = 0; i < g.vertex_count(); ++i)
      for (int j = i + 1; j < g.vertex_count(); ++j) {
        const Vertex& u = g.vertices()[i];
        const Vertex& v = g.vertices()[j];
        long long e = dist_linf(images[i], images[j]);
        int d = dist_formula(code, u, v);
        CHECK(e <= d);
        CHECK(6 * e >= d);
        CHECK(3 * e >= d);  // the bimonotone refinement
        if (updown(code, u, v)) CHECK(e == d);
      }
  }
}

TEST_CASE("branch combinations behave like a max norm") {
  // Coefficients along any root-to-leaf branch combine with norm equal to
  // the largest absolute coefficient, and truncating the coefficient list
  // in enumeration order never increases the norm.
  std::mt19937 rng(23);
  std::uniform_int_distribution<long long> coeff(-9, 9);
  auto nodes = enumerate_addresses(2, 3);
  for (int t = 0; t < 300; ++t) {
    Address leaf;
    for (int i = 0; i < 3; ++i) leaf.push_back((int)(rng() % 2));
    NodeCoefficients combo;
    long long biggest = 0;
    for (int len = 0; len <= 3; ++len) {
      long long c = coeff(rng);
      combo.coeff[restrict(leaf, len)] = c;
      biggest = std::max(biggest, std::llabs(c));
    }
    CHECK(norm_linf(combo) == biggest);
    // Prefix truncation in enumeration order.
    NodeCoefficients partial;
    for (const Address& node : nodes) {
      auto it = combo.coeff.find(node);
      if (it != combo.coeff.end()) partial.coeff[node] = it->second;
      CHECK(norm_linf(partial) <= norm_linf(combo));
    }
  }
}
