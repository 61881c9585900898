#include "doctest.h"

#include <stdexcept>

#include "bundle/embed_esa.hpp"
#include "bundle/graph.hpp"

using namespace bundle;

TEST_CASE("summing norm of small vectors") {
  SummingVector a;
  a.entries = {{1, 1}, {2, -1}};
  CHECK(summing_norm(a) == Rat(1));
  SummingVector b;
  b.entries = {{1, 1}, {2, 1}};
  CHECK(summing_norm(b) == Rat(2));
  SummingVector alternating;
  for (long long j = 1; j <= 256; ++j) {
    alternating.entries.push_back({2 * j - 1, 1});
    alternating.entries.push_back({2 * j, -1});
  }
  CHECK(summing_norm(alternating) == Rat(1));
}

TEST_CASE("norm axioms hold on random vectors") {
  std::string counterexample;
  CHECK_MESSAGE(check_esa_axioms(2000, 12345, &counterexample), counterexample);
}

TEST_CASE("selector family is balanced and independent") {
  BernoulliFamily fam(4);
  for (int i = 1; i <= 4; ++i) {
    long long ones = 0;
    for (long long j = 1; j <= fam.points(); ++j) ones += fam.value(i, j);
    CHECK(ones == fam.points() / 2);
  }
  for (int i1 = 1; i1 <= 4; ++i1)
    for (int i2 = i1 + 1; i2 <= 4; ++i2) {
      long long both = 0;
      for (long long j = 1; j <= fam.points(); ++j)
        both += fam.value(i1, j) && fam.value(i2, j);
      CHECK(both == fam.points() / 4);
    }
}

TEST_CASE("diamond embedding blocks") {
  Code diamond = Code::parse("0,1,0");
  EsaEmbedding emb(diamond, 2);
  CHECK(emb.mu() == 3);
  CHECK(emb.block_count() == 8);
  CHECK(emb.p_w() == 1);
  CHECK(emb.eta() == Rat(1));

  int mid0 = emb.index_of(Vertex::parse("1:(0)"));
  int node0 = emb.node_index(Address{0});
  for (long long j = 1; j <= emb.block_count(); ++j) {
    auto run = emb.sx_run(mid0, j, 1);
    REQUIRE(run.size() == 1);
    bool heads = emb.family().value(node0, j);
    CHECK(run.lo == (heads ? 1 : 2));
  }
  // Bottom has empty blocks, top gets the full block.
  int bottom = emb.index_of(Vertex::parse("0:()"));
  CHECK(emb.sx_run(bottom, 1, 0).size() == 0);
  int top = emb.index_of(Vertex::parse("2:()"));
  CHECK(emb.sx_run(top, 1, 0).size() == 2);
}

TEST_CASE("diamond embedded distances") {
  Code diamond = Code::parse("0,1,0");
  EsaEmbedding emb(diamond, 2);
  Vertex bottom = Vertex::parse("0:()"), top = Vertex::parse("2:()");
  Vertex a = Vertex::parse("1:(0)"), b = Vertex::parse("1:(1)");
  CHECK(emb.psi(bottom).entries.empty());
  CHECK(emb.dist(bottom, top) == Rat(2));
  CHECK(emb.dist(a, b) == Rat(1));
  CHECK(emb.dist(bottom, a) == Rat(1));
  // Lower bound d / 2^{2 p_W + 1} = 2/8.
  CHECK(emb.dist(a, b) >= Rat(1, 4) * Rat(2));
}

TEST_CASE("separation families on incomparable pairs") {
  Code diamond = Code::parse("0,1,0");
  EsaEmbedding emb(diamond, 2);
  std::string diag;
  CHECK_MESSAGE(emb.separation_check(Vertex::parse("1:(0)"), Vertex::parse("1:(1)"), &diag),
                diag);
  CHECK_FALSE(emb.separation_check(Vertex::parse("0:()"), Vertex::parse("2:()"), &diag));

  Code wide = Code::parse("0,2,0");
  EsaEmbedding emb2(wide, 2);
  CHECK_MESSAGE(
      emb2.separation_check(Vertex::parse("1:(0,0)"), Vertex::parse("1:(1,1)"), &diag),
      diag);
}

TEST_CASE("level identities and bounds across small codes") {
  for (const char* text : {"0,1,0", "0,0,1,0,0", "0,2,0", "0,1,2,1,0", "0,1,1,0"}) {
    Code code = Code::parse(text);
    EsaEmbedding emb(code, 2);
    auto failures = emb.check_level_identities();
    REQUIRE_MESSAGE(failures.empty(), text << ": " << failures.front());
    long long bound = 1;
    for (int i = 0; i < 2 * emb.p_w() + 1; ++i) bound *= 2;
    const auto& verts = emb.vertices();
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j) {
        Rat e = emb.dist(verts[i], verts[j]);
        Rat d((long long)dist_formula(code, verts[i], verts[j]));
        CHECK(e <= d);
        CHECK(e * Rat(bound) >= d);
        if (updown(code, verts[i], verts[j])) CHECK(e == d);
      }
  }
}

TEST_CASE("size guards reject deep node sets") {
  EsaOptions opts;
  opts.mu_cap = 4;
  CHECK_THROWS_AS(EsaEmbedding(Code::parse("0,1,2,1,0"), 2, opts), SizeGuardError);
}
