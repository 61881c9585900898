#include "doctest.h"

#include <stdexcept>

#include "bundle/harness.hpp"

using namespace bundle;

TEST_CASE("corpus enumeration is deterministic and complete") {
  Corpus corpus = Corpus::generate(2, 1, {2});
  REQUIRE(corpus.codes.size() == 3);
  CHECK(corpus.codes[0] == Code::parse("0,0"));
  CHECK(corpus.codes[1] == Code::parse("0,0,0"));
  CHECK(corpus.codes[2] == Code::parse("0,1,0"));
  Corpus bigger = Corpus::generate(3, 2, {2});
  CHECK(bigger.codes.size() == 1 + 3 + 9);
}

TEST_CASE("pair policies parse and print") {
  CHECK(PairPolicy::parse("all").all);
  PairPolicy s = PairPolicy::parse("sample:10:42");
  CHECK_FALSE(s.all);
  CHECK(s.sample_count == 10);
  CHECK(s.seed == 42);
  CHECK(s.to_string() == "sample:10:42");
  CHECK_THROWS_AS(PairPolicy::parse("most"), std::invalid_argument);
}

TEST_CASE("diamond distortion reports") {
  Code diamond = Code::parse("0,1,0");
  DistortionReport l1 =
      evaluate(EmbeddingKind::kL1, diamond, 2, PairPolicy::all_pairs());
  CHECK(l1.distortion == Rat(2));
  CHECK(l1.bound == Rat(2));
  CHECK(l1.pass);
  CHECK(l1.comparable_equality);
  CHECK(l1.pair_count == 6);

  DistortionReport linf =
      evaluate(EmbeddingKind::kLinf, diamond, 2, PairPolicy::all_pairs());
  CHECK(linf.distortion == Rat(2));
  CHECK(linf.bound == Rat(6));
  CHECK(linf.pass);
  CHECK(linf.extras.at("strong_bound_holds") == "true");

  DistortionReport esa =
      evaluate(EmbeddingKind::kEsa, diamond, 2, PairPolicy::all_pairs());
  CHECK(esa.bound == Rat(8));
  CHECK(esa.pass);

  DistortionReport edge =
      evaluate(EmbeddingKind::kL1, Code::parse("0,0"), 2, PairPolicy::all_pairs());
  CHECK(edge.distortion == Rat(1));
}

TEST_CASE("report json round-trips and stays deterministic") {
  Code diamond = Code::parse("0,1,0");
  DistortionReport a =
      evaluate(EmbeddingKind::kL1, diamond, 2, PairPolicy::all_pairs());
  DistortionReport b =
      evaluate(EmbeddingKind::kL1, diamond, 2, PairPolicy::all_pairs());
  CHECK(a == b);
  auto ja = a.to_json(), jb = b.to_json();
  ja.erase("meta");
  jb.erase("meta");
  CHECK(ja.dump() == jb.dump());
  DistortionReport back = DistortionReport::from_json(a.to_json());
  CHECK(back == a);
  CHECK(a.csv_row(3).rfind("\"0,1,0\",2,3,l1,2,2,4,", 0) == 0);
}

TEST_CASE("sampled pair policies are reproducible") {
  Code code = Code::parse("0,1,1,0");
  DistortionReport a =
      evaluate(EmbeddingKind::kLinf, code, 2, PairPolicy::sample(5, 99));
  DistortionReport b =
      evaluate(EmbeddingKind::kLinf, code, 2, PairPolicy::sample(5, 99));
  CHECK(a == b);
  CHECK(a.pair_count == 5);
}

TEST_CASE("suite runner aggregates and flags vacuous runs") {
  Corpus empty;
  empty.kappas = {2};
  auto results = run_suite(empty, {"metric_oracle"});
  REQUIRE(results.size() == 1);
  CHECK(results[0].vacuous);
  CHECK(results[0].pass);

  Corpus mini = Corpus::generate(3, 1, {2});
  auto oracle = run_suite(mini, {"metric_oracle"});
  CHECK(all_passed(oracle));
  CHECK(oracle[0].cases > 0);

  auto l1 = run_suite(Corpus::generate(3, 1, {2}), {"lemma_l1"});
  CHECK(all_passed(l1));
  CHECK_THROWS_AS(run_suite(mini, {"nonsense"}), std::invalid_argument);
}
