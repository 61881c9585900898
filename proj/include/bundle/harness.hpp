#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bundle/coding.hpp"
#include "bundle/embed_esa.hpp"
#include "bundle/embed_l1.hpp"
#include "bundle/rational.hpp"

#include "json.hpp"

namespace bundle {

// Deterministic enumeration of codes: every depth word with height at
// most max_height and entries at most max_depth, ordered by length then
// lexicographically.
struct Corpus {
  int max_height = 4;
  int max_depth = 1;
  std::vector<int> kappas;
  std::vector<Code> codes;

  static Corpus generate(int max_height, int max_depth, std::vector<int> kappas);
};

enum class EmbeddingKind { kLinf, kL1, kEsa };

std::string embedding_name(EmbeddingKind kind);
EmbeddingKind parse_embedding(const std::string& name);

struct PairPolicy {
  bool all = true;
  long long sample_count = 0;
  unsigned long long seed = 0;

  static PairPolicy all_pairs() { return {}; }
  static PairPolicy sample(long long n, unsigned long long seed);
  static PairPolicy parse(const std::string& text);  // "all" | "sample:N:SEED"
  std::string to_string() const;
};

struct EvalOptions {
  L1Options l1;
  EsaOptions esa;
  std::uint64_t vertex_limit = 1000000;
};

struct DistortionReport {
  std::string code;
  int kappa = 2;
  std::string embedding;
  std::string pairs;
  long long pair_count = 0;
  long long vertices = 0;
  Rat c1, c2, distortion, bound;
  bool comparable_equality = false;
  bool pass = false;
  std::map<std::string, std::string> extras;
  double seconds = 0;  // run metadata only; excluded from determinism

  nlohmann::json to_json() const;
  static DistortionReport from_json(const nlohmann::json& j);
  std::string csv_row(int family_index = 1) const;
  static std::string csv_header();

  bool operator==(const DistortionReport& o) const;
};

// Builds the requested embedding, evaluates vertex pairs with exact
// arithmetic, and compares the Lipschitz constants against the theorem
// bound (6 for linf with the stronger 3 recorded separately, 2 for l1,
// 2^{2 p_W + 1} for esa).
DistortionReport evaluate(EmbeddingKind kind, const Code& code, int kappa,
                          const PairPolicy& policy, const EvalOptions& opts = {});

struct SuiteResult {
  std::string name;
  long long cases = 0;
  bool vacuous = false;
  bool pass = true;
  std::string first_failure;
};

// Suites: metric_oracle, lemma_l1, lemma_esa, products, bounds.
std::vector<SuiteResult> run_suite(const Corpus& corpus,
                                   const std::set<std::string>& suites,
                                   const EvalOptions& opts = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace bundle
