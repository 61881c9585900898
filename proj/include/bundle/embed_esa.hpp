#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bundle/coding.hpp"
#include "bundle/rational.hpp"

namespace bundle {

// Finitely supported integer-coefficient vector over basis positions,
// with a scalar normalizer kept separate. The norm is the largest
// absolute prefix sum (summing basis), times the normalizer.
struct SummingVector {
  std::vector<std::pair<long long, long long>> entries;  // (position, coeff), sorted
  Rat normalizer = Rat(1);
};

Rat summing_norm(const SummingVector& v);

// Norm of (a - b); normalizers must agree.
Rat summing_dist(const SummingVector& a, const SummingVector& b);

// Randomized check of the equal-signs-additive / subadditive / spreading
// properties of the summing norm. Returns true when all trials pass;
// otherwise fills *counterexample.
bool check_esa_axioms(int trials, unsigned long long seed,
                      std::string* counterexample = nullptr);

// The explicit Bernoulli family over {1..2^mu}: Y_i(j) = 1 iff
// j mod 2^{mu-(i-1)} lands in 1..2^{mu-i}. Each Y_i has exactly half the
// points, and distinct indices are fully independent.
class BernoulliFamily {
 public:
  explicit BernoulliFamily(int mu);
  int mu() const { return mu_; }
  long long points() const { return 1LL << mu_; }
  bool value(int i, long long j) const;  // i in 1..mu, j in 1..2^mu

 private:
  int mu_;
};

struct EsaOptions {
  PwConvention convention = PwConvention::kPositive;
  int mu_cap = 20;
  std::uint64_t length_cap = 10000000;  // 2^{mu+1} (M+1) must stay below
  std::uint64_t vertex_limit = 1000000;
};

// The embedding of T_{W,kappa} into the summing-basis space: every
// vertex gets, per block j, a set of r positions placed forward in
// I_{2j-1} and mirrored in I_{2j}, selected by the Bernoulli variables
// of its address prefixes.
class EsaEmbedding {
 public:
  EsaEmbedding(const Code& code, int kappa, const EsaOptions& opts = {});

  const Code& code() const { return code_; }
  int kappa() const { return kappa_; }
  int mu() const { return family_.mu(); }
  long long block_count() const { return family_.points(); }
  int p_w() const { return p_w_; }
  Rat eta() const { return eta_; }
  const BernoulliFamily& family() const { return family_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  int index_of(const Vertex& v) const;
  int node_index(const Address& a) const;  // Bernoulli index of a node

  SummingVector psi(const Vertex& v) const;
  Rat dist(const Vertex& u, const Vertex& v) const;

  // Relative selection runs (positions 1..M+1 within a block); lo > hi
  // encodes the empty run.
  struct Run {
    int lo = 1, hi = 0;
    int size() const { return hi >= lo ? hi - lo + 1 : 0; }
  };
  Run sx_run(int vertex_index, long long j, int level) const;
  Run sy_run(int vertex_index, long long j, int level) const;

  // Cardinality, disjointness, placement and contiguity identities of
  // the per-block recursion, checked for every vertex, block and level.
  std::vector<std::string> check_level_identities() const;

  // Index family + greedy count check used by the lower-bound argument;
  // requires an incomparable pair.
  bool separation_check(const Vertex& u, const Vertex& v,
                        std::string* diagnostic = nullptr) const;

 private:
  Code code_;
  int kappa_;
  EsaOptions opts_;
  BernoulliFamily family_{1};
  int p_w_ = 1;
  Rat eta_ = Rat(1);
  std::vector<Vertex> vertices_;
  std::map<Address, int> node_index_;
  // runs_[vi][j-1][level] -> (x run, y run)
  std::vector<std::vector<std::vector<std::pair<Run, Run>>>> runs_;
  std::vector<SummingVector> psis_;
};

EsaEmbedding build_esa(const Code& code, int kappa, const EsaOptions& opts = {});

}  // namespace bundle
