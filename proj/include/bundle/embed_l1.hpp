#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bundle/coding.hpp"
#include "bundle/graph.hpp"
#include "bundle/interval_set.hpp"

namespace bundle {

// Scale policy for the subdivision function. kPaperExact uses
// theta(i,j) = 2^i 3^j - N(P_j), which is only feasible at diamond scale;
// kSeparated assigns subdivision depths from the address tree so that
// any two selection chains that ever get intersected occupy disjoint
// depth bands (see the build notes in embed_l1.cpp).
enum class ScaleMode { kSeparated, kPaperExact };

struct L1Options {
  ScaleMode scale_mode = ScaleMode::kSeparated;
  // Force the grid base D = lcm(1..M+1); default is the lcm of the
  // bracket widths the construction actually divides by, which is a
  // valid common multiple and keeps subdivision counts feasible.
  bool spec_grid_base = false;
  std::uint64_t vertex_limit = 1000000;
  // Largest single materialized set, in intervals.
  std::uint64_t set_interval_limit = 30000000;
  // Total across per-vertex supports (a work guard for all-pairs sweeps).
  std::uint64_t work_interval_limit = 400000000;
  // Supports are kept while their running total stays below this budget
  // (in intervals, vertex order); later ones are rebuilt on demand.
  std::uint64_t retain_budget = 40000000;
};

// Standalone registry implementing the enumeration bookkeeping of the
// subdivision family: P_0 = empty set has index 0, later sets get
// strictly increasing indices (bumped so that index >= grid level, as the
// enumeration requires). Scales per (sigma, set) pair: paper-exact
// 2^i 3^j, separated a monotone counter with gaps of 4. Intended for
// operation-level use and tests; L1Embedding keeps its own plan.
class ScaleRegistry {
 public:
  ScaleRegistry(ScaleMode mode, int grid_base);

  int register_set(const IntervalSet& set);      // returns the index j
  int index_of(const IntervalSet& set) const;    // -1 when absent
  const IntervalSet& set_at(int index) const;
  int grid_level_of(int index) const;            // N(P_j)
  int theta(int sigma_index, int set_index);     // assigns on first use
  ScaleMode mode() const { return mode_; }
  int grid_base() const { return grid_base_; }

 private:
  ScaleMode mode_;
  int grid_base_;
  std::vector<IntervalSet> sets_;
  std::vector<int> levels_;
  std::map<IntervalSet, int> index_;
  std::map<std::pair<int, int>, int> scales_;
  int next_scale_ = 4;
};

// The subdivision map: each maximal subinterval of the base is divided
// into D^theta equal blocks, each block into D equal parts, and the
// first k parts of every block are kept. Memoized via the registry's
// scale assignment: identical (sigma, set, k) triples yield identical
// sets. Throws on k outside 0..D or an unregistered base.
IntervalSet f_select(int sigma_index, const IntervalSet& base, int k,
                     ScaleRegistry& registry);

// The full l1 embedding of T_{W,kappa}: every vertex carries a finite
// union of open intervals in [0, M+1] of measure equal to its height,
// built by the recursive halving construction; distances are exact
// rationals throughout.
class L1Embedding {
 public:
  L1Embedding(const Code& code, int kappa, const L1Options& opts = {});

  const Code& code() const { return code_; }
  int kappa() const { return kappa_; }
  int grid_base() const { return grid_base_; }
  const L1Options& options() const { return opts_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  int index_of(const Vertex& v) const;

  Rat vertex_measure(const Vertex& v) const;
  Rat intersection_measure(const Vertex& u, const Vertex& v) const;
  // lambda(S(u)) + lambda(S(v)) - 2 lambda(S(u) /\ S(v)).
  Rat dist(const Vertex& u, const Vertex& v) const;
  IntervalSet vertex_set(const Vertex& v) const;

  // Construction records for the identity suites.
  struct CallInfo {
    int id = 0;
    Address sigma;
    int sigma_index = 0;  // enumeration index used by the scale policy
    int base_id = 0;
    int theta = 0;
    int depth = 0;  // granularity exponent of the output pieces
    std::vector<int> ks;  // part counts materialized for this call
  };
  struct BaseInfo {
    int id = 0;
    bool is_units = false;
    int units_lo = 0, units_hi = 0;  // when is_units
    int producing_call = -1, k_lo = 0, k_hi = 0;  // residual otherwise
    int lambda = 0;                // granularity exponent
    long long interval_count = 0;  // exact materialized count
    int registry_index = 0;        // enumeration index (P_0 = empty is 0)
  };
  struct LevelInfo {
    int vertex_index = 0;
    int level = 0;  // i in 0..w_r
    Rat sx, sy, residual, cumulative;
  };

  const std::vector<CallInfo>& calls() const { return calls_; }
  const std::vector<BaseInfo>& bases() const { return bases_; }
  const std::vector<LevelInfo>& levels() const { return levels_; }
  // Identity violations detected while building (empty on a correct run).
  const std::vector<std::string>& violations() const { return violations_; }

  IntervalSet base_set(int base_id) const;
  IntervalSet call_output(int call_id, int k) const;

  // Proportional-intersection identity of the subdivision map, checked
  // over registered set/call pairs whose strict grid levels exist and
  // are ordered; appends any failures to the returned list.
  std::vector<std::string> check_selection_proportionality(
      std::uint64_t sweep_limit = 300000) const;

 private:
  void materialize_base(int base_id);
  void build_vertex(int vi, std::vector<std::pair<long long, long long>>& out,
                    bool record);
  const std::vector<std::pair<long long, long long>>& final_set(
      int vi, std::vector<std::pair<long long, long long>>& scratch) const;
  IntervalSet to_interval_set(const std::vector<std::pair<long long, long long>>& iv) const;

  Code code_;
  int kappa_;
  L1Options opts_;
  int grid_base_ = 2;
  long long common_den_ = 1;
  std::vector<Vertex> vertices_;
  std::vector<CallInfo> calls_;
  std::vector<BaseInfo> bases_;
  std::vector<LevelInfo> levels_;
  std::vector<std::string> violations_;

  // plan: per vertex, the call ids and part counts per level
  struct VertexPlan {
    int x1 = 0, y1 = 0;
    std::vector<int> call_ids;
    std::vector<std::pair<int, int>> parts;  // (kx, ky) per level
  };
  std::vector<VertexPlan> plans_;
  std::vector<std::vector<std::pair<long long, long long>>> base_sets_;
  std::vector<std::vector<std::pair<long long, long long>>> retained_;
  std::vector<bool> kept_;
  std::vector<Rat> measures_;
};

L1Embedding build_l1(const Code& code, int kappa, const L1Options& opts = {});

}  // namespace bundle
