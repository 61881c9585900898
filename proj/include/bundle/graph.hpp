#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bundle/coding.hpp"

namespace bundle {

struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Materialized T_{W,kappa} for finite kappa. Vertices are enumerated
// height-major, then address-lexicographic; immutable after construction.
class BundleGraph {
 public:
  BundleGraph(Code code, int kappa, std::uint64_t vertex_limit = 1000000);

  const Code& code() const { return code_; }
  int kappa() const { return kappa_; }
  int vertex_count() const { return (int)vertices_.size(); }
  int edge_count() const { return edge_count_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

  // Index in the fixed enumeration; -1 when absent.
  int index_of(const Vertex& v) const;
  const Vertex& bottom() const { return vertices_.front(); }
  const Vertex& top() const { return vertices_.back(); }

  // Line-oriented dump: one vertex per line "r:(a1,a2,...)", then one
  // edge per line "u -- v".
  std::string dump() const;

 private:
  Code code_;
  int kappa_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<int>> adjacency_;
  int edge_count_ = 0;
};

// Expected vertex count, overflow-checked; throws SizeGuardError above limit.
std::uint64_t vertex_count_of(const Code& code, int kappa, std::uint64_t limit);

BundleGraph materialize(const Code& code, int kappa, std::uint64_t vertex_limit = 1000000);

// Closed-form shortest-path distance: |r-s| for comparable pairs, else
// min over routing through the highest common ancestor or lowest common
// descendant. Works for any (finite) addresses, no graph needed.
int dist_formula(const Code& code, const Vertex& u, const Vertex& v);

// Exact shortest-path length by breadth-first search; the oracle for
// dist_formula.
int dist_bfs(const BundleGraph& graph, const Vertex& u, const Vertex& v);

// Recursive construction tree: a single edge, a stack of two graphs, or
// kappa parallel copies with tops and bottoms identified.
struct BuildScript {
  enum Kind { kInit, kParallel, kSeries } kind = kInit;
  std::shared_ptr<BuildScript> first;   // parallel: lower part; series: body
  std::shared_ptr<BuildScript> second;  // parallel: upper part
  int multiplicity = 0;                 // series only

  static BuildScript init();
  static BuildScript parallel(BuildScript lower, BuildScript upper);
  static BuildScript series(BuildScript body, int multiplicity);
};

// A graph built bottom-up from a script, with per-vertex depth labels and
// copy-recording addresses.
struct LabelledGraph {
  std::vector<Vertex> vertices;           // height + address labels
  std::vector<int> depths;                // depth (level) per vertex
  std::vector<std::pair<int, int>> edges; // index pairs
  int height = 0;

  Code derive_code() const;  // depth per height; validates uniformity
};

LabelledGraph build_recursive(const BuildScript& script);

// True iff materializing the derived code reproduces the labelled graph
// vertex-for-vertex and edge-for-edge. Requires a single global kappa
// across all series steps (throws on mixed multiplicities). On mismatch
// returns false and fills *diagnostic with the first discrepancy.
bool verify_code_roundtrip(const BuildScript& script,
                           std::string* diagnostic = nullptr);

}  // namespace bundle
