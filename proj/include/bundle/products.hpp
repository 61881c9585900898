#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bundle/graph.hpp"

namespace bundle {

// Code of the graph obtained by replacing every edge between heights n
// and n+1 of T_W with a copy of T_W'.
Code oslash_n(const Code& w, const Code& wp, int n);

// Code of the full edge-replacement product (every edge of T_W replaced
// by a copy of T_W'), via the closed form.
Code oslash(const Code& w, const Code& wp);

// k-fold iterated product generating the family of the base code;
// family_code(w, 1) = w.
Code family_code(const Code& w, int k, size_t max_len = 4096);

// A vertex of the direct edge-replacement construction: either an
// original vertex of T_W, or (edge, interior vertex of T_W') where the
// edge is identified by its lower endpoint and upper endpoint.
struct CompositeVertex {
  bool original = true;
  Vertex vertex;          // original vertex, when original = true
  Vertex edge_lo, edge_hi;  // replaced edge endpoints (heights n, n+1)
  Vertex interior;        // vertex of T_W' strictly between bottom and top

  bool operator<(const CompositeVertex& o) const;
  bool operator==(const CompositeVertex& o) const;
  std::string to_string() const;
};

// The four-case vertex map of the single-level product: original low
// vertices stay, interior vertices concatenate onto the longer endpoint
// address, original high vertices shift up by M'+1.
Vertex isomorphism_F(const Code& w, const Code& wp, int n, const CompositeVertex& v);

// Direct edge-replacement construction (the oracle the closed forms are
// checked against).
struct EdgeReplacedGraph {
  std::vector<CompositeVertex> vertices;
  std::vector<std::pair<int, int>> edges;
  int index_of(const CompositeVertex& v) const;
};

// Replace only the edges between heights n and n+1.
EdgeReplacedGraph edge_replace_level(const BundleGraph& g, const BundleGraph& h, int n);

// Replace every edge.
EdgeReplacedGraph edge_replace_all(const BundleGraph& g, const BundleGraph& h);

// Vertex map for the full product: original (r,A) -> ((M'+1)r, A);
// (edge at level n, (rho,C)) -> (n(M'+1)+rho, longer(A,B)^C).
Vertex full_product_map(const Code& w, const Code& wp, const CompositeVertex& v);

// Checks that `mapped` carries `replaced` bijectively onto the
// materialized target, preserving adjacency edge-by-edge. Returns false
// with a diagnostic on the first mismatch.
bool check_isomorphism(const EdgeReplacedGraph& replaced,
                       const std::vector<Vertex>& mapped,
                       const BundleGraph& target, std::string* diagnostic = nullptr);

// Single-level product isomorphism check via isomorphism_F.
bool verify_oslash_n(const Code& w, const Code& wp, int n, int kappa,
                     std::string* diagnostic = nullptr);

// Full product isomorphism check via full_product_map.
bool verify_oslash(const Code& w, const Code& wp, int kappa,
                   std::string* diagnostic = nullptr);

// Case formulas for the bracket functions of a composed code, checked
// exhaustively against direct scans. On failure reports the first
// counterexample (r, i).
bool check_composed_xy(const Code& w, const Code& wp,
                       std::pair<int, int>* counterexample = nullptr);

}  // namespace bundle
