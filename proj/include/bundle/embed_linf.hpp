#pragma once

#include <map>
#include <string>

#include "bundle/coding.hpp"

namespace bundle {

// Coefficient map over the nodes of kappa^{<= max W}; absent nodes are 0.
// The target model gives every node a disjoint support, so the norm is
// the maximum absolute coefficient.
struct NodeCoefficients {
  std::map<Address, long long> coeff;

  long long at(const Address& node) const {
    auto it = coeff.find(node);
    return it == coeff.end() ? 0 : it->second;
  }
};

// psi((r,A)): coefficient z(r,|B|) at every prefix B of A.
NodeCoefficients psi_linf(const Code& code, const Vertex& v);

// Max-absolute-difference over nodes (the canonical model's metric).
long long dist_linf(const NodeCoefficients& a, const NodeCoefficients& b);

// Norm of a single coefficient map in the canonical model.
long long norm_linf(const NodeCoefficients& a);

}  // namespace bundle
