#include "bundle/embed_linf.hpp"

#include <cstdlib>

namespace bundle {

NodeCoefficients psi_linf(const Code& code, const Vertex& v) {
  require_vertex(code, v);
  NodeCoefficients out;
  for (int len = 0; len <= (int)v.address.size(); ++len)
    out.coeff[restrict(v.address, len)] = xyz(code, v.height, len).z;
  return out;
}

long long dist_linf(const NodeCoefficients& a, const NodeCoefficients& b) {
  long long best = 0;
  for (const auto& [node, c] : a.coeff)
    best = std::max(best, std::llabs(c - b.at(node)));
  for (const auto& [node, c] : b.coeff)
    best = std::max(best, std::llabs(c - a.at(node)));
  return best;
}

long long norm_linf(const NodeCoefficients& a) {
  long long best = 0;
  for (const auto& [node, c] : a.coeff) best = std::max(best, std::llabs(c));
  return best;
}

}  // namespace bundle
