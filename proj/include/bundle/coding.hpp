#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bundle {

// A finite branch-index sequence. Entries are unbounded nonnegative
// integers; a kappa-branching context restricts them to 0..kappa-1 only
// when a graph is materialized.
using Address = std::vector<int>;

// Depth word (w_0, ..., w_{M+1}) with w_0 = w_{M+1} = 0. Together with a
// branching number kappa it determines a bundle graph.
class Code {
 public:
  explicit Code(std::vector<int> depths);

  const std::vector<int>& depths() const { return depths_; }
  int depth_at(int height) const { return depths_.at(height); }
  // M+1, the height of the graph (top sits at this height).
  int height() const { return (int)depths_.size() - 1; }
  int maxdepth() const { return maxdepth_; }

  bool operator==(const Code& o) const { return depths_ == o.depths_; }

  // Comma-separated decimal depths, e.g. "0,0,1,0,0,2,1,1,1,2,1,0".
  static Code parse(const std::string& text);
  std::string to_string() const;

 private:
  std::vector<int> depths_;
  int maxdepth_;
};

struct Vertex {
  int height = 0;
  Address address;

  bool operator==(const Vertex& o) const {
    return height == o.height && address == o.address;
  }
  bool operator<(const Vertex& o) const {
    return height != o.height ? height < o.height : address < o.address;
  }

  // "r:(a1,a2,...)", "r:()" for the empty address.
  static Vertex parse(const std::string& text);
  std::string to_string() const;
};

struct XYZ {
  int x = 0;
  int y = 0;
  int z = 0;
};

// Longest common prefix.
Address meet(const Address& a, const Address& b);

// A restricted to its first m entries (all of A if m >= |A|).
Address restrict(const Address& a, int m);

bool is_prefix(const Address& a, const Address& b);  // a prefix-of b

Address concat(const Address& a, const Address& b);

std::string address_to_string(const Address& a);
Address parse_address(const std::string& text);

// Nearest heights at/below and at/above r whose depth is < i, and the
// distance from r to such a height. i = 0 is the definitional base case
// (x = 0, y = M+1, z = r).
XYZ xyz(const Code& code, int r, int i);

// True when v's address length matches the code's depth at v's height
// (and the height is in range).
bool vertex_valid(const Code& code, const Vertex& v);
void require_vertex(const Code& code, const Vertex& v);

// The relation u <=> v: some height t between the two (inclusive) has
// w_t <= |A /\ B|. Distance is then the height difference.
bool updown(const Code& code, const Vertex& u, const Vertex& v);

// Heights of the highest common ancestor (n) and lowest common
// descendant (m) candidates; always defined because w_0 = w_{M+1} = 0.
std::pair<int, int> nm(const Code& code, const Vertex& u, const Vertex& v);

enum class PwConvention { kPositive, kIncludeZero };

// Smallest p >= 1 such that stepping p levels up the depth hierarchy
// always reaches the near half of the surrounding low-depth bracket.
// Brute force over the finite range; throws if no p <= maxdepth + 1
// works (internal-consistency failure).
int p_param(const Code& code, PwConvention convention = PwConvention::kPositive);

// All addresses over alphabet 0..kappa-1 with length <= max_len, in
// length-major then lexicographic order (compatible with the
// sum-of-entries-plus-one enumeration functional for small alphabets).
std::vector<Address> enumerate_addresses(int kappa, int max_len);

// Same node set in depth-first preorder (children visited in index
// order); used by the interval-scale policy of the L1 embedding.
std::vector<Address> enumerate_addresses_preorder(int kappa, int max_len);

// Enumeration functional T_n: sum of (entry + 1) over the address.
long long enumeration_weight(const Address& a);

}  // namespace bundle
