#include "bundle/coding.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace bundle {

Code::Code(std::vector<int> depths) : depths_(std::move(depths)) {
  if (depths_.size() < 2)
    throw std::invalid_argument("Code: needs at least two entries");
  if (depths_.front() != 0 || depths_.back() != 0)
    throw std::invalid_argument("Code: first and last depth must be 0");
  for (int w : depths_)
    if (w < 0) throw std::invalid_argument("Code: negative depth");
  maxdepth_ = *std::max_element(depths_.begin(), depths_.end());
}

Code Code::parse(const std::string& text) {
  std::vector<int> depths;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int value = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || p != item.data() + item.size())
      throw std::invalid_argument("Code::parse: bad entry '" + item + "'");
    depths.push_back(value);
  }
  if (depths.empty()) throw std::invalid_argument("Code::parse: empty code");
  return Code(std::move(depths));
}

std::string Code::to_string() const {
  std::string out;
  for (size_t i = 0; i < depths_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(depths_[i]);
  }
  return out;
}

Address meet(const Address& a, const Address& b) {
  size_t n = std::min(a.size(), b.size());
  size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return Address(a.begin(), a.begin() + i);
}

Address restrict(const Address& a, int m) {
  if (m < 0) throw std::invalid_argument("restrict: negative length");
  if ((size_t)m >= a.size()) return a;
  return Address(a.begin(), a.begin() + m);
}

bool is_prefix(const Address& a, const Address& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

Address concat(const Address& a, const Address& b) {
  Address out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string address_to_string(const Address& a) {
  std::string out = "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a[i]);
  }
  out += ')';
  return out;
}

Address parse_address(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("parse_address: expected '(...)' in '" + text + "'");
  std::string inner = text.substr(1, text.size() - 2);
  Address out;
  if (inner.empty()) return out;
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int value = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || p != item.data() + item.size() || value < 0)
      throw std::invalid_argument("parse_address: bad entry '" + item + "'");
    out.push_back(value);
  }
  return out;
}

Vertex Vertex::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("Vertex::parse: expected 'r:(...)' in '" + text + "'");
  Vertex v;
  std::string hs = text.substr(0, colon);
  auto [p, ec] = std::from_chars(hs.data(), hs.data() + hs.size(), v.height);
  if (ec != std::errc() || p != hs.data() + hs.size() || v.height < 0)
    throw std::invalid_argument("Vertex::parse: bad height '" + hs + "'");
  v.address = parse_address(text.substr(colon + 1));
  return v;
}

std::string Vertex::to_string() const {
  return std::to_string(height) + ":" + address_to_string(address);
}

XYZ xyz(const Code& code, int r, int i) {
  if (r < 0 || r > code.height())
    throw std::out_of_range("xyz: height out of range");
  if (i < 0) throw std::out_of_range("xyz: negative depth threshold");
  XYZ out;
  if (i == 0) {
    out.x = 0;
    out.y = code.height();
    out.z = r;
    return out;
  }
  int x = -1, y = -1;
  for (int t = r; t >= 0; --t)
    if (code.depth_at(t) < i) { x = t; break; }
  for (int t = r; t <= code.height(); ++t)
    if (code.depth_at(t) < i) { y = t; break; }
  // w_0 = w_{M+1} = 0 guarantees both exist.
  out.x = x;
  out.y = y;
  out.z = std::min(r - x, y - r);
  return out;
}

bool vertex_valid(const Code& code, const Vertex& v) {
  if (v.height < 0 || v.height > code.height()) return false;
  if ((int)v.address.size() != code.depth_at(v.height)) return false;
  for (int a : v.address)
    if (a < 0) return false;
  return true;
}

void require_vertex(const Code& code, const Vertex& v) {
  if (!vertex_valid(code, v))
    throw std::invalid_argument("invalid vertex " + v.to_string() +
                                " for code " + code.to_string());
}

bool updown(const Code& code, const Vertex& u, const Vertex& v) {
  require_vertex(code, u);
  require_vertex(code, v);
  int k = (int)meet(u.address, v.address).size();
  int lo = std::min(u.height, v.height), hi = std::max(u.height, v.height);
  for (int t = lo; t <= hi; ++t)
    if (code.depth_at(t) <= k) return true;
  return false;
}

std::pair<int, int> nm(const Code& code, const Vertex& u, const Vertex& v) {
  require_vertex(code, u);
  require_vertex(code, v);
  int k = (int)meet(u.address, v.address).size();
  int lo = std::min(u.height, v.height), hi = std::max(u.height, v.height);
  int n = -1, m = -1;
  for (int t = lo; t >= 0; --t)
    if (code.depth_at(t) <= k) { n = t; break; }
  for (int t = hi; t <= code.height(); ++t)
    if (code.depth_at(t) <= k) { m = t; break; }
  return {n, m};
}

int p_param(const Code& code, PwConvention convention) {
  const int cap = code.maxdepth() + 1;
  const int i_lo = convention == PwConvention::kPositive ? 1 : 0;
  for (int p = 1; p <= cap; ++p) {
    bool ok = true;
    for (int r = 0; r <= code.height() && ok; ++r) {
      for (int i = i_lo; i <= cap && ok; ++i) {
        XYZ cur = xyz(code, r, i);
        XYZ next = xyz(code, r, i + p);
        // Compare against the midpoint (x+y)/2 in doubled integers.
        int mid2 = cur.x + cur.y;
        if (2 * r >= mid2 && 2 * next.x < mid2) ok = false;
        if (2 * r <= mid2 && 2 * next.y > mid2) ok = false;
      }
    }
    if (ok) return p;
  }
  throw std::runtime_error("p_param: no p <= maxdepth+1 satisfies the bracket conditions for " +
                           code.to_string());
}

std::vector<Address> enumerate_addresses(int kappa, int max_len) {
  if (kappa < 1) throw std::invalid_argument("enumerate_addresses: kappa >= 1 required");
  std::vector<Address> out;
  std::vector<Address> level{Address{}};
  out.push_back(Address{});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Address> next;
    for (const Address& a : level)
      for (int c = 0; c < kappa; ++c) {
        Address b = a;
        b.push_back(c);
        next.push_back(b);
      }
    for (const Address& b : next) out.push_back(b);
    level = std::move(next);
  }
  return out;
}

static void preorder_rec(const Address& node, int kappa, int max_len,
                         std::vector<Address>& out) {
  out.push_back(node);
  if ((int)node.size() == max_len) return;
  for (int c = 0; c < kappa; ++c) {
    Address child = node;
    child.push_back(c);
    preorder_rec(child, kappa, max_len, out);
  }
}

std::vector<Address> enumerate_addresses_preorder(int kappa, int max_len) {
  if (kappa < 1) throw std::invalid_argument("enumerate_addresses_preorder: kappa >= 1 required");
  std::vector<Address> out;
  preorder_rec(Address{}, kappa, max_len, out);
  return out;
}

long long enumeration_weight(const Address& a) {
  long long s = 0;
  for (int e : a) s += e + 1;
  return s;
}

}  // namespace bundle
