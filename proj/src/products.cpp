#include "bundle/products.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bundle {

Code oslash_n(const Code& w, const Code& wp, int n) {
  int m = w.height() - 1;   // M
  int mp = wp.height() - 1; // M'
  if (n < 0 || n > m) throw std::out_of_range("oslash_n: n out of range");
  std::vector<int> out(m + mp + 2, 0);
  int level = std::max(w.depth_at(n), w.depth_at(n + 1));
  for (int r = 0; r <= m + mp + 1; ++r) {
    if (r <= n)
      out[r] = w.depth_at(r);
    else if (r < n + mp + 1)
      out[r] = level + wp.depth_at(r - n);
    else
      out[r] = w.depth_at(r - mp);
  }
  return Code(std::move(out));
}

Code oslash(const Code& w, const Code& wp) {
  int m = w.height() - 1;
  int mp = wp.height() - 1;
  std::vector<int> out((m + 1) * (mp + 1) + 1, 0);
  for (int n = 0; n <= m; ++n) {
    int level = std::max(w.depth_at(n), w.depth_at(n + 1));
    for (int r = n * (mp + 1) + 1; r < (n + 1) * (mp + 1); ++r)
      out[r] = level + wp.depth_at(r - n * (mp + 1));
    out[(n + 1) * (mp + 1)] = w.depth_at(n + 1);
  }
  return Code(std::move(out));
}

Code family_code(const Code& w, int k, size_t max_len) {
  if (k < 1) throw std::invalid_argument("family_code: k >= 1 required");
  Code result = w;
  for (int i = 1; i < k; ++i) {
    size_t next = (size_t)result.height() * (size_t)w.height() + 1 + 1;
    if (next > max_len)
      throw SizeGuardError("family_code: result length " + std::to_string(next) +
                           " exceeds limit " + std::to_string(max_len));
    result = oslash(result, w);
  }
  return result;
}

bool CompositeVertex::operator<(const CompositeVertex& o) const {
  auto key = [](const CompositeVertex& c) {
    return std::make_tuple(c.original ? 0 : 1, c.vertex, c.edge_lo, c.edge_hi, c.interior);
  };
  return key(*this) < key(o);
}

bool CompositeVertex::operator==(const CompositeVertex& o) const {
  return !(*this < o) && !(o < *this);
}

std::string CompositeVertex::to_string() const {
  if (original) return vertex.to_string();
  return "({" + edge_lo.to_string() + "," + edge_hi.to_string() + "}," +
         interior.to_string() + ")";
}

Vertex isomorphism_F(const Code& w, const Code& wp, int n, const CompositeVertex& v) {
  (void)w;
  int mp = wp.height() - 1;
  if (v.original) {
    if (v.vertex.height <= n) return v.vertex;
    // The replaced level inserts M' extra heights above n.
    return Vertex{v.vertex.height + mp, v.vertex.address};
  }
  if (v.edge_lo.height != n || v.edge_hi.height != n + 1)
    throw std::invalid_argument("isomorphism_F: composite vertex not on level " +
                                std::to_string(n));
  const Address& a = v.edge_lo.address;
  const Address& b = v.edge_hi.address;
  int rho = v.interior.height;
  if (rho <= 0 || rho >= wp.height())
    throw std::invalid_argument("isomorphism_F: interior height out of range");
  if (is_prefix(a, b)) return Vertex{n + rho, concat(b, v.interior.address)};
  if (is_prefix(b, a)) return Vertex{n + rho, concat(a, v.interior.address)};
  throw std::invalid_argument("isomorphism_F: endpoints are not an edge");
}

namespace {

std::vector<std::pair<int, int>> sorted_edges(const BundleGraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j : g.adjacency()[i])
      if (i < j) out.push_back({i, j});
  return out;
}

// Shared edge-replacement core; `replace` selects which edges of g get a
// copy of h.
EdgeReplacedGraph edge_replace(const BundleGraph& g, const BundleGraph& h,
                               auto&& replace) {
  EdgeReplacedGraph out;
  std::map<CompositeVertex, int> index;
  auto intern = [&](const CompositeVertex& v) {
    auto [it, inserted] = index.insert({v, (int)out.vertices.size()});
    if (inserted) out.vertices.push_back(v);
    return it->second;
  };
  auto add_edge = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    out.edges.push_back({a, b});
  };
  for (int i = 0; i < g.vertex_count(); ++i)
    intern(CompositeVertex{true, g.vertices()[i], {}, {}, {}});

  const Vertex h_bottom = h.bottom();
  const Vertex h_top = h.top();
  for (auto [i, j] : sorted_edges(g)) {
    Vertex lo = g.vertices()[i], hi = g.vertices()[j];
    if (hi.height < lo.height) std::swap(lo, hi);
    int lo_id = intern(CompositeVertex{true, lo, {}, {}, {}});
    int hi_id = intern(CompositeVertex{true, hi, {}, {}, {}});
    if (!replace(lo.height)) {
      add_edge(lo_id, hi_id);
      continue;
    }
    auto comp = [&](const Vertex& inner) {
      return intern(CompositeVertex{false, {}, lo, hi, inner});
    };
    for (int x = 0; x < h.vertex_count(); ++x) {
      for (int y : h.adjacency()[x]) {
        if (y < x) continue;
        const Vertex& vx = h.vertices()[x];
        const Vertex& vy = h.vertices()[y];
        bool x_bottom = vx == h_bottom, x_top = vx == h_top;
        bool y_bottom = vy == h_bottom, y_top = vy == h_top;
        int xa = x_bottom ? lo_id : x_top ? hi_id : comp(vx);
        int ya = y_bottom ? lo_id : y_top ? hi_id : comp(vy);
        add_edge(xa, ya);
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

}  // namespace

int EdgeReplacedGraph::index_of(const CompositeVertex& v) const {
  for (int i = 0; i < (int)vertices.size(); ++i)
    if (vertices[i] == v) return i;
  return -1;
}

EdgeReplacedGraph edge_replace_level(const BundleGraph& g, const BundleGraph& h, int n) {
  if (n < 0 || n >= g.code().height())
    throw std::out_of_range("edge_replace_level: n out of range");
  return edge_replace(g, h, [n](int level) { return level == n; });
}

EdgeReplacedGraph edge_replace_all(const BundleGraph& g, const BundleGraph& h) {
  return edge_replace(g, h, [](int) { return true; });
}

Vertex full_product_map(const Code& w, const Code& wp, const CompositeVertex& v) {
  (void)w;
  int mp = wp.height() - 1;
  if (v.original) return Vertex{v.vertex.height * (mp + 1), v.vertex.address};
  int n = v.edge_lo.height;
  const Address& a = v.edge_lo.address;
  const Address& b = v.edge_hi.address;
  const Address& longer = a.size() >= b.size() ? a : b;
  if (!is_prefix(a, b) && !is_prefix(b, a))
    throw std::invalid_argument("full_product_map: endpoints are not an edge");
  return Vertex{n * (mp + 1) + v.interior.height, concat(longer, v.interior.address)};
}

bool check_isomorphism(const EdgeReplacedGraph& replaced,
                       const std::vector<Vertex>& mapped,
                       const BundleGraph& target, std::string* diagnostic) {
  if (mapped.size() != replaced.vertices.size())
    throw std::invalid_argument("check_isomorphism: size mismatch");
  if ((int)mapped.size() != target.vertex_count()) {
    if (diagnostic)
      *diagnostic = "vertex counts differ: " + std::to_string(mapped.size()) +
                    " vs " + std::to_string(target.vertex_count());
    return false;
  }
  std::set<Vertex> seen;
  for (size_t i = 0; i < mapped.size(); ++i) {
    if (!seen.insert(mapped[i]).second) {
      if (diagnostic)
        *diagnostic = "map not injective at " + replaced.vertices[i].to_string();
      return false;
    }
    if (target.index_of(mapped[i]) < 0) {
      if (diagnostic)
        *diagnostic = "image " + mapped[i].to_string() + " not a target vertex";
      return false;
    }
  }
  std::set<std::pair<Vertex, Vertex>> mapped_edges;
  for (auto [i, j] : replaced.edges) {
    Vertex x = mapped[i], y = mapped[j];
    if (y < x) std::swap(x, y);
    if (!mapped_edges.insert({x, y}).second) {
      if (diagnostic)
        *diagnostic = "duplicate mapped edge " + x.to_string() + " -- " + y.to_string();
      return false;
    }
  }
  std::set<std::pair<Vertex, Vertex>> target_edges;
  for (int i = 0; i < target.vertex_count(); ++i)
    for (int j : target.adjacency()[i])
      if (i < j)
        target_edges.insert({target.vertices()[i], target.vertices()[j]});
  if (mapped_edges != target_edges) {
    if (diagnostic) {
      for (const auto& e : target_edges)
        if (!mapped_edges.count(e)) {
          *diagnostic = "target edge " + e.first.to_string() + " -- " +
                        e.second.to_string() + " has no preimage";
          return false;
        }
      for (const auto& e : mapped_edges)
        if (!target_edges.count(e)) {
          *diagnostic = "mapped edge " + e.first.to_string() + " -- " +
                        e.second.to_string() + " not in target";
          return false;
        }
    }
    return false;
  }
  return true;
}

bool verify_oslash_n(const Code& w, const Code& wp, int n, int kappa,
                     std::string* diagnostic) {
  BundleGraph g = materialize(w, kappa);
  BundleGraph h = materialize(wp, kappa);
  EdgeReplacedGraph replaced = edge_replace_level(g, h, n);
  BundleGraph target = materialize(oslash_n(w, wp, n), kappa);
  std::vector<Vertex> mapped;
  mapped.reserve(replaced.vertices.size());
  for (const CompositeVertex& v : replaced.vertices)
    mapped.push_back(isomorphism_F(w, wp, n, v));
  return check_isomorphism(replaced, mapped, target, diagnostic);
}

bool verify_oslash(const Code& w, const Code& wp, int kappa, std::string* diagnostic) {
  BundleGraph g = materialize(w, kappa);
  BundleGraph h = materialize(wp, kappa);
  EdgeReplacedGraph replaced = edge_replace_all(g, h);
  BundleGraph target = materialize(oslash(w, wp), kappa);
  std::vector<Vertex> mapped;
  mapped.reserve(replaced.vertices.size());
  for (const CompositeVertex& v : replaced.vertices)
    mapped.push_back(full_product_map(w, wp, v));
  return check_isomorphism(replaced, mapped, target, diagnostic);
}

bool check_composed_xy(const Code& w, const Code& wp,
                       std::pair<int, int>* counterexample) {
  Code composed = oslash(w, wp);
  int m = w.height() - 1;
  int mp = wp.height() - 1;
  int top = composed.height();
  for (int r = 0; r <= top; ++r) {
    for (int i = 0; i <= composed.maxdepth() + 1; ++i) {
      XYZ direct = xyz(composed, r, i);
      int fx, fy;
      if (i == 0) {
        fx = 0;
        fy = top;
      } else if (r == 0) {
        fx = 0;
        fy = 0;
      } else {
        int n = (r - 1) / (mp + 1);  // segment: n(M'+1) < r <= (n+1)(M'+1)
        int kn = std::max(w.depth_at(n), w.depth_at(n + 1));
        if (r == (n + 1) * (mp + 1)) {
          fx = (mp + 1) * xyz(w, n + 1, i).x;
        } else if (i <= kn) {
          fx = (mp + 1) * xyz(w, n, i).x;
        } else {
          fx = n * (mp + 1) + xyz(wp, r - n * (mp + 1), i - kn).x;
        }
        if (r == (n + 1) * (mp + 1) || i <= kn) {
          fy = (mp + 1) * xyz(w, n + 1, i).y;
        } else {
          fy = n * (mp + 1) + xyz(wp, r - n * (mp + 1), i - kn).y;
        }
      }
      if (fx != direct.x || fy != direct.y) {
        if (counterexample) *counterexample = {r, i};
        return false;
      }
    }
  }
  (void)m;
  return true;
}

}  // namespace bundle
