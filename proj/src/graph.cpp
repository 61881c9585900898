#include "bundle/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace bundle {

std::uint64_t vertex_count_of(const Code& code, int kappa, std::uint64_t limit) {
  if (kappa < 1) throw std::invalid_argument("kappa must be >= 1");
  std::uint64_t total = 0;
  for (int r = 0; r <= code.height(); ++r) {
    std::uint64_t layer = 1;
    for (int i = 0; i < code.depth_at(r); ++i) {
      if (layer > limit / (std::uint64_t)kappa + 1)
        throw SizeGuardError("vertex count exceeds limit " + std::to_string(limit) +
                             " for code " + code.to_string());
      layer *= (std::uint64_t)kappa;
    }
    total += layer;
    if (total > limit)
      throw SizeGuardError("vertex count " + std::to_string(total) +
                           " exceeds limit " + std::to_string(limit) +
                           " for code " + code.to_string());
  }
  return total;
}

static void addresses_of_length(int kappa, int len, std::vector<Address>& out) {
  out.clear();
  out.push_back(Address{});
  for (int i = 0; i < len; ++i) {
    std::vector<Address> next;
    next.reserve(out.size() * kappa);
    for (const Address& a : out)
      for (int c = 0; c < kappa; ++c) {
        Address b = a;
        b.push_back(c);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
}

BundleGraph::BundleGraph(Code code, int kappa, std::uint64_t vertex_limit)
    : code_(std::move(code)), kappa_(kappa) {
  vertex_count_of(code_, kappa, vertex_limit);
  std::vector<Address> layer;
  for (int r = 0; r <= code_.height(); ++r) {
    addresses_of_length(kappa_, code_.depth_at(r), layer);
    std::sort(layer.begin(), layer.end());
    for (Address& a : layer) vertices_.push_back(Vertex{r, std::move(a)});
  }
  adjacency_.resize(vertices_.size());
  // Layer offsets for edge construction between consecutive heights.
  std::vector<int> offset(code_.height() + 2, 0);
  {
    int idx = 0;
    for (int r = 0; r <= code_.height(); ++r) {
      offset[r] = idx;
      int count = 1;
      for (int i = 0; i < code_.depth_at(r); ++i) count *= kappa_;
      idx += count;
    }
    offset[code_.height() + 1] = idx;
  }
  for (int r = 0; r < code_.height(); ++r) {
    for (int i = offset[r]; i < offset[r + 1]; ++i) {
      for (int j = offset[r + 1]; j < offset[r + 2]; ++j) {
        const Address& a = vertices_[i].address;
        const Address& b = vertices_[j].address;
        if (is_prefix(a, b) || is_prefix(b, a)) {
          adjacency_[i].push_back(j);
          adjacency_[j].push_back(i);
          ++edge_count_;
        }
      }
    }
  }
}

int BundleGraph::index_of(const Vertex& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || !(*it == v)) return -1;
  return (int)(it - vertices_.begin());
}

std::string BundleGraph::dump() const {
  std::string out;
  for (const Vertex& v : vertices_) out += v.to_string() + "\n";
  for (int i = 0; i < (int)vertices_.size(); ++i)
    for (int j : adjacency_[i])
      if (i < j) out += vertices_[i].to_string() + " -- " + vertices_[j].to_string() + "\n";
  return out;
}

BundleGraph materialize(const Code& code, int kappa, std::uint64_t vertex_limit) {
  return BundleGraph(code, kappa, vertex_limit);
}

int dist_formula(const Code& code, const Vertex& u, const Vertex& v) {
  if (updown(code, u, v)) return std::abs(u.height - v.height);
  auto [n, m] = nm(code, u, v);
  int r = u.height, s = v.height;
  return std::min(r + s - 2 * n, 2 * m - (r + s));
}

int dist_bfs(const BundleGraph& graph, const Vertex& u, const Vertex& v) {
  int src = graph.index_of(u), dst = graph.index_of(v);
  if (src < 0 || dst < 0)
    throw std::invalid_argument("dist_bfs: vertex not in graph");
  if (src == dst) return 0;
  std::vector<int> dist(graph.vertex_count(), -1);
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int next : graph.adjacency()[cur]) {
      if (dist[next] >= 0) continue;
      dist[next] = dist[cur] + 1;
      if (next == dst) return dist[next];
      queue.push_back(next);
    }
  }
  throw std::runtime_error("dist_bfs: graph is not connected");
}

BuildScript BuildScript::init() { return BuildScript{}; }

BuildScript BuildScript::parallel(BuildScript lower, BuildScript upper) {
  BuildScript s;
  s.kind = kParallel;
  s.first = std::make_shared<BuildScript>(std::move(lower));
  s.second = std::make_shared<BuildScript>(std::move(upper));
  return s;
}

BuildScript BuildScript::series(BuildScript body, int multiplicity) {
  if (multiplicity < 1)
    throw std::invalid_argument("BuildScript::series: multiplicity >= 1 required");
  BuildScript s;
  s.kind = kSeries;
  s.first = std::make_shared<BuildScript>(std::move(body));
  s.multiplicity = multiplicity;
  return s;
}

namespace {

// Build step result: vertices are addressed by (height, depth, address)
// labels assembled bottom-up; bottom and top are tracked by index.
struct Built {
  std::vector<Vertex> vertices;
  std::vector<int> depths;
  std::vector<std::pair<int, int>> edges;
  int bottom = 0, top = 0, height = 0;
};

Built build_rec(const BuildScript& s) {
  switch (s.kind) {
    case BuildScript::kInit: {
      Built b;
      b.vertices = {Vertex{0, {}}, Vertex{1, {}}};
      b.depths = {0, 0};
      b.edges = {{0, 1}};
      b.bottom = 0;
      b.top = 1;
      b.height = 1;
      return b;
    }
    case BuildScript::kParallel: {
      Built lo = build_rec(*s.first);
      Built hi = build_rec(*s.second);
      Built b = lo;
      int shift = (int)lo.vertices.size();
      // hi's bottom is identified with lo's top.
      std::vector<int> remap(hi.vertices.size());
      for (int i = 0; i < (int)hi.vertices.size(); ++i) {
        if (i == hi.bottom) {
          remap[i] = lo.top;
          continue;
        }
        Vertex v = hi.vertices[i];
        v.height += lo.height;
        remap[i] = (int)b.vertices.size();
        b.vertices.push_back(std::move(v));
        b.depths.push_back(hi.depths[i]);
      }
      (void)shift;
      for (auto [x, y] : hi.edges) b.edges.push_back({remap[x], remap[y]});
      b.top = remap[hi.top];
      b.height = lo.height + hi.height;
      return b;
    }
    case BuildScript::kSeries: {
      Built inner = build_rec(*s.first);
      Built b;
      b.height = inner.height;
      // Shared bottom and top carry their inner labels (depth stays 0,
      // addresses unchanged: they are tops/bottoms, depth 0, address ()).
      b.vertices.push_back(inner.vertices[inner.bottom]);
      b.depths.push_back(0);
      b.bottom = 0;
      b.vertices.push_back(inner.vertices[inner.top]);
      b.depths.push_back(0);
      b.top = 1;
      for (int copy = 0; copy < s.multiplicity; ++copy) {
        std::vector<int> remap(inner.vertices.size());
        for (int i = 0; i < (int)inner.vertices.size(); ++i) {
          if (i == inner.bottom) {
            remap[i] = b.bottom;
          } else if (i == inner.top) {
            remap[i] = b.top;
          } else {
            Vertex v = inner.vertices[i];
            // The outermost copy index leads: the prefix edge rule keys
            // on the coarsest branching first.
            v.address.insert(v.address.begin(), copy);
            remap[i] = (int)b.vertices.size();
            b.vertices.push_back(std::move(v));
            b.depths.push_back(inner.depths[i] + 1);
          }
        }
        for (auto [x, y] : inner.edges) {
          int a = remap[x], c = remap[y];
          if (a == c) continue;
          b.edges.push_back({a, c});
        }
      }
      // Deduplicate edges incident to the shared bottom/top when the
      // inner graph was a bare edge (all interior vertices absent).
      std::sort(b.edges.begin(), b.edges.end());
      b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
      return b;
    }
  }
  throw std::logic_error("build_rec: unreachable");
}

}  // namespace

LabelledGraph build_recursive(const BuildScript& script) {
  Built b = build_rec(script);
  LabelledGraph g;
  g.vertices = std::move(b.vertices);
  g.depths = std::move(b.depths);
  g.edges = std::move(b.edges);
  g.height = b.height;
  return g;
}

Code LabelledGraph::derive_code() const {
  std::vector<int> code(height + 1, -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    int r = vertices[i].height;
    if (r < 0 || r > height) throw std::logic_error("derive_code: height out of range");
    if (code[r] < 0)
      code[r] = depths[i];
    else if (code[r] != depths[i])
      throw std::logic_error("derive_code: mixed depths at height " + std::to_string(r));
  }
  return Code(std::move(code));
}

namespace {

int global_kappa(const BuildScript& s, int found) {
  if (s.kind == BuildScript::kSeries) {
    if (found != 0 && found != s.multiplicity)
      throw std::invalid_argument("verify_code_roundtrip: mixed series multiplicities");
    found = s.multiplicity;
  }
  if (s.first) found = global_kappa(*s.first, found);
  if (s.second) found = global_kappa(*s.second, found);
  return found;
}

}  // namespace

bool verify_code_roundtrip(const BuildScript& script, std::string* diagnostic) {
  LabelledGraph built = build_recursive(script);
  Code code = built.derive_code();
  int kappa = global_kappa(script, 0);
  if (kappa == 0) kappa = 1;  // no series step anywhere
  BundleGraph direct = materialize(code, kappa);

  std::set<Vertex> built_vertices(built.vertices.begin(), built.vertices.end());
  if (built_vertices.size() != built.vertices.size()) {
    if (diagnostic) *diagnostic = "duplicate vertex label in recursive construction";
    return false;
  }
  for (const Vertex& v : direct.vertices()) {
    if (!built_vertices.count(v)) {
      if (diagnostic) *diagnostic = "vertex " + v.to_string() + " missing from recursive construction";
      return false;
    }
  }
  if (built_vertices.size() != (size_t)direct.vertex_count()) {
    if (diagnostic) *diagnostic = "vertex counts differ";
    return false;
  }

  std::set<std::pair<Vertex, Vertex>> built_edges;
  for (auto [a, b] : built.edges) {
    Vertex x = built.vertices[a], y = built.vertices[b];
    if (y < x) std::swap(x, y);
    built_edges.insert({x, y});
  }
  std::set<std::pair<Vertex, Vertex>> direct_edges;
  for (int i = 0; i < direct.vertex_count(); ++i)
    for (int j : direct.adjacency()[i])
      if (i < j) direct_edges.insert({direct.vertices()[i], direct.vertices()[j]});
  if (built_edges != direct_edges) {
    if (diagnostic) {
      for (const auto& e : direct_edges)
        if (!built_edges.count(e)) {
          *diagnostic = "edge " + e.first.to_string() + " -- " + e.second.to_string() +
                        " missing from recursive construction";
          return false;
        }
      for (const auto& e : built_edges)
        if (!direct_edges.count(e)) {
          *diagnostic = "edge " + e.first.to_string() + " -- " + e.second.to_string() +
                        " absent from materialized graph";
          return false;
        }
    }
    return false;
  }
  return true;
}

}  // namespace bundle
