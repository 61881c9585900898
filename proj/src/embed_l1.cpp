#include "bundle/embed_l1.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

// Scale policy notes (kSeparated).
//
// Every selection made by the construction subdivides each maximal
// subinterval of its base into D^theta blocks of D parts and keeps a
// prefix run of parts per block. Writing depth(c) for the granularity
// exponent of a call c (pieces of c live on the grid D^-(depth+1)),
// exact product intersections between two selection chains hold when the
// chains' depth sets do not interleave: the coarser chain's sets are
// unions of complete cells at its last depth, and the finer chain's
// sets occupy every such cell in exactly proportional measure provided
// its first depth is strictly below cell granularity. Two chains are
// only ever intersected by the embedding when they diverge below their
// meet node, so assigning depth(call with node sigma) = preorder(sigma)
// over the address tree puts any two divergent chains into disjoint
// depth bands (a preorder visits a whole subtree before its next
// sibling) while chains that share a prefix share the identical calls.
// Distinct level-0 frames never interact: incomparable vertices always
// share their bracket (x, y) profile, and comparable pairs only use
// setwise inclusions, so depths can be reused across frames and the
// total subdivision along a chain stays small enough to materialize.

namespace bundle {

using pll = std::pair<long long, long long>;

namespace {

long long checked_pow(long long base, long long exp, long long cap,
                      const char* what) {
  long long out = 1;
  for (long long i = 0; i < exp; ++i) {
    if (out > cap / base)
      throw SizeGuardError(std::string(what) + ": " + std::to_string(base) + "^" +
                           std::to_string(exp) + " exceeds " + std::to_string(cap));
    out *= base;
  }
  return out;
}

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

Rat rat_over(__int128 num, long long den) {
  if (num > INT64_MAX || num < INT64_MIN)
    throw std::overflow_error("interval measure accumulator overflow");
  return Rat((long long)num, den);
}

}  // namespace

// ---------------------------------------------------------------------------
// Standalone registry + subdivision map (operation-level surface).

ScaleRegistry::ScaleRegistry(ScaleMode mode, int grid_base)
    : mode_(mode), grid_base_(grid_base) {
  if (grid_base < 2) throw std::invalid_argument("ScaleRegistry: grid base >= 2");
  sets_.push_back(IntervalSet{});  // P_0 = empty
  levels_.push_back(0);
  index_[IntervalSet{}] = 0;
}

int ScaleRegistry::register_set(const IntervalSet& set) {
  auto it = index_.find(set);
  if (it != index_.end()) return it->second;
  int level = set.empty() ? 0 : grid_level(set, grid_base_);
  // The enumeration requires N(P_i) <= i; skip indices when needed.
  int j = std::max((int)sets_.size(), level);
  while ((int)sets_.size() < j) {
    sets_.push_back(IntervalSet{});
    levels_.push_back(-1);  // skipped slot
  }
  sets_.push_back(set);
  levels_.push_back(level);
  index_[set] = j;
  return j;
}

int ScaleRegistry::index_of(const IntervalSet& set) const {
  auto it = index_.find(set);
  return it == index_.end() ? -1 : it->second;
}

const IntervalSet& ScaleRegistry::set_at(int index) const {
  return sets_.at(index);
}

int ScaleRegistry::grid_level_of(int index) const { return levels_.at(index); }

int ScaleRegistry::theta(int sigma_index, int set_index) {
  if (sigma_index < 0) throw std::invalid_argument("theta: negative sigma index");
  auto key = std::make_pair(sigma_index, set_index);
  auto it = scales_.find(key);
  if (it != scales_.end()) return it->second;
  int level = levels_.at(set_index);
  int theta;
  if (mode_ == ScaleMode::kPaperExact) {
    long long scale = 1;
    for (int i = 0; i < sigma_index; ++i) scale = 2 * scale;
    for (int j = 0; j < set_index; ++j) scale = 3 * scale;
    if (scale > 40)
      throw SizeGuardError("paper-exact scale 2^i 3^j = " + std::to_string(scale) +
                           " is too deep to materialize");
    theta = (int)scale - level;
  } else {
    theta = next_scale_ - level;
    next_scale_ += 4;
  }
  scales_[key] = theta;
  return theta;
}

IntervalSet f_select(int sigma_index, const IntervalSet& base, int k,
                     ScaleRegistry& registry) {
  const int d = registry.grid_base();
  if (k < 0 || k > d)
    throw std::invalid_argument("f_select: k outside 0..D");
  int j = registry.index_of(base);
  if (j < 0) throw std::invalid_argument("f_select: unregistered base");
  if (base.empty() || k == 0) return IntervalSet{};
  int theta = registry.theta(sigma_index, j);
  long long blocks = checked_pow(d, theta, 4000000, "f_select block count");
  std::vector<Interval> out;
  out.reserve(base.size() * (size_t)blocks);
  const Rat block_frac(1, blocks);
  const Rat keep_frac((long long)k, (long long)blocks * d);
  for (const Interval& iv : base.intervals()) {
    Rat width = iv.hi - iv.lo;
    Rat block = width * block_frac;
    Rat keep = width * keep_frac;
    Rat start = iv.lo;
    for (long long m = 0; m < blocks; ++m) {
      out.push_back({start, start + keep});
      start = start + block;
    }
  }
  return IntervalSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Full embedding.

L1Embedding::L1Embedding(const Code& code, int kappa, const L1Options& opts)
    : code_(code), kappa_(kappa), opts_(opts) {
  if (kappa < 1) throw std::invalid_argument("build_l1: kappa >= 1 required");
  vertex_count_of(code_, kappa_, opts_.vertex_limit);

  const int top = code_.height();
  const int maxw = code_.maxdepth();

  // Bracket tables.
  auto xs = [&](int r, int i) { return xyz(code_, r, i).x; };
  auto ys = [&](int r, int i) { return xyz(code_, r, i).y; };

  // Grid base: a common multiple of every bracket width the recursion
  // divides by (lcm(1..M+1) is also valid and selectable).
  long long d = 2;
  if (opts_.spec_grid_base) {
    for (int v = 2; v <= top; ++v) d = lcm_ll(d, v);
  } else {
    for (int r = 0; r <= top; ++r)
      for (int i = 1; i <= code_.depth_at(r); ++i)
        d = lcm_ll(d, ys(r, i) - xs(r, i));
  }
  if (d > 3600) throw SizeGuardError("grid base " + std::to_string(d) + " too large");
  grid_base_ = (int)d;

  // Vertex enumeration, height-major then address-lex.
  for (int r = 0; r <= top; ++r) {
    std::vector<Address> layer;
    for (const Address& a : enumerate_addresses(kappa_, code_.depth_at(r)))
      if ((int)a.size() == code_.depth_at(r)) layer.push_back(a);
    std::sort(layer.begin(), layer.end());
    for (Address& a : layer) vertices_.push_back(Vertex{r, std::move(a)});
  }

  // Sigma enumeration for the scale policy.
  std::map<Address, int> sigma_index;
  if (opts_.scale_mode == ScaleMode::kSeparated) {
    auto order = enumerate_addresses_preorder(kappa_, maxw);
    for (int i = 0; i < (int)order.size(); ++i) sigma_index[order[i]] = i;
  } else {
    auto order = enumerate_addresses(kappa_, maxw);
    for (int i = 0; i < (int)order.size(); ++i) sigma_index[order[i]] = i;
  }

  // Symbolic plan: intern bases and calls, collect per-vertex chains.
  std::map<std::pair<int, int>, int> units_ids;
  std::map<std::pair<Address, int>, int> call_ids;
  std::map<std::tuple<int, int, int>, int> residual_ids;

  auto intern_units = [&](int lo, int hi) {
    auto it = units_ids.find({lo, hi});
    if (it != units_ids.end()) return it->second;
    BaseInfo b;
    b.id = (int)bases_.size();
    b.is_units = true;
    b.units_lo = lo;
    b.units_hi = hi;
    b.lambda = 0;
    b.interval_count = hi - lo;
    bases_.push_back(b);
    units_ids[{lo, hi}] = b.id;
    return b.id;
  };
  auto intern_call = [&](const Address& sigma, int base_id) {
    auto it = call_ids.find({sigma, base_id});
    if (it != call_ids.end()) return it->second;
    CallInfo c;
    c.id = (int)calls_.size();
    c.sigma = sigma;
    c.sigma_index = sigma_index.at(sigma);
    c.base_id = base_id;
    calls_.push_back(c);
    call_ids[{sigma, base_id}] = c.id;
    return c.id;
  };
  auto intern_residual = [&](int call_id, int kx, int ky) {
    auto it = residual_ids.find({call_id, kx, ky});
    if (it != residual_ids.end()) return it->second;
    BaseInfo b;
    b.id = (int)bases_.size();
    b.is_units = false;
    b.producing_call = call_id;
    b.k_lo = kx;
    b.k_hi = ky;
    bases_.push_back(b);
    residual_ids[{call_id, kx, ky}] = b.id;
    return b.id;
  };

  plans_.resize(vertices_.size());
  for (int vi = 0; vi < (int)vertices_.size(); ++vi) {
    const Vertex& v = vertices_[vi];
    const int r = v.height;
    const int w = (int)v.address.size();
    VertexPlan& plan = plans_[vi];
    plan.x1 = xs(r, 1);
    plan.y1 = ys(r, 1);
    if (w == 0) continue;
    int base = intern_units(plan.x1, plan.y1);
    for (int i = 1; i <= w; ++i) {
      int gap = ys(r, i) - xs(r, i);
      long long kx_num = (long long)(xs(r, i + 1) - xs(r, i)) * grid_base_;
      long long ky_num = (long long)(ys(r, i + 1) - xs(r, i)) * grid_base_;
      if (kx_num % gap != 0 || ky_num % gap != 0)
        throw std::runtime_error("build_l1: non-integer selection count at height " +
                                 std::to_string(r) + " level " + std::to_string(i));
      int kx = (int)(kx_num / gap), ky = (int)(ky_num / gap);
      int call = intern_call(restrict(v.address, i), base);
      auto& ks = calls_[call].ks;
      if (std::find(ks.begin(), ks.end(), kx) == ks.end()) ks.push_back(kx);
      if (std::find(ks.begin(), ks.end(), ky) == ks.end()) ks.push_back(ky);
      plan.call_ids.push_back(call);
      plan.parts.push_back({kx, ky});
      if (i < w) base = intern_residual(call, kx, ky);
    }
  }

  // Depth / theta assignment (guards included), then materialization.
  base_sets_.resize(bases_.size());
  if (opts_.scale_mode == ScaleMode::kSeparated) {
    for (CallInfo& c : calls_) {
      int lambda = bases_[c.base_id].lambda;
      c.depth = c.sigma_index;  // preorder index over the address tree
      c.theta = c.depth - lambda - 1;
      if (c.theta < 0)
        throw std::logic_error("build_l1: negative subdivision depth");
      // Residual granularity and counts propagate.
      for (BaseInfo& b : bases_) {
        if (!b.is_units && b.producing_call == c.id) {
          b.lambda = c.depth;
          long long blocks =
              checked_pow(grid_base_, c.theta, (long long)opts_.set_interval_limit,
                          "subdivision count");
          b.interval_count =
              b.k_hi > b.k_lo ? bases_[c.base_id].interval_count * blocks : 0;
          if (b.interval_count > (long long)opts_.set_interval_limit)
            throw SizeGuardError("residual set would hold " +
                                 std::to_string(b.interval_count) + " intervals");
        }
      }
    }
    for (BaseInfo& b : bases_) b.registry_index = b.id + 1;  // P_0 = empty
  } else {
    // Paper-exact: the enumeration index of a set and its grid level are
    // value-dependent, so walk the plan with rational sets (the depth
    // guard keeps everything tiny in this mode).
    std::vector<IntervalSet> values(bases_.size());
    std::vector<bool> have(bases_.size(), false);
    int next_index = 1;
    auto value_of = [&](int id) -> const IntervalSet& {
      if (!have[id]) throw std::logic_error("paper-exact: base value missing");
      return values[id];
    };
    auto assign_index = [&](BaseInfo& b) {
      if (value_of(b.id).empty()) {
        b.registry_index = 0;  // the empty set is P_0
        return;
      }
      int level = grid_level(value_of(b.id), grid_base_);
      b.registry_index = std::max(next_index, level);
      next_index = b.registry_index + 1;
    };
    // Units bases have no producing call; materialize them on first use.
    for (CallInfo& c : calls_) {
      BaseInfo& b = bases_[c.base_id];
      if (!have[b.id]) {
        if (!b.is_units)
          throw std::logic_error("paper-exact: residual base used before produced");
        values[b.id] = IntervalSet::unit_cells(b.units_lo, b.units_hi);
        have[b.id] = true;
        assign_index(b);
      }
      if (value_of(b.id).empty()) {
        c.theta = 0;
        c.depth = b.lambda + 1;
      } else {
        int level = grid_level(value_of(b.id), grid_base_);
        long long scale = 1;
        for (int i = 0; i < c.sigma_index; ++i) scale *= 2;
        for (int j = 0; j < b.registry_index && scale <= 64; ++j) scale *= 3;
        if (scale > 40)
          throw SizeGuardError("paper-exact scale 2^i 3^j = " + std::to_string(scale) +
                               " too deep; use the separated policy");
        c.theta = (int)scale - level;
        c.depth = b.lambda + c.theta + 1;
      }
      // Residuals of this call, in rational form.
      for (BaseInfo& rb : bases_) {
        if (rb.is_units || rb.producing_call != c.id || have[rb.id]) continue;
        rb.lambda = c.depth;
        long long blocks = checked_pow(grid_base_, c.theta,
                                       (long long)opts_.set_interval_limit,
                                       "subdivision count");
        rb.interval_count =
            rb.k_hi > rb.k_lo ? bases_[c.base_id].interval_count * blocks : 0;
        std::vector<Interval> pieces;
        if (rb.k_hi > rb.k_lo) {
          pieces.reserve(value_of(c.base_id).size() * (size_t)blocks);
          const Rat lo_frac((long long)rb.k_lo, (long long)blocks * grid_base_);
          const Rat hi_frac((long long)rb.k_hi, (long long)blocks * grid_base_);
          const Rat block_frac(1, blocks);
          for (const Interval& iv : value_of(c.base_id).intervals()) {
            Rat width = iv.hi - iv.lo;
            Rat start = iv.lo;
            for (long long m = 0; m < blocks; ++m) {
              pieces.push_back({start + width * lo_frac, start + width * hi_frac});
              start = start + width * block_frac;
            }
          }
        }
        values[rb.id] = IntervalSet(std::move(pieces));
        have[rb.id] = true;
        assign_index(rb);
      }
    }
    for (int id = 0; id < (int)bases_.size(); ++id)
      if (!have[id]) {
        BaseInfo& b = bases_[id];
        values[id] = IntervalSet::unit_cells(b.units_lo, b.units_hi);
        have[id] = true;
        assign_index(b);
      }
  }

  {
    long long emax = 1;
    for (const CallInfo& c : calls_) emax = std::max(emax, (long long)c.depth);
    common_den_ = checked_pow(grid_base_, emax + 1,
                              INT64_MAX / (4 * (long long)(top + 2)), "denominator");
    for (int id = 0; id < (int)bases_.size(); ++id) materialize_base(id);
  }

  // Work guard across per-vertex supports.
  {
    long long total = 0;
    for (int vi = 0; vi < (int)vertices_.size(); ++vi) {
      const VertexPlan& plan = plans_[vi];
      long long count = plan.x1;
      for (size_t i = 0; i < plan.call_ids.size(); ++i) {
        const CallInfo& c = calls_[plan.call_ids[i]];
        long long blocks = checked_pow(grid_base_, c.theta,
                                       (long long)opts_.set_interval_limit, "subdivision");
        long long base_count = bases_[c.base_id].interval_count;
        if (plan.parts[i].first > 0) count += base_count * blocks;
        if (count > (long long)opts_.set_interval_limit)
          throw SizeGuardError("vertex support would hold " + std::to_string(count) +
                               " intervals (limit " +
                               std::to_string(opts_.set_interval_limit) + ")");
      }
      total += count;
      if (total > (long long)opts_.work_interval_limit)
        throw SizeGuardError("embedding would hold " + std::to_string(total) +
                             " intervals across vertices");
    }
  }

  // Materialize every vertex once, recording the per-level identities;
  // retain supports up to the threshold.
  retained_.resize(vertices_.size());
  kept_.assign(vertices_.size(), false);
  measures_.resize(vertices_.size());
  std::uint64_t retained_total = 0;
  for (int vi = 0; vi < (int)vertices_.size(); ++vi) {
    std::vector<pll> support;
    build_vertex(vi, support, true);
    __int128 total = 0;
    for (auto [lo, hi] : support) total += hi - lo;
    measures_[vi] = rat_over(total, common_den_);
    if (measures_[vi] != Rat(vertices_[vi].height))
      violations_.push_back("support measure of " + vertices_[vi].to_string() +
                            " is " + measures_[vi].to_string());
    if (retained_total + support.size() <= opts_.retain_budget) {
      retained_total += support.size();
      retained_[vi] = std::move(support);
      kept_[vi] = true;
    }
  }
}

void L1Embedding::materialize_base(int base_id) {
  BaseInfo& b = bases_[base_id];
  std::vector<pll>& out = base_sets_[base_id];
  out.clear();
  if (b.is_units) {
    for (int t = b.units_lo; t < b.units_hi; ++t)
      out.push_back({(long long)t * common_den_, (long long)(t + 1) * common_den_});
    return;
  }
  const CallInfo& c = calls_[b.producing_call];
  const std::vector<pll>& base = base_sets_[c.base_id];
  if (b.k_hi <= b.k_lo) return;
  long long blocks = 1;
  for (int i = 0; i < c.theta; ++i) blocks *= grid_base_;
  out.reserve(base.size() * (size_t)blocks);
  for (auto [lo, hi] : base) {
    long long width = hi - lo;
    long long block = width / blocks;
    long long part = block / grid_base_;
    long long off_lo = (long long)b.k_lo * part, off_hi = (long long)b.k_hi * part;
    for (long long m = 0, s = lo; m < blocks; ++m, s += block)
      out.push_back({s + off_lo, s + off_hi});
  }
}

void L1Embedding::build_vertex(int vi, std::vector<pll>& out, bool record) {
  const VertexPlan& plan = plans_[vi];
  const Vertex& v = vertices_[vi];
  const int r = v.height;
  out.clear();
  for (int t = 0; t < plan.x1; ++t)
    out.push_back({(long long)t * common_den_, (long long)(t + 1) * common_den_});
  if (record) {
    LevelInfo info;
    info.vertex_index = vi;
    info.level = 0;
    info.sx = Rat(plan.x1);
    info.sy = Rat(plan.y1);
    info.residual = Rat(plan.y1 - plan.x1);
    info.cumulative = Rat(plan.x1);
    levels_.push_back(info);
  }
  std::vector<pll> merged = out;  // cells are already sorted
  Rat cumulative(plan.x1);
  for (size_t idx = 0; idx < plan.call_ids.size(); ++idx) {
    const CallInfo& c = calls_[plan.call_ids[idx]];
    auto [kx, ky] = plan.parts[idx];
    const std::vector<pll>& base = base_sets_[c.base_id];
    long long blocks = 1;
    for (int i = 0; i < c.theta; ++i) blocks *= grid_base_;
    std::vector<pll> level;
    __int128 sx_total = 0, sy_total = 0;
    if (kx > 0) level.reserve(base.size() * (size_t)blocks);
    for (auto [lo, hi] : base) {
      long long width = hi - lo;
      long long block = width / blocks;
      long long part = block / grid_base_;
      long long keep_x = (long long)kx * part;
      sx_total += (__int128)keep_x * blocks;
      sy_total += (__int128)((long long)ky * part) * blocks;
      if (keep_x == 0) continue;
      for (long long m = 0, s = lo; m < blocks; ++m, s += block)
        level.push_back({s, s + keep_x});
    }
    if (record) {
      LevelInfo info;
      info.vertex_index = vi;
      info.level = (int)idx + 1;
      info.sx = rat_over(sx_total, common_den_);
      info.sy = rat_over(sy_total, common_den_);
      info.residual = info.sy - info.sx;
      cumulative = cumulative + info.sx;
      info.cumulative = cumulative;
      levels_.push_back(info);
      XYZ cur = xyz(code_, r, (int)idx + 1);
      XYZ next = xyz(code_, r, (int)idx + 2);
      if (info.sx != Rat(next.x - cur.x) || info.sy != Rat(next.y - cur.x) ||
          info.residual != Rat(next.y - next.x) || info.cumulative != Rat(next.x))
        violations_.push_back("level measures off at " + v.to_string() + " level " +
                              std::to_string(idx + 1));
    }
    std::vector<pll> next_merged;
    next_merged.reserve(merged.size() + level.size());
    std::merge(merged.begin(), merged.end(), level.begin(), level.end(),
               std::back_inserter(next_merged));
    merged = std::move(next_merged);
  }
  // Disjointness across levels, then abutting-interval coalescing.
  out.clear();
  out.reserve(merged.size());
  for (const pll& iv : merged) {
    if (!out.empty() && iv.first < out.back().second) {
      if (record)
        violations_.push_back("support intervals overlap at " + v.to_string());
      continue;
    }
    if (!out.empty() && out.back().second == iv.first)
      out.back().second = iv.second;
    else
      out.push_back(iv);
  }
}

const std::vector<pll>& L1Embedding::final_set(int vi, std::vector<pll>& scratch) const {
  if (kept_[vi]) return retained_[vi];
  // Rebuild into caller scratch; build_vertex with record=false only
  // reads shared state, so concurrent queries stay safe.
  const_cast<L1Embedding*>(this)->build_vertex(vi, scratch, false);
  return scratch;
}

int L1Embedding::index_of(const Vertex& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || !(*it == v)) return -1;
  return (int)(it - vertices_.begin());
}

Rat L1Embedding::vertex_measure(const Vertex& v) const {
  int vi = index_of(v);
  if (vi < 0) throw std::invalid_argument("vertex not in embedding");
  return measures_[vi];
}

Rat L1Embedding::intersection_measure(const Vertex& u, const Vertex& v) const {
  int ui = index_of(u), vi = index_of(v);
  if (ui < 0 || vi < 0) throw std::invalid_argument("vertex not in embedding");
  std::vector<pll> scratch_u, scratch_v;
  const std::vector<pll>& a = final_set(ui, scratch_u);
  const std::vector<pll>& b = final_set(vi, scratch_v);
  __int128 acc = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    long long lo = std::max(a[i].first, b[j].first);
    long long hi = std::min(a[i].second, b[j].second);
    if (lo < hi) acc += hi - lo;
    if (a[i].second < b[j].second)
      ++i;
    else
      ++j;
  }
  return rat_over(acc, common_den_);
}

Rat L1Embedding::dist(const Vertex& u, const Vertex& v) const {
  return vertex_measure(u) + vertex_measure(v) -
         Rat(2) * intersection_measure(u, v);
}

IntervalSet L1Embedding::to_interval_set(const std::vector<pll>& iv) const {
  std::vector<Interval> out;
  out.reserve(iv.size());
  for (auto [lo, hi] : iv)
    out.push_back({Rat(lo, common_den_), Rat(hi, common_den_)});
  return IntervalSet(std::move(out));
}

IntervalSet L1Embedding::vertex_set(const Vertex& v) const {
  int vi = index_of(v);
  if (vi < 0) throw std::invalid_argument("vertex not in embedding");
  std::vector<pll> scratch;
  return to_interval_set(final_set(vi, scratch));
}

IntervalSet L1Embedding::base_set(int base_id) const {
  return to_interval_set(base_sets_.at(base_id));
}

IntervalSet L1Embedding::call_output(int call_id, int k) const {
  const CallInfo& c = calls_.at(call_id);
  if (k < 0 || k > grid_base_) throw std::invalid_argument("call_output: k outside 0..D");
  const std::vector<pll>& base = base_sets_[c.base_id];
  long long blocks = 1;
  for (int i = 0; i < c.theta; ++i) blocks *= grid_base_;
  std::vector<pll> out;
  if (k > 0) {
    out.reserve(base.size() * (size_t)blocks);
    for (auto [lo, hi] : base) {
      long long width = hi - lo;
      long long block = width / blocks;
      long long keep = (long long)k * (block / grid_base_);
      for (long long m = 0, s = lo; m < blocks; ++m, s += block)
        out.push_back({s, s + keep});
    }
  }
  return to_interval_set(out);
}

std::vector<std::string> L1Embedding::check_selection_proportionality(
    std::uint64_t sweep_limit) const {
  std::vector<std::string> failures;
  // Strict grid levels where they exist.
  std::vector<int> level_of(bases_.size(), -1);
  for (const BaseInfo& b : bases_) {
    if (b.interval_count == 0 ||
        (std::uint64_t)b.interval_count > sweep_limit)
      continue;
    try {
      level_of[b.id] = grid_level(base_set(b.id), grid_base_);
    } catch (const GridError&) {
      level_of[b.id] = -1;
    }
  }
  for (const CallInfo& c : calls_) {
    if (level_of[c.base_id] < 0) continue;
    const BaseInfo& cb = bases_[c.base_id];
    if ((std::uint64_t)cb.interval_count > sweep_limit) continue;
    long long blocks = 1;
    for (int i = 0; i < c.theta && (std::uint64_t)blocks <= sweep_limit; ++i)
      blocks *= grid_base_;
    if ((std::uint64_t)(cb.interval_count * blocks) > sweep_limit) continue;
    IntervalSet base = base_set(c.base_id);
    Rat base_measure = base.measure();
    std::vector<std::pair<int, IntervalSet>> outputs;
    for (int k : c.ks) outputs.push_back({k, call_output(c.id, k)});
    for (const auto& [k, out] : outputs) {
      if (out.measure() != Rat(k, grid_base_) * base_measure)
        failures.push_back("selection measure off: call " + std::to_string(c.id) +
                           " k=" + std::to_string(k));
      // Nesting across the materialized part counts.
      for (const auto& [k2, bigger] : outputs) {
        if (k2 < k) continue;
        if (intersect_measure(out, bigger) != out.measure())
          failures.push_back("selection nesting off: call " + std::to_string(c.id));
      }
      // Proportionality against coarser registered sets.
      for (const BaseInfo& p : bases_) {
        if (level_of[p.id] < 0 || p.id == c.base_id) continue;
        if (level_of[p.id] >= level_of[c.base_id]) continue;
        if ((std::uint64_t)p.interval_count > sweep_limit) continue;
        IntervalSet probe = base_set(p.id);
        Rat lhs = intersect_measure(probe, out);
        Rat rhs = Rat(k, grid_base_) * intersect_measure(probe, base);
        if (lhs != rhs)
          failures.push_back("proportional intersection off: call " +
                             std::to_string(c.id) + " probe base " +
                             std::to_string(p.id) + " k=" + std::to_string(k));
      }
    }
  }
  return failures;
}

L1Embedding build_l1(const Code& code, int kappa, const L1Options& opts) {
  return L1Embedding(code, kappa, opts);
}

}  // namespace bundle
