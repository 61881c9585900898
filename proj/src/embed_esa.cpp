#include "bundle/embed_esa.hpp"

#include <algorithm>
#include <random>

#include "bundle/graph.hpp"

namespace bundle {

Rat summing_norm(const SummingVector& v) {
  long long run = 0, best = 0;
  for (auto [pos, coeff] : v.entries) {
    run += coeff;
    best = std::max(best, std::llabs(run));
  }
  return v.normalizer * Rat(best);
}

Rat summing_dist(const SummingVector& a, const SummingVector& b) {
  if (!(a.normalizer == b.normalizer))
    throw std::invalid_argument("summing_dist: mismatched normalizers");
  long long run = 0, best = 0;
  size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    long long pa = i < a.entries.size() ? a.entries[i].first : INT64_MAX;
    long long pb = j < b.entries.size() ? b.entries[j].first : INT64_MAX;
    if (pa < pb) {
      run += a.entries[i++].second;
    } else if (pb < pa) {
      run -= b.entries[j++].second;
    } else {
      run += a.entries[i++].second - b.entries[j++].second;
    }
    best = std::max(best, std::llabs(run));
  }
  return a.normalizer * Rat(best);
}

namespace {

long long dense_norm(const std::vector<long long>& coeffs) {
  long long run = 0, best = 0;
  for (long long c : coeffs) {
    run += c;
    best = std::max(best, std::llabs(run));
  }
  return best;
}

std::string vec_str(const std::vector<long long>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace

bool check_esa_axioms(int trials, unsigned long long seed, std::string* counterexample) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len_dist(2, 24);
  std::uniform_int_distribution<long long> coeff_dist(-5, 5);
  for (int t = 0; t < trials; ++t) {
    int len = len_dist(rng);
    std::vector<long long> v(len);
    for (auto& c : v) c = coeff_dist(rng);
    long long norm = dense_norm(v);
    std::uniform_int_distribution<int> pos_dist(0, len - 2);
    int k = pos_dist(rng);
    std::vector<long long> merged(v.begin(), v.end());
    merged[k] += merged[k + 1];
    merged.erase(merged.begin() + k + 1);
    long long merged_norm = dense_norm(merged);
    if (v[k] * v[k + 1] >= 0) {
      if (merged_norm != norm) {
        if (counterexample)
          *counterexample = "equal-sign merge changed norm: " + vec_str(v) +
                            " at " + std::to_string(k);
        return false;
      }
    }
    if (merged_norm > norm) {
      if (counterexample)
        *counterexample = "merge increased norm: " + vec_str(v) + " at " +
                          std::to_string(k);
      return false;
    }
    // Spreading onto an arbitrary increasing index sequence: prefix sums
    // only gain repeated values, so the norm is preserved.
    std::vector<long long> spread;
    for (long long c : v) {
      std::uniform_int_distribution<int> gap(0, 3);
      for (int g = gap(rng); g > 0; --g) spread.push_back(0);
      spread.push_back(c);
    }
    if (dense_norm(spread) != norm) {
      if (counterexample)
        *counterexample = "spreading changed norm: " + vec_str(v);
      return false;
    }
  }
  return true;
}

namespace {

EsaEmbedding::Run residual_of(EsaEmbedding::Run x, EsaEmbedding::Run y) {
  if (x.size() == 0) return y;
  if (x.lo == y.lo) return EsaEmbedding::Run{x.hi + 1, y.hi};
  return EsaEmbedding::Run{y.lo, x.lo - 1};
}

}  // namespace

BernoulliFamily::BernoulliFamily(int mu) : mu_(mu) {
  if (mu < 1 || mu > 62) throw std::invalid_argument("BernoulliFamily: mu out of range");
}

bool BernoulliFamily::value(int i, long long j) const {
  if (i < 1 || i > mu_) throw std::out_of_range("BernoulliFamily: index out of range");
  if (j < 1 || j > points()) throw std::out_of_range("BernoulliFamily: point out of range");
  long long modulus = 1LL << (mu_ - (i - 1));
  long long r = j % modulus;
  return r >= 1 && r <= (1LL << (mu_ - i));
}

EsaEmbedding::EsaEmbedding(const Code& code, int kappa, const EsaOptions& opts)
    : code_(code), kappa_(kappa), opts_(opts) {
  if (kappa < 1) throw std::invalid_argument("build_esa: kappa >= 1 required");
  vertex_count_of(code_, kappa_, opts_.vertex_limit);
  p_w_ = p_param(code_, opts_.convention);

  // Node enumeration (length-major, then lexicographic); the empty node
  // keeps index 0 and the Bernoulli variables attach to indices >= 1.
  auto nodes = enumerate_addresses(kappa_, code_.maxdepth());
  long long mu = (long long)nodes.size();
  if (mu < 1) mu = 1;
  if (mu > opts_.mu_cap)
    throw SizeGuardError("build_esa: mu = " + std::to_string(mu) + " exceeds cap " +
                         std::to_string(opts_.mu_cap));
  const int top = code_.height();
  // Basis length through block I_{2^{mu+1}}.
  unsigned long long length = (2ULL << mu) * (unsigned long long)(top + 1);
  if (length > opts_.length_cap)
    throw SizeGuardError("build_esa: basis length " + std::to_string(length) +
                         " exceeds cap " + std::to_string(opts_.length_cap));
  family_ = BernoulliFamily((int)mu);
  for (int i = 0; i < (int)nodes.size(); ++i) node_index_[nodes[i]] = i;

  for (int r = 0; r <= top; ++r) {
    std::vector<Address> layer;
    for (const Address& a : enumerate_addresses(kappa_, code_.depth_at(r)))
      if ((int)a.size() == code_.depth_at(r)) layer.push_back(a);
    std::sort(layer.begin(), layer.end());
    for (Address& a : layer) vertices_.push_back(Vertex{r, std::move(a)});
  }

  // eta = || sum e_{2j-1} - e_{2j} || over all blocks (computed, not assumed).
  {
    SummingVector alternating;
    for (long long j = 1; j <= family_.points(); ++j) {
      alternating.entries.push_back({2 * j - 1, 1});
      alternating.entries.push_back({2 * j, -1});
    }
    eta_ = summing_norm(alternating);
  }

  const long long blocks = family_.points();
  runs_.resize(vertices_.size());
  psis_.resize(vertices_.size());
  for (int vi = 0; vi < (int)vertices_.size(); ++vi) {
    const Vertex& v = vertices_[vi];
    const int r = v.height;
    const int w = (int)v.address.size();
    runs_[vi].assign(blocks, {});
    SummingVector psi;
    psi.normalizer = Rat(1) / eta_;
    std::vector<long long> forward, mirrored;
    for (long long j = 1; j <= blocks; ++j) {
      auto& levels = runs_[vi][j - 1];
      levels.resize(w + 1);
      Run x0{1, xyz(code_, r, 1).x};
      Run y0{1, xyz(code_, r, 1).y};
      levels[0] = {x0, y0};
      for (int i = 1; i <= w; ++i) {
        auto [px, py] = levels[i - 1];
        // Residual of the previous level: the y-run minus the x-run,
        // which sits at the back after a heads selection (x is a prefix
        // of y) and at the front after tails.
        Run avail = residual_of(px, py);
        int keep_x = xyz(code_, r, i + 1).x - xyz(code_, r, i).x;
        int keep_y = xyz(code_, r, i + 1).y - xyz(code_, r, i).x;
        bool heads = family_.value(node_index_.at(restrict(v.address, i)), j);
        Run x_run, y_run;
        if (heads) {
          x_run = {avail.lo, avail.lo + keep_x - 1};
          y_run = {avail.lo, avail.lo + keep_y - 1};
        } else {
          x_run = {avail.hi - keep_x + 1, avail.hi};
          y_run = {avail.hi - keep_y + 1, avail.hi};
        }
        if (keep_x == 0) x_run = Run{1, 0};
        if (keep_y == 0) y_run = Run{1, 0};
        levels[i] = {x_run, y_run};
      }
      // S_j(v): union of the x-runs; place forward copy in I_{2j-1} and a
      // mirrored copy in I_{2j}.
      for (int i = 0; i <= w; ++i) {
        Run x = levels[i].first;
        for (int n = x.lo; n <= x.hi; ++n) {
          forward.push_back((2 * j - 2) * (long long)(top + 1) + n);
          mirrored.push_back(2 * j * (long long)(top + 1) + 1 - n);
        }
      }
    }
    std::sort(forward.begin(), forward.end());
    std::sort(mirrored.begin(), mirrored.end());
    for (long long p : forward) psi.entries.push_back({p, 1});
    for (long long p : mirrored) psi.entries.push_back({p, -1});
    std::sort(psi.entries.begin(), psi.entries.end());
    psis_[vi] = std::move(psi);
  }
}

int EsaEmbedding::index_of(const Vertex& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || !(*it == v)) return -1;
  return (int)(it - vertices_.begin());
}

int EsaEmbedding::node_index(const Address& a) const {
  auto it = node_index_.find(a);
  if (it == node_index_.end())
    throw std::invalid_argument("node_index: address outside the node set");
  return it->second;
}

SummingVector EsaEmbedding::psi(const Vertex& v) const {
  int vi = index_of(v);
  if (vi < 0) throw std::invalid_argument("psi: vertex not in embedding");
  return psis_[vi];
}

Rat EsaEmbedding::dist(const Vertex& u, const Vertex& v) const {
  int ui = index_of(u), vi = index_of(v);
  if (ui < 0 || vi < 0) throw std::invalid_argument("dist: vertex not in embedding");
  return summing_dist(psis_[ui], psis_[vi]);
}

EsaEmbedding::Run EsaEmbedding::sx_run(int vertex_index, long long j, int level) const {
  return runs_.at(vertex_index).at(j - 1).at(level).first;
}

EsaEmbedding::Run EsaEmbedding::sy_run(int vertex_index, long long j, int level) const {
  return runs_.at(vertex_index).at(j - 1).at(level).second;
}

std::vector<std::string> EsaEmbedding::check_level_identities() const {
  std::vector<std::string> failures;
  const int top = code_.height();
  for (int vi = 0; vi < (int)vertices_.size(); ++vi) {
    const Vertex& v = vertices_[vi];
    const int r = v.height;
    const int w = (int)v.address.size();
    for (long long j = 1; j <= family_.points(); ++j) {
      const auto& levels = runs_[vi][j - 1];
      long long total = 0;
      std::vector<char> used(top + 2, 0);
      for (int i = 0; i <= w; ++i) {
        auto [x, y] = levels[i];
        XYZ cur = xyz(code_, r, i);
        XYZ next = xyz(code_, r, i + 1);
        if (x.size() != next.x - cur.x)
          failures.push_back("x-run size off at " + v.to_string() + " j=" +
                             std::to_string(j) + " level " + std::to_string(i));
        if (y.size() != next.y - cur.x)
          failures.push_back("y-run size off at " + v.to_string() + " j=" +
                             std::to_string(j) + " level " + std::to_string(i));
        if (y.size() - x.size() != next.y - next.x)
          failures.push_back("residual size off at " + v.to_string() + " j=" +
                             std::to_string(j) + " level " + std::to_string(i));
        // x-run is a prefix of the y-run on the same side by construction;
        // disjointness across levels is the honest check here.
        for (int n = x.lo; n <= x.hi; ++n) {
          if (n < 1 || n > top + 1) {
            failures.push_back("selection out of block at " + v.to_string());
            continue;
          }
          if (used[n]) failures.push_back("levels overlap at " + v.to_string() +
                                          " j=" + std::to_string(j));
          used[n] = 1;
        }
        total += x.size();
        if (total != next.x)
          failures.push_back("cumulative size off at " + v.to_string() + " j=" +
                             std::to_string(j) + " level " + std::to_string(i));
      }
      if (total != r)
        failures.push_back("block cardinality off at " + v.to_string() + " j=" +
                           std::to_string(j));
      // Contiguity under constant selector patterns.
      for (int i = 0; i < w; ++i) {
        for (int ip = i + 1; ip <= w; ++ip) {
          bool all_ones = true, all_zeros = true;
          for (int n = i + 1; n <= ip; ++n) {
            bool val = family_.value(node_index_.at(restrict(v.address, n)), j);
            all_ones = all_ones && val;
            all_zeros = all_zeros && !val;
          }
          if (!all_ones && !all_zeros) continue;
          auto [xi, yi] = levels[i];
          Run residual_i = residual_of(xi, yi);
          if (residual_i.size() == 0) continue;
          XYZ at_i1 = xyz(code_, r, i + 1);
          XYZ at_ip1 = xyz(code_, r, ip + 1);
          int grown = at_ip1.x - at_i1.x;
          auto [xip, yip] = levels[ip];
          Run residual_ip = residual_of(xip, yip);
          if (all_ones) {
            // The x-selections fill a prefix of residual_i and the next
            // residual continues it.
            if (grown > 0) {
              int expect_lo = residual_i.lo, expect_hi = residual_i.lo + grown - 1;
              // union of x-runs over i+1..ip must be exactly that run
              std::vector<char> mark(top + 2, 0);
              for (int n = i + 1; n <= ip; ++n) {
                Run x = levels[n].first;
                for (int q = x.lo; q <= x.hi; ++q) mark[q] = 1;
              }
              bool ok = true;
              for (int q = 1; q <= top + 1; ++q) {
                bool inside = q >= expect_lo && q <= expect_hi;
                if (mark[q] != (inside ? 1 : 0)) ok = false;
              }
              if (!ok)
                failures.push_back("forward contiguity off at " + v.to_string() +
                                   " j=" + std::to_string(j));
            }
            if (residual_ip.size() > 0 &&
                (residual_ip.lo != residual_i.lo + grown ||
                 residual_ip.hi != residual_i.lo + (at_ip1.y - at_i1.x) - 1))
              failures.push_back("forward residual off at " + v.to_string() + " j=" +
                                 std::to_string(j));
          } else {
            if (grown > 0) {
              int expect_hi = residual_i.hi, expect_lo = residual_i.hi - grown + 1;
              std::vector<char> mark(top + 2, 0);
              for (int n = i + 1; n <= ip; ++n) {
                Run x = levels[n].first;
                for (int q = x.lo; q <= x.hi; ++q) mark[q] = 1;
              }
              bool ok = true;
              for (int q = 1; q <= top + 1; ++q) {
                bool inside = q >= expect_lo && q <= expect_hi;
                if (mark[q] != (inside ? 1 : 0)) ok = false;
              }
              if (!ok)
                failures.push_back("backward contiguity off at " + v.to_string() +
                                   " j=" + std::to_string(j));
            }
            if (residual_ip.size() > 0 &&
                (residual_ip.hi != residual_i.hi - grown ||
                 residual_ip.lo != residual_i.hi - (at_ip1.y - at_i1.x) + 1))
              failures.push_back("backward residual off at " + v.to_string() + " j=" +
                                 std::to_string(j));
          }
        }
      }
    }
  }
  return failures;
}

bool EsaEmbedding::separation_check(const Vertex& u, const Vertex& v,
                                    std::string* diagnostic) const {
  Vertex lo = u, hi = v;
  if (hi.height < lo.height) std::swap(lo, hi);
  if (updown(code_, lo, hi)) {
    if (diagnostic) *diagnostic = "pair is comparable";
    return false;
  }
  int ui = index_of(lo), vi = index_of(hi);
  if (ui < 0 || vi < 0) throw std::invalid_argument("separation_check: vertex missing");
  const Address& a = lo.address;
  const Address& b = hi.address;
  const int K = (int)meet(a, b).size();
  const int d = dist_formula(code_, lo, hi);

  // Index family: selectors of the taller vertex's prefixes succeed and
  // the shorter's fail, for p_W levels past the meet.
  std::vector<long long> index_family;
  std::vector<int> constrained;
  for (long long j = 1; j <= family_.points(); ++j) {
    bool ok = true;
    for (int n = 1; n <= p_w_ && ok; ++n) {
      if (!family_.value(node_index_.at(restrict(b, K + n)), j)) ok = false;
      if (ok && family_.value(node_index_.at(restrict(a, K + n)), j)) ok = false;
    }
    if (ok) index_family.push_back(j);
  }
  for (int n = 1; n <= p_w_; ++n) {
    int ia = node_index_.at(restrict(a, K + n));
    int ib = node_index_.at(restrict(b, K + n));
    if (std::find(constrained.begin(), constrained.end(), ia) == constrained.end())
      constrained.push_back(ia);
    if (std::find(constrained.begin(), constrained.end(), ib) == constrained.end())
      constrained.push_back(ib);
  }
  int nu = (int)constrained.size();
  if (nu > 2 * p_w_ || index_family.size() != (size_t)(family_.points() >> nu)) {
    if (diagnostic)
      *diagnostic = "index family size " + std::to_string(index_family.size()) +
                    " != 2^(mu-" + std::to_string(nu) + ")";
    return false;
  }

  const int wu = (int)a.size(), wv = (int)b.size();
  for (long long j : index_family) {
    long long min_u = INT64_MAX;
    for (int k = K + 1; k <= wu; ++k) {
      Run x = runs_[ui][j - 1][k].first;
      if (x.size() > 0) min_u = std::min(min_u, (long long)x.lo);
    }
    long long count = 0;
    for (int k = K + 1; k <= wv; ++k) {
      Run x = runs_[vi][j - 1][k].first;
      for (int n = x.lo; n <= x.hi; ++n)
        if (n < min_u) ++count;
    }
    if (2 * count < d) {
      if (diagnostic)
        *diagnostic = "block " + std::to_string(j) + " separates only " +
                      std::to_string(count) + " of " + std::to_string(d) + "/2";
      return false;
    }
  }
  return true;
}

EsaEmbedding build_esa(const Code& code, int kappa, const EsaOptions& opts) {
  return EsaEmbedding(code, kappa, opts);
}

}  // namespace bundle
