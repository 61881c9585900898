#include "bundle/harness.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <random>
#include <sstream>

#include "bundle/embed_linf.hpp"
#include "bundle/graph.hpp"
#include "bundle/products.hpp"

namespace bundle {

Corpus Corpus::generate(int max_height, int max_depth, std::vector<int> kappas) {
  if (max_height < 1) throw std::invalid_argument("Corpus: max_height >= 1");
  Corpus corpus;
  corpus.max_height = max_height;
  corpus.max_depth = max_depth;
  corpus.kappas = std::move(kappas);
  for (int len = 2; len <= max_height + 1; ++len) {
    int interior = len - 2;
    std::vector<int> digits(interior, 0);
    while (true) {
      std::vector<int> word(len, 0);
      for (int i = 0; i < interior; ++i) word[i + 1] = digits[i];
      corpus.codes.push_back(Code(word));
      int pos = interior - 1;
      while (pos >= 0 && digits[pos] == max_depth) digits[pos--] = 0;
      if (pos < 0) break;
      ++digits[pos];
    }
  }
  return corpus;
}

std::string embedding_name(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::kLinf: return "linf";
    case EmbeddingKind::kL1: return "l1";
    case EmbeddingKind::kEsa: return "esa";
  }
  return "?";
}

EmbeddingKind parse_embedding(const std::string& name) {
  if (name == "linf") return EmbeddingKind::kLinf;
  if (name == "l1") return EmbeddingKind::kL1;
  if (name == "esa") return EmbeddingKind::kEsa;
  throw std::invalid_argument("unknown embedding '" + name + "'");
}

PairPolicy PairPolicy::sample(long long n, unsigned long long seed) {
  PairPolicy p;
  p.all = false;
  p.sample_count = n;
  p.seed = seed;
  return p;
}

PairPolicy PairPolicy::parse(const std::string& text) {
  if (text == "all") return all_pairs();
  if (text.rfind("sample:", 0) == 0) {
    auto rest = text.substr(7);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("pair policy: expected sample:N:SEED");
    return sample(std::stoll(rest.substr(0, colon)),
                  std::stoull(rest.substr(colon + 1)));
  }
  throw std::invalid_argument("pair policy: '" + text + "'");
}

std::string PairPolicy::to_string() const {
  if (all) return "all";
  return "sample:" + std::to_string(sample_count) + ":" + std::to_string(seed);
}

namespace {

std::vector<Vertex> vertices_for(const Code& code, int kappa,
                                 std::uint64_t vertex_limit) {
  vertex_count_of(code, kappa, vertex_limit);
  std::vector<Vertex> out;
  for (int r = 0; r <= code.height(); ++r) {
    std::vector<Address> layer;
    for (const Address& a : enumerate_addresses(kappa, code.depth_at(r)))
      if ((int)a.size() == code.depth_at(r)) layer.push_back(a);
    std::sort(layer.begin(), layer.end());
    for (Address& a : layer) out.push_back(Vertex{r, std::move(a)});
  }
  return out;
}

std::vector<std::pair<int, int>> select_pairs(long long count,
                                              const PairPolicy& policy) {
  std::vector<std::pair<int, int>> pairs;
  long long total = count * (count - 1) / 2;
  if (policy.all || policy.sample_count >= total) {
    pairs.reserve(total);
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j) pairs.push_back({i, j});
    return pairs;
  }
  std::mt19937_64 rng(policy.seed);
  std::set<long long> chosen;
  while ((long long)chosen.size() < policy.sample_count)
    chosen.insert((long long)(rng() % (unsigned long long)total));
  for (long long idx : chosen) {
    // decode triangular index
    long long i = 0, remaining = idx;
    while (remaining >= count - 1 - i) {
      remaining -= count - 1 - i;
      ++i;
    }
    pairs.push_back({(int)i, (int)(i + 1 + remaining)});
  }
  return pairs;
}

std::string rat_field(const Rat& r) { return r.to_string(); }

}  // namespace

DistortionReport evaluate(EmbeddingKind kind, const Code& code, int kappa,
                          const PairPolicy& policy, const EvalOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  DistortionReport report;
  report.code = code.to_string();
  report.kappa = kappa;
  report.embedding = embedding_name(kind);
  report.pairs = policy.to_string();

  std::vector<Vertex> verts = vertices_for(code, kappa, opts.vertex_limit);
  report.vertices = (long long)verts.size();
  auto pairs = select_pairs((long long)verts.size(), policy);
  report.pair_count = (long long)pairs.size();

  const L1Options l1_opts = opts.l1;
  const EsaOptions esa_opts = opts.esa;
  std::unique_ptr<L1Embedding> l1;
  std::unique_ptr<EsaEmbedding> esa;
  std::vector<NodeCoefficients> linf_images;
  switch (kind) {
    case EmbeddingKind::kLinf: {
      linf_images.reserve(verts.size());
      for (const Vertex& v : verts) linf_images.push_back(psi_linf(code, v));
      report.bound = Rat(6);
      report.extras["strong_bound_exact"] = "3";
      break;
    }
    case EmbeddingKind::kL1: {
      l1 = std::make_unique<L1Embedding>(code, kappa, l1_opts);
      report.bound = Rat(2);
      report.extras["scale_mode"] =
          l1_opts.scale_mode == ScaleMode::kSeparated ? "separated" : "paper_exact";
      report.extras["grid_base"] = std::to_string(l1->grid_base());
      break;
    }
    case EmbeddingKind::kEsa: {
      esa = std::make_unique<EsaEmbedding>(code, kappa, esa_opts);
      long long b = 1;
      for (int i = 0; i < 2 * esa->p_w() + 1; ++i) b *= 2;
      report.bound = Rat(b);
      report.extras["p_w"] = std::to_string(esa->p_w());
      report.extras["p_w_convention"] =
          esa_opts.convention == PwConvention::kPositive ? "positive" : "include_zero";
      break;
    }
  }

  bool have_ratio = false;
  Rat cmin, cmax;
  bool comparable_equality = true;
  bool strong_linf = true;
  for (auto [i, j] : pairs) {
    const Vertex& u = verts[i];
    const Vertex& v = verts[j];
    int d = dist_formula(code, u, v);
    Rat e;
    switch (kind) {
      case EmbeddingKind::kLinf:
        e = Rat(dist_linf(linf_images[i], linf_images[j]));
        break;
      case EmbeddingKind::kL1:
        e = l1->dist(u, v);
        break;
      case EmbeddingKind::kEsa:
        e = esa->dist(u, v);
        break;
    }
    Rat ratio = e / Rat(d);
    if (!have_ratio) {
      cmin = cmax = ratio;
      have_ratio = true;
    } else {
      if (ratio < cmin) cmin = ratio;
      if (cmax < ratio) cmax = ratio;
    }
    if (updown(code, u, v) && ratio != Rat(1)) comparable_equality = false;
    if (kind == EmbeddingKind::kLinf && ratio * Rat(3) < Rat(1)) strong_linf = false;
  }
  if (!have_ratio) {
    cmin = cmax = Rat(1);
    comparable_equality = true;
  }
  report.c1 = cmin;
  report.c2 = cmax;
  report.distortion = cmax / cmin;
  report.comparable_equality = comparable_equality;
  bool per_pair = cmax <= Rat(1) && Rat(1) <= cmin * report.bound;
  report.pass = per_pair && comparable_equality &&
                report.distortion <= report.bound;
  if (kind == EmbeddingKind::kLinf)
    report.extras["strong_bound_holds"] = strong_linf ? "true" : "false";

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json DistortionReport::to_json() const {
  nlohmann::json j;
  j["code"] = code;
  j["kappa"] = kappa;
  j["embedding"] = embedding;
  j["pairs"] = pairs;
  j["pair_count"] = pair_count;
  j["vertices"] = vertices;
  j["c1"] = c1.to_decimal();
  j["c1_exact"] = rat_field(c1);
  j["c2"] = c2.to_decimal();
  j["c2_exact"] = rat_field(c2);
  j["distortion"] = distortion.to_decimal();
  j["distortion_exact"] = rat_field(distortion);
  j["bound"] = bound.to_decimal();
  j["bound_exact"] = rat_field(bound);
  j["comparable_equality"] = comparable_equality;
  j["pass"] = pass;
  if (!extras.empty()) j["extras"] = extras;
  j["meta"] = {{"seconds", seconds}, {"tool", "bundle"}};
  return j;
}

DistortionReport DistortionReport::from_json(const nlohmann::json& j) {
  DistortionReport r;
  r.code = j.at("code").get<std::string>();
  r.kappa = j.at("kappa").get<int>();
  r.embedding = j.at("embedding").get<std::string>();
  r.pairs = j.at("pairs").get<std::string>();
  r.pair_count = j.at("pair_count").get<long long>();
  r.vertices = j.at("vertices").get<long long>();
  r.c1 = Rat::parse(j.at("c1_exact").get<std::string>());
  r.c2 = Rat::parse(j.at("c2_exact").get<std::string>());
  r.distortion = Rat::parse(j.at("distortion_exact").get<std::string>());
  r.bound = Rat::parse(j.at("bound_exact").get<std::string>());
  r.comparable_equality = j.at("comparable_equality").get<bool>();
  r.pass = j.at("pass").get<bool>();
  if (j.contains("extras"))
    r.extras = j.at("extras").get<std::map<std::string, std::string>>();
  if (j.contains("meta") && j.at("meta").contains("seconds"))
    r.seconds = j.at("meta").at("seconds").get<double>();
  return r;
}

bool DistortionReport::operator==(const DistortionReport& o) const {
  return code == o.code && kappa == o.kappa && embedding == o.embedding &&
         pairs == o.pairs && pair_count == o.pair_count && vertices == o.vertices &&
         c1 == o.c1 && c2 == o.c2 && distortion == o.distortion && bound == o.bound &&
         comparable_equality == o.comparable_equality && pass == o.pass &&
         extras == o.extras;
}

std::string DistortionReport::csv_header() {
  return "code,kappa,k,embedding,distortion_exact,bound_exact,vertices,seconds";
}

std::string DistortionReport::csv_row(int family_index) const {
  std::ostringstream out;
  out << '"' << code << "\"," << kappa << ',' << family_index << ',' << embedding
      << ',' << distortion.to_string() << ',' << bound.to_string() << ',' << vertices
      << ',' << seconds;
  return out.str();
}

namespace {

struct SuiteRun {
  SuiteResult result;
  void record(bool ok, const std::string& what) {
    ++result.cases;
    if (!ok && result.pass) {
      result.pass = false;
      result.first_failure = what;
    }
  }
};

void metric_oracle_suite(const Corpus& corpus, const EvalOptions& opts, SuiteRun& run) {
  for (const Code& code : corpus.codes) {
    for (int kappa : corpus.kappas) {
      BundleGraph graph(code, kappa, opts.vertex_limit);
      const auto& verts = graph.vertices();
      int n = graph.vertex_count();
      // All-pairs BFS distances.
      std::vector<std::vector<int>> bfs(n);
      for (int s = 0; s < n; ++s) {
        std::vector<int>& dist = bfs[s];
        dist.assign(n, -1);
        std::vector<int> queue{s};
        dist[s] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
          int cur = queue[head];
          for (int next : graph.adjacency()[cur])
            if (dist[next] < 0) {
              dist[next] = dist[cur] + 1;
              queue.push_back(next);
            }
        }
      }
      std::vector<std::vector<int>> formula(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          formula[i][j] = i == j ? 0 : dist_formula(code, verts[i], verts[j]);
      std::string tag = code.to_string() + " kappa=" + std::to_string(kappa);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          run.record(formula[i][j] == bfs[i][j],
                     "formula != bfs on " + tag + " " + verts[i].to_string() + " " +
                         verts[j].to_string());
          run.record(formula[i][j] == formula[j][i], "asymmetry on " + tag);
          run.record(formula[i][j] >= std::abs(verts[i].height - verts[j].height),
                     "below height gap on " + tag);
        }
      }
      for (int i = 0; i < n; ++i)
        for (int j : graph.adjacency()[i])
          run.record(formula[i][j] == 1, "adjacent pair not at distance 1 on " + tag);
      // Triangle inequality, exhaustive.
      bool triangle = true;
      for (int i = 0; i < n && triangle; ++i)
        for (int j = 0; j < n && triangle; ++j)
          for (int k = 0; k < n; ++k)
            if (formula[i][j] > formula[i][k] + formula[k][j]) {
              triangle = false;
              break;
            }
      run.record(triangle, "triangle inequality fails on " + tag);
    }
  }
}

void lemma_l1_suite(const Corpus& corpus, const EvalOptions& opts, SuiteRun& run) {
  for (const Code& code : corpus.codes) {
    for (int kappa : corpus.kappas) {
      L1Embedding emb(code, kappa, opts.l1);
      std::string tag = code.to_string() + " kappa=" + std::to_string(kappa);
      run.record(emb.violations().empty(),
                 "level identities: " + (emb.violations().empty()
                                             ? ""
                                             : emb.violations().front()) +
                     " on " + tag);
      auto proportionality = emb.check_selection_proportionality();
      run.record(proportionality.empty(),
                 (proportionality.empty() ? std::string("ok")
                                          : proportionality.front()) +
                     " on " + tag);
      const auto& verts = emb.vertices();
      for (size_t i = 0; i < verts.size(); ++i) {
        for (size_t j = i + 1; j < verts.size(); ++j) {
          const Vertex& u = verts[i];
          const Vertex& v = verts[j];
          Rat lam = emb.intersection_measure(u, v);
          Rat expected;
          if (updown(code, u, v)) {
            expected = Rat(std::min(u.height, v.height));
          } else {
            auto [nn, mm] = nm(code, u, v);
            expected = Rat(nn) + Rat((long long)(u.height - nn) * (v.height - nn),
                                     mm - nn);
          }
          run.record(lam == expected, "intersection measure off on " + tag + " " +
                                          u.to_string() + " " + v.to_string());
          Rat dist = emb.vertex_measure(u) + emb.vertex_measure(v) - Rat(2) * lam;
          Rat d((long long)dist_formula(code, u, v));
          run.record(Rat(2) * dist >= d && dist <= d,
                     "l1 bounds off on " + tag + " " + u.to_string() + " " +
                         v.to_string());
          if (updown(code, u, v))
            run.record(dist == d, "comparable pair not isometric on " + tag);
        }
      }
    }
  }
}

void lemma_esa_suite(const Corpus& corpus, const EvalOptions& opts, SuiteRun& run) {
  for (const Code& code : corpus.codes) {
    for (int kappa : corpus.kappas) {
      EsaEmbedding emb(code, kappa, opts.esa);
      std::string tag = code.to_string() + " kappa=" + std::to_string(kappa);
      auto failures = emb.check_level_identities();
      run.record(failures.empty(),
                 (failures.empty() ? std::string("ok") : failures.front()) + " on " +
                     tag);
      run.record(emb.eta() == Rat(1), "eta != 1 on " + tag);
      // Bernoulli family: exact halves and independence on small tuples.
      const BernoulliFamily& fam = emb.family();
      for (int i = 1; i <= fam.mu(); ++i) {
        long long ones = 0;
        for (long long j = 1; j <= fam.points(); ++j) ones += fam.value(i, j);
        run.record(2 * ones == fam.points(), "selector not balanced on " + tag);
      }
      for (int i1 = 1; i1 <= fam.mu(); ++i1)
        for (int i2 = i1 + 1; i2 <= fam.mu(); ++i2)
          for (int i3 = i2 + 1; i3 <= std::min(fam.mu(), i2 + 3); ++i3)
            for (int bits = 0; bits < 8; ++bits) {
              long long count = 0;
              for (long long j = 1; j <= fam.points(); ++j) {
                bool match = fam.value(i1, j) == ((bits & 1) != 0) &&
                             fam.value(i2, j) == ((bits & 2) != 0) &&
                             fam.value(i3, j) == ((bits & 4) != 0);
                count += match;
              }
              run.record(8 * count == fam.points(),
                         "selector triple not independent on " + tag);
            }
      const auto& verts = emb.vertices();
      long long bound = 1;
      for (int i = 0; i < 2 * emb.p_w() + 1; ++i) bound *= 2;
      for (size_t i = 0; i < verts.size(); ++i) {
        for (size_t j = i + 1; j < verts.size(); ++j) {
          const Vertex& u = verts[i];
          const Vertex& v = verts[j];
          Rat e = emb.dist(u, v);
          Rat d((long long)dist_formula(code, u, v));
          run.record(e <= d && e * Rat(bound) >= d,
                     "esa bounds off on " + tag + " " + u.to_string() + " " +
                         v.to_string());
          if (updown(code, u, v)) {
            run.record(e == d, "comparable pair not isometric on " + tag + " " +
                                   u.to_string() + " " + v.to_string());
          } else {
            std::string diag;
            run.record(emb.separation_check(u, v, &diag),
                       "separation check: " + diag + " on " + tag);
          }
        }
      }
    }
  }
}

void products_suite(const Corpus& corpus, const EvalOptions& opts, SuiteRun& run) {
  (void)opts;
  // Closed-form bracket identities and the p-parameter inequality over
  // all corpus code pairs.
  for (const Code& w : corpus.codes) {
    for (const Code& wp : corpus.codes) {
      std::pair<int, int> cx;
      run.record(check_composed_xy(w, wp, &cx),
                 "composed brackets off for " + w.to_string() + " @ " +
                     wp.to_string() + " at r=" + std::to_string(cx.first) +
                     " i=" + std::to_string(cx.second));
      Code composed = oslash(w, wp);
      // Positive convention only: with the i = 0 bracket included the
      // no-growth inequality is false (e.g. 0,0,1,0 composed with 0,1,0).
      auto conv = PwConvention::kPositive;
      int pw = p_param(w, conv), pwp = p_param(wp, conv), pc = p_param(composed, conv);
      run.record(pc <= std::max(pw, pwp),
                 "p parameter grew under composition for " + w.to_string() + " @ " +
                     wp.to_string());
    }
  }
  // Explicit isomorphism checks on the named generators.
  std::vector<Code> named = {Code({0, 1, 0}), Code({0, 0, 1, 0, 0}), Code({0, 0, 1, 0})};
  for (const Code& base : named) {
    std::string diag;
    for (int n = 0; n < base.height(); ++n)
      run.record(verify_oslash_n(base, base, n, 2, &diag),
                 "level isomorphism fails for " + base.to_string() + " at n=" +
                     std::to_string(n) + ": " + diag);
    run.record(verify_oslash(base, base, 2, &diag),
               "full isomorphism fails for " + base.to_string() + ": " + diag);
  }
}

void bounds_suite(const Corpus& corpus, const EvalOptions& opts, SuiteRun& run) {
  for (const Code& code : corpus.codes) {
    for (int kappa : corpus.kappas) {
      for (EmbeddingKind kind :
           {EmbeddingKind::kLinf, EmbeddingKind::kL1, EmbeddingKind::kEsa}) {
        if (kind == EmbeddingKind::kEsa && code.maxdepth() > 2) continue;
        DistortionReport report =
            evaluate(kind, code, kappa, PairPolicy::all_pairs(), opts);
        run.record(report.pass, embedding_name(kind) + " bounds fail on " +
                                    code.to_string() + " kappa=" +
                                    std::to_string(kappa));
      }
    }
  }
}

}  // namespace

std::vector<SuiteResult> run_suite(const Corpus& corpus,
                                   const std::set<std::string>& suites,
                                   const EvalOptions& opts) {
  std::vector<SuiteResult> out;
  for (const std::string& name : suites) {
    SuiteRun run;
    run.result.name = name;
    if (name == "metric_oracle")
      metric_oracle_suite(corpus, opts, run);
    else if (name == "lemma_l1")
      lemma_l1_suite(corpus, opts, run);
    else if (name == "lemma_esa")
      lemma_esa_suite(corpus, opts, run);
    else if (name == "products")
      products_suite(corpus, opts, run);
    else if (name == "bounds")
      bounds_suite(corpus, opts, run);
    else
      throw std::invalid_argument("unknown suite '" + name + "'");
    run.result.vacuous = run.result.cases == 0;
    out.push_back(run.result);
  }
  return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace bundle
