#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bundle/embed_esa.hpp"
#include "bundle/embed_l1.hpp"
#include "bundle/embed_linf.hpp"
#include "bundle/graph.hpp"
#include "bundle/harness.hpp"
#include "bundle/products.hpp"

namespace {

using namespace bundle;

int g_exit = 0;
bool g_json_errors = false;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open --out path " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
}

ScaleMode parse_scale_mode(const std::string& name) {
  if (name == "separated") return ScaleMode::kSeparated;
  if (name == "paper_exact") return ScaleMode::kPaperExact;
  throw std::invalid_argument("scale mode must be separated or paper_exact");
}

PwConvention parse_convention(const std::string& name) {
  if (name == "positive") return PwConvention::kPositive;
  if (name == "include_zero") return PwConvention::kIncludeZero;
  throw std::invalid_argument("p_w convention must be positive or include_zero");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bundle graph coding, metric, and embedding toolkit"};
  app.require_subcommand(1);
  app.add_flag("--json-errors", g_json_errors, "report errors as JSON on stderr");

  std::string w_str, w2_str, u_str, v_str, out_path, format = "json";
  std::string embedding = "l1", pairs = "all", scale_mode = "separated";
  std::string convention = "positive", suites_str = "metric_oracle";
  std::string kappas_str = "2", vertex_str;
  int kappa = 2, n_level = -1, family_k = 1, max_height = 4, max_depth = 1;
  bool do_bfs = false, do_dump = false, do_check = false;
  std::uint64_t vertex_limit = 1000000;

  auto* graph_cmd = app.add_subcommand("graph", "materialize a bundle graph");
  graph_cmd->add_option("--w", w_str, "depth word, comma separated")->required();
  graph_cmd->add_option("--kappa", kappa, "branching number");
  graph_cmd->add_option("--limit", vertex_limit, "vertex count guard");
  graph_cmd->add_flag("--dump", do_dump, "print vertices and edges");

  auto* dist_cmd = app.add_subcommand("dist", "distance between two vertices");
  dist_cmd->add_option("--w", w_str)->required();
  dist_cmd->add_option("--u", u_str, "vertex r:(a1,a2,...)")->required();
  dist_cmd->add_option("--v", v_str, "vertex r:(a1,a2,...)")->required();
  dist_cmd->add_option("--kappa", kappa, "branching number for the BFS oracle");
  dist_cmd->add_flag("--bfs", do_bfs, "also run the BFS oracle and compare");

  auto* embed_cmd = app.add_subcommand("embed", "build an embedding and dump images");
  embed_cmd->add_option("--w", w_str)->required();
  embed_cmd->add_option("--kappa", kappa);
  embed_cmd->add_option("--embedding", embedding, "linf | l1 | esa");
  embed_cmd->add_option("--scale-mode", scale_mode, "separated | paper_exact");
  embed_cmd->add_option("--pw-convention", convention, "positive | include_zero");
  embed_cmd->add_option("--vertex", vertex_str, "dump a single vertex only");
  embed_cmd->add_option("--out", out_path);

  auto* verify_cmd = app.add_subcommand("verify", "distortion report for one code");
  verify_cmd->add_option("--w", w_str)->required();
  verify_cmd->add_option("--kappa", kappa);
  verify_cmd->add_option("--embedding", embedding, "linf | l1 | esa");
  verify_cmd->add_option("--pairs", pairs, "all | sample:N:SEED");
  verify_cmd->add_option("--format", format, "json | csv");
  verify_cmd->add_option("--out", out_path);
  verify_cmd->add_option("--scale-mode", scale_mode);
  verify_cmd->add_option("--pw-convention", convention);
  verify_cmd->add_option("--limit", vertex_limit);

  auto* suite_cmd = app.add_subcommand("suite", "run invariant suites over a corpus");
  suite_cmd->add_option("--max-height", max_height, "largest graph height");
  suite_cmd->add_option("--max-depth", max_depth, "largest depth entry");
  suite_cmd->add_option("--kappas", kappas_str, "comma separated branching numbers");
  suite_cmd->add_option("--suites", suites_str,
                        "comma separated: metric_oracle,lemma_l1,lemma_esa,products,bounds");
  suite_cmd->add_option("--format", format, "json | text");
  suite_cmd->add_option("--scale-mode", scale_mode);
  suite_cmd->add_option("--pw-convention", convention);

  auto* oslash_cmd = app.add_subcommand("oslash", "compose codes by edge replacement");
  oslash_cmd->add_option("--w", w_str)->required();
  oslash_cmd->add_option("--w2", w2_str)->required();
  oslash_cmd->add_option("--n", n_level, "replace only level n (default: all)");
  oslash_cmd->add_option("--kappa", kappa, "branching for --check");
  oslash_cmd->add_flag("--check", do_check, "verify the isomorphism explicitly");

  auto* family_cmd = app.add_subcommand("family", "iterate the self-product");
  family_cmd->add_option("--w", w_str)->required();
  family_cmd->add_option("--k", family_k, "family index (1 = the base)");
  family_cmd->add_option("--embedding", embedding,
                         "evaluate members 1..k, emit CSV (with --format csv)");
  family_cmd->add_option("--format", format, "plain | csv");
  family_cmd->add_option("--kappa", kappa);
  family_cmd->add_option("--out", out_path);

  auto* pw_cmd = app.add_subcommand("pw", "the bracket parameter, both conventions");
  pw_cmd->add_option("--w", w_str)->required();
  pw_cmd->add_option("--format", format, "json | plain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (graph_cmd->parsed()) {
      Code code = Code::parse(w_str);
      BundleGraph graph(code, kappa, vertex_limit);
      std::cout << "vertices " << graph.vertex_count() << "\n"
                << "edges " << graph.edge_count() << "\n";
      if (do_dump) std::cout << graph.dump();
    } else if (dist_cmd->parsed()) {
      Code code = Code::parse(w_str);
      Vertex u = Vertex::parse(u_str), v = Vertex::parse(v_str);
      int d = dist_formula(code, u, v);
      std::cout << d << "\n";
      if (do_bfs) {
        BundleGraph graph(code, kappa, vertex_limit);
        int b = dist_bfs(graph, u, v);
        if (b != d) {
          std::cerr << "bfs disagrees: " << b << "\n";
          return 1;
        }
        std::cout << "bfs " << b << "\n";
      }
    } else if (embed_cmd->parsed()) {
      Code code = Code::parse(w_str);
      std::ostringstream out;
      EmbeddingKind kind = parse_embedding(embedding);
      std::vector<Vertex> wanted;
      if (!vertex_str.empty()) wanted.push_back(Vertex::parse(vertex_str));
      if (kind == EmbeddingKind::kLinf) {
        BundleGraph graph(code, kappa, vertex_limit);
        auto verts = vertex_str.empty() ? graph.vertices() : wanted;
        for (const Vertex& v : verts) {
          out << v.to_string() << " ->";
          for (const auto& [node, c] : psi_linf(code, v).coeff)
            out << " " << address_to_string(node) << ":" << c;
          out << "\n";
        }
      } else if (kind == EmbeddingKind::kL1) {
        L1Options opts;
        opts.scale_mode = parse_scale_mode(scale_mode);
        L1Embedding emb(code, kappa, opts);
        auto verts = vertex_str.empty() ? emb.vertices() : wanted;
        for (const Vertex& v : verts) {
          out << v.to_string() << " measure " << emb.vertex_measure(v).to_string()
              << "\n";
          out << emb.vertex_set(v).dump();
        }
      } else {
        EsaOptions opts;
        opts.convention = parse_convention(convention);
        EsaEmbedding emb(code, kappa, opts);
        auto verts = vertex_str.empty() ? emb.vertices() : wanted;
        for (const Vertex& v : verts) {
          out << v.to_string() << " ->";
          for (auto [pos, coeff] : emb.psi(v).entries)
            out << " " << pos << ":" << (coeff > 0 ? "+" : "") << coeff;
          out << "\n";
        }
      }
      emit(out.str(), out_path);
    } else if (verify_cmd->parsed()) {
      Code code = Code::parse(w_str);
      EvalOptions opts;
      opts.vertex_limit = vertex_limit;
      opts.l1.scale_mode = parse_scale_mode(scale_mode);
      opts.esa.convention = parse_convention(convention);
      DistortionReport report = evaluate(parse_embedding(embedding), code, kappa,
                                         PairPolicy::parse(pairs), opts);
      if (format == "json") {
        emit(report.to_json().dump(2), out_path);
      } else if (format == "csv") {
        emit(DistortionReport::csv_header() + "\n" + report.csv_row(), out_path);
      } else {
        throw std::invalid_argument("format must be json or csv");
      }
      return report.pass ? 0 : 1;
    } else if (suite_cmd->parsed()) {
      EvalOptions opts;
      opts.l1.scale_mode = parse_scale_mode(scale_mode);
      opts.esa.convention = parse_convention(convention);
      Corpus corpus = Corpus::generate(max_height, max_depth, parse_int_list(kappas_str));
      std::set<std::string> suites;
      {
        std::stringstream ss(suites_str);
        std::string item;
        while (std::getline(ss, item, ',')) suites.insert(item);
      }
      auto results = run_suite(corpus, suites, opts);
      if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const SuiteResult& r : results)
          j.push_back({{"suite", r.name},
                       {"cases", r.cases},
                       {"vacuous", r.vacuous},
                       {"pass", r.pass},
                       {"first_failure", r.first_failure}});
        std::cout << j.dump(2) << "\n";
      } else {
        for (const SuiteResult& r : results)
          std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL") << " ("
                    << r.cases << " cases" << (r.vacuous ? ", vacuous" : "")
                    << ")" << (r.pass ? "" : " first failure: " + r.first_failure)
                    << "\n";
      }
      return all_passed(results) ? 0 : 1;
    } else if (oslash_cmd->parsed()) {
      Code w = Code::parse(w_str), w2 = Code::parse(w2_str);
      Code composed = n_level >= 0 ? oslash_n(w, w2, n_level) : oslash(w, w2);
      std::cout << composed.to_string() << "\n";
      if (do_check) {
        std::string diag;
        bool ok = n_level >= 0 ? verify_oslash_n(w, w2, n_level, kappa, &diag)
                               : verify_oslash(w, w2, kappa, &diag);
        if (!ok) {
          std::cerr << "isomorphism check failed: " << diag << "\n";
          return 1;
        }
        std::cout << "isomorphism ok\n";
      }
    } else if (family_cmd->parsed()) {
      Code base = Code::parse(w_str);
      if (format == "csv") {
        EvalOptions opts;
        std::ostringstream out;
        out << DistortionReport::csv_header() << "\n";
        for (int k = 1; k <= family_k; ++k) {
          Code member = family_code(base, k);
          DistortionReport report = evaluate(parse_embedding(embedding), member,
                                             kappa, PairPolicy::all_pairs(), opts);
          out << report.csv_row(k) << "\n";
        }
        emit(out.str(), out_path);
      } else {
        emit(family_code(base, family_k).to_string(), out_path);
      }
    } else if (pw_cmd->parsed()) {
      Code code = Code::parse(w_str);
      int positive = p_param(code, PwConvention::kPositive);
      int with_zero = p_param(code, PwConvention::kIncludeZero);
      if (format == "json") {
        nlohmann::json j{{"code", code.to_string()},
                         {"positive", positive},
                         {"include_zero", with_zero}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "positive " << positive << "\n"
                  << "include_zero " << with_zero << "\n";
      }
    }
  } catch (const std::exception& e) {
    if (g_json_errors) {
      nlohmann::json j{{"error", e.what()}};
      std::cerr << j.dump() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
  return g_exit;
}
