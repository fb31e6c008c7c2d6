// turan-forge: command line front end for the library.
//
// Exit statuses: 0 found/ok, 1 input or resource error, 2 integrity error,
// 3 honest not-found.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "turan_forge/collections.hpp"
#include "turan_forge/counting.hpp"
#include "turan_forge/embedders.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/oracle.hpp"
#include "turan_forge/pipeline.hpp"
#include "turan_forge/transforms.hpp"

using namespace tf;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  bool json = false;
};

void write_text(const Globals& gl, const std::string& data) {
  if (gl.out.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream f(gl.out);
  if (!f) throw InputError("cannot write " + gl.out);
  f << data;
}

std::string graph_text(const Graph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

std::string collection_text(const LabeledCollection& c) {
  std::ostringstream s;
  write_collection(s, c);
  return s.str();
}

// Caps and budgets are given as floats so that 1e8 parses.
std::uint64_t as_count(double v, const char* flag) {
  if (!(v >= 0) || v != std::floor(v) || v >= 1.8e19) throw InputError(std::string(flag) + " must be a non-negative integer");
  return std::uint64_t(v);
}

Graph load_host(const std::string& path) {
  if (path.empty()) throw InputError("--host is required");
  return read_edge_list_file(path);
}

// c<m> cycle, k<m> complete, p<m> path, or an edge-list file.
Graph load_pattern(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'c' || name[0] == 'k' || name[0] == 'p') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int m = std::stoi(name.substr(1));
    if (name[0] == 'c') return cycle_graph(m);
    if (name[0] == 'k') return complete_graph(m);
    return path_graph(m);
  }
  return read_edge_list_file(name);
}

Json cert_json(const EmbedResult& r) {
  Json j{{"found", r.found}};
  if (r.found) j["certificate"] = to_json(r.certificate);
  else j["reason"] = r.reason;
  j["diagnostics"] = r.diagnostics;
  return j;
}

int emit_embed(const Globals& gl, const EmbedResult& r) {
  if (r.found) {
    write_text(gl, to_json(r.certificate).dump(2) + "\n");
    if (gl.json && !gl.out.empty()) std::cout << cert_json(r).dump(2) << "\n";
  } else {
    std::cerr << "not found: " << r.reason << "\n";
    if (gl.json) std::cout << cert_json(r).dump(2) << "\n";
  }
  return r.found ? kExitFound : kExitNotFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turan-forge: bipartite Turan constructions, embedders and oracles"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--seed", gl.seed, "base random seed")->capture_default_str();
  app.add_option("--threads", gl.threads, "worker threads")->capture_default_str();
  app.add_option("--out", gl.out, "output file (default: stdout)");
  app.add_flag("--json", gl.json, "print a JSON summary on stdout");
  app.fallthrough();

  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a host or pattern graph");
  std::string gen_kind;
  int g_n = 0, g_q = 0, g_a = 0, g_b = 0, g_t = 1, g_k = 0, g_ell = 0;
  double g_p = 0.0;
  bool g_bip = false;
  std::string g_pattern;
  gen->add_option("generator", gen_kind, "gnp | polarity | complete | complete-bipartite | cycle | path | pattern")
      ->required();
  gen->add_option("--n", g_n);
  gen->add_option("--p", g_p);
  gen->add_flag("--bipartite", g_bip);
  gen->add_option("--q", g_q);
  gen->add_option("--a", g_a);
  gen->add_option("--b", g_b);
  gen->add_option("--kind,--pattern", g_pattern, "pattern kind for 'gen pattern'");
  gen->add_option("--t", g_t);
  gen->add_option("--k", g_k);
  gen->add_option("--ell", g_ell);
  gen->callback([&] {
    action = [&]() -> int {
      Graph g;
      Json extra = Json::object();
      if (gen_kind == "gnp") g = random_graph(g_n, g_p, gl.seed, g_bip);
      else if (gen_kind == "polarity") g = polarity_graph(g_q);
      else if (gen_kind == "complete") g = complete_graph(g_n);
      else if (gen_kind == "complete-bipartite") g = complete_bipartite(g_a, g_b);
      else if (gen_kind == "cycle") g = cycle_graph(g_n);
      else if (gen_kind == "path") g = path_graph(g_n);
      else if (gen_kind == "pattern") {
        Json spec{{"kind", g_pattern}, {"t", g_t}, {"ell", g_ell}, {"k", g_k}};
        const Pattern p = pattern(spec_from_json(spec));
        g = p.graph;
        Json labels = Json::array();
        for (const auto& [label, v] : p.labels) labels.push_back({label, v});
        extra["pattern"] = spec_to_json(p.spec);
        extra["labels"] = labels;
      } else
        throw InputError("unknown generator '" + gen_kind + "'");
      if (gl.json) {
        if (!gl.out.empty()) write_text(gl, graph_text(g));
        Json j{{"stats", stats_to_json(stats_of(g))}};
        j.update(extra);
        std::cout << j.dump(2) << "\n";
      } else {
        write_text(gl, graph_text(g));
      }
      return 0;
    };
  });

  // transform
  auto* tr = app.add_subcommand("transform", "apply a host transform");
  std::string tr_name, tr_host, tr_mode = "fixed";
  double tr_threshold = 0, tr_eps = 0, tr_c = 0, tr_k = 0;
  std::string tr_audit;
  tr->add_option("name", tr_name, "peel | peel-below | half | clean | regularize")->required();
  tr->add_option("--host,--in", tr_host)->required();
  tr->add_option("--audit", tr_audit, "write the transform report JSON here");
  tr->add_option("--mode", tr_mode, "clean: fixed | self");
  tr->add_option("--threshold", tr_threshold);
  tr->add_option("--epsilon", tr_eps);
  tr->add_option("--c", tr_c);
  tr->add_option("--k,--K", tr_k);
  tr->callback([&] {
    action = [&]() -> int {
      Graph g = load_host(tr_host);
      std::string name = tr_name;
      std::replace(name.begin(), name.end(), '-', '_');
      Json step{{"name", name}, {"mode", tr_mode}, {"threshold", tr_threshold},
                {"epsilon", tr_eps}, {"c", tr_c}, {"k", tr_k}};
      TransformReport rep;
      Graph out = apply_transform(g, step, rep);
      if (!tr_audit.empty()) {
        std::ofstream f(tr_audit);
        if (!f) throw InputError("cannot write " + tr_audit);
        f << report_to_json(rep).dump(2) << "\n";
      }
      if (gl.json) {
        if (!gl.out.empty()) write_text(gl, graph_text(out));
        std::cout << report_to_json(rep).dump(2) << "\n";
      } else {
        write_text(gl, graph_text(out));
      }
      return 0;
    };
  });

  // count
  auto* cnt = app.add_subcommand("count", "exact counts");
  std::string c_what, c_host;
  int c_k = 2, c_l = 1, c_ell = 2;
  double c_T = 8, c_C0 = 1;
  double c_cap = double(kDefaultCap);
  cnt->add_option("what", c_what, "hom | homp | path-inequality | c4 | cycles | classify | weights")->required();
  cnt->add_option("--host", c_host)->required();
  cnt->add_option("--k", c_k);
  cnt->add_option("--l", c_l);
  cnt->add_option("--ell", c_ell);
  cnt->add_option("--T", c_T);
  cnt->add_option("--C0", c_C0);
  cnt->add_option("--cap", c_cap);
  cnt->callback([&] {
    action = [&]() -> int {
      Graph g = load_host(c_host);
      Json j;
      if (c_what == "hom" || c_what == "homp") {
        j = {{"k", c_k}, {"hom", to_decimal(hom_path_count(g, c_k))}};
      } else if (c_what == "path-inequality") {
        auto r = check_path_inequality(g, c_k, c_l);
        j = {{"k", c_k}, {"l", c_l}, {"holds", r.holds}, {"lhs", r.lhs}, {"rhs", r.rhs},
             {"hom_long", to_decimal(r.hom_long)}, {"hom_short", to_decimal(r.hom_short)}};
      } else if (c_what == "c4") {
        j = {{"c4", to_decimal(count_c4(g, gl.threads))}};
      } else if (c_what == "cycles") {
        auto r = count_even_cycles(g, c_ell, as_count(c_cap, "--cap"), gl.threads);
        j = {{"ell", c_ell}, {"count", to_decimal(r.count)}, {"truncated", r.truncated}};
      } else if (c_what == "classify") {
        auto r = classify_c4(g, c_T, as_count(c_cap, "--cap"), 0);
        j = {{"threshold", r.threshold}, {"thin", r.thin_count}, {"thick", r.thick_count}, {"truncated", r.truncated}};
      } else if (c_what == "weights") {
        auto r = prism_path_weight_report(g, c_ell, c_C0, as_count(c_cap, "--cap"), gl.threads, 0);
        j = {{"ell", r.ell}, {"C0", r.C0}, {"total_weight", r.total_weight}, {"nice_weight", r.nice_weight},
             {"weight_high_codegree_a", r.weight_high_codegree_a},
             {"weight_high_codegree_b", r.weight_high_codegree_b}, {"weight_rich_tuple", r.weight_rich_tuple},
             {"nice", r.nice}, {"high_codegree_a", r.high_codegree_a}, {"high_codegree_b", r.high_codegree_b},
             {"rich_tuple", r.rich_tuple}, {"copies", r.copies_enumerated}, {"truncated", r.truncated}};
      } else {
        throw InputError("unknown count '" + c_what + "'");
      }
      write_text(gl, j.dump(2) + "\n");
      return 0;
    };
  });

  // build
  auto* bld = app.add_subcommand("build", "build a rich or good collection");
  std::string b_what, b_host;
  int b_k = 3, b_ell = 2, b_alpha = 1;
  double b_C = 1.0;
  std::optional<double> b_L;
  double b_cap = 1e6;
  bld->add_option("what", b_what, "rich-paths | rich-cycles | good-paths")->required();
  bld->add_option("--host", b_host)->required();
  bld->add_option("--k", b_k);
  bld->add_option("--ell", b_ell);
  bld->add_option("--alpha", b_alpha);
  bld->add_option("--C", b_C);
  bld->add_option("--L", b_L);
  bld->add_option("--cap", b_cap);
  bld->callback([&] {
    action = [&]() -> int {
      Graph g = load_host(b_host);
      BuildResult r;
      if (b_what == "rich-paths") r = build_rich_paths(g, b_k, b_alpha, as_count(b_cap, "--cap"));
      else if (b_what == "rich-cycles") r = build_rich_cycles(g, b_ell, b_alpha, as_count(b_cap, "--cap"));
      else if (b_what == "good-paths") r = build_good_paths(g, b_k, b_alpha, b_C, b_L, as_count(b_cap, "--cap"));
      else throw InputError("unknown collection '" + b_what + "'");
      const std::string data = collection_text(r.collection);
      if (gl.json) {
        if (!gl.out.empty()) write_text(gl, data);
        Json j{{"seed_size", r.seed_size}, {"size", r.collection.size()}, {"prune_steps", r.audit.entries.size()}};
        if (r.case_used) j["case_used"] = r.case_used;
        std::cout << j.dump(2) << "\n";
      } else {
        write_text(gl, data);
      }
      return r.collection.empty() ? kExitNotFound : kExitFound;
    };
  });

  // embed
  auto* emb = app.add_subcommand("embed", "run a shifting or tuple-cycle embedder on a collection");
  std::string e_what, e_coll, e_host;
  int e_t = 2, e_k = 2, e_ell = 2, e_restarts = 32, e_branching = 3;
  std::size_t e_starts = 64;
  double e_budget = 1e7;
  emb->add_option("what", e_what, "grid | cylinder | torus | honeycomb")->required();
  emb->add_option("--coll", e_coll)->required();
  emb->add_option("--host", e_host)->required();
  emb->add_option("--t", e_t);
  emb->add_option("--k", e_k);
  emb->add_option("--ell", e_ell);
  emb->add_option("--budget", e_budget);
  emb->add_option("--restarts", e_restarts);
  emb->add_option("--branching", e_branching);
  emb->add_option("--max-starts", e_starts);
  emb->callback([&] {
    action = [&]() -> int {
      Graph g = load_host(e_host);
      LabeledCollection c = read_collection_file(e_coll);
      EmbedResult r;
      if (e_what == "grid") r = embed_grid(c, g, e_t, e_starts);
      else if (e_what == "cylinder") r = embed_cylinder(c, g, e_k, e_ell, e_starts);
      else if (e_what == "honeycomb") r = embed_honeycomb(c, g, e_k, e_ell, e_starts);
      else if (e_what == "torus") {
        SearchOptions so;
        so.budget = as_count(e_budget, "--budget");
        so.seed = gl.seed;
        so.threads = gl.threads;
        so.restarts = e_restarts;
        so.branching = e_branching;
        r = embed_torus(c, g, e_k, e_ell, so);
      } else
        throw InputError("unknown embedder '" + e_what + "'");
      return emit_embed(gl, r);
    };
  });

  // find
  auto* fnd = app.add_subcommand("find", "direct searches on a host");
  std::string f_what, f_host;
  int f_ell = 4, f_t = 2, f_restarts = 32, f_branching = 3, f_thick = 16;
  double f_T = 8, f_budget = 1e7;
  fnd->add_option("what", f_what, "prism | prismpath")->required();
  fnd->add_option("--host", f_host)->required();
  fnd->add_option("--ell", f_ell);
  fnd->add_option("--t", f_t);
  fnd->add_option("--T", f_T);
  fnd->add_option("--budget", f_budget);
  fnd->add_option("--restarts", f_restarts);
  fnd->add_option("--branching", f_branching);
  fnd->add_option("--thick-edges", f_thick);
  fnd->callback([&] {
    action = [&]() -> int {
      Graph g = load_host(f_host);
      if (f_what == "prism") {
        PrismOptions po;
        po.T = f_T;
        po.search.budget = as_count(f_budget, "--budget");
        po.search.seed = gl.seed;
        po.search.threads = gl.threads;
        po.search.restarts = f_restarts;
        po.search.branching = f_branching;
        po.thick_edges = f_thick;
        return emit_embed(gl, find_prism(g, f_ell, po));
      }
      if (f_what == "prismpath") return emit_embed(gl, find_prism_path(g, f_t, as_count(f_budget, "--budget")).embed);
      throw InputError("unknown search '" + f_what + "'");
    };
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "ground-truth searches and checks");
  std::string o_what, o_host, o_pattern, o_cert;
  double o_budget = 1e8;
  int o_n = 4;
  orc->add_option("what", o_what, "find | verify | exmax")->required();
  orc->add_option("--host", o_host);
  orc->add_option("--pattern", o_pattern, "c<m>, k<m>, p<m> or an edge-list file");
  orc->add_option("--cert", o_cert);
  orc->add_option("--budget", o_budget);
  orc->add_option("--n", o_n);
  orc->callback([&] {
    action = [&]() -> int {
      if (o_what == "find") {
        Graph h = load_host(o_host);
        auto r = find_subgraph(h, load_pattern(o_pattern), as_count(o_budget, "--budget"), gl.threads);
        Json j{{"result", to_string(r.stats.kind)}, {"nodes", r.stats.nodes}};
        if (r.found()) j["certificate"] = to_json(r.certificate);
        write_text(gl, j.dump(2) + "\n");
        return r.found() ? kExitFound : kExitNotFound;
      }
      if (o_what == "verify") {
        Graph h = load_host(o_host);
        std::ifstream f(o_cert);
        if (!f) throw InputError("cannot read " + o_cert);
        Json cj;
        try {
          cj = Json::parse(f);
        } catch (const Json::exception& e) {
          throw InputError(std::string("certificate is not JSON: ") + e.what());
        }
        auto check = verify_certificate(h, certificate_from_json(cj));
        write_text(gl, Json{{"ok", check.ok}, {"message", check.message}}.dump(2) + "\n");
        return check.ok ? kExitFound : kExitIntegrity;
      }
      if (o_what == "exmax") {
        auto r = max_edges_exhaustive(o_n, load_pattern(o_pattern.empty() ? "c4" : o_pattern));
        Json edges = Json::array();
        for (auto [a, b] : r.witness.edges()) edges.push_back({a, b});
        write_text(gl, Json{{"n", r.n}, {"max_edges", r.max_edges}, {"classes", r.classes}, {"witness", edges}}
                               .dump(2) + "\n");
        return 0;
      }
      throw InputError("unknown oracle '" + o_what + "'");
    };
  });

  // pipeline
  auto* pip = app.add_subcommand("pipeline", "run a JSON-configured experiment end to end");
  std::string p_config;
  pip->add_option("--config", p_config, "config JSON file")->required();
  pip->callback([&] {
    action = [&]() -> int {
      std::ifstream f(p_config);
      if (!f) throw InputError("cannot read " + p_config);
      Json cfg;
      try {
        cfg = Json::parse(f);
      } catch (const Json::exception& e) {
        throw InputError(std::string("config is not JSON: ") + e.what());
      }
      auto out = run_pipeline(cfg, gl.threads);
      if (out.report.contains("error")) std::cerr << out.report["status"].get<std::string>() << ": "
                                                  << out.report["error"].get<std::string>() << "\n";
      if (!gl.out.empty() || gl.json || !cfg.contains("output")) write_text(gl, out.report.dump(2) + "\n");
      return out.exit_status;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    return action();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitInput;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return kExitIntegrity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}
