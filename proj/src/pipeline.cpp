#include "turan_forge/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "turan_forge/collections.hpp"
#include "turan_forge/embedders.hpp"
#include "turan_forge/errors.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/oracle.hpp"
#include "turan_forge/rng.hpp"

namespace tf {

namespace {

constexpr int kCodegreeCacheMaxN = 5000;

const Json& section(const Json& config, const char* name) {
  static const Json empty = Json::object();
  if (!config.contains(name)) return empty;
  const Json& s = config.at(name);
  if (!s.is_object()) throw InputError(std::string("config section '") + name + "' must be an object");
  return s;
}

double number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw InputError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

double required_number(const Json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw InputError(std::string(where) + " needs '" + key + "'");
  return number(j, key, 0.0);
}

int integer(const Json& j, const char* key, int fallback) {
  double v = number(j, key, fallback);
  if (v != std::floor(v) || std::fabs(v) > 2e9) throw InputError(std::string("'") + key + "' must be an integer");
  return int(v);
}

std::uint64_t u64(const Json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return std::uint64_t(v.get<std::int64_t>());
  const double d = number(j, key, 0.0);
  if (d < 0 || d != std::floor(d) || d >= 1.8e19) throw InputError(std::string("'") + key + "' must be a non-negative integer");
  return std::uint64_t(d);
}

std::string text(const Json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw InputError(std::string("'") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(std::uint64_t(g.n()));
  for (auto [u, v] : g.edges()) mix((std::uint64_t(u) << 32) | std::uint32_t(v));
  for (int v = 0; v < g.n(); ++v)
    if (g.deleted(v)) mix(~std::uint64_t(v));
  return h;
}

}  // namespace

Graph make_host(const Json& spec, std::uint64_t default_seed) {
  if (!spec.is_object()) throw InputError("host must be an object");
  if (spec.contains("file")) return read_edge_list_file(text(spec, "file", ""));
  const std::string gen = text(spec, "generator", "");
  if (gen == "gnp") {
    const int n = integer(spec, "n", -1);
    const double p = required_number(spec, "p", "gnp");
    if (n < 0) throw InputError("gnp needs 'n'");
    if (p < 0 || p > 1) throw InputError("gnp needs 0 <= p <= 1");
    bool bip = spec.contains("bipartite") && spec.at("bipartite").get<bool>();
    return random_graph(n, p, u64(spec, "seed", default_seed), bip);
  }
  if (gen == "polarity") return polarity_graph(integer(spec, "q", -1));
  if (gen == "complete") return complete_graph(integer(spec, "n", -1));
  if (gen == "complete_bipartite") return complete_bipartite(integer(spec, "a", -1), integer(spec, "b", -1));
  if (gen == "cycle") return cycle_graph(integer(spec, "n", -1));
  if (gen == "path") return path_graph(integer(spec, "n", -1));
  throw InputError("unknown host generator '" + gen + "'");
}

Graph apply_transform(const Graph& g, const Json& step, TransformReport& report) {
  if (!step.is_object()) throw InputError("each transform must be an object");
  const std::string name = text(step, "name", "");
  if (name == "peel") {
    auto r = peel_min_degree(g);
    report = r.report;
    return r.graph;
  }
  if (name == "peel_below") {
    auto r = peel_below(g, required_number(step, "threshold", "peel_below"));
    report = r.report;
    return r.graph;
  }
  if (name == "half") {
    auto r = bipartite_half(g);
    report = r.report;
    return r.graph;
  }
  if (name == "clean") {
    const std::string mode = text(step, "mode", "fixed");
    if (mode != "fixed" && mode != "self") throw InputError("clean mode must be 'fixed' or 'self'");
    auto r = clean_subgraph(g, mode == "self" ? CleanMode::self : CleanMode::fixed);
    report = r.report;
    return r.graph;
  }
  if (name == "almost_regular" || name == "regularize") {
    auto r = almost_regular_subgraph(g, required_number(step, "epsilon", "almost_regular"),
                                     required_number(step, "c", "almost_regular"),
                                     required_number(step, "k", "almost_regular"));
    report = r.report;
    return r.graph;
  }
  throw InputError("unknown transform '" + name + "'");
}

Json stats_to_json(const GraphStats& s) {
  return Json{{"n", s.n}, {"e", s.e}, {"d", s.d}, {"min_degree", s.min_degree}, {"max_degree", s.max_degree}};
}

Json report_to_json(const TransformReport& r) {
  return Json{{"name", r.name},
              {"input", stats_to_json(r.input)},
              {"output", stats_to_json(r.output)},
              {"steps", r.steps},
              {"deleted_vertices", r.deleted_vertices.size()},
              {"deleted_edges", r.deleted_edges.size()}};
}

bool prepare_codegrees(Graph& g) {
  if (g.n() > kCodegreeCacheMaxN) return false;
  const char* dir = std::getenv("TURAN_FORGE_CACHE_DIR");
  if (!dir || !*dir) return g.build_codegree_cache(kCodegreeCacheMaxN);
  std::ostringstream name;
  name << "codeg-" << std::hex << graph_hash(g) << std::dec << "-" << g.n() << ".bin";
  const auto path = std::filesystem::path(dir) / name.str();
  const std::size_t cells = std::size_t(g.n()) * g.n();
  if (std::ifstream in{path, std::ios::binary}) {
    std::vector<std::uint16_t> table(cells);
    in.read(reinterpret_cast<char*>(table.data()), std::streamsize(cells * sizeof(std::uint16_t)));
    if (in.gcount() == std::streamsize(cells * sizeof(std::uint16_t))) {
      g.adopt_codegree_table(std::move(table));
      return true;
    }
  }
  if (!g.build_codegree_cache(kCodegreeCacheMaxN)) return false;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) return true;
    const auto* table = g.codegree_table();
    out.write(reinterpret_cast<const char*>(table->data()), std::streamsize(cells * sizeof(std::uint16_t)));
    if (!out) return true;
  }
  std::filesystem::rename(tmp, path, ec);
  return true;
}

namespace {

struct Source {
  std::optional<LabeledCollection> explicit_coll;
  std::optional<HostFamily> implicit_coll;
  const Family& family() const {
    if (explicit_coll) return *explicit_coll;
    return *implicit_coll;
  }
};

bool use_explicit(const std::string& mode, const BigInt& bound, std::uint64_t cap) {
  if (mode == "explicit") return true;
  if (mode == "implicit") return false;
  if (mode != "auto") throw InputError("builder source must be auto, explicit or implicit");
  return bound <= BigInt(cap);
}

Json build_json(const BuildResult& b, int alpha) {
  Json j{{"source", "explicit"},
         {"alpha", alpha},
         {"seed_size", b.seed_size},
         {"size", b.collection.size()},
         {"prune_steps", b.audit.entries.size()}};
  if (b.case_used) {
    j["case_used"] = b.case_used;
    j["high_cherries"] = b.high_cherries;
    j["cherry_bound"] = b.cherry_bound;
    j["L"] = b.L;
    if (b.case_used == 2) {
      j["pivot"] = b.pivot;
      j["seed_weight"] = b.seed_weight;
      j["final_weight"] = b.final_weight;
    }
  }
  return j;
}

EmbedResult run_target(const PatternSpec& spec, Graph& g, const Json& builder, const Json& embedder,
                       std::uint64_t embed_seed, int threads, Json& build_report) {
  const std::uint64_t cap = u64(builder, "cap", 1'000'000);
  const std::string mode = text(builder, "source", "auto");
  const std::size_t max_starts = u64(embedder, "max_starts", 64);
  SearchOptions so;
  so.budget = u64(embedder, "budget", so.budget);
  so.seed = embed_seed;
  so.threads = threads;
  so.restarts = integer(embedder, "restarts", so.restarts);
  so.branching = integer(embedder, "branching", so.branching);

  Source src;
  auto rich = [&](CollectionKind kind, int length, int default_alpha) {
    const int alpha = integer(builder, "alpha", default_alpha);
    const BigInt bound = kind == CollectionKind::path ? path_seed_bound(g, length) : cycle_seed_bound(g, length / 2);
    if (use_explicit(mode, bound, cap)) {
      auto b = kind == CollectionKind::path ? build_rich_paths(g, length, alpha, cap)
                                            : build_rich_cycles(g, length / 2, alpha, cap);
      build_report = build_json(b, alpha);
      build_report["kind"] = to_string(kind);
      build_report["length"] = length;
      src.explicit_coll = std::move(b.collection);
    } else {
      build_report = Json{{"source", "implicit"}, {"kind", to_string(kind)}, {"length", length},
                          {"seed_bound", to_decimal(bound)}};
      src.implicit_coll.emplace(g, kind, length);
    }
  };

  switch (spec.kind) {
    case PatternKind::grid: {
      const int t = spec.a;
      if (t < 2) throw InputError("pipeline grid target needs t >= 2");
      rich(CollectionKind::path, 2 * t - 1, t * t);
      return embed_grid(src.family(), g, t, max_starts);
    }
    case PatternKind::cylinder:
      rich(CollectionKind::cycle, 2 * spec.b, spec.a * spec.b);
      return embed_cylinder(src.family(), g, spec.a, spec.b, max_starts);
    case PatternKind::torus:
      if (two_coloring(g).empty() && g.n() > 0)
        throw InputError("torus target needs a bipartite host; add a 'half' transform");
      rich(CollectionKind::cycle, 2 * spec.b, spec.a * spec.b);
      return embed_torus(src.family(), g, spec.a, spec.b, so);
    case PatternKind::honeycomb: {
      const int k = spec.a, ell = spec.b;
      const int alpha = integer(builder, "alpha", k * ell);
      const BigInt bound = path_seed_bound(g, 2 * k + 1);
      if (use_explicit(mode, bound, cap)) {
        if (!builder.contains("C")) throw InputError("honeycomb with an explicit collection needs builder 'C'");
        std::optional<double> L;
        if (builder.contains("L")) L = number(builder, "L", 0);
        auto b = build_good_paths(g, k, alpha, number(builder, "C", 0), L, cap);
        build_report = build_json(b, alpha);
        build_report["kind"] = "path";
        build_report["length"] = 2 * k + 1;
        const int last = most_common_last_vertex(b.collection);
        build_report["last_vertex"] = last;
        src.explicit_coll = last < 0 ? LabeledCollection(CollectionKind::path, 2 * k, {}, CollectionProperty::good,
                                                         b.collection.alpha())
                                     : restrict_last_vertex(b.collection, last);
        build_report["restricted_size"] = src.explicit_coll->size();
      } else {
        build_report = Json{{"source", "implicit"}, {"kind", "path"}, {"length", 2 * k},
                            {"seed_bound", to_decimal(bound)}};
        src.implicit_coll.emplace(g, CollectionKind::path, 2 * k);
      }
      return embed_honeycomb(src.family(), g, k, ell, max_starts);
    }
    case PatternKind::prism: {
      PrismOptions po;
      po.T = number(embedder, "T", po.T);
      po.search = so;
      po.classify_cap = u64(embedder, "classify_cap", po.classify_cap);
      po.thick_edges = integer(embedder, "thick_edges", po.thick_edges);
      build_report = Json{{"source", "direct"}};
      return find_prism(g, spec.a, po);
    }
    case PatternKind::prism_path: {
      build_report = Json{{"source", "direct"}};
      auto r = find_prism_path(g, spec.a, so.budget);
      return r.embed;
    }
    case PatternKind::even_cycle: {
      build_report = Json{{"source", "direct"}};
      const Pattern p = pattern(spec);
      auto r = find_subgraph(g, p.graph, so.budget, threads);
      EmbedResult e;
      e.diagnostics = Json{{"nodes", r.stats.nodes}, {"search", to_string(r.stats.kind)}};
      if (!r.found()) {
        e.reason = r.absent() ? "no copy exists" : "search budget exhausted";
        return e;
      }
      std::vector<int> host_of(p.graph.n());
      for (const auto& [label, v] : r.certificate.mapping) host_of[std::stoi(label)] = v;
      e.found = true;
      e.certificate = EmbeddingCertificate::for_pattern(p, host_of, Json{{"embedder", "backtracking"}});
      return e;
    }
  }
  throw InputError("unsupported target");
}

}  // namespace

PipelineOutcome run_pipeline(const Json& config, int threads) {
  PipelineOutcome out;
  Json& rep = out.report;
  rep = Json::object();
  Json echo = config;
  if (echo.is_object()) echo.erase("threads");
  rep["config"] = echo;
  auto fail = [&](int status, const std::string& kind, const std::string& msg) {
    out.exit_status = status;
    rep["status"] = kind;
    rep["error"] = msg;
  };
  try {
    if (!config.is_object()) throw InputError("config must be a JSON object");
    const std::uint64_t seed = u64(config, "seed", 1);
    const Json& host_spec = section(config, "host");
    const Json& target_spec = section(config, "target");
    const Json& builder = section(config, "builder");
    const Json& embedder = section(config, "embedder");
    const Json& output = section(config, "output");
    if (host_spec.empty()) throw InputError("config needs a 'host' section");
    if (target_spec.empty()) throw InputError("config needs a 'target' section");
    const PatternSpec spec = spec_from_json(target_spec);

    const std::uint64_t host_seed = u64(host_spec, "seed", derive_seed(seed, 0));
    const std::uint64_t embed_seed = u64(embedder, "seed", derive_seed(seed, 1));
    rep["seeds"] = Json{{"base", seed}, {"host", host_seed}, {"embedder", embed_seed}};

    Graph g = make_host(host_spec, host_seed);
    rep["host"] = stats_to_json(stats_of(g));
    Json steps = Json::array();
    if (config.contains("transforms")) {
      if (!config.at("transforms").is_array()) throw InputError("'transforms' must be an array");
      for (const auto& step : config.at("transforms")) {
        TransformReport tr;
        g = apply_transform(g, step, tr);
        steps.push_back(report_to_json(tr));
      }
    }
    rep["transforms"] = steps;
    prepare_codegrees(g);

    Json build_report;
    EmbedResult res = run_target(spec, g, builder, embedder, embed_seed, threads, build_report);
    rep["builder"] = build_report;
    rep["embedder"] = Json{{"found", res.found}, {"reason", res.reason}, {"diagnostics", res.diagnostics}};
    if (res.found) {
      auto check = verify_certificate(g, res.certificate);
      rep["verification"] = Json{{"ok", check.ok}, {"message", check.message}};
      if (!check.ok) throw IntegrityError("certificate failed verification: " + check.message);
      out.certificate = to_json(res.certificate);
      rep["certificate"] = out.certificate;
      rep["status"] = "found";
      out.exit_status = kExitFound;
    } else {
      rep["status"] = "not_found";
      out.exit_status = kExitNotFound;
    }
    if (output.contains("certificate") && res.found) {
      std::ofstream f(text(output, "certificate", ""));
      if (!f) throw InputError("cannot write certificate file");
      f << out.certificate.dump(2) << "\n";
    }
  } catch (const InputError& e) {
    fail(kExitInput, "input_error", e.what());
  } catch (const ResourceError& e) {
    fail(kExitInput, "resource_error", e.what());
  } catch (const IntegrityError& e) {
    fail(kExitIntegrity, "integrity_error", e.what());
  } catch (const Json::exception& e) {
    fail(kExitInput, "input_error", std::string("config: ") + e.what());
  }
  rep["exit_status"] = out.exit_status;
  if (config.is_object() && config.contains("output") && config.at("output").is_object() &&
      config.at("output").contains("report") && config.at("output").at("report").is_string()) {
    std::ofstream f(config.at("output").at("report").get<std::string>());
    if (f) f << rep.dump(2) << "\n";
  }
  return out;
}

}  // namespace tf
