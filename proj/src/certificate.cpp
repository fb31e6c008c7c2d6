#include "turan_forge/certificate.hpp"

#include <algorithm>
#include <map>

#include "turan_forge/errors.hpp"

namespace tf {

EmbeddingCertificate EmbeddingCertificate::for_pattern(const Pattern& p, const std::vector<int>& host_of,
                                                       Json method) {
  if (static_cast<int>(host_of.size()) != p.graph.n()) throw IntegrityError("mapping size differs from the pattern");
  EmbeddingCertificate c;
  c.spec = p.spec;
  for (const auto& [label, v] : p.labels) c.mapping.emplace_back(label, host_of[v]);
  c.method = std::move(method);
  return c;
}

EmbeddingCertificate EmbeddingCertificate::for_graph(const Graph& pattern, const std::vector<int>& host_of,
                                                     Json method) {
  if (static_cast<int>(host_of.size()) != pattern.n()) throw IntegrityError("mapping size differs from the pattern");
  EmbeddingCertificate c;
  c.pattern_n = pattern.n();
  c.pattern_edges = pattern.edges();
  for (int v = 0; v < pattern.n(); ++v) c.mapping.emplace_back(std::to_string(v), host_of[v]);
  c.method = std::move(method);
  return c;
}

CertificateCheck verify_certificate(const Graph& host, const EmbeddingCertificate& cert) {
  CertificateCheck r;
  auto fail = [&](std::string m) {
    r.ok = false;
    r.message = std::move(m);
    return r;
  };
  Graph pg;
  std::map<std::string, int> label_vertex;
  if (cert.spec) {
    Pattern p;
    try {
      p = pattern(*cert.spec);
    } catch (const InputError& e) {
      return fail(std::string("invalid pattern: ") + e.what());
    }
    pg = p.graph;
    for (const auto& [label, v] : p.labels) label_vertex[label] = v;
  } else {
    try {
      pg = build_graph(cert.pattern_n, cert.pattern_edges);
    } catch (const InputError& e) {
      return fail(std::string("invalid pattern graph: ") + e.what());
    }
    for (int v = 0; v < pg.n(); ++v) label_vertex[std::to_string(v)] = v;
  }
  std::vector<int> image(pg.n(), -1);
  for (const auto& [label, h] : cert.mapping) {
    auto it = label_vertex.find(label);
    if (it == label_vertex.end()) return fail("unknown pattern label " + label);
    if (h < 0 || h >= host.n()) return fail("label " + label + " maps outside the host");
    if (host.deleted(h)) return fail("label " + label + " maps to a deleted host vertex");
    int& slot = image[it->second];
    if (slot >= 0 && slot != h) return fail("labels of one pattern vertex disagree at " + label);
    slot = h;
  }
  std::map<int, int> preimage;
  for (int v = 0; v < pg.n(); ++v) {
    if (image[v] < 0) return fail("pattern vertex " + std::to_string(v) + " is unmapped");
    auto [it, fresh] = preimage.emplace(image[v], v);
    if (!fresh)
      return fail("host vertex " + std::to_string(image[v]) + " is used twice (not injective)");
  }
  for (auto [a, b] : pg.edges())
    if (!host.adjacent(image[a], image[b]))
      return fail("pattern edge " + std::to_string(a) + "-" + std::to_string(b) + " maps to non-edge " +
                  std::to_string(image[a]) + "-" + std::to_string(image[b]));
  return r;
}

Json spec_to_json(const PatternSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case PatternKind::grid:
    case PatternKind::prism_path: j["t"] = spec.a; break;
    case PatternKind::prism:
    case PatternKind::even_cycle: j["ell"] = spec.a; break;
    default:
      j["k"] = spec.a;
      j["ell"] = spec.b;
  }
  return j;
}

PatternSpec spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("pattern needs a 'kind'");
  PatternSpec s;
  s.kind = pattern_kind_from_string(j.at("kind").get<std::string>());
  auto num = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
      throw InputError(std::string("pattern needs integer '") + key + "'");
    return j.at(key).get<int>();
  };
  switch (s.kind) {
    case PatternKind::grid:
    case PatternKind::prism_path: s.a = num("t"); break;
    case PatternKind::prism:
    case PatternKind::even_cycle: s.a = num("ell"); break;
    default:
      s.a = num("k");
      s.b = num("ell");
  }
  s.validate();
  return s;
}

Json to_json(const EmbeddingCertificate& cert) {
  Json j;
  if (cert.spec) {
    j["pattern"] = spec_to_json(*cert.spec);
  } else {
    Json p;
    p["kind"] = "graph";
    p["n"] = cert.pattern_n;
    Json edges = Json::array();
    for (auto [a, b] : cert.pattern_edges) edges.push_back({a, b});
    p["edges"] = edges;
    j["pattern"] = p;
  }
  Json m = Json::array();
  for (const auto& [label, h] : cert.mapping) m.push_back({label, h});
  j["mapping"] = m;
  j["method"] = cert.method;
  return j;
}

EmbeddingCertificate certificate_from_json(const Json& j) {
  try {
    EmbeddingCertificate c;
    const Json& p = j.at("pattern");
    if (p.at("kind").get<std::string>() == "graph") {
      c.pattern_n = p.at("n").get<int>();
      for (const auto& e : p.at("edges")) c.pattern_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    } else {
      c.spec = spec_from_json(p);
    }
    for (const auto& m : j.at("mapping")) c.mapping.emplace_back(m.at(0).get<std::string>(), m.at(1).get<int>());
    if (j.contains("method")) c.method = j.at("method");
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace tf
