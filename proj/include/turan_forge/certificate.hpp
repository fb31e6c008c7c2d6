#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "turan_forge/generators.hpp"
#include "turan_forge/graph.hpp"

namespace tf {

using Json = nlohmann::ordered_json;

// A vertex mapping from a pattern into a host. Named patterns are described
// by their PatternSpec and labelled by coordinates; arbitrary patterns carry
// their edge list and are labelled by vertex id.
struct EmbeddingCertificate {
  std::optional<PatternSpec> spec;
  int pattern_n = 0;               // arbitrary patterns only
  std::vector<Edge> pattern_edges; // arbitrary patterns only
  std::vector<std::pair<std::string, int>> mapping;
  Json method = Json::object();

  // Host vertex of every pattern vertex, for a certificate of a named pattern.
  static EmbeddingCertificate for_pattern(const Pattern& p, const std::vector<int>& host_of, Json method);
  static EmbeddingCertificate for_graph(const Graph& pattern, const std::vector<int>& host_of, Json method);
};

struct CertificateCheck {
  bool ok = true;
  std::string message;  // first violation
};

// Labels are known and consistent, every pattern vertex is mapped, the map is
// injective onto live host vertices and every pattern edge is a host edge.
CertificateCheck verify_certificate(const Graph& host, const EmbeddingCertificate& cert);

Json spec_to_json(const PatternSpec& spec);
PatternSpec spec_from_json(const Json& j);

Json to_json(const EmbeddingCertificate& cert);
EmbeddingCertificate certificate_from_json(const Json& j);

}  // namespace tf
