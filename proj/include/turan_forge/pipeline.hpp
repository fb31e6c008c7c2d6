#pragma once

#include <cstdint>
#include <string>

#include "turan_forge/certificate.hpp"
#include "turan_forge/graph.hpp"
#include "turan_forge/transforms.hpp"

namespace tf {

// Exit statuses shared by the pipeline and the CLI.
enum ExitStatus : int { kExitFound = 0, kExitInput = 1, kExitIntegrity = 2, kExitNotFound = 3 };

// Host description: {"file": path} or {"generator": name, ...} with
//   gnp               n, p, bipartite (default false), seed (default: derived)
//   polarity          q
//   complete          n
//   complete_bipartite a, b
//   cycle / path      n
Graph make_host(const Json& spec, std::uint64_t default_seed);

// One transform: {"name": "peel" | "half" | "clean" | "peel_below" | "almost_regular", ...}
//   clean            mode: "fixed" (default) | "self"
//   peel_below       threshold
//   almost_regular   epsilon, c, k
Graph apply_transform(const Graph& g, const Json& step, TransformReport& report);
Json report_to_json(const TransformReport& r);
Json stats_to_json(const GraphStats& s);

// Reads the codegree table of g from TURAN_FORGE_CACHE_DIR when present,
// otherwise builds it and writes it there. Without the variable it only
// builds the table. Returns whether g has a table afterwards.
bool prepare_codegrees(Graph& g);

struct PipelineOutcome {
  int exit_status = kExitFound;
  Json report;
  Json certificate;  // null unless found
};

// Config sections: seed, host, transforms, target, builder, embedder, output.
// Errors are caught and reported through the exit status and report["error"].
// `threads` changes the wall time only; the report does not depend on it.
PipelineOutcome run_pipeline(const Json& config, int threads = 1);

}  // namespace tf
