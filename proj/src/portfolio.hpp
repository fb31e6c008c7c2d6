#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "turan_forge/parallel.hpp"

namespace tf::detail {

template <class T>
struct PortfolioResult {
  std::optional<T> value;
  int winner = -1;
  int runs = 0;
  std::uint64_t nodes = 0;
};

// Runs restarts 0, 1, ... in contiguous batches of `threads`. run(r, nodes)
// returns a hit or nothing and reports the nodes it used. The lowest
// successful restart of the first batch with a hit wins. `runs` and `nodes`
// count restarts 0..winner only, so they do not depend on `threads`.
template <class T, class Run>
PortfolioResult<T> run_portfolio(int restarts, int threads, Run&& run) {
  PortfolioResult<T> out;
  restarts = std::max(1, restarts);
  threads = std::max(1, threads);
  std::vector<std::optional<T>> hit(restarts);
  std::vector<std::uint64_t> spent(restarts, 0);
  for (int batch = 0; batch < restarts && out.winner < 0; batch += threads) {
    const int count = std::min(threads, restarts - batch);
    parallel_for(count, threads, [&](int i) { hit[batch + i] = run(batch + i, spent[batch + i]); });
    out.runs = batch + count;
    for (int r = batch; r < batch + count; ++r)
      if (hit[r]) {
        out.winner = r;
        out.value = std::move(hit[r]);
        break;
      }
  }
  if (out.winner >= 0) out.runs = out.winner + 1;
  for (int r = 0; r < out.runs; ++r) out.nodes += spent[r];
  return out;
}

}  // namespace tf::detail
