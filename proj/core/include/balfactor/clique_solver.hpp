#pragma once

// Swap-based local search on clique-factors. A swap exchanges two vertices
// between distinct parts; the search applies strictly norm-decreasing swaps
// until none exists. With an exact palette every reachable norm_sq value is
// an integer multiple of 1/(k-1), so the descent terminates on its own; with
// an explicit palette a step budget guards against float-level cycling.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "balfactor/graph.hpp"
#include "balfactor/palette.hpp"
#include "balfactor/rational.hpp"

namespace balfactor {

// Per-colour edge-count difference of a swap: removed minus added.
// Zero-sum, coordinates in [2-2r, 2r-2], l1-norm at most 4(r-1).
using SwapVector = std::vector<std::int64_t>;

enum class InitStrategy { kBlocks, kRandom };
enum class PivotRule { kBest, kFirst };
enum class TerminationReason { kLocalMinimum, kMaxIters };

struct SearchTrace {
  // norm_sq after 0, 1, 2, ... applied swaps; strictly decreasing.
  // The exact history is populated for exact palettes only.
  std::vector<Rational> norm_sq_history;
  std::vector<double> norm_sq_history_real;
  std::vector<std::pair<Vertex, Vertex>> swaps_applied;
  TerminationReason terminated_reason = TerminationReason::kLocalMinimum;
};

struct SearchOptions {
  PivotRule rule = PivotRule::kBest;
  // Budget of applied swaps. Negative means automatic: unlimited for exact
  // palettes (rationality forces termination), 10*(k-1)*ceil(norm_sq(f0))
  // for explicit ones.
  std::int64_t max_iters = -1;
  // Workers for the candidate scan under the best rule. The result is
  // bit-identical to a sequential scan for any thread count.
  int threads = 1;
  // Reserved. Both pivot rules are deterministic and consume no randomness.
  std::uint64_t seed = 0;
};

struct SearchResult {
  CliqueFactor factor;
  ColourCounts counts;
  SearchTrace trace;
  std::int64_t iterations = 0;       // candidate scans performed
  std::int64_t improving_steps = 0;  // swaps applied
};

// strategy kBlocks: parts {0..r-1}, {r..2r-1}, ...; kRandom: a seeded
// uniform shuffle cut into consecutive blocks. Throws DivisibilityError
// unless r divides n_v.
CliqueFactor initial_factor(Vertex n_v, int r, InitStrategy strategy,
                            std::uint64_t seed);

// x[i] = (#colour-i edges incident to u or v inside their parts before the
// swap) - (same count after the swap). Throws InvalidSwapError if u and v
// share a part.
SwapVector swap_vector(const ColouredCompleteGraph& g, const CliqueFactor& f,
                       Vertex u, Vertex v);

// Decrease of norm_sq caused by a swap with difference vector x when the
// current counts are b: 2*(b^T gram x) - (x^T gram x). The exact form
// requires an exact palette.
Rational swap_delta_exact(const Palette& p, std::span<const std::int64_t> b,
                          std::span<const std::int64_t> x);
double swap_delta_real(const Palette& p, std::span<const std::int64_t> b,
                       std::span<const std::int64_t> x);

// Exchanges the parts of u and v in place; parts stay sorted ascending.
void apply_swap(CliqueFactor& f, Vertex u, Vertex v);

// Descends from f0 to a factor admitting no improving swap (or until the
// step budget runs out). An improving swap has delta > 0 exactly for exact
// palettes, delta > 1e-9 for explicit ones. kBest applies the maximum-delta
// swap, ties broken by lexicographically smallest (u, v); kFirst applies
// the first improving swap in lexicographic scan order.
SearchResult local_search(const ColouredCompleteGraph& g, CliqueFactor f0,
                          const SearchOptions& opts = {});

}  // namespace balfactor
