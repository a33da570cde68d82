#pragma once

// Brute-force ground truth at desk scale: exhaustive clique-factor
// enumeration, the exact minimum deviation over all H-factors, and a
// randomized search for balanced colourings with no perfectly balanced
// H-factor.

#include <cstdint>
#include <functional>
#include <optional>

#include "balfactor/bigint.hpp"
#include "balfactor/graph.hpp"
#include "balfactor/h_embedder.hpp"
#include "balfactor/rational.hpp"

namespace balfactor {

// n_v! / ((r!)^(n_v/r) * (n_v/r)!). Throws DivisibilityError unless r
// divides n_v.
BigInt clique_factor_count(Vertex n_v, int r);

// Calls visit for every partition of [0, n_v) into parts of size r, each
// exactly once, in canonical order: every part holds the smallest vertex
// unused before it, and companion sets ascend lexicographically. visit may
// return false to stop early. Returns true if the enumeration ran out.
// Throws TooLargeError when the factor count exceeds 10^7.
bool for_each_clique_factor(
    Vertex n_v, int r, const std::function<bool(const CliqueFactor&)>& visit);

struct OracleResult {
  Rational min_deviation;
  CliqueFactor factor;      // witness clique-factor
  HEmbedding embedding;     // witness H-copies inside the parts
  ColourCounts counts;      // colour counts of the witness H-edge set
};

// Exact minimum of deviation over all H-factors of g, with one witness.
// Guard: factor count times per-part embedding choices must not exceed
// 10^7; for h complete (or edgeless) the per-part choice collapses to 1.
OracleResult min_deviation_bruteforce(const ColouredCompleteGraph& g,
                                      const PatternGraph& h);

// Searches `trials` seeded near-balanced colourings for one whose
// brute-force minimum deviation is positive. Deterministic per seed; trial
// t uses the derived seed of (seed, t).
std::optional<ColouredCompleteGraph> find_unbalanced_colouring(
    Vertex n_v, const Palette& palette, const PatternGraph& h,
    std::uint64_t seed, std::int64_t trials);

}  // namespace balfactor
