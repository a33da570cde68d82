#pragma once

// Lifts a clique-factor to an H-factor. Parts with identical edge-colour
// patterns are grouped; within each group, consecutive blocks of r! parts
// receive the r! vertex-bijections of H in lexicographic permutation order,
// so each block's colour contribution cancels to the e(H)/e(K_r) fraction
// exactly. Leftover parts use the identity bijection.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "balfactor/bigint.hpp"
#include "balfactor/graph.hpp"

namespace balfactor {

struct HEmbedding {
  PatternGraph h;
  // assignments[p][i]: host vertex playing pattern vertex i in part p.
  std::vector<std::vector<Vertex>> assignments;
  // The induced H-edge set, |parts| * e(H) edges, all inside parts.
  std::vector<Edge> edges() const;
};

struct CliqueClassification {
  // Key: a part's C(r,2) edge colours with the part's vertices labelled in
  // ascending order and pairs listed (0,1),(0,2),...,(r-2,r-1).
  // Value: the part indices of that class, ascending.
  std::map<std::vector<std::int32_t>, std::vector<std::int32_t>> classes;
};

CliqueClassification classify_cliques(const ColouredCompleteGraph& g,
                                      const CliqueFactor& f);

// Throws PatternError unless h.r equals f.r. e(H) = 0 yields an empty edge
// set with all-zero counts. seed is reserved for a randomized-remainder
// mode; the default embedding is fully deterministic.
std::pair<HEmbedding, DeviationReport> embed_h_factor(
    const ColouredCompleteGraph& g, const CliqueFactor& f,
    const PatternGraph& h, std::uint64_t seed = 0);

// Worst-case norm gap between the embedded H-factor colour sum and
// e(H)/e(K_r) times the clique-factor colour sum:
// 2 * k^C(r,2) * r! * C(r,2).
BigInt embedding_error_bound(int k, int r);

}  // namespace balfactor
