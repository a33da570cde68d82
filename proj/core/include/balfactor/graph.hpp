#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "balfactor/palette.hpp"
#include "balfactor/rational.hpp"

namespace balfactor {

using Vertex = std::int32_t;

// Unordered pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Complete graph on n_v vertices with a total edge colouring. Colours live
// in a flat lower-triangular array indexed by pair rank, so lookup is O(1).
// Immutable after construction.
class ColouredCompleteGraph {
 public:
  ColouredCompleteGraph(Vertex n_v, Palette palette,
                        std::vector<std::int32_t> colours);

  // Text format: first line "<n_v> <k>", then one line "<u> <v> <colour>"
  // per edge with u < v, in any order; '#' starts a comment. Exactly
  // n_v(n_v-1)/2 edge lines must be present. The palette is the k-colour
  // simplex. Throws ParseError naming the offending line.
  static ColouredCompleteGraph load(std::istream& in);
  void save(std::ostream& out) const;

  Vertex vertex_count() const { return n_; }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
  }
  int colour_count() const { return palette_.colour_count(); }
  const Palette& palette() const { return palette_; }

  std::int32_t colour(Vertex u, Vertex v) const {
    return colours_[rank(u, v)];
  }

  // Per-colour totals over all edges.
  ColourCounts total_counts() const;

  static std::size_t rank(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(v) * (v - 1) / 2 + u;
  }

  friend bool operator==(const ColouredCompleteGraph& a,
                         const ColouredCompleteGraph& b) {
    return a.n_ == b.n_ &&
           a.palette_.colour_count() == b.palette_.colour_count() &&
           a.colours_ == b.colours_;
  }

 private:
  Vertex n_ = 0;
  Palette palette_;
  std::vector<std::int32_t> colours_;
};

// Partition of [0, n_v) into parts of size r. Part members are kept sorted
// ascending; part_of gives O(1) membership lookup. Mutated only by swaps.
struct CliqueFactor {
  int r = 0;
  std::vector<std::vector<Vertex>> parts;
  std::vector<std::int32_t> part_of;

  Vertex vertex_count() const {
    return static_cast<Vertex>(part_of.size());
  }
  std::int64_t edge_count() const {
    return static_cast<std::int64_t>(parts.size()) * r * (r - 1) / 2;
  }
  // All factor edges, part by part, pairs ascending within each part.
  std::vector<Edge> edges() const;
  // Validates the partition invariants; throws on violation.
  void check_valid() const;
};

// Fixed pattern graph H on r vertices.
struct PatternGraph {
  int r = 0;
  std::vector<Edge> edges;

  static PatternGraph complete(int r);
  static PatternGraph single_edge() { return complete(2); }
  // Text format: "<r> <m>" then m lines "<u> <v>" with 0 <= u < v < r.
  static PatternGraph load(std::istream& in);

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Balance statistics of one factor (or of a whole colouring).
struct DeviationReport {
  ColourCounts counts;
  std::int64_t n_edges = 0;
  Rational deviation;        // exact, always
  Rational norm_sq;          // exact; valid when exact_norm
  double norm_sq_real = 0.0; // always filled
  bool exact_norm = false;
  double alpha = 0.0;
  std::int64_t iterations = 0;
  std::int64_t improving_steps = 0;
};

DeviationReport make_deviation_report(const Palette& p,
                                      ColourCounts counts);

// Euclidean norm of the colour sum over all edges; exactly 0 for a
// perfectly balanced simplex colouring.
double balance_alpha(const ColouredCompleteGraph& g);

// Per-colour histogram of the given edges. Throws EdgeError on an invalid
// pair.
ColourCounts factor_counts(const ColouredCompleteGraph& g,
                           std::span<const Edge> edges);

// sum_i |counts[i] - total/k| as an exact rational.
Rational deviation(std::span<const std::int64_t> counts, int k);

// Colouring whose per-colour totals differ pairwise by at most 1; exactly
// balanced when k divides the edge count. The colours carrying the
// remainder are chosen uniformly at random, then the whole edge multiset is
// shuffled. Deterministic per seed (see rng.hpp for the generator contract).
ColouredCompleteGraph random_balanced_colouring(Vertex n_v,
                                                const Palette& palette,
                                                std::uint64_t seed);

}  // namespace balfactor
