#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "balfactor/rational.hpp"

namespace balfactor {

// Per-colour edge counts of an edge set. Entries may go negative when the
// vector describes a difference of two edge sets.
using ColourCounts = std::vector<std::int64_t>;

// A palette of k unit-vector colours, known only through its Gram matrix.
//
// Simplex mode places the colours at the vertices of a regular simplex in
// S^{k-2}: Gram entries are exactly 1 on the diagonal and -1/(k-1) off it,
// kept as rationals so every downstream quantity stays exact. No coordinates
// are ever materialized.
//
// Explicit mode takes user-supplied unit vectors in R^d and works in doubles.
class Palette {
 public:
  enum class Mode { kSimplex, kExplicit };

  static Palette simplex(int k);
  static Palette explicit_vectors(std::vector<std::vector<double>> vectors);

  int colour_count() const { return k_; }
  int dimension() const { return dim_; }
  Mode mode() const { return mode_; }
  bool exact() const { return mode_ == Mode::kSimplex; }

  // Simplex mode only; throws PaletteError otherwise.
  Rational gram_exact(int i, int j) const;
  double gram(int i, int j) const;

  // Explicit mode only; nullptr in simplex mode.
  const std::vector<std::vector<double>>* vectors() const {
    return mode_ == Mode::kExplicit ? &vectors_ : nullptr;
  }

 private:
  Palette() = default;

  int k_ = 0;
  int dim_ = 0;
  Mode mode_ = Mode::kSimplex;
  std::vector<std::vector<double>> vectors_;  // explicit mode
  std::vector<double> gram_;                  // explicit mode, k*k row-major
};

// b^T G b for the palette's Gram matrix G. In simplex mode this is
// (k*sum(b_i^2) - (sum b_i)^2) / (k-1), evaluated exactly.
Rational norm_sq_of_counts_exact(const Palette& p,
                                 std::span<const std::int64_t> counts);
double norm_sq_of_counts(const Palette& p,
                         std::span<const std::int64_t> counts);

// sqrt(k-1) * norm: upper bound on sum_i |b_i - e/k| for any simplex-palette
// count vector whose weight vector has Euclidean norm at most `norm`.
double deviation_upper_from_norm(int k, double norm);

}  // namespace balfactor
