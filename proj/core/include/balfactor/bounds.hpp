#pragma once

// The explicit constants behind the local-minimum norm bound, kept in
// natural-log space (they are astronomically large), plus enumeration
// checks of the two swap-lattice facts the constants rest on.

#include <cstdint>
#include <vector>

#include "balfactor/bigint.hpp"
#include "balfactor/clique_solver.hpp"
#include "balfactor/rational.hpp"

namespace balfactor {

struct BoundsTable {
  int k = 0;
  int r = 0;
  int d = 0;  // simplex dimension, k - 1

  // Swap-gain threshold 8(r-1)^2: any swap decreasing norm_sq by more than
  // this would contradict a local minimum; doubles as the base of the
  // clique norm bound.
  std::int64_t gain_threshold = 0;

  // ln of the angular separation floor (8dr)^{-d}.
  double log_min_angle = 0.0;
  // ln of the angle growth ratio (8dr)^{3d^2}.
  double log_angle_ratio = 0.0;

  // Exact swap-space size |X|, counted by dynamic programming.
  BigInt swap_space_size;

  // ln bound on ||w|| at any swap-local minimum of a clique-factor:
  // ln(gain_threshold) + (|X| - 1) * log_angle_ratio - log_min_angle.
  double log_clique_norm_bound = 0.0;
  // ln deviation bound for explicit unit palettes in R^d:
  // (8dr)^(d+1) * ln(8dr).
  double log_general_bound = 0.0;
  // ln deviation bound for the k-colour case: (8kr)^k * ln(8kr).
  double log_k_colour_bound = 0.0;

  // Additive H-embedding error 2 * k^C(r,2) * r! * C(r,2), exact.
  BigInt embed_error_term;
};

// All swap vectors: integer k-vectors with zero sum, coordinates in
// [2-2r, 2r-2], and l1-norm at most 4(r-1); ascending lexicographic order.
// Includes the zero vector and is closed under negation. Guard: the
// (4r-3)^k raw scan must not exceed 10^8.
std::vector<SwapVector> enumerate_swap_space(int k, int r);

struct LatticeFactsReport {
  Rational min_norm_sq;  // over swap vectors with nonzero weight
  Rational max_norm_sq;
  double max_norm = 0.0;
  bool pass = false;
};

// Enumerates the swap space under the (d+1)-colour simplex palette and
// checks the two facts the norm bound rests on: the smallest nonzero
// ||g(x)||^2 is exactly 2 + 2/d, and max ||g(x)|| <= 4(r-1) <= 4r.
LatticeFactsReport verify_lattice_facts(int d, int r);

// Fills the whole table for the k-colour simplex instantiation (d = k-1).
// The swap-space size is counted, not enumerated, so no guard applies.
BoundsTable constants(int k, int r);

}  // namespace balfactor
