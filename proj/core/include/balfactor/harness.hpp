#pragma once

// End-to-end driving: seeded solves with restarts, the local-minimum bound
// check, and benchmark sweeps over instance sizes with CSV output.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "balfactor/clique_solver.hpp"
#include "balfactor/graph.hpp"
#include "balfactor/h_embedder.hpp"

namespace balfactor {

struct SolveOptions {
  PivotRule rule = PivotRule::kBest;
  // Restart 0 descends from the block factor; restart i >= 1 from a random
  // factor seeded with the derived seed of (seed, i). The best final norm
  // wins, ties to the lower index.
  int restarts = 1;
  std::uint64_t seed = 0;
  std::int64_t max_iters = -1;
  int threads = 1;
};

struct SolveReport {
  Vertex n_v = 0;
  int k = 0;
  int r = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  bool exact_norm = false;
  Rational clique_norm_sq;  // valid when exact_norm
  double clique_norm_sq_real = 0.0;
  Rational clique_deviation;
  Rational h_deviation;
  double h_norm = 0.0;
  std::int64_t iterations = 0;       // winning restart, candidate scans
  std::int64_t improving_steps = 0;  // winning restart, swaps applied
  int restarts_used = 0;
  int best_restart = 0;
  std::int64_t wall_time_ms = 0;
  // Check of ||w|| at the final factor against the n-independent bound
  // (with the colouring's imbalance folded in as a slack term on top of
  // log_clique_norm_bound).
  double bound_log_c = 0.0;
  bool bound_satisfied = false;
};

struct SolveOutcome {
  SolveReport report;
  SearchResult search;  // winning restart
  HEmbedding embedding;
  DeviationReport h_report;
};

SolveOutcome solve_instance(const ColouredCompleteGraph& g,
                            const PatternGraph& h, const SolveOptions& opts);

struct SweepOptions {
  std::vector<int> n_list;  // parts-per-colour scale; host has n*r*k vertices
  int k = 2;
  int r = 2;
  int trials = 1;
  std::uint64_t seed = 0;
  PatternGraph h;  // empty r means: use the complete pattern on r vertices
  PivotRule rule = PivotRule::kBest;
  int restarts = 1;
  int threads = 1;
};

struct SweepRow {
  int n = 0;
  int k = 0;
  int r = 0;
  std::uint64_t seed = 0;  // this row's derived seed
  double alpha = 0.0;
  Rational clique_deviation;
  Rational h_deviation;
  std::int64_t iterations = 0;
  std::int64_t wall_time_ms = 0;
};

// One row per (n, trial), ordered by n-list position then trial. Row
// (n_index, trial) generates its instance from the derived seed of
// (seed, n_index * trials + trial).
std::vector<SweepRow> run_sweep(const SweepOptions& opts);

// '#'-comment preamble (library version plus the caller's flags line),
// fixed header, one comma-separated line per row. Rationals are written as
// decimals so every column parses as a number.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& flags);

}  // namespace balfactor
