#include "balfactor/harness.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "balfactor/bounds.hpp"
#include "balfactor/errors.hpp"
#include "balfactor/rng.hpp"
#include "balfactor/version.hpp"

namespace balfactor {

namespace {

double rational_to_decimal(const Rational& r) { return r.to_double(); }

}  // namespace

SolveOutcome solve_instance(const ColouredCompleteGraph& g,
                            const PatternGraph& h, const SolveOptions& opts) {
  if (opts.restarts < 1) {
    throw DimensionError("need at least one restart");
  }
  const auto start = std::chrono::steady_clock::now();
  const Palette& p = g.palette();
  const int k = p.colour_count();
  const int r = h.r;
  const Vertex n_v = g.vertex_count();

  SearchOptions search_opts;
  search_opts.rule = opts.rule;
  search_opts.max_iters = opts.max_iters;
  search_opts.threads = opts.threads;

  SolveOutcome out;
  bool have = false;
  Rational best_exact;
  double best_real = 0.0;
  int best_idx = 0;
  for (int i = 0; i < opts.restarts; ++i) {
    CliqueFactor f0 =
        i == 0 ? initial_factor(n_v, r, InitStrategy::kBlocks, 0)
               : initial_factor(n_v, r, InitStrategy::kRandom,
                                rng::derive_seed(opts.seed,
                                                 static_cast<std::uint64_t>(i)));
    SearchResult res = local_search(g, std::move(f0), search_opts);
    bool better;
    if (p.exact()) {
      const Rational norm = norm_sq_of_counts_exact(p, res.counts);
      better = !have || norm < best_exact;
      if (better) best_exact = norm;
    } else {
      const double norm = norm_sq_of_counts(p, res.counts);
      better = !have || norm < best_real;
      if (better) best_real = norm;
    }
    if (better) {
      have = true;
      best_idx = i;
      out.search = std::move(res);
    }
  }

  auto [embedding, h_report] =
      embed_h_factor(g, out.search.factor, h, opts.seed);
  out.embedding = std::move(embedding);
  out.h_report = std::move(h_report);

  SolveReport& rep = out.report;
  rep.n_v = n_v;
  rep.k = k;
  rep.r = r;
  rep.seed = opts.seed;
  rep.alpha = balance_alpha(g);
  rep.exact_norm = p.exact();
  if (rep.exact_norm) {
    rep.clique_norm_sq = best_exact;
    rep.clique_norm_sq_real = best_exact.to_double();
  } else {
    rep.clique_norm_sq_real = best_real;
  }
  rep.clique_deviation = deviation(out.search.counts, k);
  rep.h_deviation = out.h_report.deviation;
  rep.h_norm = std::sqrt(out.h_report.norm_sq_real);
  rep.iterations = out.search.iterations;
  rep.improving_steps = out.search.improving_steps;
  rep.restarts_used = opts.restarts;
  rep.best_restart = best_idx;

  // ||w|| at a swap-local minimum is bounded by the n-independent clique
  // constant plus a slack for the colouring's own imbalance: the check is
  // log ||w|| <= log C + log(1 + 2*alpha/(n*C)), all in natural logs. The
  // constant is astronomically large, so the slack saturates to zero.
  const BoundsTable bt = constants(k, r);
  const double n_parts = static_cast<double>(out.search.factor.parts.size());
  const double c_est = std::exp(std::min(bt.log_clique_norm_bound, 700.0));
  const double slack = std::log1p(2.0 * rep.alpha / (n_parts * c_est));
  rep.bound_log_c = bt.log_clique_norm_bound + slack;
  const double norm = std::sqrt(rep.clique_norm_sq_real);
  rep.bound_satisfied = norm == 0.0 || std::log(norm) <= rep.bound_log_c;

  rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return out;
}

std::vector<SweepRow> run_sweep(const SweepOptions& opts) {
  if (opts.k < 2 || opts.r < 2 || opts.trials < 1 || opts.n_list.empty()) {
    throw DimensionError(
        "sweep needs k >= 2, r >= 2, trials >= 1 and a nonempty n list");
  }
  const PatternGraph h =
      opts.h.r == 0 ? PatternGraph::complete(opts.r) : opts.h;
  if (h.r != opts.r) {
    throw PatternError("pattern vertex count does not match r");
  }
  const Palette palette = Palette::simplex(opts.k);

  std::vector<SweepRow> rows;
  rows.reserve(opts.n_list.size() * static_cast<std::size_t>(opts.trials));
  for (std::size_t ni = 0; ni < opts.n_list.size(); ++ni) {
    const int n = opts.n_list[ni];
    if (n < 1) throw DimensionError("sweep n values must be positive");
    const auto n_v = static_cast<Vertex>(
        static_cast<std::int64_t>(n) * opts.r * opts.k);
    for (int t = 0; t < opts.trials; ++t) {
      const std::uint64_t row_seed = rng::derive_seed(
          opts.seed, ni * static_cast<std::uint64_t>(opts.trials) +
                         static_cast<std::uint64_t>(t));
      const ColouredCompleteGraph g =
          random_balanced_colouring(n_v, palette, row_seed);
      SolveOptions solve_opts;
      solve_opts.rule = opts.rule;
      solve_opts.restarts = opts.restarts;
      solve_opts.seed = row_seed;
      solve_opts.threads = opts.threads;
      const SolveOutcome outcome = solve_instance(g, h, solve_opts);
      SweepRow row;
      row.n = n;
      row.k = opts.k;
      row.r = opts.r;
      row.seed = row_seed;
      row.alpha = outcome.report.alpha;
      row.clique_deviation = outcome.report.clique_deviation;
      row.h_deviation = outcome.report.h_deviation;
      row.iterations = outcome.report.iterations;
      row.wall_time_ms = outcome.report.wall_time_ms;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& flags) {
  out << "# balfactor " << kVersion << '\n';
  if (!flags.empty()) out << "# flags: " << flags << '\n';
  out << "n,k,r,seed,alpha,clique_deviation,h_deviation,iterations,"
         "wall_time_ms\n";
  for (const SweepRow& row : rows) {
    std::ostringstream line;
    line.precision(12);
    line << row.n << ',' << row.k << ',' << row.r << ',' << row.seed << ','
         << row.alpha << ',' << rational_to_decimal(row.clique_deviation)
         << ',' << rational_to_decimal(row.h_deviation) << ','
         << row.iterations << ',' << row.wall_time_ms;
    out << line.str() << '\n';
  }
}

}  // namespace balfactor
