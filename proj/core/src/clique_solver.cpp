#include "balfactor/clique_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>
#include <utility>

#include "balfactor/errors.hpp"
#include "balfactor/rng.hpp"

namespace balfactor {

namespace {

constexpr double kImproveTol = 1e-9;

void check_pair(const ColouredCompleteGraph& g, const CliqueFactor& f,
                Vertex u, Vertex v) {
  if (f.vertex_count() != g.vertex_count()) {
    throw EdgeError("factor does not cover the host graph");
  }
  if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) {
    throw InvalidSwapError("swap vertex out of range");
  }
  if (f.part_of[static_cast<std::size_t>(u)] ==
      f.part_of[static_cast<std::size_t>(v)]) {
    throw InvalidSwapError("swap endpoints " + std::to_string(u) + " and " +
                           std::to_string(v) + " share a part");
  }
}

// Writes the swap vector for u<->v into x (length k, zeroed here).
void fill_swap_vector(const ColouredCompleteGraph& g, const CliqueFactor& f,
                      Vertex u, Vertex v, std::vector<std::int64_t>& x) {
  std::fill(x.begin(), x.end(), 0);
  const auto& pu = f.parts[static_cast<std::size_t>(
      f.part_of[static_cast<std::size_t>(u)])];
  const auto& pv = f.parts[static_cast<std::size_t>(
      f.part_of[static_cast<std::size_t>(v)])];
  for (Vertex w : pu) {
    if (w == u) continue;
    ++x[static_cast<std::size_t>(g.colour(u, w))];
    --x[static_cast<std::size_t>(g.colour(v, w))];
  }
  for (Vertex w : pv) {
    if (w == v) continue;
    ++x[static_cast<std::size_t>(g.colour(v, w))];
    --x[static_cast<std::size_t>(g.colour(u, w))];
  }
}

// Exact palette: compares swaps by the integer (k-1)*delta. Using sum(x)=0,
// (k-1)*delta = k*(2*sum(b_i x_i) - sum(x_i^2)).
struct ExactEval {
  using Score = std::int64_t;
  const ColourCounts* b;
  int k;
  Score eval(const std::vector<std::int64_t>& x) const {
    std::int64_t cross = 0;
    std::int64_t quad = 0;
    for (int i = 0; i < k; ++i) {
      cross += (*b)[static_cast<std::size_t>(i)] *
               x[static_cast<std::size_t>(i)];
      quad += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    }
    return static_cast<std::int64_t>(k) * (2 * cross - quad);
  }
  static bool improving(Score s) { return s > 0; }
};

struct RealEval {
  using Score = double;
  const Palette* p;
  const ColourCounts* b;
  Score eval(const std::vector<std::int64_t>& x) const {
    return swap_delta_real(*p, *b, x);
  }
  static bool improving(Score s) { return s > kImproveTol; }
};

template <typename Eval>
struct Found {
  Vertex u = -1;
  Vertex v = -1;
  typename Eval::Score score{};
  std::vector<std::int64_t> x;
  bool valid() const { return u >= 0; }
};

template <typename Eval>
bool better(const Found<Eval>& cand, const Found<Eval>& best) {
  if (!best.valid()) return true;
  if (cand.score != best.score) return cand.score > best.score;
  return std::pair(cand.u, cand.v) < std::pair(best.u, best.v);
}

// Maximum-score improving swap, lexicographic (u, v) tie-break. Workers take
// interleaved u values; the explicit comparator makes the result independent
// of the thread count.
template <typename Eval>
Found<Eval> scan_best(const ColouredCompleteGraph& g, const CliqueFactor& f,
                      const Eval& ev, int threads) {
  const Vertex n_v = g.vertex_count();
  const int t_count =
      std::max(1, std::min<int>(threads, static_cast<int>(n_v)));
  std::vector<Found<Eval>> bests(static_cast<std::size_t>(t_count));
  auto worker = [&](int t) {
    std::vector<std::int64_t> x(static_cast<std::size_t>(g.colour_count()));
    Found<Eval> best;
    for (Vertex u = static_cast<Vertex>(t); u < n_v;
         u += static_cast<Vertex>(t_count)) {
      for (Vertex v = u + 1; v < n_v; ++v) {
        if (f.part_of[static_cast<std::size_t>(u)] ==
            f.part_of[static_cast<std::size_t>(v)]) {
          continue;
        }
        fill_swap_vector(g, f, u, v, x);
        const auto s = ev.eval(x);
        if (!Eval::improving(s)) continue;
        Found<Eval> cand;
        cand.u = u;
        cand.v = v;
        cand.score = s;
        if (better(cand, best)) {
          cand.x = x;
          best = std::move(cand);
        }
      }
    }
    bests[static_cast<std::size_t>(t)] = std::move(best);
  };
  if (t_count == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t_count - 1));
    for (int t = 1; t < t_count; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
  }
  Found<Eval> best;
  for (auto& c : bests) {
    if (c.valid() && better(c, best)) best = std::move(c);
  }
  return best;
}

template <typename Eval>
Found<Eval> scan_first(const ColouredCompleteGraph& g, const CliqueFactor& f,
                       const Eval& ev) {
  const Vertex n_v = g.vertex_count();
  std::vector<std::int64_t> x(static_cast<std::size_t>(g.colour_count()));
  for (Vertex u = 0; u < n_v; ++u) {
    for (Vertex v = u + 1; v < n_v; ++v) {
      if (f.part_of[static_cast<std::size_t>(u)] ==
          f.part_of[static_cast<std::size_t>(v)]) {
        continue;
      }
      fill_swap_vector(g, f, u, v, x);
      const auto s = ev.eval(x);
      if (Eval::improving(s)) {
        Found<Eval> found;
        found.u = u;
        found.v = v;
        found.score = s;
        found.x = x;
        return found;
      }
    }
  }
  return {};
}

std::int64_t narrow_i128(__int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error(std::string("overflow computing ") + what);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

CliqueFactor initial_factor(Vertex n_v, int r, InitStrategy strategy,
                            std::uint64_t seed) {
  if (r < 1 || n_v < 1 || n_v % r != 0) {
    throw DivisibilityError("part size " + std::to_string(r) +
                            " does not divide " + std::to_string(n_v) +
                            " vertices");
  }
  std::vector<Vertex> order(static_cast<std::size_t>(n_v));
  std::iota(order.begin(), order.end(), 0);
  if (strategy == InitStrategy::kRandom) {
    rng::Engine eng(seed);
    rng::shuffle(eng, order);
  }
  CliqueFactor f;
  f.r = r;
  const auto m = static_cast<std::size_t>(n_v / r);
  f.parts.resize(m);
  f.part_of.assign(static_cast<std::size_t>(n_v), -1);
  for (std::size_t p = 0; p < m; ++p) {
    auto& part = f.parts[p];
    part.assign(order.begin() + static_cast<std::ptrdiff_t>(p) * r,
                order.begin() + static_cast<std::ptrdiff_t>(p + 1) * r);
    std::sort(part.begin(), part.end());
    for (Vertex v : part) {
      f.part_of[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(p);
    }
  }
  return f;
}

SwapVector swap_vector(const ColouredCompleteGraph& g, const CliqueFactor& f,
                       Vertex u, Vertex v) {
  check_pair(g, f, u, v);
  SwapVector x(static_cast<std::size_t>(g.colour_count()));
  fill_swap_vector(g, f, u, v, x);
  return x;
}

Rational swap_delta_exact(const Palette& p, std::span<const std::int64_t> b,
                          std::span<const std::int64_t> x) {
  if (!p.exact()) {
    throw PaletteError("exact swap delta needs an exact palette");
  }
  const int k = p.colour_count();
  if (static_cast<int>(b.size()) != k || static_cast<int>(x.size()) != k) {
    throw DimensionError("count vector length does not match the palette");
  }
  __int128 cross = 0;
  __int128 quad = 0;
  for (int i = 0; i < k; ++i) {
    cross += static_cast<__int128>(b[static_cast<std::size_t>(i)]) *
             x[static_cast<std::size_t>(i)];
    quad += static_cast<__int128>(x[static_cast<std::size_t>(i)]) *
            x[static_cast<std::size_t>(i)];
  }
  const std::int64_t scaled =
      narrow_i128(static_cast<__int128>(k) * (2 * cross - quad),
                  "swap delta");
  return Rational(scaled, k - 1);
}

double swap_delta_real(const Palette& p, std::span<const std::int64_t> b,
                       std::span<const std::int64_t> x) {
  const int k = p.colour_count();
  if (static_cast<int>(b.size()) != k || static_cast<int>(x.size()) != k) {
    throw DimensionError("count vector length does not match the palette");
  }
  double cross = 0.0;
  double quad = 0.0;
  for (int i = 0; i < k; ++i) {
    if (x[static_cast<std::size_t>(i)] == 0) continue;
    double gb = 0.0;
    double gx = 0.0;
    for (int j = 0; j < k; ++j) {
      gb += p.gram(j, i) * static_cast<double>(b[static_cast<std::size_t>(j)]);
      gx += p.gram(j, i) * static_cast<double>(x[static_cast<std::size_t>(j)]);
    }
    cross += gb * static_cast<double>(x[static_cast<std::size_t>(i)]);
    quad += gx * static_cast<double>(x[static_cast<std::size_t>(i)]);
  }
  return 2.0 * cross - quad;
}

void apply_swap(CliqueFactor& f, Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= f.vertex_count() || v >= f.vertex_count()) {
    throw InvalidSwapError("swap vertex out of range");
  }
  const auto pu = f.part_of[static_cast<std::size_t>(u)];
  const auto pv = f.part_of[static_cast<std::size_t>(v)];
  if (pu == pv) {
    throw InvalidSwapError("swap endpoints " + std::to_string(u) + " and " +
                           std::to_string(v) + " share a part");
  }
  auto& a = f.parts[static_cast<std::size_t>(pu)];
  auto& c = f.parts[static_cast<std::size_t>(pv)];
  *std::find(a.begin(), a.end(), u) = v;
  *std::find(c.begin(), c.end(), v) = u;
  std::sort(a.begin(), a.end());
  std::sort(c.begin(), c.end());
  f.part_of[static_cast<std::size_t>(u)] = pv;
  f.part_of[static_cast<std::size_t>(v)] = pu;
}

SearchResult local_search(const ColouredCompleteGraph& g, CliqueFactor f0,
                          const SearchOptions& opts) {
  f0.check_valid();
  if (f0.vertex_count() != g.vertex_count()) {
    throw EdgeError("factor does not cover the host graph");
  }
  const Palette& p = g.palette();
  const int k = p.colour_count();
  const bool exact = p.exact();

  SearchResult res;
  res.factor = std::move(f0);
  const auto edges = res.factor.edges();
  res.counts = factor_counts(g, edges);

  // (k-1)*norm_sq as an integer; exact palettes only. The edge count of the
  // factor is swap-invariant, so only sum_sq changes.
  std::int64_t scaled = 0;
  double norm_real = 0.0;
  if (exact) {
    __int128 sum = 0;
    __int128 sum_sq = 0;
    for (std::int64_t c : res.counts) {
      sum += c;
      sum_sq += static_cast<__int128>(c) * c;
    }
    scaled = narrow_i128(static_cast<__int128>(k) * sum_sq - sum * sum,
                         "scaled norm");
    const Rational n0(scaled, k - 1);
    res.trace.norm_sq_history.push_back(n0);
    res.trace.norm_sq_history_real.push_back(n0.to_double());
  } else {
    norm_real = norm_sq_of_counts(p, res.counts);
    res.trace.norm_sq_history_real.push_back(norm_real);
  }

  std::int64_t budget = opts.max_iters;
  if (budget < 0) {
    if (exact) {
      budget = std::numeric_limits<std::int64_t>::max();
    } else {
      const double raw = 10.0 * (k - 1) * std::ceil(norm_real);
      budget = raw > 9e18 ? std::numeric_limits<std::int64_t>::max()
                          : static_cast<std::int64_t>(raw);
    }
  }

  const ExactEval exact_ev{&res.counts, k};
  const RealEval real_ev{&p, &res.counts};

  while (true) {
    if (res.improving_steps >= budget) {
      res.trace.terminated_reason = TerminationReason::kMaxIters;
      break;
    }
    ++res.iterations;
    Vertex su = -1;
    Vertex sv = -1;
    std::vector<std::int64_t> sx;
    if (exact) {
      auto found = opts.rule == PivotRule::kBest
                       ? scan_best(g, res.factor, exact_ev, opts.threads)
                       : scan_first(g, res.factor, exact_ev);
      if (found.valid()) {
        su = found.u;
        sv = found.v;
        sx = std::move(found.x);
        scaled -= found.score;
      }
    } else {
      auto found = opts.rule == PivotRule::kBest
                       ? scan_best(g, res.factor, real_ev, opts.threads)
                       : scan_first(g, res.factor, real_ev);
      if (found.valid()) {
        su = found.u;
        sv = found.v;
        sx = std::move(found.x);
      }
    }
    if (su < 0) {
      res.trace.terminated_reason = TerminationReason::kLocalMinimum;
      break;
    }
    apply_swap(res.factor, su, sv);
    for (int i = 0; i < k; ++i) {
      res.counts[static_cast<std::size_t>(i)] -=
          sx[static_cast<std::size_t>(i)];
    }
    ++res.improving_steps;
    res.trace.swaps_applied.emplace_back(su, sv);
    if (exact) {
      const Rational n(scaled, k - 1);
      res.trace.norm_sq_history.push_back(n);
      res.trace.norm_sq_history_real.push_back(n.to_double());
    } else {
      // Recomputed from the integer counts, so float error does not
      // accumulate across steps.
      norm_real = norm_sq_of_counts(p, res.counts);
      res.trace.norm_sq_history_real.push_back(norm_real);
    }
  }
  return res;
}

}  // namespace balfactor
