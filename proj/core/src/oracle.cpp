#include "balfactor/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "balfactor/errors.hpp"
#include "balfactor/rng.hpp"

namespace balfactor {

namespace {

const BigInt kEnumGuard = 10'000'000;

BigInt factorial_big(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

BigInt clique_factor_count(Vertex n_v, int r) {
  if (r < 1 || n_v < 1 || n_v % r != 0) {
    throw DivisibilityError("part size " + std::to_string(r) +
                            " does not divide " + std::to_string(n_v) +
                            " vertices");
  }
  const int m = n_v / r;
  BigInt den = big_pow(factorial_big(r), static_cast<unsigned>(m));
  den *= factorial_big(m);
  return factorial_big(n_v) / den;
}

bool for_each_clique_factor(
    Vertex n_v, int r, const std::function<bool(const CliqueFactor&)>& visit) {
  const BigInt count = clique_factor_count(n_v, r);
  if (count > kEnumGuard) {
    throw TooLargeError("enumeration of " + count.str() +
                        " clique-factors exceeds the 10000000 guard");
  }
  const auto m = static_cast<std::size_t>(n_v / r);
  CliqueFactor f;
  f.r = r;
  f.parts.assign(m, std::vector<Vertex>(static_cast<std::size_t>(r)));
  f.part_of.assign(static_cast<std::size_t>(n_v), -1);
  std::vector<bool> used(static_cast<std::size_t>(n_v), false);
  std::vector<std::vector<Vertex>> rest_at(m);
  std::vector<std::vector<int>> combo_at(m);

  // Depth-first over parts. Each level anchors the smallest unused vertex
  // and walks the (r-1)-subsets of the remaining vertices in ascending
  // lexicographic order, which makes the whole stream canonical.
  auto rec = [&](auto&& self, std::size_t level) -> bool {
    if (level == m) return visit(f);
    Vertex anchor = 0;
    while (used[static_cast<std::size_t>(anchor)]) ++anchor;
    auto& rest = rest_at[level];
    rest.clear();
    for (Vertex v = anchor + 1; v < n_v; ++v) {
      if (!used[static_cast<std::size_t>(v)]) rest.push_back(v);
    }
    const int need = r - 1;
    const int avail = static_cast<int>(rest.size());
    auto& c = combo_at[level];
    c.resize(static_cast<std::size_t>(need));
    std::iota(c.begin(), c.end(), 0);
    used[static_cast<std::size_t>(anchor)] = true;
    f.part_of[static_cast<std::size_t>(anchor)] =
        static_cast<std::int32_t>(level);
    bool keep = true;
    while (true) {
      auto& part = f.parts[level];
      part[0] = anchor;
      for (int j = 0; j < need; ++j) {
        const Vertex w = rest[static_cast<std::size_t>(c[static_cast<std::size_t>(j)])];
        part[static_cast<std::size_t>(j + 1)] = w;
        used[static_cast<std::size_t>(w)] = true;
        f.part_of[static_cast<std::size_t>(w)] =
            static_cast<std::int32_t>(level);
      }
      keep = self(self, level + 1);
      for (int j = 0; j < need; ++j) {
        used[static_cast<std::size_t>(
            rest[static_cast<std::size_t>(c[static_cast<std::size_t>(j)])])] =
            false;
      }
      if (!keep) break;
      int i = need - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == avail - need + i) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < need; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
    used[static_cast<std::size_t>(anchor)] = false;
    return keep;
  };
  return rec(rec, 0);
}

OracleResult min_deviation_bruteforce(const ColouredCompleteGraph& g,
                                      const PatternGraph& h) {
  const int r = h.r;
  const Vertex n_v = g.vertex_count();
  const int k = g.colour_count();
  const BigInt count = clique_factor_count(n_v, r);
  const auto m = static_cast<std::size_t>(n_v / r);
  // With h complete (or edgeless) every bijection yields the same edge set,
  // so the per-part choice collapses to one.
  const bool collapsed =
      h.edges.empty() || h.edge_count() == r * (r - 1) / 2;
  BigInt work = count;
  if (!collapsed) {
    work *= big_pow(factorial_big(r), static_cast<unsigned>(m));
  }
  if (work > kEnumGuard) {
    throw TooLargeError("brute force over " + work.str() +
                        " embedded H-factors exceeds the 10000000 guard");
  }

  // One embedding choice: the colour counts it contributes plus the
  // permutation that realizes it.
  using Choice = std::pair<ColourCounts, std::vector<int>>;

  OracleResult best;
  bool have = false;
  std::vector<std::vector<Choice>> choices(m);
  std::vector<std::size_t> picked(m, 0);
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::vector<std::size_t> best_picked(m, 0);

  for_each_clique_factor(n_v, r, [&](const CliqueFactor& f) {
    if (have && best.min_deviation == Rational(0)) return false;

    for (std::size_t p = 0; p < m; ++p) {
      const auto& part = f.parts[p];
      choices[p].clear();
      if (collapsed) {
        ColourCounts counts(static_cast<std::size_t>(k), 0);
        for (const Edge& e : h.edges) {
          ++counts[static_cast<std::size_t>(
              g.colour(part[static_cast<std::size_t>(e.u)],
                       part[static_cast<std::size_t>(e.v)]))];
        }
        std::vector<int> id(static_cast<std::size_t>(r));
        std::iota(id.begin(), id.end(), 0);
        choices[p].emplace_back(std::move(counts), std::move(id));
        continue;
      }
      // Distinct count vectors over the r! bijections; the map key order
      // fixes a deterministic choice order and keeps the lexicographically
      // first permutation per vector.
      std::map<ColourCounts, std::vector<int>> distinct;
      std::iota(perm.begin(), perm.end(), 0);
      do {
        ColourCounts counts(static_cast<std::size_t>(k), 0);
        for (const Edge& e : h.edges) {
          const Vertex a = part[static_cast<std::size_t>(
              perm[static_cast<std::size_t>(e.u)])];
          const Vertex b = part[static_cast<std::size_t>(
              perm[static_cast<std::size_t>(e.v)])];
          ++counts[static_cast<std::size_t>(g.colour(a, b))];
        }
        distinct.emplace(std::move(counts), perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (auto& [counts, pi] : distinct) {
        choices[p].emplace_back(counts, pi);
      }
    }

    ColourCounts total(static_cast<std::size_t>(k), 0);
    auto dfs = [&](auto&& self, std::size_t p) -> void {
      if (p == m) {
        const Rational dev = deviation(total, k);
        if (!have || dev < best.min_deviation) {
          have = true;
          best.min_deviation = dev;
          best.factor = f;
          best.counts = total;
          best_picked = picked;
          best.embedding.h = h;
          best.embedding.assignments.assign(m, {});
          for (std::size_t q = 0; q < m; ++q) {
            const auto& pi = choices[q][best_picked[q]].second;
            auto& image = best.embedding.assignments[q];
            image.resize(static_cast<std::size_t>(r));
            for (int i = 0; i < r; ++i) {
              image[static_cast<std::size_t>(i)] =
                  f.parts[q][static_cast<std::size_t>(
                      pi[static_cast<std::size_t>(i)])];
            }
          }
        }
        return;
      }
      for (std::size_t c = 0; c < choices[p].size(); ++c) {
        picked[p] = c;
        const auto& counts = choices[p][c].first;
        for (int i = 0; i < k; ++i) {
          total[static_cast<std::size_t>(i)] +=
              counts[static_cast<std::size_t>(i)];
        }
        self(self, p + 1);
        for (int i = 0; i < k; ++i) {
          total[static_cast<std::size_t>(i)] -=
              counts[static_cast<std::size_t>(i)];
        }
        if (have && best.min_deviation == Rational(0)) return;
      }
    };
    dfs(dfs, 0);
    return true;
  });
  return best;
}

std::optional<ColouredCompleteGraph> find_unbalanced_colouring(
    Vertex n_v, const Palette& palette, const PatternGraph& h,
    std::uint64_t seed, std::int64_t trials) {
  for (std::int64_t t = 0; t < trials; ++t) {
    ColouredCompleteGraph g = random_balanced_colouring(
        n_v, palette, rng::derive_seed(seed, static_cast<std::uint64_t>(t)));
    if (min_deviation_bruteforce(g, h).min_deviation > Rational(0)) {
      return g;
    }
  }
  return std::nullopt;
}

}  // namespace balfactor
