#include "balfactor/h_embedder.hpp"

#include <algorithm>
#include <numeric>

#include "balfactor/errors.hpp"

namespace balfactor {

std::vector<Edge> HEmbedding::edges() const {
  std::vector<Edge> out;
  out.reserve(assignments.size() * h.edges.size());
  for (const auto& image : assignments) {
    for (const Edge& e : h.edges) {
      Vertex a = image[static_cast<std::size_t>(e.u)];
      Vertex b = image[static_cast<std::size_t>(e.v)];
      out.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
  }
  return out;
}

CliqueClassification classify_cliques(const ColouredCompleteGraph& g,
                                      const CliqueFactor& f) {
  f.check_valid();
  if (f.vertex_count() != g.vertex_count()) {
    throw EdgeError("factor does not cover the host graph");
  }
  CliqueClassification cls;
  std::vector<std::int32_t> pattern;
  pattern.reserve(static_cast<std::size_t>(f.r) * (f.r - 1) / 2);
  for (std::size_t p = 0; p < f.parts.size(); ++p) {
    const auto& part = f.parts[p];
    pattern.clear();
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = i + 1; j < part.size(); ++j) {
        pattern.push_back(g.colour(part[i], part[j]));
      }
    }
    cls.classes[pattern].push_back(static_cast<std::int32_t>(p));
  }
  return cls;
}

std::pair<HEmbedding, DeviationReport> embed_h_factor(
    const ColouredCompleteGraph& g, const CliqueFactor& f,
    const PatternGraph& h, std::uint64_t /*seed*/) {
  if (h.r != f.r) {
    throw PatternError("pattern has " + std::to_string(h.r) +
                       " vertices but factor parts have " +
                       std::to_string(f.r));
  }
  const auto cls = classify_cliques(g, f);

  HEmbedding emb;
  emb.h = h;
  emb.assignments.resize(f.parts.size());
  for (std::size_t p = 0; p < f.parts.size(); ++p) {
    emb.assignments[p] = f.parts[p];
  }

  std::size_t block_size = 1;
  for (int i = 2; i <= f.r; ++i) block_size *= static_cast<std::size_t>(i);

  std::vector<int> perm(static_cast<std::size_t>(f.r));
  for (const auto& [pattern, members] : cls.classes) {
    const std::size_t full = members.size() / block_size * block_size;
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t m = 0; m < full; ++m) {
      const auto p = static_cast<std::size_t>(members[m]);
      for (int i = 0; i < f.r; ++i) {
        emb.assignments[p][static_cast<std::size_t>(i)] =
            f.parts[p][static_cast<std::size_t>(
                perm[static_cast<std::size_t>(i)])];
      }
      if (!std::next_permutation(perm.begin(), perm.end())) {
        std::iota(perm.begin(), perm.end(), 0);
      }
    }
    // Remainder parts keep the identity assignment set above.
  }

  const auto h_edges = emb.edges();
  auto report = make_deviation_report(g.palette(), factor_counts(g, h_edges));
  return {std::move(emb), std::move(report)};
}

BigInt embedding_error_bound(int k, int r) {
  if (k < 2 || r < 2) {
    throw PatternError("error bound needs k >= 2 and r >= 2");
  }
  const auto pairs = static_cast<unsigned>(r) * (r - 1) / 2;
  BigInt factorial = 1;
  for (int i = 2; i <= r; ++i) factorial *= i;
  return 2 * big_pow(k, pairs) * factorial * pairs;
}

}  // namespace balfactor
