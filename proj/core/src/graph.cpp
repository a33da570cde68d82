#include "balfactor/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "balfactor/errors.hpp"
#include "balfactor/rng.hpp"

namespace balfactor {

ColouredCompleteGraph::ColouredCompleteGraph(Vertex n_v, Palette palette,
                                             std::vector<std::int32_t> colours)
    : n_(n_v), palette_(std::move(palette)), colours_(std::move(colours)) {
  if (n_ < 2) throw EdgeError("complete graph needs at least 2 vertices");
  const auto expected = static_cast<std::size_t>(edge_count());
  if (colours_.size() != expected) {
    throw DimensionError("expected " + std::to_string(expected) +
                         " edge colours, got " +
                         std::to_string(colours_.size()));
  }
  for (std::int32_t c : colours_) {
    if (c < 0 || c >= palette_.colour_count()) {
      throw EdgeError("colour index " + std::to_string(c) +
                      " outside palette");
    }
  }
}

namespace {

// Strips a '#' comment and returns the fields of one line.
std::vector<std::string> fields_of(const std::string& raw) {
  std::string line = raw;
  if (auto pos = line.find('#'); pos != std::string::npos) {
    line.resize(pos);
  }
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& tok, int line_no,
                       const char* what) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

ColouredCompleteGraph ColouredCompleteGraph::load(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, raw)) {
    ++line_no;
    header = fields_of(raw);
    if (!header.empty()) break;
  }
  if (header.empty()) throw ParseError(line_no, "missing header line");
  if (header.size() != 2) {
    throw ParseError(line_no, "header must be '<n_v> <k>'");
  }
  const std::int64_t n_v = parse_int(header[0], line_no, "vertex count");
  const std::int64_t k = parse_int(header[1], line_no, "colour count");
  if (n_v < 2) throw ParseError(line_no, "vertex count must be at least 2");
  if (k < 2) throw ParseError(line_no, "colour count must be at least 2");

  const std::int64_t n_edges = n_v * (n_v - 1) / 2;
  std::vector<std::int32_t> colours(static_cast<std::size_t>(n_edges), -1);
  std::int64_t seen = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto f = fields_of(raw);
    if (f.empty()) continue;
    if (f.size() != 3) {
      throw ParseError(line_no, "edge line must be '<u> <v> <colour>'");
    }
    const std::int64_t u = parse_int(f[0], line_no, "vertex");
    const std::int64_t v = parse_int(f[1], line_no, "vertex");
    const std::int64_t c = parse_int(f[2], line_no, "colour");
    if (u == v) {
      throw ParseError(line_no, "loop " + std::to_string(u) + " " +
                                    std::to_string(v));
    }
    if (u < 0 || v < 0 || u >= n_v || v >= n_v) {
      throw ParseError(line_no, "vertex out of range");
    }
    if (u > v) {
      throw ParseError(line_no, "edges must be written with u < v");
    }
    if (c < 0 || c >= k) {
      throw ParseError(line_no, "colour index " + std::to_string(c) +
                                    " out of range [0, " + std::to_string(k) +
                                    ")");
    }
    const auto idx = rank(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (colours[idx] != -1) {
      throw ParseError(line_no, "duplicate pair " + std::to_string(u) + " " +
                                    std::to_string(v));
    }
    colours[idx] = static_cast<std::int32_t>(c);
    ++seen;
  }
  if (seen != n_edges) {
    for (Vertex v = 1; v < n_v; ++v) {
      for (Vertex u = 0; u < v; ++u) {
        if (colours[rank(u, v)] == -1) {
          throw ParseError(line_no + 1,
                           "missing pair " + std::to_string(u) + " " +
                               std::to_string(v));
        }
      }
    }
  }
  return ColouredCompleteGraph(static_cast<Vertex>(n_v),
                               Palette::simplex(static_cast<int>(k)),
                               std::move(colours));
}

void ColouredCompleteGraph::save(std::ostream& out) const {
  out << n_ << ' ' << palette_.colour_count() << '\n';
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v = u + 1; v < n_; ++v) {
      out << u << ' ' << v << ' ' << colour(u, v) << '\n';
    }
  }
}

ColourCounts ColouredCompleteGraph::total_counts() const {
  ColourCounts counts(palette_.colour_count(), 0);
  for (std::int32_t c : colours_) ++counts[c];
  return counts;
}

std::vector<Edge> CliqueFactor::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      for (std::size_t j = i + 1; j < part.size(); ++j) {
        Vertex a = part[i];
        Vertex b = part[j];
        out.push_back(a < b ? Edge{a, b} : Edge{b, a});
      }
    }
  }
  return out;
}

void CliqueFactor::check_valid() const {
  const Vertex n = vertex_count();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (static_cast<int>(parts[p].size()) != r) {
      throw DivisibilityError("part " + std::to_string(p) +
                              " has wrong size");
    }
    for (Vertex v : parts[p]) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
        throw EdgeError("invalid or repeated vertex in factor");
      }
      seen[static_cast<std::size_t>(v)] = true;
      if (part_of[static_cast<std::size_t>(v)] != static_cast<std::int32_t>(p)) {
        throw EdgeError("part_of index out of sync");
      }
    }
  }
  if (static_cast<std::int64_t>(parts.size()) * r != n) {
    throw DivisibilityError("parts do not cover the vertex set");
  }
}

PatternGraph PatternGraph::complete(int r) {
  if (r < 2) throw PatternError("pattern graph needs at least 2 vertices");
  PatternGraph h;
  h.r = r;
  for (Vertex u = 0; u < r; ++u) {
    for (Vertex v = u + 1; v < r; ++v) h.edges.push_back({u, v});
  }
  return h;
}

PatternGraph PatternGraph::load(std::istream& in) {
  std::string raw;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, raw)) {
    ++line_no;
    header = fields_of(raw);
    if (!header.empty()) break;
  }
  if (header.empty()) throw ParseError(line_no, "missing header line");
  if (header.size() != 2) {
    throw ParseError(line_no, "header must be '<r> <m>'");
  }
  const std::int64_t r = parse_int(header[0], line_no, "vertex count");
  const std::int64_t m = parse_int(header[1], line_no, "edge count");
  if (r < 2) throw ParseError(line_no, "pattern needs at least 2 vertices");
  if (m < 0 || m > r * (r - 1) / 2) {
    throw ParseError(line_no, "edge count out of range");
  }

  PatternGraph h;
  h.r = static_cast<int>(r);
  std::vector<bool> present(static_cast<std::size_t>(r * (r - 1) / 2), false);
  std::int64_t seen = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto f = fields_of(raw);
    if (f.empty()) continue;
    if (f.size() != 2) throw ParseError(line_no, "edge line must be '<u> <v>'");
    const std::int64_t u = parse_int(f[0], line_no, "vertex");
    const std::int64_t v = parse_int(f[1], line_no, "vertex");
    if (u == v) throw ParseError(line_no, "loop");
    if (u < 0 || v < 0 || u >= r || v >= r) {
      throw ParseError(line_no, "vertex out of range");
    }
    if (u > v) throw ParseError(line_no, "edges must be written with u < v");
    const auto idx = ColouredCompleteGraph::rank(static_cast<Vertex>(u),
                                                 static_cast<Vertex>(v));
    if (present[idx]) throw ParseError(line_no, "duplicate edge");
    present[idx] = true;
    h.edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    ++seen;
  }
  if (seen != m) {
    throw ParseError(line_no + 1, "expected " + std::to_string(m) +
                                      " edges, found " + std::to_string(seen));
  }
  std::sort(h.edges.begin(), h.edges.end());
  return h;
}

DeviationReport make_deviation_report(const Palette& p, ColourCounts counts) {
  DeviationReport rep;
  rep.n_edges = 0;
  for (std::int64_t c : counts) rep.n_edges += c;
  rep.deviation = deviation(counts, p.colour_count());
  if (p.exact()) {
    rep.norm_sq = norm_sq_of_counts_exact(p, counts);
    rep.norm_sq_real = rep.norm_sq.to_double();
    rep.exact_norm = true;
  } else {
    rep.norm_sq_real = norm_sq_of_counts(p, counts);
    rep.exact_norm = false;
  }
  rep.counts = std::move(counts);
  return rep;
}

double balance_alpha(const ColouredCompleteGraph& g) {
  return std::sqrt(norm_sq_of_counts(g.palette(), g.total_counts()));
}

ColourCounts factor_counts(const ColouredCompleteGraph& g,
                           std::span<const Edge> edges) {
  ColourCounts counts(g.colour_count(), 0);
  for (const Edge& e : edges) {
    if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= g.vertex_count() ||
        e.v >= g.vertex_count()) {
      throw EdgeError("edge (" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + ") is not in the host graph");
    }
    ++counts[static_cast<std::size_t>(g.colour(e.u, e.v))];
  }
  return counts;
}

Rational deviation(std::span<const std::int64_t> counts, int k) {
  if (static_cast<int>(counts.size()) != k) {
    throw DimensionError("count vector length does not match k");
  }
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  const Rational mean(total, k);
  Rational dev(0);
  for (std::int64_t c : counts) dev += (Rational(c) - mean).abs();
  return dev;
}

ColouredCompleteGraph random_balanced_colouring(Vertex n_v,
                                                const Palette& palette,
                                                std::uint64_t seed) {
  if (n_v < 2) throw EdgeError("need at least 2 vertices");
  const std::int64_t n_edges = static_cast<std::int64_t>(n_v) * (n_v - 1) / 2;
  const int k = palette.colour_count();
  const std::int64_t base = n_edges / k;
  const std::int64_t remainder = n_edges % k;

  rng::Engine eng(seed);

  // Colours receiving one extra edge: the first `remainder` entries of a
  // Fisher-Yates shuffle of [0, k).
  std::vector<std::int32_t> order(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
  rng::shuffle(eng, order);

  std::vector<std::int32_t> pool;
  pool.reserve(static_cast<std::size_t>(n_edges));
  for (int i = 0; i < k; ++i) {
    const std::int64_t copies =
        base + (std::find(order.begin(), order.begin() + remainder, i) !=
                        order.begin() + remainder
                    ? 1
                    : 0);
    pool.insert(pool.end(), static_cast<std::size_t>(copies), i);
  }
  rng::shuffle(eng, pool);
  return ColouredCompleteGraph(n_v, palette, std::move(pool));
}

}  // namespace balfactor
