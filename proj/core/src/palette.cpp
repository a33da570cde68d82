#include "balfactor/palette.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "balfactor/errors.hpp"

namespace balfactor {

namespace {
constexpr double kTolerance = 1e-9;
}

Palette Palette::simplex(int k) {
  if (k < 2) {
    throw PaletteError("simplex palette needs at least 2 colours, got " +
                       std::to_string(k));
  }
  Palette p;
  p.k_ = k;
  p.dim_ = k - 1;
  p.mode_ = Mode::kSimplex;
  return p;
}

Palette Palette::explicit_vectors(std::vector<std::vector<double>> vectors) {
  const int k = static_cast<int>(vectors.size());
  if (k < 2) {
    throw PaletteError("explicit palette needs at least 2 colours, got " +
                       std::to_string(k));
  }
  const std::size_t d = vectors[0].size();
  if (d < 1) throw PaletteError("explicit palette needs dimension >= 1");
  for (int i = 0; i < k; ++i) {
    if (vectors[i].size() != d) {
      throw PaletteError("colour " + std::to_string(i) +
                         " has mismatched dimension");
    }
    double nsq = 0;
    for (double c : vectors[i]) nsq += c * c;
    if (std::abs(std::sqrt(nsq) - 1.0) > kTolerance) {
      throw PaletteError("colour " + std::to_string(i) +
                         " is not a unit vector");
    }
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      double dsq = 0;
      for (std::size_t t = 0; t < d; ++t) {
        double diff = vectors[i][t] - vectors[j][t];
        dsq += diff * diff;
      }
      if (std::sqrt(dsq) <= kTolerance) {
        throw PaletteError("colours " + std::to_string(i) + " and " +
                           std::to_string(j) + " are duplicates");
      }
    }
  }

  Palette p;
  p.k_ = k;
  p.dim_ = static_cast<int>(d);
  p.mode_ = Mode::kExplicit;
  p.gram_.assign(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double dot = 0;
      for (std::size_t t = 0; t < d; ++t) dot += vectors[i][t] * vectors[j][t];
      p.gram_[static_cast<std::size_t>(i) * k + j] = dot;
      p.gram_[static_cast<std::size_t>(j) * k + i] = dot;
    }
  }
  p.vectors_ = std::move(vectors);
  return p;
}

Rational Palette::gram_exact(int i, int j) const {
  if (mode_ != Mode::kSimplex) {
    throw PaletteError("exact Gram entries exist only in simplex mode");
  }
  if (i < 0 || j < 0 || i >= k_ || j >= k_) {
    throw DimensionError("Gram index out of range");
  }
  return i == j ? Rational(1) : Rational(-1, k_ - 1);
}

double Palette::gram(int i, int j) const {
  if (i < 0 || j < 0 || i >= k_ || j >= k_) {
    throw DimensionError("Gram index out of range");
  }
  if (mode_ == Mode::kSimplex) {
    return i == j ? 1.0 : -1.0 / (k_ - 1);
  }
  return gram_[static_cast<std::size_t>(i) * k_ + j];
}

Rational norm_sq_of_counts_exact(const Palette& p,
                                 std::span<const std::int64_t> counts) {
  if (!p.exact()) {
    throw PaletteError("exact norm requires a simplex palette");
  }
  if (static_cast<int>(counts.size()) != p.colour_count()) {
    throw DimensionError("count vector length " +
                         std::to_string(counts.size()) + " != k = " +
                         std::to_string(p.colour_count()));
  }
  const std::int64_t k = p.colour_count();
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (std::int64_t b : counts) {
    sum += b;
    sum_sq += b * b;
  }
  // (k * sum(b^2) - (sum b)^2) / (k - 1); checked 128-bit intermediates.
  return (Rational(k) * Rational(sum_sq) - Rational(sum) * Rational(sum)) /
         Rational(k - 1);
}

double norm_sq_of_counts(const Palette& p,
                         std::span<const std::int64_t> counts) {
  if (p.exact()) return norm_sq_of_counts_exact(p, counts).to_double();
  if (static_cast<int>(counts.size()) != p.colour_count()) {
    throw DimensionError("count vector length " +
                         std::to_string(counts.size()) + " != k = " +
                         std::to_string(p.colour_count()));
  }
  const int k = p.colour_count();
  double total = 0;
  for (int i = 0; i < k; ++i) {
    if (counts[i] == 0) continue;
    for (int j = 0; j < k; ++j) {
      if (counts[j] == 0) continue;
      total += static_cast<double>(counts[i]) * static_cast<double>(counts[j]) *
               p.gram(i, j);
    }
  }
  return total;
}

double deviation_upper_from_norm(int k, double norm) {
  if (norm < 0) throw DimensionError("norm must be nonnegative");
  return std::sqrt(static_cast<double>(k - 1)) * norm;
}

}  // namespace balfactor
