#include "balfactor/bounds.hpp"

#include <cmath>
#include <cstdlib>

#include "balfactor/errors.hpp"
#include "balfactor/h_embedder.hpp"
#include "balfactor/palette.hpp"

namespace balfactor {

namespace {

const BigInt kScanGuard = 100'000'000;

// Exact |X| without materializing the space: dynamic programming over
// coordinates on (partial sum, partial l1). A partial sum of magnitude s
// needs at least s more units of l1 to return to zero, so states with
// |sum| > limit - l1 are dead and dropped.
BigInt count_swap_space(int k, int r) {
  const int limit = 4 * r - 4;
  const int off = limit;
  const int lo = 2 - 2 * r;
  const int hi = 2 * r - 2;
  std::vector<std::vector<BigInt>> dp(
      static_cast<std::size_t>(2 * limit + 1),
      std::vector<BigInt>(static_cast<std::size_t>(limit + 1), 0));
  dp[static_cast<std::size_t>(off)][0] = 1;
  for (int coord = 0; coord < k; ++coord) {
    std::vector<std::vector<BigInt>> next(
        static_cast<std::size_t>(2 * limit + 1),
        std::vector<BigInt>(static_cast<std::size_t>(limit + 1), 0));
    for (int s = -limit; s <= limit; ++s) {
      for (int l = 0; l <= limit; ++l) {
        const BigInt& ways = dp[static_cast<std::size_t>(s + off)]
                               [static_cast<std::size_t>(l)];
        if (ways == 0) continue;
        for (int v = lo; v <= hi; ++v) {
          const int nl = l + std::abs(v);
          if (nl > limit) continue;
          const int ns = s + v;
          if (std::abs(ns) > limit - nl) continue;
          next[static_cast<std::size_t>(ns + off)]
              [static_cast<std::size_t>(nl)] += ways;
        }
      }
    }
    dp = std::move(next);
  }
  BigInt total = 0;
  for (int l = 0; l <= limit; ++l) {
    total += dp[static_cast<std::size_t>(off)][static_cast<std::size_t>(l)];
  }
  return total;
}

}  // namespace

std::vector<SwapVector> enumerate_swap_space(int k, int r) {
  if (k < 2 || r < 2) {
    throw DimensionError("swap space needs k >= 2 and r >= 2");
  }
  const BigInt raw = big_pow(4 * r - 3, static_cast<unsigned>(k));
  if (raw > kScanGuard) {
    throw TooLargeError("scanning " + raw.str() +
                        " candidate vectors exceeds the 100000000 guard");
  }
  const int limit = 4 * r - 4;
  const int lo = 2 - 2 * r;
  const int hi = 2 * r - 2;
  std::vector<SwapVector> out;
  SwapVector x(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int i, int sum, int l1) -> void {
    if (i == k) {
      if (sum == 0) out.push_back(x);
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      const int nl = l1 + std::abs(v);
      if (nl > limit) continue;
      if (std::abs(sum + v) > limit - nl) continue;
      x[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, sum + v, nl);
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

LatticeFactsReport verify_lattice_facts(int d, int r) {
  if (d < 1 || r < 2) {
    throw DimensionError("lattice facts need d >= 1 and r >= 2");
  }
  const int k = d + 1;
  const Palette p = Palette::simplex(k);
  const auto space = enumerate_swap_space(k, r);

  LatticeFactsReport rep;
  bool have_min = false;
  for (const SwapVector& x : space) {
    const Rational nsq = norm_sq_of_counts_exact(p, x);
    if (nsq > rep.max_norm_sq) rep.max_norm_sq = nsq;
    // For the simplex, a zero-sum vector has zero weight only at x = 0.
    if (nsq == Rational(0)) continue;
    if (!have_min || nsq < rep.min_norm_sq) {
      rep.min_norm_sq = nsq;
      have_min = true;
    }
  }
  rep.max_norm = std::sqrt(rep.max_norm_sq.to_double());
  const Rational expect_min = Rational(2) + Rational(2, d);
  const Rational cap(16LL * (r - 1) * (r - 1));
  rep.pass = have_min && rep.min_norm_sq == expect_min &&
             rep.max_norm_sq <= cap;
  return rep;
}

BoundsTable constants(int k, int r) {
  if (k < 2 || r < 2) {
    throw DimensionError("constants need k >= 2 and r >= 2");
  }
  BoundsTable t;
  t.k = k;
  t.r = r;
  t.d = k - 1;
  t.gain_threshold = 8LL * (r - 1) * (r - 1);
  const double ldr = std::log(8.0 * t.d * r);
  t.log_min_angle = -static_cast<double>(t.d) * ldr;
  t.log_angle_ratio = 3.0 * t.d * t.d * ldr;
  t.swap_space_size = count_swap_space(k, r);
  t.log_clique_norm_bound =
      std::log(static_cast<double>(t.gain_threshold)) +
      big_to_double(t.swap_space_size - 1) * t.log_angle_ratio -
      t.log_min_angle;
  t.log_general_bound =
      std::pow(8.0 * t.d * r, static_cast<double>(t.d + 1)) * ldr;
  t.log_k_colour_bound =
      std::pow(8.0 * k * r, static_cast<double>(k)) * std::log(8.0 * k * r);
  t.embed_error_term = embedding_error_bound(k, r);
  return t;
}

}  // namespace balfactor
