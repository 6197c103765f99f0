#pragma once

// Test-only oracle: cohomology of Z^k with coefficients in Z^n twisted by
// commuting matrices M_1..M_k, computed from the Koszul complex
//   K^p = (+)_{|S| = p} Z^n,  (d x)_S = sum_{j in S} (-1)^{pos(j,S)} (M_j - I) x_{S - j}.
// For a torus base this equals the twisted simplicial cohomology.

#include <affinelag/matrix.hpp>

#include <vector>

#include "dense_smith.hpp"

namespace oracle {

struct KoszulGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
};

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t k, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != p) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

inline IntMatrix koszul_differential(const std::vector<IntMatrix>& loops, std::size_t p) {
  const std::size_t k = loops.size();
  const std::size_t n = loops.front().rows();
  auto source = subsets_of_size(k, p);
  auto target = subsets_of_size(k, p + 1);
  IntMatrix d(target.size() * n, source.size() * n);
  for (std::size_t t = 0; t < target.size(); ++t)
    for (std::size_t pos = 0; pos < target[t].size(); ++pos) {
      std::vector<std::size_t> face = target[t];
      const std::size_t j = face[pos];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(pos));
      std::size_t s = 0;
      while (source[s] != face) ++s;
      const int sign = pos % 2 ? -1 : 1;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          Integer v = loops[j](r, c) - (r == c ? 1 : 0);
          d(t * n + r, s * n + c) += sign * v;
        }
    }
  return d;
}

inline KoszulGroup koszul_cohomology(const std::vector<IntMatrix>& loops, std::size_t p) {
  const std::size_t k = loops.size();
  const std::size_t n = loops.front().rows();
  KoszulGroup g;
  if (p > k) return g;
  std::size_t dim = subsets_of_size(k, p).size() * n;
  std::size_t rank_out = p < k ? dense_rank(koszul_differential(loops, p)) : 0;
  std::vector<Integer> in_factors;
  if (p > 0) in_factors = dense_invariant_factors(koszul_differential(loops, p - 1));
  g.free_rank = dim - rank_out - in_factors.size();
  for (const auto& d : in_factors)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

}  // namespace oracle
