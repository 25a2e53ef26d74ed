// Finitely generated abelian groups for the exhaustive contramodule sweeps,
// presented in deliberately non-normal form.
#pragma once

#include <random>
#include <vector>

#include "weightkit/fpmod.hpp"
#include "weightkit/sampling.hpp"

namespace weightkit::samples {

struct GroupShape {
  std::vector<long> factors;  // d_1 | d_2 | ...
  std::size_t free_rank = 0;
};

/// Every divisibility chain of length <= max_len with entries in [lo, hi],
/// times every free rank <= max_free.
inline std::vector<GroupShape> group_shapes(long lo, long hi, std::size_t max_len,
                                            std::size_t max_free) {
  std::vector<std::vector<long>> chains = {{}};
  std::vector<std::vector<long>> frontier = {{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<long>> next;
    for (const auto& c : frontier)
      for (long d = c.empty() ? lo : c.back(); d <= hi; ++d)
        if (c.empty() || d % c.back() == 0) {
          auto e = c;
          e.push_back(d);
          next.push_back(e);
        }
    chains.insert(chains.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<GroupShape> out;
  for (std::size_t f = 0; f <= max_free; ++f)
    for (const auto& c : chains) out.push_back(GroupShape{c, f});
  return out;
}

/// Number of prime factors of the torsion order, counted with multiplicity.
inline unsigned prime_length(const GroupShape& g) {
  unsigned n = 0;
  for (long d : g.factors)
    for (long p = 2; d > 1; ++p)
      while (d % p == 0) {
        d /= p;
        ++n;
      }
  return n;
}

/// Relations diag(factors, 0...) * W for a random unimodular W, so the
/// module is the requested group on scrambled generators.
inline FpModule scrambled_group(const GroupShape& g, Rng& rng) {
  const RingSpec Z = RingSpec::integers();
  const std::size_t b = g.factors.size() + g.free_rank;
  Matrix w = Matrix::identity(Z, b);
  if (b >= 2) {
    std::uniform_int_distribution<std::size_t> idx(0, b - 1);
    std::uniform_int_distribution<long> f(-2, 2);
    for (int step = 0; step < 5; ++step) {
      std::size_t a = idx(rng), c = idx(rng);
      if (a != c) w.add_row_multiple(a, c, Z.from_int(f(rng)));
    }
  }
  Matrix rel(Z, g.factors.size(), b);
  for (std::size_t i = 0; i < g.factors.size(); ++i) rel(i, i) = Z.from_int(g.factors[i]);
  return FpModule(Z, b, rel * w);
}

}  // namespace weightkit::samples
