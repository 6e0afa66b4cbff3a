#pragma once

// Seeded random finite instances: a pair of random permutations between
// {p0..p(n-1)} and {q0..q(n-1)}.

#include "sb/instance.hpp"

#include <numeric>
#include <random>

namespace sb {

namespace detail {

// Uniform draw in [0, n) by rejection; std distributions are not
// reproducible across standard libraries.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[draw_below(rng, i)]);
  return perm;
}

}  // namespace detail

inline Instance random_finite_instance(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Atom> p, q;
  for (std::size_t i = 0; i < size; ++i) {
    p.push_back("p" + std::to_string(i));
    q.push_back("q" + std::to_string(i));
  }
  const auto f_perm = detail::random_permutation(rng, size);
  const auto g_perm = detail::random_permutation(rng, size);
  std::vector<std::pair<Atom, Atom>> f, g;
  for (std::size_t i = 0; i < size; ++i) {
    f.emplace_back(p[i], q[f_perm[i]]);
    g.emplace_back(q[i], p[g_perm[i]]);
  }
  return {Mode::finite, FiniteCarrier(p), FiniteCarrier(q), FiniteTable(std::move(f)),
          FiniteTable(std::move(g))};
}

}  // namespace sb
