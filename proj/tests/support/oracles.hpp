#pragma once

// Slow reference implementations used only to cross-check the library.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "sstpca/tensor.hpp"

namespace oracle {

using Vec = std::vector<double>;

/// Full n^p sum of Y_i * prod_j u_j[i_j].
inline double inner(const sstpca::DenseTensor& y, const std::vector<Vec>& factors) {
  double sum = 0.0;
  for (std::uint64_t e = 0; e < y.size(); ++e) {
    const auto idx = sstpca::unflatten(e, y.n(), y.p());
    double w = y[e];
    for (std::uint32_t j = 0; j < y.p(); ++j) w *= factors[j][idx[j] - 1];
    sum += w;
  }
  return sum;
}

inline Vec basis(std::uint32_t n, std::uint32_t i) {
  Vec e(n, 0.0);
  e[i] = 1.0;
  return e;
}

/// Every element of U_t as a dense vector, both signs of every pattern.
inline std::vector<Vec> all_flat(std::uint32_t n, std::uint32_t t) {
  std::vector<Vec> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) != t) continue;
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << t); ++signs) {
      Vec v(n, 0.0);
      std::uint32_t pos = 0;
      for (std::uint32_t i = 0; i < n; ++i) {
        if ((mask >> i & 1) == 0) continue;
        v[i] = ((signs >> pos & 1) ? -1.0 : 1.0) / std::sqrt(static_cast<double>(t));
        ++pos;
      }
      out.push_back(v);
    }
  }
  return out;
}

inline std::uint64_t factorial(std::uint32_t m) {
  std::uint64_t f = 1;
  for (std::uint32_t i = 2; i <= m; ++i) f *= i;
  return f;
}

/// Sum of multinomial(m; 2b_1, ..., 2b_s) over compositions b of m/2 into s positive parts.
inline std::uint64_t even_surj_by_compositions(std::uint32_t m, std::uint32_t s) {
  if (m % 2 != 0 || s == 0 || s > m / 2) return 0;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> parts;
  auto rec = [&](auto&& self, std::uint32_t remaining, std::uint32_t slots) -> void {
    if (slots == 0) {
      if (remaining != 0) return;
      std::uint64_t term = factorial(m);
      for (const auto b : parts) term /= factorial(2 * b);
      total += term;
      return;
    }
    for (std::uint32_t b = 1; b <= remaining; ++b) {
      parts.push_back(b);
      self(self, remaining - b, slots - 1);
      parts.pop_back();
    }
  };
  rec(rec, m / 2, s);
  return total;
}

/// Words of length m over j letters with all letter counts even, by enumeration.
inline std::uint64_t even_all_by_words(std::uint32_t m, std::uint32_t j) {
  if (j == 0) return m == 0 ? 1 : 0;
  std::uint64_t words = 1;
  for (std::uint32_t i = 0; i < m; ++i) words *= j;
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < words; ++w) {
    std::vector<std::uint32_t> c(j, 0);
    std::uint64_t x = w;
    for (std::uint32_t i = 0; i < m; ++i) {
      ++c[x % j];
      x /= j;
    }
    bool even = true;
    for (const auto v : c) even = even && v % 2 == 0;
    if (even) ++count;
  }
  return count;
}

}  // namespace oracle
