#pragma once

// Test-side reference computations. They share no code with the library:
// group elements are orbit points of the dual representation in long double,
// homology is ranked modulo a prime.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

/// m[s][t] with 0 for infinity.
using Matrix = std::vector<std::vector<int>>;

inline long double bilinear(const Matrix& m, int s, int t) {
  if (s == t) return 1.0L;
  if (m[s][t] == 0) return -1.0L;
  return -std::cos(3.14159265358979323846264338327950288L / m[s][t]);
}

/// Orbit of the point with all simple-root values 1 under the dual
/// representation; layer k holds the points of word length k. Stops early when
/// the orbit is exhausted.
struct Orbit {
  std::vector<std::uint64_t> sizes;
  bool exhausted = false;
};

inline Orbit orbit_sphere_sizes(const Matrix& m, int radius, std::size_t cap = 3'000'000) {
  const int n = static_cast<int>(m.size());
  using Point = std::vector<long double>;
  auto key = [](const Point& y) {
    std::vector<long long> k;
    for (auto v : y) k.push_back(std::llround(v * 1e6L));
    return k;
  };
  Orbit out;
  std::vector<Point> prev, cur{Point(n, 1.0L)};
  std::set<std::vector<long long>> prev_keys, cur_keys{key(cur[0])};
  std::size_t total = 1;
  out.sizes.push_back(1);
  for (int k = 1; k <= radius; ++k) {
    std::vector<Point> next;
    std::set<std::vector<long long>> next_keys;
    for (const auto& y : cur)
      for (int s = 0; s < n; ++s) {
        Point z = y;
        for (int t = 0; t < n; ++t) z[t] = y[t] - 2 * y[s] * bilinear(m, s, t);
        auto kz = key(z);
        if (prev_keys.count(kz) || cur_keys.count(kz) || next_keys.count(kz)) continue;
        next_keys.insert(kz);
        next.push_back(std::move(z));
      }
    if (next.empty()) {
      out.exhausted = true;
      break;
    }
    total += next.size();
    if (total > cap) break;
    out.sizes.push_back(next.size());
    prev = std::move(cur);
    prev_keys = std::move(cur_keys);
    cur = std::move(next);
    cur_keys = std::move(next_keys);
  }
  return out;
}

inline Matrix restrict(const Matrix& m, const std::vector<int>& T) {
  Matrix r(T.size(), std::vector<int>(T.size()));
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < T.size(); ++j) r[i][j] = m[T[i]][T[j]];
  return r;
}

inline std::vector<int> members(std::uint32_t T) {
  std::vector<int> v;
  for (int i = 0; i < 32; ++i)
    if ((T >> i) & 1u) v.push_back(i);
  return v;
}

inline long double determinant(std::vector<std::vector<long double>> a);

/// W_T is finite iff its cosine matrix is positive definite (all leading
/// principal minors positive).
inline bool spherical(const Matrix& m, std::uint32_t T) {
  const auto v = members(T);
  for (std::size_t k = 1; k <= v.size(); ++k) {
    std::vector<std::vector<long double>> g(k, std::vector<long double>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) g[i][j] = bilinear(m, v[i], v[j]);
    if (determinant(g) <= 1e-12L) return false;
  }
  return true;
}

inline long double determinant(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  long double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (std::fabs(a[p][c]) < 1e-15L) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline bool connected(const Matrix& m, std::uint32_t T) {
  const auto v = members(T);
  if (v.empty()) return false;
  std::set<int> seen{v[0]};
  std::vector<int> stack{v[0]};
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int t : v)
      if (!seen.count(t) && m[s][t] != 2) {
        seen.insert(t);
        stack.push_back(t);
      }
  }
  return seen.size() == v.size();
}

/// Connected, infinite, every proper subset finite, and singular Gram matrix.
inline bool irreducible_affine(const Matrix& m, std::uint32_t T) {
  const auto v = members(T);
  if (!connected(m, T) || spherical(m, T)) return false;
  for (int s : v)
    if (!spherical(m, T & ~(1u << s))) return false;
  std::vector<std::vector<long double>> g(v.size(), std::vector<long double>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) g[i][j] = bilinear(m, v[i], v[j]);
  return std::fabs(determinant(g)) < 1e-9L;
}

/// Brute-force hyperbolicity: no irreducible affine subset of size >= 3 and
/// no commuting pair of disjoint infinite subsets.
inline bool hyperbolic(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  const std::uint32_t count = 1u << n;
  std::vector<bool> inf(count);
  for (std::uint32_t T = 1; T < count; ++T) {
    inf[T] = !spherical(m, T);
    if (members(T).size() >= 3 && irreducible_affine(m, T)) return false;
  }
  for (std::uint32_t A = 1; A < count; ++A)
    for (std::uint32_t B = 1; B < count; ++B) {
      if ((A & B) || !inf[A] || !inf[B]) continue;
      bool commute = true;
      for (int a : members(A))
        for (int b : members(B)) commute = commute && m[a][b] == 2;
      if (commute) return false;
    }
  return true;
}

// ---------------------------------------------------------------- homology

inline constexpr std::int64_t kPrime = 1'000'000'007;

inline std::int64_t inverse_mod(std::int64_t a) {
  std::int64_t r = 1, e = kPrime - 2;
  a %= kPrime;
  if (a < 0) a += kPrime;
  while (e) {
    if (e & 1) r = r * a % kPrime;
    a = a * a % kPrime;
    e >>= 1;
  }
  return r;
}

/// Rank of a dense matrix over F_p.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] % kPrime == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    const std::int64_t inv = inverse_mod(a[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] % kPrime == 0) continue;
      const std::int64_t f = (a[r][c] % kPrime + kPrime) % kPrime * inv % kPrime;
      for (std::size_t k = c; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[rank][k]) % kPrime + kPrime) % kPrime;
    }
    ++rank;
  }
  return rank;
}

using Simplex = std::vector<int>;

inline std::vector<std::set<Simplex>> close_under_faces(const std::vector<Simplex>& facets) {
  std::vector<std::set<Simplex>> by_dim;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    const std::size_t n = f.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) s.push_back(f[i]);
      if (by_dim.size() < s.size()) by_dim.resize(s.size());
      by_dim[s.size() - 1].insert(s);
    }
  }
  return by_dim;
}

/// Rational Betti numbers of (K, L) with L given by a predicate on simplices
/// (closed under faces); absolute when the predicate is always false.
template <class InL>
std::vector<std::size_t> relative_betti(const std::vector<Simplex>& facets, InL in_L) {
  const auto all = close_under_faces(facets);
  std::vector<std::vector<Simplex>> cells(all.size());
  for (std::size_t k = 0; k < all.size(); ++k)
    for (const auto& s : all[k])
      if (!in_L(s)) cells[k].push_back(s);
  std::vector<std::size_t> ranks(all.size() + 1, 0);  // ranks[k] = rank ∂_k
  for (std::size_t k = 1; k < all.size(); ++k) {
    std::map<Simplex, std::size_t> row;
    for (std::size_t i = 0; i < cells[k - 1].size(); ++i) row[cells[k - 1][i]] = i;
    std::vector<std::vector<std::int64_t>> d(cells[k - 1].size(), std::vector<std::int64_t>(cells[k].size(), 0));
    for (std::size_t j = 0; j < cells[k].size(); ++j)
      for (std::size_t i = 0; i < cells[k][j].size(); ++i) {
        Simplex f = cells[k][j];
        f.erase(f.begin() + i);
        auto it = row.find(f);
        if (it != row.end()) d[it->second][j] = i % 2 ? kPrime - 1 : 1;
      }
    ranks[k] = rank_mod_p(std::move(d));
  }
  std::vector<std::size_t> betti(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) betti[k] = cells[k].size() - ranks[k] - ranks[k + 1];
  return betti;
}

inline std::vector<std::size_t> betti(const std::vector<Simplex>& facets) {
  return relative_betti(facets, [](const Simplex&) { return false; });
}

/// vcd as the top degree of H_*(D, D^T) over all T, with D the order complex
/// of spherical subsets built here from scratch.
inline int vcd(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::uint32_t> poset;
  for (std::uint32_t T = 0; T < (1u << n); ++T)
    if (spherical(m, T)) poset.push_back(T);
  // maximal chains by depth-first extension
  std::vector<Simplex> chains;
  std::vector<int> chain;
  auto below = [&](int a, int b) { return poset[a] != poset[b] && (poset[a] & poset[b]) == poset[a]; };
  std::function<void()> extend = [&] {
    bool grew = false;
    for (int v = 0; v < static_cast<int>(poset.size()); ++v)
      if (chain.empty() ? true : below(chain.back(), v)) {
        if (chain.empty() && poset[v] != 0) continue;
        grew = true;
        chain.push_back(v);
        extend();
        chain.pop_back();
      }
    if (!grew) chains.push_back(chain);
  };
  extend();
  int top = 0;
  for (std::uint32_t T = 0; T < (1u << n); ++T) {
    const auto b = relative_betti(chains, [&](const Simplex& s) {
      for (int v : s)
        if ((poset[v] & T) == 0) return false;
      return true;
    });
    for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k)
      if (b[k]) {
        top = std::max(top, k);
        break;
      }
  }
  return top;
}

}  // namespace oracle
