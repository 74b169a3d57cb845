#include "coxinv/homology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "coxinv/error.hpp"

namespace coxinv {

ChainComplex::ChainComplex(const SimplicialComplex& K) {
  for (int k = 0; k <= K.dimension(); ++k) dims_.push_back(K.simplices(k).size());
  boundaries_.resize(dims_.size());
  for (int k = 1; k <= K.dimension(); ++k) {
    auto& cols = boundaries_[k];
    for (const auto& s : K.simplices(k)) {
      SparseColumn col;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const auto row = K.index_of(face);
        if (!row) fail(ErrorKind::Internal, "complex is not closed under faces");
        col.emplace_back(*row, i % 2 == 0 ? 1 : -1);
      }
      std::sort(col.begin(), col.end());
      cols.push_back(std::move(col));
    }
  }
  // ∂_{k-1} ∘ ∂_k = 0
  for (int k = 2; k <= top(); ++k)
    for (const auto& col : boundaries_[k]) {
      std::vector<long> acc(dims_[k - 2], 0);
      for (const auto& [row, c] : col)
        for (const auto& [r2, c2] : boundaries_[k - 1][row]) acc[r2] += static_cast<long>(c) * c2;
      if (std::any_of(acc.begin(), acc.end(), [](long v) { return v != 0; }))
        fail(ErrorKind::Internal, "boundary of a boundary is nonzero");
    }
}

const std::vector<SparseColumn>& ChainComplex::boundary(int k) const {
  static const std::vector<SparseColumn> none;
  if (k <= 0 || k > top()) return none;
  return boundaries_[k];
}

std::vector<Rational> ChainComplex::apply(int k, const std::vector<Rational>& chain) const {
  if (chain.size() != rank_of_chains(k)) fail(ErrorKind::Internal, "chain size mismatch");
  std::vector<Rational> out(rank_of_chains(k - 1), 0);
  const auto& cols = boundary(k);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (chain[j] == 0) continue;
    for (const auto& [row, c] : cols[j]) out[row] += chain[j] * c;
  }
  return out;
}

std::size_t rational_rank(const std::vector<SparseColumn>& columns, const std::vector<bool>* keep_rows,
                          const std::vector<bool>* keep_columns) {
  using Entry = std::pair<int, Rational>;
  using Column = std::vector<Entry>;
  // pivot column indexed by its largest row
  std::unordered_map<int, Column> pivots;
  std::size_t rank = 0;
  Column scratch;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (keep_columns && !(*keep_columns)[j]) continue;
    Column v;
    for (const auto& [row, c] : columns[j])
      if (!keep_rows || (*keep_rows)[row]) v.emplace_back(row, Rational(c));
    while (!v.empty()) {
      const int low = v.back().first;
      auto it = pivots.find(low);
      if (it == pivots.end()) {
        pivots.emplace(low, std::move(v));
        ++rank;
        break;
      }
      const Column& p = it->second;
      const Rational f = v.back().second / p.back().second;
      scratch.clear();
      std::size_t a = 0, b = 0;
      while (a < v.size() || b < p.size()) {
        if (b == p.size() || (a < v.size() && v[a].first < p[b].first)) {
          scratch.push_back(std::move(v[a++]));
        } else if (a == v.size() || p[b].first < v[a].first) {
          scratch.emplace_back(p[b].first, -f * p[b].second);
          ++b;
        } else {
          Rational x = v[a].second - f * p[b].second;
          if (x != 0) scratch.emplace_back(v[a].first, std::move(x));
          ++a;
          ++b;
        }
      }
      std::swap(v, scratch);
    }
  }
  return rank;
}

std::vector<std::size_t> betti(const SimplicialComplex& K, const ChainComplex& C, const Subcomplex* L,
                               bool reduced) {
  const int n = K.dimension();
  std::vector<std::vector<bool>> keep(n + 1);
  std::vector<std::size_t> dim(n + 1, 0);
  for (int k = 0; k <= n; ++k) {
    keep[k].assign(K.simplices(k).size(), true);
    if (L)
      for (std::size_t i = 0; i < keep[k].size(); ++i) keep[k][i] = !L->contains(k, static_cast<int>(i));
    dim[k] = static_cast<std::size_t>(std::count(keep[k].begin(), keep[k].end(), true));
  }
  std::vector<std::size_t> rank(n + 2, 0);  // rank[k] = rank ∂_k
  for (int k = 1; k <= n; ++k) rank[k] = rational_rank(C.boundary(k), &keep[k - 1], &keep[k]);
  std::vector<std::size_t> out(n + 1, 0);
  for (int k = 0; k <= n; ++k) out[k] = dim[k] - rank[k] - rank[k + 1];
  const bool relative = L && !L->is_empty();
  if (reduced && !relative && n >= 0) out[0] -= 1;
  return out;
}

std::vector<std::size_t> betti(const SimplicialComplex& K, const Subcomplex* L, const BettiOptions& opts) {
  if (K.size() > opts.max_simplices)
    fail(ErrorKind::ResourceExceeded, "complex has " + std::to_string(K.size()) + " simplices, above the cap of " +
                                          std::to_string(opts.max_simplices));
  const ChainComplex C(K);
  return betti(K, C, L, opts.reduced);
}

PMVerdict pm_verdict(const SimplicialComplex& K) {
  PMVerdict v;
  const int n = K.dimension();
  v.top_dimension = n;
  if (n < 0) return v;
  const auto maximal = K.maximal_simplices();
  v.purely_dimensional =
      std::all_of(maximal.begin(), maximal.end(), [&](const Simplex& s) { return static_cast<int>(s.size()) == n + 1; });
  const auto& top = K.simplices(n);

  if (n == 0) {
    v.zero_dimensional_convention = true;
    v.pseudomanifold = top.size() == 2;
    v.gallery_connected = true;  // vertices share the empty face
    if (v.pseudomanifold) {
      v.orientable = true;
      v.fundamental_cycle = std::vector<int>{1, -1};
    }
    return v;
  }

  // codimension-one incidences among top simplices
  const std::size_t nf = K.simplices(n - 1).size();
  std::vector<std::vector<std::pair<int, int>>> cofaces(nf);  // (top index, incidence sign)
  for (std::size_t j = 0; j < top.size(); ++j)
    for (std::size_t i = 0; i < top[j].size(); ++i) {
      Simplex face = top[j];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
      cofaces[*K.index_of(face)].emplace_back(static_cast<int>(j), i % 2 == 0 ? 1 : -1);
    }
  v.pseudomanifold =
      v.purely_dimensional && std::all_of(cofaces.begin(), cofaces.end(), [](const auto& c) { return c.size() == 2; });

  // gallery connectivity over all maximal simplices: lower-dimensional ones
  // have no codimension-one neighbours of their own dimension here
  std::vector<int> component(top.size(), -1);
  std::vector<int> sign(top.size(), 0);
  std::vector<std::vector<std::pair<int, int>>> adj(top.size());  // (neighbour, face)
  for (std::size_t f = 0; f < nf; ++f)
    for (const auto& [a, sa] : cofaces[f])
      for (const auto& [b, sb] : cofaces[f])
        if (a != b) adj[a].emplace_back(b, static_cast<int>(f));
  int components = 0;
  bool consistent = true;
  for (std::size_t root = 0; root < top.size(); ++root) {
    if (component[root] >= 0) continue;
    std::deque<int> queue{static_cast<int>(root)};
    component[root] = components;
    sign[root] = 1;
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (const auto& [b, f] : adj[a]) {
        int ia = 0, ib = 0;
        for (const auto& [t, s] : cofaces[f]) {
          if (t == a) ia = s;
          if (t == b) ib = s;
        }
        // the face must cancel: sign[a]·ia + sign[b]·ib = 0
        const int want = -sign[a] * ia * ib;
        if (component[b] < 0) {
          component[b] = components;
          sign[b] = want;
          queue.push_back(b);
        } else if (sign[b] != want) {
          consistent = false;
        }
      }
    }
    ++components;
  }
  v.gallery_connected = components == 1 && maximal.size() == top.size();
  v.orientable = v.pseudomanifold && consistent;
  if (v.orientable) {
    const ChainComplex C(K);
    std::vector<Rational> chain(sign.begin(), sign.end());
    const auto bd = C.apply(n, chain);
    if (std::any_of(bd.begin(), bd.end(), [](const Rational& x) { return x != 0; }))
      fail(ErrorKind::Internal, "fundamental cycle is not a cycle");
    v.fundamental_cycle = sign;
  }
  return v;
}

}  // namespace coxinv
