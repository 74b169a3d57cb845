#include "coxinv/simplicial.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "coxinv/error.hpp"

namespace coxinv {

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ s.size();
  for (int v : s) h = (h ^ static_cast<std::size_t>(v)) * 0xff51afd7ed558ccdull;
  return h ^ (h >> 29);
}

std::size_t default_simplex_cap() {
  if (const char* v = std::getenv("COXINV_MAX_SIMPLICES")) {
    char* end = nullptr;
    const auto x = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && x > 0) return x;
  }
  return 50'000;
}

SimplicialComplex SimplicialComplex::from_facets(std::vector<std::string> labels, std::vector<Simplex> facets) {
  SimplicialComplex K;
  K.labels_ = std::move(labels);
  const int n = K.num_vertices();
  std::vector<std::set<Simplex>> sets;
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) fail(ErrorKind::SchemaError, "repeated vertex in simplex");
    if (f.empty()) continue;
    if (f.front() < 0 || f.back() >= n) fail(ErrorKind::SchemaError, "simplex vertex out of range");
    if (f.size() > 30) fail(ErrorKind::ResourceExceeded, "simplex dimension too large");
    const std::size_t k = f.size() - 1;
    if (sets.size() <= k) sets.resize(k + 1);
    if (sets[k].count(f)) continue;
    // all nonempty faces
    const std::uint32_t full = (1u << f.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask >> i & 1u) face.push_back(f[i]);
      sets[face.size() - 1].insert(std::move(face));
    }
  }
  for (auto& s : sets) {
    K.by_dim_.emplace_back(s.begin(), s.end());
    auto& idx = K.index_.emplace_back();
    for (std::size_t i = 0; i < K.by_dim_.back().size(); ++i) idx.emplace(K.by_dim_.back()[i], static_cast<int>(i));
  }
  return K;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k > dimension()) return none;
  return by_dim_[k];
}

std::optional<int> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || static_cast<int>(s.size()) - 1 > dimension()) return std::nullopt;
  const auto& idx = index_[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::size_t SimplicialComplex::size() const {
  std::size_t n = 0;
  for (const auto& d : by_dim_) n += d.size();
  return n;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> out;
  for (const auto& d : by_dim_) out.push_back(d.size());
  return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (int k = 0; k <= dimension(); ++k) {
    std::vector<bool> covered(by_dim_[k].size(), false);
    if (k < dimension())
      for (const auto& s : by_dim_[k + 1])
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex face = s;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
          covered[index_[k].at(face)] = true;
        }
    for (std::size_t i = 0; i < by_dim_[k].size(); ++i)
      if (!covered[i]) out.push_back(by_dim_[k][i]);
  }
  return out;
}

std::string SimplicialComplex::simplex_label(const Simplex& s) const {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += labels_.at(s[i]);
  }
  return out + "]";
}

Subcomplex Subcomplex::empty(const SimplicialComplex& K) {
  Subcomplex L;
  for (int k = 0; k <= K.dimension(); ++k) L.member.emplace_back(K.simplices(k).size(), false);
  return L;
}

Subcomplex Subcomplex::full(const SimplicialComplex& K, const std::function<bool(int)>& vertex_in) {
  Subcomplex L;
  for (int k = 0; k <= K.dimension(); ++k) {
    const auto& s = K.simplices(k);
    auto& m = L.member.emplace_back(s.size(), false);
    for (std::size_t i = 0; i < s.size(); ++i) m[i] = std::all_of(s[i].begin(), s[i].end(), vertex_in);
  }
  return L;
}

bool Subcomplex::contains(int k, int index) const {
  return k >= 0 && k < static_cast<int>(member.size()) && member[k][index];
}

std::size_t Subcomplex::size() const {
  std::size_t n = 0;
  for (const auto& m : member) n += static_cast<std::size_t>(std::count(m.begin(), m.end(), true));
  return n;
}

Subcomplex Subcomplex::operator|(const Subcomplex& o) const {
  if (member.size() != o.member.size()) fail(ErrorKind::Internal, "subcomplexes of different complexes");
  Subcomplex out = *this;
  for (std::size_t k = 0; k < member.size(); ++k)
    for (std::size_t i = 0; i < member[k].size(); ++i) out.member[k][i] = member[k][i] || o.member[k][i];
  return out;
}

SimplicialComplex order_complex(std::vector<std::string> labels, const std::function<bool(int, int)>& less) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> up(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (less(i, j)) {
        if (j <= i) fail(ErrorKind::Internal, "poset elements are not in a linear extension");
        up[i].push_back(j);
      }
  // maximal chains suffice: from_facets closes under faces
  std::vector<Simplex> chains;
  Simplex chain;
  std::function<void(int)> extend = [&](int x) {
    chain.push_back(x);
    bool extended = false;
    for (int y : up[x]) {
      // follow cover relations only
      bool covers = true;
      for (int z : up[x])
        if (z != y && less(z, y)) {
          covers = false;
          break;
        }
      if (!covers) continue;
      extended = true;
      extend(y);
    }
    if (!extended) chains.push_back(chain);
    chain.pop_back();
  };
  for (int i = 0; i < n; ++i) {
    bool minimal = true;
    for (int j = 0; j < i; ++j)
      if (less(j, i)) {
        minimal = false;
        break;
      }
    if (minimal) extend(i);
  }
  return SimplicialComplex::from_facets(std::move(labels), std::move(chains));
}

}  // namespace coxinv
