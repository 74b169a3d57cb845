#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace coxinv {

/// Strictly increasing vertex indices.
using Simplex = std::vector<int>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Simplex cap for homology work; COXINV_MAX_SIMPLICES overrides 50000.
std::size_t default_simplex_cap();

/// Finite abstract simplicial complex. Simplices of each dimension are kept
/// sorted; orientation is the increasing vertex order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Closes the given simplices under faces. Vertex indices must be below
  /// labels.size(); unsorted input simplices are sorted.
  static SimplicialComplex from_facets(std::vector<std::string> labels, std::vector<Simplex> facets);

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  const std::vector<Simplex>& simplices(int k) const;
  std::optional<int> index_of(const Simplex& s) const;
  std::size_t size() const;
  /// Number of simplices per dimension.
  std::vector<std::size_t> f_vector() const;
  /// Simplices that are not a proper face of another simplex, sorted by
  /// (dimension, vertices).
  std::vector<Simplex> maximal_simplices() const;

  std::string simplex_label(const Simplex& s) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::unordered_map<Simplex, int, SimplexHash>> index_;
};

/// A subcomplex of a fixed complex as a membership mask per dimension.
struct Subcomplex {
  std::vector<std::vector<bool>> member;

  static Subcomplex empty(const SimplicialComplex& K);
  /// Simplices all of whose vertices satisfy the predicate.
  static Subcomplex full(const SimplicialComplex& K, const std::function<bool(int)>& vertex_in);
  bool contains(int k, int index) const;
  std::size_t size() const;
  bool is_empty() const { return size() == 0; }
  Subcomplex operator|(const Subcomplex& o) const;
};

/// Order complex of a finite poset given on elements 0..n-1 listed in a
/// linear extension: less(i, j) implies i < j. k-simplices are chains of
/// k+1 elements.
SimplicialComplex order_complex(std::vector<std::string> labels, const std::function<bool(int, int)>& less);

}  // namespace coxinv
