#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coxinv/number_field.hpp"
#include "coxinv/simplicial.hpp"

namespace coxinv {

/// Sparse integer column: (row, entry) pairs sorted by row.
using SparseColumn = std::vector<std::pair<int, int>>;

/// Boundary matrices ∂_k : C_k → C_{k-1} of a simplicial complex, k >= 1,
/// in the simplex order of the complex. ∂∂ = 0 is checked on construction
/// (Internal error otherwise).
class ChainComplex {
 public:
  explicit ChainComplex(const SimplicialComplex& K);

  int top() const { return static_cast<int>(dims_.size()) - 1; }
  std::size_t rank_of_chains(int k) const { return k < 0 || k > top() ? 0 : dims_[k]; }
  /// Columns of ∂_k (empty for k <= 0 or k > top()).
  const std::vector<SparseColumn>& boundary(int k) const;

  /// ∂_k applied to a rational k-chain.
  std::vector<Rational> apply(int k, const std::vector<Rational>& chain) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::vector<SparseColumn>> boundaries_;
};

/// Rank over Q of the submatrix of `columns` keeping the given rows and
/// columns (exact elimination).
std::size_t rational_rank(const std::vector<SparseColumn>& columns, const std::vector<bool>* keep_rows = nullptr,
                          const std::vector<bool>* keep_columns = nullptr);

struct BettiOptions {
  bool reduced = false;
  std::size_t max_simplices = default_simplex_cap();
};

/// Ranks of H_k(K; Q), or of H_k(K, L; Q) when L is given, k = 0..dim K.
/// ResourceExceeded beyond the simplex cap.
std::vector<std::size_t> betti(const SimplicialComplex& K, const Subcomplex* L = nullptr,
                               const BettiOptions& opts = {});
/// Same, reusing boundary matrices.
std::vector<std::size_t> betti(const SimplicialComplex& K, const ChainComplex& C, const Subcomplex* L,
                               bool reduced);

struct PMVerdict {
  bool purely_dimensional = false;
  bool pseudomanifold = false;
  bool gallery_connected = false;
  bool orientable = false;
  int top_dimension = -1;
  /// The 0-dimensional case: pseudomanifold means exactly two points.
  bool zero_dimensional_convention = false;
  /// Sign per top simplex (simplex order of the complex) when orientable.
  std::optional<std::vector<int>> fundamental_cycle;

  bool type_pm() const { return pseudomanifold && orientable && gallery_connected; }
};

PMVerdict pm_verdict(const SimplicialComplex& K);

}  // namespace coxinv
