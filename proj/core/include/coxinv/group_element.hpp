#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/number_field.hpp"

namespace coxinv {

/// An element of W in the geometric representation. `coeffs` holds the
/// matrix column-major over the simple roots: column t is w(α_t), each entry
/// a vector of `degree` integer coordinates in Z[θ].
struct GroupElement {
  std::vector<std::int64_t> coeffs;
  int length = 0;
  /// Lexicographically least reduced word (generator indices).
  std::vector<int> witness_word;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coeffs == b.coeffs;
  }
};

struct CoeffsHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept;
};

/// The Tits geometric representation of (W, S) over Q(2cos(π/N)):
/// s(α_t) = α_t + 2cos(π/m_st)·α_s for t ≠ s, s(α_s) = -α_s.
class ReflectionRepresentation {
 public:
  explicit ReflectionRepresentation(CoxeterMatrix M);

  const CoxeterMatrix& matrix() const { return matrix_; }
  const NumberField& field() const { return *field_; }
  std::shared_ptr<const NumberField> field_ptr() const { return field_; }
  int rank() const { return matrix_.rank(); }
  int degree() const { return field_->degree(); }
  std::size_t coeff_count() const {
    return static_cast<std::size_t>(rank()) * static_cast<std::size_t>(rank() * degree());
  }

  /// 2cos(π/m_st) as a field element.
  std::span<const std::int64_t> coefficient(int s, int t) const;

  GroupElement identity() const;
  GroupElement simple_reflection(int s) const;
  /// w·s with exact length bookkeeping: l(ws) < l(w) iff w(α_s) < 0.
  GroupElement multiply(const GroupElement& w, int s) const;
  GroupElement from_word(std::span<const int> word) const;

  /// {s : l(ws) < l(w)}
  Subset descent_set(const GroupElement& w) const;
  /// Sign of the root w(α_s): +1 positive, -1 negative.
  int root_sign(std::span<const std::int64_t> coeffs, int s) const;

  /// In-place right multiplication of a raw matrix by s.
  void right_multiply(std::vector<std::int64_t>& coeffs, int s) const;

  /// Reduced word obtained by repeatedly stripping the smallest right descent,
  /// returned in left-to-right order.
  std::vector<int> unwinding_word(std::vector<std::int64_t> coeffs) const;
  /// Lexicographically least reduced word of the element with matrix `coeffs`.
  std::vector<int> canonical_word(const std::vector<std::int64_t>& coeffs) const;

  AlgebraicReal entry(const GroupElement& w, int row, int col) const;

 private:
  GroupElement from_coeffs(std::vector<std::int64_t> coeffs) const;

  CoxeterMatrix matrix_;
  std::shared_ptr<const NumberField> field_;
  std::vector<std::int64_t> coefficients_;  // rank*rank*degree
  std::vector<bool> coefficient_zero_;
};

}  // namespace coxinv
