#include "coxinv/group_element.hpp"

#include <algorithm>

#include "coxinv/error.hpp"

namespace coxinv {

std::size_t CoeffsHash::operator()(const std::vector<std::int64_t>& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
  for (auto x : v) h = (h ^ static_cast<std::uint64_t>(x)) * 0xff51afd7ed558ccdull;
  return static_cast<std::size_t>(h ^ (h >> 32));
}

ReflectionRepresentation::ReflectionRepresentation(CoxeterMatrix M)
    : matrix_(std::move(M)), field_(NumberField::for_matrix(matrix_)) {
  const int n = rank(), d = degree();
  coefficients_.assign(static_cast<std::size_t>(n * n * d), 0);
  coefficient_zero_.assign(static_cast<std::size_t>(n * n), true);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      const auto c = field_->two_cos_pi_over(matrix_.m(s, t));
      std::copy(c.begin(), c.end(), coefficients_.begin() + (s * n + t) * d);
      coefficient_zero_[s * n + t] = std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; });
    }
}

std::span<const std::int64_t> ReflectionRepresentation::coefficient(int s, int t) const {
  const int n = rank(), d = degree();
  return std::span<const std::int64_t>(coefficients_).subspan((s * n + t) * d, d);
}

GroupElement ReflectionRepresentation::identity() const {
  GroupElement e;
  const int n = rank(), d = degree();
  e.coeffs.assign(coeff_count(), 0);
  for (int t = 0; t < n; ++t) e.coeffs[(t * n + t) * d] = 1;
  return e;
}

void ReflectionRepresentation::right_multiply(std::vector<std::int64_t>& w, int s) const {
  // (ws)(α_t) = w(α_t) + c_st·w(α_s) for t ≠ s; (ws)(α_s) = -w(α_s)
  const int n = rank(), d = degree();
  const std::size_t col = static_cast<std::size_t>(n * d);
  std::span<const std::int64_t> ws(w.data() + s * col, col);
  std::vector<std::int64_t> cs(ws.begin(), ws.end());
  for (int t = 0; t < n; ++t) {
    if (t == s || coefficient_zero_[s * n + t]) continue;
    auto c = coefficient(s, t);
    std::span<std::int64_t> wt(w.data() + t * col, col);
    for (int i = 0; i < n; ++i)
      field_->multiply_add(c, std::span<const std::int64_t>(cs).subspan(i * d, d), wt.subspan(i * d, d));
  }
  for (std::size_t k = 0; k < col; ++k) w[s * col + k] = -cs[k];
}

int ReflectionRepresentation::root_sign(std::span<const std::int64_t> coeffs, int s) const {
  const int n = rank(), d = degree();
  // a root is positive or negative: the first nonzero coordinate decides
  for (int i = 0; i < n; ++i) {
    const int sg = field_->sign(coeffs.subspan((s * n + i) * d, d));
    if (sg != 0) return sg;
  }
  fail(ErrorKind::Internal, "zero root vector");
}

Subset ReflectionRepresentation::descent_set(const GroupElement& w) const {
  Subset out = 0;
  for (int s = 0; s < rank(); ++s)
    if (root_sign(w.coeffs, s) < 0) out |= singleton(s);
  return out;
}

std::vector<int> ReflectionRepresentation::unwinding_word(std::vector<std::int64_t> coeffs) const {
  std::vector<int> reversed;
  const auto id = identity().coeffs;
  while (coeffs != id) {
    int s = 0;
    while (s < rank() && root_sign(coeffs, s) > 0) ++s;
    if (s == rank()) fail(ErrorKind::Internal, "non-identity element without right descent");
    right_multiply(coeffs, s);
    reversed.push_back(s);
  }
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

std::vector<int> ReflectionRepresentation::canonical_word(const std::vector<std::int64_t>& coeffs) const {
  // lex-least reduced word of w = smallest-right-descent unwinding of w^{-1}
  const auto word = unwinding_word(coeffs);
  auto inverse = identity().coeffs;
  for (auto it = word.rbegin(); it != word.rend(); ++it) right_multiply(inverse, *it);
  auto rev = unwinding_word(std::move(inverse));
  std::reverse(rev.begin(), rev.end());
  return rev;
}

GroupElement ReflectionRepresentation::from_coeffs(std::vector<std::int64_t> coeffs) const {
  GroupElement e;
  e.witness_word = canonical_word(coeffs);
  e.length = static_cast<int>(e.witness_word.size());
  e.coeffs = std::move(coeffs);
  return e;
}

GroupElement ReflectionRepresentation::simple_reflection(int s) const {
  if (s < 0 || s >= rank()) fail(ErrorKind::UnknownGenerator, "generator index out of range");
  GroupElement e = identity();
  right_multiply(e.coeffs, s);
  e.length = 1;
  e.witness_word = {s};
  return e;
}

GroupElement ReflectionRepresentation::multiply(const GroupElement& w, int s) const {
  if (s < 0 || s >= rank()) fail(ErrorKind::UnknownGenerator, "generator index out of range");
  const bool descent = root_sign(w.coeffs, s) < 0;
  auto coeffs = w.coeffs;
  right_multiply(coeffs, s);
  GroupElement out = from_coeffs(std::move(coeffs));
  if (out.length != w.length + (descent ? -1 : 1))
    fail(ErrorKind::ValidationMismatch, "length bookkeeping disagrees with the descent test");
  return out;
}

GroupElement ReflectionRepresentation::from_word(std::span<const int> word) const {
  auto coeffs = identity().coeffs;
  for (int s : word) {
    if (s < 0 || s >= rank()) fail(ErrorKind::UnknownGenerator, "generator index out of range");
    right_multiply(coeffs, s);
  }
  return from_coeffs(std::move(coeffs));
}

AlgebraicReal ReflectionRepresentation::entry(const GroupElement& w, int row, int col) const {
  const int n = rank(), d = degree();
  return AlgebraicReal::from_integers(
      field_, std::span<const std::int64_t>(w.coeffs).subspan((col * n + row) * d, d));
}

}  // namespace coxinv
