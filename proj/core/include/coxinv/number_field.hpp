#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace coxinv {

class CoxeterMatrix;

using Rational = mpq_class;
using Integer = mpz_class;

/// The real field Q(θ), θ = 2cos(π/N), in the power basis 1, θ, …, θ^{d-1}.
///
/// The minimal polynomial of θ is derived from the cyclotomic polynomial
/// Φ_{2N} by rewriting z^{-d}Φ_{2N}(z) in terms of x = z + 1/z, and is checked
/// numerically to 1e-30 at construction. θ is an algebraic integer, so the
/// reflection representation only ever needs integer coordinates.
class NumberField {
 public:
  explicit NumberField(int conductor);

  /// N = lcm(2, finite m_st).
  static std::shared_ptr<const NumberField> for_matrix(const CoxeterMatrix& M);

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  /// Monic, coefficients low → high, size degree()+1.
  const std::vector<std::int64_t>& minimal_polynomial() const { return minpoly_; }

  /// 2cos(π/m) in the power basis; m == 0 means infinity (value 2).
  std::vector<std::int64_t> two_cos_pi_over(int m) const;

  /// out = a*b reduced modulo the minimal polynomial. Throws ResourceExceeded
  /// on int64 overflow.
  void multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                std::span<std::int64_t> out) const;
  /// acc += a*b
  void multiply_add(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                    std::span<std::int64_t> acc) const;

  /// Exact sign of Σ a_i θ^i: a zero vector is 0; otherwise interval
  /// evaluation is refined until decisive.
  int sign(std::span<const std::int64_t> a) const;
  int sign(std::span<const Integer> a) const;

  double approximate(std::span<const std::int64_t> a) const;
  double theta() const { return theta_; }

 private:
  int conductor_;
  int degree_;
  std::vector<std::int64_t> minpoly_;
  // reduction_[k] = θ^k in the power basis, k < 2d-1
  std::vector<std::vector<std::int64_t>> reduction_;
  std::vector<double> theta_powers_;
  double theta_;
};

/// Derivation steps, exposed for testing.
std::vector<Integer> cyclotomic_polynomial(int n);
/// Minimal polynomial of 2cos(2π/n), n >= 3; monic, low → high.
std::vector<Integer> minimal_polynomial_2cos(int n);

/// Element of Q(2cos(π/N)) with rational coordinates in the power basis.
class AlgebraicReal {
 public:
  AlgebraicReal() = default;
  AlgebraicReal(std::shared_ptr<const NumberField> field, std::vector<Rational> coords);
  static AlgebraicReal from_integers(std::shared_ptr<const NumberField> field,
                                     std::span<const std::int64_t> coords);
  static AlgebraicReal constant(std::shared_ptr<const NumberField> field, const Rational& value);

  const std::vector<Rational>& coords() const { return coords_; }
  const NumberField& field() const { return *field_; }

  int sign() const;
  double to_double() const;
  bool is_zero() const;

  AlgebraicReal operator+(const AlgebraicReal& o) const;
  AlgebraicReal operator-(const AlgebraicReal& o) const;
  AlgebraicReal operator*(const AlgebraicReal& o) const;
  AlgebraicReal operator-() const;

  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
    return a.coords_ == b.coords_;
  }

  std::string to_string() const;

 private:
  std::shared_ptr<const NumberField> field_;
  std::vector<Rational> coords_;
};

}  // namespace coxinv
