#pragma once

#include <map>
#include <string>
#include <vector>

#include "coxinv/number_field.hpp"

namespace coxinv {

using Monomial = std::vector<int>;  // exponent per variable

/// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int num_vars) : nvars_(num_vars) {}

  static Polynomial constant(int num_vars, const Rational& c);
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);

  int num_vars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  void add_term(const Monomial& m, const Rational& c);
  Polynomial homogeneous_part(int degree) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);

  /// Substitutes every variable with the same value y: a univariate result.
  Polynomial collapse() const;

  template <typename Real>
  Real evaluate(const std::vector<Real>& values) const {
    Real sum = 0;
    for (const auto& [m, c] : terms_) {
      Real term = Real(c.get_num().get_str()) / Real(c.get_den().get_str());
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) term *= values[i];
      sum += term;
    }
    return sum;
  }
  Rational evaluate_exact(const std::vector<Rational>& values) const;

  /// Univariate coefficient list low → high (requires num_vars() == 1).
  std::vector<Rational> univariate_coefficients() const;
  static Polynomial from_univariate(const std::vector<Rational>& coeffs);

  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// Univariate helpers.
std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b);
std::vector<Rational> univariate_divide_exact(const std::vector<Rational>& num,
                                              const std::vector<Rational>& den);

/// Taylor coefficients of num/den grouped by total degree, up to `depth`.
/// den must have constant term 1.
std::vector<Polynomial> expand_series(const Polynomial& num, const Polynomial& den, int depth);

}  // namespace coxinv
