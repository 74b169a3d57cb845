#include "coxinv/polynomial.hpp"

#include <numeric>
#include <sstream>

#include "coxinv/error.hpp"

namespace coxinv {

Polynomial Polynomial::constant(int num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Monomial(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(static_cast<int>(m.size()));
  p.add_term(m, c);
  return p;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial(nvars_, 0)); }

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != nvars_) fail(ErrorKind::Internal, "monomial arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_)
    if (std::accumulate(m.begin(), m.end(), 0) == degree) out.terms_.emplace(m, c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) fail(ErrorKind::Internal, "polynomial arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out = *this;
  out += o;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorKind::Internal, "polynomial arity mismatch");
  Polynomial out(nvars_);
  Monomial m(nvars_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) m[i] = a[i] + b[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Polynomial Polynomial::collapse() const {
  Polynomial out(1);
  for (const auto& [m, c] : terms_) out.add_term({std::accumulate(m.begin(), m.end(), 0)}, c);
  return out;
}

Rational Polynomial::evaluate_exact(const std::vector<Rational>& values) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) term *= values[i];
    sum += term;
  }
  return sum;
}

std::vector<Rational> Polynomial::univariate_coefficients() const {
  if (nvars_ != 1) fail(ErrorKind::Internal, "univariate_coefficients needs one variable");
  const int d = std::max(0, total_degree());
  std::vector<Rational> out(d + 1, 0);
  for (const auto& [m, c] : terms_) out[m[0]] = c;
  return out;
}

Polynomial Polynomial::from_univariate(const std::vector<Rational>& coeffs) {
  Polynomial p(1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term({static_cast<int>(i)}, coeffs[i]);
  return p;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // ascending total degree, then exponent order
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.first.begin(), a.first.end(), 0) <
           std::accumulate(b.first.begin(), b.first.end(), 0);
  });
  for (const auto& [m, c] : sorted) {
    const bool is_const = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (is_const || mag != 1) out << mag.get_str();
    bool need_star = !is_const && mag != 1;
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (need_star) out << "*";
      out << names.at(i);
      if (m[i] > 1) out << "^" << m[i];
      need_star = true;
    }
  }
  return out.str();
}

namespace {

void utrim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

std::vector<Rational> univariate_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size() && !a.empty()) {
      const Rational f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
      utrim(a);
    }
    std::swap(a, b);
  }
  if (a.empty()) return {1};
  const Rational lead = a.back();
  for (auto& c : a) c /= lead;
  return a;
}

std::vector<Rational> univariate_divide_exact(const std::vector<Rational>& num,
                                              const std::vector<Rational>& den) {
  std::vector<Rational> a = num, d = den;
  utrim(a);
  utrim(d);
  if (d.empty()) fail(ErrorKind::Internal, "division by zero polynomial");
  if (a.size() < d.size()) {
    if (a.empty()) return {0};
    fail(ErrorKind::Internal, "inexact polynomial division");
  }
  std::vector<Rational> q(a.size() - d.size() + 1, 0);
  while (a.size() >= d.size() && !a.empty()) {
    const Rational f = a.back() / d.back();
    const std::size_t shift = a.size() - d.size();
    q[shift] = f;
    for (std::size_t i = 0; i < d.size(); ++i) a[shift + i] -= f * d[i];
    utrim(a);
  }
  if (!a.empty()) fail(ErrorKind::Internal, "inexact polynomial division");
  return q;
}

std::vector<Polynomial> expand_series(const Polynomial& num, const Polynomial& den, int depth) {
  if (den.constant_term() != 1) fail(ErrorKind::Internal, "series denominator must have constant term 1");
  const int nv = num.num_vars();
  std::vector<Polynomial> den_parts, out;
  for (int j = 0; j <= std::max(0, den.total_degree()); ++j) den_parts.push_back(den.homogeneous_part(j));
  for (int n = 0; n <= depth; ++n) {
    Polynomial w = num.homogeneous_part(n);
    for (int j = 1; j < static_cast<int>(den_parts.size()) && j <= n; ++j)
      if (!den_parts[j].is_zero()) w = w - den_parts[j] * out[n - j];
    out.push_back(std::move(w));
  }
  (void)nv;
  return out;
}

}  // namespace coxinv
