#include "coxinv/number_field.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <mpfr.h>

#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/error.hpp"

namespace coxinv {

namespace {

using Poly = std::vector<Integer>;  // low → high

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

// exact division by a monic polynomial
Poly poly_div_monic(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() - 1 < dn) return Poly{0};
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size() - 1; i + 1 > dn; --i) {
    const Integer c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    if (i == dn) break;
  }
  trim(num);
  if (!(num.size() == 1 && num[0] == 0))
    fail(ErrorKind::Internal, "cyclotomic division left a remainder");
  return q;
}

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorKind::ResourceExceeded, "minimal polynomial coefficient overflow");
  return z.get_si();
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(ErrorKind::ResourceExceeded, "coefficient overflow in the exact reflection representation");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrorKind::ResourceExceeded, "coefficient overflow in the exact reflection representation");
  return r;
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Evaluates Σ a_i θ^i at the given precision, returning the value and a bound
// on the absolute error. θ is rounded once; every later operation adds at
// most one ulp relative error per term.
template <typename Coeff>
int sign_at_precision(int conductor, std::span<const Coeff> a, mpfr_prec_t prec, bool& decided) {
  MpfrValue theta(prec), power(prec), term(prec), sum(prec), bound(prec), absterm(prec), c(prec);
  mpfr_const_pi(theta.get(), MPFR_RNDN);
  mpfr_div_ui(theta.get(), theta.get(), static_cast<unsigned long>(conductor), MPFR_RNDN);
  mpfr_cos(theta.get(), theta.get(), MPFR_RNDN);
  mpfr_mul_ui(theta.get(), theta.get(), 2, MPFR_RNDN);
  mpfr_set_ui(power.get(), 1, MPFR_RNDN);
  mpfr_set_ui(sum.get(), 0, MPFR_RNDN);
  mpfr_set_ui(bound.get(), 0, MPFR_RNDN);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_same_v<Coeff, Integer>) {
      mpfr_set_z(c.get(), a[i].get_mpz_t(), MPFR_RNDN);
    } else {
      mpfr_set_si(c.get(), static_cast<long>(a[i]), MPFR_RNDN);
    }
    mpfr_mul(term.get(), c.get(), power.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    mpfr_abs(absterm.get(), term.get(), MPFR_RNDN);
    // θ^i·a_i carries at most (i + 3) rounding steps; summation adds at most size() more
    mpfr_mul_ui(absterm.get(), absterm.get(), static_cast<unsigned long>(i + 4 + a.size()), MPFR_RNDU);
    mpfr_add(bound.get(), bound.get(), absterm.get(), MPFR_RNDU);
    mpfr_mul(power.get(), power.get(), theta.get(), MPFR_RNDN);
  }
  mpfr_mul_2si(bound.get(), bound.get(), -(prec - 2), MPFR_RNDU);
  MpfrValue mag(prec);
  mpfr_abs(mag.get(), sum.get(), MPFR_RNDN);
  decided = mpfr_cmp(mag.get(), bound.get()) > 0;
  return mpfr_sgn(sum.get());
}

template <typename Coeff>
int exact_sign(int conductor, std::span<const Coeff> a) {
  bool all_zero = true;
  for (const auto& x : a)
    if (x != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) return 0;
  if (a.size() == 1) return a[0] > 0 ? 1 : -1;
  for (mpfr_prec_t prec = 128; prec <= 1 << 16; prec *= 2) {
    bool decided = false;
    const int s = sign_at_precision<Coeff>(conductor, a, prec, decided);
    if (decided) return s;
  }
  fail(ErrorKind::Internal, "sign test did not terminate");
}

int gcd_int(int a, int b) { return std::gcd(a, b); }

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int n) {
  if (n < 1) fail(ErrorKind::Internal, "cyclotomic index must be positive");
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) num = poly_div_monic(num, cyclotomic_polynomial(d));
  return num;
}

std::vector<Integer> minimal_polynomial_2cos(int n) {
  if (n < 3) fail(ErrorKind::Internal, "minimal_polynomial_2cos needs n >= 3");
  const Poly phi = cyclotomic_polynomial(n);
  const int deg = static_cast<int>(phi.size()) - 1;  // φ(n), even
  const int k = deg / 2;
  // z^{-k} Φ(z) = phi[k] + Σ_{j>=1} phi[k+j] (z^j + z^{-j}); palindromic
  // z^j + z^{-j} = C_j(x) with C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}
  std::vector<Poly> C{Poly{2}, Poly{0, 1}};
  for (int j = 2; j <= k; ++j) {
    Poly next = poly_mul(Poly{0, 1}, C[j - 1]);
    const Poly& prev = C[j - 2];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    trim(next);
    C.push_back(std::move(next));
  }
  Poly out(k + 1, 0);
  out[0] += phi[k];
  for (int j = 1; j <= k; ++j) {
    if (phi[k + j] != phi[k - j]) fail(ErrorKind::Internal, "cyclotomic polynomial not palindromic");
    for (std::size_t i = 0; i < C[j].size(); ++i) out[i] += phi[k + j] * C[j][i];
  }
  trim(out);
  return out;
}

NumberField::NumberField(int conductor) : conductor_(conductor) {
  if (conductor < 2) fail(ErrorKind::Internal, "field conductor must be >= 2");
  theta_ = 2.0 * std::cos(M_PI / conductor);
  if (conductor == 2 || conductor == 3) {
    // θ = 0 or 1: the field is Q
    minpoly_ = {conductor == 2 ? 0 : -1, 1};
  } else {
    const auto mp = minimal_polynomial_2cos(2 * conductor);
    for (const auto& c : mp) minpoly_.push_back(to_i64(c));
  }
  degree_ = static_cast<int>(minpoly_.size()) - 1;

  // numerical validation of the derived polynomial at 2cos(π/N)
  {
    const mpfr_prec_t prec = 256;
    MpfrValue theta(prec), acc(prec), tmp(prec);
    mpfr_const_pi(theta.get(), MPFR_RNDN);
    mpfr_div_ui(theta.get(), theta.get(), static_cast<unsigned long>(conductor), MPFR_RNDN);
    mpfr_cos(theta.get(), theta.get(), MPFR_RNDN);
    mpfr_mul_ui(theta.get(), theta.get(), 2, MPFR_RNDN);
    mpfr_set_ui(acc.get(), 0, MPFR_RNDN);
    for (int i = degree_; i >= 0; --i) {
      mpfr_mul(acc.get(), acc.get(), theta.get(), MPFR_RNDN);
      mpfr_add_si(acc.get(), acc.get(), static_cast<long>(minpoly_[i]), MPFR_RNDN);
    }
    mpfr_abs(acc.get(), acc.get(), MPFR_RNDN);
    if (mpfr_cmp_d(acc.get(), 1e-30) >= 0)
      fail(ErrorKind::ValidationMismatch,
           "derived minimal polynomial of 2cos(pi/" + std::to_string(conductor) +
               ") fails numerical validation");
  }

  const int d = degree_;
  reduction_.assign(std::max(1, 2 * d - 1), std::vector<std::int64_t>(d, 0));
  for (int k = 0; k < 2 * d - 1; ++k) {
    if (k < d) {
      reduction_[k][k] = 1;
      continue;
    }
    // θ^k = θ·θ^{k-1}; θ^d = -Σ minpoly_i θ^i
    const auto& prev = reduction_[k - 1];
    std::vector<std::int64_t> cur(d, 0);
    for (int i = 0; i + 1 < d; ++i) cur[i + 1] = prev[i];
    const std::int64_t top = prev[d - 1];
    for (int i = 0; i < d; ++i) cur[i] = checked_add(cur[i], checked_mul(-top, minpoly_[i]));
    reduction_[k] = std::move(cur);
  }
  theta_powers_.resize(d);
  for (int i = 0; i < d; ++i) theta_powers_[i] = std::pow(theta_, i);
}

std::shared_ptr<const NumberField> NumberField::for_matrix(const CoxeterMatrix& M) {
  int N = 2;
  for (int s = 0; s < M.rank(); ++s)
    for (int t = s + 1; t < M.rank(); ++t) {
      const int m = M.m(s, t);
      if (m != kInf && m >= 3) N = N / gcd_int(N, m) * m;
    }
  return std::make_shared<const NumberField>(N);
}

std::vector<std::int64_t> NumberField::two_cos_pi_over(int m) const {
  std::vector<std::int64_t> out(degree_, 0);
  if (m == kInf) {
    out[0] = 2;
    return out;
  }
  if (m == 2) return out;
  if (conductor_ % m != 0) fail(ErrorKind::Internal, "m does not divide the field conductor");
  if (conductor_ <= 3) {
    // Q: 2cos(π/3) = 1
    out[0] = 1;
    return out;
  }
  const int k = conductor_ / m;
  // 2cos(kπ/N) = C_k(θ); evaluate the recurrence inside the field
  std::vector<std::int64_t> c0(degree_, 0), c1(degree_, 0), x(degree_, 0), next(degree_, 0);
  c0[0] = 2;
  if (degree_ > 1) {
    c1[1] = 1;
    x[1] = 1;
  } else {
    c1[0] = -minpoly_[0];
    x[0] = -minpoly_[0];
  }
  if (k == 0) return c0;
  for (int j = 2; j <= k; ++j) {
    multiply(x, c1, next);
    for (int i = 0; i < degree_; ++i) next[i] = checked_add(next[i], -c0[i]);
    c0 = c1;
    c1 = next;
  }
  out = c1;
  const double check = approximate(out);
  if (std::abs(check - 2.0 * std::cos(M_PI / m)) > 1e-9)
    fail(ErrorKind::ValidationMismatch, "2cos(pi/m) field element fails numerical validation");
  return out;
}

void NumberField::multiply(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                           std::span<std::int64_t> out) const {
  std::fill(out.begin(), out.end(), 0);
  multiply_add(a, b, out);
}

void NumberField::multiply_add(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                               std::span<std::int64_t> acc) const {
  const int d = degree_;
  if (d == 1) {
    acc[0] = checked_add(acc[0], checked_mul(a[0], b[0]));
    return;
  }
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      const std::int64_t p = checked_mul(a[i], b[j]);
      const auto& red = reduction_[i + j];
      for (int k = 0; k < d; ++k)
        if (red[k]) acc[k] = checked_add(acc[k], checked_mul(p, red[k]));
    }
  }
}

double NumberField::approximate(std::span<const std::int64_t> a) const {
  double v = 0;
  for (int i = 0; i < degree_; ++i) v += static_cast<double>(a[i]) * theta_powers_[i];
  return v;
}

int NumberField::sign(std::span<const std::int64_t> a) const {
  if (degree_ == 1) return a[0] > 0 ? 1 : (a[0] < 0 ? -1 : 0);
  // fast double path with a generous error bound
  double v = 0, mag = 0;
  bool any = false;
  for (int i = 0; i < degree_; ++i) {
    if (a[i]) any = true;
    const double t = static_cast<double>(a[i]) * theta_powers_[i];
    v += t;
    mag += std::abs(t);
  }
  if (!any) return 0;
  if (std::abs(v) > mag * 1e-12 + 1e-300) return v > 0 ? 1 : -1;
  return exact_sign<std::int64_t>(conductor_, a);
}

int NumberField::sign(std::span<const Integer> a) const { return exact_sign<Integer>(conductor_, a); }

AlgebraicReal::AlgebraicReal(std::shared_ptr<const NumberField> field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != field_->degree())
    fail(ErrorKind::Internal, "AlgebraicReal coordinate length must equal the field degree");
}

AlgebraicReal AlgebraicReal::from_integers(std::shared_ptr<const NumberField> field,
                                           std::span<const std::int64_t> coords) {
  std::vector<Rational> c;
  for (auto x : coords) c.emplace_back(static_cast<long>(x));
  return AlgebraicReal(std::move(field), std::move(c));
}

AlgebraicReal AlgebraicReal::constant(std::shared_ptr<const NumberField> field, const Rational& value) {
  std::vector<Rational> c(field->degree(), 0);
  c[0] = value;
  return AlgebraicReal(std::move(field), std::move(c));
}

bool AlgebraicReal::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

int AlgebraicReal::sign() const {
  Integer den = 1;
  for (const auto& c : coords_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<Integer> ints;
  for (const auto& c : coords_) {
    Rational scaled = c * den;
    ints.push_back(scaled.get_num());
  }
  return field_->sign(std::span<const Integer>(ints));
}

double AlgebraicReal::to_double() const {
  double v = 0, p = 1;
  for (const auto& c : coords_) {
    v += c.get_d() * p;
    p *= field_->theta();
  }
  return v;
}

AlgebraicReal AlgebraicReal::operator+(const AlgebraicReal& o) const {
  std::vector<Rational> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return AlgebraicReal(field_, std::move(c));
}

AlgebraicReal AlgebraicReal::operator-(const AlgebraicReal& o) const { return *this + (-o); }

AlgebraicReal AlgebraicReal::operator-() const {
  std::vector<Rational> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return AlgebraicReal(field_, std::move(c));
}

AlgebraicReal AlgebraicReal::operator*(const AlgebraicReal& o) const {
  const int d = field_->degree();
  const auto& mp = field_->minimal_polynomial();
  std::vector<Rational> prod(2 * d - 1, 0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[i + j] += coords_[i] * o.coords_[j];
  for (int k = 2 * d - 2; k >= d; --k) {
    const Rational top = prod[k];
    if (top == 0) continue;
    for (int i = 0; i <= d; ++i) prod[k - d + i] -= top * mp[i];
  }
  prod.resize(d);
  return AlgebraicReal(field_, std::move(prod));
}

std::string AlgebraicReal::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!first) out << " + ";
    out << coords_[i].get_str();
    if (i == 1) out << "·θ";
    if (i > 1) out << "·θ^" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace coxinv
