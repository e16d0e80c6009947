#pragma once

// Exact coefficient arithmetic: rationals extended by square roots of
// squarefree integers, Gaussian extensions of those, and polynomials in the
// principal-series parameter lambda.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sl3k {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q", or a plain decimal such as "-0.25" or "1e-2" into an
/// exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Finite sum of rational multiples of square roots of squarefree positive
/// integers, kept in canonical form (sorted radicands, no zero coefficients).
class RadicalScalar {
 public:
  using Term = std::pair<Integer, Rational>;  // (squarefree radicand, coefficient)

  RadicalScalar() = default;
  RadicalScalar(long value);  // NOLINT(google-explicit-constructor)
  RadicalScalar(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// sqrt(r) for r >= 0, with square factors extracted.
  static RadicalScalar sqrt(const Rational& r);
  /// coeff * sqrt(radicand) for arbitrary radicand >= 1 (square part extracted).
  static RadicalScalar term(const Rational& coeff, const Integer& radicand);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational part (coefficient of sqrt(1)).
  Rational rational_part() const;

  RadicalScalar operator-() const;
  RadicalScalar& operator+=(const RadicalScalar& other);
  RadicalScalar& operator-=(const RadicalScalar& other);
  RadicalScalar& operator*=(const RadicalScalar& other);
  RadicalScalar& operator*=(const Rational& q);

  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
  friend RadicalScalar operator*(RadicalScalar a, const Rational& q) { return a *= q; }
  friend RadicalScalar operator*(const Rational& q, RadicalScalar a) { return a *= q; }
  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const RadicalScalar& a, const RadicalScalar& b) { return !(a == b); }

  /// Inverse of a single-term value q*sqrt(n). Throws std::domain_error for
  /// zero or multi-term values.
  RadicalScalar inverse() const;

  /// Sign of the represented real number (-1, 0, 1), decided exactly for
  /// single-term values and by high-precision evaluation otherwise.
  int sign() const;

  /// Nearest double, evaluated in 256-bit arithmetic before the final rounding.
  double to_double() const;

  /// "(1/10)*sqrt(10)" style rendering; "0" for zero.
  std::string to_string() const;

  /// {"terms": [[n, "p/q"], ...]}; n is a JSON number when it fits in 64 bits.
  nlohmann::json to_json() const;
  static RadicalScalar from_json(const nlohmann::json& j);

 private:
  void add_term(const Integer& radicand, const Rational& coeff);
  std::vector<Term> terms_;
};

/// Exact complex number re + i*im with RadicalScalar parts.
struct ExactComplex {
  RadicalScalar re;
  RadicalScalar im;

  ExactComplex() = default;
  ExactComplex(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(RadicalScalar r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(RadicalScalar r, RadicalScalar i) : re(std::move(r)), im(std::move(i)) {}

  static ExactComplex i() { return {RadicalScalar(0L), RadicalScalar(1L)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ExactComplex conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  std::string to_string() const;

  ExactComplex operator-() const { return {-re, -im}; }
  ExactComplex& operator+=(const ExactComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
};

/// Numeric spectral parameter (lambda_1, lambda_2, lambda_3), zero sum.
using LambdaValue = std::array<std::complex<double>, 3>;
/// Exact spectral parameter, zero sum.
using ExactLambda = std::array<ExactComplex, 3>;

/// Throws std::invalid_argument unless the components sum to zero
/// (within 1e-12 for numeric input, exactly for exact input).
void require_zero_sum(const LambdaValue& lambda);
void require_zero_sum(const ExactLambda& lambda);
LambdaValue to_numeric(const ExactLambda& lambda);
/// Parses "a", "bi", "a+bi" or "a-bi" with a, b accepted by parse_rational
/// ("i" and "-i" alone are allowed). Throws std::invalid_argument otherwise.
ExactComplex parse_exact_complex(std::string_view text);

/// Exact triple (l1, l2, -l1-l2) from two rational-or-Gaussian components.
ExactLambda make_lambda(const ExactComplex& l1, const ExactComplex& l2);

/// a1*lambda_1 + a2*lambda_2 + a3*lambda_3 + constant, with exact coefficients.
struct LambdaForm {
  RadicalScalar constant;
  RadicalScalar l1;
  RadicalScalar l2;
  RadicalScalar l3;

  /// Coefficients (of lambda_1, lambda_2, constant) after substituting
  /// lambda_3 = -lambda_1 - lambda_2.
  std::array<RadicalScalar, 3> canonical() const;
  bool is_zero() const;

  std::complex<double> evaluate(const LambdaValue& lambda) const;
  ExactComplex evaluate(const ExactLambda& lambda) const;
  std::string to_string() const;

  LambdaForm operator-() const { return {-constant, -l1, -l2, -l3}; }
  LambdaForm& operator+=(const LambdaForm& o);
  LambdaForm& operator-=(const LambdaForm& o) { return *this += -o; }
  LambdaForm& operator*=(const RadicalScalar& s);
  friend LambdaForm operator+(LambdaForm a, const LambdaForm& b) { return a += b; }
  friend LambdaForm operator-(LambdaForm a, const LambdaForm& b) { return a -= b; }
  friend LambdaForm operator*(LambdaForm a, const RadicalScalar& s) { return a *= s; }
  friend LambdaForm operator*(const RadicalScalar& s, LambdaForm a) { return a *= s; }
  friend bool operator==(const LambdaForm& a, const LambdaForm& b) {
    return a.canonical() == b.canonical();
  }
  friend bool operator!=(const LambdaForm& a, const LambdaForm& b) { return !(a == b); }
};

/// Polynomial in (lambda_1, lambda_2) with ExactComplex coefficients; lambda_3
/// has been eliminated through the zero-sum constraint. Closed under products,
/// which is what composing two operators needs.
class LambdaPoly {
 public:
  using Exponents = std::pair<int, int>;

  LambdaPoly() = default;
  LambdaPoly(const ExactComplex& c);  // NOLINT(google-explicit-constructor)
  LambdaPoly(const LambdaForm& form);  // NOLINT(google-explicit-constructor)

  const std::map<Exponents, ExactComplex>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const;

  std::complex<double> evaluate(const LambdaValue& lambda) const;
  ExactComplex evaluate(const ExactLambda& lambda) const;
  std::string to_string() const;

  LambdaPoly operator-() const;
  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator-=(const LambdaPoly& o) { return *this += -o; }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

 private:
  void add(const Exponents& e, const ExactComplex& c);
  std::map<Exponents, ExactComplex> coeffs_;
};

// Zero tests used by the generic KTypeVector container.
inline bool is_zero_coefficient(const RadicalScalar& c) { return c.is_zero(); }
inline bool is_zero_coefficient(const ExactComplex& c) { return c.is_zero(); }
inline bool is_zero_coefficient(const LambdaForm& c) { return c.is_zero(); }
inline bool is_zero_coefficient(const LambdaPoly& c) { return c.is_zero(); }
inline bool is_zero_coefficient(const std::complex<double>& c) {
  return c.real() == 0.0 && c.imag() == 0.0;
}

}  // namespace sl3k
