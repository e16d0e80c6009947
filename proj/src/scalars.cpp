#include "sl3k/scalars.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sl3k {

namespace {

// Splits n >= 1 into (s, r) with n = s^2 * r and r squarefree. Trial division
// suffices for every radicand this library produces (products of factorials
// and small integers); a cofactor without small prime factors is certified as
// squarefree only below 10^18.
std::pair<Integer, Integer> split_square(const Integer& n) {
  if (n <= 0) throw std::domain_error("radicand must be positive");
  Integer rest = n;
  Integer outside = 1;
  Integer inside = 1;
  auto strip = [&](unsigned long p) {
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) outside *= p;
    if (e % 2 == 1) inside *= p;
  };
  strip(2);
  constexpr unsigned long kTrialLimit = 1000000;
  unsigned long p = 3;
  for (; p <= kTrialLimit; p += 2) {
    if (rest == 1) break;
    if (Integer(p) * p > rest) break;
    strip(p);
  }
  if (rest != 1) {
    if (Integer(p) * p > rest) {
      inside *= rest;  // rest is prime
    } else if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      Integer root;
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      outside *= root;
    } else if (rest < Integer("1000000000000000000")) {
      inside *= rest;  // product of two distinct primes above the trial limit
    } else {
      throw std::domain_error("cannot certify squarefree part of radicand");
    }
  }
  return {outside, inside};
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

void accumulate(const std::vector<RadicalScalar::Term>& terms, mpfr_ptr sum, mpfr_prec_t prec) {
  MpfrValue root(prec);
  MpfrValue coeff(prec);
  for (const auto& [n, q] : terms) {
    mpfr_set_z(root.get(), n.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    mpfr_set_q(coeff.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(root.get(), root.get(), coeff.get(), MPFR_RNDN);
    mpfr_add(sum, sum, root.get(), MPFR_RNDN);
  }
}

std::string coefficient_prefix(const Rational& q) {
  if (q == 1) return "";
  if (q == -1) return "-";
  if (q.get_den() == 1) return q.get_num().get_str() + "·";
  return "(" + to_string(q) + ")·";
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s.front() == '+' ? s.substr(1) : s, 10) != 0 || q.get_den() == 0) {
      throw std::invalid_argument("malformed rational: " + s);
    }
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digits += c;
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number: " + s);
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw std::invalid_argument("malformed number: " + s);
    ++pos;
    std::size_t used = 0;
    long exponent = 0;
    try {
      exponent = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent: " + s);
    }
    if (pos + used != s.size()) throw std::invalid_argument("malformed number: " + s);
    scale += exponent;
  }
  Integer num(digits, 10);
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

RadicalScalar::RadicalScalar(long value) {
  if (value != 0) terms_.emplace_back(Integer(1), Rational(value));
}

RadicalScalar::RadicalScalar(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v != 0) terms_.emplace_back(Integer(1), v);
}

RadicalScalar RadicalScalar::sqrt(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r < 0) throw std::domain_error("square root of a negative rational");
  if (r == 0) return {};
  // sqrt(p/q) = sqrt(p*q)/q
  const Integer den = r.get_den();
  return term(Rational(1, 1) / Rational(den), r.get_num() * den);
}

RadicalScalar RadicalScalar::term(const Rational& coeff, const Integer& radicand) {
  RadicalScalar out;
  Rational c = coeff;
  c.canonicalize();
  if (c == 0) return out;
  auto [outside, inside] = split_square(radicand);
  c *= Rational(outside);
  c.canonicalize();
  out.terms_.emplace_back(inside, c);
  return out;
}

bool RadicalScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 1);
}

Rational RadicalScalar::rational_part() const {
  if (!terms_.empty() && terms_.front().first == 1) return terms_.front().second;
  return 0;
}

void RadicalScalar::add_term(const Integer& radicand, const Rational& coeff) {
  if (coeff == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                             [](const Term& t, const Integer& key) { return t.first < key; });
  if (it != terms_.end() && it->first == radicand) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{radicand, coeff});
  }
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& other) {
  for (const auto& [n, q] : other.terms_) add_term(n, q);
  return *this;
}

RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& other) {
  for (const auto& [n, q] : other.terms_) add_term(n, -q);
  return *this;
}

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar out;
  if (a.is_zero() || b.is_zero()) return out;
  Integer g;
  Integer radicand;
  for (const auto& [na, qa] : a.terms_) {
    for (const auto& [nb, qb] : b.terms_) {
      // sqrt(a) sqrt(b) = g sqrt((a/g)(b/g)) for squarefree a, b with g = gcd(a, b)
      mpz_gcd(g.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
      radicand = (na / g) * (nb / g);
      out.add_term(radicand, qa * qb * Rational(g));
    }
  }
  return out;
}

RadicalScalar& RadicalScalar::operator*=(const RadicalScalar& other) {
  return *this = *this * other;
}

RadicalScalar& RadicalScalar::operator*=(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= q;
  return *this;
}

RadicalScalar RadicalScalar::inverse() const {
  if (terms_.size() != 1) {
    throw std::domain_error("inverse is only defined for single-term radicals");
  }
  const auto& [n, q] = terms_.front();
  // 1/(q sqrt(n)) = sqrt(n) / (q n)
  RadicalScalar out;
  out.terms_.emplace_back(n, Rational(1) / (q * Rational(n)));
  return out;
}

int RadicalScalar::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.front().second);
  constexpr mpfr_prec_t kPrec = 1024;
  MpfrValue sum(kPrec);
  accumulate(terms_, sum.get(), kPrec);
  return mpfr_sgn(sum.get());
}

double RadicalScalar::to_double() const {
  if (terms_.empty()) return 0.0;
  if (terms_.size() == 1 && terms_.front().first == 1) return terms_.front().second.get_d();
  constexpr mpfr_prec_t kPrec = 256;
  MpfrValue sum(kPrec);
  accumulate(terms_, sum.get(), kPrec);
  return mpfr_get_d(sum.get(), MPFR_RNDN);
}

std::string RadicalScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [n, q] : terms_) {
    Rational shown = q;
    if (!first) {
      out += q < 0 ? " - " : " + ";
      if (q < 0) shown = -q;
    }
    if (n == 1) {
      out += sl3k::to_string(shown);
    } else {
      out += coefficient_prefix(shown) + "√" + n.get_str();
    }
    first = false;
  }
  return out;
}

nlohmann::json RadicalScalar::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [n, q] : terms_) {
    nlohmann::json radicand;
    if (n.fits_ulong_p()) {
      radicand = static_cast<std::uint64_t>(n.get_ui());
    } else {
      radicand = n.get_str();
    }
    terms.push_back(nlohmann::json::array({radicand, sl3k::to_string(q)}));
  }
  return nlohmann::json{{"terms", terms}};
}

RadicalScalar RadicalScalar::from_json(const nlohmann::json& j) {
  RadicalScalar out;
  for (const auto& t : j.at("terms")) {
    const auto& r = t.at(0);
    Integer n = r.is_string() ? Integer(r.get<std::string>(), 10) : Integer(r.get<std::uint64_t>());
    out += term(parse_rational(t.at(1).get<std::string>()), n);
  }
  return out;
}

std::string ExactComplex::to_string() const {
  if (im.is_zero()) return re.to_string();
  std::string imag = im.is_rational() ? im.to_string() : "(" + im.to_string() + ")";
  if (imag == "1") imag.clear();
  if (imag == "-1") imag = "-";
  if (re.is_zero()) return imag + "i";
  if (!imag.empty() && imag[0] == '-') return re.to_string() + " - " + imag.substr(1) + "i";
  return re.to_string() + " + " + imag + "i";
}

void require_zero_sum(const LambdaValue& lambda) {
  if (std::abs(lambda[0] + lambda[1] + lambda[2]) > 1e-12) {
    throw std::invalid_argument("lambda components must sum to zero");
  }
}

void require_zero_sum(const ExactLambda& lambda) {
  if (!(lambda[0] + lambda[1] + lambda[2]).is_zero()) {
    throw std::invalid_argument("lambda components must sum to zero");
  }
}

LambdaValue to_numeric(const ExactLambda& lambda) {
  return {lambda[0].to_complex(), lambda[1].to_complex(), lambda[2].to_complex()};
}

ExactComplex parse_exact_complex(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return ExactComplex(RadicalScalar(parse_rational(s)));
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  const std::string real = split == std::string::npos ? "" : s.substr(0, split);
  std::string imag = split == std::string::npos ? s : s.substr(split);
  if (imag.empty() || imag == "+") imag = "1";
  if (imag == "-") imag = "-1";
  const RadicalScalar re = real.empty() ? RadicalScalar(0L) : RadicalScalar(parse_rational(real));
  return {re, RadicalScalar(parse_rational(imag))};
}

ExactLambda make_lambda(const ExactComplex& l1, const ExactComplex& l2) {
  return {l1, l2, -(l1 + l2)};
}

std::array<RadicalScalar, 3> LambdaForm::canonical() const {
  return {l1 - l3, l2 - l3, constant};
}

bool LambdaForm::is_zero() const {
  const auto c = canonical();
  return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

std::complex<double> LambdaForm::evaluate(const LambdaValue& lambda) const {
  require_zero_sum(lambda);
  return constant.to_double() + l1.to_double() * lambda[0] + l2.to_double() * lambda[1] +
         l3.to_double() * lambda[2];
}

ExactComplex LambdaForm::evaluate(const ExactLambda& lambda) const {
  require_zero_sum(lambda);
  return ExactComplex(constant) + ExactComplex(l1) * lambda[0] + ExactComplex(l2) * lambda[1] +
         ExactComplex(l3) * lambda[2];
}

std::string LambdaForm::to_string() const {
  const auto c = canonical();
  std::string out;
  const char* names[] = {"λ1", "λ2", ""};
  for (int i = 0; i < 3; ++i) {
    if (c[i].is_zero()) continue;
    std::string piece = c[i].to_string();
    if (i < 2) {
      if (piece == "1") piece.clear();
      else if (piece == "-1") piece = "-";
      else if (!c[i].is_rational() || c[i].terms().size() > 1) piece = "(" + piece + ")·";
      else piece += "·";
      piece += names[i];
    }
    if (!out.empty()) {
      if (piece.front() == '-') {
        out += " - " + piece.substr(1);
        continue;
      }
      out += " + ";
    }
    out += piece;
  }
  return out.empty() ? "0" : out;
}

LambdaForm& LambdaForm::operator+=(const LambdaForm& o) {
  constant += o.constant;
  l1 += o.l1;
  l2 += o.l2;
  l3 += o.l3;
  return *this;
}

LambdaForm& LambdaForm::operator*=(const RadicalScalar& s) {
  constant *= s;
  l1 *= s;
  l2 *= s;
  l3 *= s;
  return *this;
}

LambdaPoly::LambdaPoly(const ExactComplex& c) { add({0, 0}, c); }

LambdaPoly::LambdaPoly(const LambdaForm& form) {
  const auto c = form.canonical();
  add({1, 0}, ExactComplex(c[0]));
  add({0, 1}, ExactComplex(c[1]));
  add({0, 0}, ExactComplex(c[2]));
}

void LambdaPoly::add(const Exponents& e, const ExactComplex& c) {
  if (c.is_zero()) return;
  auto it = coeffs_.find(e);
  if (it == coeffs_.end()) {
    coeffs_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

int LambdaPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : coeffs_) d = std::max(d, e.first + e.second);
  return d;
}

std::complex<double> LambdaPoly::evaluate(const LambdaValue& lambda) const {
  require_zero_sum(lambda);
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : coeffs_) {
    sum += c.to_complex() * std::pow(lambda[0], e.first) * std::pow(lambda[1], e.second);
  }
  return sum;
}

ExactComplex LambdaPoly::evaluate(const ExactLambda& lambda) const {
  require_zero_sum(lambda);
  ExactComplex sum;
  for (const auto& [e, c] : coeffs_) {
    ExactComplex term = c;
    for (int i = 0; i < e.first; ++i) term *= lambda[0];
    for (int i = 0; i < e.second; ++i) term *= lambda[1];
    sum += term;
  }
  return sum;
}

std::string LambdaPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    os << "(" << c.to_string() << ")";
    if (e.first > 0) os << "·λ1" << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.second > 0) os << "·λ2" << (e.second > 1 ? "^" + std::to_string(e.second) : "");
    first = false;
  }
  return os.str();
}

LambdaPoly LambdaPoly::operator-() const {
  LambdaPoly out = *this;
  for (auto& [e, c] : out.coeffs_) c = -c;
  return out;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
  for (const auto& [e, c] : o.coeffs_) add(e, c);
  return *this;
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
  LambdaPoly out;
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) {
      out.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    }
  }
  return out;
}

}  // namespace sl3k
