#include "sl3k/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sl3k {

namespace {

constexpr int kMaxFactorial = 512;

const std::array<double, kMaxFactorial + 1>& log_factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    for (int n = 0; n <= kMaxFactorial; ++n) t[n] = std::lgamma(n + 1.0);
    return t;
  }();
  return table;
}

double log_factorial(int n) {
  if (n < 0 || n > kMaxFactorial) throw std::out_of_range("factorial argument out of range");
  return log_factorials()[n];
}

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

void require_valid(const WignerIndex& idx) {
  if (!idx.valid()) {
    throw std::out_of_range("invalid Wigner index (" + std::to_string(idx.l) + "," +
                            std::to_string(idx.m1) + "," + std::to_string(idx.m2) + ")");
  }
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

// sqrt(l(l+1) - m(m+1)) as an exact radical.
RadicalScalar ladder_factor(int l, int m, int shift) {
  return RadicalScalar::sqrt(Rational(l * (l + 1) - m * (m + shift)));
}

}  // namespace

double little_d(int l, int m1, int m2, double x) {
  require_valid({l, m1, m2});
  x = std::clamp(x, -1.0, 1.0);
  const double c = std::sqrt((1.0 + x) / 2.0);  // cos(beta/2)
  const double s = std::sqrt((1.0 - x) / 2.0);  // sin(beta/2)
  const double log_norm = 0.5 * (log_factorial(l + m1) + log_factorial(l - m1) -
                                 log_factorial(l + m2) - log_factorial(l - m2));
  double sum = 0.0;
  const int r_lo = std::max(0, m1 + m2);
  const int r_hi = std::min(l + m1, l + m2);
  for (int r = r_lo; r <= r_hi; ++r) {
    const double mag =
        std::exp(log_norm + log_binomial(l + m2, r) + log_binomial(l - m2, l + m1 - r));
    const double term = mag * std::pow(c, 2 * r - m1 - m2) * std::pow(s, 2 * l + m1 + m2 - 2 * r);
    sum += (r % 2 == 0) ? term : -term;
  }
  return ((l + m2) % 2 == 0) ? sum : -sum;
}

std::complex<double> wigner_D(const WignerIndex& idx, const EulerAngles& angles) {
  require_valid(idx);
  const double phase = idx.m1 * angles.alpha + idx.m2 * angles.gamma;
  return std::polar(little_d(idx.l, idx.m1, idx.m2, std::cos(angles.beta)), phase);
}

Eigen::MatrixXcd wigner_D_matrix(int l, const EulerAngles& angles) {
  const int dim = 2 * l + 1;
  Eigen::MatrixXcd out(dim, dim);
  for (int a = -l; a <= l; ++a) {
    for (int b = -l; b <= l; ++b) out(a + l, b + l) = wigner_D({l, a, b}, angles);
  }
  return out;
}

Eigen::Matrix3d matrix_from_euler(const EulerAngles& angles) {
  auto rz = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return r;
  };
  Eigen::Matrix3d rx;
  const double b = angles.beta;
  rx << 1, 0, 0, 0, std::cos(b), -std::sin(b), 0, std::sin(b), std::cos(b);
  return rz(angles.alpha) * rx * rz(angles.gamma);
}

EulerAngles euler_from_matrix(const Eigen::Matrix3d& k) {
  if ((k.transpose() * k - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-10 ||
      std::abs(k.determinant() - 1.0) > 1e-10) {
    throw std::invalid_argument("euler_from_matrix: matrix is not special orthogonal");
  }
  EulerAngles out;
  out.beta = std::acos(std::clamp(k(2, 2), -1.0, 1.0));
  const double sin_beta = std::hypot(k(2, 0), k(2, 1));
  if (sin_beta < 1e-12) {
    // Gimbal lock: only alpha +- gamma is determined; canonicalize gamma = 0.
    out.beta = k(2, 2) > 0 ? 0.0 : std::numbers::pi;
    out.alpha = wrap_angle(std::atan2(k(1, 0), k(0, 0)));
    out.gamma = 0.0;
    return out;
  }
  out.alpha = wrap_angle(std::atan2(k(0, 2), -k(1, 2)));
  out.gamma = wrap_angle(std::atan2(k(2, 0), k(2, 1)));
  return out;
}

WignerVector<ExactComplex> right_derivative(KElement x, const WignerIndex& idx) {
  require_valid(idx);
  const auto [l, m1, m2] = idx;
  WignerVector<ExactComplex> raise;
  WignerVector<ExactComplex> lower;
  if (m2 < l) raise.add({l, m1, m2 + 1}, ExactComplex(ladder_factor(l, m2, 1)));
  if (m2 > -l) lower.add({l, m1, m2 - 1}, ExactComplex(ladder_factor(l, m2, -1)));
  switch (x) {
    case KElement::Y1:
      return {idx, ExactComplex(RadicalScalar(0L), RadicalScalar(static_cast<long>(m2)))};
    case KElement::Y2PlusIY3:
      return raise;
    case KElement::MinusY2PlusIY3:
      return lower;
    case KElement::Y2:
      return (raise - lower).scaled(ExactComplex(RadicalScalar(Rational(1, 2))));
    case KElement::Y3:
      return (raise + lower).scaled(ExactComplex(RadicalScalar(0L), RadicalScalar(Rational(-1, 2))));
  }
  throw std::logic_error("unknown KElement");
}

WignerVector<ExactComplex> left_derivative(KElement x, const WignerIndex& idx) {
  require_valid(idx);
  const auto [l, m1, m2] = idx;
  WignerVector<ExactComplex> raise;  // L(-Y2 + iY3)
  WignerVector<ExactComplex> lower;  // L(Y2 + iY3)
  if (m1 < l) raise.add({l, m1 + 1, m2}, ExactComplex(ladder_factor(l, m1, 1)));
  if (m1 > -l) lower.add({l, m1 - 1, m2}, ExactComplex(ladder_factor(l, m1, -1)));
  switch (x) {
    case KElement::Y1:
      return {idx, ExactComplex(RadicalScalar(0L), RadicalScalar(static_cast<long>(m1)))};
    case KElement::MinusY2PlusIY3:
      return raise;
    case KElement::Y2PlusIY3:
      return lower;
    case KElement::Y2:
      return (lower - raise).scaled(ExactComplex(RadicalScalar(Rational(1, 2))));
    case KElement::Y3:
      return (lower + raise).scaled(ExactComplex(RadicalScalar(0L), RadicalScalar(Rational(-1, 2))));
  }
  throw std::logic_error("unknown KElement");
}

std::complex<double> evaluate_at(const WignerVector<std::complex<double>>& v,
                                 const EulerAngles& angles) {
  std::complex<double> sum = 0.0;
  for (const auto& [idx, c] : v) sum += c * wigner_D(idx, angles);
  return sum;
}

}  // namespace sl3k
