#include "sl3k/series.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sl3k {

namespace {

constexpr double kRowTolerance = 1e-10;

}  // namespace

void require_valid_delta(const Delta& delta) {
  for (int d : delta) {
    if (d != 0 && d != 1) throw std::invalid_argument("delta entries must be 0 or 1");
  }
}

SeriesParams::SeriesParams(ExactLambda l, Delta d) : lambda(std::move(l)), delta(d) {
  require_zero_sum(lambda);
  require_valid_delta(delta);
}

IwasawaFactors iwasawa(const Eigen::Matrix3d& g) {
  if (std::abs(g.determinant() - 1.0) > 1e-10) {
    throw std::invalid_argument("iwasawa: determinant must be 1");
  }
  Eigen::Matrix3d k;
  Eigen::Vector3d diag;
  for (int row = 2; row >= 0; --row) {
    Eigen::RowVector3d r = g.row(row);
    for (int below = row + 1; below < 3; ++below) r -= r.dot(k.row(below)) * k.row(below);
    const double norm = r.norm();
    if (norm < kRowTolerance) throw std::invalid_argument("iwasawa: matrix is near-singular");
    k.row(row) = r / norm;
    diag(row) = norm;
  }
  IwasawaFactors out;
  out.k = k;
  out.a = diag.asDiagonal();
  Eigen::Matrix3d na = g * k.transpose();
  out.n = na * diag.cwiseInverse().asDiagonal();
  // Entries below the diagonal are rounding noise; the diagonal is 1 by construction.
  for (int i = 0; i < 3; ++i) {
    out.n(i, i) = 1.0;
    for (int j = 0; j < i; ++j) out.n(i, j) = 0.0;
  }
  return out;
}

GroupElement::GroupElement(const Eigen::Matrix3d& g)
    : g_(g), f_(iwasawa(g)), angles_(euler_from_matrix(f_.k)) {}

std::complex<double> line_bundle_factor(const LambdaValue& lambda, const Eigen::Vector3d& abc) {
  const std::complex<double> exponent = (1.0 + lambda[0]) * std::log(abc(0)) +
                                        lambda[1] * std::log(abc(1)) +
                                        (-1.0 + lambda[2]) * std::log(abc(2));
  return std::exp(exponent);
}

std::complex<double> extend_wigner(const LambdaValue& lambda, const WignerIndex& idx,
                                   const GroupElement& g) {
  return line_bundle_factor(lambda, g.diagonal()) * wigner_D(idx, g.angles());
}

std::complex<double> extend_wigner(const LambdaValue& lambda,
                                   const WignerVector<std::complex<double>>& v,
                                   const GroupElement& g) {
  return line_bundle_factor(lambda, g.diagonal()) * evaluate_at(v, g.angles());
}

int basis_sign(const Delta& delta, int l) { return ((delta[0] + delta[2] + l) % 2 == 0) ? 1 : -1; }

bool label_valid(const Delta& delta, const BasisLabel& label) {
  const auto [l, m1, m2] = label;
  if (l < 0 || m1 < 0 || m1 > l || m2 < -l || m2 > l) return false;
  if ((m1 - delta[0] - delta[1]) % 2 != 0) return false;
  if (m1 == 0 && basis_sign(delta, l) != 1) return false;
  return true;
}

std::vector<BasisLabel> basis(const Delta& delta, int l) {
  require_valid_delta(delta);
  std::vector<BasisLabel> out;
  if (l < 0) return out;
  for (int m1 = 0; m1 <= l; ++m1) {
    for (int m2 = -l; m2 <= l; ++m2) {
      if (label_valid(delta, {l, m1, m2})) out.push_back({l, m1, m2});
    }
  }
  return out;
}

int multiplicity(const Delta& delta, int l) {
  require_valid_delta(delta);
  if (l < 0) return 0;
  if ((delta[0] + delta[1]) % 2 == 1) return (l + 1) / 2;
  if ((delta[0] + delta[2] + l) % 2 == 0) return 1 + l / 2;
  return l / 2;
}

WignerVector<RadicalScalar> basis_vector(const Delta& delta, const BasisLabel& label) {
  if (!label_valid(delta, label)) throw std::invalid_argument("label is not valid for delta");
  WignerVector<RadicalScalar> out;
  out.add({label.l, label.m1, label.m2}, RadicalScalar(1L));
  out.add({label.l, -label.m1, label.m2}, RadicalScalar(static_cast<long>(basis_sign(delta, label.l))));
  return out;
}

bool parity_check(const KFunction& f, const Delta& delta, std::uint64_t seed, int samples) {
  require_valid_delta(delta);
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s12 = ((delta[0] + delta[1]) % 2 == 0) ? 1.0 : -1.0;
  const double s23 = ((delta[1] + delta[2]) % 2 == 0) ? 1.0 : -1.0;
  for (int i = 0; i < samples; ++i) {
    const EulerAngles k{2 * pi * u(rng), pi * u(rng), 2 * pi * u(rng)};
    const auto value = f(k);
    const auto first = f({k.alpha + pi, k.beta, k.gamma});
    const auto second = f({pi - k.alpha, pi - k.beta, pi + k.gamma});
    if (std::abs(value - s12 * first) > 1e-9) return false;
    if (std::abs(value - s23 * second) > 1e-9) return false;
  }
  return true;
}

}  // namespace sl3k
