#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sl3k/series.hpp"

using namespace sl3k;

namespace {

constexpr double kPi = std::numbers::pi;

EulerAngles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {2 * kPi * u(rng), kPi * u(rng), 2 * kPi * u(rng)};
}

Eigen::Matrix3d random_sl3(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = u(rng);
    const double det = g.determinant();
    if (std::abs(det) < 0.1) continue;
    if (det < 0) g.row(0) *= -1.0;
    return g / std::cbrt(std::abs(det));
  }
}

Eigen::Matrix3d random_upper(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.3, 3.0);
  const double a = pos(rng), b = pos(rng);
  Eigen::Matrix3d n = Eigen::Matrix3d::Identity();
  n(0, 1) = u(rng);
  n(0, 2) = u(rng);
  n(1, 2) = u(rng);
  return n * Eigen::Vector3d(a, b, 1.0 / (a * b)).asDiagonal().toDenseMatrix();
}

// Counts valid labels directly from the parity rules, without the closed form.
int brute_multiplicity(const Delta& d, int l) {
  int count = 0;
  for (int m1 = 0; m1 <= l; ++m1) {
    if ((m1 + d[0] + d[1]) % 2 != 0) continue;
    if (m1 == 0 && (d[0] + d[2] + l) % 2 != 0) continue;
    ++count;
  }
  return count;
}

WignerVector<std::complex<double>> numeric(const WignerVector<RadicalScalar>& v) {
  return v.map_coefficients([](const RadicalScalar& c) { return std::complex<double>(c.to_double()); });
}

const Delta kAllDeltas[] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                            {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};

}  // namespace

TEST_CASE("iwasawa reassembles g from factors of the right shape") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Matrix3d g = random_sl3(rng);
    const auto f = iwasawa(g);
    CHECK((f.n * f.a * f.k - g).norm() < 1e-10);
    CHECK((f.k * f.k.transpose() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(f.k.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.a.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 0; i < 3; ++i) {
      CHECK(f.a(i, i) > 0.0);
      CHECK(f.n(i, i) == 1.0);
      for (int j = 0; j < 3; ++j) {
        if (i != j) CHECK(f.a(i, j) == 0.0);
        if (j < i) CHECK(f.n(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("iwasawa rejects bad input") {
  CHECK_THROWS_AS(iwasawa(Eigen::Matrix3d::Identity() * 2.0), std::invalid_argument);
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
  g(0, 0) = -1.0;
  CHECK_THROWS_AS(iwasawa(g), std::invalid_argument);
}

TEST_CASE("sign matrices act on Euler angles by the stated shifts") {
  std::mt19937_64 rng(3);
  const Eigen::Matrix3d m1 = Eigen::Vector3d(-1, -1, 1).asDiagonal();
  const Eigen::Matrix3d m2 = Eigen::Vector3d(1, -1, -1).asDiagonal();
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = random_angles(rng);
    const auto k = matrix_from_euler(e);
    CHECK((m1 * k - matrix_from_euler({e.alpha + kPi, e.beta, e.gamma})).norm() < 1e-12);
    CHECK((m2 * k - matrix_from_euler({kPi - e.alpha, kPi - e.beta, kPi + e.gamma})).norm() <
          1e-12);
  }
}

TEST_CASE("extend_wigner transforms by the character of NA on the left") {
  std::mt19937_64 rng(5);
  const LambdaValue lambda{std::complex<double>(0.3, 1.1), std::complex<double>(-0.7, 0.2),
                           std::complex<double>(0.4, -1.3)};
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix3d g = random_sl3(rng);
    const Eigen::Matrix3d u = random_upper(rng);
    const WignerIndex idx{3, 1, -2};
    const auto lhs = extend_wigner(lambda, idx, GroupElement(u * g));
    const auto rhs = line_bundle_factor(lambda, u.diagonal()) * extend_wigner(lambda, idx, GroupElement(g));
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("extend_wigner on K reduces to the Wigner function") {
  std::mt19937_64 rng(8);
  const LambdaValue lambda{std::complex<double>(1.0), std::complex<double>(2.0),
                           std::complex<double>(-3.0)};
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = random_angles(rng);
    const WignerIndex idx{2, -1, 2};
    const auto v = extend_wigner(lambda, idx, GroupElement(matrix_from_euler(e)));
    CHECK(std::abs(v - wigner_D(idx, e)) < 1e-9);
  }
}

TEST_CASE("multiplicity matches the label count and known values") {
  CHECK(multiplicity({0, 0, 0}, 0) == 1);
  CHECK(multiplicity({0, 0, 0}, 1) == 0);
  CHECK(multiplicity({0, 0, 0}, 2) == 2);
  CHECK(multiplicity({1, 0, 1}, 1) == 1);
  CHECK(multiplicity({1, 0, 0}, 1) == 1);
  CHECK(multiplicity({1, 0, 0}, 4) == 2);
  CHECK(multiplicity({0, 0, 1}, 0) == 0);
  CHECK(multiplicity({0, 0, 1}, 1) == 1);
  for (const auto& d : kAllDeltas) {
    for (int l = 0; l <= 40; ++l) {
      CHECK(multiplicity(d, l) == brute_multiplicity(d, l));
      CHECK(basis(d, l).size() == static_cast<std::size_t>(multiplicity(d, l) * (2 * l + 1)));
    }
  }
  CHECK_THROWS_AS(multiplicity({2, 0, 0}, 1), std::invalid_argument);
}

TEST_CASE("every basis vector satisfies both parity conditions") {
  for (const auto& d : kAllDeltas) {
    for (int l = 0; l <= 5; ++l) {
      for (const auto& label : basis(d, l)) {
        const auto v = numeric(basis_vector(d, label));
        CHECK(parity_check([&](const EulerAngles& e) { return evaluate_at(v, e); }, d, 7));
      }
    }
  }
}

TEST_CASE("excluded Wigner functions fail a parity condition") {
  for (const auto& d : kAllDeltas) {
    for (int l = 0; l <= 4; ++l) {
      for (int m1 = -l; m1 <= l; ++m1) {
        for (int m2 = -l; m2 <= l; ++m2) {
          // A single D is never invariant unless m1 = 0 and the label is valid.
          const bool single_ok = m1 == 0 && label_valid(d, {l, 0, m2});
          WignerVector<std::complex<double>> v({l, m1, m2}, 1.0);
          const bool passes =
              parity_check([&](const EulerAngles& e) { return evaluate_at(v, e); }, d, 9, 20);
          CHECK(passes == single_ok);
          if (m1 > 0) {
            // The combination with the wrong relative sign.
            WignerVector<std::complex<double>> w({l, m1, m2}, 1.0);
            w.add({l, -m1, m2}, -double(basis_sign(d, l)));
            CHECK_FALSE(parity_check([&](const EulerAngles& e) { return evaluate_at(w, e); }, d, 9, 20));
          }
        }
      }
    }
  }
}

TEST_CASE("extended basis vectors transform by the sign character on the left") {
  std::mt19937_64 rng(21);
  const LambdaValue lambda{std::complex<double>(0.2, 0.5), std::complex<double>(0.1, -0.4),
                           std::complex<double>(-0.3, -0.1)};
  const Eigen::Matrix3d ma = Eigen::Vector3d(-1, -1, 1).asDiagonal();
  const Eigen::Matrix3d mb = Eigen::Vector3d(1, -1, -1).asDiagonal();
  for (const auto& d : kAllDeltas) {
    const auto labels = basis(d, 3);
    for (const auto& label : labels) {
      const auto v = numeric(basis_vector(d, label));
      const Eigen::Matrix3d g = random_sl3(rng);
      const auto base = extend_wigner(lambda, v, GroupElement(g));
      const double sa = (d[0] + d[1]) % 2 ? -1.0 : 1.0;
      const double sb = (d[1] + d[2]) % 2 ? -1.0 : 1.0;
      CHECK(std::abs(extend_wigner(lambda, v, GroupElement(ma * g)) - sa * base) < 1e-9);
      CHECK(std::abs(extend_wigner(lambda, v, GroupElement(mb * g)) - sb * base) < 1e-9);
    }
  }
}

TEST_CASE("basis_vector rejects invalid labels and SeriesParams validates input") {
  CHECK_THROWS_AS(basis_vector({0, 0, 1}, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(basis_vector({0, 0, 0}, {2, 1, 0}), std::invalid_argument);
  const ExactLambda ok{ExactComplex(RadicalScalar(1L)), ExactComplex(RadicalScalar(-1L)),
                       ExactComplex(RadicalScalar(0L))};
  CHECK_NOTHROW(SeriesParams(ok, {1, 0, 1}));
  CHECK_THROWS_AS(SeriesParams(ok, {1, 0, 3}), std::invalid_argument);
  const ExactLambda bad{ExactComplex(RadicalScalar(1L)), ExactComplex(RadicalScalar(1L)),
                        ExactComplex(RadicalScalar(0L))};
  CHECK_THROWS_AS(SeriesParams(bad, {0, 0, 0}), std::invalid_argument);
}
