#include <cmath>
#include <numbers>
#include <atomic>
#include <random>
#include <thread>

#include "doctest.h"
#include "sl3k/clebsch.hpp"
#include "sl3k/wigner.hpp"

using namespace sl3k;

namespace {

Integer fact(long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

// Racah's closed form for <j1 m1 j2 m2 | J M>, evaluated exactly.
RadicalScalar racah_cg(int j1, int m1, int j2, int m2, int J, int M) {
  if (M != m1 + m2 || std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return {};
  if (J < std::abs(j1 - j2) || J > j1 + j2) return {};
  const Rational a(Integer(2 * J + 1) * fact(J + j1 - j2) * fact(J - j1 + j2) * fact(j1 + j2 - J) *
                       fact(J + M) * fact(J - M) * fact(j1 - m1) * fact(j1 + m1) * fact(j2 - m2) *
                       fact(j2 + m2),
                   fact(j1 + j2 + J + 1));
  Rational sum = 0;
  for (int k = 0; k <= j1 + j2 + J; ++k) {
    const int args[] = {j1 + j2 - J - k, j1 - m1 - k, j2 + m2 - k, J - j2 + m1 + k,
                        J - j1 - m2 + k};
    bool ok = true;
    for (int v : args) ok = ok && v >= 0;
    if (!ok) continue;
    Integer den = fact(k);
    for (int v : args) den *= fact(v);
    sum += Rational(k % 2 == 0 ? 1 : -1, den);
  }
  sum.canonicalize();
  return RadicalScalar::sqrt(Rational(a)) * sum;
}

}  // namespace

TEST_CASE("q examples") {
  for (int k = -2; k <= 2; ++k) CHECK(q(k, 2, 0, 0) == RadicalScalar(1L));
  CHECK(q(0, 0, 1, 1) == RadicalScalar::term(Rational(1, 10), 10));
  CHECK(q(0, 0, 1, 1).to_double() == doctest::Approx(0.316227766016838));
  for (int l = 1; l <= 12; ++l) CHECK(q(0, -1, l, 0).is_zero());
  for (int l = 1; l <= 12; ++l) CHECK(q(0, 1, l, 0).is_zero());
}

TEST_CASE("q vanishes outside the triangular range") {
  CHECK(q(0, 0, 0, 0).is_zero());
  CHECK(q(0, -1, 1, 0).is_zero());
  CHECK(q(0, 1, 0, 0).is_zero());
  CHECK(q(3, 0, 4, 0).is_zero());
  CHECK(q(0, 3, 4, 0).is_zero());
  CHECK(q(2, -2, 2, 1).is_zero());
  CHECK(q(0, 0, 2, 3).is_zero());
}

TEST_CASE("q agrees with the Racah formula") {
  for (int l = 0; l <= 10; ++l) {
    for (int j = -2; j <= 2; ++j) {
      if (l + j < 0) continue;
      for (int k = -2; k <= 2; ++k) {
        for (int m = -l; m <= l; ++m) {
          INFO("k=" << k << " j=" << j << " l=" << l << " m=" << m);
          CHECK(q(k, j, l, m) == racah_cg(2, k, l, m, l + j, k + m));
        }
      }
    }
  }
}

TEST_CASE("reflection symmetry of q") {
  for (int l = 0; l <= 8; ++l) {
    for (int j = -2; j <= 2; ++j) {
      for (int k = -2; k <= 2; ++k) {
        for (int m = -l; m <= l; ++m) {
          const RadicalScalar& a = q(k, j, l, m);
          const RadicalScalar& b = q(-k, j, l, -m);
          CHECK(a == (j % 2 == 0 ? b : -b));
        }
      }
    }
  }
}

TEST_CASE("recurrence holds for all small indices") {
  CHECK(verify_recurrence_cg4(1, 0, 2));
  CHECK(verify_recurrence_cg4(0, 0, 2));
  for (int l = 0; l <= 8; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int j = -2; j <= 2; ++j) {
        INFO("l=" << l << " m=" << m << " j=" << j);
        CHECK(verify_recurrence_cg4(l, m, j));
      }
    }
  }
}

TEST_CASE("cg5 identity") {
  for (int l = 0; l <= 6; ++l) {
    for (int n = -2; n <= 2; ++n) {
      for (int m1 = -l; m1 <= l; ++m1) {
        for (int m2 = -l; m2 <= l; ++m2) {
          INFO("n=" << n << " l=" << l << " m1=" << m1 << " m2=" << m2);
          CHECK(verify_cg5(n, l, m1, m2));
        }
      }
    }
  }
}

TEST_CASE("coupling columns are orthonormal") {
  for (int l = 0; l <= 8; ++l) {
    for (int k = -2; k <= 2; ++k) {
      for (int m = -l; m <= l; ++m) {
        RadicalScalar sum;
        bool all_targets = true;
        for (int j = -2; j <= 2; ++j) {
          sum += q(k, j, l, m) * q(k, j, l, m);
          const int target = l + j;
          if (target < 0 || std::abs(k + m) > target || std::abs(l - 2) > target) all_targets = false;
        }
        CHECK((RadicalScalar(1L) - sum).sign() >= 0);
        if (all_targets) CHECK(sum == RadicalScalar(1L));
      }
    }
  }
}

TEST_CASE("cg_product examples") {
  const auto single = cg_product({2, 0, 0}, {0, 0, 0});
  CHECK(single.size() == 1);
  CHECK(single.coefficient({2, 0, 0}) == RadicalScalar(1L));

  // Triangularity allows l'' in {1, 2, 3}, i.e. j in {0, 1, 2}; all three survive.
  const auto p = cg_product({2, 2, 1}, {1, -1, -1});
  CHECK(p.size() == 3);
  for (const auto& [idx, c] : p) {
    CHECK(idx.m1 == 1);
    CHECK(idx.m2 == 0);
    CHECK(idx.l >= 1);
    CHECK(idx.l <= 3);
  }
  CHECK_THROWS_AS(cg_product({1, 0, 0}, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("cg_product matches pointwise products") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<EulerAngles> points;
  for (int i = 0; i < 50; ++i) {
    points.push_back({2 * std::numbers::pi * u(rng), std::numbers::pi * u(rng),
                      2 * std::numbers::pi * u(rng)});
  }
  double worst = 0.0;
  for (int l = 0; l <= 4; ++l) {
    for (int a = -2; a <= 2; ++a) {
      for (int b = -2; b <= 2; ++b) {
        for (int m1 = -l; m1 <= l; ++m1) {
          for (int m2 = -l; m2 <= l; ++m2) {
            const auto expansion = cg_product({2, a, b}, {l, m1, m2}).map_coefficients(
                [](const RadicalScalar& c) { return std::complex<double>(c.to_double()); });
            for (const auto& k : points) {
              const auto direct = wigner_D({2, a, b}, k) * wigner_D({l, m1, m2}, k);
              worst = std::max(worst, std::abs(direct - evaluate_at(expansion, k)));
            }
          }
        }
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("memo table is safe under concurrent readers") {
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&mismatches, t] {
      for (int l = 20 + t; l <= 30; ++l) {
        for (int m = -l; m <= l; ++m) {
          if (q(0, 2, l, m) != racah_cg(2, 0, l, m, l + 2, m)) ++mismatches;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(mismatches == 0);
}
