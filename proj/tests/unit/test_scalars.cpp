#include <cmath>
#include <random>

#include "doctest.h"
#include "sl3k/scalars.hpp"

using namespace sl3k;

namespace {

RadicalScalar random_radical(std::mt19937_64& rng) {
  static const int radicands[] = {1, 2, 3, 5, 6, 7, 10, 15, 30};
  std::uniform_int_distribution<int> nterms(0, 3);
  std::uniform_int_distribution<int> pick(0, 8);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  RadicalScalar out;
  for (int t = nterms(rng); t > 0; --t) {
    out += RadicalScalar::term(Rational(num(rng), den(rng)), Integer(radicands[pick(rng)]));
  }
  return out;
}

double ulp_distance(double a, double b) {
  return std::abs(a - b) / std::nextafter(std::abs(b), INFINITY) * 0.0 +
         std::abs(a - b) / (std::nextafter(std::abs(b), INFINITY) - std::abs(b));
}

}  // namespace

TEST_CASE("radical_mul examples") {
  const auto r2 = RadicalScalar::sqrt(2);
  CHECK(r2 * r2 == RadicalScalar(2L));

  const auto r6 = RadicalScalar::sqrt(6);
  CHECK(r6 * (Rational(1, 3) * r6) == RadicalScalar(2L));

  const RadicalScalar one(1L);
  CHECK((one + r2) * (one - r2) == RadicalScalar(-1L));
}

TEST_CASE("canonical form extracts square factors") {
  CHECK(RadicalScalar::sqrt(12) == RadicalScalar::term(2, 3));
  CHECK(RadicalScalar::sqrt(Rational(2, 3)) == RadicalScalar::term(Rational(1, 3), 6));
  CHECK(RadicalScalar::sqrt(Rational(1, 10)) == RadicalScalar::term(Rational(1, 10), 10));
  CHECK(RadicalScalar::sqrt(0).is_zero());
  CHECK(RadicalScalar::sqrt(49) == RadicalScalar(7L));
  CHECK((RadicalScalar::sqrt(2) - RadicalScalar::sqrt(8) + RadicalScalar::sqrt(2)).is_zero());
  CHECK_THROWS_AS(RadicalScalar::sqrt(-1), std::domain_error);

  // Large radicand made of factorial-sized pieces.
  Integer big = 1;
  for (int n = 2; n <= 40; ++n) big *= n;
  const auto r = RadicalScalar::term(1, big);
  REQUIRE(r.terms().size() == 1);
  const Integer squarefree = r.terms().front().first;
  CHECK(mpz_perfect_square_p(Integer(big / squarefree).get_mpz_t()) != 0);
}

TEST_CASE("radical_to_float examples") {
  CHECK(RadicalScalar::sqrt(2).to_double() == doctest::Approx(1.41421356237309505).epsilon(1e-16));
  CHECK(RadicalScalar().to_double() == 0.0);
  // 1/sqrt(10) against a long-double reference.
  const double value = RadicalScalar::term(Rational(1, 10), 10).to_double();
  const long double reference = 1.0L / std::sqrt(10.0L);
  CHECK(ulp_distance(value, static_cast<double>(reference)) <= 2.0);
  CHECK(value == doctest::Approx(0.31622776601683794));
}

TEST_CASE("inverse of single-term radicals") {
  const auto x = RadicalScalar::term(Rational(3, 5), 6);
  CHECK(x * x.inverse() == RadicalScalar(1L));
  CHECK_THROWS_AS((RadicalScalar(1L) + RadicalScalar::sqrt(2)).inverse(), std::domain_error);
  CHECK_THROWS_AS(RadicalScalar().inverse(), std::domain_error);
}

TEST_CASE("sign is exact for cancellations near zero") {
  // 99 - 70 sqrt(2) = 0.00505... > 0
  const auto x = RadicalScalar(99L) - Rational(70) * RadicalScalar::sqrt(2);
  CHECK(x.sign() == 1);
  CHECK((-x).sign() == -1);
  CHECK(RadicalScalar().sign() == 0);
}

TEST_CASE("field axioms on random radicals") {
  std::mt19937_64 rng(20170228);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto a = random_radical(rng);
    const auto b = random_radical(rng);
    const auto c = random_radical(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a - a).is_zero());
    const double fa = a.to_double();
    const double fb = b.to_double();
    const double fab = (a * b).to_double();
    REQUIRE(std::abs(fab - fa * fb) <= 1e-12 * std::max(1.0, std::abs(fa * fb)));
  }
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
  CHECK(parse_rational("+2e3") == 2000);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("json serialization") {
  const auto x = RadicalScalar(Rational(-1, 3)) + RadicalScalar::term(Rational(2, 7), 15);
  const auto j = x.to_json();
  CHECK(j.dump() == R"({"terms":[[1,"-1/3"],[15,"2/7"]]})");
  CHECK(RadicalScalar::from_json(j) == x);
}

TEST_CASE("rendering") {
  CHECK(RadicalScalar::term(Rational(1, 10), 10).to_string() == "(1/10)·√10");
  CHECK((RadicalScalar(1L) - RadicalScalar::sqrt(2)).to_string() == "1 - √2");
  CHECK(RadicalScalar().to_string() == "0");
}

TEST_CASE("lambda_eval examples") {
  // lambda1 + lambda2 - 2 lambda3 at the origin
  const LambdaForm l0{RadicalScalar(), RadicalScalar(1L), RadicalScalar(1L), RadicalScalar(-2L)};
  CHECK(l0.evaluate(LambdaValue{0.0, 0.0, 0.0}) == std::complex<double>(0.0));

  // lambda1 - lambda2 + 1 + m1 with m1 = 0 at (-1/2, 1/2, 0)
  const LambdaForm up{RadicalScalar(1L), RadicalScalar(1L), RadicalScalar(-1L), RadicalScalar()};
  CHECK(up.evaluate(make_lambda(RadicalScalar(Rational(-1, 2)), RadicalScalar(Rational(1, 2))))
            .is_zero());

  // lambda1 - lambda2 + 1 - m1 with m1 = 2 - k, k = 4, at (-(k-1)/2, (k-1)/2, 0)
  const int k = 4;
  const LambdaForm down{RadicalScalar(static_cast<long>(1 - (2 - k))), RadicalScalar(1L),
                        RadicalScalar(-1L), RadicalScalar()};
  CHECK(down.evaluate(make_lambda(RadicalScalar(Rational(-(k - 1), 2)),
                                  RadicalScalar(Rational(k - 1, 2))))
            .is_zero());

  CHECK_THROWS_AS(up.evaluate(LambdaValue{1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(up.evaluate(ExactLambda{ExactComplex(1L), ExactComplex(0L), ExactComplex(0L)}),
                  std::invalid_argument);
}

TEST_CASE("lambda forms compare after eliminating lambda3") {
  // lambda1 + lambda2 + lambda3 == 0
  const LambdaForm sum{RadicalScalar(), RadicalScalar(1L), RadicalScalar(1L), RadicalScalar(1L)};
  CHECK(sum.is_zero());
  const LambdaForm a{RadicalScalar(3L), RadicalScalar(), RadicalScalar(), RadicalScalar(1L)};
  const LambdaForm b{RadicalScalar(3L), RadicalScalar(-1L), RadicalScalar(-1L), RadicalScalar()};
  CHECK(a == b);
}

TEST_CASE("lambda_eval is additive and homogeneous") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const LambdaForm f{random_radical(rng), random_radical(rng), random_radical(rng),
                       random_radical(rng)};
    const LambdaForm g{random_radical(rng), random_radical(rng), random_radical(rng),
                       random_radical(rng)};
    const auto s = random_radical(rng);
    const std::complex<double> l1(u(rng), u(rng));
    const std::complex<double> l2(u(rng), u(rng));
    const LambdaValue lam{l1, l2, -l1 - l2};
    CHECK(std::abs((f + g).evaluate(lam) - f.evaluate(lam) - g.evaluate(lam)) < 1e-11);
    CHECK(std::abs((f * s).evaluate(lam) - s.to_double() * f.evaluate(lam)) < 1e-11);
    // exact evaluation at a rational point agrees with float evaluation
    const ExactLambda exact = make_lambda(RadicalScalar(Rational(1, 3)), RadicalScalar(Rational(-5, 2)));
    CHECK(std::abs(f.evaluate(exact).to_complex() - f.evaluate(to_numeric(exact))) < 1e-11);
  }
}

TEST_CASE("lambda polynomials multiply forms") {
  const LambdaForm x{RadicalScalar(1L), RadicalScalar(1L), RadicalScalar(), RadicalScalar()};
  const LambdaForm y{RadicalScalar(), RadicalScalar(), RadicalScalar(1L), RadicalScalar(-1L)};
  const LambdaPoly p = LambdaPoly(x) * LambdaPoly(y);
  CHECK(p.degree() == 2);
  const LambdaValue lam{std::complex<double>(0.3, 0.1), std::complex<double>(-0.7, 0.2), std::complex<double>(0.4, -0.3)};
  CHECK(std::abs(p.evaluate(lam) - x.evaluate(lam) * y.evaluate(lam)) < 1e-14);
  CHECK((p - p).is_zero());
}

TEST_CASE("parse_exact_complex") {
  CHECK(parse_exact_complex("-0.5") == ExactComplex(RadicalScalar(Rational(-1, 2))));
  CHECK(parse_exact_complex("0.3+0.1i") ==
        ExactComplex(RadicalScalar(Rational(3, 10)), RadicalScalar(Rational(1, 10))));
  CHECK(parse_exact_complex("1/2-3/4i") ==
        ExactComplex(RadicalScalar(Rational(1, 2)), RadicalScalar(Rational(-3, 4))));
  CHECK(parse_exact_complex("2i") == ExactComplex(RadicalScalar(0L), RadicalScalar(2L)));
  CHECK(parse_exact_complex("-i") == ExactComplex(RadicalScalar(0L), RadicalScalar(-1L)));
  CHECK(parse_exact_complex("1e-1+1e-2i") ==
        ExactComplex(RadicalScalar(Rational(1, 10)), RadicalScalar(Rational(1, 100))));
  CHECK_THROWS_AS(parse_exact_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_exact_complex(""), std::invalid_argument);
}

TEST_CASE("complex formatting uses a minus sign for negative imaginary parts") {
  CHECK(parse_exact_complex("1/2-1/3i").to_string() == "1/2 - 1/3i");
  CHECK(parse_exact_complex("1/2+1/3i").to_string() == "1/2 + 1/3i");
  CHECK(parse_exact_complex("2-i").to_string() == "2 - i");
  CHECK(parse_exact_complex("-i").to_string() == "-i");
}
