#include <string>
#include <vector>

#include "doctest.h"
#include "kron/algebra.hpp"

using kron::BigInteger;
using kron::BigRational;
using kron::RationalPolynomial;

TEST_CASE("factorial matches reference values") {
  CHECK(kron::factorial(0) == 1);
  CHECK(kron::factorial(1) == 1);
  CHECK(kron::factorial(5) == 120);
  CHECK(kron::factorial(10) == 3628800);
  CHECK(kron::factorial(20) == BigInteger("2432902008176640000"));

  const std::string f200 = kron::factorial(200).get_str();
  CHECK(f200.size() == 375);
  CHECK(f200.substr(0, 24) == "788657867364790503552363");
}

TEST_CASE("binomial agrees with a Pascal-triangle table") {
  // Independent table.
  std::vector<std::vector<BigInteger>> pas(25);
  for (int n = 0; n < 25; ++n) {
    pas[n].assign(static_cast<std::size_t>(n) + 1, BigInteger(1));
    for (int k = 1; k < n; ++k) pas[n][k] = pas[n - 1][k - 1] + pas[n - 1][k];
  }
  for (int n = 0; n < 25; ++n)
    for (int k = 0; k <= n; ++k) CHECK(kron::binomial(n, k) == pas[n][k]);

  CHECK(kron::binomial(10, 3) == 120);
  CHECK(kron::binomial(52, 5) == BigInteger("2598960"));
  CHECK(kron::binomial(5, 6) == 0);
  CHECK(kron::binomial(5, -1) == 0);
}

TEST_CASE("rationals canonicalize and round-trip through strings") {
  CHECK(kron::make_rational(2, 4) == kron::make_rational(1, 2));
  CHECK(kron::make_rational(-2, -4) == kron::make_rational(1, 2));
  CHECK(kron::make_rational(1, -2) == kron::make_rational(-1, 2));
  CHECK(kron::rational_str(kron::make_rational(-3, 6)) == "-1/2");
  CHECK(kron::rational_str(kron::make_rational(10, 2)) == "5");
  CHECK(kron::rational_from_str("22/7") == kron::make_rational(22, 7));
  CHECK(kron::rational_from_str("-5") == kron::make_rational(-5, 1));
  CHECK(kron::rational_from_str("0") == kron::make_rational(0, 1));
}

TEST_CASE("integer and rational powers") {
  CHECK(kron::pow_integer(BigInteger(2), 10) == 1024);
  CHECK(kron::pow_integer(BigInteger(10), 0) == 1);
  CHECK(kron::pow_integer(BigInteger(3), 20) == BigInteger("3486784401"));
  CHECK(kron::pow_rational(kron::make_rational(1, 2), 3) == kron::make_rational(1, 8));
  CHECK(kron::pow_rational(kron::make_rational(-2, 3), 2) == kron::make_rational(4, 9));
}

TEST_CASE("polynomial arithmetic, evaluation and printing") {
  RationalPolynomial p;  // 1/2 m^4 - 4/3 m^3 + m^2 - 1/6 m
  p += RationalPolynomial::monomial(kron::make_rational(1, 2), 4);
  p += RationalPolynomial::monomial(kron::make_rational(-4, 3), 3);
  p += RationalPolynomial::monomial(kron::make_rational(1, 1), 2);
  p += RationalPolynomial::monomial(kron::make_rational(-1, 6), 1);

  CHECK(p.degree() == 4);
  CHECK(p.coeff(3) == kron::make_rational(-4, 3));
  CHECK(p.coeff(0) == 0);
  CHECK(p.str() == "1/2*m^4 - 4/3*m^3 + m^2 - 1/6*m");
  CHECK(p.eval(3) == kron::make_rational(13, 1));
  CHECK(p.eval(BigInteger(10)) == kron::make_rational(3765, 1));

  RationalPolynomial q = RationalPolynomial::from_json(p.to_json());
  CHECK(q == p);

  RationalPolynomial z;
  CHECK(z.is_zero());
  CHECK(z.str() == "0");
  CHECK((p - p).is_zero());
}

TEST_CASE("polynomial products expand correctly") {
  RationalPolynomial lin1 = RationalPolynomial::monomial(kron::make_rational(1, 1), 1) +
                            RationalPolynomial::constant(kron::make_rational(1, 1));
  RationalPolynomial lin2 = RationalPolynomial::monomial(kron::make_rational(1, 1), 1) -
                            RationalPolynomial::constant(kron::make_rational(1, 1));
  RationalPolynomial prod = lin1 * lin2;  // m^2 - 1
  CHECK(prod.coeff(2) == 1);
  CHECK(prod.coeff(1) == 0);
  CHECK(prod.coeff(0) == -1);

  // (m+1)^2 expanded vs assembled.
  RationalPolynomial sq = lin1 * lin1;
  RationalPolynomial expect = RationalPolynomial::monomial(kron::make_rational(1, 1), 2) +
                              RationalPolynomial::monomial(kron::make_rational(2, 1), 1) +
                              RationalPolynomial::constant(kron::make_rational(1, 1));
  CHECK(sq == expect);

  // Scalar multiple.
  RationalPolynomial half = prod * kron::make_rational(1, 2);
  CHECK(half.coeff(2) == kron::make_rational(1, 2));

  // Product evaluation agrees with evaluating the factors, on a few points.
  for (long x = -3; x <= 3; ++x) {
    CHECK(prod.eval(x) == lin1.eval(x) * lin2.eval(x));
  }
}
