#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "json.hpp"

namespace kron {

// Arbitrary-precision integers and rationals. Rationals are kept in lowest
// terms with positive denominator; every constructor path canonicalizes.
using BigInteger = mpz_class;
using BigRational = mpq_class;

BigRational make_rational(const BigInteger& num, const BigInteger& den);
BigRational make_rational(long num, long den);

// "p" when the denominator is 1, "p/q" otherwise.
std::string rational_str(const BigRational& q);
BigRational rational_from_str(const std::string& s);

BigInteger factorial(long n);

// 0 whenever k lies outside [0, n].
BigInteger binomial(long n, long k);

BigInteger pow_integer(const BigInteger& base, unsigned long exp);
BigRational pow_rational(const BigRational& base, unsigned long exp);

// Sparse univariate polynomial over BigRational, exponent -> coefficient.
// Zero coefficients are never stored.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;

  static RationalPolynomial constant(const BigRational& c);
  static RationalPolynomial monomial(const BigRational& c, unsigned exp);

  bool is_zero() const { return c_.empty(); }
  unsigned degree() const;  // 0 for the zero polynomial
  BigRational coeff(unsigned exp) const;
  const std::map<unsigned, BigRational>& coeffs() const { return c_; }

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const BigRational& s);
  RationalPolynomial& operator*=(const RationalPolynomial& o);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) {
    return a += b;
  }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) {
    return a -= b;
  }
  friend RationalPolynomial operator*(RationalPolynomial a, const BigRational& s) {
    return a *= s;
  }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    RationalPolynomial r = a;
    r *= b;
    return r;
  }
  RationalPolynomial operator-() const;
  bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }

  BigRational eval(const BigInteger& x) const;
  BigRational eval(long x) const { return eval(BigInteger(x)); }

  // "1/2*m^4 - 4/3*m^3 + m^2 - 1/6*m"; unit coefficients are dropped in
  // front of the variable, exponent 1 prints bare, the zero polynomial is "0".
  std::string str(const std::string& var = "m") const;

  // {"coeffs": [[exponent, "num/den"], ...]} with exponents descending.
  nlohmann::json to_json() const;
  static RationalPolynomial from_json(const nlohmann::json& j);

 private:
  std::map<unsigned, BigRational> c_;
  void set(unsigned exp, const BigRational& c);
};

}  // namespace kron
