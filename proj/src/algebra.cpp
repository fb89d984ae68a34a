#include "kron/algebra.hpp"

#include <stdexcept>

namespace kron {

BigRational make_rational(const BigInteger& num, const BigInteger& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational make_rational(long num, long den) {
  return make_rational(BigInteger(num), BigInteger(den));
}

std::string rational_str(const BigRational& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

BigRational rational_from_str(const std::string& s) {
  BigRational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  q.canonicalize();
  return q;
}

BigInteger factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  BigInteger r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInteger binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial with negative n");
  if (k < 0 || k > n) return 0;
  BigInteger r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInteger pow_integer(const BigInteger& base, unsigned long exp) {
  BigInteger r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigRational pow_rational(const BigRational& base, unsigned long exp) {
  BigRational r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
  return r;  // base canonical => powers canonical
}

RationalPolynomial RationalPolynomial::constant(const BigRational& c) { return monomial(c, 0); }

RationalPolynomial RationalPolynomial::monomial(const BigRational& c, unsigned exp) {
  RationalPolynomial p;
  p.set(exp, c);
  return p;
}

unsigned RationalPolynomial::degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }

BigRational RationalPolynomial::coeff(unsigned exp) const {
  auto it = c_.find(exp);
  return it == c_.end() ? BigRational(0) : it->second;
}

void RationalPolynomial::set(unsigned exp, const BigRational& c) {
  if (c == 0)
    c_.erase(exp);
  else
    c_[exp] = c;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  for (const auto& [e, c] : o.c_) set(e, coeff(e) + c);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  for (const auto& [e, c] : o.c_) set(e, coeff(e) - c);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const BigRational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [e, c] : c_) c *= s;
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  RationalPolynomial prod;
  for (const auto& [e1, c1] : c_) {
    for (const auto& [e2, c2] : o.c_) {
      prod.set(e1 + e2, prod.coeff(e1 + e2) + c1 * c2);
    }
  }
  c_ = std::move(prod.c_);
  return *this;
}

RationalPolynomial RationalPolynomial::operator-() const {
  RationalPolynomial r;
  for (const auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

BigRational RationalPolynomial::eval(const BigInteger& x) const {
  BigRational acc(0);
  for (const auto& [e, c] : c_) acc += c * BigRational(pow_integer(x, e));
  return acc;
}

std::string RationalPolynomial::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool neg = c < 0;
    BigRational mag = neg ? BigRational(-c) : c;
    std::string term;
    if (e == 0) {
      term = rational_str(mag);
    } else {
      if (mag != 1) term = rational_str(mag) + "*";
      term += var;
      if (e > 1) term += "^" + std::to_string(e);
    }
    if (first) {
      out = (neg ? "-" : "") + term;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

nlohmann::json RationalPolynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    arr.push_back({it->first, rational_str(it->second)});
  return nlohmann::json{{"coeffs", arr}};
}

RationalPolynomial RationalPolynomial::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("polynomial JSON must be {\"coeffs\": [[exp, \"num/den\"], ...]}");
  RationalPolynomial p;
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("polynomial coefficient entries must be [exponent, string]");
    unsigned e = entry[0].get<unsigned>();
    BigRational c = rational_from_str(entry[1].get<std::string>());
    if (p.c_.count(e)) throw std::invalid_argument("duplicate exponent in polynomial JSON");
    p.set(e, c);
  }
  return p;
}

}  // namespace kron
