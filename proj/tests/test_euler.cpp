#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "kron/euler.hpp"
#include "kron/partitions.hpp"
#include "kron/quiver.hpp"
#include "kron/trees.hpp"

using kron::BigInteger;
using kron::BigRational;
using kron::ChiResult;
using kron::PartitionPair;
using kron::RationalPolynomial;

namespace {

// C(m, b) as a polynomial in m: m(m-1)...(m-b+1)/b!.
RationalPolynomial binomial_poly(long b) {
  RationalPolynomial p = RationalPolynomial::constant(kron::make_rational(1, 1));
  for (long i = 0; i < b; ++i) {
    RationalPolynomial lin = RationalPolynomial::monomial(kron::make_rational(1, 1), 1) -
                             RationalPolynomial::constant(BigRational(i));
    p = p * lin;
  }
  return p * kron::make_rational(BigInteger(1), kron::factorial(b));
}

}  // namespace

TEST_CASE("chi(2,3): polynomial, frozen values, summand table") {
  ChiResult r = kron::chi_kronecker(2, 3);
  CHECK(r.chi.str() == "1/2*m^4 - 4/3*m^3 + m^2 - 1/6*m");

  const long frozen[] = {0, 1, 13, 58, 170, 395, 791, 1428, 2388, 3765};
  for (long m = 1; m <= 10; ++m) {
    CHECK(r.chi.eval(m) == BigRational(frozen[m - 1]));
  }

  REQUIRE(r.summands.size() == 6);
  const char* coeffs[] = {"1/12", "-1/8", "1/18", "-1/24", "1/16", "-1/36"};
  const long weights[] = {6, 8, 9, 8, 8, 6};
  const unsigned exps[] = {4, 3, 2, 3, 2, 1};
  for (int i = 0; i < 6; ++i) {
    const auto& s = r.summands[static_cast<std::size_t>(i)];
    CHECK(kron::rational_str(s.coefficient) == coeffs[i]);
    CHECK(s.weight_sum == BigInteger(weights[i]));
    CHECK(s.exponent == exps[i]);
    CHECK(s.chi_pair.coeff(s.exponent) == BigRational(s.weight_sum));
    CHECK(s.contribution == s.chi_pair * s.coefficient);
  }
  CHECK(r.warnings.empty());

  // The contributions add up to chi.
  RationalPolynomial sum;
  for (const auto& s : r.summands) sum += s.contribution;
  CHECK(sum == r.chi);
}

TEST_CASE("chi(1,b) is the binomial coefficient polynomial") {
  for (long b = 1; b <= 5; ++b) {
    ChiResult r = kron::chi_kronecker(1, b);
    CHECK(r.chi == binomial_poly(b));
    for (long m = 1; m <= 9; ++m) CHECK(r.chi.eval(m) == BigRational(kron::binomial(m, b)));
  }
  // Grassmannian-free sanity: chi(1,1) at m counts the points of P^(m-1).
  ChiResult line = kron::chi_kronecker(1, 1);
  for (long m = 1; m <= 9; ++m) CHECK(line.chi.eval(m) == BigRational(m));
}

TEST_CASE("boundary and error cases") {
  CHECK(kron::chi_kronecker(1, 0).chi == RationalPolynomial::constant(kron::make_rational(1, 1)));
  CHECK(kron::chi_kronecker(0, 1).chi == RationalPolynomial::constant(kron::make_rational(1, 1)));
  CHECK_THROWS_AS(kron::chi_kronecker(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(kron::chi_kronecker(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(kron::chi_kronecker(-1, 2), std::invalid_argument);
}

TEST_CASE("transpose symmetry as full polynomials") {
  CHECK(kron::chi_kronecker(2, 3).chi == kron::chi_kronecker(3, 2).chi);
  CHECK(kron::chi_kronecker(1, 4).chi == kron::chi_kronecker(4, 1).chi);
  CHECK(kron::chi_kronecker(3, 4).chi == kron::chi_kronecker(4, 3).chi);
}

TEST_CASE("summands are listed in enumeration order of the pairs") {
  ChiResult r = kron::chi_kronecker(2, 3);
  std::vector<std::string> order;
  for (const auto& s : r.summands) order.push_back(s.pair.text());
  CHECK(order == std::vector<std::string>{"1*2 | 1*3", "1*2 | 1*1+2*1", "1*2 | 3*1",
                                          "2*1 | 1*3", "2*1 | 1*1+2*1", "2*1 | 3*1"});
}

TEST_CASE("census size estimate") {
  // Sum of cayley(ahat, bhat) over the six (2,3) pairs: 12+4+1+1+1+1.
  CHECK(kron::chi_census_estimate(2, 3) == 20);
  CHECK(kron::chi_census_estimate(1, 1) == 1);
  CHECK(kron::chi_census_estimate(1, 0) == 1);
}

TEST_CASE("single-pair report carries warnings for slope ties") {
  ChiResult tied = kron::chi_partition_pair(PartitionPair::parse("1*2 | 1*2"));
  CHECK(!tied.warnings.empty());
  ChiResult free_pair = kron::chi_partition_pair(PartitionPair::parse("1*2 | 1*3"));
  CHECK(free_pair.warnings.empty());
}

TEST_CASE("chi flags non-Schur dimension vectors") {
  ChiResult r = kron::chi_kronecker(1, 3);
  REQUIRE(!r.warnings.empty());
  CHECK(r.warnings.front().find("Schur") != std::string::npos);
}

TEST_CASE("stratum closed forms against the censuses") {
  // labeled counts
  CHECK(kron::labeled_stable_tree_count(1, 1) == 1);
  CHECK(kron::labeled_stable_tree_count(2, 1) == 6);
  CHECK(kron::labeled_stable_tree_count(3, 1) == 96);
  CHECK(kron::labeled_stable_tree_count(4, 1) == BigInteger(24) * 125);  // a! (a+1)^(a-1)
  CHECK(kron::labeled_stable_tree_count(2, 2) == 30);

  // orbit weights T(a, ka+1) = count / (a! (ka+1)!)
  CHECK(kron::t_weight_sum_closed_form(2, 1) == kron::make_rational(1, 2));
  CHECK(kron::t_weight_sum_closed_form(2, 2) == kron::make_rational(1, 8));
  CHECK(kron::t_weight_sum_closed_form(1, 3) == kron::make_rational(1, 24));

  // stratum polynomial equals the census stratum for small (a,k)
  for (long a = 1; a <= 3; ++a) {
    for (long k = 1; k <= 2; ++k) {
      if (a == 3 && k == 2) continue;  // keep the census tiny
      PartitionPair pr{kron::WeightedPartition::trivial(a),
                       kron::WeightedPartition::trivial(k * a + 1)};
      ChiResult stratum = kron::chi_partition_pair(pr);
      CHECK(stratum.summands.front().chi_pair == kron::chi_trivial_closed_form(a, k));
    }
  }

  // census count equals the closed-form count
  for (long a = 1; a <= 3; ++a) {
    kron::SupportQuiver q = kron::SupportQuiver::from_pair(
        PartitionPair{kron::WeightedPartition::trivial(a), kron::WeightedPartition::trivial(a + 1)});
    kron::CensusStats st;
    kron::stable_weight_sum(q, &st);
    CHECK(BigInteger(static_cast<long>(st.stable)) == kron::labeled_stable_tree_count(a, 1));
  }
}

TEST_CASE("chi values stay integral on a grid") {
  for (long a = 1; a <= 3; ++a) {
    for (long b = a; b <= 4; ++b) {
      if (std::gcd(a, b) != 1) continue;
      ChiResult r = kron::chi_kronecker(a, b);
      for (long m = 1; m <= 10; ++m) {
        CHECK(r.chi.eval(m).get_den() == 1);
      }
    }
  }
}

TEST_CASE("json report shape") {
  nlohmann::json j = kron::chi_kronecker(2, 3).to_json();
  CHECK(j["a"] == 2);
  CHECK(j["b"] == 3);
  CHECK(j["chi_text"] == "1/2*m^4 - 4/3*m^3 + m^2 - 1/6*m");
  CHECK(j["summands"].size() == 6);
  CHECK(j["summands"][0]["pair_text"] == "1*2 | 1*3");
  CHECK(j["summands"][0]["coefficient"] == "1/12");
  CHECK(j.contains("stats"));
  CHECK(!j.contains("elapsed_ms"));  // timing never lands in stdout payloads
  RationalPolynomial back = RationalPolynomial::from_json(j["chi"]);
  CHECK(back == kron::chi_kronecker(2, 3).chi);
}
