#include "kron/euler.hpp"

#include <numeric>
#include <stdexcept>

#include "kron/quiver.hpp"

namespace kron {

namespace {

nlohmann::json stats_json(const CensusStats& s, bool include_timing) {
  nlohmann::json j;
  j["enumerated"] = s.enumerated;
  j["stable"] = s.stable;
  j["pruned"] = s.pruned;
  j["cache_hits"] = s.cache_hits;
  if (include_timing) j["elapsed_ms"] = s.elapsed_ms;
  return j;
}

ChiSummand make_summand(const PartitionPair& pair, int workers) {
  ChiSummand s;
  s.pair = pair;
  s.coefficient = mps_coefficient(pair);
  SupportQuiver support = SupportQuiver::from_pair(pair);
  s.weight_sum = stable_weight_sum_cached(support, &s.stats, workers);
  s.exponent = static_cast<unsigned>(pair.a.hat() + pair.b.hat() - 1);
  s.chi_pair = RationalPolynomial::monomial(make_rational(s.weight_sum, BigInteger(1)), s.exponent);
  s.contribution = s.chi_pair;
  s.contribution *= s.coefficient;
  return s;
}

}  // namespace

nlohmann::json ChiResult::to_json(bool include_timing) const {
  nlohmann::json j;
  j["a"] = a;
  j["b"] = b;
  j["chi"] = chi.to_json();
  j["chi_text"] = chi.str();
  j["summands"] = nlohmann::json::array();
  for (const auto& s : summands) {
    nlohmann::json js;
    js["pair"] = s.pair.to_json();
    js["pair_text"] = s.pair.text();
    js["coefficient"] = rational_str(s.coefficient);
    js["weight_sum"] = s.weight_sum.get_str();
    js["exponent"] = s.exponent;
    js["chi_pair"] = s.weight_sum.get_str() + "*m^" + std::to_string(s.exponent);
    js["contribution"] = s.contribution.to_json();
    js["stats"] = stats_json(s.stats, include_timing);
    j["summands"].push_back(std::move(js));
  }
  j["stats"] = stats_json(stats, include_timing);
  j["warnings"] = warnings;
  return j;
}

ChiResult chi_partition_pair(const PartitionPair& pair, int workers) {
  pair.a.validate();
  pair.b.validate();
  if (pair.a.total() < 1 || pair.b.total() < 1) {
    throw std::invalid_argument("partition pair must have positive totals");
  }
  ChiResult r;
  r.a = pair.a.total();
  r.b = pair.b.total();
  if (!support_slope_tie_free(SupportQuiver::from_pair(pair))) {
    r.warnings.push_back("support admits slope ties; the strict-stability census excludes "
                         "strictly semistable trees");
  }
  r.summands.push_back(make_summand(pair, workers));
  r.chi = r.summands.back().chi_pair;
  r.stats = r.summands.back().stats;
  return r;
}

ChiResult chi_kronecker(long a, long b, int workers) {
  if (a < 0 || b < 0) throw std::invalid_argument("dimension vector must be non-negative");
  if (a == 0 || b == 0) {
    // A single simple representation: the moduli space is one point.
    if ((a == 1 && b == 0) || (a == 0 && b == 1)) {
      ChiResult r;
      r.a = a;
      r.b = b;
      r.chi = RationalPolynomial::constant(make_rational(BigInteger(1), BigInteger(1)));
      return r;
    }
    throw std::invalid_argument("chi needs positive (a, b), or the simple (1,0)/(0,1)");
  }
  if (std::gcd(a, b) != 1) {
    throw std::invalid_argument("(a, b) must be coprime: otherwise strictly semistable points "
                                "break the stable count");
  }
  ChiResult r;
  r.a = a;
  r.b = b;
  if (BigInteger(a) * a + BigInteger(b) * b >= 3 * BigInteger(a) * b) {
    r.warnings.push_back("(" + std::to_string(a) + ", " + std::to_string(b) +
                         ") is not an imaginary Schur root at m = 3; evaluations are only "
                         "meaningful where a^2 + b^2 < m*a*b");
  }
  const auto pas = enumerate_partitions(a);
  const auto pbs = enumerate_partitions(b);
  r.chi = RationalPolynomial();
  for (const auto& pa : pas) {
    for (const auto& pb : pbs) {
      r.summands.push_back(make_summand(PartitionPair{pa, pb}, workers));
      r.chi = r.chi + r.summands.back().contribution;
      r.stats += r.summands.back().stats;
    }
  }
  return r;
}

BigInteger chi_census_estimate(long a, long b) {
  if (a < 0 || b < 0) throw std::invalid_argument("dimension vector must be non-negative");
  if (a == 0 || b == 0) return 1;
  BigInteger total = 0;
  for (const auto& pa : enumerate_partitions(a)) {
    for (const auto& pb : enumerate_partitions(b)) {
      total += cayley_count(pa.hat(), pb.hat());
    }
  }
  return total;
}

BigInteger labeled_stable_tree_count(long a, long k) {
  if (a < 1 || k < 1) throw std::invalid_argument("closed form needs a >= 1 and k >= 1");
  // (ka)! (ka+1)^(a-1) / (k!)^a; integral for every a, k
  BigInteger num = factorial(k * a) * pow_integer(BigInteger(k * a + 1),
                                                  static_cast<unsigned long>(a - 1));
  BigRational v = make_rational(num, pow_integer(factorial(k), static_cast<unsigned long>(a)));
  if (v.get_den() != 1) throw std::logic_error("stable tree count failed to be integral");
  return BigInteger(v.get_num());
}

BigRational t_weight_sum_closed_form(long a, long k) {
  if (a < 1 || k < 1) throw std::invalid_argument("closed form needs a >= 1 and k >= 1");
  // ((ka+1)/k!)^a / ((ka+1)^2 a!)
  BigRational v = pow_rational(make_rational(BigInteger(k * a + 1), factorial(k)),
                               static_cast<unsigned long>(a));
  v /= make_rational(BigInteger(k * a + 1) * (k * a + 1) * factorial(a), BigInteger(1));
  return v;
}

RationalPolynomial chi_trivial_closed_form(long a, long k) {
  return RationalPolynomial::monomial(
      make_rational(labeled_stable_tree_count(a, k), BigInteger(1)),
      static_cast<unsigned>((k + 1) * a));
}

}  // namespace kron
