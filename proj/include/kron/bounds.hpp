#pragma once

#include <string>
#include <vector>

#include "kron/algebra.hpp"
#include "kron/hpfloat.hpp"
#include "kron/partitions.hpp"

namespace kron {

// 2^(a+b) m^(a+b-1) sqrt(ab) b^a a^b exp(pi sqrt(2/3)(sqrt a + sqrt b)) / (a! b!),
// with every inexact step rounded up, so the result always dominates chi(a,b)(m).
HpFloat chi_upper_bound(long a, long b, long m);

// Census-size bound for one partition pair at integer m: the level-1-only
// pair gets m^(a+b-1) a^(b-1) b^(a-1); in general
// m^(ahat+bhat-1) b^ahat a^bhat prod_l l^(a_l+b_l).
BigInteger chi_partition_upper_bound_exact(const PartitionPair& pair, long m);
HpFloat chi_partition_upper_bound(const PartitionPair& pair, long m);

struct AsymptoticValues {
  HpFloat f;       // conjectural growth-rate comparison curve
  HpFloat g;       // exponential-rate upper curve
  HpFloat h;       // g / f
  HpFloat i_triv;  // rate of the closed-form stratum; NaN unless k is integral
};

// Endpoints of the k-interval where (1, k) stays an imaginary root:
// the solutions of k^2 - mk + 1 = 0, nudged into the interval.
HpFloat interval_m1(long m);
HpFloat interval_m2(long m);

// Evaluates the comparison curves at slope ratio k = b/a (m >= 3). The
// rational k must satisfy k^2 - mk + 1 <= 0 (checked exactly).
AsymptoticValues asymptotic_values(long m, const BigRational& k);

// Minimum of h over a uniform grid of [m1, m2] with the stated point count.
HpFloat min_h_on_grid(long m, int points);

struct BoundReport {
  long a = 0, b = 0, m = 0;
  BigRational chi_value;  // exact chi(a,b)(m)
  HpFloat upper_bound;
  BigRational k;  // b/a
  HpFloat ratio;  // chi / upper_bound
  HpFloat f, g, h, i_triv;
  bool schur_root = false;
  long dimension = 0;
};

// One row per coprime imaginary (a, b) with a <= a_max (and b below the
// interval cap), each with its exact chi value at m.
std::vector<BoundReport> bound_table(long a_max, long m, int workers = 1);

std::string bound_table_csv(const std::vector<BoundReport>& rows);

}  // namespace kron
