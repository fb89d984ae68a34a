#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kron/algebra.hpp"
#include "kron/partitions.hpp"
#include "kron/trees.hpp"

namespace kron {

// One partition-pair stratum of the degeneration formula.
struct ChiSummand {
  PartitionPair pair;
  BigRational coefficient;          // sign and symmetry factor of the stratum
  BigInteger weight_sum;            // census total over stable trees
  unsigned exponent = 0;            // ahat + bhat - 1
  RationalPolynomial chi_pair;      // weight_sum * m^exponent
  RationalPolynomial contribution;  // coefficient * chi_pair
  CensusStats stats;
};

struct ChiResult {
  long a = 0;
  long b = 0;
  RationalPolynomial chi;  // exact polynomial in the arrow count m
  std::vector<ChiSummand> summands;
  CensusStats stats;  // aggregated over all summands
  std::vector<std::string> warnings;

  nlohmann::json to_json(bool include_timing = false) const;
};

// chi of a single stratum: the pair's census sum times m^(ahat+bhat-1),
// together with the stratum coefficient it would carry in a full sum.
ChiResult chi_partition_pair(const PartitionPair& pair, int workers = 1);

// Exact chi(a, b) as a polynomial in m, for coprime positive (a, b); the
// boundary cases (1, 0) and (0, 1) are a single point. Summands are listed
// by ascending (a-partition, b-partition) part lists.
ChiResult chi_kronecker(long a, long b, int workers = 1);

// Total number of tree candidates the censuses behind chi(a, b) range over
// (sum of the bipartite Cayley counts); cheap, for budget checks.
BigInteger chi_census_estimate(long a, long b);

// Closed forms for the stratum of a level-1 sources against ka+1 level-1
// sinks: every stable tree has all source degrees k+1.
BigInteger labeled_stable_tree_count(long a, long k);
BigRational t_weight_sum_closed_form(long a, long k);    // count / (a! (ka+1)!)
RationalPolynomial chi_trivial_closed_form(long a, long k);

}  // namespace kron
