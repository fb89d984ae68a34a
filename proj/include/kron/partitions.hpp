#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "kron/algebra.hpp"
#include "kron/hpfloat.hpp"

namespace kron {

// A partition of a positive integer in multiplicative notation:
// part size l -> multiplicity a_l (only multiplicities >= 1 are stored).
struct WeightedPartition {
  std::map<long, long> parts;

  long total() const;   // sum of l * a_l
  long hat() const;     // number of parts, sum of a_l
  long tilde() const;   // total() - hat()
  long mult(long l) const;
  bool is_trivial() const;              // every part has size 1
  std::vector<long> part_list() const;  // ascending part sizes, e.g. {1,1,2}

  static WeightedPartition trivial(long a);

  std::string text() const;  // "1*2+2*1" = part size * multiplicity, ascending
  static WeightedPartition parse(const std::string& s);
  nlohmann::json to_json() const;  // {"parts": {"1": 2, "2": 1}}
  static WeightedPartition from_json(const nlohmann::json& j);

  void validate() const;  // throws on non-positive sizes/multiplicities

  bool operator==(const WeightedPartition&) const = default;
};

// Lexicographic order on ascending part lists; this is the enumeration order.
bool partition_less(const WeightedPartition& p, const WeightedPartition& q);

struct PartitionPair {
  WeightedPartition a, b;

  std::string text() const;  // "1*2 | 1*3"
  static PartitionPair parse(const std::string& s);
  nlohmann::json to_json() const;
  static PartitionPair from_json(const nlohmann::json& j);

  bool operator==(const PartitionPair&) const = default;
};

// All partitions of a in the documented order: {1*a} first, {a*1} last.
std::vector<WeightedPartition> enumerate_partitions(long a);

// Weight attached to a partition pair in the vertex-splitting degeneration:
//   prod over part sizes l of (-1)^((a_l+b_l)(l-1)) / (a_l! b_l! l^(2(a_l+b_l)))
BigRational mps_coefficient(const PartitionPair& pair);

// Number of compositions of a into ahat parts, C(a-1, ahat-1), plus the
// equivalent sum of multinomials over partitions with ahat parts (kept as an
// independently computed cross-check target).
BigInteger composition_count(long a, long ahat);
BigInteger composition_count_partition_sum(long a, long ahat);

// exp(pi * sqrt(2a/3)), an upper bound for the partition count, with every
// operation rounded up.
HpFloat partition_count_bound(long a);

}  // namespace kron
