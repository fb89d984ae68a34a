#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kron/algebra.hpp"
#include "kron/partitions.hpp"

namespace kron {

struct SupportVertex {
  std::string label;
  long level;
  bool operator==(const SupportVertex&) const = default;
};

// Bipartite level-weighted support quiver. Every source i carries a level
// l(i), every sink j a level l(j); the ambient quiver has m*l(i)*l(j)
// parallel arrows i -> j, with m kept symbolic.
class SupportQuiver {
 public:
  SupportQuiver() = default;
  SupportQuiver(std::vector<SupportVertex> sources, std::vector<SupportVertex> sinks);

  // Labels are i_<level>_<index> / j_<level>_<index>, levels ascending.
  static SupportQuiver from_pair(const PartitionPair& pair);

  const std::vector<SupportVertex>& sources() const { return sources_; }
  const std::vector<SupportVertex>& sinks() const { return sinks_; }
  long a_total() const;  // sum of source levels
  long b_total() const;  // sum of sink levels
  WeightedPartition source_partition() const;
  WeightedPartition sink_partition() const;

  int source_index(const std::string& label) const;  // -1 when absent
  int sink_index(const std::string& label) const;

  nlohmann::json to_json() const;  // {"sources":[{"label":...,"level":...}],"sinks":[...]}
  static SupportQuiver from_json(const nlohmann::json& j);

  bool operator==(const SupportQuiver&) const = default;

 private:
  std::vector<SupportVertex> sources_, sinks_;
};

// Dimension vectors are finite maps label -> non-negative multiplicity.
using DimVector = std::map<std::string, long>;

// (sum over sources of l(i) d_i) / (sum over all vertices of l(q) d_q).
// The zero dimension vector (and negative entries) are rejected.
BigRational slope(const SupportQuiver& q, const DimVector& d);

// <e,d> - <d,e> for the Euler form of the quiver with m l(i) l(j) arrows,
// which collapses to m (S_i(d) S_j(e) - S_i(e) S_j(d)) with S_i/S_j the
// level-weighted source/sink sums. Orientation: king_theta(d, e) > 0 iff
// slope(e) < slope(d).
BigInteger king_theta(const SupportQuiver& q, const DimVector& d, const DimVector& e, long m);

// <d,e> summed literally over vertices and arrow multiplicities
// (independent cross-check path for king_theta).
BigInteger support_euler_form(const SupportQuiver& q, const DimVector& d, const DimVector& e,
                              long m);

// Euler form of the two-vertex quiver with m arrows: da ea + db eb - m da eb.
BigInteger euler_form(long da, long db, long ea, long eb, long m);

bool is_imaginary_schur_root(long a, long b, long m);  // a^2 + b^2 < m a b; m >= 3
long moduli_dimension(long a, long b, long m);         // 1 - a^2 - b^2 + m a b

struct Dualities {
  std::pair<long, long> transpose;   // (b, a)
  std::pair<long, long> reflection;  // (a, m a - b)
};
Dualities dualities(long a, long b, long m);  // requires 0 <= m a - b

bool is_theta_coprime(long a, long b);  // gcd(a, b) == 1

// All-ones dimension vector on q: true iff no proper nonzero sub-dimension
// vector matches the total slope (subset-sum scan over the levels).
bool support_slope_tie_free(const SupportQuiver& q);

}  // namespace kron
