#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kron/algebra.hpp"
#include "kron/quiver.hpp"

namespace kron {

struct TreeEdge {
  int source;  // index into support().sources()
  int sink;    // index into support().sinks()
  bool operator==(const TreeEdge&) const = default;
  bool operator<(const TreeEdge& o) const {
    return source != o.source ? source < o.source : sink < o.sink;
  }
};

// A spanning tree of the complete bipartite graph on the support vertices,
// i.e. the combinatorial datum of a torus fixed point.
class LocalizationTree {
 public:
  LocalizationTree(std::shared_ptr<const SupportQuiver> support, std::vector<TreeEdge> edges);

  static LocalizationTree make(const SupportQuiver& support,
                               const std::vector<std::pair<std::string, std::string>>& edges);

  const SupportQuiver& support() const { return *support_; }
  const std::shared_ptr<const SupportQuiver>& support_ptr() const { return support_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }  // sorted
  std::vector<std::pair<std::string, std::string>> labeled_edges() const;
  std::vector<int> sink_neighbors(int source) const;

  std::string text() const;  // one "i_l_k -> j_.. j_.." line per source
  nlohmann::json to_json() const;
  static LocalizationTree from_json(const nlohmann::json& j);

  bool operator==(const LocalizationTree& o) const;

 private:
  std::shared_ptr<const SupportQuiver> support_;
  std::vector<TreeEdge> edges_;
};

// Strict slope test over all nonempty proper subsets T of the sources:
// slope(T union N(T)) < slope(everything).
bool is_stable(const LocalizationTree& t);

// Product over edges (i,j) of l(i) l(j).
BigInteger tree_weight_v(const LocalizationTree& t);

// Canonical encoding of the level-colored tree shape; two trees get equal
// codes exactly when an orientation- and level-preserving isomorphism maps
// one onto the other.
std::string canonical_code(const LocalizationTree& t);

// 1/|Aut| for the automorphisms counted by canonical_code.
BigRational automorphism_weight(const LocalizationTree& t);

// ahat^(bhat-1) * bhat^(ahat-1): spanning trees of the complete bipartite
// graph on ahat sources and bhat sinks.
BigInteger cayley_count(long ahat, long bhat);

// Product of vertex degrees in the ambient quiver at integer m (source
// degree m l(i) b, sink degree m l(j) a), leaving out one sink of maximal
// level; upper bound for the degree-weighted tree sum.
BigInteger degree_product_bound(const SupportQuiver& q, long m);

struct CensusStats {
  std::uint64_t enumerated = 0;  // spanning trees fully built
  std::uint64_t stable = 0;      // trees that passed the stability filter
  std::uint64_t pruned = 0;      // partial assignments cut by the slope test
  std::uint64_t cache_hits = 0;
  double elapsed_ms = 0.0;

  CensusStats& operator+=(const CensusStats& o);
};

struct CensusOptions {
  bool stable_only = false;
};

// Stream every spanning tree (or every stable one) in a fixed documented
// order: sources take their sink sets in increasing size, ties broken by
// the numeric value of the sink-index bitmask. The visited tree object is
// reused between calls; return false from the callback to stop early.
void for_each_spanning_tree(const SupportQuiver& q,
                            const std::function<bool(const LocalizationTree&)>& visit,
                            const CensusOptions& opt = {});

std::uint64_t spanning_tree_count(const SupportQuiver& q, int workers = 1);

// Exact sum of tree_weight_v over the stable spanning trees.
BigInteger stable_weight_sum(const SupportQuiver& q, CensusStats* stats = nullptr,
                             int workers = 1);

// Exact sum of tree_weight_v over all spanning trees, stable or not.
BigInteger total_weight_sum(const SupportQuiver& q, CensusStats* stats = nullptr,
                            int workers = 1);

// Same value, memoized on the (source levels, sink levels) multiset pair.
BigInteger stable_weight_sum_cached(const SupportQuiver& q, CensusStats* stats = nullptr,
                                    int workers = 1);
void clear_weight_sum_cache();
std::size_t weight_sum_cache_size();

// Independent generator used to cross-check the census: decodes every pair
// of Pruefer-style sequences (sinks^(ahat-1) x sources^(bhat-1)) into a
// spanning tree.
void for_each_pruefer_tree(const SupportQuiver& q,
                           const std::function<void(const LocalizationTree&)>& visit);

}  // namespace kron
