#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "kron/partitions.hpp"
#include "kron/quiver.hpp"
#include "kron/trees.hpp"

using kron::BigInteger;
using kron::BigRational;
using kron::LocalizationTree;
using kron::PartitionPair;
using kron::SupportQuiver;
using kron::TreeEdge;

namespace {

SupportQuiver support_of(const std::string& pair) {
  return SupportQuiver::from_pair(PartitionPair::parse(pair));
}

using EdgeSet = std::vector<TreeEdge>;  // sorted inside LocalizationTree

// Naive stability oracle: walk every nonempty proper source subset and
// cross-multiply the slope comparison with plain integers.
bool stable_oracle(const LocalizationTree& t) {
  const auto& srcs = t.support().sources();
  const auto& snks = t.support().sinks();
  const int asz = static_cast<int>(srcs.size());
  long theta_full = 0, kappa_full = 0;
  for (const auto& v : srcs) theta_full += v.level;
  kappa_full = theta_full;
  for (const auto& v : snks) kappa_full += v.level;

  for (int mask = 1; mask + 1 < (1 << asz); ++mask) {
    long theta = 0;
    std::set<int> nbr;
    for (int i = 0; i < asz; ++i) {
      if (!(mask >> i & 1)) continue;
      theta += srcs[static_cast<std::size_t>(i)].level;
      for (int j : t.sink_neighbors(i)) nbr.insert(j);
    }
    long kappa = theta;
    for (int j : nbr) kappa += snks[static_cast<std::size_t>(j)].level;
    // needs theta / kappa < theta_full / kappa_full strictly
    if (BigInteger(theta) * kappa_full >= BigInteger(theta_full) * kappa) return false;
  }
  return true;
}

BigInteger weight_oracle(const LocalizationTree& t) {
  BigInteger w = 1;
  for (const auto& e : t.edges()) {
    w *= t.support().sources()[static_cast<std::size_t>(e.source)].level;
    w *= t.support().sinks()[static_cast<std::size_t>(e.sink)].level;
  }
  return w;
}

struct Census {
  std::vector<EdgeSet> all;
  std::vector<EdgeSet> stable;             // per the in-test oracle
  BigInteger weight_all = 0, weight_stable = 0;  // per the in-test oracle
};

Census collect(const SupportQuiver& q) {
  Census c;
  kron::for_each_spanning_tree(q, [&](const LocalizationTree& t) {
    c.all.push_back(t.edges());
    c.weight_all += weight_oracle(t);
    if (stable_oracle(t)) {
      c.stable.push_back(t.edges());
      c.weight_stable += weight_oracle(t);
    }
    return true;
  });
  return c;
}

const std::vector<std::string> kSupports = {
    "1*1 | 1*1",           "1*2 | 1*3",       "2*1 | 1*3",          "3*1 | 1*2+2*1",
    "1*1+2*1 | 1*2+3*1",   "1*3 | 1*4",       "1*2+2*1 | 1*5",      "1*1+2*1 | 1*4",
};

}  // namespace

TEST_CASE("tree construction, text, json round-trip, validation") {
  SupportQuiver q = support_of("1*2 | 1*3");
  LocalizationTree t = LocalizationTree::make(
      q, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_1_2"}, {"i_1_2", "j_1_2"}, {"i_1_2", "j_1_3"}});
  CHECK(t.text() == "i_1_1 -> j_1_1 j_1_2\ni_1_2 -> j_1_2 j_1_3\n");
  CHECK(t.sink_neighbors(0) == std::vector<int>{0, 1});
  CHECK(t.sink_neighbors(1) == std::vector<int>{1, 2});
  CHECK(LocalizationTree::from_json(t.to_json()) == t);
  CHECK(t.labeled_edges().size() == 4);

  // Too few edges.
  CHECK_THROWS_AS(LocalizationTree::make(q, {{"i_1_1", "j_1_1"}}), std::invalid_argument);
  // Cycle (and therefore disconnection elsewhere).
  CHECK_THROWS_AS(LocalizationTree::make(q, {{"i_1_1", "j_1_1"},
                                             {"i_1_1", "j_1_2"},
                                             {"i_1_2", "j_1_1"},
                                             {"i_1_2", "j_1_2"}}),
                  std::invalid_argument);
  // Duplicate edge.
  CHECK_THROWS_AS(LocalizationTree::make(q, {{"i_1_1", "j_1_1"},
                                             {"i_1_1", "j_1_1"},
                                             {"i_1_2", "j_1_2"},
                                             {"i_1_2", "j_1_3"}}),
                  std::invalid_argument);
  // Unknown label.
  CHECK_THROWS_AS(LocalizationTree::make(q, {{"i_7_7", "j_1_1"},
                                             {"i_1_1", "j_1_2"},
                                             {"i_1_2", "j_1_2"},
                                             {"i_1_2", "j_1_3"}}),
                  std::invalid_argument);
}

TEST_CASE("cayley counts") {
  CHECK(kron::cayley_count(2, 3) == 12);
  CHECK(kron::cayley_count(3, 4) == 432);
  CHECK(kron::cayley_count(1, 1) == 1);
  CHECK(kron::cayley_count(5, 5) == 390625);
  CHECK(kron::cayley_count(1, 0) == 1);
  CHECK_THROWS_AS(kron::cayley_count(0, 2), std::invalid_argument);
}

TEST_CASE("census vs naive oracle: counts, stability, weights") {
  for (const auto& text : kSupports) {
    CAPTURE(text);
    SupportQuiver q = support_of(text);
    Census c = collect(q);

    // Count matches the bipartite Cayley formula and the parallel counter.
    const long ahat = static_cast<long>(q.sources().size());
    const long bhat = static_cast<long>(q.sinks().size());
    CHECK(BigInteger(static_cast<long>(c.all.size())) == kron::cayley_count(ahat, bhat));
    CHECK(kron::spanning_tree_count(q) == c.all.size());
    CHECK(kron::spanning_tree_count(q, 4) == c.all.size());

    // All edge sets distinct.
    std::set<EdgeSet> uniq(c.all.begin(), c.all.end());
    CHECK(uniq.size() == c.all.size());

    // Library stability agrees with the subset-enumeration oracle.
    std::vector<EdgeSet> lib_stable;
    kron::for_each_spanning_tree(
        q,
        [&](const LocalizationTree& t) {
          CHECK(kron::tree_weight_v(t) == weight_oracle(t));
          if (kron::is_stable(t)) lib_stable.push_back(t.edges());
          return true;
        },
        {});
    CHECK(lib_stable == c.stable);

    // stable_only streaming gives exactly the stable trees.
    std::vector<EdgeSet> streamed;
    kron::CensusOptions opt;
    opt.stable_only = true;
    kron::for_each_spanning_tree(
        q, [&](const LocalizationTree& t) { streamed.push_back(t.edges()); return true; }, opt);
    CHECK(streamed == c.stable);

    // Weight sums across worker counts.
    for (int workers : {1, 3}) {
      CHECK(kron::stable_weight_sum(q, nullptr, workers) == c.weight_stable);
      CHECK(kron::total_weight_sum(q, nullptr, workers) == c.weight_all);
    }
  }
}

TEST_CASE("pruefer generator reproduces the census") {
  for (const auto& text : kSupports) {
    CAPTURE(text);
    SupportQuiver q = support_of(text);
    std::set<EdgeSet> census;
    kron::for_each_spanning_tree(
        q, [&](const LocalizationTree& t) { census.insert(t.edges()); return true; });
    std::set<EdgeSet> pruefer;
    std::size_t visits = 0;
    kron::for_each_pruefer_tree(q, [&](const LocalizationTree& t) {
      pruefer.insert(t.edges());
      ++visits;
    });
    CHECK(visits == pruefer.size());  // decoding is injective
    CHECK(pruefer == census);
  }
  // Guarded against combinatorial explosions.
  CHECK_THROWS_AS(kron::for_each_pruefer_tree(support_of("1*5 | 1*8"),
                                              [](const LocalizationTree&) {}),
                  std::invalid_argument);
}

TEST_CASE("frozen stable censuses for the (2,3) strata") {
  const char* pairs[] = {"1*2 | 1*3", "1*2 | 1*1+2*1", "1*2 | 3*1",
                         "2*1 | 1*3", "2*1 | 1*1+2*1", "2*1 | 3*1"};
  const long sums[] = {6, 8, 9, 8, 8, 6};
  for (int i = 0; i < 6; ++i) {
    CHECK(kron::stable_weight_sum(support_of(pairs[i])) == BigInteger(sums[i]));
  }
  // The first stratum has 6 of 12 trees stable, each of weight one; the
  // stable-only census builds exactly the stable leaves.
  kron::CensusStats st;
  CHECK(kron::stable_weight_sum(support_of("1*2 | 1*3"), &st) == 6);
  CHECK(st.enumerated == 6);
  CHECK(st.stable == 6);
}

TEST_CASE("single sink side: the unique star") {
  SupportQuiver q = support_of("1*4 | 1*1");
  std::size_t seen = 0;
  kron::for_each_spanning_tree(q, [&](const LocalizationTree& t) {
    ++seen;
    CHECK(t.edges().size() == 4);
    return true;
  });
  CHECK(seen == 1);
  CHECK(kron::spanning_tree_count(q) == 1);
}

TEST_CASE("canonical codes: hand shapes") {
  // Single edge: trivial automorphism group.
  LocalizationTree edge = LocalizationTree::make(support_of("2*1 | 3*1"), {{"i_2_1", "j_3_1"}});
  CHECK(kron::automorphism_weight(edge) == 1);

  // Claw with three identical leaves: |Aut| = 3!.
  SupportQuiver claw_q = support_of("1*1 | 1*3");
  LocalizationTree claw = LocalizationTree::make(
      claw_q, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_1_2"}, {"i_1_1", "j_1_3"}});
  CHECK(kron::automorphism_weight(claw) == kron::make_rational(1, 6));

  // Path through five vertices: only the end-to-end flip survives.
  SupportQuiver p23 = support_of("1*2 | 1*3");
  LocalizationTree path = LocalizationTree::make(
      p23, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_1_2"}, {"i_1_2", "j_1_2"}, {"i_1_2", "j_1_3"}});
  CHECK(kron::automorphism_weight(path) == kron::make_rational(1, 2));

  // Same shape, different labels: same code. Different shape: different code.
  LocalizationTree path2 = LocalizationTree::make(
      p23, {{"i_1_1", "j_1_2"}, {"i_1_1", "j_1_3"}, {"i_1_2", "j_1_1"}, {"i_1_2", "j_1_3"}});
  LocalizationTree broom = LocalizationTree::make(
      p23, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_1_2"}, {"i_1_1", "j_1_3"}, {"i_1_2", "j_1_1"}});
  CHECK(kron::canonical_code(path) == kron::canonical_code(path2));
  CHECK(kron::canonical_code(path) != kron::canonical_code(broom));

  // Levels are part of the shape: the two sinks of a 3-star differ by level.
  SupportQuiver lv = support_of("1*1 | 1*1+2*1");
  LocalizationTree star_lv =
      LocalizationTree::make(lv, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_2_1"}});
  CHECK(kron::automorphism_weight(star_lv) == 1);  // leaves distinguishable
}

TEST_CASE("orbit sizes: labeled census grouped by canonical code") {
  for (const auto& text : kSupports) {
    CAPTURE(text);
    SupportQuiver q = support_of(text);
    BigInteger relabelings = 1;
    for (const auto& [l, mult] : q.source_partition().parts) {
      (void)l;
      relabelings *= kron::factorial(mult);
    }
    for (const auto& [l, mult] : q.sink_partition().parts) {
      (void)l;
      relabelings *= kron::factorial(mult);
    }
    std::map<std::string, std::pair<BigInteger, BigRational>> orbits;  // code -> (count, 1/|Aut|)
    kron::for_each_spanning_tree(q, [&](const LocalizationTree& t) {
      auto [it, fresh] = orbits.try_emplace(kron::canonical_code(t), BigInteger(0),
                                            kron::automorphism_weight(t));
      it->second.first += 1;
      if (!fresh) CHECK(it->second.second == kron::automorphism_weight(t));
      return true;
    });
    for (const auto& [code, cw] : orbits) {
      CAPTURE(code);
      CHECK(BigRational(cw.first) == BigRational(relabelings) * cw.second);
    }
  }
}

TEST_CASE("degree products dominate the multigraph census") {
  for (const auto& text : {"1*2 | 1*3", "1*1+2*1 | 1*3", "2*1 | 3*1", "1*2+2*1 | 1*4"}) {
    SupportQuiver q = support_of(text);
    BigInteger total = kron::total_weight_sum(q);
    const unsigned long edges =
        static_cast<unsigned long>(q.sources().size() + q.sinks().size() - 1);
    for (long m : {1L, 3L, 5L}) {
      CHECK(kron::pow_integer(BigInteger(m), edges) * total <=
            kron::degree_product_bound(q, m));
    }
  }
}

TEST_CASE("weight-sum cache") {
  kron::clear_weight_sum_cache();
  CHECK(kron::weight_sum_cache_size() == 0);
  SupportQuiver q = support_of("1*2 | 1*1+2*1");
  kron::CensusStats first, second;
  BigInteger v1 = kron::stable_weight_sum_cached(q, &first);
  CHECK(kron::weight_sum_cache_size() == 1);
  BigInteger v2 = kron::stable_weight_sum_cached(q, &second);
  CHECK(v1 == v2);
  CHECK(v1 == 8);
  CHECK(first.cache_hits == 0);
  CHECK(second.cache_hits == 1);
  CHECK(second.elapsed_ms == 0.0);
  kron::clear_weight_sum_cache();
  CHECK(kron::weight_sum_cache_size() == 0);
}

TEST_CASE("early stop from the visitor") {
  SupportQuiver q = support_of("1*3 | 1*4");
  int seen = 0;
  kron::for_each_spanning_tree(q, [&](const LocalizationTree&) { return ++seen < 10; });
  CHECK(seen == 10);
}
