#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "kron/partitions.hpp"
#include "kron/quiver.hpp"
#include "kron/splitting.hpp"
#include "kron/trees.hpp"

using kron::LocalizationTree;
using kron::PartitionPair;
using kron::SplitMove;
using kron::SupportQuiver;
using kron::WeightedPartition;

namespace {

SupportQuiver support_of(const std::string& pair) {
  return SupportQuiver::from_pair(PartitionPair::parse(pair));
}

using MoveKey = std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>;

MoveKey key_of(const SplitMove& mv) {
  auto j1 = mv.j1, j2 = mv.j2;
  std::sort(j1.begin(), j1.end());
  std::sort(j2.begin(), j2.end());
  return {mv.shared_sink, j1, j2};
}

// Brute-force re-derivation of the candidate moves: ordered decompositions
// (J1, J2) of the neighborhood overlapping in exactly one shared sink, kept
// when (k-1)L <= k L2 and L <= k L1 for the sink-level sums.
std::vector<SplitMove> candidate_oracle(const LocalizationTree& t, const std::string& source) {
  const SupportQuiver& q = t.support();
  int si = q.source_index(source);
  REQUIRE(si >= 0);
  const long k = q.sources()[static_cast<std::size_t>(si)].level;
  std::vector<int> nbrs = t.sink_neighbors(si);
  auto lev = [&](int j) { return q.sinks()[static_cast<std::size_t>(j)].level; };
  long L = 0;
  for (int j : nbrs) L += lev(j);

  std::vector<SplitMove> out;
  for (std::size_t s = 0; s < nbrs.size(); ++s) {
    std::vector<int> rest;
    for (std::size_t r = 0; r < nbrs.size(); ++r)
      if (r != s) rest.push_back(nbrs[r]);
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << rest.size()); ++mask) {
      std::vector<int> j1{nbrs[s]}, j2{nbrs[s]};
      for (std::size_t r = 0; r < rest.size(); ++r)
        (mask >> r & 1 ? j1 : j2).push_back(rest[r]);
      long l1 = 0, l2 = 0;
      for (int j : j1) l1 += lev(j);
      for (int j : j2) l2 += lev(j);
      if ((k - 1) * L > k * l2 || L > k * l1) continue;
      SplitMove mv;
      mv.source = source;
      mv.shared_sink = q.sinks()[static_cast<std::size_t>(nbrs[s])].label;
      std::sort(j1.begin(), j1.end());
      std::sort(j2.begin(), j2.end());
      for (int j : j1) mv.j1.push_back(q.sinks()[static_cast<std::size_t>(j)].label);
      for (int j : j2) mv.j2.push_back(q.sinks()[static_cast<std::size_t>(j)].label);
      out.push_back(std::move(mv));
    }
  }
  return out;
}

LocalizationTree demo_tree1() {
  return LocalizationTree::make(support_of("1*2+2*1 | 1*5"),
                                {{"i_1_1", "j_1_1"},
                                 {"i_1_1", "j_1_2"},
                                 {"i_1_2", "j_1_2"},
                                 {"i_1_2", "j_1_3"},
                                 {"i_2_1", "j_1_3"},
                                 {"i_2_1", "j_1_4"},
                                 {"i_2_1", "j_1_5"}});
}

LocalizationTree demo_tree2() {
  return LocalizationTree::make(support_of("1*2+2*1 | 1*5"),
                                {{"i_1_1", "j_1_1"},
                                 {"i_1_1", "j_1_2"},
                                 {"i_2_1", "j_1_2"},
                                 {"i_2_1", "j_1_3"},
                                 {"i_2_1", "j_1_4"},
                                 {"i_1_2", "j_1_4"},
                                 {"i_1_2", "j_1_5"}});
}

// Alternating path with four level-1 sources and five level-1 sinks.
LocalizationTree alternating_path() {
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 1; i <= 4; ++i) {
    edges.emplace_back("i_1_" + std::to_string(i), "j_1_" + std::to_string(i));
    edges.emplace_back("i_1_" + std::to_string(i), "j_1_" + std::to_string(i + 1));
  }
  return LocalizationTree::make(support_of("1*4 | 1*5"), edges);
}

}  // namespace

TEST_CASE("refining one part of a partition") {
  CHECK(kron::refine_partition_at(WeightedPartition::parse("2*2"), 2).text() == "1*2+2*1");
  CHECK(kron::refine_partition_at(WeightedPartition::parse("3*1"), 3).text() == "1*1+2*1");
  CHECK(kron::refine_partition_at(WeightedPartition::parse("1*2+2*1"), 2).text() == "1*4");
  CHECK(kron::refine_partition_at(WeightedPartition::parse("5*1"), 5).text() == "1*1+4*1");
  CHECK_THROWS_AS(kron::refine_partition_at(WeightedPartition::parse("1*2"), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(kron::refine_partition_at(WeightedPartition::parse("2*1"), 1),
                  std::invalid_argument);
}

TEST_CASE("single-edge tree: the unique move and its terminal") {
  LocalizationTree edge = LocalizationTree::make(support_of("2*1 | 3*1"), {{"i_2_1", "j_3_1"}});
  auto moves = kron::find_valid_splits(edge, "i_2_1");
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].shared_sink == "j_3_1");
  CHECK(moves[0].j1 == std::vector<std::string>{"j_3_1"});
  CHECK(moves[0].j2 == std::vector<std::string>{"j_3_1"});

  LocalizationTree star = kron::apply_split(edge, moves[0]);
  CHECK(star.support().source_partition().text() == "1*2");
  CHECK(star.support().sink_partition().text() == "3*1");
  CHECK(kron::is_stable(star));

  kron::RefineOutcome out = kron::refine_to_trivial(edge);
  CHECK(out.terminals.size() == 1);
  CHECK(out.total_chains == 1);
  CHECK(out.codes.front() == kron::canonical_code(star));
}

TEST_CASE("split moves match the brute-force candidate filter") {
  LocalizationTree t1 = demo_tree1();
  auto lib = kron::find_valid_splits(t1, "i_2_1");
  auto cands = candidate_oracle(t1, "i_2_1");
  CHECK(cands.size() == 6);  // 12 ordered decompositions, 6 meet the inequalities
  CHECK(lib.size() == 6);    // and here stability rejects none of them

  std::set<MoveKey> lib_keys, cand_keys;
  for (const auto& mv : lib) lib_keys.insert(key_of(mv));
  for (const auto& mv : cands) cand_keys.insert(key_of(mv));
  CHECK(lib_keys == cand_keys);

  // Every returned move must apply cleanly and stay stable.
  for (const auto& mv : lib) {
    LocalizationTree next = kron::apply_split(t1, mv);
    CHECK(kron::is_stable(next));
    CHECK(next.support().source_partition().text() == "1*4");
  }
}

TEST_CASE("stability filters the inequality-passing candidates") {
  // One level-1 and one level-2 source against two level-2 sinks.
  LocalizationTree t = LocalizationTree::make(
      support_of("1*1+2*1 | 2*2"),
      {{"i_1_1", "j_2_1"}, {"i_2_1", "j_2_1"}, {"i_2_1", "j_2_2"}});
  REQUIRE(kron::is_stable(t));

  auto cands = candidate_oracle(t, "i_2_1");
  CHECK(cands.size() == 4);  // all four ordered decompositions pass the inequalities

  auto lib = kron::find_valid_splits(t, "i_2_1");
  REQUIRE(lib.size() == 2);  // but only the two sharing the far sink stay stable
  for (const auto& mv : lib) CHECK(mv.shared_sink == "j_2_2");

  // The rejected candidates throw the stability error when forced.
  int unstable = 0;
  for (const auto& mv : cands) {
    try {
      kron::apply_split(t, mv);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("unstable") != std::string::npos);
      ++unstable;
    }
  }
  CHECK(unstable == 2);
}

TEST_CASE("apply_split validates its move") {
  LocalizationTree t1 = demo_tree1();
  SplitMove good = kron::find_valid_splits(t1, "i_2_1").front();

  SplitMove bad = good;
  bad.source = "i_1_1";  // level-1 sources cannot split
  CHECK_THROWS_AS(kron::apply_split(t1, bad), std::invalid_argument);

  bad = good;
  bad.source = "i_9_9";
  CHECK_THROWS_AS(kron::apply_split(t1, bad), std::invalid_argument);

  bad = good;
  bad.j1 = {"j_1_1", good.shared_sink};  // j_1_1 is not in the neighborhood
  CHECK_THROWS_AS(kron::apply_split(t1, bad), std::invalid_argument);

  bad = good;
  bad.j2 = bad.j1;  // halves overlap in more than the shared sink
  CHECK_THROWS_AS(kron::apply_split(t1, bad), std::invalid_argument);

  bad = good;
  bad.j1 = {good.shared_sink};  // leaves part of the neighborhood uncovered
  CHECK_THROWS_AS(kron::apply_split(t1, bad), std::invalid_argument);
}

TEST_CASE("the two demonstration trees reach the same pair of terminals") {
  kron::RefineOutcome o1 = kron::refine_to_trivial(demo_tree1());
  kron::RefineOutcome o2 = kron::refine_to_trivial(demo_tree2());

  CHECK(o1.terminals.size() == 2);
  CHECK(o2.terminals.size() == 2);
  CHECK(o1.total_chains == 6);
  CHECK(o2.total_chains == 6);

  std::multiset<long> c1(o1.chain_counts.begin(), o1.chain_counts.end());
  std::multiset<long> c2(o2.chain_counts.begin(), o2.chain_counts.end());
  CHECK(c1 == std::multiset<long>{2, 4});
  CHECK(c2 == std::multiset<long>{2, 4});

  std::set<std::string> s1(o1.codes.begin(), o1.codes.end());
  std::set<std::string> s2(o2.codes.begin(), o2.codes.end());
  CHECK(s1 == s2);

  // One terminal is the alternating path.
  CHECK(s1.count(kron::canonical_code(alternating_path())) == 1);

  // Terminals are genuinely trivial and stable.
  for (const auto& term : o1.terminals) {
    CHECK(term.support().source_partition().is_trivial());
    CHECK(kron::is_stable(term));
  }
}

TEST_CASE("explicit chains agree with the counted total") {
  LocalizationTree t1 = demo_tree1();
  auto chains = kron::refine_chains(t1);
  CHECK(chains.size() == 6);
  for (const auto& ch : chains) {
    REQUIRE(!ch.states.empty());
    CHECK(ch.states.front() == t1);
    CHECK(ch.states.size() == ch.moves.size() + 1);
    CHECK(ch.states.back().support().source_partition().is_trivial());
    // Replaying the moves reproduces the recorded states.
    for (std::size_t i = 0; i < ch.moves.size(); ++i) {
      CHECK(kron::apply_split(ch.states[i], ch.moves[i]) == ch.states[i + 1]);
    }
  }
  CHECK(kron::refine_chains(t1, 2).size() == 2);
}

TEST_CASE("splitting rejects level-1 and unknown sources") {
  LocalizationTree t1 = demo_tree1();
  CHECK_THROWS_AS(kron::find_valid_splits(t1, "i_1_1"), std::invalid_argument);
  CHECK_THROWS_AS(kron::find_valid_splits(t1, "i_3_1"), std::invalid_argument);
}
