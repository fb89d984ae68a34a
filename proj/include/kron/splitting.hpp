#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "kron/partitions.hpp"
#include "kron/trees.hpp"

namespace kron {

// One refinement move: a level-k source splits into a level-1 source taking
// the sinks J1 and a level-(k-1) source taking J2, with exactly one shared
// sink appearing in both halves.
struct SplitMove {
  std::string source;
  std::string shared_sink;
  std::vector<std::string> j1;  // sinks of the new level-1 source
  std::vector<std::string> j2;  // sinks of the new level-(k-1) source
};

nlohmann::json split_move_to_json(const SplitMove& mv);

// Partition surgery behind a split: a_k -> a_k - 1, a_1 -> a_1 + 1 and
// a_{k-1} -> a_{k-1} + 1 (for k = 2 both increments land on a_1).
WeightedPartition refine_partition_at(const WeightedPartition& p, long k);

// All stable splits of the given level-k source, k >= 2. Candidates are the
// ordered decompositions N(source) = J1 u J2 with a single shared sink that
// satisfy the level-sum inequalities (k-1) L <= k L(J2) and L <= k L(J1)
// (L the level sum of N(source)); of those, the ones whose refined tree is
// stable are returned. Throws logic_error if not even the inequalities can
// be met, which a stable input never triggers.
std::vector<SplitMove> find_valid_splits(const LocalizationTree& t, const std::string& source);

// Applies one move, relabeling the refined support; rejects malformed moves
// and unstable results.
LocalizationTree apply_split(const LocalizationTree& t, const SplitMove& mv);

struct RefineOutcome {
  std::vector<LocalizationTree> terminals;  // distinct all-level-1 trees
  std::vector<std::string> codes;           // their canonical codes
  std::vector<long> chain_counts;           // split chains reaching each
  long total_chains = 0;
};

// Runs split moves to exhaustion until every source has level 1. States are
// identified by canonical code, so chain counts are over canonical states.
RefineOutcome refine_to_trivial(const LocalizationTree& t);

struct SplitChain {
  std::vector<SplitMove> moves;
  std::vector<LocalizationTree> states;  // front() = input, back() = terminal
};

// Explicit chains without dedup (for demos); stops after max_chains.
std::vector<SplitChain> refine_chains(const LocalizationTree& t, std::size_t max_chains = 1000);

}  // namespace kron
