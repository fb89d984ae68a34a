#include "kron/splitting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace kron {

namespace {

// Sink indices adjacent to one source, ascending.
std::vector<int> neighborhood(const LocalizationTree& t, int source) { return t.sink_neighbors(source); }

long level_sum(const SupportQuiver& q, const std::vector<int>& sinks) {
  long s = 0;
  for (int j : sinks) s += q.sinks()[static_cast<std::size_t>(j)].level;
  return s;
}

struct SplitContext {
  int source_index;
  long k;                  // level of the source being split
  std::vector<int> nbrs;   // its sinks, ascending
  long level_total;        // L
};

SplitContext split_context(const LocalizationTree& t, const std::string& source) {
  int idx = t.support().source_index(source);
  if (idx < 0) throw std::invalid_argument("unknown source label '" + source + "'");
  long k = t.support().sources()[static_cast<std::size_t>(idx)].level;
  if (k < 2) throw std::invalid_argument("source '" + source + "' already has level 1");
  SplitContext ctx;
  ctx.source_index = idx;
  ctx.k = k;
  ctx.nbrs = neighborhood(t, idx);
  ctx.level_total = level_sum(t.support(), ctx.nbrs);
  return ctx;
}

bool inequalities_hold(long k, long L, long L1, long L2) {
  return (k - 1) * L <= k * L2 && L <= k * L1;
}

// Builds the refined tree for a move whose shape has already been validated
// (shared sink in both halves, halves covering the neighborhood).
LocalizationTree build_split_tree(const LocalizationTree& t, int source_index,
                                  const std::vector<int>& j1, const std::vector<int>& j2) {
  const SupportQuiver& q = t.support();
  const long k = q.sources()[static_cast<std::size_t>(source_index)].level;

  WeightedPartition pa = refine_partition_at(q.source_partition(), k);
  SupportQuiver refined = SupportQuiver::from_pair(PartitionPair{pa, q.sink_partition()});

  // Relabel surviving sources: positions within an unchanged level stay put,
  // level-k sources after the split one shift down by one.
  long split_pos = 0;
  {
    long seen = 0;
    for (int i = 0; i <= source_index; ++i) {
      if (q.sources()[static_cast<std::size_t>(i)].level == k) ++seen;
    }
    split_pos = seen;
  }
  std::vector<std::string> new_label(q.sources().size());
  std::map<long, long> level_count;
  for (std::size_t i = 0; i < q.sources().size(); ++i) {
    long lev = q.sources()[i].level;
    long pos = ++level_count[lev];
    if (static_cast<int>(i) == source_index) continue;
    if (lev == k && pos > split_pos) --pos;
    new_label[i] = "i_" + std::to_string(lev) + "_" + std::to_string(pos);
  }
  long a1_old = level_count.count(1) ? level_count[1] : 0;
  std::string n1 = "i_1_" + std::to_string(a1_old + 1);
  std::string n2;
  if (k == 2) {
    n2 = "i_1_" + std::to_string(a1_old + 2);
  } else {
    long ak1_old = level_count.count(k - 1) ? level_count[k - 1] : 0;
    n2 = "i_" + std::to_string(k - 1) + "_" + std::to_string(ak1_old + 1);
  }
  if (refined.source_index(n1) < 0 || refined.source_index(n2) < 0) {
    throw std::logic_error("refined support misses the expected new sources");
  }

  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : t.edges()) {
    if (e.source == source_index) continue;
    edges.emplace_back(new_label[static_cast<std::size_t>(e.source)],
                       q.sinks()[static_cast<std::size_t>(e.sink)].label);
  }
  for (int j : j1) edges.emplace_back(n1, q.sinks()[static_cast<std::size_t>(j)].label);
  for (int j : j2) edges.emplace_back(n2, q.sinks()[static_cast<std::size_t>(j)].label);
  return LocalizationTree::make(refined, edges);
}

SplitMove make_move(const SupportQuiver& q, const std::string& source, int shared,
                    const std::vector<int>& j1, const std::vector<int>& j2) {
  SplitMove mv;
  mv.source = source;
  mv.shared_sink = q.sinks()[static_cast<std::size_t>(shared)].label;
  for (int j : j1) mv.j1.push_back(q.sinks()[static_cast<std::size_t>(j)].label);
  for (int j : j2) mv.j2.push_back(q.sinks()[static_cast<std::size_t>(j)].label);
  return mv;
}

}  // namespace

nlohmann::json split_move_to_json(const SplitMove& mv) {
  nlohmann::json j;
  j["source"] = mv.source;
  j["shared_sink"] = mv.shared_sink;
  j["j1"] = mv.j1;
  j["j2"] = mv.j2;
  return j;
}

WeightedPartition refine_partition_at(const WeightedPartition& p, long k) {
  p.validate();
  if (k < 2) throw std::invalid_argument("refinement needs a part of size k >= 2");
  auto it = p.parts.find(k);
  if (it == p.parts.end() || it->second < 1) {
    throw std::invalid_argument("partition has no part of size " + std::to_string(k));
  }
  WeightedPartition out = p;
  if (--out.parts[k] == 0) out.parts.erase(k);
  if (k == 2) {
    out.parts[1] += 2;
  } else {
    out.parts[1] += 1;
    out.parts[k - 1] += 1;
  }
  return out;
}

std::vector<SplitMove> find_valid_splits(const LocalizationTree& t, const std::string& source) {
  SplitContext ctx = split_context(t, source);
  if (ctx.nbrs.size() > 20) throw std::invalid_argument("neighborhood too large to split");
  const SupportQuiver& q = t.support();
  std::vector<SplitMove> out;
  bool any_candidate = false;
  for (std::size_t si = 0; si < ctx.nbrs.size(); ++si) {
    int shared = ctx.nbrs[si];
    std::vector<int> rest;
    for (std::size_t r = 0; r < ctx.nbrs.size(); ++r) {
      if (r != si) rest.push_back(ctx.nbrs[r]);
    }
    const std::uint32_t subsets = std::uint32_t(1) << rest.size();
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      std::vector<int> j1{shared}, j2{shared};
      for (std::size_t r = 0; r < rest.size(); ++r) {
        if (mask & (std::uint32_t(1) << r)) {
          j1.push_back(rest[r]);
        } else {
          j2.push_back(rest[r]);
        }
      }
      std::sort(j1.begin(), j1.end());
      std::sort(j2.begin(), j2.end());
      long l1 = level_sum(q, j1);
      long l2 = level_sum(q, j2);
      if (!inequalities_hold(ctx.k, ctx.level_total, l1, l2)) continue;
      any_candidate = true;
      LocalizationTree refined = build_split_tree(t, ctx.source_index, j1, j2);
      if (is_stable(refined)) {
        out.push_back(make_move(q, source, shared, j1, j2));
      }
    }
  }
  if (!any_candidate) {
    throw std::logic_error("no decomposition of '" + source + "' meets the level inequalities");
  }
  return out;
}

LocalizationTree apply_split(const LocalizationTree& t, const SplitMove& mv) {
  SplitContext ctx = split_context(t, mv.source);
  const SupportQuiver& q = t.support();
  auto resolve = [&](const std::vector<std::string>& labels) {
    std::vector<int> out;
    for (const auto& l : labels) {
      int j = q.sink_index(l);
      if (j < 0) throw std::invalid_argument("unknown sink label '" + l + "'");
      out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
      throw std::invalid_argument("split half repeats a sink");
    }
    return out;
  };
  int shared = q.sink_index(mv.shared_sink);
  if (shared < 0) throw std::invalid_argument("unknown sink label '" + mv.shared_sink + "'");
  std::vector<int> j1 = resolve(mv.j1);
  std::vector<int> j2 = resolve(mv.j2);
  std::vector<int> inter, uni;
  std::set_intersection(j1.begin(), j1.end(), j2.begin(), j2.end(), std::back_inserter(inter));
  std::set_union(j1.begin(), j1.end(), j2.begin(), j2.end(), std::back_inserter(uni));
  if (inter != std::vector<int>{shared}) {
    throw std::invalid_argument("split halves must overlap in exactly the shared sink");
  }
  if (uni != ctx.nbrs) {
    throw std::invalid_argument("split halves must cover the source neighborhood");
  }
  if (!inequalities_hold(ctx.k, ctx.level_total, level_sum(q, j1), level_sum(q, j2))) {
    throw std::invalid_argument("split violates the level-sum inequalities");
  }
  LocalizationTree refined = build_split_tree(t, ctx.source_index, j1, j2);
  if (!is_stable(refined)) throw std::invalid_argument("split result is unstable");
  return refined;
}

RefineOutcome refine_to_trivial(const LocalizationTree& t) {
  // Each split raises the source count by one, so the move graph is acyclic
  // and plain memoization on the canonical code suffices.
  std::map<std::string, std::map<std::string, long>> memo;
  std::map<std::string, LocalizationTree> terminal_reps;
  std::vector<std::string> terminal_order;

  std::function<const std::map<std::string, long>&(const LocalizationTree&)> solve =
      [&](const LocalizationTree& tr) -> const std::map<std::string, long>& {
    std::string code = canonical_code(tr);
    auto it = memo.find(code);
    if (it != memo.end()) return it->second;
    std::map<std::string, long> chains;
    if (tr.support().source_partition().is_trivial()) {
      chains[code] = 1;
      if (!terminal_reps.count(code)) {
        terminal_reps.emplace(code, tr);
        terminal_order.push_back(code);
      }
    } else {
      for (const auto& v : tr.support().sources()) {
        if (v.level < 2) continue;
        for (const auto& mv : find_valid_splits(tr, v.label)) {
          const auto& sub = solve(apply_split(tr, mv));
          for (const auto& [c, n] : sub) chains[c] += n;
        }
      }
    }
    return memo.emplace(std::move(code), std::move(chains)).first->second;
  };

  const auto& chains = solve(t);
  RefineOutcome out;
  for (const auto& code : terminal_order) {
    auto it = chains.find(code);
    if (it == chains.end()) continue;  // reached only from side branches
    out.terminals.push_back(terminal_reps.at(code));
    out.codes.push_back(code);
    out.chain_counts.push_back(it->second);
    out.total_chains += it->second;
  }
  return out;
}

std::vector<SplitChain> refine_chains(const LocalizationTree& t, std::size_t max_chains) {
  std::vector<SplitChain> out;
  SplitChain cur;
  cur.states.push_back(t);
  std::function<void(const LocalizationTree&)> dfs = [&](const LocalizationTree& tr) {
    if (out.size() >= max_chains) return;
    if (tr.support().source_partition().is_trivial()) {
      out.push_back(cur);
      return;
    }
    for (const auto& v : tr.support().sources()) {
      if (v.level < 2) continue;
      for (const auto& mv : find_valid_splits(tr, v.label)) {
        LocalizationTree child = apply_split(tr, mv);
        cur.moves.push_back(mv);
        cur.states.push_back(child);
        dfs(child);
        cur.moves.pop_back();
        cur.states.pop_back();
        if (out.size() >= max_chains) return;
      }
    }
  };
  dfs(t);
  return out;
}

}  // namespace kron
