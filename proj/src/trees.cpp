#include "kron/trees.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>

namespace kron {

namespace {

BigInteger u128_to_mpz(unsigned __int128 v) {
  BigInteger r(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return r;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

}  // namespace

CensusStats& CensusStats::operator+=(const CensusStats& o) {
  enumerated += o.enumerated;
  stable += o.stable;
  pruned += o.pruned;
  cache_hits += o.cache_hits;
  elapsed_ms += o.elapsed_ms;
  return *this;
}

LocalizationTree::LocalizationTree(std::shared_ptr<const SupportQuiver> support,
                                   std::vector<TreeEdge> edges)
    : support_(std::move(support)), edges_(std::move(edges)) {
  if (!support_) throw std::invalid_argument("localization tree without a support quiver");
  const int asz = static_cast<int>(support_->sources().size());
  const int bsz = static_cast<int>(support_->sinks().size());
  const int n = asz + bsz;
  if (asz < 1) throw std::invalid_argument("localization tree needs at least one source");
  std::sort(edges_.begin(), edges_.end());
  if (static_cast<int>(edges_.size()) != n - 1) {
    throw std::invalid_argument("edge count does not span the support");
  }
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  const TreeEdge* prev = nullptr;
  for (const auto& e : edges_) {
    if (e.source < 0 || e.source >= asz || e.sink < 0 || e.sink >= bsz) {
      throw std::invalid_argument("tree edge out of range");
    }
    if (prev && *prev == e) throw std::invalid_argument("duplicate tree edge");
    prev = &e;
    int ra = find(e.source);
    int rb = find(asz + e.sink);
    if (ra == rb) throw std::invalid_argument("tree edges contain a cycle");
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  // n-1 edges and no cycle force connectivity, so nothing more to check.
}

LocalizationTree LocalizationTree::make(
    const SupportQuiver& support, const std::vector<std::pair<std::string, std::string>>& edges) {
  auto sp = std::make_shared<SupportQuiver>(support);
  std::vector<TreeEdge> es;
  es.reserve(edges.size());
  for (const auto& [src, snk] : edges) {
    int i = sp->source_index(src);
    int j = sp->sink_index(snk);
    if (i < 0) throw std::invalid_argument("unknown source label '" + src + "'");
    if (j < 0) throw std::invalid_argument("unknown sink label '" + snk + "'");
    es.push_back({i, j});
  }
  return LocalizationTree(std::move(sp), std::move(es));
}

std::vector<std::pair<std::string, std::string>> LocalizationTree::labeled_edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) {
    out.emplace_back(support_->sources()[static_cast<std::size_t>(e.source)].label,
                     support_->sinks()[static_cast<std::size_t>(e.sink)].label);
  }
  return out;
}

std::vector<int> LocalizationTree::sink_neighbors(int source) const {
  std::vector<int> out;
  for (const auto& e : edges_) {
    if (e.source == source) out.push_back(e.sink);
  }
  return out;
}

std::string LocalizationTree::text() const {
  std::string out;
  for (std::size_t i = 0; i < support_->sources().size(); ++i) {
    out += support_->sources()[i].label;
    out += " ->";
    for (const auto& e : edges_) {
      if (e.source == static_cast<int>(i)) {
        out += ' ';
        out += support_->sinks()[static_cast<std::size_t>(e.sink)].label;
      }
    }
    out += '\n';
  }
  return out;
}

nlohmann::json LocalizationTree::to_json() const {
  nlohmann::json j;
  j["support"] = support_->to_json();
  j["edges"] = nlohmann::json::array();
  for (const auto& [src, snk] : labeled_edges()) {
    j["edges"].push_back(nlohmann::json::array({src, snk}));
  }
  return j;
}

LocalizationTree LocalizationTree::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("support") || !j.contains("edges")) {
    throw std::invalid_argument("tree JSON needs 'support' and 'edges'");
  }
  SupportQuiver q = SupportQuiver::from_json(j.at("support"));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("tree edge must be a [source, sink] label pair");
    }
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return make(q, edges);
}

bool LocalizationTree::operator==(const LocalizationTree& o) const {
  return *support_ == *o.support_ && edges_ == o.edges_;
}

bool is_stable(const LocalizationTree& t) {
  const SupportQuiver& q = t.support();
  const int asz = static_cast<int>(q.sources().size());
  const int bsz = static_cast<int>(q.sinks().size());
  if (asz > 30 || bsz > 62) throw std::invalid_argument("support too large for the slope test");
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(asz), 0);
  for (const auto& e : t.edges()) {
    nbr[static_cast<std::size_t>(e.source)] |= std::uint64_t(1) << e.sink;
  }
  const long atot = q.a_total();
  const long btot = q.b_total();
  const long tot = atot + btot;
  const std::uint64_t full = (std::uint64_t(1) << asz) - 1;
  for (std::uint64_t T = 1; T < full; ++T) {
    long theta = 0;
    std::uint64_t sinks = 0;
    for (std::uint64_t x = T; x; x &= x - 1) {
      int i = std::countr_zero(x);
      theta += q.sources()[static_cast<std::size_t>(i)].level;
      sinks |= nbr[static_cast<std::size_t>(i)];
    }
    long kappa = theta;
    for (std::uint64_t x = sinks; x; x &= x - 1) {
      kappa += q.sinks()[static_cast<std::size_t>(std::countr_zero(x))].level;
    }
    // strict slope drop: theta/kappa < atot/tot
    if (theta * tot >= atot * kappa) return false;
  }
  return true;
}

BigInteger tree_weight_v(const LocalizationTree& t) {
  BigInteger v = 1;
  for (const auto& e : t.edges()) {
    v *= BigInteger(t.support().sources()[static_cast<std::size_t>(e.source)].level) *
         t.support().sinks()[static_cast<std::size_t>(e.sink)].level;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Canonical codes and automorphisms of the level-colored shape.
// ---------------------------------------------------------------------------

namespace {

struct CodeAut {
  std::string code;
  BigInteger aut;
};

struct ShapeView {
  int asz = 0;
  std::vector<std::vector<int>> adj;  // over n = asz + bsz vertices
  std::vector<std::string> color;

  CodeAut rooted(int v, int parent) const {
    std::vector<CodeAut> kids;
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (u != parent) kids.push_back(rooted(u, v));
    }
    std::sort(kids.begin(), kids.end(),
              [](const CodeAut& x, const CodeAut& y) { return x.code < y.code; });
    BigInteger aut = 1;
    std::string code = "(" + color[static_cast<std::size_t>(v)];
    std::size_t i = 0;
    while (i < kids.size()) {
      std::size_t j = i;
      while (j < kids.size() && kids[j].code == kids[i].code) ++j;
      // identical subtrees permute freely
      aut *= factorial(static_cast<long>(j - i));
      for (std::size_t k = i; k < j; ++k) {
        aut *= kids[k].aut;
        code += kids[k].code;
      }
      i = j;
    }
    code += ')';
    return {std::move(code), std::move(aut)};
  }
};

ShapeView shape_of(const LocalizationTree& t) {
  ShapeView s;
  const SupportQuiver& q = t.support();
  s.asz = static_cast<int>(q.sources().size());
  const int n = s.asz + static_cast<int>(q.sinks().size());
  s.adj.assign(static_cast<std::size_t>(n), {});
  s.color.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < s.asz; ++i) {
    s.color[static_cast<std::size_t>(i)] =
        "i" + std::to_string(q.sources()[static_cast<std::size_t>(i)].level);
  }
  for (int j = s.asz; j < n; ++j) {
    s.color[static_cast<std::size_t>(j)] =
        "j" + std::to_string(q.sinks()[static_cast<std::size_t>(j - s.asz)].level);
  }
  for (const auto& e : t.edges()) {
    s.adj[static_cast<std::size_t>(e.source)].push_back(s.asz + e.sink);
    s.adj[static_cast<std::size_t>(s.asz + e.sink)].push_back(e.source);
  }
  return s;
}

std::vector<int> tree_centers(const ShapeView& s) {
  const int n = static_cast<int>(s.adj.size());
  if (n == 1) return {0};
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<int> layer;
  int remaining = n;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = static_cast<int>(s.adj[static_cast<std::size_t>(v)].size());
    if (deg[static_cast<std::size_t>(v)] == 1) layer.push_back(v);
  }
  while (remaining > 2) {
    std::vector<int> next;
    remaining -= static_cast<int>(layer.size());
    for (int v : layer) {
      for (int u : s.adj[static_cast<std::size_t>(v)]) {
        if (--deg[static_cast<std::size_t>(u)] == 1) next.push_back(u);
      }
      deg[static_cast<std::size_t>(v)] = 0;
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

CodeAut shape_code(const LocalizationTree& t) {
  ShapeView s = shape_of(t);
  std::vector<int> centers = tree_centers(s);
  if (centers.size() == 1) return s.rooted(centers[0], -1);
  // Two centers sit on the central edge, hence on opposite sides; no
  // automorphism can swap them, so the halves are canonical separately
  // (source-side half first).
  int c1 = centers[0], c2 = centers[1];
  if (c1 >= s.asz) std::swap(c1, c2);
  CodeAut left = s.rooted(c1, c2);
  CodeAut right = s.rooted(c2, c1);
  return {"[" + left.code + right.code + "]", left.aut * right.aut};
}

}  // namespace

std::string canonical_code(const LocalizationTree& t) { return shape_code(t).code; }

BigRational automorphism_weight(const LocalizationTree& t) {
  return make_rational(BigInteger(1), shape_code(t).aut);
}

BigInteger cayley_count(long ahat, long bhat) {
  if (ahat == 1 && bhat == 0) return 1;
  if (ahat < 1 || bhat < 1) throw std::invalid_argument("cayley_count needs positive sizes");
  return pow_integer(BigInteger(ahat), static_cast<unsigned long>(bhat - 1)) *
         pow_integer(BigInteger(bhat), static_cast<unsigned long>(ahat - 1));
}

BigInteger degree_product_bound(const SupportQuiver& q, long m) {
  if (m < 1) throw std::invalid_argument("arrow multiplicity m must be positive");
  if (q.sources().empty()) throw std::invalid_argument("support has no sources");
  if (q.sinks().empty()) return 1;
  const long atot = q.a_total();
  const long btot = q.b_total();
  long maxlev = 0;
  for (const auto& v : q.sinks()) maxlev = std::max(maxlev, v.level);
  BigInteger prod = 1;
  for (const auto& v : q.sources()) prod *= BigInteger(m) * v.level * btot;
  bool skipped = false;
  for (const auto& v : q.sinks()) {
    if (!skipped && v.level == maxlev) {
      skipped = true;  // one max-level sink stays out of the product
      continue;
    }
    prod *= BigInteger(m) * v.level * atot;
  }
  return prod;
}

// ---------------------------------------------------------------------------
// The census engine. Sources pick their sink sets one at a time (sizes
// ascending, then the numeric bitmask); a union-find over the sinks rejects
// cycles, and in stable mode every source subset whose neighborhood is
// already final is slope-tested as soon as it completes.
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxCensusSources = 16;
constexpr int kMaxCensusSinks = 25;
constexpr int kSinkTableBits = 20;

inline std::uint32_t next_same_popcount(std::uint32_t v) {
  std::uint32_t t = v | (v - 1);
  return (t + 1) | (((~t & (0u - ~t)) - 1) >> (std::countr_zero(v) + 1));
}

struct Shard {
  int size;
  std::uint32_t mask;
};

class TreeCensus {
 public:
  TreeCensus(const SupportQuiver& q, bool stable_only) : stable_only_(stable_only) {
    asz_ = static_cast<int>(q.sources().size());
    bsz_ = static_cast<int>(q.sinks().size());
    if (asz_ < 1 || bsz_ < 1) throw std::invalid_argument("tree census needs both sides nonempty");
    if (asz_ > kMaxCensusSources || bsz_ > kMaxCensusSinks) {
      throw std::invalid_argument("support too large for the tree census");
    }
    for (const auto& v : q.sources()) slev_.push_back(v.level);
    for (const auto& v : q.sinks()) tlev_.push_back(v.level);
    atot_ = q.a_total();
    btot_ = q.b_total();
    tot_ = atot_ + btot_;
    edges_total_ = asz_ + bsz_ - 1;
    track_v_ = atot_ > asz_ || btot_ > bsz_;
    long lmax = 1;
    for (long l : slev_)
      for (long l2 : tlev_) lmax = std::max(lmax, l * l2);
    double tree_bits = edges_total_ * std::log2(std::max<double>(2.0, static_cast<double>(lmax)));
    double count_bits = (bsz_ - 1) * std::log2(static_cast<double>(asz_)) +
                        (asz_ - 1) * std::log2(static_cast<double>(bsz_)) + 1.0;
    use_big_ = track_v_ && tree_bits + count_bits > 120.0;
    nbr_.assign(static_cast<std::size_t>(asz_), 0);
    par_.assign(static_cast<std::size_t>((asz_ + 1) * bsz_), 0);
    if (stable_only_) {
      umask_.assign(std::size_t(1) << asz_, 0);
      usum_.assign(std::size_t(1) << asz_, 0);
    }
    if (bsz_ <= kSinkTableBits) {
      sink_table_.assign(std::size_t(1) << bsz_, 0);
      for (std::uint32_t m = 1; m < sink_table_.size(); ++m) {
        std::uint32_t low = m & (0u - m);
        sink_table_[m] = sink_table_[m ^ low] + tlev_[static_cast<std::size_t>(std::countr_zero(low))];
      }
    }
    if (use_big_) vbig_.assign(static_cast<std::size_t>(asz_) + 1, BigInteger(1));
  }

  std::vector<Shard> make_shards() const {
    std::vector<Shard> out;
    const std::uint32_t limit = std::uint32_t(1) << bsz_;
    for (int s = lo_size(0, 0); s <= hi_size(0, 0); ++s) {
      for (std::uint32_t S = (std::uint32_t(1) << s) - 1; S < limit; S = next_same_popcount(S)) {
        out.push_back({s, S});
      }
    }
    return out;
  }

  // Leaf signature: bool(const uint32_t* neighborhoods, unsigned __int128 v,
  // const BigInteger* vbig); vbig is null unless weights outgrow 128 bits.
  template <class Leaf>
  bool run_shard(const Shard& sh, Leaf&& leaf) {
    std::int8_t* row = par_row(0);
    for (int j = 0; j < bsz_; ++j) row[j] = static_cast<std::int8_t>(j);
    if (place(0, sh.mask) <= 0) return true;
    unsigned __int128 v = 1;
    if (track_v_ && !use_big_) v = vfactor_small(0, sh.mask);
    if (use_big_) vbig_[1] = vfactor_big(0, sh.mask);
    if (asz_ == 1) {
      return leaf(nbr_.data(), v, use_big_ ? &vbig_[1] : nullptr);
    }
    return rec(1, sh.size, v, leaf);
  }

  std::uint64_t take_pruned() {
    std::uint64_t p = pruned_;
    pruned_ = 0;
    return p;
  }

 private:
  int lo_size(int t, int used) const {
    int rem = asz_ - 1 - t;
    int need = edges_total_ - used;
    return std::max(1, need - rem * bsz_);
  }
  int hi_size(int t, int used) const {
    int rem = asz_ - 1 - t;
    int need = edges_total_ - used;
    return std::min(bsz_, need - rem);
  }

  std::int8_t* par_row(int t) { return par_.data() + static_cast<std::size_t>(t) * bsz_; }

  static int find(std::int8_t* par, int x) {
    while (par[x] != x) {
      par[x] = par[par[x]];
      x = par[x];
    }
    return x;
  }

  long sink_sum(std::uint32_t mask) const {
    if (!sink_table_.empty()) return sink_table_[mask];
    long s = 0;
    for (std::uint32_t x = mask; x; x &= x - 1) {
      s += tlev_[static_cast<std::size_t>(std::countr_zero(x))];
    }
    return s;
  }

  unsigned __int128 vfactor_small(int t, std::uint32_t S) const {
    unsigned __int128 f = 1;
    for (std::uint32_t x = S; x; x &= x - 1) {
      f *= static_cast<unsigned __int128>(
          slev_[static_cast<std::size_t>(t)] * tlev_[static_cast<std::size_t>(std::countr_zero(x))]);
    }
    return f;
  }

  BigInteger vfactor_big(int t, std::uint32_t S) const {
    BigInteger f = 1;
    for (std::uint32_t x = S; x; x &= x - 1) {
      f *= BigInteger(slev_[static_cast<std::size_t>(t)]) *
           tlev_[static_cast<std::size_t>(std::countr_zero(x))];
    }
    return f;
  }

  // -1: would close a cycle; 0: slope-pruned; 1: placed (child DSU row built).
  int place(int t, std::uint32_t S) {
    std::int8_t* row = par_row(t);
    int roots[kMaxCensusSinks];
    int nroots = 0;
    for (std::uint32_t x = S; x; x &= x - 1) {
      int r = find(row, std::countr_zero(x));
      for (int i = 0; i < nroots; ++i) {
        if (roots[i] == r) return -1;
      }
      roots[nroots++] = r;
    }
    nbr_[static_cast<std::size_t>(t)] = S;
    if (stable_only_) {
      const std::uint32_t full_below = (std::uint32_t(1) << t) - 1;
      const std::uint32_t bit = std::uint32_t(1) << t;
      for (std::uint32_t ps = 0; ps <= full_below; ++ps) {
        std::uint32_t m2 = ps | bit;
        umask_[m2] = umask_[ps] | S;
        usum_[m2] = usum_[ps] + slev_[static_cast<std::size_t>(t)];
        if (t == asz_ - 1 && ps == full_below) continue;  // T = all sources
        long theta = usum_[m2];
        long kappa = theta + sink_sum(umask_[m2]);
        if (theta * tot_ >= atot_ * kappa) {
          ++pruned_;
          return 0;
        }
      }
    }
    std::int8_t* child = par_row(t + 1);
    std::memcpy(child, row, static_cast<std::size_t>(bsz_));
    for (int i = 1; i < nroots; ++i) child[roots[i]] = static_cast<std::int8_t>(roots[0]);
    return 1;
  }

  template <class Leaf>
  bool rec(int t, int used, unsigned __int128 v, Leaf&& leaf) {
    const std::uint32_t limit = std::uint32_t(1) << bsz_;
    for (int s = lo_size(t, used); s <= hi_size(t, used); ++s) {
      for (std::uint32_t S = (std::uint32_t(1) << s) - 1; S < limit; S = next_same_popcount(S)) {
        if (place(t, S) <= 0) continue;
        unsigned __int128 v2 = v;
        if (track_v_ && !use_big_) v2 = v * vfactor_small(t, S);
        if (use_big_) vbig_[static_cast<std::size_t>(t) + 1] = vbig_[static_cast<std::size_t>(t)] * vfactor_big(t, S);
        bool keep;
        if (t == asz_ - 1) {
          keep = leaf(nbr_.data(), v2, use_big_ ? &vbig_[static_cast<std::size_t>(t) + 1] : nullptr);
        } else {
          keep = rec(t + 1, used + s, v2, leaf);
        }
        if (!keep) return false;
      }
    }
    return true;
  }

  bool stable_only_;
  int asz_ = 0, bsz_ = 0, edges_total_ = 0;
  long atot_ = 0, btot_ = 0, tot_ = 0;
  bool track_v_ = false, use_big_ = false;
  std::vector<long> slev_, tlev_;
  std::vector<std::uint32_t> nbr_;
  std::vector<std::int8_t> par_;
  std::vector<std::uint32_t> umask_;
  std::vector<long> usum_;
  std::vector<long> sink_table_;
  std::vector<BigInteger> vbig_;
  std::uint64_t pruned_ = 0;
};

struct CensusTotals {
  std::uint64_t leaves = 0;
  std::uint64_t pruned = 0;
  BigInteger sum = 0;
};

CensusTotals run_census(const SupportQuiver& q, bool stable_only, int workers) {
  TreeCensus first(q, stable_only);
  const std::vector<Shard> shards = first.make_shards();
  struct ShardOut {
    std::uint64_t leaves = 0;
    std::uint64_t pruned = 0;
    unsigned __int128 small = 0;
    BigInteger big = 0;
  };
  std::vector<ShardOut> res(shards.size());
  auto work_one = [&](TreeCensus& eng, std::size_t i) {
    ShardOut& r = res[i];
    eng.run_shard(shards[i],
                  [&r](const std::uint32_t*, unsigned __int128 v, const BigInteger* vb) {
                    ++r.leaves;
                    if (vb) {
                      r.big += *vb;
                    } else {
                      r.small += v;
                    }
                    return true;
                  });
    r.pruned = eng.take_pruned();
  };
  int nw = std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(1, shards.size())));
  if (nw <= 1) {
    for (std::size_t i = 0; i < shards.size(); ++i) work_one(first, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
      pool.emplace_back([&] {
        TreeCensus eng(q, stable_only);
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= shards.size()) break;
          work_one(eng, i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  CensusTotals tot;
  for (const auto& r : res) {
    tot.leaves += r.leaves;
    tot.pruned += r.pruned;
    tot.sum += r.big + u128_to_mpz(r.small);
  }
  return tot;
}

}  // namespace

void for_each_spanning_tree(const SupportQuiver& q,
                            const std::function<bool(const LocalizationTree&)>& visit,
                            const CensusOptions& opt) {
  if (q.sinks().empty()) {
    if (q.sources().size() == 1) {
      visit(LocalizationTree(std::make_shared<SupportQuiver>(q), {}));
      return;
    }
    throw std::invalid_argument("no spanning trees: several sources but no sinks");
  }
  TreeCensus eng(q, opt.stable_only);
  auto support = std::make_shared<SupportQuiver>(q);
  const int asz = static_cast<int>(q.sources().size());
  for (const Shard& sh : eng.make_shards()) {
    bool keep = eng.run_shard(sh, [&](const std::uint32_t* nbr, unsigned __int128,
                                      const BigInteger*) {
      std::vector<TreeEdge> edges;
      edges.reserve(q.sources().size() + q.sinks().size() - 1);
      for (int t = 0; t < asz; ++t) {
        for (std::uint32_t x = nbr[t]; x; x &= x - 1) {
          edges.push_back({t, std::countr_zero(x)});
        }
      }
      return visit(LocalizationTree(support, std::move(edges)));
    });
    if (!keep) return;
  }
}

std::uint64_t spanning_tree_count(const SupportQuiver& q, int workers) {
  if (q.sinks().empty()) return q.sources().size() == 1 ? 1 : 0;
  return run_census(q, false, workers).leaves;
}

BigInteger stable_weight_sum(const SupportQuiver& q, CensusStats* stats, int workers) {
  double t0 = now_ms();
  if (q.sinks().empty()) {
    // a lone source is vacuously stable and carries weight 1
    if (q.sources().size() != 1) {
      throw std::invalid_argument("no spanning trees: several sources but no sinks");
    }
    if (stats) *stats = CensusStats{1, 1, 0, 0, now_ms() - t0};
    return 1;
  }
  CensusTotals tot = run_census(q, true, workers);
  if (stats) {
    *stats = CensusStats{tot.leaves, tot.leaves, tot.pruned, 0, now_ms() - t0};
  }
  return tot.sum;
}

BigInteger total_weight_sum(const SupportQuiver& q, CensusStats* stats, int workers) {
  double t0 = now_ms();
  if (q.sinks().empty()) {
    if (q.sources().size() != 1) {
      throw std::invalid_argument("no spanning trees: several sources but no sinks");
    }
    if (stats) *stats = CensusStats{1, 0, 0, 0, now_ms() - t0};
    return 1;
  }
  CensusTotals tot = run_census(q, false, workers);
  if (stats) {
    *stats = CensusStats{tot.leaves, 0, 0, 0, now_ms() - t0};
  }
  return tot.sum;
}

namespace {

std::mutex cache_mutex;
std::map<std::string, std::pair<BigInteger, CensusStats>>& weight_cache() {
  static std::map<std::string, std::pair<BigInteger, CensusStats>> cache;
  return cache;
}

std::string cache_key(const SupportQuiver& q) {
  return q.source_partition().text() + " | " + q.sink_partition().text();
}

}  // namespace

BigInteger stable_weight_sum_cached(const SupportQuiver& q, CensusStats* stats, int workers) {
  const std::string key = cache_key(q);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = weight_cache().find(key);
    if (it != weight_cache().end()) {
      if (stats) {
        *stats = it->second.second;
        stats->cache_hits = 1;
        stats->elapsed_ms = 0.0;
      }
      return it->second.first;
    }
  }
  CensusStats local;
  BigInteger sum = stable_weight_sum(q, &local, workers);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    weight_cache().emplace(key, std::make_pair(sum, local));
  }
  if (stats) *stats = local;
  return sum;
}

void clear_weight_sum_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  weight_cache().clear();
}

std::size_t weight_sum_cache_size() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  return weight_cache().size();
}

// ---------------------------------------------------------------------------
// Pruefer-style oracle enumeration.
// ---------------------------------------------------------------------------

void for_each_pruefer_tree(const SupportQuiver& q,
                           const std::function<void(const LocalizationTree&)>& visit) {
  const int asz = static_cast<int>(q.sources().size());
  const int bsz = static_cast<int>(q.sinks().size());
  if (asz < 1 || bsz < 1) {
    throw std::invalid_argument("pruefer enumeration needs both sides nonempty");
  }
  if (cayley_count(asz, bsz) > BigInteger(1) << 26) {
    throw std::invalid_argument("pruefer enumeration too large");
  }
  auto support = std::make_shared<SupportQuiver>(q);
  const int n = asz + bsz;
  // Removing a sink leaf records its source neighbor and vice versa, so the
  // code splits into a source-valued word of length bsz-1 and a sink-valued
  // word of length asz-1.
  std::vector<int> sword(static_cast<std::size_t>(bsz - 1), 0);
  std::vector<int> tword(static_cast<std::size_t>(asz - 1), 0);
  std::vector<int> occ(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n));
  for (;;) {
    std::fill(occ.begin(), occ.end(), 0);
    std::fill(removed.begin(), removed.end(), 0);
    for (int s : sword) ++occ[static_cast<std::size_t>(s)];
    for (int t : tword) ++occ[static_cast<std::size_t>(asz + t)];
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v) {
      if (occ[static_cast<std::size_t>(v)] == 0) leaves.push(v);
    }
    std::vector<TreeEdge> edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    std::size_t pos_s = 0, pos_t = 0;
    for (int step = 0; step < n - 2; ++step) {
      int v = leaves.top();
      leaves.pop();
      removed[static_cast<std::size_t>(v)] = 1;
      int nb;
      if (v < asz) {
        nb = asz + tword[pos_t++];
        edges.push_back({v, nb - asz});
      } else {
        nb = sword[pos_s++];
        edges.push_back({nb, v - asz});
      }
      if (--occ[static_cast<std::size_t>(nb)] == 0) leaves.push(nb);
    }
    int u = -1, w = -1;
    for (int v = 0; v < n; ++v) {
      if (!removed[static_cast<std::size_t>(v)]) (u < 0 ? u : w) = v;
    }
    edges.push_back({std::min(u, w), std::max(u, w) - asz});
    visit(LocalizationTree(support, std::move(edges)));
    // odometer over both words
    bool advanced = false;
    for (std::size_t i = sword.size(); i-- > 0 && !advanced;) {
      if (++sword[i] < asz) {
        advanced = true;
      } else {
        sword[i] = 0;
      }
    }
    for (std::size_t i = tword.size(); i-- > 0 && !advanced;) {
      if (++tword[i] < bsz) {
        advanced = true;
      } else {
        tword[i] = 0;
      }
    }
    if (!advanced) break;
  }
}

}  // namespace kron
