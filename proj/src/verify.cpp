#include "kron/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kron/bounds.hpp"
#include "kron/euler.hpp"
#include "kron/partitions.hpp"
#include "kron/quiver.hpp"
#include "kron/splitting.hpp"
#include "kron/trees.hpp"

namespace kron {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

// Independent partition counter: p(n) by a parts-bounded recursion.
long partition_count_oracle(long n) {
  std::vector<std::vector<long>> p(static_cast<std::size_t>(n + 1),
                                   std::vector<long>(static_cast<std::size_t>(n + 1), 0));
  for (long k = 0; k <= n; ++k) p[0][static_cast<std::size_t>(k)] = 1;
  for (long s = 1; s <= n; ++s) {
    for (long k = 1; k <= n; ++k) {
      long v = p[static_cast<std::size_t>(s)][static_cast<std::size_t>(k - 1)];
      if (s >= k) v += p[static_cast<std::size_t>(s - k)][static_cast<std::size_t>(k)];
      p[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] = v;
    }
  }
  return p[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)];
}

RationalPolynomial binomial_in_m(long b) {
  RationalPolynomial p = RationalPolynomial::constant(make_rational(BigInteger(1), factorial(b)));
  for (long i = 0; i < b; ++i) {
    RationalPolynomial lin = RationalPolynomial::monomial(make_rational(BigInteger(1), BigInteger(1)), 1);
    lin += RationalPolynomial::constant(make_rational(BigInteger(-i), BigInteger(1)));
    p = p * lin;
  }
  return p;
}

PartitionPair pair_of(const std::string& text) {
  auto bar = text.find('|');
  PartitionPair p;
  p.a = WeightedPartition::parse(text.substr(0, bar - 1));
  p.b = WeightedPartition::parse(text.substr(bar + 2));
  return p;
}

std::string check_partition_enumeration() {
  for (long n = 1; n <= 12; ++n) {
    auto parts = enumerate_partitions(n);
    require(static_cast<long>(parts.size()) == partition_count_oracle(n),
            "partition count mismatch at n=" + std::to_string(n));
    require(parts.front().text() == "1*" + std::to_string(n), "first partition is not all-ones");
    require(parts.back().text() == std::to_string(n) + "*1", "last partition is not a single part");
    for (const auto& p : parts) {
      require(p.total() == n, "partition total mismatch");
    }
  }
  return "p(1..12) matches the bounded-parts recursion";
}

std::string check_mps_coefficients() {
  require(rational_str(mps_coefficient(pair_of("2*1 | 3*1"))) == "-1/36", "coeff(2|3)");
  require(rational_str(mps_coefficient(pair_of("1*2 | 1*1+2*1"))) == "-1/8", "coeff(1+1|1+2)");
  require(rational_str(mps_coefficient(pair_of("2*1 | 1*3"))) == "-1/24", "coeff(2|1+1+1)");
  require(rational_str(mps_coefficient(pair_of("1*2 | 1*3"))) == "1/12", "coeff(1+1|1+1+1)");
  require(rational_str(mps_coefficient(pair_of("1*2 | 3*1"))) == "1/18", "coeff(1+1|3)");
  require(rational_str(mps_coefficient(pair_of("2*1 | 1*1+2*1"))) == "1/16", "coeff(2|1+2)");
  return "six hand-computed layer coefficients reproduced";
}

std::string check_census_vs_cayley() {
  const std::vector<std::pair<long, long>> sizes = {{1, 1}, {2, 3}, {3, 3}, {4, 2}, {2, 4}};
  for (auto [ah, bh] : sizes) {
    SupportQuiver q = SupportQuiver::from_pair(
        PartitionPair{WeightedPartition::trivial(ah), WeightedPartition::trivial(bh)});
    require(BigInteger(spanning_tree_count(q)) == cayley_count(ah, bh),
            "tree count mismatch on the complete bipartite graph");
  }
  SupportQuiver wq = SupportQuiver::from_pair(pair_of("1*1+2*1 | 1*2+2*1"));
  require(BigInteger(spanning_tree_count(wq)) == cayley_count(2, 3),
          "levels must not change the underlying tree count");
  return "census counts equal the bipartite Cayley counts";
}

std::string check_census_vs_pruefer() {
  const std::vector<std::string> pairs = {"1*2 | 1*1+2*1", "1*1+2*1 | 1*2+2*1", "1*3 | 1*3"};
  for (const auto& text : pairs) {
    SupportQuiver q = SupportQuiver::from_pair(pair_of(text));
    std::set<std::string> census, oracle;
    std::uint64_t oracle_stable = 0;
    BigInteger oracle_weight = 0;
    for_each_spanning_tree(q, [&](const LocalizationTree& t) {
      census.insert(t.text());
      return true;
    });
    for_each_pruefer_tree(q, [&](const LocalizationTree& t) {
      oracle.insert(t.text());
      if (is_stable(t)) {
        ++oracle_stable;
        oracle_weight += tree_weight_v(t);
      }
    });
    require(census == oracle, "census and decoder disagree on " + text);
    require(census.size() == oracle.size(), "duplicate decodes on " + text);
    CensusStats st;
    require(stable_weight_sum(q, &st) == oracle_weight, "stable weight sum mismatch on " + text);
    require(st.stable == oracle_stable, "stable count mismatch on " + text);
  }
  return "sequence decoding reproduces the census on three supports";
}

std::string check_stability_basics() {
  SupportQuiver edge = SupportQuiver::from_pair(pair_of("2*1 | 3*1"));
  require(is_stable(LocalizationTree::make(edge, {{"i_2_1", "j_3_1"}})), "single edge unstable");
  SupportQuiver star = SupportQuiver::from_pair(pair_of("1*1 | 1*4"));
  require(is_stable(LocalizationTree::make(star, {{"i_1_1", "j_1_1"},
                                                  {"i_1_1", "j_1_2"},
                                                  {"i_1_1", "j_1_3"},
                                                  {"i_1_1", "j_1_4"}})),
          "one-source star unstable");
  CensusStats st;
  stable_weight_sum(SupportQuiver::from_pair(pair_of("1*2 | 1*3")), &st);
  require(st.stable == 6, "stable count of the level-1 (2,3) support is not 6");
  require(st.enumerated == st.stable, "pruned census still built unstable trees");
  require(st.pruned > 0, "census never pruned on a support with unstable trees");
  return "hand-checked stability verdicts reproduced";
}

std::string check_weight_sums_23() {
  const std::vector<std::pair<std::string, long>> expected = {
      {"1*2 | 1*3", 6}, {"1*2 | 1*1+2*1", 8}, {"1*2 | 3*1", 9},
      {"2*1 | 1*3", 8}, {"2*1 | 1*1+2*1", 8}, {"2*1 | 3*1", 6},
  };
  for (const auto& [text, value] : expected) {
    SupportQuiver q = SupportQuiver::from_pair(pair_of(text));
    require(stable_weight_sum(q) == BigInteger(value), "weight sum of " + text);
  }
  return "all six strata of chi(2,3) match their hand censuses";
}

std::string check_chi_23() {
  ChiResult r = chi_kronecker(2, 3);
  RationalPolynomial expect =
      RationalPolynomial::monomial(make_rational(1, 2), 4) +
      RationalPolynomial::monomial(make_rational(-4, 3), 3) +
      RationalPolynomial::monomial(make_rational(1, 1), 2) +
      RationalPolynomial::monomial(make_rational(-1, 6), 1);
  require(r.chi == expect, "chi(2,3) != m^4/2 - 4m^3/3 + m^2 - m/6");
  const long values[] = {0, 1, 13, 58, 170, 395, 791, 1428, 2388, 3765};
  for (long m = 1; m <= 10; ++m) {
    require(r.chi.eval(BigInteger(m)) == make_rational(values[m - 1], 1),
            "chi(2,3)(" + std::to_string(m) + ") mismatch");
  }
  require(r.summands.size() == 6, "chi(2,3) must have six strata");
  return "chi(2,3) = " + r.chi.str();
}

std::string check_chi_binomials() {
  for (long b = 1; b <= 4; ++b) {
    require(chi_kronecker(1, b).chi == binomial_in_m(b),
            "chi(1," + std::to_string(b) + ") is not binomial(m," + std::to_string(b) + ")");
  }
  return "chi(1,b) equals binomial(m,b) for b <= 4";
}

std::string check_transpose_symmetry() {
  require(chi_kronecker(2, 3).chi == chi_kronecker(3, 2).chi, "chi(2,3) != chi(3,2)");
  require(chi_kronecker(1, 4).chi == chi_kronecker(4, 1).chi, "chi(1,4) != chi(4,1)");
  return "transposing (a,b) leaves chi unchanged";
}

std::string check_reflection_small() {
  // (1,3) at m=3 reflects onto the simple (1,0): a single point.
  require(chi_kronecker(1, 3).chi.eval(BigInteger(3)) == make_rational(1, 1),
          "chi(1,3)(3) != 1");
  require(chi_kronecker(1, 0).chi.eval(BigInteger(3)) == make_rational(1, 1),
          "chi(1,0) != 1");
  // (1,2) at m=3 reflects onto (1,1).
  require(chi_kronecker(1, 2).chi.eval(BigInteger(3)) ==
              chi_kronecker(1, 1).chi.eval(BigInteger(3)),
          "chi(1,2)(3) != chi(1,1)(3)");
  return "small reflections agree pointwise";
}

std::string check_closed_forms() {
  require(labeled_stable_tree_count(1, 1) == 1, "count(1,1)");
  require(labeled_stable_tree_count(2, 1) == 6, "count(2,1)");
  require(labeled_stable_tree_count(3, 1) == 96, "count(3,1)");
  require(labeled_stable_tree_count(2, 2) == 30, "count(2,2)");
  require(rational_str(t_weight_sum_closed_form(2, 1)) == "1/2", "T(2,1)");
  require(rational_str(t_weight_sum_closed_form(2, 2)) == "1/8", "T(2,2)");
  require(rational_str(t_weight_sum_closed_form(1, 3)) == "1/24", "T(1,3)");
  for (long a = 1; a <= 3; ++a) {
    for (long k = 1; k <= 3; ++k) {
      BigRational orbit = t_weight_sum_closed_form(a, k);
      orbit *= make_rational(factorial(a) * factorial(k * a + 1), BigInteger(1));
      require(orbit == make_rational(labeled_stable_tree_count(a, k), 1),
              "orbit identity fails at a=" + std::to_string(a) + ", k=" + std::to_string(k));
    }
  }
  for (const auto& [a, k] : std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {2, 2}, {1, 3}}) {
    PartitionPair p{WeightedPartition::trivial(a), WeightedPartition::trivial(k * a + 1)};
    require(chi_partition_pair(p).chi == chi_trivial_closed_form(a, k),
            "closed form disagrees with the census at a=" + std::to_string(a) +
                ", k=" + std::to_string(k));
  }
  return "one-source closed forms match censuses and the orbit identity";
}

std::string check_king_theta() {
  SupportQuiver q = SupportQuiver::from_pair(pair_of("1*1+2*1 | 1*2+3*1"));
  std::vector<std::string> labels;
  for (const auto& v : q.sources()) labels.push_back(v.label);
  for (const auto& v : q.sinks()) labels.push_back(v.label);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (state >> 33) % 4;
  };
  const long m = 3;
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    DimVector d, e;
    for (const auto& l : labels) {
      d[l] = static_cast<long>(next());
      e[l] = static_cast<long>(next());
    }
    auto total = [](const DimVector& v) {
      long s = 0;
      for (const auto& [k, x] : v) {
        (void)k;
        s += x;
      }
      return s;
    };
    if (total(d) == 0 || total(e) == 0) continue;
    BigInteger kt = king_theta(q, d, e, m);
    require(kt == -king_theta(q, e, d, m), "king form must be antisymmetric");
    require(kt == support_euler_form(q, e, d, m) - support_euler_form(q, d, e, m),
            "king form disagrees with the euler-form commutator");
    BigRational gap = slope(q, e) - slope(q, d);
    BigInteger other = king_theta(q, e, d, m);
    require(sgn(gap) == sgn(other), "slope comparison and king form sign differ");
    ++compared;
  }
  require(compared > 150, "too few usable random trials");
  return std::to_string(compared) + " random slope comparisons match the king form";
}

std::string check_dimension_formula() {
  for (long m = 3; m <= 5; ++m) {
    for (long a = 1; a <= 4; ++a) {
      for (long b = 1; b <= 4; ++b) {
        BigInteger lhs(moduli_dimension(a, b, m));
        require(lhs == 1 - euler_form(a, b, a, b, m), "dimension != 1 - <d,d>");
        require(is_imaginary_schur_root(a, b, m) ==
                    (BigInteger(a) * a + BigInteger(b) * b < BigInteger(m) * a * b),
                "schur root test mismatch");
        require(is_imaginary_schur_root(a, b, m) == is_imaginary_schur_root(b, a, m),
                "transpose must preserve the root property");
        if (m * a - b >= 1 && is_imaginary_schur_root(a, b, m)) {
          Dualities du = dualities(a, b, m);
          require(is_imaginary_schur_root(du.reflection.first, du.reflection.second, m),
                  "reflection must preserve the root property");
        }
      }
    }
  }
  return "dimension and root tests consistent across the m=3..5 grid";
}

std::string check_bounds_dominate() {
  auto rows = bound_table(2, 3);
  require(!rows.empty(), "bound table is empty");
  for (const auto& r : rows) {
    require(r.upper_bound.cmp(r.chi_value) > 0, "upper bound not above chi");
    require(r.ratio.to_double() < 1.0, "ratio must stay below one");
  }
  double ub23 = chi_upper_bound(2, 3, 3).to_double();
  require(ub23 > 1.2e8 && ub23 < 1.3e8, "chi_upper_bound(2,3,3) moved");
  return std::to_string(rows.size()) + " table rows dominated by the bound";
}

std::string check_degree_product_bound() {
  const std::vector<std::string> pairs = {"1*2 | 1*3", "1*1+2*1 | 1*3", "2*1 | 3*1",
                                          "1*2+2*1 | 1*4"};
  for (const auto& text : pairs) {
    PartitionPair p = pair_of(text);
    SupportQuiver q = SupportQuiver::from_pair(p);
    BigInteger total = total_weight_sum(q);
    for (long m : {3L, 5L}) {
      BigInteger weighted =
          pow_integer(BigInteger(m), static_cast<unsigned long>(p.a.hat() + p.b.hat() - 1)) *
          total;
      require(weighted <= degree_product_bound(q, m), "degree product bound fails on " + text);
      require(pow_integer(BigInteger(m),
                          static_cast<unsigned long>(p.a.hat() + p.b.hat() - 1)) *
                      stable_weight_sum(q) <=
                  chi_partition_upper_bound_exact(p, m),
              "stratum bound fails on " + text);
    }
  }
  return "multigraph and stratum bounds dominate their censuses";
}

std::string check_asymptotic_frozen() {
  AsymptoticValues v = asymptotic_values(3, make_rational(1, 1));
  auto near = [](const HpFloat& x, double target) {
    return std::abs(x.to_double() - target) < 2e-4;
  };
  require(near(v.g, 5.5835), "g(3,1) moved");
  require(near(v.i_triv, 3.1972), "i(3,1) moved");
  require(near(v.f, 2.2494), "f(3,1) moved");
  require(near(v.h, 5.5835 / 2.2494), "h(3,1) moved");
  require(v.g.cmp(v.i_triv) > 0, "g must dominate the closed-form rate at k=1");
  AsymptoticValues v2 = asymptotic_values(3, make_rational(2, 1));
  require(v2.g.cmp(v2.i_triv) > 0, "g must dominate the closed-form rate at k=2");
  return "frozen curve values at (m,k)=(3,1) reproduced";
}

std::string check_grid_minimum() {
  HpFloat h = min_h_on_grid(3, 101);
  require(h.to_double() > 1.0, "h must stay above one on the m=3 grid");
  double lo = interval_m1(3).to_double();
  double hi = interval_m2(3).to_double();
  require(std::abs(lo - 0.3819660) < 1e-6 && std::abs(hi - 2.6180339) < 1e-6,
          "interval endpoints for m=3 moved");
  return "min h on the m=3 grid is " + std::to_string(h.to_double());
}

std::string check_split_single_edge() {
  SupportQuiver q = SupportQuiver::from_pair(pair_of("2*1 | 3*1"));
  LocalizationTree t = LocalizationTree::make(q, {{"i_2_1", "j_3_1"}});
  auto moves = find_valid_splits(t, "i_2_1");
  require(moves.size() == 1, "the single edge must split in exactly one way");
  LocalizationTree r = apply_split(t, moves[0]);
  require(r.support().source_partition().text() == "1*2", "split must land on two level-1 sources");
  RefineOutcome out = refine_to_trivial(t);
  require(out.terminals.size() == 1 && out.total_chains == 1, "single-edge refinement chain");
  return "single-edge refinement reaches its unique terminal";
}

std::string check_split_section_trees() {
  SupportQuiver q = SupportQuiver::from_pair(pair_of("1*2+2*1 | 1*5"));
  LocalizationTree t1 = LocalizationTree::make(
      q, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_1_2"}, {"i_1_2", "j_1_2"}, {"i_1_2", "j_1_3"},
          {"i_2_1", "j_1_3"}, {"i_2_1", "j_1_4"}, {"i_2_1", "j_1_5"}});
  LocalizationTree t2 = LocalizationTree::make(
      q, {{"i_1_1", "j_1_1"}, {"i_1_1", "j_1_2"}, {"i_2_1", "j_1_2"}, {"i_2_1", "j_1_3"},
          {"i_2_1", "j_1_4"}, {"i_1_2", "j_1_4"}, {"i_1_2", "j_1_5"}});
  require(is_stable(t1) && is_stable(t2), "both demonstration trees must be stable");
  require(find_valid_splits(t1, "i_2_1").size() == 6, "t1 must admit six splits");
  RefineOutcome o1 = refine_to_trivial(t1);
  RefineOutcome o2 = refine_to_trivial(t2);
  require(o1.terminals.size() == 2 && o2.terminals.size() == 2, "both must reach two shapes");
  std::set<std::string> c1(o1.codes.begin(), o1.codes.end());
  std::set<std::string> c2(o2.codes.begin(), o2.codes.end());
  require(c1 == c2, "the two trees must reach the same terminal shapes");
  require(o1.total_chains == 6 && o2.total_chains == 6, "chain totals moved");
  std::multiset<long> n1(o1.chain_counts.begin(), o1.chain_counts.end());
  std::multiset<long> n2(o2.chain_counts.begin(), o2.chain_counts.end());
  require(n1 == std::multiset<long>({2, 4}) && n2 == std::multiset<long>({2, 4}),
          "chain multiplicities moved");
  return "the two demonstration trees meet in the same two terminal shapes";
}

std::string check_cache() {
  clear_weight_sum_cache();
  SupportQuiver q = SupportQuiver::from_pair(pair_of("1*2 | 1*3"));
  CensusStats first, second;
  BigInteger v1 = stable_weight_sum_cached(q, &first);
  BigInteger v2 = stable_weight_sum_cached(q, &second);
  require(v1 == v2, "cache changed the value");
  require(first.cache_hits == 0 && second.cache_hits == 1, "cache hit accounting wrong");
  require(weight_sum_cache_size() == 1, "cache size wrong");
  return "weight-sum cache replays census results";
}

std::string check_reflection_chain_m4(int workers) {
  BigRational lhs = chi_kronecker(3, 4, workers).chi.eval(BigInteger(4));
  BigRational rhs = chi_kronecker(3, 8, workers).chi.eval(BigInteger(4));
  require(lhs == rhs, "chi(3,4)(4) != chi(3,8)(4)");
  BigRational l2 = chi_kronecker(2, 5, workers).chi.eval(BigInteger(4));
  BigRational r2 = chi_kronecker(2, 3, workers).chi.eval(BigInteger(4));
  require(l2 == r2, "chi(2,5)(4) != chi(2,3)(4)");
  return "m=4 reflections agree: chi(3,4)(4) = " + rational_str(lhs);
}

std::string check_integrality_grid(int workers) {
  for (const auto& [a, b] : std::vector<std::pair<long, long>>{{2, 5}, {3, 4}, {3, 5}}) {
    ChiResult r = chi_kronecker(a, b, workers);
    for (long m = 1; m <= 8; ++m) {
      BigRational v = r.chi.eval(BigInteger(m));
      require(v.get_den() == 1, "chi(" + std::to_string(a) + "," + std::to_string(b) +
                                    ") not integral at m=" + std::to_string(m));
    }
  }
  return "chi values are integers across the m=1..8 grid";
}

std::string check_grid_minimum_full() {
  for (long m = 3; m <= 6; ++m) {
    HpFloat h = min_h_on_grid(m, 501);
    require(h.to_double() > 1.0, "h dipped below one at m=" + std::to_string(m));
  }
  return "h stays above one on the m=3..6 grids (501 points)";
}

}  // namespace

int VerifyReport::failures() const {
  int n = 0;
  for (const auto& c : checks) {
    if (!c.passed) ++n;
  }
  return n;
}

VerifyReport run_verify(bool full, int workers) {
  struct Entry {
    std::string name;
    bool quick;
    std::function<std::string()> fn;
  };
  const std::vector<Entry> entries = {
      {"partition-enumeration", true, check_partition_enumeration},
      {"layer-coefficients", true, check_mps_coefficients},
      {"census-vs-cayley", true, check_census_vs_cayley},
      {"census-vs-decoder", true, check_census_vs_pruefer},
      {"stability-basics", true, check_stability_basics},
      {"weight-sums-2-3", true, check_weight_sums_23},
      {"chi-2-3", true, check_chi_23},
      {"chi-binomials", true, check_chi_binomials},
      {"transpose-symmetry", true, check_transpose_symmetry},
      {"reflection-small", true, check_reflection_small},
      {"closed-forms", true, check_closed_forms},
      {"king-form", true, check_king_theta},
      {"dimension-formula", true, check_dimension_formula},
      {"bounds-dominate", true, check_bounds_dominate},
      {"degree-product-bound", true, check_degree_product_bound},
      {"asymptotic-curves", true, check_asymptotic_frozen},
      {"grid-minimum", true, check_grid_minimum},
      {"split-single-edge", true, check_split_single_edge},
      {"split-demo-trees", true, check_split_section_trees},
      {"weight-sum-cache", true, check_cache},
      {"reflection-chains", false, [workers] { return check_reflection_chain_m4(workers); }},
      {"chi-integrality", false, [workers] { return check_integrality_grid(workers); }},
      {"grid-minimum-full", false, check_grid_minimum_full},
  };
  VerifyReport report;
  for (const auto& e : entries) {
    if (!full && !e.quick) continue;
    VerifyCheck c;
    c.name = e.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.detail = e.fn();
      c.passed = true;
    } catch (const std::exception& ex) {
      c.passed = false;
      c.detail = ex.what();
    }
    c.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace kron
