#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kron/bounds.hpp"
#include "kron/euler.hpp"
#include "kron/partitions.hpp"
#include "kron/quiver.hpp"
#include "kron/splitting.hpp"
#include "kron/trees.hpp"
#include "kron/verify.hpp"

namespace {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_budget(const kron::BigInteger& estimate, long budget) {
  if (estimate > kron::BigInteger(budget)) {
    throw BudgetExceeded("census estimate " + estimate.get_str() + " exceeds the budget of " +
                         std::to_string(budget) + "; raise --budget to proceed");
  }
}

nlohmann::json tree_json_brief(const kron::LocalizationTree& t) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [src, snk] : t.labeled_edges()) {
    edges.push_back(nlohmann::json::array({src, snk}));
  }
  return edges;
}

void emit_warnings(const kron::ChiResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "census: enumerated " << r.stats.enumerated << ", pruned " << r.stats.pruned
            << ", cache hits " << r.stats.cache_hits << ", elapsed " << r.stats.elapsed_ms
            << " ms\n";
}

void print_chi_text(const kron::ChiResult& r, bool have_at, long at) {
  std::cout << "chi(" << r.a << "," << r.b << ") = " << r.chi.str() << "\n";
  if (have_at) {
    std::cout << "chi(" << r.a << "," << r.b << ")(" << at
              << ") = " << kron::rational_str(r.chi.eval(kron::BigInteger(at))) << "\n";
  }
}

void print_chi_csv(const kron::ChiResult& r) {
  std::cout << "pair,coefficient,weight_sum,exponent,contribution\n";
  for (const auto& s : r.summands) {
    std::cout << s.pair.text() << ',' << kron::rational_str(s.coefficient) << ','
              << s.weight_sum.get_str() << ',' << s.exponent << ',' << s.contribution.str()
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Euler characteristics of Kronecker moduli spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // let global --workers/--budget appear after the subcommand too

  int workers = 1;
  if (const char* env = std::getenv("KRONMOD_WORKERS")) {
    workers = std::max(1, std::atoi(env));
  }
  long budget = 50000000;
  app.add_option("--workers", workers, "worker threads for the censuses")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", budget, "maximum census candidates before refusing (exit 3)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  // chi
  long chi_a = 0, chi_b = 0, chi_at = 0;
  std::string chi_format = "text";
  auto* chi = app.add_subcommand("chi", "exact chi(a,b) as a polynomial in the arrow count m");
  chi->add_option("a", chi_a, "source dimension")->required();
  chi->add_option("b", chi_b, "sink dimension")->required();
  chi->add_option("--at", chi_at, "also evaluate at this integer m");
  chi->add_option("--format", chi_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // chi-pair
  std::string cp_text, cp_format = "text";
  auto* cp = app.add_subcommand("chi-pair", "chi of a single partition-pair stratum");
  cp->add_option("pair", cp_text, "pair such as '1*2 | 1*3'")->required();
  cp->add_option("--format", cp_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // enumerate
  std::string en_text, en_format = "text";
  bool en_stable = false;
  long en_limit = 0;
  auto* en = app.add_subcommand("enumerate", "list spanning trees of a pair support");
  en->add_option("pair", en_text, "pair such as '1*2 | 1*3'")->required();
  en->add_flag("--stable-only", en_stable, "only stable trees");
  en->add_option("--limit", en_limit, "stop after this many trees (0 = all)");
  en->add_option("--format", en_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // closed-form
  long cf_a = 0, cf_k = 0;
  std::string cf_format = "text";
  auto* cf = app.add_subcommand("closed-form",
                                "closed forms for a level-1 sources against ka+1 level-1 sinks");
  cf->add_option("a", cf_a, "number of sources")->required();
  cf->add_option("k", cf_k, "each source keeps degree k+1")->required();
  cf->add_option("--format", cf_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // bounds
  long bd_amax = 0, bd_m = 0;
  std::string bd_format = "csv";
  auto* bd = app.add_subcommand("bounds", "chi values against the explicit upper bound");
  bd->add_option("a_max", bd_amax, "largest a in the table")->required();
  bd->add_option("m", bd_m, "arrow count (m >= 3)")->required();
  bd->add_option("--format", bd_format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));

  // split-demo
  std::string sd_file, sd_source, sd_format = "text";
  long sd_chains = 0;
  auto* sd = app.add_subcommand("split-demo", "refine a localization tree to level one");
  sd->add_option("tree", sd_file, "tree JSON file ('-' for stdin)")->required();
  sd->add_option("--source", sd_source, "source to split first (default: first level >= 2)");
  sd->add_option("--chains", sd_chains, "also list up to this many explicit chains");
  sd->add_option("--format", sd_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  // verify
  bool vf_full = false;
  auto* vf = app.add_subcommand("verify", "run the built-in cross-check suite");
  vf->add_flag("--full", vf_full, "include the heavier checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*chi) {
      check_budget(kron::chi_census_estimate(chi_a, chi_b), budget);
      kron::ChiResult r = kron::chi_kronecker(chi_a, chi_b, workers);
      emit_warnings(r);
      bool have_at = chi->count("--at") > 0;
      if (chi_format == "json") {
        nlohmann::json j = r.to_json();
        if (have_at) {
          j["value_at"] = {{"m", chi_at},
                           {"value", kron::rational_str(r.chi.eval(kron::BigInteger(chi_at)))}};
        }
        std::cout << j.dump(2) << "\n";
      } else if (chi_format == "csv") {
        print_chi_csv(r);
      } else {
        print_chi_text(r, have_at, chi_at);
      }
      return 0;
    }

    if (*cp) {
      kron::PartitionPair pair = kron::PartitionPair::parse(cp_text);
      check_budget(kron::cayley_count(pair.a.hat(), pair.b.hat()), budget);
      kron::ChiResult r = kron::chi_partition_pair(pair, workers);
      emit_warnings(r);
      const kron::ChiSummand& s = r.summands.front();
      if (cp_format == "json") {
        std::cout << r.to_json().dump(2) << "\n";
      } else {
        std::cout << "pair " << s.pair.text() << "\n";
        std::cout << "weight_sum " << s.weight_sum.get_str() << "\n";
        std::cout << "chi_pair " << s.weight_sum.get_str() << "*m^" << s.exponent << "\n";
        std::cout << "coefficient " << kron::rational_str(s.coefficient) << "\n";
        std::cout << "contribution " << s.contribution.str() << "\n";
      }
      return 0;
    }

    if (*en) {
      kron::PartitionPair pair = kron::PartitionPair::parse(en_text);
      check_budget(kron::cayley_count(pair.a.hat(), pair.b.hat()), budget);
      kron::SupportQuiver q = kron::SupportQuiver::from_pair(pair);
      kron::CensusOptions opt;
      opt.stable_only = en_stable;
      long printed = 0;
      nlohmann::json trees = nlohmann::json::array();
      kron::for_each_spanning_tree(q, [&](const kron::LocalizationTree& t) {
        ++printed;
        if (en_format == "json") {
          trees.push_back(tree_json_brief(t));
        } else {
          std::cout << t.text() << "--\n";
        }
        return en_limit == 0 || printed < en_limit;
      }, opt);
      if (en_format == "json") {
        nlohmann::json j;
        j["support"] = q.to_json();
        j["stable_only"] = en_stable;
        j["count"] = printed;
        j["trees"] = std::move(trees);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "total " << printed << "\n";
      }
      return 0;
    }

    if (*cf) {
      kron::BigInteger count = kron::labeled_stable_tree_count(cf_a, cf_k);
      kron::BigRational tsum = kron::t_weight_sum_closed_form(cf_a, cf_k);
      kron::RationalPolynomial poly = kron::chi_trivial_closed_form(cf_a, cf_k);
      if (cf_format == "json") {
        nlohmann::json j;
        j["a"] = cf_a;
        j["k"] = cf_k;
        j["labeled_count"] = count.get_str();
        j["t_weight_sum"] = kron::rational_str(tsum);
        j["chi"] = poly.to_json();
        j["chi_text"] = poly.str();
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "labeled stable trees " << count.get_str() << "\n";
        std::cout << "orbit weight sum " << kron::rational_str(tsum) << "\n";
        std::cout << "chi stratum " << poly.str() << "\n";
      }
      return 0;
    }

    if (*bd) {
      auto rows = kron::bound_table(bd_amax, bd_m, workers);
      if (bd_format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
          nlohmann::json j;
          j["a"] = r.a;
          j["b"] = r.b;
          j["m"] = r.m;
          j["chi"] = kron::rational_str(r.chi_value);
          j["upper_bound"] = r.upper_bound.str(12);
          j["ratio"] = r.ratio.str(12);
          j["k"] = kron::rational_str(r.k);
          j["f"] = r.f.str(12);
          j["g"] = r.g.str(12);
          j["h"] = r.h.str(12);
          j["i_triv"] = r.i_triv.is_nan() ? "nan" : r.i_triv.str(12);
          j["schur_root"] = r.schur_root;
          j["dimension"] = r.dimension;
          arr.push_back(std::move(j));
        }
        std::cout << arr.dump(2) << "\n";
      } else if (bd_format == "text") {
        for (const auto& r : rows) {
          std::cout << "a=" << r.a << " b=" << r.b << " chi=" << kron::rational_str(r.chi_value)
                    << " bound=" << r.upper_bound.str(12) << " ratio=" << r.ratio.str(12)
                    << " dim=" << r.dimension << "\n";
        }
      } else {
        std::cout << kron::bound_table_csv(rows);
      }
      return 0;
    }

    if (*sd) {
      nlohmann::json input;
      if (sd_file == "-") {
        std::cin >> input;
      } else {
        std::ifstream in(sd_file);
        if (!in) throw std::invalid_argument("cannot open '" + sd_file + "'");
        in >> input;
      }
      kron::LocalizationTree t = kron::LocalizationTree::from_json(input);
      std::string source = sd_source;
      if (source.empty()) {
        for (const auto& v : t.support().sources()) {
          if (v.level >= 2) {
            source = v.label;
            break;
          }
        }
        if (source.empty()) {
          throw std::invalid_argument("every source already has level 1; nothing to split");
        }
      }
      auto moves = kron::find_valid_splits(t, source);
      kron::RefineOutcome outcome = kron::refine_to_trivial(t);
      std::vector<kron::SplitChain> chains;
      if (sd_chains > 0) chains = kron::refine_chains(t, static_cast<std::size_t>(sd_chains));
      if (sd_format == "json") {
        nlohmann::json j;
        j["input"] = t.to_json();
        j["stable"] = kron::is_stable(t);
        j["source"] = source;
        j["moves"] = nlohmann::json::array();
        for (const auto& mv : moves) j["moves"].push_back(kron::split_move_to_json(mv));
        j["terminals"] = nlohmann::json::array();
        for (std::size_t i = 0; i < outcome.terminals.size(); ++i) {
          nlohmann::json jt;
          jt["code"] = outcome.codes[i];
          jt["chains"] = outcome.chain_counts[i];
          jt["tree"] = outcome.terminals[i].to_json();
          j["terminals"].push_back(std::move(jt));
        }
        j["total_chains"] = outcome.total_chains;
        if (sd_chains > 0) {
          j["chains"] = nlohmann::json::array();
          for (const auto& ch : chains) {
            nlohmann::json jc = nlohmann::json::array();
            for (const auto& mv : ch.moves) jc.push_back(kron::split_move_to_json(mv));
            j["chains"].push_back(std::move(jc));
          }
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "input:\n" << t.text();
        std::cout << "stable " << (kron::is_stable(t) ? "yes" : "no") << "\n";
        std::cout << "splits of " << source << ": " << moves.size() << "\n";
        for (const auto& mv : moves) {
          std::cout << "  shared " << mv.shared_sink << "  j1 {";
          for (const auto& l : mv.j1) std::cout << ' ' << l;
          std::cout << " }  j2 {";
          for (const auto& l : mv.j2) std::cout << ' ' << l;
          std::cout << " }\n";
        }
        std::cout << "terminals " << outcome.terminals.size() << "\n";
        for (std::size_t i = 0; i < outcome.terminals.size(); ++i) {
          std::cout << "chains " << outcome.chain_counts[i] << " code " << outcome.codes[i]
                    << "\n"
                    << outcome.terminals[i].text();
        }
        std::cout << "total chains " << outcome.total_chains << "\n";
        for (std::size_t c = 0; c < chains.size(); ++c) {
          std::cout << "chain " << (c + 1) << ":";
          for (const auto& mv : chains[c].moves) {
            std::cout << " [" << mv.source << " @ " << mv.shared_sink << "]";
          }
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (*vf) {
      kron::VerifyReport report = kron::run_verify(vf_full, workers);
      for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " - " << c.detail << "\n";
        std::cerr << c.name << " took " << c.elapsed_ms << " ms\n";
      }
      int failed = report.failures();
      std::cout << "passed " << (report.checks.size() - static_cast<std::size_t>(failed)) << "/"
                << report.checks.size() << "\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
