// Python bindings for the kron library.
//
// Exact integers cross the boundary as Python ints and exact rationals as
// fractions.Fraction, so no precision is lost.  Structured results
// (chi reports, split outcomes, verification reports) are returned as plain
// dicts/lists mirroring the JSON emitted by the kronmod CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "kron/algebra.hpp"
#include "kron/bounds.hpp"
#include "kron/euler.hpp"
#include "kron/partitions.hpp"
#include "kron/quiver.hpp"
#include "kron/splitting.hpp"
#include "kron/trees.hpp"
#include "kron/verify.hpp"

namespace py = pybind11;

namespace {

py::object big_to_py(const kron::BigInteger& z) {
  const std::string s = z.get_str();
  PyObject* raw = PyLong_FromString(s.c_str(), nullptr, 10);
  if (raw == nullptr) throw py::error_already_set();
  return py::reinterpret_steal<py::object>(raw);
}

py::object rat_to_py(const kron::BigRational& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(kron::rational_str(q));
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

kron::PartitionPair pair_arg(const std::string& text) {
  return kron::PartitionPair::parse(text);
}

kron::LocalizationTree tree_arg(const std::string& tree_json) {
  return kron::LocalizationTree::from_json(nlohmann::json::parse(tree_json));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Exact Euler characteristics of Kronecker moduli via tree census, "
      "with splitting moves and asymptotic bounds.";

  // ---- Euler characteristic ------------------------------------------------
  mod.def(
      "chi",
      [](long a, long b, int workers) {
        return json_to_py(kron::chi_kronecker(a, b, workers).to_json());
      },
      py::arg("a"), py::arg("b"), py::arg("workers") = 1,
      "Full chi(a,b) report: polynomial, per-pair summands, census stats.");

  mod.def(
      "chi_polynomial",
      [](long a, long b, int workers) {
        return kron::chi_kronecker(a, b, workers).chi.str();
      },
      py::arg("a"), py::arg("b"), py::arg("workers") = 1,
      "chi(a,b) as a polynomial string in m.");

  mod.def(
      "chi_value",
      [](long a, long b, long m, int workers) {
        kron::BigRational v = kron::chi_kronecker(a, b, workers).chi.eval(m);
        if (v.get_den() != 1) throw std::logic_error("chi evaluated to a non-integer");
        return big_to_py(kron::BigInteger(v.get_num()));
      },
      py::arg("a"), py::arg("b"), py::arg("m"), py::arg("workers") = 1,
      "chi(a,b) evaluated at integer m (always an integer).");

  mod.def(
      "chi_pair",
      [](const std::string& pair, int workers) {
        return json_to_py(kron::chi_partition_pair(pair_arg(pair), workers).to_json());
      },
      py::arg("pair"), py::arg("workers") = 1,
      "Single-summand report for one partition pair, e.g. '1*2 | 1*3'.");

  mod.def(
      "mps_coefficient",
      [](const std::string& pair) { return rat_to_py(kron::mps_coefficient(pair_arg(pair))); },
      py::arg("pair"), "Degeneration coefficient of a partition pair as a Fraction.");

  mod.def(
      "enumerate_partitions",
      [](long n) {
        std::vector<std::string> out;
        for (const auto& p : kron::enumerate_partitions(n)) out.push_back(p.text());
        return out;
      },
      py::arg("n"), "All weighted partitions of n in the documented order.");

  // ---- Tree census ---------------------------------------------------------
  mod.def(
      "stable_weight_sum",
      [](const std::string& pair, int workers) {
        auto q = std::make_shared<kron::SupportQuiver>(
            kron::SupportQuiver::from_pair(pair_arg(pair)));
        return big_to_py(kron::stable_weight_sum(*q, nullptr, workers));
      },
      py::arg("pair"), py::arg("workers") = 1,
      "Exact sum of v(t) over stable labeled spanning trees.");

  mod.def(
      "total_weight_sum",
      [](const std::string& pair, int workers) {
        auto q = kron::SupportQuiver::from_pair(pair_arg(pair));
        return big_to_py(kron::total_weight_sum(q, nullptr, workers));
      },
      py::arg("pair"), py::arg("workers") = 1,
      "Exact sum of v(t) over all labeled spanning trees.");

  mod.def(
      "spanning_tree_count",
      [](const std::string& pair, int workers) {
        auto q = kron::SupportQuiver::from_pair(pair_arg(pair));
        return kron::spanning_tree_count(q, workers);
      },
      py::arg("pair"), py::arg("workers") = 1,
      "Number of labeled spanning trees of the complete bipartite support.");

  mod.def(
      "cayley_count",
      [](long ahat, long bhat) { return big_to_py(kron::cayley_count(ahat, bhat)); },
      py::arg("ahat"), py::arg("bhat"),
      "ahat^(bhat-1) * bhat^(ahat-1): spanning trees of K_{ahat,bhat}.");

  mod.def(
      "labeled_stable_tree_count",
      [](long a, long k) { return big_to_py(kron::labeled_stable_tree_count(a, k)); },
      py::arg("a"), py::arg("k"),
      "Closed-form stable tree count for the trivial pair (a sources, ka+1 sinks).");

  mod.def(
      "t_weight_sum",
      [](long a, long k) { return rat_to_py(kron::t_weight_sum_closed_form(a, k)); },
      py::arg("a"), py::arg("k"),
      "T(a,k) = stable tree count / (a! (ka+1)!) as a Fraction.");

  mod.def(
      "chi_trivial_polynomial",
      [](long a, long k) { return kron::chi_trivial_closed_form(a, k).str(); },
      py::arg("a"), py::arg("k"),
      "Stratum closed form for a level-1 sources against ka+1 level-1 sinks.");

  // ---- Trees, codes, splitting ----------------------------------------------
  mod.def(
      "tree_is_stable", [](const std::string& tree_json) { return kron::is_stable(tree_arg(tree_json)); },
      py::arg("tree_json"), "Stability of a localization tree given as JSON text.");

  mod.def(
      "tree_weight",
      [](const std::string& tree_json) { return big_to_py(kron::tree_weight_v(tree_arg(tree_json))); },
      py::arg("tree_json"), "v(t) = product of l(i) l(j) over the tree's edges.");

  mod.def(
      "canonical_code",
      [](const std::string& tree_json) { return kron::canonical_code(tree_arg(tree_json)); },
      py::arg("tree_json"), "Level-colored canonical code (tree isomorphism invariant).");

  mod.def(
      "automorphism_weight",
      [](const std::string& tree_json) {
        return rat_to_py(kron::automorphism_weight(tree_arg(tree_json)));
      },
      py::arg("tree_json"), "1/|Aut(t)| as a Fraction.");

  mod.def(
      "split_moves",
      [](const std::string& tree_json, const std::string& source) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& mv : kron::find_valid_splits(tree_arg(tree_json), source)) {
          arr.push_back(kron::split_move_to_json(mv));
        }
        return json_to_py(arr);
      },
      py::arg("tree_json"), py::arg("source"),
      "All stability-preserving splits of one higher-level source.");

  mod.def(
      "apply_split",
      [](const std::string& tree_json, const std::string& source,
         const std::string& shared_sink, const std::vector<std::string>& j1,
         const std::vector<std::string>& j2) {
        kron::SplitMove mv{source, shared_sink, j1, j2};
        return kron::apply_split(tree_arg(tree_json), mv).to_json().dump();
      },
      py::arg("tree_json"), py::arg("source"), py::arg("shared_sink"), py::arg("j1"),
      py::arg("j2"), "Apply one split move; returns the refined tree as JSON text.");

  mod.def(
      "refine_to_trivial",
      [](const std::string& tree_json) {
        const kron::RefineOutcome out = kron::refine_to_trivial(tree_arg(tree_json));
        py::list terminals;
        for (const auto& t : out.terminals) terminals.append(t.to_json().dump());
        py::dict d;
        d["terminals"] = terminals;
        d["codes"] = out.codes;
        d["chain_counts"] = out.chain_counts;
        d["total_chains"] = out.total_chains;
        return d;
      },
      py::arg("tree_json"),
      "Exhaustively split until every source has level 1; counts chains and terminals.");

  // ---- Quiver forms and dualities -------------------------------------------
  mod.def("moduli_dimension", &kron::moduli_dimension, py::arg("a"), py::arg("b"), py::arg("m"),
          "dim = 1 - a^2 - b^2 + m a b.");
  mod.def("is_imaginary_schur_root", &kron::is_imaginary_schur_root, py::arg("a"), py::arg("b"),
          py::arg("m"), "a^2 + b^2 < m a b (m >= 3).");
  mod.def(
      "dualities",
      [](long a, long b, long m) {
        const kron::Dualities d = kron::dualities(a, b, m);
        py::dict out;
        out["transpose"] = d.transpose;
        out["reflection"] = d.reflection;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("m"),
      "Transpose (b,a) and reflection (a, m a - b) partners of (a,b).");
  mod.def(
      "euler_form",
      [](long da, long db, long ea, long eb, long m) {
        return big_to_py(kron::euler_form(da, db, ea, eb, m));
      },
      py::arg("da"), py::arg("db"), py::arg("ea"), py::arg("eb"), py::arg("m"),
      "<d,e> = da*ea + db*eb - m*da*eb.");

  // ---- Bounds and asymptotics ------------------------------------------------
  mod.def(
      "chi_upper_bound",
      [](long a, long b, long m) { return kron::chi_upper_bound(a, b, m).to_double(); },
      py::arg("a"), py::arg("b"), py::arg("m"),
      "Rounded-up upper bound for chi(a,b)(m).");

  mod.def(
      "interval",
      [](long m) {
        return py::make_tuple(kron::interval_m1(m).to_double(), kron::interval_m2(m).to_double());
      },
      py::arg("m"), "Inward-rounded endpoints (m1, m2) of the growth-domain interval.");

  mod.def(
      "asymptotics",
      [](long m, long k_num, long k_den) {
        const kron::AsymptoticValues v =
            kron::asymptotic_values(m, kron::make_rational(k_num, k_den));
        py::dict d;
        d["f"] = v.f.to_double();
        d["g"] = v.g.to_double();
        d["h"] = v.h.to_double();
        d["i_triv"] = v.i_triv.to_double();
        return d;
      },
      py::arg("m"), py::arg("k_num"), py::arg("k_den") = 1,
      "Growth-rate curves f, g, h = g/f, i_triv at slope k = k_num/k_den.");

  mod.def(
      "min_h_on_grid",
      [](long m, int points) { return kron::min_h_on_grid(m, points).to_double(); },
      py::arg("m"), py::arg("points"),
      "Minimum of h over an evenly spaced grid on the admissible interval.");

  mod.def(
      "bound_table_csv",
      [](long a_max, long m, int workers) {
        return kron::bound_table_csv(kron::bound_table(a_max, m, workers));
      },
      py::arg("a_max"), py::arg("m"), py::arg("workers") = 1,
      "CSV comparing exact chi values against the upper bound.");

  // ---- Self checks -------------------------------------------------------------
  mod.def(
      "run_verify",
      [](bool full, int workers) {
        const kron::VerifyReport rep = kron::run_verify(full, workers);
        py::list rows;
        for (const auto& c : rep.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["detail"] = c.detail;
          rows.append(d);
        }
        return rows;
      },
      py::arg("full") = false, py::arg("workers") = 1,
      "Run the built-in consistency checks; returns one dict per check.");

  mod.attr("__version__") = "1.0.0";
}
