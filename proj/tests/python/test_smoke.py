"""Smoke tests for the kronmoduli extension module."""

import json
import math
import os
from fractions import Fraction

import pytest

import kronmoduli as km

CHI_23 = "1/2*m^4 - 4/3*m^3 + m^2 - 1/6*m"
CHI_23_VALUES = [0, 1, 13, 58, 170, 395, 791, 1428, 2388, 3765]


def tree_json(support_sources, support_sinks, edges):
    return json.dumps(
        {
            "support": {
                "sources": [{"label": l, "level": lv} for l, lv in support_sources],
                "sinks": [{"label": l, "level": lv} for l, lv in support_sinks],
            },
            "edges": [list(e) for e in edges],
        }
    )


def test_chi_polynomial_and_values():
    assert km.chi_polynomial(2, 3) == CHI_23
    for m, expect in enumerate(CHI_23_VALUES, start=1):
        assert km.chi_value(2, 3, m) == expect
    assert km.chi_value(1, 1, 7) == 7
    assert km.chi_value(3, 4, 4) == 703


def test_chi_report_shape():
    rep = km.chi(2, 3)
    assert rep["a"] == 2 and rep["b"] == 3
    assert rep["chi_text"] == CHI_23
    assert len(rep["summands"]) == 6
    first = rep["summands"][0]
    assert first["pair_text"] == "1*2 | 1*3"
    assert first["coefficient"] == "1/12"
    assert rep["warnings"] == []
    assert "elapsed_ms" not in json.dumps(rep)


def test_chi_value_type_is_python_int():
    v = km.chi_value(4, 5, 10)
    assert isinstance(v, int) and v > 0
    with pytest.raises(Exception):
        km.chi_value(2, 4, 3)  # not coprime


def test_fractions_round_trip():
    assert km.mps_coefficient("1*2 | 1*3") == Fraction(1, 12)
    assert km.mps_coefficient("1*2 | 1*1+2*1") == Fraction(-1, 8)
    assert km.t_weight_sum(2, 1) == Fraction(1, 2)
    assert km.t_weight_sum(2, 2) == Fraction(1, 8)
    assert km.t_weight_sum(1, 3) == Fraction(1, 24)
    assert isinstance(km.t_weight_sum(2, 1), Fraction)


def test_partitions_and_counts():
    assert km.enumerate_partitions(4) == ["1*4", "1*2+2*1", "1*1+3*1", "2*2", "4*1"]
    assert km.cayley_count(3, 4) == 3**3 * 4**2
    assert km.spanning_tree_count("1*2 | 1*3") == 12
    assert km.total_weight_sum("1*2 | 1*3") == 12
    assert km.stable_weight_sum("1*2 | 1*3") == 6
    assert km.labeled_stable_tree_count(4, 1) == 3000
    assert km.chi_trivial_polynomial(1, 1) == "m^2"
    assert km.chi_trivial_polynomial(2, 1) == "6*m^4"


def test_tree_operations():
    star = tree_json(
        [("i_1_1", 1), ("i_1_2", 1)],
        [("j_3_1", 3)],
        [("i_1_1", "j_3_1"), ("i_1_2", "j_3_1")],
    )
    assert km.tree_is_stable(star)
    assert km.tree_weight(star) == 9
    assert km.automorphism_weight(star) == Fraction(1, 2)

    single = tree_json([("i_2_1", 2)], [("j_3_1", 3)], [("i_2_1", "j_3_1")])
    moves = km.split_moves(single, "i_2_1")
    assert len(moves) == 1
    mv = moves[0]
    assert mv["shared_sink"] == "j_3_1"
    refined = km.apply_split(single, "i_2_1", mv["shared_sink"], mv["j1"], mv["j2"])
    assert km.tree_is_stable(refined)
    assert km.canonical_code(refined) == km.canonical_code(star)


def test_refine_demo_tree():
    path = os.path.join(os.environ["KRONMOD_EXAMPLES"], "split-demo-tree1.json")
    with open(path) as fh:
        demo = fh.read()
    out = km.refine_to_trivial(demo)
    assert out["total_chains"] == 6
    assert len(out["terminals"]) == 2
    assert sorted(out["chain_counts"]) == [2, 4]
    for terminal, code in zip(out["terminals"], out["codes"]):
        assert km.tree_is_stable(terminal)
        assert km.canonical_code(terminal) == code


def test_forms_and_dualities():
    assert km.euler_form(1, 0, 0, 1, 5) == -5
    assert km.moduli_dimension(2, 3, 3) == 6
    assert km.is_imaginary_schur_root(2, 3, 3)
    assert not km.is_imaginary_schur_root(1, 3, 3)
    with pytest.raises(Exception):
        km.is_imaginary_schur_root(1, 1, 2)
    d = km.dualities(2, 3, 4)
    assert tuple(d["transpose"]) == (3, 2)
    assert tuple(d["reflection"]) == (2, 5)


def test_asymptotics():
    v = km.asymptotics(3, 1)
    assert v["f"] == pytest.approx(2.2493405784, rel=1e-9)
    assert v["g"] == pytest.approx(5.5835189384, rel=1e-9)
    assert v["i_triv"] == pytest.approx(3.1972245773, rel=1e-9)
    assert v["h"] == pytest.approx(v["g"] / v["f"], rel=1e-12)
    assert math.isnan(km.asymptotics(3, 3, 2)["i_triv"])
    lo, hi = km.interval(3)
    assert lo == pytest.approx(0.3819660112501051, abs=1e-12)
    assert hi == pytest.approx(2.618033988749895, abs=1e-12)
    assert km.min_h_on_grid(3, 101) == pytest.approx(2.482363, abs=1e-4)
    assert 1.2e8 < km.chi_upper_bound(2, 3, 3) < 1.3e8


def test_bound_table_csv():
    csv = km.bound_table_csv(2, 3)
    lines = csv.strip().splitlines()
    assert lines[0] == "a,b,m,chi,upper_bound,ratio,k,f,g,h,i_triv,schur_root,dimension"
    assert len(lines) == 6  # header + (1,1) (1,2) (2,1) (2,3) (2,5)


def test_run_verify_quick():
    rows = km.run_verify(False)
    assert rows and all(r["passed"] for r in rows)
