"""Exact Euler characteristics of Kronecker moduli spaces.

The heavy lifting happens in the compiled extension ``kronmoduli._core``:
an exact census of stable labeled spanning trees per partition pair,
assembled into the Euler-characteristic polynomial in the arrow count m,
plus splitting moves on localization trees and asymptotic upper bounds.
"""

from ._core import (
    __version__,
    apply_split,
    asymptotics,
    automorphism_weight,
    bound_table_csv,
    canonical_code,
    cayley_count,
    chi,
    chi_pair,
    chi_polynomial,
    chi_trivial_polynomial,
    chi_upper_bound,
    chi_value,
    dualities,
    enumerate_partitions,
    euler_form,
    interval,
    is_imaginary_schur_root,
    labeled_stable_tree_count,
    min_h_on_grid,
    moduli_dimension,
    mps_coefficient,
    refine_to_trivial,
    run_verify,
    spanning_tree_count,
    split_moves,
    stable_weight_sum,
    t_weight_sum,
    total_weight_sum,
    tree_is_stable,
    tree_weight,
)

__all__ = [
    "__version__",
    "apply_split",
    "asymptotics",
    "automorphism_weight",
    "bound_table_csv",
    "canonical_code",
    "cayley_count",
    "chi",
    "chi_pair",
    "chi_polynomial",
    "chi_trivial_polynomial",
    "chi_upper_bound",
    "chi_value",
    "dualities",
    "enumerate_partitions",
    "euler_form",
    "interval",
    "is_imaginary_schur_root",
    "labeled_stable_tree_count",
    "min_h_on_grid",
    "moduli_dimension",
    "mps_coefficient",
    "refine_to_trivial",
    "run_verify",
    "spanning_tree_count",
    "split_moves",
    "stable_weight_sum",
    "t_weight_sum",
    "total_weight_sum",
    "tree_is_stable",
    "tree_weight",
]
