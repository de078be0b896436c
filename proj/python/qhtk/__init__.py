"""Exact-arithmetic discriminants, homology and spectral sequences.

Thin re-export of the compiled extension; everything is computed in exact
integer/rational arithmetic.
"""

from qhtk._core import (
    cobordism_check,
    collapse_page,
    dehn_twist,
    det222,
    embed_rank2,
    gw_solve,
    homology,
    homology_k,
    hyperdet_schlafli,
    is_even_form,
    is_orientable,
    kernel_basis,
    kernel_search,
    quadratic_discriminant,
    run_cli,
    smith_normal_form,
    solve,
    spectral_page,
    three_sphere_example,
    verify_convergence,
)

__all__ = [
    "cobordism_check",
    "collapse_page",
    "dehn_twist",
    "det222",
    "embed_rank2",
    "gw_solve",
    "homology",
    "homology_k",
    "hyperdet_schlafli",
    "is_even_form",
    "is_orientable",
    "kernel_basis",
    "kernel_search",
    "quadratic_discriminant",
    "run_cli",
    "smith_normal_form",
    "solve",
    "spectral_page",
    "three_sphere_example",
    "verify_convergence",
]
