"""Pseudo-planar functions over F_{2^n}, their relative difference sets in
the Galois ring GR(4, n), and the derived 5-class association schemes —
all arithmetic exact."""

from .exact import GaussInt, GaussRat
from .field import GF2n
from .functions import (
    SparsePoly,
    is_pseudoplanar,
    pseudoplanar_witness,
    construct_known_monomial,
    construct_binomial1,
    construct_shifted_binomial,
    binomial1_criterion,
    shifted_binomial_criterion,
    known_family_hits,
    known_hits_closure,
)
from .galois_ring import GR4
from .groupring import GroupVec, SpectrumVec, build_df, verify_rds
from .scheme import (
    Partition6,
    SchemeReport,
    build_partition,
    build_report,
    bm_fuse,
    closed_form_P,
    closed_form_Q,
    fourier_spectrum,
    spectrum_closed_form,
)
from .search import (
    SearchSpace,
    search_monomials,
    search_quad_binomials,
    merge_results,
)

__version__ = "1.0.0"

__all__ = [
    "GF2n", "GR4", "GaussInt", "GaussRat", "SparsePoly",
    "is_pseudoplanar", "pseudoplanar_witness",
    "construct_known_monomial", "construct_binomial1",
    "construct_shifted_binomial", "binomial1_criterion",
    "shifted_binomial_criterion", "known_family_hits", "known_hits_closure",
    "GroupVec", "SpectrumVec", "build_df", "verify_rds",
    "Partition6", "SchemeReport", "build_partition", "build_report",
    "bm_fuse", "closed_form_P", "closed_form_Q",
    "fourier_spectrum", "spectrum_closed_form",
    "SearchSpace", "search_monomials", "search_quad_binomials",
    "merge_results",
]
