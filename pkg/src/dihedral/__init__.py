"""Odd dihedral mod-p representations, their Serre invariants and theta-series checks."""
from __future__ import annotations

from .classgroup import FormClassGroup, class_group, smith_normal_form, wide_class_number
from .cyclotomic import (
    CycElt,
    ResElt,
    ResidueField,
    build_residue_field,
    cyc_arith,
    cyclotomic_poly,
    reduce_mod_P,
)
from .errors import *  # noqa: F401,F403
from .galoisrep import (
    ClassCharacter,
    DihedralRep,
    LiftCase,
    SerreInvariants,
    WeightReport,
    characters_of,
    conductor,
    exceptionality,
    frob_det,
    frob_trace,
    lift_case,
    make_character,
    make_rep,
    no_char0_lift_same_level,
    rep_from_exponents,
    serre_invariants,
    sigma_conjugate,
)
from .heckeold import (
    OldformBlock,
    ap_zero_stabilize,
    char_poly,
    degeneracy_embed,
    tp_action_level_divisible,
    tp_matrix,
)
from .kernels import BACKEND
from .modcheck import classify_reducible, conductor_divides_level, verify_modularity
from .quadfield import (
    Form,
    SplittingType,
    compose,
    fundamental_unit_norm,
    is_fundamental_discriminant,
    kronecker_symbol,
    prime_to_class,
    reduce_form,
    splitting_type,
)
from .serretrick import AuxiliaryPrime, find_auxiliary, residue_symbol, twisted_character
from .thetaseries import IdealCharacter, QExpansion, hecke_consistency, ideals_of_norm, reduce_qexp, theta_coeffs

__version__ = "0.1.0"
