"""Gradings on the Jordan algebra of upper triangular matrices, in exact arithmetic."""

from .classify import (
    LabelError,
    canonical,
    census,
    count_elementary,
    count_mt,
    enumerate_classes,
    explicit_isomorphism,
    labels_isomorphic,
    mt_canonical,
    elementary_canonical,
    parse_label,
)
from .grading import (
    Elementary,
    GradedIso,
    Grading,
    GradingError,
    MT,
    apply_automorphism,
    check_grading,
    elementary_grading,
    grading_from_involution,
    induced_grading,
    mt_grading,
    quotient_grading,
    standard_grading,
    verify_grading,
)
from .group import FiniteAbelianGroup, GroupHom, quotient_mod_involution
from .identities import (
    Term,
    f_mu,
    is_graded_identity,
    is_jordan_good,
    parse_term,
    separating_identity,
    tau_set,
)
from .jordan import Subspace, UTMatrix, associator, jordan_product, mirror_map
from .normalize import canonicalize, corner_frame, strictly_upper_chain

__all__ = [
    "Elementary",
    "FiniteAbelianGroup",
    "GradedIso",
    "Grading",
    "GradingError",
    "GroupHom",
    "LabelError",
    "MT",
    "Subspace",
    "Term",
    "UTMatrix",
    "apply_automorphism",
    "associator",
    "canonical",
    "canonicalize",
    "census",
    "check_grading",
    "corner_frame",
    "count_elementary",
    "count_mt",
    "elementary_canonical",
    "elementary_grading",
    "enumerate_classes",
    "explicit_isomorphism",
    "f_mu",
    "grading_from_involution",
    "induced_grading",
    "is_graded_identity",
    "is_jordan_good",
    "jordan_product",
    "labels_isomorphic",
    "mirror_map",
    "mt_canonical",
    "mt_grading",
    "parse_label",
    "parse_term",
    "quotient_grading",
    "quotient_mod_involution",
    "separating_identity",
    "standard_grading",
    "strictly_upper_chain",
    "tau_set",
    "verify_grading",
]
