"""Higher-order session types and session contracts.

Terms, their translation, transition semantics, compliance, subtyping and
subcontract preorders, and several duality operators.
"""

from .duality import cplmt, dual, endpoints_dual, inner_subst, mcl, mclo, stdual
from .encoding import decode, encode
from .interaction import Oracle, compliant, config_step, interacts
from .lts import SINK, Action, bisimilar, can_ok, export_lts, is_stable, reachable, step
from .preorders import falsify_set_leq, peer_equiv, peer_leq, peer_leq_via_types, syn_peer_leq
from .subtyping import check_type_simulation, subtype, type_equiv
from .syntax import ParseError, parse_contract, parse_type, print_term
from .terms import (
    BaseOrder,
    IllFormedTerm,
    Substitution,
    apply_subst,
    free_vars,
    is_closed,
    is_guarded,
    is_m_closed,
    struct_eq,
    unfold,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BaseOrder",
    "IllFormedTerm",
    "Oracle",
    "ParseError",
    "SINK",
    "Substitution",
    "apply_subst",
    "bisimilar",
    "can_ok",
    "check_type_simulation",
    "compliant",
    "config_step",
    "cplmt",
    "decode",
    "dual",
    "encode",
    "endpoints_dual",
    "export_lts",
    "falsify_set_leq",
    "free_vars",
    "inner_subst",
    "interacts",
    "is_closed",
    "is_guarded",
    "is_m_closed",
    "is_stable",
    "mcl",
    "mclo",
    "parse_contract",
    "parse_type",
    "peer_equiv",
    "peer_leq",
    "peer_leq_via_types",
    "print_term",
    "reachable",
    "stdual",
    "step",
    "struct_eq",
    "subtype",
    "syn_peer_leq",
    "type_equiv",
    "unfold",
]
