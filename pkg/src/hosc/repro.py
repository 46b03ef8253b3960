"""Named worked examples with their expected verdicts.

Each entry runs a handful of checks and reports whether every one came out
as expected.  ``run_all`` drives the ``repro`` CLI subcommand and part of
the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .duality import cplmt, dual, endpoints_dual, endpoints_dual_qualified, mcl, stdual
from .encoding import encode
from .interaction import compliant, empty_oracle, peer_oracle, table_oracle
from .lts import bisimilar
from .preorders import falsify_set_leq, peer_leq, syn_peer_leq
from .subtyping import check_type_simulation, subtype
from .syntax import parse_contract as C
from .syntax import parse_type as T
from .terms import is_m_closed, unfold


@dataclass
class Check:
    what: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class Outcome:
    name: str
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def bar_menu_width() -> list[Check]:
    small = T("&{espresso:end}")
    large = T("&{espresso:end, deka:end, double-espresso:end}")
    return [
        Check("smaller branch is a subtype", True, subtype(small, large)),
        Check("larger branch is not a subtype", False, subtype(large, small)),
    ]


def self_input_recursion() -> list[Check]:
    s, t = T("rec X.?X.X"), T("rec Y.?Y.?Y.Y")
    rel = {(s, t), (T("?(rec X.?X.X).rec X.?X.X"), T("?(rec Y.?Y.?Y.Y).?(rec Y.?Y.?Y.Y).rec Y.?Y.?Y.Y"))}
    rel |= {(T("?(rec X.?X.X).rec X.?X.X"), T("?(rec Y.?Y.?Y.Y).rec Y.?Y.?Y.Y"))}
    rel |= {(s, T("?(rec Y.?Y.?Y.Y).rec Y.?Y.?Y.Y"))}
    flipped = {(b, a) for a, b in rel}
    return [
        Check("one-step loop below two-step loop", True, subtype(s, t)),
        Check("two-step loop below one-step loop", True, subtype(t, s)),
        Check("hand-written four-pair relation is a simulation", True, check_type_simulation(rel)),
        Check("its converse is a simulation", True, check_type_simulation(flipped)),
        Check("contract images are related", True, peer_leq(encode(s), encode(t))),
    ]


def customer_choice_narrowing() -> list[Check]:
    italian = T("+{espresso:end, deka:end, double-espresso:end}")
    plain = T("+{espresso:end}")
    return [
        Check("wider selection is a subtype", True, subtype(italian, plain)),
        Check("narrower selection is not", False, subtype(plain, italian)),
    ]


def base_variance() -> list[Check]:
    return [
        Check("input covariant", True, subtype(T("?int.end"), T("?real.end"))),
        Check("output contravariant", False, subtype(T("!int.end"), T("!real.end"))),
        Check("output accepts the wider base type", True, subtype(T("!real.end"), T("!int.end"))),
    ]


def empty_oracle_irreflexive() -> list[Check]:
    s = C("!(1).1")
    return [Check("output of 1 is not below itself without an oracle", False, syn_peer_leq(s, s, empty_oracle()))]


def _chain_oracle():
    return table_oracle([(C("1"), C("!l.!l.1")), (C("!l.!l.1"), C("!l.1"))], name="chain")


def non_transitive_oracle() -> list[Check]:
    b = _chain_oracle()
    s1, s2 = C("!(!l.!l.1).1"), C("!(1).1")
    rho = C("?(!l.1).1")
    witness = falsify_set_leq(s1, s2, b, depth=3)
    return [
        Check("oracle is not transitive", False, b.transitive),
        Check("oracle misses the composite pair", False, b.decide(C("1"), C("!l.1"))),
        Check("structural preorder holds", True, syn_peer_leq(s1, s2, b)),
        Check("partner complies with the left contract", True, compliant(rho, s1, b)),
        Check("partner does not comply with the right contract", False, compliant(rho, s2, b)),
        Check("search finds that partner", rho, witness),
    ]


def empty_oracle_vacuous() -> list[Check]:
    s = C("!(1).1")
    b = empty_oracle()
    return [
        Check("structural preorder fails", False, syn_peer_leq(s, s, b)),
        Check("no partner distinguishes the contract from itself", None, falsify_set_leq(s, s, b, depth=3)),
        Check("its standard dual cannot interact with it", False, compliant(stdual(s), s, b)),
    ]


def stdual_self_input() -> list[Check]:
    s = C("rec x.?(x).1")
    p = peer_oracle()
    return [
        Check("not message-closed", False, is_m_closed(s)),
        Check("standard dual", C("rec x.!(x).1"), stdual(s)),
        Check("standard dual fails to comply", False, compliant(s, stdual(s), p)),
        Check("dual complies", True, compliant(s, dual(s), p)),
        Check("stdual and unfold do not commute", False, stdual(unfold(s)) == unfold(stdual(s))),
    ]


def mcl_computations() -> list[Check]:
    r = C("rec x.?(x).1")
    s = C("rec x.rec y.?(y).x")
    expected = C("rec x.rec y.?(rec y.?(y).rec x.rec y.?(y).x).x")
    return [
        Check("closure of the self-input loop", C("rec x.?(rec x.?(x).1).1"), mcl(r)),
        Check("closure of the nested loop", expected, mcl(s)),
        Check("closures are message-closed", True, is_m_closed(mcl(r)) and is_m_closed(mcl(s))),
        Check("closures are bisimilar to the input", True, bisimilar(r, mcl(r)) and bisimilar(s, mcl(s))),
    ]


def cplmt_open_message() -> list[Check]:
    s = C("rec x.rec y.?(y).x")
    return [
        Check("complement", C("rec x.rec y.!(rec y.?(y).x).x"), cplmt(s)),
        Check("complement is not message-closed", False, is_m_closed(cplmt(s))),
    ]


def cplmt_breaks_compliance() -> list[Check]:
    from .duality import on_types
    from .subtyping import type_equiv

    s = C("rec x.rec y.?(y).x")
    p = peer_oracle()
    t = T("rec X.rec Y.?Y.X")
    comp = on_types(cplmt)
    return [
        Check("complement fails to comply", False, compliant(s, cplmt(s), p)),
        Check("dual complies", True, compliant(s, dual(s), p)),
        Check("complement and unfold do not commute", False, type_equiv(comp(unfold(t)), unfold(comp(t)))),
    ]


def endpoint_self_sending() -> list[Check]:
    tp, tm = T("rec X.!X.end"), T("?(rec X.!X.end).end")
    return [
        Check("unfold", T("!(rec X.!X.end).end"), unfold(tp)),
        Check("dual relates the endpoints", True, endpoints_dual(tp, tm, "dual")),
        Check("standard dual does not", False, endpoints_dual(tp, tm, "stdual")),
    ]


def endpoint_replicated_self_sending() -> list[Check]:
    tx, ty = ("un", T("rec X.!X.end")), ("un", T("?(rec X.!X.end).end"))
    return [
        Check("complement relates the endpoints", True, endpoints_dual_qualified(tx, ty, "cplmt")),
        Check("standard dual does not", False, endpoints_dual_qualified(tx, ty, "stdual")),
        Check("mismatched qualifiers are rejected", False, endpoints_dual_qualified(("lin", tx[1]), ty, "cplmt")),
    ]


EXAMPLES: dict[str, Callable[[], list[Check]]] = {
    "bar-menu-width": bar_menu_width,
    "self-input-recursion": self_input_recursion,
    "customer-choice-narrowing": customer_choice_narrowing,
    "base-variance": base_variance,
    "empty-oracle-irreflexive": empty_oracle_irreflexive,
    "non-transitive-oracle": non_transitive_oracle,
    "empty-oracle-vacuous": empty_oracle_vacuous,
    "stdual-self-input": stdual_self_input,
    "mcl-computations": mcl_computations,
    "cplmt-open-message": cplmt_open_message,
    "cplmt-breaks-compliance": cplmt_breaks_compliance,
    "endpoint-self-sending": endpoint_self_sending,
    "endpoint-replicated-self-sending": endpoint_replicated_self_sending,
}


def run(name: str) -> Outcome:
    return Outcome(name, EXAMPLES[name]())


def run_all() -> list[Outcome]:
    return [run(name) for name in EXAMPLES]
