"""Duality operators on types and contracts.

* :func:`stdual` swaps the direction of every prefix and sum, leaving
  messages untouched.
* :func:`mcl` rewrites a contract into a bisimilar one whose messages are
  all closed, by recording the unfoldings a run would perform.
* :func:`dual` is ``stdual`` after ``mcl``; it always yields a compliant
  partner when the oracle is a preorder.
* :func:`cplmt` is the complement, which substitutes recursion only inside
  message positions; it does not always yield a compliant partner.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Union

from .encoding import decode, encode
from .lts import step
from .subtyping import type_equiv
from .terms import (
    CONTRACT,
    CONSTRUCTORS,
    EMPTY_SUBST,
    TYPE,
    Base,
    BaseOrder,
    IllFormedTerm,
    Input,
    Offer,
    Prefix,
    Rec,
    Stop,
    Substitution,
    Term,
    Var,
    apply_subst,
    free_vars,
    require_lang,
    require_wellformed,
    unfold,
)


def _flip(term: Term, rebuild_msg: Callable, rec_case: Callable) -> Term:
    """Shared skeleton: swap polarity, map messages, delegate ``rec``."""
    k = CONSTRUCTORS[term.lang]
    if isinstance(term, (Stop, Var)):
        return term
    if isinstance(term, Prefix):
        ctor = k.out if isinstance(term, Input) else k.inp
        return ctor(rebuild_msg(term.msg), _flip(term.cont, rebuild_msg, rec_case))
    if isinstance(term, Rec):
        return rec_case(term)
    ctor = k.select if isinstance(term, Offer) else k.offer
    return ctor([(l, _flip(t, rebuild_msg, rec_case)) for l, t in term.entries])


def stdual(term: Term) -> Term:
    """Standard dual, defined on both languages.

    >>> from hosc.syntax import parse_contract
    >>> str(stdual(parse_contract("rec x.?(x).1")))
    'rec x.!(x).1'
    """

    def rec_case(t: Rec) -> Term:
        return type(t)(t.var, stdual(t.body))

    return _flip(term, lambda m: m, rec_case)


def inner_subst(term: Term, var: str, value: Term) -> Term:
    """Replace ``var`` by ``value`` inside message positions only.

    Free occurrences of ``var`` in a message are all replaced; occurrences
    in continuations stay, and a binder of ``var`` stops the traversal.
    ``value`` may be open.
    """
    if isinstance(term, (Stop, Var)):
        return term
    if isinstance(term, Prefix):
        msg = term.msg if isinstance(term.msg, Base) else apply_subst(term.msg, {var: value})
        return type(term)(msg, inner_subst(term.cont, var, value))
    if isinstance(term, Rec):
        if term.var == var:
            return term
        return type(term)(term.var, inner_subst(term.body, var, value))
    return type(term)([(l, inner_subst(t, var, value)) for l, t in term.entries])


def mclo(term: Term, s: Substitution = EMPTY_SUBST) -> Term:
    """M-closure with accumulator ``s``, which must cover the free variables."""
    missing = free_vars(term) - set(s)
    if missing:
        raise IllFormedTerm(f"accumulator does not bind {sorted(missing)}")
    return _mclo(term, s)


def _mclo(term: Term, s: Substitution) -> Term:
    if isinstance(term, (Stop, Var)):
        return term
    if isinstance(term, Prefix):
        msg = term.msg if isinstance(term.msg, Base) else apply_subst(term.msg, s)
        return type(term)(msg, _mclo(term.cont, s))
    if isinstance(term, Rec):
        return type(term)(term.var, _mclo(term.body, s.extend(term.var, apply_subst(term, s))))
    return type(term)([(l, _mclo(t, s)) for l, t in term.entries])


def mcl(term: Term) -> Term:
    """M-closure of a closed contract.

    >>> from hosc.syntax import parse_contract
    >>> str(mcl(parse_contract("rec x.?(x).1")))
    'rec x.?(rec x.?(x).1).1'
    """
    require_lang(CONTRACT, term)
    if free_vars(term):
        raise IllFormedTerm(f"m-closure needs a closed contract, got {term}")
    return _mclo(term, EMPTY_SUBST)


def dual(term: Term) -> Term:
    """``stdual`` of the m-closure."""
    require_wellformed(term)
    return stdual(mcl(term))


def cplmt(term: Term) -> Term:
    """Complement; recursion is pushed into messages by inner substitution.

    >>> from hosc.syntax import parse_contract
    >>> str(cplmt(parse_contract("rec x.rec y.?(y).x")))
    'rec x.rec y.!(rec y.?(y).x).x'
    """

    def rec_case(t: Rec) -> Term:
        return type(t)(t.var, cplmt(inner_subst(t.body, t.var, t)))

    return _flip(term, lambda m: m, rec_case)


# ---------------------------------------------------------------------------
# Type-level helpers and checks

TypeOp = Callable[[Term], Term]


def on_types(op: TypeOp) -> TypeOp:
    """Lift a contract operator to types through the translation."""

    def lifted(t: Term) -> Term:
        return decode(op(encode(t)))

    lifted.__name__ = f"{op.__name__}_on_types"
    return lifted


DUALITIES: dict[str, TypeOp] = {"stdual": stdual, "dual": dual, "cplmt": cplmt}


def endpoints_dual(
    t_plus: Term,
    t_minus: Term,
    d: Union[str, TypeOp] = "dual",
    base: Optional[BaseOrder] = None,
) -> bool:
    """Whether ``t_minus`` is, up to type equivalence, the ``d``-partner of ``t_plus``."""
    require_lang(TYPE, t_plus, t_minus)
    require_wellformed(t_plus, t_minus)
    op = DUALITIES[d] if isinstance(d, str) else d
    return type_equiv(decode(op(encode(t_plus))), t_minus, base)


def endpoints_dual_qualified(
    plus: tuple[str, Term],
    minus: tuple[str, Term],
    d: Union[str, TypeOp] = "dual",
    base: Optional[BaseOrder] = None,
) -> bool:
    """Qualified variant: qualifiers (``lin``/``un``) must agree, pretypes must be partners."""
    (q1, p1), (q2, p2) = plus, minus
    for q in (q1, q2):
        if q not in ("lin", "un"):
            raise ValueError(f"unknown qualifier {q!r}")
    return q1 == q2 and endpoints_dual(p1, p2, d, base)


def is_reasonable_refutation(oracle, samples: Iterable[Term]) -> Optional[tuple[str, Term, Term]]:
    """Look for a related pair among ``samples`` that breaks reasonableness.

    Returns ``(clause, s1, s2)`` for the first violation, where ``clause``
    is ``"unfold"``, ``"polarity"`` or ``"input"``; ``None`` is
    inconclusive.
    """
    samples = list(dict.fromkeys(samples))
    for s1 in samples:
        for s2 in samples:
            if not oracle.decide(s1, s2):
                continue
            if not oracle.decide(unfold(s1), unfold(s2)):
                return ("unfold", s1, s2)
            vis1 = [(a, t) for a, t in step(s1) if a.visible]
            vis2 = [(a, t) for a, t in step(s2) if a.visible]
            if any(a1.kind != a2.kind for a1, _ in vis1 for a2, _ in vis2):
                return ("polarity", s1, s2)
            for a1, t1 in vis1:
                for a2, t2 in vis2:
                    if a1.kind == a2.kind == "?" and isinstance(a1.payload, Term) and isinstance(a2.payload, Term):
                        if not (oracle.decide(a1.payload, a2.payload) and oracle.decide(t1, t2)):
                            return ("input", s1, s2)
    return None
