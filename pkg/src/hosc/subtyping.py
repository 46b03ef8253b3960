"""Coinductive subtyping on session types and the induced equivalence."""

from __future__ import annotations

from typing import Iterable, Optional

from .gfp import gfp_member, is_post_fixed
from .terms import (
    TYPE,
    Base,
    BaseOrder,
    Branch,
    Choice,
    End,
    Term,
    TIn,
    TOut,
    require_lang,
    require_wellformed,
    unfold,
)

TypePair = tuple[Term, Term]


def _message_pair(m1, m2, covariant: bool, base: BaseOrder):
    """Obligations for two message payloads; ``None`` when incompatible."""
    if isinstance(m1, Base) and isinstance(m2, Base):
        ok = base.leq(m1.name, m2.name) if covariant else base.leq(m2.name, m1.name)
        return [] if ok else None
    if isinstance(m1, Term) and isinstance(m2, Term):
        return [(m1, m2)] if covariant else [(m2, m1)]
    return None


def type_obligations(pair: TypePair, base: BaseOrder) -> Optional[list[TypePair]]:
    """One application of the subtyping functional to ``pair``.

    Returns the pairs the functional requires, or ``None`` if no clause
    applies.
    """
    left, right = unfold(pair[0]), unfold(pair[1])
    if isinstance(left, End):
        return [] if isinstance(right, End) else None
    if isinstance(left, TIn) or isinstance(left, TOut):
        if type(right) is not type(left):
            return None
        msgs = _message_pair(left.msg, right.msg, isinstance(left, TIn), base)
        if msgs is None:
            return None
        return [(left.cont, right.cont)] + msgs
    if isinstance(left, Branch):
        if not isinstance(right, Branch) or not left.labels <= right.labels:
            return None
        r = right.as_dict()
        return [(t, r[l]) for l, t in left.entries]
    if isinstance(left, Choice):
        if not isinstance(right, Choice) or not right.labels <= left.labels:
            return None
        l_map = left.as_dict()
        return [(l_map[l], t) for l, t in right.entries]
    return None


def subtype_relation(s: Term, t: Term, base: Optional[BaseOrder] = None) -> tuple[bool, set]:
    """Decide ``s <= t`` and return the explored assumption set.

    On a positive answer the set is a type simulation containing ``(s, t)``.
    """
    require_lang(TYPE, s, t)
    require_wellformed(s, t)
    base = base or BaseOrder.default()
    return gfp_member((s, t), lambda p: type_obligations(p, base))


def subtype(s: Term, t: Term, base: Optional[BaseOrder] = None) -> bool:
    """True iff ``s`` is a subtype of ``t``.

    >>> from hosc.syntax import parse_type
    >>> subtype(parse_type("rec X.?X.X"), parse_type("rec Y.?Y.?Y.Y"))
    True
    """
    return subtype_relation(s, t, base)[0]


def type_equiv(s: Term, t: Term, base: Optional[BaseOrder] = None) -> bool:
    return subtype(s, t, base) and subtype(t, s, base)


def check_type_simulation(relation: Iterable[TypePair], base: Optional[BaseOrder] = None) -> bool:
    """True iff every pair of ``relation`` is justified by pairs of ``relation``."""
    relation = set(relation)
    for pair in relation:
        require_lang(TYPE, *pair)
        require_wellformed(*pair)
    base = base or BaseOrder.default()
    return is_post_fixed(relation, lambda p: type_obligations(p, base))
