"""Subcontract preorders on session contracts.

* :func:`syn_peer_leq` decides the structural preorder relative to a
  caller-supplied oracle for message comparisons.
* :func:`peer_leq` decides the preorder that is its own oracle: message
  pairs join the same coinductive worklist as continuation pairs.
* :func:`peer_leq_via_types` is a second decider for the same relation,
  going through the type translation and the subtyping algorithm.
* :func:`falsify_set_leq` searches for a partner that complies with the
  left contract but not with the right one.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator, Optional

from .encoding import decode
from .gfp import gfp_member
from .interaction import Oracle, compliant
from .lts import reachable
from .subtyping import subtype
from .terms import (
    CONTRACT,
    UNIT,
    Base,
    BaseOrder,
    CIn,
    COut,
    ExtSum,
    IntSum,
    Term,
    Unit,
    is_closed,
    require_lang,
    require_wellformed,
    subterms,
    unfold,
)

ContractPair = tuple[Term, Term]


def _contract_obligations(pair: ContractPair, base: BaseOrder, messages: Callable) -> Optional[list]:
    """One application of the structural functional.

    ``messages(m1, m2)`` is asked for the pair that must be related on a
    higher-order prefix (already oriented: output messages are swapped) and
    returns extra obligations or ``None``.
    """
    c1, c2 = unfold(pair[0]), unfold(pair[1])
    if isinstance(c1, Unit):
        return [] if isinstance(c2, Unit) else None
    if isinstance(c1, (CIn, COut)):
        if type(c2) is not type(c1):
            return None
        m1, m2 = c1.msg, c2.msg
        inp = isinstance(c1, CIn)
        if isinstance(m1, Base) and isinstance(m2, Base):
            ok = base.leq(m1.name, m2.name) if inp else base.leq(m2.name, m1.name)
            return [(c1.cont, c2.cont)] if ok else None
        if isinstance(m1, Term) and isinstance(m2, Term):
            extra = messages(m1, m2) if inp else messages(m2, m1)
            if extra is None:
                return None
            return [(c1.cont, c2.cont), *extra]
        return None
    if isinstance(c1, ExtSum):
        if not isinstance(c2, ExtSum) or not c1.labels <= c2.labels:
            return None
        right = c2.as_dict()
        return [(c, right[l]) for l, c in c1.entries]
    if isinstance(c1, IntSum):
        if not isinstance(c2, IntSum) or not c2.labels <= c1.labels:
            return None
        left = c1.as_dict()
        return [(left[l], c) for l, c in c2.entries]
    return None


def _check(*terms: Term) -> None:
    require_lang(CONTRACT, *terms)
    require_wellformed(*terms)


def syn_peer_leq(s1: Term, s2: Term, b: Oracle, base: Optional[BaseOrder] = None) -> bool:
    """Structural preorder with message pairs decided by ``b``.

    >>> from hosc.syntax import parse_contract
    >>> from hosc.interaction import empty_oracle
    >>> s = parse_contract("!(1).1")
    >>> syn_peer_leq(s, s, empty_oracle())
    False
    """
    _check(s1, s2)
    base = base or BaseOrder.default()

    def messages(m1, m2):
        return [] if b.decide(m1, m2) else None

    return gfp_member((s1, s2), lambda p: _contract_obligations(p, base, messages))[0]


def peer_leq_relation(s1: Term, s2: Term, base: Optional[BaseOrder] = None) -> tuple[bool, set]:
    """Decide the self-referential preorder; also return the assumed pairs."""
    _check(s1, s2)
    base = base or BaseOrder.default()
    return gfp_member((s1, s2), lambda p: _contract_obligations(p, base, lambda m1, m2: [(m1, m2)]))


def peer_leq(s1: Term, s2: Term, base: Optional[BaseOrder] = None) -> bool:
    return peer_leq_relation(s1, s2, base)[0]


def peer_equiv(s1: Term, s2: Term, base: Optional[BaseOrder] = None) -> bool:
    return peer_leq(s1, s2, base) and peer_leq(s2, s1, base)


def peer_leq_via_types(s1: Term, s2: Term, base: Optional[BaseOrder] = None) -> bool:
    """Decide :func:`peer_leq` by decoding to types and running subtyping."""
    _check(s1, s2)
    return subtype(decode(s1), decode(s2), base)


# ---------------------------------------------------------------------------
# Searching for distinguishing partners


def message_pool(*contracts: Term) -> list[Term]:
    """Closed contracts worth trying as higher-order payloads.

    Closed subterms of every reachable state of the inputs, their two
    duals, and the success contract, deduplicated in a stable order.
    """
    from .duality import dual, stdual

    seen: dict = {UNIT: None}
    for c in contracts:
        for state in sorted(reachable(c), key=str):
            for t in subterms(state):
                if is_closed(t):
                    seen.setdefault(t, None)
    for t in list(seen):
        for d in (stdual(t), dual(t)):
            seen.setdefault(d, None)
    return sorted(seen, key=lambda t: (len(str(t)), str(t)))


def _peers(state: Term, depth: int, b: Oracle, base: BaseOrder, pool: list[Term]) -> Iterator[Term]:
    """Partners shaped to answer every move ``state`` can make, up to ``depth``."""
    from .duality import dual

    if depth <= 0:
        yield dual(state)
        return
    u = unfold(state)
    if isinstance(u, Unit):
        yield UNIT
        return
    if isinstance(u, (CIn, COut)):
        inp = isinstance(u, CIn)
        if isinstance(u.msg, Base):
            t = u.msg.name
            names = sorted(base.names | {t})
            # partner outputs t' with t' <= t, or inputs t' with t <= t'
            msgs = [Base(n) for n in names if (base.leq(n, t) if inp else base.leq(t, n))]
        else:
            m = u.msg
            msgs = [p for p in pool if (b.decide(p, m) if inp else b.decide(m, p))]
        ctor = COut if inp else CIn
        conts = list(_peers(u.cont, depth - 1, b, base, pool))
        for msg in msgs:
            for c in conts:
                yield ctor(msg, c)
        return
    if isinstance(u, IntSum):
        labels = [l for l, _ in u.entries]
        options = [list(_peers(c, depth - 1, b, base, pool)) for _, c in u.entries]
        for combo in itertools.product(*options):
            yield ExtSum(list(zip(labels, combo)))
        return
    if isinstance(u, ExtSum):
        # An internal choice complies iff each of its branches does, so
        # single selections already cover every witness.
        for l, c in u.entries:
            for rest in _peers(c, depth - 1, b, base, pool):
                yield IntSum([(l, rest)])
        return
    raise TypeError(f"unexpected unfolded contract {u!r}")


def candidate_peers(s1: Term, s2: Term, b: Oracle, base: Optional[BaseOrder] = None, depth: int = 3) -> Iterator[Term]:
    """Deterministic stream of distinct candidate partners for ``s1``."""
    _check(s1, s2)
    base = base or BaseOrder.default()
    pool = message_pool(s1, s2)
    seen = set()
    for d in range(1, depth + 1):
        for rho in _peers(s1, d, b, base, pool):
            if rho not in seen:
                seen.add(rho)
                yield rho


def falsify_set_leq(
    s1: Term,
    s2: Term,
    b: Oracle,
    base: Optional[BaseOrder] = None,
    depth: int = 3,
    max_candidates: int = 5_000,
) -> Optional[Term]:
    """A partner complying with ``s1`` but not with ``s2``, or ``None``.

    ``None`` is not a proof of the set-based inclusion: the search only
    covers partners built from the symbols of the inputs.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    base = base or BaseOrder.default()
    for i, rho in enumerate(candidate_peers(s1, s2, b, base, depth)):
        if i >= max_candidates:
            break
        if compliant(rho, s1, b, base) and not compliant(rho, s2, b, base):
            return rho
    return None
