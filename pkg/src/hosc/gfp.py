"""Greatest-fixed-point membership for conjunctive pair functionals.

Every relation decided in this package is the gfp of a functional whose
clauses are plain conjunctions: a pair belongs to ``F(R)`` iff a local test
passes and a finite list of obligation pairs lies in ``R``.  For such
functionals a pair is in the gfp exactly when every pair reachable through
obligations passes its local test, so a worklist over a monotonically
growing set of assumed pairs decides membership.  On success that set is a
post-fixed point containing the query, i.e. a witnessing simulation.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Optional, TypeVar

P = TypeVar("P", bound=Hashable)

Obligations = Callable[[P], Optional[Iterable[P]]]


def gfp_member(start: P, obligations: Obligations) -> tuple[bool, set]:
    """Return ``(verdict, assumed)``.

    ``obligations(pair)`` returns ``None`` when the local test fails and
    otherwise the pairs that must also hold.
    """
    assumed = {start}
    stack = [start]
    while stack:
        pair = stack.pop()
        needs = obligations(pair)
        if needs is None:
            return False, assumed
        for nxt in needs:
            if nxt not in assumed:
                assumed.add(nxt)
                stack.append(nxt)
    return True, assumed


def is_post_fixed(relation: Iterable[P], obligations: Obligations) -> bool:
    """True iff ``relation`` is contained in its image under the functional."""
    rel = set(relation)
    for pair in rel:
        needs = obligations(pair)
        if needs is None or any(n not in rel for n in needs):
            return False
    return True
