"""Two-party interaction of contracts and peer compliance.

Higher-order synchronisations are licensed by an :class:`Oracle`, a
relation on contracts supplied by the caller.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional

from .lts import DEFAULT_STATE_LIMIT, Action, Label, StateLimitExceeded, step
from .terms import CONTRACT, Base, BaseOrder, Term, Unit, require_lang, require_wellformed


class Oracle:
    """A decision procedure for a relation on contracts, with declared properties.

    Results are memoised per pair.  The flags are promises made by whoever
    built the oracle; :meth:`validate` samples pairs looking for a
    counterexample to each declared flag.
    """

    def __init__(
        self,
        name: str,
        decide: Callable[[Term, Term], bool],
        *,
        reflexive: bool = False,
        transitive: bool = False,
        symmetric: bool = False,
    ):
        self.name = name
        self._decide = decide
        self.reflexive = reflexive
        self.transitive = transitive
        self.symmetric = symmetric
        self._memo: dict = {}
        self._lock = threading.Lock()

    @property
    def preorder(self) -> bool:
        return self.reflexive and self.transitive

    def decide(self, s1: Term, s2: Term) -> bool:
        key = (s1, s2)
        hit = self._memo.get(key)
        if hit is None:
            hit = bool(self._decide(s1, s2))
            with self._lock:
                self._memo[key] = hit
        return hit

    __call__ = decide

    def __repr__(self) -> str:
        flags = [f for f in ("reflexive", "transitive", "symmetric") if getattr(self, f)]
        return f"Oracle({self.name!r}, {'/'.join(flags) or 'no properties'})"

    def validate(self, samples: Iterable[Term]) -> list[tuple[str, tuple]]:
        """Refute declared flags on ``samples``; returns ``(flag, witness)`` pairs."""
        samples = list(samples)
        found = []
        if self.reflexive:
            for s in samples:
                if not self.decide(s, s):
                    found.append(("reflexive", (s,)))
                    break
        if self.symmetric:
            hit = next(((a, b) for a in samples for b in samples if self.decide(a, b) and not self.decide(b, a)), None)
            if hit:
                found.append(("symmetric", hit))
        if self.transitive:
            hit = next(
                (
                    (a, b, c)
                    for a in samples
                    for b in samples
                    if self.decide(a, b)
                    for c in samples
                    if self.decide(b, c) and not self.decide(a, c)
                ),
                None,
            )
            if hit:
                found.append(("transitive", hit))
        return found


def empty_oracle() -> Oracle:
    return Oracle("empty", lambda a, b: False, transitive=True, symmetric=True)


def identity_oracle() -> Oracle:
    return Oracle("identity", lambda a, b: a == b, reflexive=True, transitive=True, symmetric=True)


def table_oracle(pairs: Iterable[tuple[Term, Term]], name: str = "table") -> Oracle:
    """The finite relation ``pairs``; its flags are computed, not assumed."""
    rel = frozenset(pairs)
    require_lang(CONTRACT, *(t for p in rel for t in p))
    symmetric = all((b, a) in rel for a, b in rel)
    transitive = all((a, d) in rel for a, b in rel for c, d in rel if b == c)
    return Oracle(name, lambda a, b: (a, b) in rel, transitive=transitive, symmetric=symmetric)


def table_oracle_from_file(path, base: Optional[BaseOrder] = None) -> Oracle:
    """Read ``lhs <= rhs`` lines (contract syntax, ``#`` comments)."""
    from .syntax import parse_contract

    pairs = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count("<=") != 1:
            raise ValueError(f"{path}:{lineno}: expected 'lhs <= rhs'")
        lhs, rhs = line.split("<=")
        try:
            pairs.append((parse_contract(lhs.strip(), base), parse_contract(rhs.strip(), base)))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return table_oracle(pairs, name=f"table:{path}")


def peer_oracle(base: Optional[BaseOrder] = None) -> Oracle:
    """The peer subcontract preorder itself, used as an oracle."""
    from .preorders import peer_leq

    base = base or BaseOrder.default()
    return Oracle("peer", lambda a, b: peer_leq(a, b, base), reflexive=True, transitive=True)


def union_oracle(*oracles: Oracle) -> Oracle:
    return Oracle(
        "+".join(o.name for o in oracles),
        lambda a, b: any(o.decide(a, b) for o in oracles),
        reflexive=any(o.reflexive for o in oracles),
        symmetric=all(o.symmetric for o in oracles),
    )


def builtin_oracles(base: Optional[BaseOrder] = None) -> dict[str, Callable[..., Oracle]]:
    return {
        "empty": empty_oracle,
        "identity": identity_oracle,
        "peer": lambda: peer_oracle(base),
        "table": lambda path: table_oracle_from_file(path, base),
        "union": union_oracle,
    }


def oracle_from_name(name: str, base: Optional[BaseOrder] = None) -> Oracle:
    """Build an oracle from ``empty``, ``identity``, ``peer`` or ``table:<path>``."""
    if name.startswith("table:"):
        return table_oracle_from_file(name[len("table:"):], base)
    makers = builtin_oracles(base)
    if name in ("empty", "identity", "peer"):
        return makers[name]()
    raise ValueError(f"unknown oracle {name!r}")


# ---------------------------------------------------------------------------
# Interaction


def interacts(a1: Action, a2: Action, b: Oracle, base: Optional[BaseOrder] = None) -> bool:
    """Whether two visible actions synchronise."""
    if {a1.kind, a2.kind} != {"?", "!"}:
        return False
    p1, p2 = a1.payload, a2.payload
    out_first = a1.kind == "!"
    if isinstance(p1, Label) and isinstance(p2, Label):
        return p1 == p2
    if isinstance(p1, Base) and isinstance(p2, Base):
        base = base or BaseOrder.default()
        return base.leq(p1.name, p2.name) if out_first else base.leq(p2.name, p1.name)
    if isinstance(p1, Term) and isinstance(p2, Term):
        return b.decide(p1, p2) if out_first else b.decide(p2, p1)
    return False


@dataclass(frozen=True)
class Config:
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{self.left} || {self.right}"


def config_step(c: Config, b: Oracle, base: Optional[BaseOrder] = None) -> set[Config]:
    """Silent moves of a configuration: independent tau moves and synchronisations."""
    out = set()
    lmoves, rmoves = step(c.left), step(c.right)
    for a, l2 in lmoves:
        if a.kind == "tau":
            out.add(Config(l2, c.right))
    for a, r2 in rmoves:
        if a.kind == "tau":
            out.add(Config(c.left, r2))
    for a1, l2 in lmoves:
        if not a1.visible:
            continue
        for a2, r2 in rmoves:
            if a2.visible and interacts(a1, a2, b, base):
                out.add(Config(l2, r2))
    return out


def compliance_counterexample(
    rho: Term,
    sigma: Term,
    b: Oracle,
    base: Optional[BaseOrder] = None,
    limit: int = DEFAULT_STATE_LIMIT,
) -> Optional[list[Config]]:
    """A path to a stuck configuration where some party cannot succeed, if any."""
    require_lang(CONTRACT, rho, sigma)
    require_wellformed(rho, sigma)
    base = base or BaseOrder.default()
    start = Config(rho, sigma)
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        nxt = config_step(c, b, base)
        if not nxt:
            if not (isinstance(c.left, Unit) and isinstance(c.right, Unit)):
                path = []
                while c is not None:
                    path.append(c)
                    c = parent[c]
                return path[::-1]
            continue
        for d in nxt:
            if d not in parent:
                if len(parent) >= limit:
                    raise StateLimitExceeded(f"more than {limit} configurations reachable")
                parent[d] = c
                queue.append(d)
    return None


def compliant(rho: Term, sigma: Term, b: Oracle, base: Optional[BaseOrder] = None, limit: int = DEFAULT_STATE_LIMIT) -> bool:
    """Peer compliance of ``rho`` and ``sigma`` under ``b``.

    Every reachable configuration with no silent move must have both
    parties equal to the success contract; endless interaction is fine.
    """
    return compliance_counterexample(rho, sigma, b, base, limit) is None
