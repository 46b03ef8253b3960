"""Labelled transitions of a single contract and strong bisimilarity."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .terms import (
    CONTRACT,
    Base,
    Input,
    IntSum,
    ExtSum,
    Prefix,
    Rec,
    Term,
    Unit,
    require_lang,
    require_wellformed,
    subst1,
)

DEFAULT_STATE_LIMIT = 100_000


class StateLimitExceeded(RuntimeError):
    """A state-space exploration went past its configured cap."""


@dataclass(frozen=True)
class Label:
    """A branch/choice label used as a transition payload."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Action:
    """A transition label.

    ``kind`` is ``"?"``, ``"!"``, ``"tau"`` or ``"ok"``; visible actions carry
    a :class:`Label`, a :class:`~hosc.terms.Base` or a contract payload.
    """

    kind: str
    payload: Union[Label, Base, Term, None] = None

    @property
    def visible(self) -> bool:
        return self.kind in ("?", "!")

    def __str__(self) -> str:
        if not self.visible:
            return self.kind
        if isinstance(self.payload, Term):
            return f"{self.kind}({self.payload})"
        return f"{self.kind}{self.payload}"


TAU = Action("tau")
OK = Action("ok")


class _Sink:
    """The state reached after ``ok``; it has no transitions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "SINK"

    __str__ = __repr__


SINK = _Sink()


def step(state) -> frozenset:
    """All ``(action, successor)`` moves of a contract (or of the sink)."""
    if state is SINK:
        return frozenset()
    if isinstance(state, Unit):
        return frozenset([(OK, SINK)])
    if isinstance(state, Prefix):
        return frozenset([(Action("?" if isinstance(state, Input) else "!", state.msg), state.cont)])
    if isinstance(state, ExtSum):
        return frozenset((Action("?", Label(l)), c) for l, c in state.entries)
    if isinstance(state, IntSum):
        if len(state.entries) == 1:
            ((l, c),) = state.entries
            return frozenset([(Action("!", Label(l)), c)])
        return frozenset((TAU, IntSum([(l, c)])) for l, c in state.entries)
    if isinstance(state, Rec):
        return frozenset([(TAU, subst1(state.body, state.var, state))])
    raise TypeError(f"no transitions defined for {state!r}")


def can_ok(state) -> bool:
    return isinstance(state, Unit)


def is_stable(state) -> bool:
    return all(a != TAU for a, _ in step(state))


def _check(*terms: Term) -> None:
    require_lang(CONTRACT, *terms)
    require_wellformed(*terms)


def _explore(roots, limit: int) -> list:
    """States reachable from ``roots`` (sink included), in BFS order."""
    seen = dict.fromkeys(roots)
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        for _, t in step(s):
            if t not in seen:
                if len(seen) >= limit:
                    raise StateLimitExceeded(f"more than {limit} states reachable")
                seen[t] = None
                queue.append(t)
    return list(seen)


def reachable(sigma: Term, limit: int = DEFAULT_STATE_LIMIT) -> frozenset:
    """Contract states reachable from ``sigma`` (the post-``ok`` sink excluded)."""
    _check(sigma)
    return frozenset(s for s in _explore([sigma], limit) if s is not SINK)


def bisimulation_classes(states) -> dict:
    """Map every state of a transition-closed set to its bisimilarity class id."""
    states = list(states)
    block = {s: 0 for s in states}
    n_blocks = 1
    while True:
        sigs: dict = {}
        new_block = {}
        for s in states:
            sig = (block[s], frozenset((a, block[t]) for a, t in step(s)))
            new_block[s] = sigs.setdefault(sig, len(sigs))
        if len(sigs) == n_blocks:
            return new_block
        block, n_blocks = new_block, len(sigs)


def bisimilar(s1: Term, s2: Term, limit: int = DEFAULT_STATE_LIMIT) -> bool:
    """Strong bisimilarity, deciding by partition refinement."""
    _check(s1, s2)
    classes = bisimulation_classes(_explore([s1, s2], limit))
    return classes[s1] == classes[s2]


def _graph(sigma: Term):
    states = sorted(reachable(sigma), key=str)
    index = {s: i for i, s in enumerate(states)}
    edges = []
    for s in states:
        for a, t in sorted(step(s), key=lambda m: (str(m[0]), str(m[1]))):
            if a != OK:
                edges.append((index[s], str(a), index[t]))
    return states, index, edges


def export_lts(sigma: Term, fmt: str = "json") -> str:
    """Serialise the reachable graph of ``sigma`` as ``json`` or ``dot``.

    States are numbered in the order of their printed form; the ``ok``
    transition is shown as a flag on the state rather than as an edge.
    """
    states, index, edges = _graph(sigma)
    if fmt == "json":
        doc = {
            "initial": index[sigma],
            "states": [{"id": i, "term": str(s), "ok": can_ok(s)} for i, s in enumerate(states)],
            "edges": [{"src": a, "label": l, "dst": b} for a, l, b in edges],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)
    if fmt == "dot":
        lines = ["digraph lts {", "  rankdir=LR;"]
        for i, s in enumerate(states):
            attrs = [f"label={json.dumps(str(s), ensure_ascii=False)}"]
            if can_ok(s):
                attrs.append("peripheries=2")
            if i == index[sigma]:
                attrs.append("style=bold")
            lines.append(f"  s{i} [{', '.join(attrs)}];")
        for a, l, b in edges:
            lines.append(f"  s{a} -> s{b} [label={json.dumps(l, ensure_ascii=False)}];")
        lines.append("}")
        return "\n".join(lines)
    raise ValueError(f"unknown LTS format {fmt!r}")


def successors(state, action: Optional[Action] = None) -> list:
    """Successors of ``state``, optionally restricted to one action."""
    return [t for a, t in step(state) if action is None or a == action]
