"""Seeded random generation of closed, guarded terms and of term pairs."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

from .terms import (
    CONSTRUCTORS,
    CONTRACT,
    IllFormedTerm,
    TYPE,
    Base,
    Input,
    Prefix,
    Rec,
    Stop,
    Sum,
    Term,
    is_closed,
    is_guarded,
    unfold,
)


@dataclass(frozen=True)
class GenConfig:
    """Knobs for :func:`generate_terms`.

    ``closed_messages`` makes every message a closed term, which yields
    m-closed contracts.
    """

    max_depth: int = 4
    labels: tuple = ("a", "b", "c")
    base_types: tuple = ("int", "real")
    p_higher_order: float = 0.3
    p_rec: float = 0.3
    seed: int = 0
    lang: str = TYPE
    closed_messages: bool = False
    max_width: int = 3
    message_depth: int = 2

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        if not self.labels:
            raise ValueError("at least one label is required")
        if not self.base_types:
            raise ValueError("at least one base type is required")
        for p in (self.p_higher_order, self.p_rec):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.lang not in (TYPE, CONTRACT):
            raise ValueError(f"unknown language {self.lang!r}")


class _Gen:
    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.k = CONSTRUCTORS[cfg.lang]
        self.counter = 0

    def fresh(self) -> str:
        name = f"{'X' if self.cfg.lang == TYPE else 'x'}{self.counter}"
        self.counter += 1
        return name

    def term(self, depth: int, guarded: tuple, pending: tuple) -> Term:
        """``guarded`` vars may be referenced; ``pending`` ones not yet."""
        rng, k, cfg = self.rng, self.k, self.cfg
        if depth <= 0:
            if guarded and rng.random() < 0.5:
                return k.var(rng.choice(guarded))
            return k.stop()
        choices = ["stop", "base", "sum", "sum"]
        if guarded:
            choices += ["var"]
        if rng.random() < cfg.p_higher_order:
            choices += ["msg"] * 3
        if rng.random() < cfg.p_rec:
            choices += ["rec"] * 3
        kind = rng.choice(choices)
        now_guarded = guarded + pending
        if kind == "stop":
            return k.stop()
        if kind == "var":
            return k.var(rng.choice(guarded))
        if kind == "rec":
            x = self.fresh()
            return k.rec(x, self.term(depth - 1, guarded, pending + (x,)))
        if kind == "base":
            ctor = rng.choice((k.inp, k.out))
            return ctor(Base(rng.choice(cfg.base_types)), self.term(depth - 1, now_guarded, ()))
        if kind == "msg":
            ctor = rng.choice((k.inp, k.out))
            scope = () if cfg.closed_messages else now_guarded
            msg = self.term(min(depth - 1, cfg.message_depth), scope, ())
            return ctor(msg, self.term(depth - 1, now_guarded, ()))
        width = rng.randint(1, min(cfg.max_width, len(cfg.labels)))
        labels = rng.sample(list(cfg.labels), width)
        ctor = rng.choice((k.offer, k.select))
        return ctor([(l, self.term(depth - 1, now_guarded, ())) for l in labels])


def generate_term(cfg: GenConfig, rng: random.Random) -> Term:
    t = _Gen(cfg, rng).term(cfg.max_depth, (), ())
    assert is_closed(t) and is_guarded(t), t
    return t


def generate_terms(cfg: GenConfig, n: int) -> list[Term]:
    """``n`` closed guarded terms, deterministic for ``cfg.seed``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(cfg.seed)
    return [generate_term(cfg, rng) for _ in range(n)]


# ---------------------------------------------------------------------------
# Mutation and pair corpora


def _positions(term: Term, path=()):
    yield path, term
    if isinstance(term, Prefix):
        if isinstance(term.msg, Term):
            yield from _positions(term.msg, path + ("msg",))
        yield from _positions(term.cont, path + ("cont",))
    elif isinstance(term, Sum):
        for l, t in term.entries:
            yield from _positions(t, path + (l,))
    elif isinstance(term, Rec):
        yield from _positions(term.body, path + ("body",))


def _replace_at(term: Term, path: tuple, new: Term) -> Term:
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(term, Prefix):
        if head == "msg":
            return type(term)(_replace_at(term.msg, rest, new), term.cont)
        return type(term)(term.msg, _replace_at(term.cont, rest, new))
    if isinstance(term, Rec):
        return type(term)(term.var, _replace_at(term.body, rest, new))
    return type(term)([(l, _replace_at(t, rest, new) if l == head else t) for l, t in term.entries])


def mutate(term: Term, cfg: GenConfig, rng: random.Random) -> Term:
    """A small random edit that keeps the term closed and guarded."""
    k = CONSTRUCTORS[term.lang]
    for _ in range(20):
        path, sub = rng.choice(list(_positions(term)))
        new: Optional[Term] = None
        if isinstance(sub, Rec):
            try:
                new = unfold(sub)
            except IllFormedTerm:
                new = None
        elif isinstance(sub, Prefix) and isinstance(sub.msg, Base):
            others = [b for b in cfg.base_types if b != sub.msg.name]
            if others:
                new = type(sub)(Base(rng.choice(others)), sub.cont)
        elif isinstance(sub, Sum):
            spare = [l for l in cfg.labels if l not in sub.labels]
            if spare and (len(sub.entries) == 1 or rng.random() < 0.5):
                extra = generate_term(replace(cfg, max_depth=1, lang=term.lang), rng)
                new = type(sub)(list(sub.entries) + [(rng.choice(spare), extra)])
            elif len(sub.entries) > 1:
                drop = rng.choice(sub.entries)
                new = type(sub)([e for e in sub.entries if e != drop])
        elif isinstance(sub, Stop):
            new = generate_term(replace(cfg, max_depth=1, lang=term.lang), rng)
        elif isinstance(sub, Prefix):
            # swap direction of a higher-order prefix
            flipped = k.out if isinstance(sub, Input) else k.inp
            new = flipped(sub.msg, sub.cont)
        if new is not None and new != sub:
            out = _replace_at(term, path, new)
            if is_closed(out) and is_guarded(out):
                return out
    return term


def generate_pairs(cfg: GenConfig, n: int) -> list[tuple[Term, Term]]:
    """``n`` term pairs mixing equal, unfolded, mutated and unrelated pairs."""
    rng = random.Random(cfg.seed)
    pairs = []
    for i in range(n):
        s = generate_term(cfg, rng)
        mode = i % 5
        if mode == 0:
            t = s
        elif mode == 1:
            t = unfold(s) if isinstance(s, Rec) else mutate(s, cfg, rng)
        elif mode in (2, 3):
            t = mutate(s, cfg, rng)
            if rng.random() < 0.5:
                t = mutate(t, cfg, rng)
        else:
            t = generate_term(cfg, rng)
        if rng.random() < 0.5:
            s, t = t, s
        pairs.append((s, t))
    return pairs
