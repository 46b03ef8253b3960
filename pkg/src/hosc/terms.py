"""Abstract syntax shared by session types and session contracts.

Both languages have the same shape: a terminal, input and output prefixes
carrying either a base type or a nested term, labelled offers and
selections, recursion and variables.  Each shape is an abstract base class
with one concrete subclass per language, so structural algorithms
(substitution, unfolding, guardedness, duality) are written once and
rebuild nodes with ``type(node)(...)``.

Terms are immutable and hashable.  Equality is structural and
name-sensitive (no alpha-conversion); offers and selections compare as
label-keyed maps.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

TYPE = "type"
CONTRACT = "contract"


class IllFormedTerm(ValueError):
    """A term violates a structural precondition (open, unguarded, ...)."""


# ---------------------------------------------------------------------------
# Base types


@dataclass(frozen=True)
class Base:
    """A base type such as ``int`` used as a first-order message."""

    name: str

    def __str__(self) -> str:
        return self.name


class BaseOrder:
    """A reflexive, transitive order on base type names.

    >>> order = BaseOrder.default()
    >>> order.leq("int", "real"), order.leq("real", "int")
    (True, False)
    """

    def __init__(self, names: Iterable[str] = (), pairs: Iterable[tuple[str, str]] = ()):
        pairs = list(pairs)
        self.names = frozenset(names) | {n for p in pairs for n in p}
        closure = {(n, n) for n in self.names} | set(pairs)
        changed = True
        while changed:
            changed = False
            for a, b in list(closure):
                for c, d in list(closure):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
        self.pairs = frozenset(closure)

    @classmethod
    def default(cls) -> "BaseOrder":
        return cls(["int", "real", "bool", "id", "addr"], [("int", "real")])

    @classmethod
    def from_lines(cls, lines: Iterable[str], extend_default: bool = True) -> "BaseOrder":
        """Read ``a <= b`` lines (``#`` comments, bare names register a type)."""
        names: set[str] = set()
        pairs: list[tuple[str, str]] = []
        if extend_default:
            d = cls.default()
            names |= d.names
            pairs += [p for p in d.pairs if p[0] != p[1]]
        for lineno, raw in enumerate(lines, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "<=" in line:
                lhs, rhs = (s.strip() for s in line.split("<=", 1))
                if not (lhs.isidentifier() and rhs.isidentifier()):
                    raise ValueError(f"line {lineno}: malformed base-order pair {raw.strip()!r}")
                pairs.append((lhs, rhs))
            elif line.isidentifier():
                names.add(line)
            else:
                raise ValueError(f"line {lineno}: malformed base-order line {raw.strip()!r}")
        return cls(names, pairs)

    def leq(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.pairs

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BaseOrder) and self.pairs == other.pairs and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.names, self.pairs))

    def __repr__(self) -> str:
        strict = sorted(p for p in self.pairs if p[0] != p[1])
        return f"BaseOrder({sorted(self.names)}, {strict})"


# ---------------------------------------------------------------------------
# Terms


class Term:
    """Common base of every type and contract node."""

    lang: str = ""
    __slots__ = ()

    def children(self) -> Iterator["Term"]:
        return iter(())

    def __str__(self) -> str:
        from .syntax import print_term

        return print_term(self)


def _cached_hash(self) -> int:
    return self._hash


def _eq(self, other) -> bool:
    if self is other:
        return True
    if type(self) is not type(other) or self._hash != other._hash:
        return False
    return all(getattr(self, f) == getattr(other, f) for f in self._fields)


def _node(cls):
    """Freeze ``cls`` as a dataclass whose hash is computed once."""
    cls = dataclass(frozen=True, eq=False, repr=True)(cls)
    cls._fields = tuple(f.name for f in cls.__dataclass_fields__.values() if f.name != "_hash")
    cls.__hash__ = _cached_hash
    cls.__eq__ = _eq
    return cls


Message = Union[Base, Term]


@_node
class Stop(Term):
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(type(self).__name__))


@_node
class Prefix(Term):
    msg: Message
    cont: Term
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.msg, self.cont)))

    def children(self):
        if isinstance(self.msg, Term):
            yield self.msg
        yield self.cont


class Input(Prefix):
    __slots__ = ()


class Output(Prefix):
    __slots__ = ()


@_node
class Sum(Term):
    """Labelled offer or selection; ``entries`` is stored sorted by label."""

    entries: tuple
    _hash: int = field(init=False, repr=False, compare=False)

    def __init__(self, entries: Union[Mapping[str, Term], Iterable[tuple[str, Term]]]):
        items = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        if not items:
            raise IllFormedTerm(f"{type(self).__name__} needs at least one entry")
        labels = [l for l, _ in items]
        if len(set(labels)) != len(labels):
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise IllFormedTerm(f"duplicate labels {dup} in {type(self).__name__}")
        object.__setattr__(self, "entries", tuple(sorted(items, key=lambda kv: kv[0])))
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.entries)))

    def __post_init__(self):  # pragma: no cover - custom __init__ sets everything
        pass

    @property
    def labels(self) -> frozenset:
        return frozenset(l for l, _ in self.entries)

    def as_dict(self) -> dict[str, Term]:
        return dict(self.entries)

    def children(self):
        for _, t in self.entries:
            yield t


class Offer(Sum):
    """Branch on types, external sum on contracts."""

    __slots__ = ()


class Select(Sum):
    """Choice on types, internal sum on contracts."""

    __slots__ = ()


@_node
class Rec(Term):
    var: str
    body: Term
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.var, self.body)))

    def children(self):
        yield self.body


@_node
class Var(Term):
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.name)))


# Session types
class End(Stop):
    lang = TYPE
    __slots__ = ()


class TIn(Input):
    lang = TYPE
    __slots__ = ()


class TOut(Output):
    lang = TYPE
    __slots__ = ()


class Branch(Offer):
    lang = TYPE
    __slots__ = ()


class Choice(Select):
    lang = TYPE
    __slots__ = ()


class TRec(Rec):
    lang = TYPE
    __slots__ = ()


class TVar(Var):
    lang = TYPE
    __slots__ = ()


# Session contracts
class Unit(Stop):
    lang = CONTRACT
    __slots__ = ()


class CIn(Input):
    lang = CONTRACT
    __slots__ = ()


class COut(Output):
    lang = CONTRACT
    __slots__ = ()


class ExtSum(Offer):
    lang = CONTRACT
    __slots__ = ()


class IntSum(Select):
    lang = CONTRACT
    __slots__ = ()


class CRec(Rec):
    lang = CONTRACT
    __slots__ = ()


class CVar(Var):
    lang = CONTRACT
    __slots__ = ()


@dataclass(frozen=True)
class Constructors:
    stop: type
    inp: type
    out: type
    offer: type
    select: type
    rec: type
    var: type


CONSTRUCTORS = {
    TYPE: Constructors(End, TIn, TOut, Branch, Choice, TRec, TVar),
    CONTRACT: Constructors(Unit, CIn, COut, ExtSum, IntSum, CRec, CVar),
}

END = End()
UNIT = Unit()


def struct_eq(t1: Term, t2: Term) -> bool:
    return t1 == t2


# ---------------------------------------------------------------------------
# Substitutions


class Substitution(Mapping[str, Term]):
    """A finite map from variables to (normally closed) terms.

    ``s1.compose(s2)`` is defined on both domains and prefers ``s2`` where
    they overlap, so that ``apply_subst(apply_subst(t, s1), s2)`` equals
    ``apply_subst(t, s2.compose(s1))`` for closed ranges.
    """

    __slots__ = ("_map",)

    def __init__(self, bindings: Mapping[str, Term] | Iterable[tuple[str, Term]] = ()):
        self._map = dict(bindings)

    def __getitem__(self, key: str) -> Term:
        return self._map[key]

    def __iter__(self):
        return iter(self._map)

    def __len__(self) -> int:
        return len(self._map)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k} -> {v}" for k, v in self._map.items())
        return "{" + inner + "}"

    def restrict(self, var: str) -> "Substitution":
        if var not in self._map:
            return self
        return Substitution((k, v) for k, v in self._map.items() if k != var)

    def extend(self, var: str, term: Term) -> "Substitution":
        m = dict(self._map)
        m[var] = term
        return Substitution(m)

    def compose(self, other: "Substitution") -> "Substitution":
        m = dict(self._map)
        m.update(other._map)
        return Substitution(m)

    def map(self, fn) -> "Substitution":
        return Substitution((k, fn(v)) for k, v in self._map.items())


EMPTY_SUBST = Substitution()


def apply_subst(term: Term, s: Mapping[str, Term]) -> Term:
    """Apply ``s`` to the free variables of ``term``.

    Under ``rec y`` the restriction of ``s`` away from ``y`` is used; no
    renaming is performed.
    """
    if not s:
        return term
    if isinstance(term, Var):
        return s.get(term.name, term)
    if isinstance(term, Stop):
        return term
    if isinstance(term, Prefix):
        msg = apply_subst(term.msg, s) if isinstance(term.msg, Term) else term.msg
        return type(term)(msg, apply_subst(term.cont, s))
    if isinstance(term, Sum):
        return type(term)([(l, apply_subst(t, s)) for l, t in term.entries])
    if isinstance(term, Rec):
        if term.var in s:
            s = {k: v for k, v in s.items() if k != term.var}
        return type(term)(term.var, apply_subst(term.body, s))
    raise TypeError(f"not a term: {term!r}")


def subst1(term: Term, var: str, value: Term) -> Term:
    return apply_subst(term, {var: value})


# ---------------------------------------------------------------------------
# Structural predicates


@functools.lru_cache(maxsize=1 << 16)
def free_vars(term: Term) -> frozenset:
    if isinstance(term, Var):
        return frozenset([term.name])
    if isinstance(term, Rec):
        return free_vars(term.body) - {term.var}
    out: frozenset = frozenset()
    for c in term.children():
        out |= free_vars(c)
    return out


def is_closed(term: Term) -> bool:
    return not free_vars(term)


def _var_guarded(var: str, term: Term, under: bool) -> bool:
    if isinstance(term, Var):
        return term.name != var or under
    if isinstance(term, Rec):
        if term.var == var:
            return True
        return _var_guarded(var, term.body, under)
    return all(_var_guarded(var, c, True) for c in term.children())


@functools.lru_cache(maxsize=1 << 16)
def is_guarded(term: Term) -> bool:
    """Every ``rec X.T`` subterm has each free ``X`` in ``T`` below a non-rec constructor."""
    if isinstance(term, Rec) and not _var_guarded(term.var, term.body, False):
        return False
    return all(is_guarded(c) for c in term.children())


def is_m_closed(term: Term) -> bool:
    """True when every message of a prefix in continuation position is closed."""
    if isinstance(term, (Stop, Var)):
        return True
    if isinstance(term, Rec):
        return is_m_closed(term.body)
    if isinstance(term, Prefix):
        if isinstance(term.msg, Term) and not is_closed(term.msg):
            return False
        return is_m_closed(term.cont)
    return all(is_m_closed(t) for _, t in term.entries)


def require_wellformed(*terms: Term) -> None:
    """Raise :class:`IllFormedTerm` unless every term is closed and guarded."""
    for t in terms:
        if not isinstance(t, Term):
            raise TypeError(f"expected a term, got {t!r}")
        fv = free_vars(t)
        if fv:
            raise IllFormedTerm(f"term {t} has free variables {sorted(fv)}")
        if not is_guarded(t):
            raise IllFormedTerm(f"term {t} is not guarded")


def require_lang(lang: str, *terms: Term) -> None:
    for t in terms:
        if t.lang != lang:
            raise IllFormedTerm(f"expected a session {lang}, got {t}")


@functools.lru_cache(maxsize=1 << 16)
def unfold(term: Term) -> Term:
    """Unfold top-level recursion until a non-``rec`` constructor surfaces.

    Raises :class:`IllFormedTerm` if the term cannot be unfolded (an
    unguarded or open head, e.g. ``rec X.X``).
    """
    seen = 0
    limit = _rec_nesting(term) + 1
    t = term
    while isinstance(t, Rec):
        if seen > limit:
            raise IllFormedTerm(f"unfolding of {term} does not terminate")
        t = subst1(t.body, t.var, t)
        seen += 1
    if isinstance(t, Var):
        raise IllFormedTerm(f"unfolding of {term} reaches the variable {t.name}")
    return t


def _rec_nesting(term: Term) -> int:
    n = 0
    while isinstance(term, Rec):
        n += 1
        term = term.body
    return n


def size(term: Term) -> int:
    return 1 + sum(size(c) for c in term.children())


def subterms(term: Term) -> Iterator[Term]:
    """All syntactic subterms, message positions included (pre-order)."""
    yield term
    for c in term.children():
        yield from subterms(c)


def base_names(term: Term) -> set[str]:
    out = set()
    for t in subterms(term):
        if isinstance(t, Prefix) and isinstance(t.msg, Base):
            out.add(t.msg.name)
    return out


def labels_of(term: Term) -> set[str]:
    out = set()
    for t in subterms(term):
        if isinstance(t, Sum):
            out |= t.labels
    return out
