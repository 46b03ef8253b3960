"""Translation between session types and session contracts.

The translation is a structural bijection.  Type variable ``X`` becomes the
contract variable ``x`` (lowercased spelling) and back (uppercased).
"""

from __future__ import annotations

from .terms import (
    CONSTRUCTORS,
    CONTRACT,
    TYPE,
    Base,
    IllFormedTerm,
    Input,
    Offer,
    Prefix,
    Rec,
    Stop,
    Term,
    Var,
)


def type_var_to_contract(name: str) -> str:
    return name.lower()


def contract_var_to_type(name: str) -> str:
    return name.upper()


def _translate(term: Term, src: str, dst: str, rename) -> Term:
    if term.lang != src:
        raise IllFormedTerm(f"expected a session {src}, got {term}")
    k = CONSTRUCTORS[dst]

    def go(t: Term) -> Term:
        if isinstance(t, Stop):
            return k.stop()
        if isinstance(t, Var):
            return k.var(rename(t.name))
        if isinstance(t, Rec):
            return k.rec(rename(t.var), go(t.body))
        if isinstance(t, Prefix):
            msg = t.msg if isinstance(t.msg, Base) else go(t.msg)
            return (k.inp if isinstance(t, Input) else k.out)(msg, go(t.cont))
        cls = k.offer if isinstance(t, Offer) else k.select
        return cls([(l, go(c)) for l, c in t.entries])

    return go(term)


def encode(term: Term) -> Term:
    """Map a session type to the corresponding session contract.

    >>> from hosc.syntax import parse_type
    >>> str(encode(parse_type("rec X.!X.+{a:end}")))
    'rec x.!(x).(+)[!a:1]'
    """
    return _translate(term, TYPE, CONTRACT, type_var_to_contract)


def decode(term: Term) -> Term:
    """Inverse of :func:`encode`."""
    return _translate(term, CONTRACT, TYPE, contract_var_to_type)
