"""Concrete syntax, pretty printing and a JSON AST for both languages.

Types::

    S ::= end | ?m.S | !m.S | &{l:S, ...} | +{l:S, ...} | rec X.S | X
    m ::= basename | X | (S)

Contracts::

    c ::= 1 | ?m.c | !m.c | &[?l:c, ...] | (+)[!l:c, ...] | rec x.c | x
    m ::= basename | (c)

Type variables are uppercase identifiers (``X``, ``Y1``), contract
variables, labels and base types lowercase ones.  In a contract, ``?l.c`` / ``!l.c``
with ``l`` not a registered base type is read as a singleton sum.  The
printer always emits sums in bracket form and sorts labels.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional

from .terms import (
    CONSTRUCTORS,
    CONTRACT,
    TYPE,
    Base,
    BaseOrder,
    IllFormedTerm,
    Input,
    Offer,
    Prefix,
    Rec,
    Stop,
    Term,
    Var,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


_TOKEN = re.compile(
    r"\s*(?:(?P<punct>\(\+\)\[|&\{|\+\{|&\[|[?!.():,{}\[\]])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)"
    r"|(?P<one>1(?![0-9])))"
)
_KEYWORDS = {"rec", "end"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, lang: str, base: BaseOrder):
        self.text = text
        self.lang = lang
        self.base = base
        self.k = CONSTRUCTORS[lang]
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers
    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.next()
        if v != value or kind == "eof":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos, self.text)
        return pos

    def error(self, msg: str):
        raise ParseError(msg, self.peek()[2], self.text)

    def parse(self) -> Term:
        t = self.term()
        kind, v, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {v!r}", pos, self.text)
        return t

    def is_var_name(self, name: str) -> bool:
        if name in _KEYWORDS or "-" in name:
            return False
        if self.lang == TYPE:
            return name[0].isupper() and name == name.upper()
        return name[0].islower() and name == name.lower()

    def term(self) -> Term:
        kind, v, pos = self.peek()
        k = self.k
        if kind == "eof":
            self.error("unexpected end of input")
        if self.lang == TYPE and v == "end" and kind == "ident":
            self.next()
            return k.stop()
        if self.lang == CONTRACT and kind == "one":
            self.next()
            return k.stop()
        if v in ("?", "!") and kind == "punct":
            return self.prefix()
        if kind == "punct" and v in ("&{", "+{") and self.lang == TYPE:
            return self.sum(v, "}", None)
        if kind == "punct" and v in ("&[", "(+)[") and self.lang == CONTRACT:
            return self.sum(v, "]", "?" if v == "&[" else "!")
        if kind == "ident" and v == "rec":
            self.next()
            _, name, npos = self.next()
            if not name or not self.is_var_name(name):
                raise ParseError(f"bad recursion variable {name!r} for a session {self.lang}", npos, self.text)
            self.expect(".")
            return k.rec(name, self.term())
        if kind == "ident" and self.is_var_name(v):
            self.next()
            return k.var(v)
        if kind == "punct" and v == "(":
            self.next()
            t = self.term()
            self.expect(")")
            return t
        self.error(f"unexpected token {v!r} in a session {self.lang}")

    def prefix(self) -> Term:
        _, pol, _ = self.next()
        k = self.k
        kind, v, pos = self.peek()
        msg: Any
        if kind == "punct" and v == "(":
            self.next()
            msg = self.term()
            self.expect(")")
        elif kind == "ident" and v in self.base:
            self.next()
            msg = Base(v)
        elif kind == "ident" and self.lang == TYPE and self.is_var_name(v):
            self.next()
            msg = k.var(v)
        elif kind == "ident" and self.lang == CONTRACT and v[0].islower() and v not in _KEYWORDS:
            # singleton sum: ?l.c / !l.c
            self.next()
            self.expect(".")
            cont = self.term()
            cls = k.offer if pol == "?" else k.select
            return cls({v: cont})
        elif kind == "ident":
            raise ParseError(f"unknown base type {v!r} in message position", pos, self.text)
        else:
            raise ParseError(f"expected a message after {pol!r}", pos, self.text)
        self.expect(".")
        cont = self.term()
        return (k.inp if pol == "?" else k.out)(msg, cont)

    def sum(self, opener: str, closer: str, pol: Optional[str]) -> Term:
        start = self.next()[2]
        entries = []
        seen = set()
        while True:
            if pol is not None:
                self.expect(pol)
            kind, label, lpos = self.next()
            if kind != "ident" or not label[0].islower() or label in _KEYWORDS:
                raise ParseError(f"expected a label, found {label!r}", lpos, self.text)
            if label in seen:
                raise ParseError(f"duplicate label {label!r}", lpos, self.text)
            seen.add(label)
            self.expect(":")
            entries.append((label, self.term()))
            kind, v, pos = self.next()
            if v == closer and kind == "punct":
                break
            if v != ",":
                raise ParseError(f"expected ',' or {closer!r}, found {v!r}", pos, self.text)
        cls = self.k.offer if opener in ("&{", "&[") else self.k.select
        try:
            return cls(entries)
        except IllFormedTerm as exc:  # pragma: no cover - duplicates caught above
            raise ParseError(str(exc), start, self.text) from exc


def parse_type(text: str, base: Optional[BaseOrder] = None) -> Term:
    """Parse a session type; closedness and guardedness are not checked."""
    return _Parser(text, TYPE, base or BaseOrder.default()).parse()


def parse_contract(text: str, base: Optional[BaseOrder] = None) -> Term:
    """Parse a session contract; closedness and guardedness are not checked."""
    return _Parser(text, CONTRACT, base or BaseOrder.default()).parse()


def parse_term(text: str, base: Optional[BaseOrder] = None, lang: str = "auto") -> Term:
    """Parse in ``lang``; ``auto`` tries a type first, then a contract."""
    if lang == TYPE:
        return parse_type(text, base)
    if lang == CONTRACT:
        return parse_contract(text, base)
    try:
        return parse_type(text, base)
    except ParseError as type_err:
        try:
            return parse_contract(text, base)
        except ParseError as contract_err:
            best = max((type_err, contract_err), key=lambda e: e.pos)
            raise best from None


# ---------------------------------------------------------------------------
# Printing


def _msg_str(msg, lang: str) -> str:
    if isinstance(msg, Base):
        return msg.name
    if lang == TYPE and isinstance(msg, Var):
        return msg.name
    return f"({print_term(msg)})"


def print_term(term: Term) -> str:
    """Canonical text; ``parse(print_term(t)) == t``."""
    lang = term.lang
    if isinstance(term, Stop):
        return "end" if lang == TYPE else "1"
    if isinstance(term, Var):
        return term.name
    if isinstance(term, Rec):
        return f"rec {term.var}.{print_term(term.body)}"
    if isinstance(term, Prefix):
        pol = "?" if isinstance(term, Input) else "!"
        return f"{pol}{_msg_str(term.msg, lang)}.{print_term(term.cont)}"
    if lang == TYPE:
        open_, close, pol = ("&{", "}", "") if isinstance(term, Offer) else ("+{", "}", "")
    else:
        open_, close, pol = ("&[", "]", "?") if isinstance(term, Offer) else ("(+)[", "]", "!")
    body = ", ".join(f"{pol}{l}:{print_term(t)}" for l, t in term.entries)
    return f"{open_}{body}{close}"


# ---------------------------------------------------------------------------
# JSON AST


def to_json(term: Term) -> dict:
    if isinstance(term, Stop):
        return {"k": "end"}
    if isinstance(term, Var):
        return {"k": "var", "name": term.name}
    if isinstance(term, Rec):
        return {"k": "rec", "var": term.var, "body": to_json(term.body)}
    if isinstance(term, Prefix):
        msg = {"k": "base", "name": term.msg.name} if isinstance(term.msg, Base) else to_json(term.msg)
        return {"k": "in" if isinstance(term, Input) else "out", "msg": msg, "cont": to_json(term.cont)}
    kind = "branch" if isinstance(term, Offer) else "choice"
    return {"k": kind, "entries": {l: to_json(t) for l, t in term.entries}}


def from_json(obj: Any, lang: str) -> Term:
    if isinstance(obj, str):
        obj = json.loads(obj)
    k = CONSTRUCTORS[lang]
    try:
        tag = obj["k"]
        if tag == "end":
            return k.stop()
        if tag == "var":
            return k.var(obj["name"])
        if tag == "rec":
            return k.rec(obj["var"], from_json(obj["body"], lang))
        if tag in ("in", "out"):
            m = obj["msg"]
            msg = Base(m["name"]) if m.get("k") == "base" else from_json(m, lang)
            return (k.inp if tag == "in" else k.out)(msg, from_json(obj["cont"], lang))
        if tag in ("branch", "choice"):
            cls = k.offer if tag == "branch" else k.select
            return cls([(l, from_json(t, lang)) for l, t in obj["entries"].items()])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed JSON term: {obj!r}") from exc
    raise ValueError(f"unknown node tag {obj.get('k')!r}")
