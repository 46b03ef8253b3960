"""Command-line interface.

Exit status: 0 for a positive verdict or success, 1 for a negative verdict,
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import duality, lts
from .corpus import fullabs_check
from .encoding import decode, encode
from .generate import GenConfig, generate_terms
from .interaction import compliance_counterexample, oracle_from_name
from .preorders import falsify_set_leq, peer_leq, peer_leq_via_types, syn_peer_leq
from .repro import EXAMPLES, run
from .subtyping import subtype, type_equiv
from .syntax import ParseError, from_json, parse_term, to_json
from .terms import CONTRACT, TYPE, BaseOrder, IllFormedTerm, require_lang, require_wellformed, unfold

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _verdict(args, verdict: bool, text: Optional[str] = None, **extra) -> int:
    _emit(args, {"verdict": verdict, **extra}, text if text is not None else str(verdict).lower())
    return OK if verdict else NEGATIVE


def _base(args) -> BaseOrder:
    if args.base:
        return BaseOrder.from_lines(Path(args.base).read_text().splitlines())
    return BaseOrder.default()


def _term(args, text: str, lang: Optional[str] = None):
    return parse_term(text, _base(args), lang or args.lang)


def _type(args, text: str):
    t = _term(args, text, TYPE if args.lang == "auto" else args.lang)
    require_lang(TYPE, t)
    return t


def _contract(args, text: str):
    t = _term(args, text, CONTRACT if args.lang == "auto" else args.lang)
    require_lang(CONTRACT, t)
    return t


def _oracle(args):
    return oracle_from_name(args.b, _base(args))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_parse(args) -> int:
    t = _term(args, args.term)
    print(json.dumps({"lang": t.lang, "ast": to_json(t)}, indent=2, ensure_ascii=False))
    return OK


def cmd_print(args) -> int:
    src = args.ast
    doc = json.loads(Path(src[1:]).read_text() if src.startswith("@") else src)
    if isinstance(doc, dict) and "ast" in doc:
        lang, ast = doc.get("lang", args.lang), doc["ast"]
    else:
        lang, ast = args.lang, doc
    if lang not in (TYPE, CONTRACT):
        raise UsageError("give --lang type|contract or a document with a 'lang' field")
    t = from_json(ast, lang)
    _emit(args, {"term": str(t)}, str(t))
    return OK


def cmd_unfold(args) -> int:
    t = _term(args, args.term)
    require_wellformed(t)
    u = unfold(t)
    _emit(args, {"term": str(u)}, str(u))
    return OK


def cmd_subtype(args) -> int:
    return _verdict(args, subtype(_type(args, args.left), _type(args, args.right), _base(args)))


def cmd_equiv(args) -> int:
    return _verdict(args, type_equiv(_type(args, args.left), _type(args, args.right), _base(args)))


def cmd_encode(args) -> int:
    c = encode(_type(args, args.term))
    _emit(args, {"term": str(c)}, str(c))
    return OK


def cmd_decode(args) -> int:
    t = decode(_contract(args, args.term))
    _emit(args, {"term": str(t)}, str(t))
    return OK


def cmd_lts(args) -> int:
    c = _contract(args, args.term)
    fmt = "dot" if args.dot else "json"
    print(lts.export_lts(c, fmt))
    return OK


def cmd_bisim(args) -> int:
    return _verdict(args, lts.bisimilar(_contract(args, args.left), _contract(args, args.right)))


def cmd_comply(args) -> int:
    rho = _contract(args, args.left)
    if args.right is not None and args.partner:
        raise UsageError("give either a second contract or --partner, not both")
    if args.right is not None:
        sigma = _contract(args, args.right)
    elif args.partner:
        require_wellformed(rho)
        sigma = duality.DUALITIES[args.partner](rho)
    else:
        raise UsageError("comply needs a second contract or --partner")
    path = compliance_counterexample(rho, sigma, _oracle(args), _base(args))
    trace = [str(c) for c in path] if path else None
    text = "true" if path is None else "false\n" + "\n".join(f"  {c}" for c in trace)
    return _verdict(args, path is None, text, partner=str(sigma), counterexample=trace)


def cmd_synleq(args) -> int:
    s1, s2 = _contract(args, args.left), _contract(args, args.right)
    return _verdict(args, syn_peer_leq(s1, s2, _oracle(args), _base(args)))


def cmd_peerleq(args) -> int:
    s1, s2 = _contract(args, args.left), _contract(args, args.right)
    decide = peer_leq_via_types if args.via_types else peer_leq
    return _verdict(args, decide(s1, s2, _base(args)))


def cmd_falsify(args) -> int:
    s1, s2 = _contract(args, args.left), _contract(args, args.right)
    w = falsify_set_leq(s1, s2, _oracle(args), _base(args), depth=args.depth)
    text = f"witness {w}" if w is not None else "no witness"
    return _verdict(args, w is not None, text, witness=None if w is None else str(w))


def _unary(op):
    def cmd(args) -> int:
        t = _term(args, args.term)
        r = op(t)
        _emit(args, {"term": str(r)}, str(r))
        return OK

    return cmd


def _contract_or_type(op):
    def apply(t):
        return op(t) if t.lang == CONTRACT else duality.on_types(op)(t)

    return apply


def cmd_endpoints(args) -> int:
    tp, tm = _type(args, args.plus), _type(args, args.minus)
    return _verdict(args, duality.endpoints_dual(tp, tm, args.d, _base(args)))


def cmd_gen(args) -> int:
    cfg = GenConfig(
        max_depth=args.depth,
        seed=args.seed,
        lang=TYPE if args.lang == "auto" else args.lang,
        closed_messages=args.closed_messages,
        p_rec=args.p_rec,
        p_higher_order=args.p_higher_order,
    )
    terms = generate_terms(cfg, args.n)
    if args.json:
        print(json.dumps([str(t) for t in terms], indent=2))
    else:
        print("\n".join(str(t) for t in terms))
    return OK


def cmd_fullabs(args) -> int:
    cfg = GenConfig(max_depth=args.depth, seed=args.seed)
    rep = fullabs_check(cfg, args.n, _base(args))
    text = f"{rep.n_agree}/{rep.n_pairs} pairs agree ({rep.n_positive} related)"
    for (s, t), a, b in rep.disagreements:
        text += f"\n  {s} <= {t}: subtype={a} contracts={b}"
    _emit(args, rep.as_dict(), text)
    return OK if rep.ok else NEGATIVE


def cmd_repro(args) -> int:
    names = args.names or list(EXAMPLES)
    unknown = [n for n in names if n not in EXAMPLES]
    if unknown:
        raise UsageError(f"unknown example(s) {unknown}; known: {', '.join(EXAMPLES)}")
    outcomes = [run(n) for n in names]
    if args.json:
        doc = [
            {
                "name": o.name,
                "ok": o.ok,
                "checks": [{"what": c.what, "expected": str(c.expected), "actual": str(c.actual), "ok": c.ok} for c in o.checks],
            }
            for o in outcomes
        ]
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        for o in outcomes:
            print(f"{'PASS' if o.ok else 'FAIL'} {o.name}")
            for c in o.checks:
                if not c.ok or args.verbose:
                    print(f"    {'ok ' if c.ok else 'BAD'} {c.what}: expected {c.expected}, got {c.actual}")
    return OK if all(o.ok for o in outcomes) else NEGATIVE


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", choices=["auto", TYPE, CONTRACT], default="auto", help="language of term arguments")
    common.add_argument("--base", metavar="PATH", help="base-order file with lines 'int <= real'")
    common.add_argument("--b", default="peer", metavar="ORACLE", help="empty | identity | peer | table:<path> (default peer)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="hosc", description="Session types, session contracts and their preorders.")
    sub = p.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    def add(name, fn, help_, *positionals):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        for pos in positionals:
            sp.add_argument(pos)
        sp.set_defaults(fn=fn)
        return sp

    add("parse", cmd_parse, "parse a term and print its JSON AST", "term")
    add("print", cmd_print, "print a JSON AST (inline or @file) in concrete syntax", "ast")
    add("unfold", cmd_unfold, "unfold top-level recursion", "term")
    add("subtype", cmd_subtype, "decide subtyping between two types", "left", "right")
    add("equiv", cmd_equiv, "decide type equivalence", "left", "right")
    add("encode", cmd_encode, "translate a type to a contract", "term")
    add("decode", cmd_decode, "translate a contract to a type", "term")
    sp = add("lts", cmd_lts, "print the transition graph of a contract", "term")
    sp.add_argument("--dot", action="store_true", help="Graphviz output instead of JSON")
    add("bisim", cmd_bisim, "decide strong bisimilarity of two contracts", "left", "right")
    sp = add("comply", cmd_comply, "decide peer compliance", "left")
    sp.add_argument("right", nargs="?")
    sp.add_argument("--partner", choices=sorted(duality.DUALITIES), help="use this dual of LEFT as the partner")
    add("synleq", cmd_synleq, "decide the structural preorder under --b", "left", "right")
    sp = add("peerleq", cmd_peerleq, "decide the peer subcontract preorder", "left", "right")
    sp.add_argument("--via-types", action="store_true", help="decide through decoding and subtyping")
    sp = add("falsify", cmd_falsify, "search a partner complying with LEFT but not RIGHT (exit 0 if found)", "left", "right")
    sp.add_argument("--depth", type=int, default=3)
    add("stdual", _unary(duality.stdual), "standard dual", "term")
    add("mcl", _unary(duality.mcl), "m-closure of a contract", "term")
    add("dual", _unary(_contract_or_type(duality.dual)), "dual (stdual after m-closure)", "term")
    add("cplmt", _unary(_contract_or_type(duality.cplmt)), "complement", "term")
    sp = add("endpoints", cmd_endpoints, "check two endpoint types against a duality", "plus", "minus")
    sp.add_argument("--d", choices=sorted(duality.DUALITIES), default="dual")
    sp = add("gen", cmd_gen, "generate random closed guarded terms")
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--closed-messages", action="store_true")
    sp.add_argument("--p-rec", type=float, default=0.3)
    sp.add_argument("--p-higher-order", type=float, default=0.3)
    sp = add("fullabs-check", cmd_fullabs, "compare subtyping with the contract preorder on random pairs")
    sp.add_argument("--n", type=int, default=500)
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp = add("repro", cmd_repro, "run the named worked examples")
    sp.add_argument("names", nargs="*")
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code not in (0, None) else OK
    try:
        return args.fn(args)
    except (ParseError, IllFormedTerm, UsageError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
