"""Corpus runners comparing independent deciders."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .encoding import encode
from .generate import GenConfig, generate_pairs
from .preorders import peer_leq, peer_leq_via_types
from .subtyping import subtype
from .terms import TYPE, BaseOrder


@dataclass
class AgreementReport:
    n_pairs: int = 0
    n_agree: int = 0
    n_positive: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.n_agree == self.n_pairs

    def as_dict(self) -> dict:
        return {
            "n_pairs": self.n_pairs,
            "n_agree": self.n_agree,
            "n_positive": self.n_positive,
            "disagreements": [
                {"left": str(s), "right": str(t), "a": a, "b": b} for (s, t), a, b in self.disagreements
            ],
        }


def fullabs_check(cfg: GenConfig, n_pairs: int, base: Optional[BaseOrder] = None) -> AgreementReport:
    """Compare subtyping on types with the contract preorder on their images.

    The contract side is decided twice, directly and through decoding, and
    a pair counts as agreeing only if all three verdicts coincide.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be at least 1")
    if cfg.lang != TYPE:
        raise ValueError("full-abstraction check needs a type corpus")
    report = AgreementReport()
    for s, t in generate_pairs(cfg, n_pairs):
        a = subtype(s, t, base)
        cs, ct = encode(s), encode(t)
        b = peer_leq(cs, ct, base)
        c = peer_leq_via_types(cs, ct, base)
        report.n_pairs += 1
        report.n_positive += a
        if a == b == c:
            report.n_agree += 1
        else:
            report.disagreements.append(((s, t), a, (b, c)))
    return report
