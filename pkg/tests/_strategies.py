"""Hypothesis strategies built on the seeded generator."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from hosc.generate import GenConfig, generate_term, mutate
from hosc.terms import CONTRACT, TYPE

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def types(draw, max_depth=4, p_rec=0.4, p_higher_order=0.35):
    cfg = GenConfig(max_depth=max_depth, p_rec=p_rec, p_higher_order=p_higher_order, lang=TYPE)
    return generate_term(cfg, random.Random(draw(seeds)))


@st.composite
def contracts(draw, max_depth=4, closed_messages=False, p_rec=0.4, p_higher_order=0.35):
    cfg = GenConfig(
        max_depth=max_depth,
        p_rec=p_rec,
        p_higher_order=p_higher_order,
        lang=CONTRACT,
        closed_messages=closed_messages,
    )
    return generate_term(cfg, random.Random(draw(seeds)))


@st.composite
def related_pairs(draw, lang=TYPE, max_depth=3):
    """A term and a light mutation of it, so both verdicts are common."""
    cfg = GenConfig(max_depth=max_depth, p_rec=0.4, p_higher_order=0.35, lang=lang)
    rng = random.Random(draw(seeds))
    s = generate_term(cfg, rng)
    t = s
    for _ in range(draw(st.integers(0, 2))):
        t = mutate(t, cfg, rng)
    return (s, t) if draw(st.booleans()) else (t, s)
