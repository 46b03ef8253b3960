import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _oracles import ref_peer_leq
from _strategies import contracts, related_pairs
from hosc.encoding import encode
from hosc.generate import GenConfig, generate_term
from hosc.interaction import compliant, empty_oracle, identity_oracle, peer_oracle, table_oracle
from hosc.preorders import (
    candidate_peers,
    falsify_set_leq,
    message_pool,
    peer_equiv,
    peer_leq,
    peer_leq_relation,
    peer_leq_via_types,
    syn_peer_leq,
)
from hosc.subtyping import subtype
from hosc.syntax import parse_contract as C
from hosc.terms import CONTRACT, BaseOrder, IllFormedTerm, unfold

BASE = BaseOrder.default()
PEER = peer_oracle(BASE)
contract_pairs = related_pairs(lang=CONTRACT)


class TestExamples:
    def test_empty_oracle_irreflexive(self):
        s = C("!(1).1")
        assert not syn_peer_leq(s, s, empty_oracle())
        assert syn_peer_leq(s, s, identity_oracle())

    def test_first_order_reflexive_without_oracle(self):
        s = C("rec x.&[?a:!int.x, ?b:1]")
        assert syn_peer_leq(s, s, empty_oracle())

    def test_non_transitive_table(self):
        b = table_oracle([(C("1"), C("!l.!l.1")), (C("!l.!l.1"), C("!l.1"))])
        s1, s2 = C("!(!l.!l.1).1"), C("!(1).1")
        assert syn_peer_leq(s1, s2, b)
        assert falsify_set_leq(s1, s2, b, depth=3) == C("?(!l.1).1")

    def test_non_transitive_witness_needs_depth(self):
        b = table_oracle([(C("1"), C("!l.!l.1")), (C("!l.!l.1"), C("!l.1"))])
        assert falsify_set_leq(C("!(!l.!l.1).1"), C("!(1).1"), b, depth=1) == C("?(!l.1).1")

    def test_vacuous_under_empty_oracle(self):
        s = C("!(1).1")
        assert falsify_set_leq(s, s, empty_oracle(), depth=3) is None

    def test_trivial(self):
        assert falsify_set_leq(C("1"), C("1"), identity_oracle()) is None
        with pytest.raises(ValueError):
            falsify_set_leq(C("1"), C("1"), identity_oracle(), depth=0)

    def test_width(self):
        assert peer_leq(C("&[?a:1]"), C("&[?a:1, ?b:1]"))
        assert not peer_leq(C("&[?a:1, ?b:1]"), C("&[?a:1]"))
        assert peer_leq(C("(+)[!a:1, !b:1]"), C("(+)[!a:1]"))

    def test_self_input_loops(self):
        assert peer_equiv(C("rec x.?(x).x"), C("rec y.?(y).?(y).y"))

    def test_via_types(self):
        assert peer_leq_via_types(C("?int.1"), C("?real.1"))
        assert not peer_leq_via_types(C("!int.1"), C("!real.1"))

    def test_rejects_types(self):
        from hosc.syntax import parse_type

        with pytest.raises(IllFormedTerm):
            peer_leq(parse_type("end"), C("1"))

    def test_falsifier_finds_width_witness(self):
        rho = falsify_set_leq(C("&[?a:1, ?b:1]"), C("&[?a:1]"), PEER)
        assert rho is not None
        assert compliant(rho, C("&[?a:1, ?b:1]"), PEER)
        assert not compliant(rho, C("&[?a:1]"), PEER)


class TestPool:
    def test_contains_success_and_duals(self):
        pool = message_pool(C("?(?int.1).1"))
        assert C("1") in pool and C("?int.1") in pool and C("!int.1") in pool

    def test_candidates_distinct(self):
        peers = list(candidate_peers(C("&[?a:?int.1, ?b:1]"), C("1"), PEER))
        assert len(peers) == len(set(peers))


@given(contract_pairs)
def test_agrees_with_deletion_oracle(pair):
    s, t = pair
    assert peer_leq(s, t, BASE) == ref_peer_leq(s, t, BASE)


@given(contract_pairs)
def test_two_deciders_agree(pair):
    assert peer_leq(*pair) == peer_leq_via_types(*pair)


@given(contract_pairs)
def test_is_its_own_oracle(pair):
    assert peer_leq(*pair) == syn_peer_leq(*pair, PEER)


@given(contract_pairs)
def test_syntactic_matches_reference_for_fixed_oracle(pair):
    b = identity_oracle()
    assert syn_peer_leq(*pair, b) == ref_peer_leq(*pair, BASE, oracle=b)


@given(contract_pairs)
def test_assumed_pairs_are_post_fixed(pair):
    from hosc.gfp import is_post_fixed
    from hosc.preorders import _contract_obligations

    ok, rel = peer_leq_relation(*pair)
    if ok:
        assert is_post_fixed(rel, lambda p: _contract_obligations(p, BASE, lambda a, b: [(a, b)]))


@given(contracts())
def test_unfold_invariance(c):
    assert peer_leq(c, unfold(c)) and peer_leq(unfold(c), c)


@given(contracts(max_depth=3))
def test_reflexive(c):
    assert peer_leq(c, c)


@given(contract_pairs, st.sampled_from(range(4)))
def test_monotone_in_oracle(pair, k):
    s, t = pair
    pool = message_pool(s, t)[:6]
    rng = random.Random(k)
    universe = [(a, b) for a in pool for b in pool]
    small = set(rng.sample(universe, min(len(universe), 5)))
    big = small | set(rng.sample(universe, min(len(universe), 10)))
    if syn_peer_leq(s, t, table_oracle(small)):
        assert syn_peer_leq(s, t, table_oracle(big))


@given(contract_pairs)
def test_search_never_refutes_a_related_pair(pair):
    s, t = pair
    w = falsify_set_leq(s, t, PEER, depth=2, max_candidates=500)
    if syn_peer_leq(s, t, PEER):
        assert w is None
    if w is not None:
        assert compliant(w, s, PEER) and not compliant(w, t, PEER)
        assert not syn_peer_leq(s, t, PEER)


def test_encoded_corpus_agrees():
    cfg = GenConfig(max_depth=3)
    rng = random.Random(7)
    for _ in range(50):
        a, b = generate_term(cfg, rng), generate_term(cfg, rng)
        assert subtype(a, b) == peer_leq(encode(a), encode(b))
