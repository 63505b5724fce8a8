import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magmas import (CapExceeded, build, check_connection, enumerate_opens,
                    pr_plus, preorder_of_opens, shift_leq, shifted_is_total,
                    shifted_opens_match)
from magmas.preorder import bits
from magmas.shifting import powerset_masks

from oracles import shift_pairs

LABELS = "abcd"


def rel_of(p):
    return {(p.labels[a], p.labels[b])
            for b in range(p.n) for a in bits(p.pred[b])}


def to_labels(p, mask):
    return frozenset(p.set_labels(mask))


def preorders(max_atoms=3):
    return st.tuples(
        st.integers(min_value=1, max_value=max_atoms),
        st.lists(st.tuples(st.integers(0, max_atoms - 1),
                           st.integers(0, max_atoms - 1)), max_size=6),
    ).map(lambda t: build(
        LABELS[:t[0]],
        [(LABELS[a % t[0]], LABELS[b % t[0]]) for a, b in t[1]],
    ))


@settings(max_examples=100)
@given(preorders(), st.integers(0, 7), st.integers(0, 7))
def test_shift_matches_literal_oracle(p, x, y):
    x &= p.full_mask
    y &= p.full_mask
    assert shift_leq(p, x, y) == shift_pairs(rel_of(p), to_labels(p, x),
                                             to_labels(p, y))


@settings(max_examples=100)
@given(preorders(), st.integers(0, 7))
def test_shift_reflexive(p, x):
    assert shift_leq(p, x & p.full_mask, x & p.full_mask)


def test_chain_collapses_under_shift(chain3):
    full = chain3.full_mask
    top = chain3.atom_set("c")
    assert shift_leq(chain3, full, top)
    assert shift_leq(chain3, top, full)
    assert full != top  # mutually comparable distinct subsets


def test_antichain_shift_false(antichain2):
    assert not shift_leq(antichain2, 0b01, 0b10)


def test_empty_set_conventions(chain3):
    assert shift_leq(chain3, 0, chain3.full_mask)
    assert not shift_leq(chain3, chain3.atom_set("a"), 0)
    assert pr_plus(chain3, 0) == [0]


def test_pr_plus_examples():
    p = build("ab", [("a", "b")])
    full_powerset = powerset_masks(p.full_mask)
    assert pr_plus(p, p.full_mask) == full_powerset        # open: equality
    assert pr_plus(p, p.atom_set("b")) == full_powerset    # not open: strictly more
    assert set(powerset_masks(p.atom_set("b"))) < set(pr_plus(p, p.atom_set("b")))


def test_pr_plus_cap():
    wide = build([f"x{i}" for i in range(13)])
    with pytest.raises(CapExceeded):
        pr_plus(wide, 1)


def test_connection_examples(models_by_size):
    p = build("ab", [("a", "b")])
    not_open = p.atom_set("b")
    c = check_connection(p, not_open)
    assert c.subset_dir and c.equality_when_open  # vacuous for non-open x
    assert pr_plus(p, not_open) != powerset_masks(not_open)
    for n in (1, 2, 3):
        for q in models_by_size[n]:
            for x in range(1 << q.n):
                assert check_connection(q, x).ok


def test_shift_transitive_exhaustive(models_by_size):
    for p in models_by_size[2]:
        subsets = range(1 << p.n)
        for x in subsets:
            for y in subsets:
                for z in subsets:
                    if shift_leq(p, x, y) and shift_leq(p, y, z):
                        assert shift_leq(p, x, z)


def test_totality_examples(chain3, antichain2, twocycle):
    assert chain3.is_total() and shifted_is_total(chain3)
    assert not antichain2.is_total()
    assert twocycle.is_total() and shifted_is_total(twocycle)


def test_total_lifts_to_shift(models_by_size):
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            if p.is_total():
                assert shifted_is_total(p)


def test_shifted_topology_equals_inclusion_topology(models_by_size):
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            assert shifted_opens_match(p)


def test_preorder_of_opens_structure(chain3):
    lo = preorder_of_opens(chain3)
    assert lo.n == len(enumerate_opens(chain3))
    assert lo.labels[0] == "{a}"
    # a 3-chain of opens under inclusion
    assert lo.leq(0, 2) and not lo.leq(2, 0)
