import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magmas import (CapExceeded, PreOrder, build, count_preorders,
                    enumerate_preorders, format_atom_set, format_preorder,
                    parse_atom_set, parse_preorder)
from magmas.preorder import bits, default_labels

from oracles import closure_pairs, preds, succs

LABELS4 = "abcd"


def edge_lists(max_atoms=4):
    labels = st.integers(min_value=1, max_value=max_atoms).map(
        lambda n: LABELS4[:n])
    return labels.flatmap(
        lambda ls: st.tuples(
            st.just(ls),
            st.lists(st.tuples(st.sampled_from(ls), st.sampled_from(ls)),
                     max_size=8),
        )
    )


def as_pairs(p):
    return {(p.labels[a], p.labels[b])
            for b in range(p.n) for a in bits(p.pred[b])}


# --- build / closure ---------------------------------------------------------


def test_single_atom_reflexive_only():
    p = build("a")
    assert as_pairs(p) == {("a", "a")}


def test_chain_closure_adds_composite(chain3):
    expected = closure_pairs("abc", {("a", "b"), ("b", "c")})
    assert ("a", "c") in expected
    assert as_pairs(chain3) == expected


def test_two_cycle_closure_is_full(twocycle):
    assert as_pairs(twocycle) == {(x, y) for x in "ab" for y in "ab"}


@settings(max_examples=150)
@given(edge_lists())
def test_closure_matches_pair_oracle(data):
    labels, edges = data
    p = build(labels, edges)
    assert as_pairs(p) == closure_pairs(labels, set(edges))


@settings(max_examples=100)
@given(edge_lists())
def test_closure_idempotent(data):
    labels, edges = data
    p = build(labels, edges)
    again = build(labels, [(labels[a], labels[b])
                           for b in range(p.n) for a in bits(p.pred[b])])
    assert again == p


def test_build_rejects_duplicate_label():
    with pytest.raises(ValueError, match="duplicate"):
        build(["a", "a"])


def test_build_rejects_unknown_endpoint():
    with pytest.raises(ValueError, match="not a declared atom"):
        build("ab", [("a", "z")])


def test_build_rejects_empty_carrier():
    with pytest.raises(ValueError):
        build([])


def test_from_pred_rows_validates():
    PreOrder.from_pred_rows("ab", (0b01, 0b11))
    with pytest.raises(ValueError, match="reflexive"):
        PreOrder.from_pred_rows("ab", (0b01, 0b01))
    with pytest.raises(ValueError, match="transitive"):
        PreOrder.from_pred_rows("abc", (0b001, 0b011, 0b110))


# --- point queries -----------------------------------------------------------


def test_leq_examples(chain3, antichain2):
    a, b, c = 0, 1, 2
    assert chain3.leq(a, c)
    assert chain3.leq(b, b)
    assert not antichain2.leq(0, 1)
    with pytest.raises(IndexError):
        chain3.leq(0, 5)


def test_strict_examples(chain3, twocycle):
    assert chain3.strict(0, 1)
    assert not chain3.strict(1, 0)
    assert not twocycle.strict(0, 1)
    assert not chain3.strict(2, 2)


@settings(max_examples=100)
@given(edge_lists())
def test_strict_implies_leq_and_asymmetry(data):
    labels, edges = data
    p = build(labels, edges)
    for a in range(p.n):
        for b in range(p.n):
            if p.strict(a, b):
                assert p.leq(a, b) and not p.strict(b, a)


def test_predecessors_successors(chain3, antichain2, twocycle):
    rel = closure_pairs("abc", {("a", "b"), ("b", "c")})
    for i, lab in enumerate("abc"):
        assert set(chain3.set_labels(chain3.predecessors(i))) == preds(rel, "abc", lab)
        assert set(chain3.set_labels(chain3.successors(i))) == succs(rel, "abc", lab)
    assert antichain2.predecessors(0) == 0b01
    assert antichain2.successors(1) == 0b10
    assert twocycle.predecessors(0) == 0b11
    assert twocycle.successors(0) == 0b11


@settings(max_examples=100)
@given(edge_lists())
def test_cones_are_downward_closed(data):
    labels, edges = data
    p = build(labels, edges)
    for a in range(p.n):
        cone = p.predecessors(a)
        for b in bits(cone):
            assert not p.predecessors(b) & ~cone


def test_equiv_classes(chain3, antichain2, twocycle):
    assert twocycle.equiv_classes() == [0b11]
    assert antichain2.equiv_classes() == [0b01, 0b10]
    assert chain3.equiv_classes() == [0b001, 0b010, 0b100]


@settings(max_examples=100)
@given(edge_lists())
def test_same_class_iff_same_cone(data):
    labels, edges = data
    p = build(labels, edges)
    for a in range(p.n):
        for b in range(p.n):
            same_class = p.equiv_class(a) == p.equiv_class(b)
            assert same_class == (p.predecessors(a) == p.predecessors(b))


def test_satisfies_star(chain3, twocycle, models_by_size):
    ok, witness = chain3.satisfies_star()
    assert (ok, witness) == (False, 0)
    ok, witness = twocycle.satisfies_star()
    assert not ok and witness == 0
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            assert p.satisfies_star()[0] is False


# --- enumeration -------------------------------------------------------------


def test_enumeration_counts(models_by_size):
    assert [len(models_by_size[n]) for n in (1, 2, 3)] == [1, 4, 29]


def test_enumeration_no_duplicates(models_by_size):
    seen = {p.pred for p in models_by_size[3]}
    assert len(seen) == 29


def test_enumeration_all_closed(models_by_size):
    for p in models_by_size[3]:
        PreOrder.from_pred_rows(p.labels, p.pred)


def test_enumeration_bounds():
    with pytest.raises(CapExceeded):
        list(enumerate_preorders(5))
    with pytest.raises(CapExceeded):
        list(enumerate_preorders(6, bound=6))
    assert count_preorders(1) == 1


def test_default_labels():
    assert default_labels(3) == ("a", "b", "c")
    assert default_labels(30)[26] == "a26"


# --- text format -------------------------------------------------------------


def test_parse_tolerates_comments_and_spacing():
    p = parse_preorder("# header\n  atoms:  a   b c\n\na<=b # inline\n b <= c\n")
    assert p.labels == ("a", "b", "c")
    assert p.leq(0, 2)


def test_format_parse_roundtrip(models_by_size):
    for p in models_by_size[3]:
        assert parse_preorder(format_preorder(p)) == p


@pytest.mark.parametrize("text", [
    "a <= b\n",                      # no atoms line
    "atoms: a b\natoms: a b\n",      # repeated
    "atoms: a b\nnot a rule\n",      # junk line
    "atoms: a b\na b <= b\n",        # malformed edge
])
def test_parse_rejects_bad_input(text):
    with pytest.raises(ValueError):
        parse_preorder(text)


def test_atom_set_literals(chain3):
    mask = parse_atom_set(chain3, "{a, c}")
    assert chain3.set_labels(mask) == ["a", "c"]
    assert parse_atom_set(chain3, "b c") == 0b110
    assert format_atom_set(chain3, 0b101) == "{a,c}"
    with pytest.raises(ValueError):
        parse_atom_set(chain3, "{a")
    with pytest.raises(KeyError):
        parse_atom_set(chain3, "{z}")
