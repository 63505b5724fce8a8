import pytest

from magmas import (CapExceeded, Hierarchy, MElem, enumerate_opens,
                    hf_rank, hf_union)
from magmas.hierarchy import (GROWTH_CAP, basic_open_partition_free,
                              find_open_partition,
                              level_basic_open_partition_free, parse_value,
                              render_value)
from magmas.preorder import bits

from oracles import ideals_of


def hset(*labels):
    return frozenset(labels)


def h_of(p, growth_cap=20):
    return Hierarchy(p, growth_cap=growth_cap)


# --- values ------------------------------------------------------------------


def test_rank():
    assert hf_rank("a") == 0
    assert hf_rank(frozenset()) == 0
    assert hf_rank(hset("a", "b")) == 1
    assert hf_rank(frozenset({hset("a")})) == 2
    assert hf_rank(frozenset({"a", hset("a")})) == 2


def test_union():
    assert hf_union(hset("a", "b")) == frozenset()
    assert hf_union(frozenset({hset("a"), hset("b")})) == hset("a", "b")
    assert hf_union(frozenset({"a", hset("b")})) == hset("b")


def test_parse_render_roundtrip():
    for text in ["a", "{a}", "{a,b}", "{{a},{a,b}}", "{}", "{{a},{{a},{b}}}"]:
        v = parse_value(text)
        assert parse_value(render_value(v)) == v
    assert render_value(parse_value("{ {a ,b}, {a} }")) == "{{a},{a,b}}"
    assert parse_value("{}") == frozenset()


@pytest.mark.parametrize("bad", ["", "{a", "a}b", "{a,,b}", "{a} x"])
def test_parse_rejects_bad_literals(bad):
    with pytest.raises(ValueError):
        parse_value(bad)


# --- level construction --------------------------------------------------------


def test_level1_matches_open_enumeration(chain3, antichain2, twocycle):
    for p, sizes in ((chain3, 3), (antichain2, 3), (twocycle, 1)):
        lv = h_of(p).level(1)
        assert lv.index == 1 and len(lv) == sizes
        assert list(lv.values) == [frozenset(d.labels())
                                   for d in enumerate_opens(p)]


def test_antichain2_level2_exact(antichain2):
    lv2 = h_of(antichain2).level(2)
    a, b, ab = hset("a"), hset("b"), hset("a", "b")
    assert set(lv2.values) == {
        frozenset({a}), frozenset({b}), frozenset({a, b}),
        frozenset({a, b, ab}),
    }


def test_chain3_level2_size(chain3):
    assert len(h_of(chain3).level(2)) == 3


def test_level2_matches_ideal_oracle(models_by_size):
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            h = h_of(p)
            l1 = h.level(1)
            expected = ideals_of(l1.values, lambda z, w: z <= w)
            assert set(h.level(2).values) == \
                {frozenset(i) for i in expected}


def test_build_levels_sizes(antichain2, antichain3, chain3):
    assert [len(l) for l in h_of(antichain2).build(2)] == [3, 4]
    assert [len(l) for l in h_of(antichain3).build(3)] == [7, 18, 81]
    sizes = [len(l) for l in h_of(chain3).build(3)]
    assert all(s > 0 for s in sizes)
    assert len(set(sizes)) == len(sizes) or sizes == [3, 3, 3]


def test_levels_disjoint_and_nested(models_by_size):
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            levels = h_of(p).build(3)
            for i, li in enumerate(levels):
                for lj in levels[i + 1:]:
                    assert not li.value_set & lj.value_set
            for li in levels[:-1]:
                nxt = levels[li.index]
                assert li.as_element().value in nxt.value_set
                assert li.value_set != nxt.value_set  # no fixed point


def test_rank_equals_level(models_by_size):
    for p in models_by_size[3]:
        for lv in h_of(p).build(3):
            assert all(hf_rank(v) == lv.index for v in lv.values)


def test_growth_cap(antichain3):
    with pytest.raises(CapExceeded):
        Hierarchy(antichain3, growth_cap=GROWTH_CAP).build(3)  # |M2| = 18
    assert len(Hierarchy(antichain3, growth_cap=20).build(3)[2]) == 81


def test_bottom_level_outside_level2(antichain2):
    # the members of rank <= 2 strictly exceed level 2
    h = h_of(antichain2)
    l1, l2 = h.build(2)
    assert all(hf_rank(v) <= 2 for v in l1.values)
    assert not l1.value_set & l2.value_set


# --- membership ----------------------------------------------------------------


def test_member_level_examples(antichain2):
    h = h_of(antichain2)
    assert h.member_level(parse_value("{{a}}"), 2)
    assert not h.member_level(parse_value("{{a},{a,b}}"), 2)  # {b} missing
    assert not h.member_level(frozenset(), 1)
    assert not h.member_level(frozenset(), 2)
    assert h.member_level(parse_value("{a}"), 1)
    assert not h.member_level(parse_value("{z}"), 1)
    assert not h.member_level(parse_value("{b}"), 2)


def test_member_level_agrees_with_materialized(models_by_size):
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            h = h_of(p)
            levels = h.build(3)
            probe = h_of(p)  # fresh caches: recursion not seeded by build
            for lv in levels:
                for v in list(lv.values)[:12]:
                    assert probe.member_level(v, lv.index)
                    for other in levels:
                        if other.index != lv.index:
                            assert not probe.member_level(v, other.index)


def test_membership_examples(antichain2):
    h = h_of(antichain2)
    m1um2 = frozenset(h.level(1).values) | frozenset(h.level(2).values)
    mem = h.membership(m1um2, 3)
    assert mem.kind == "limit" and mem.slice_levels == (1, 2)

    mixed = frozenset({parse_value("{a}"), parse_value("{{a}}")})
    mem = h.membership(mixed, 3)
    assert mem.kind == "limit" and mem.slice_levels == (1, 2)

    assert h.membership(parse_value("{a}"), 3).kind == "level"
    assert h.membership(parse_value("{a}"), 3).level == 1
    assert h.membership("a", 3).kind == "outside"
    assert h.membership(frozenset(), 3).kind == "outside"
    assert h.membership(parse_value("{a,{a}}"), 3).kind == "outside"
    assert h.membership(parse_value("{b}"), 3).kind == "level"


def test_membership_undecided_past_bound(antichain2):
    h = h_of(antichain2)
    deep = parse_value("{{{{a}}}}")  # rank 4
    assert h.membership(deep, 3).kind == "undecided"
    tall_member = frozenset({parse_value("{a}"), parse_value("{{{a}}}")})
    assert h.membership(tall_member, 2).kind == "undecided"


def test_membership_decisive_within_bound(antichain2):
    h = h_of(antichain2)
    not_open = frozenset({parse_value("{{a},{a,b}}")})  # member not in M
    assert h.membership(not_open, 3).kind == "outside"


def test_slices_must_all_pass(chain3):
    h = h_of(chain3)
    # {a} is minimal, so {{a}} is a level-2 member; {a,b} is not minimal,
    # so the singleton {{a,b}} fails, and mixing it in breaks the slice
    good = frozenset({parse_value("{a}"), parse_value("{{a}}")})
    assert h.membership(good, 3).kind == "limit"
    bad = frozenset({parse_value("{a,b}"), parse_value("{{a}}")})
    assert h.membership(bad, 3).kind == "outside"


# --- powerset ------------------------------------------------------------------


def test_power_element_examples(antichain2):
    h = h_of(antichain2)
    pe = h.power_element(MElem(parse_value("{a}"), 1))
    assert pe == MElem(frozenset({hset("a")}), 2)

    full = h.power_element(MElem(hset("a", "b"), 1))
    assert full.value == frozenset(h.level(1).values)  # carrier power = level 1

    m1_elem = MElem(frozenset(h.level(1).values), 2)
    pw = h.power_element(m1_elem)
    assert pw.value == frozenset(h.level(2).values)    # level power = next level
    assert pw.level == 3

    with pytest.raises(ValueError):
        h.power_element(MElem(parse_value("{b,a}"), 2))


def test_power_element_lands_one_level_up(models_by_size):
    for p in models_by_size[2]:
        h = h_of(p)
        levels = h.build(3)
        for lv in levels[:2]:
            for v in lv.values:
                pe = h.power_element(MElem(v, lv.index))
                assert pe.level == lv.index + 1
                assert pe.value in levels[lv.index].value_set


def test_nonempty_level_cone_is_member_above(models_by_size):
    for p in models_by_size[2]:
        h = h_of(p)
        for lv in h.build(3):
            rows = lv.sub_rows
            for i in range(len(lv)):
                cone = frozenset(lv.values[j] for j in bits(rows[i]))
                assert cone
                assert h.member_level(cone, lv.index + 1)


def test_subsets_of_level_in_m_are_open(antichain2):
    h = h_of(antichain2)
    vals = h.level(1).values
    for mask in range(1, 1 << len(vals)):
        v = frozenset(vals[i] for i in bits(mask))
        if h.membership(v, 4).in_m:
            assert h.member_level(v, 2)


# --- union criteria --------------------------------------------------------------


def test_union_report_bottom_level(antichain2):
    h = h_of(antichain2)
    rep = h.union_report(parse_value("{a,b}"), 3)
    assert rep.union_value == frozenset()
    assert not rep.criterion_tier
    assert not rep.criterion_union
    assert not rep.criterion_unmixed
    assert rep.consistent and rep.decided


def test_union_report_level2(antichain2):
    h = h_of(antichain2)
    whole_m1 = frozenset(h.level(1).values)
    rep = h.union_report(whole_m1, 3)
    assert rep.union_value == hset("a", "b")
    assert rep.union_membership.kind == "level"
    assert rep.union_membership.level == 1
    assert rep.criterion_tier and rep.criterion_union and rep.criterion_unmixed


def test_union_report_mixed_omega(antichain2):
    h = h_of(antichain2)
    mixed = frozenset({parse_value("{a}"), parse_value("{{a}}")})
    rep = h.union_report(mixed, 3)
    assert rep.union_value == parse_value("{a,{a}}")
    assert rep.membership.kind == "limit"
    assert not rep.criterion_tier
    assert not rep.criterion_union
    assert not rep.criterion_unmixed
    assert rep.decided and rep.consistent


def test_union_report_pure_omega(antichain2):
    # both slices above the bottom level: all three criteria flip true
    h = h_of(antichain2)
    l2, l3 = h.level(2), h.level(3)
    v = frozenset(l2.values) | frozenset(l3.values)
    rep = h.union_report(v, 4)
    assert rep.membership.kind == "limit"
    assert rep.criterion_tier and rep.criterion_union and rep.criterion_unmixed
    assert rep.consistent


def test_union_criteria_agree_everywhere(models_by_size):
    for p in models_by_size[2]:
        h = h_of(p)
        for lv in h.build(3):
            for v in lv.values:
                rep = h.union_report(v, 3)
                assert rep.decided and rep.consistent


# --- reformulated principles ------------------------------------------------------


def test_basic_opens_never_partition(models_by_size):
    for n in (1, 2, 3):
        for p in models_by_size[n]:
            assert basic_open_partition_free(p) == []


def test_level_basic_opens_never_partition(chain3, antichain2):
    for p in (chain3, antichain2):
        h = h_of(p)
        for lv in h.build(2):
            assert level_basic_open_partition_free(lv) == []


def test_antichain_negative_control(antichain2):
    split = find_open_partition(antichain2.pred, antichain2.full_mask)
    assert split is not None
    y1, y2 = split
    assert y1 | y2 == antichain2.full_mask and not y1 & y2


def test_chain_basic_open_has_no_partition(chain3):
    assert find_open_partition(chain3.pred, chain3.predecessors(2)) is None


def test_classify(antichain2):
    h = h_of(antichain2)
    assert h.classify("a", 3) == "atom"
    assert h.classify(parse_value("{a}"), 3) == "magma"
    assert h.classify(parse_value("{a,{a}}"), 3) == "set"
    assert h.classify(frozenset(), 3) == "set"
    mixed = frozenset({parse_value("{a}"), parse_value("{{a}}")})
    assert h.classify(mixed, 3) == "magma"
    with pytest.raises(TypeError):
        h.classify(3, 3)
