"""Levels of the magma hierarchy over a finite pre-order.

Level 1 is the family of nonempty lower-open atom sets; level n+1 is the
family of nonempty inclusion-downward-closed sets of level-n elements.
Levels are materialized with each element kept both as a bitmask over the
tier below (fast subset tests) and as a hereditarily finite value: an atom
label, or a frozenset of values. The membership machinery decides finite
levels recursively and emulates the first limit level and its successor
through the level-slice criterion, within an explicit bound.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .preorder import AtomSet, CapExceeded, PreOrder, bits
from .topology import downset_masks, enumerate_opens, is_lower_open

GROWTH_CAP = 14

HF = object  # an atom label (str) or a frozenset of HF values


@functools.lru_cache(maxsize=None)
def hf_rank(v: HF) -> int:
    """0 for atoms and the empty set, else one above the deepest member."""
    if isinstance(v, str):
        return 0
    return 1 + max((hf_rank(y) for y in v), default=-1)


def hf_union(v: frozenset) -> frozenset:
    """Members of members; atoms inside v are non-sets and contribute nothing."""
    out: set = set()
    for y in v:
        if isinstance(y, frozenset):
            out |= y
    return frozenset(out)


def render_value(v: HF) -> str:
    if isinstance(v, str):
        return v
    parts = sorted(
        ((hf_rank(y), len(y) if isinstance(y, frozenset) else 0, render_value(y))
         for y in v)
    )
    return "{" + ",".join(s for _, _, s in parts) + "}"


def parse_value(text: str) -> HF:
    """Parse a nested-brace literal like ``{{a},{a,b}}`` into an HF value."""
    pos = 0

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(text) and text[pos] in " \t\n":
            pos += 1

    def value() -> HF:
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ValueError("unexpected end of value literal")
        if text[pos] == "{":
            pos += 1
            items = []
            skip_ws()
            if pos < len(text) and text[pos] == "}":
                pos += 1
                return frozenset()
            while True:
                items.append(value())
                skip_ws()
                if pos >= len(text):
                    raise ValueError("unbalanced braces in value literal")
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == "}":
                    pos += 1
                    return frozenset(items)
                raise ValueError(f"unexpected character {text[pos]!r} at {pos}")
        start = pos
        while pos < len(text) and text[pos] not in "{},  \t\n":
            pos += 1
        if start == pos:
            raise ValueError(f"expected a label at position {pos}")
        return text[start:pos]

    v = value()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing input after value literal: {text[pos:]!r}")
    return v


@dataclass(frozen=True)
class MElem:
    """A hierarchy member together with the level it lives at."""

    value: frozenset
    level: int


class HierarchyLevel:
    """One materialized level: elements as masks over the tier below."""

    def __init__(self, index: int, masks: tuple[AtomSet, ...], base_size: int,
                 values: tuple[frozenset, ...]):
        self.index = index
        self.masks = masks
        self.base_size = base_size
        self.values = values

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.values)

    @cached_property
    def sub_rows(self) -> tuple[AtomSet, ...]:
        """sub_rows[i] = mask of the elements included in element i."""
        ms = self.masks
        rows = []
        for mi in ms:
            row = 0
            for j, mj in enumerate(ms):
                if not mj & ~mi:
                    row |= 1 << j
            rows.append(row)
        return tuple(rows)

    @cached_property
    def value_set(self) -> frozenset:
        return frozenset(self.values)

    def as_element(self) -> MElem:
        """The whole level as a member of the next level."""
        return MElem(frozenset(self.values), self.index + 1)

    def __repr__(self) -> str:
        return f"HierarchyLevel({self.index}, size={len(self.masks)})"


@dataclass(frozen=True)
class Membership:
    """Where a value sits in the bounded hierarchy.

    kind is "level" (finite level ``level``), "limit" (member of the
    bounded limit-successor tier, spanning the slice levels listed),
    "outside" (decisively not a magma at desk scale), or "undecided"
    (some member's level exceeds the bound).
    """

    kind: str
    level: int | None = None
    slice_levels: tuple[int, ...] = ()

    @property
    def in_m(self) -> bool:
        return self.kind in ("level", "limit")

    def describe(self) -> str:
        if self.kind == "level":
            return f"level {self.level}"
        if self.kind == "limit":
            inner = ",".join(str(k) for k in self.slice_levels)
            return f"limit+1 (bounded; slices at levels {inner})"
        if self.kind == "outside":
            return "not a magma (within bound)"
        return "undecided (bound too small)"


@dataclass(frozen=True)
class UnionReport:
    """The union of a hierarchy member and the three equivalent criteria.

    criterion_tier: the value sits two steps above some tier (finite
    level >= 2, or a limit member whose member-cones close up inside it).
    criterion_union: the literal union is a magma.
    criterion_unmixed: not bottom-level itself, and its members are all
    bottom-level or all higher.
    """

    membership: Membership
    union_value: frozenset
    union_membership: Membership
    criterion_tier: bool
    criterion_union: bool
    criterion_unmixed: bool
    decided: bool

    @property
    def consistent(self) -> bool:
        return (self.criterion_tier == self.criterion_union
                == self.criterion_unmixed)


class Hierarchy:
    """Materialized levels plus membership decisions over one pre-order."""

    def __init__(self, base: PreOrder, *, opens_cap: int = 12,
                 growth_cap: int = GROWTH_CAP):
        self.base = base
        self.opens_cap = opens_cap
        self.growth_cap = growth_cap
        self._levels: list[HierarchyLevel] = []
        self._member_cache: dict[tuple[HF, int], bool] = {}
        self._cone_cache: dict[tuple[frozenset, int], tuple[frozenset, ...]] = {}

    # --- level construction ------------------------------------------------

    def level(self, n: int) -> HierarchyLevel:
        if n < 1:
            raise ValueError("levels are numbered from 1")
        self.build(n)
        return self._levels[n - 1]

    @property
    def built_depth(self) -> int:
        return len(self._levels)

    def build(self, depth: int) -> list[HierarchyLevel]:
        """Materialize levels 1..depth (extending what is already built)."""
        while len(self._levels) < depth:
            if not self._levels:
                self._levels.append(self._level1())
            else:
                self._levels.append(self._next(self._levels[-1]))
        return self._levels[:depth]

    def _level1(self) -> HierarchyLevel:
        opens = enumerate_opens(self.base, cap=self.opens_cap)
        masks = tuple(d.members for d in opens)
        labels = self.base.labels
        values = tuple(frozenset(labels[i] for i in bits(m)) for m in masks)
        return HierarchyLevel(1, masks, self.base.n, values)

    def _next(self, lv: HierarchyLevel) -> HierarchyLevel:
        k = len(lv)
        if k > self.growth_cap:
            raise CapExceeded(
                f"level {lv.index} has {k} elements, over growth cap {self.growth_cap}"
            )
        masks = sorted(downset_masks(lv.sub_rows, k),
                       key=lambda s: (s.bit_count(), s))
        values = tuple(frozenset(lv.values[i] for i in bits(m)) for m in masks)
        return HierarchyLevel(lv.index + 1, tuple(masks), k, values)

    # --- membership --------------------------------------------------------

    def member_level(self, v: HF, n: int) -> bool:
        """Decide v in level n by the recursive characterization.

        Level 1 is nonemptiness plus lower-openness over the carrier;
        level n+1 requires every member to be a level-n element whose
        level-n inclusion cone stays inside v.
        """
        if n < 1:
            raise ValueError("levels are numbered from 1")
        key = (v, n)
        hit = self._member_cache.get(key)
        if hit is not None:
            return hit
        if not isinstance(v, frozenset) or not v:
            result = False
        elif hf_rank(v) != n:
            # level-n members have rank exactly n; refuting early keeps
            # deep probes from materializing levels they cannot need
            result = False
        elif n == 1:
            result = self._member1(v)
        else:
            result = (all(self.member_level(y, n - 1) for y in v)
                      and all(set(self._cone(y, n - 1)) <= v for y in v))
        self._member_cache[key] = result
        return result

    def _member1(self, v: frozenset) -> bool:
        mask = 0
        for y in v:
            if not isinstance(y, str):
                return False
            try:
                i = self.base.atom(y)
            except KeyError:
                return False
            mask |= 1 << i
        return is_lower_open(self.base, mask)

    def _cone(self, y: frozenset, n: int) -> tuple[frozenset, ...]:
        """The level-n elements included in y (y itself a level-n value)."""
        key = (y, n)
        hit = self._cone_cache.get(key)
        if hit is None:
            lv = self.level(n)
            hit = tuple(z for z in lv.values if z <= y)
            self._cone_cache[key] = hit
        return hit

    def finite_level_of(self, v: HF, bound: int) -> int | None:
        for n in range(1, bound + 1):
            if self.member_level(v, n):
                return n
        return None

    def membership(self, v: HF, bound: int) -> Membership:
        """Bounded decision: finite level, limit-successor member, or neither.

        The limit route needs every member to sit at a decided finite
        level; a member whose rank exceeds the bound leaves the query
        undecided. For values whose members all have decided finite
        levels the outcome is conclusive for the whole hierarchy: tiers
        past the limit successor need genuinely limit-level members.
        """
        if isinstance(v, str) or not isinstance(v, frozenset) or not v:
            return Membership("outside")
        n = self.finite_level_of(v, bound)
        if n is not None:
            return Membership("level", n)
        member_levels: dict[frozenset, int] = {}
        for y in v:
            if not isinstance(y, frozenset):
                return Membership("outside")
            ly = self.finite_level_of(y, bound)
            if ly is None:
                if hf_rank(y) <= bound:
                    return Membership("outside")
                return Membership("undecided")
            member_levels[y] = ly
        present = sorted(set(member_levels.values()))
        if len(present) < 2:
            # one slice: finite membership was already refuted up to the
            # bound; past it we refuse to guess
            if present[0] + 1 <= bound:
                return Membership("outside")
            return Membership("undecided")
        for k in present:
            slice_k = frozenset(y for y, ly in member_levels.items() if ly == k)
            if not self.member_level(slice_k, k + 1):
                return Membership("outside")
        return Membership("limit", slice_levels=tuple(present))

    # --- powerset and union -------------------------------------------------

    def power_element(self, x: MElem) -> MElem:
        """The magma of submagmas of x, one level up.

        For a level-n member this is its inclusion cone within level n.
        """
        if not self.member_level(x.value, x.level):
            raise ValueError(f"value is not a level-{x.level} member")
        cone = frozenset(self._cone(x.value, x.level))
        return MElem(cone, x.level + 1)

    def union_report(self, v: HF, bound: int) -> UnionReport:
        mem = self.membership(v, bound)
        union = hf_union(v) if isinstance(v, frozenset) else frozenset()
        umem = self.membership(union, bound)
        decided = (mem.in_m
                   and umem.kind != "undecided")
        tier = self._criterion_tier(v, mem)
        crit_union = umem.in_m
        unmixed = self._criterion_unmixed(v, mem, bound)
        return UnionReport(mem, union, umem, tier, crit_union, unmixed, decided)

    def _criterion_tier(self, v: HF, mem: Membership) -> bool:
        if mem.kind == "level":
            return mem.level >= 2
        if mem.kind == "limit":
            # two steps above the limit: members must clear the bottom
            # level and their inclusion cones must close up inside v
            levels = {}
            for y in v:
                ly = self.finite_level_of(y, max(mem.slice_levels))
                if ly is None or ly < 2:
                    return False
                levels[y] = ly
            return all(set(self._cone(y, ly)) <= v for y, ly in levels.items())
        return False

    def _criterion_unmixed(self, v: HF, mem: Membership, bound: int) -> bool:
        if not mem.in_m or mem.kind == "level" and mem.level == 1:
            return False
        member_levels = []
        for y in v:
            ly = self.finite_level_of(y, bound) if isinstance(y, frozenset) else None
            if ly is None:
                return False
            member_levels.append(ly)
        return (all(ly == 1 for ly in member_levels)
                or all(ly >= 2 for ly in member_levels))

    # --- reformulated magma principles ---------------------------------------

    def classify(self, v: HF, bound: int) -> str:
        """Trichotomy: every value is an atom, a magma, or a plain set."""
        if isinstance(v, str):
            return "atom"
        if not isinstance(v, frozenset):
            raise TypeError(f"not a hereditarily finite value: {v!r}")
        mem = self.membership(v, bound)
        if mem.kind == "undecided":
            return "undecided"
        return "magma" if mem.in_m else "set"


def find_open_partition(rows: tuple[AtomSet, ...], x: AtomSet
                        ) -> tuple[AtomSet, AtomSet] | None:
    """Split x into two disjoint nonempty sets open w.r.t. rows, if possible.

    rows[i] is the predecessor mask of element i in the ambient space;
    exhaustive over the submasks of x.
    """

    def open_in_space(s: AtomSet) -> bool:
        return all(not rows[i] & ~s for i in bits(s))

    y1 = (x - 1) & x
    while y1:
        y2 = x ^ y1
        if y1 < y2:  # each unordered split once
            if open_in_space(y1) and open_in_space(y2):
                return y1, y2
        y1 = (y1 - 1) & x
    return None


def basic_open_partition_free(p: PreOrder) -> list[int]:
    """Atoms whose predecessor cone admits a two-block open partition.

    Empty on every model: a cone's tip must fall in one block, dragging
    the whole cone with it.
    """
    return [a for a in range(p.n)
            if find_open_partition(p.pred, p.predecessors(a)) is not None]


def level_basic_open_partition_free(lv: HierarchyLevel, *, space_cap: int = 12
                                    ) -> list[int]:
    """Same check for the basic opens of one materialized level's space."""
    if len(lv) > space_cap:
        raise CapExceeded(f"level of size {len(lv)} over partition-search cap")
    rows = lv.sub_rows
    return [i for i in range(len(lv))
            if find_open_partition(rows, rows[i]) is not None]


# --- one-shot conveniences ---------------------------------------------------


def level1(p: PreOrder, *, cap: int = 12) -> HierarchyLevel:
    return Hierarchy(p, opens_cap=cap).level(1)


def next_level(lv: HierarchyLevel, p: PreOrder, *,
               growth_cap: int = GROWTH_CAP) -> HierarchyLevel:
    h = Hierarchy(p, growth_cap=growth_cap)
    return h._next(lv)


def build_levels(p: PreOrder, depth: int, *, opens_cap: int = 12,
                 growth_cap: int = GROWTH_CAP) -> list[HierarchyLevel]:
    return Hierarchy(p, opens_cap=opens_cap, growth_cap=growth_cap).build(depth)


def member_level(p: PreOrder, v: HF, n: int, **caps) -> bool:
    return Hierarchy(p, **caps).member_level(v, n)


def in_M_bounded(p: PreOrder, v: HF, bound: int, **caps) -> Membership:
    return Hierarchy(p, **caps).membership(v, bound)


def pow_in_M(p: PreOrder, x: MElem, **caps) -> MElem:
    return Hierarchy(p, **caps).power_element(x)


def union_in_M(p: PreOrder, v: HF, bound: int, **caps) -> UnionReport:
    return Hierarchy(p, **caps).union_report(v, bound)
