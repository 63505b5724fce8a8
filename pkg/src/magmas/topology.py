"""Lower-open sets of a finite pre-order.

A set is lower open when it contains the predecessor cone of each of its
members. The nonempty lower-open sets are the level-1 magmas; this module
enumerates them, finds the minimal ones, and checks saturation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .preorder import AtomSet, CapExceeded, PreOrder, bits

OPENS_CAP = 12


@dataclass(frozen=True)
class DownSet:
    """A validated nonempty lower-open subset of a carrier."""

    base: PreOrder
    members: AtomSet

    def __post_init__(self) -> None:
        if self.members == 0:
            raise ValueError("a magma is a nonempty set")
        if self.members & ~self.base.full_mask:
            raise ValueError("members outside the carrier")
        if not is_lower_open(self.base, self.members):
            raise ValueError("set is not downward closed")

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> a & 1)

    def labels(self) -> list[str]:
        return self.base.set_labels(self.members)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def is_lower_open(p: PreOrder, s: AtomSet) -> bool:
    """Downward closed: every member brings its whole predecessor cone.

    The empty set counts as open here; DownSet construction is what
    enforces nonemptiness.
    """
    return all(not p.pred[a] & ~s for a in bits(s))


def _is_upper_open(p: PreOrder, s: AtomSet) -> bool:
    # dual predicate, only used by the complement-duality check
    return all(not _succ(p, a) & ~s for a in bits(s))


def _succ(p: PreOrder, a: int) -> AtomSet:
    out = 0
    for b in range(p.n):
        if p.pred[b] >> a & 1:
            out |= 1 << b
    return out


def complement_duality_holds(p: PreOrder, s: AtomSet) -> bool:
    return is_lower_open(p, s) == _is_upper_open(p, p.full_mask & ~s)


def down_closure(p: PreOrder, s: AtomSet) -> AtomSet:
    """Union of the predecessor cones of s: the least open superset."""
    out = 0
    for a in bits(s):
        out |= p.pred[a]
    return out


def downset_masks(rows: tuple[AtomSet, ...], n: int) -> Iterator[AtomSet]:
    """All nonempty downward-closed masks of an n-element pre-order.

    ``rows[j]`` is the predecessor mask of element j. Plain subset walk
    over all 2^n - 1 candidates; callers cap n.
    """
    for s in range(1, 1 << n):
        m = s
        ok = True
        while m:
            low = m & -m
            if rows[low.bit_length() - 1] & ~s:
                ok = False
                break
            m ^= low
        if ok:
            yield s


def enumerate_opens(p: PreOrder, *, cap: int = OPENS_CAP) -> list[DownSet]:
    """All nonempty lower-open subsets, sorted by size then bit pattern."""
    if p.n > cap:
        raise CapExceeded(f"carrier size {p.n} exceeds open-enumeration cap {cap}")
    masks = sorted(downset_masks(p.pred, p.n), key=lambda s: (s.bit_count(), s))
    return [DownSet(p, s) for s in masks]


def is_minimal_open(p: PreOrder, x: DownSet | AtomSet) -> bool:
    """No open set sits properly inside x.

    Decided pointwise: x is minimal exactly when it equals the
    predecessor cone of each of its members.
    """
    s = x.members if isinstance(x, DownSet) else x
    return s != 0 and all(p.pred[a] == s for a in bits(s))


def minimal_opens(p: PreOrder, *, cap: int = OPENS_CAP) -> list[DownSet]:
    """The minimal elements of the open-set family; never empty finitely."""
    return [x for x in enumerate_opens(p, cap=cap) if is_minimal_open(p, x)]


def is_saturated(p: PreOrder, s: AtomSet) -> bool:
    """Closed under mutual dependence: members bring their whole class."""
    return all(not p.equiv_class(a) & ~s for a in bits(s))
