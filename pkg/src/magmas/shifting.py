"""Shifting a pre-order to the powerset of its carrier.

The shifted relation compares subsets by simulation: x is below y when
every member of x depends on some member of y. On open sets the shifted
relation collapses to plain inclusion, which is what makes the level
construction in :mod:`magmas.hierarchy` work.
"""

from __future__ import annotations

from dataclasses import dataclass

from .preorder import AtomSet, CapExceeded, PreOrder
from .topology import down_closure, downset_masks, is_lower_open

SHIFT_CAP = 12


def shift_leq(p: PreOrder, x: AtomSet, y: AtomSet) -> bool:
    """x below y in the shifted relation: each a in x has some b in y above it.

    Empty x is below everything; only the empty set is below empty y.
    """
    return not x & ~down_closure(p, y)


def pr_plus(p: PreOrder, x: AtomSet, *, cap: int = SHIFT_CAP) -> list[AtomSet]:
    """All subsets y of the carrier (the empty one included) below x."""
    if p.n > cap:
        raise CapExceeded(f"carrier size {p.n} exceeds shift materialization cap {cap}")
    out = [y for y in range(1 << p.n) if shift_leq(p, y, x)]
    out.sort(key=lambda s: (s.bit_count(), s))
    return out


def powerset_masks(x: AtomSet) -> list[AtomSet]:
    """Every submask of x, the empty one included, sorted like pr_plus."""
    subs = []
    s = x
    while True:
        subs.append(s)
        if s == 0:
            break
        s = (s - 1) & x
    subs.sort(key=lambda m: (m.bit_count(), m))
    return subs


@dataclass(frozen=True)
class ConnectionCheck:
    """Powerset-versus-shifted-cone comparison for one subset."""

    subset_dir: bool            # every subset of x is below x
    equality_when_open: bool    # shifted cone equals the powerset, if x is open

    @property
    def ok(self) -> bool:
        return self.subset_dir and self.equality_when_open


def check_connection(p: PreOrder, x: AtomSet, *, cap: int = SHIFT_CAP) -> ConnectionCheck:
    cone = pr_plus(p, x, cap=cap)
    power = powerset_masks(x)
    cone_set = set(cone)
    subset_dir = all(y in cone_set for y in power)
    if is_lower_open(p, x):
        equality = cone == power
    else:
        equality = True
    return ConnectionCheck(subset_dir, equality)


def shifted_is_total(p: PreOrder, *, cap: int = SHIFT_CAP) -> bool:
    """Totality of the shifted relation over all subset pairs."""
    if p.n > cap:
        raise CapExceeded(f"carrier size {p.n} exceeds shift materialization cap {cap}")
    closures = [down_closure(p, s) for s in range(1 << p.n)]
    for x in range(1 << p.n):
        for y in range(x):
            if x & ~closures[y] and y & ~closures[x]:
                return False
    return True


def shifted_opens_match(p: PreOrder, *, cap: int = SHIFT_CAP) -> bool:
    """Do the shifted relation and inclusion induce the same topology on M1?

    Enumerates the lower-open families of (M1, shifted) and (M1, subset)
    and compares them set-for-set.
    """
    from .topology import enumerate_opens

    opens = [d.members for d in enumerate_opens(p, cap=cap)]
    k = len(opens)
    if k > 22:
        raise CapExceeded(f"{k} open sets is too many to re-enumerate over")
    shift_rows = []
    subset_rows = []
    for j, xj in enumerate(opens):
        srow = 0
        crow = 0
        for i, xi in enumerate(opens):
            if shift_leq(p, xi, xj):
                srow |= 1 << i
            if not xi & ~xj:
                crow |= 1 << i
        shift_rows.append(srow)
        subset_rows.append(crow)
    lo_shift = list(downset_masks(tuple(shift_rows), k))
    lo_subset = list(downset_masks(tuple(subset_rows), k))
    return lo_shift == lo_subset


def preorder_of_opens(p: PreOrder, *, cap: int = SHIFT_CAP) -> PreOrder:
    """The open-set family of p as a pre-order under inclusion.

    Pseudo-atom labels are the rendered open sets.
    """
    from .topology import enumerate_opens

    opens = enumerate_opens(p, cap=cap)
    labels = tuple("{" + ",".join(d.labels()) + "}" for d in opens)
    rows = []
    for xj in opens:
        row = 0
        for i, xi in enumerate(opens):
            if not xi.members & ~xj.members:
                row |= 1 << i
        rows.append(row)
    return PreOrder(labels, tuple(rows))
