"""Finite pre-orders over named atoms.

Atoms are the indices 0..n-1 of a label list; subsets of the carrier are
plain ints used as bitmasks (bit i set = atom i present). A relation is
stored as one predecessor mask per atom: bit a of ``pred[b]`` means
a <= b ("a depends on b"). ``build`` takes arbitrary edges and forms the
reflexive-transitive closure, so a built ``PreOrder`` always satisfies
reflexivity and transitivity.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator

AtomSet = int

ENUM_DEFAULT_BOUND = 4
ENUM_HARD_CAP = 5

_LETTERS = string.ascii_lowercase


class CapExceeded(RuntimeError):
    """A size-capped operation was asked to exceed its cap."""


def bits(mask: AtomSet) -> Iterator[int]:
    """Indices of the set bits of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: AtomSet) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class PreOrder:
    """A carrier of labeled atoms plus a predecessor-mask relation.

    Construct through :func:`build` (which closes the relation) or
    :meth:`from_pred_rows` (which validates an already-closed one);
    the raw constructor performs no checks.
    """

    labels: tuple[str, ...]
    pred: tuple[AtomSet, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> AtomSet:
        return (1 << self.n) - 1

    def _check_atom(self, a: int) -> None:
        if not 0 <= a < self.n:
            raise IndexError(f"atom {a} outside carrier of size {self.n}")

    def leq(self, a: int, b: int) -> bool:
        """a <= b, i.e. a depends on b."""
        self._check_atom(a)
        self._check_atom(b)
        return bool(self.pred[b] >> a & 1)

    def strict(self, a: int, b: int) -> bool:
        """a < b: a <= b but not b <= a."""
        self._check_atom(a)
        self._check_atom(b)
        return bool(self.pred[b] >> a & 1) and not self.pred[a] >> b & 1

    def predecessors(self, a: int) -> AtomSet:
        """The principal cone {b : b <= a}; always contains a."""
        self._check_atom(a)
        return self.pred[a]

    def successors(self, a: int) -> AtomSet:
        """{b : a <= b}, the dual cone."""
        self._check_atom(a)
        out = 0
        for b in range(self.n):
            if self.pred[b] >> a & 1:
                out |= 1 << b
        return out

    def equiv_class(self, a: int) -> AtomSet:
        """Atoms mutually dependent with a."""
        return self.predecessors(a) & self.successors(a)

    def equiv_classes(self) -> list[AtomSet]:
        """Partition of the carrier into mutual-dependence classes.

        Ordered by least member; two atoms share a class exactly when
        their predecessor cones coincide.
        """
        seen = 0
        out = []
        for a in range(self.n):
            if seen >> a & 1:
                continue
            cls = self.equiv_class(a)
            seen |= cls
            out.append(cls)
        return out

    def satisfies_star(self) -> tuple[bool, int | None]:
        """Does every atom have a strict predecessor?

        Returns (True, None) or (False, witness) with the first atom in
        carrier order that has none. Equivalent to the lower topology
        having no minimal open set; false on every finite carrier.
        """
        for a in range(self.n):
            row = self.pred[a] & ~(1 << a)
            if not any(not self.pred[b] >> a & 1 for b in bits(row)):
                return False, a
        return True, None

    def is_total(self) -> bool:
        return all(
            self.pred[b] >> a & 1 or self.pred[a] >> b & 1
            for a in range(self.n)
            for b in range(a + 1, self.n)
        )

    def atom(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown atom label {label!r}") from None

    def atom_set(self, labels: Iterable[str]) -> AtomSet:
        out = 0
        for lab in labels:
            out |= 1 << self.atom(lab)
        return out

    def set_labels(self, mask: AtomSet) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    @classmethod
    def from_pred_rows(cls, labels: Iterable[str], rows: Iterable[AtomSet]) -> PreOrder:
        """Wrap already-closed predecessor rows, validating D1/D2."""
        p = cls(tuple(labels), tuple(rows))
        if len(p.pred) != p.n:
            raise ValueError("one predecessor row per atom required")
        for b, row in enumerate(p.pred):
            if row & ~p.full_mask:
                raise ValueError(f"row {b} has bits outside the carrier")
            if not row >> b & 1:
                raise ValueError(f"relation not reflexive at atom {b}")
            for a in bits(row):
                if p.pred[a] & ~row:
                    raise ValueError(f"relation not transitive through atom {a}")
        return p

    def __repr__(self) -> str:
        edges = [
            f"{self.labels[a]}<={self.labels[b]}"
            for b in range(self.n)
            for a in bits(self.pred[b] & ~(1 << b))
        ]
        return f"PreOrder({' '.join(self.labels)}; {', '.join(edges)})"


def _close(rows: list[AtomSet]) -> tuple[AtomSet, ...]:
    # Warshall-style fixed point on predecessor masks: fold pred[a] into
    # pred[b] for every a below b until nothing changes.
    n = len(rows)
    changed = True
    while changed:
        changed = False
        for b in range(n):
            acc = rows[b]
            for a in bits(acc):
                acc |= rows[a]
            if acc != rows[b]:
                rows[b] = acc
                changed = True
    return tuple(rows)


def build(atoms: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> PreOrder:
    """Make the pre-order generated by ``edges`` (pairs (a, b) meaning a <= b).

    The result is the reflexive-transitive closure of the input; building
    again from an already-closed edge list returns the same relation.
    """
    labels = tuple(atoms)
    if not labels:
        raise ValueError("carrier must contain at least one atom")
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise ValueError(f"duplicate atom label {lab!r}")
        index[lab] = i
    n = len(labels)
    rows = [1 << b for b in range(n)]
    for a_lab, b_lab in edges:
        if a_lab not in index:
            raise ValueError(f"edge endpoint {a_lab!r} is not a declared atom")
        if b_lab not in index:
            raise ValueError(f"edge endpoint {b_lab!r} is not a declared atom")
        rows[index[b_lab]] |= 1 << index[a_lab]
    return PreOrder(labels, _close(rows))


def default_labels(n: int) -> tuple[str, ...]:
    if n <= len(_LETTERS):
        return tuple(_LETTERS[:n])
    return tuple(f"a{i}" for i in range(n))


def enumerate_preorders(n: int, *, bound: int = ENUM_DEFAULT_BOUND) -> Iterator[PreOrder]:
    """Every labeled pre-order on n atoms, exactly once, in a fixed order.

    Runs over all 2^(n(n-1)) off-diagonal edge patterns and keeps the
    transitive ones, so the stream index of a model is stable across runs.
    """
    if n > min(bound, ENUM_HARD_CAP):
        raise CapExceeded(
            f"carrier size {n} exceeds enumeration bound {min(bound, ENUM_HARD_CAP)}"
        )
    if n < 1:
        raise ValueError("carrier size must be positive")
    labels = default_labels(n)
    pairs = [(a, b) for b in range(n) for a in range(n) if a != b]
    base = [1 << b for b in range(n)]
    for pattern in range(1 << len(pairs)):
        rows = base.copy()
        for k, (a, b) in enumerate(pairs):
            if pattern >> k & 1:
                rows[b] |= 1 << a
        ok = True
        for b in range(n):
            row = rows[b]
            for a in bits(row):
                if rows[a] & ~row:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield PreOrder(labels, tuple(rows))


def count_preorders(n: int, *, bound: int = ENUM_DEFAULT_BOUND) -> int:
    return sum(1 for _ in enumerate_preorders(n, bound=bound))


# --- text format -----------------------------------------------------------
#
# One pre-order per file:
#
#     # comment
#     atoms: a b c
#     a <= b
#     b <= c
#
# Blank lines and '#' comments are ignored; labels are arbitrary
# non-whitespace tokens.


def parse_preorder(text: str) -> PreOrder:
    atoms: list[str] | None = None
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("atoms:"):
            if atoms is not None:
                raise ValueError(f"line {lineno}: repeated atoms: line")
            atoms = line[len("atoms:"):].split()
            continue
        if "<=" in line:
            left, _, right = line.partition("<=")
            a, b = left.split(), right.split()
            if len(a) != 1 or len(b) != 1:
                raise ValueError(f"line {lineno}: expected 'a <= b', got {raw!r}")
            edges.append((a[0], b[0]))
            continue
        raise ValueError(f"line {lineno}: unrecognized line {raw!r}")
    if atoms is None:
        raise ValueError("missing atoms: line")
    return build(atoms, edges)


def format_preorder(p: PreOrder) -> str:
    """Render in the text input format (full closed edge list, no diagonal)."""
    lines = ["atoms: " + " ".join(p.labels)]
    for b in range(p.n):
        for a in bits(p.pred[b] & ~(1 << b)):
            lines.append(f"{p.labels[a]} <= {p.labels[b]}")
    return "\n".join(lines) + "\n"


def load_preorder(path: str) -> PreOrder:
    with open(path, encoding="utf-8") as fh:
        return parse_preorder(fh.read())


def parse_atom_set(p: PreOrder, text: str) -> AtomSet:
    """Parse a set literal like ``{a,b}`` (braces optional, spaces allowed)."""
    body = text.strip()
    if body.startswith("{"):
        if not body.endswith("}"):
            raise ValueError(f"unbalanced braces in set literal {text!r}")
        body = body[1:-1]
    body = body.replace(",", " ")
    return p.atom_set(body.split())


def format_atom_set(p: PreOrder, mask: AtomSet) -> str:
    return "{" + ",".join(p.set_labels(mask)) + "}"
