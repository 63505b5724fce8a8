"""Computable infinite pre-orders and finitely generated open sets.

Finite carriers always have atoms without strict predecessors, so the
no-minimal-elements axiom only holds on infinite models. The models here
are decidable: atoms are finite binary strings (optionally tagged with a
cluster index), the relation is prefix testing, and every atom has an
explicit strict predecessor, so all three axioms can be sample-validated
and open sets can be handled through finite generator lists.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator


@dataclass(frozen=True, eq=False)
class SymbolicPreOrder:
    """A countable pre-ordered atom set given by decidable predicates.

    ``leq`` decides the relation, ``strict_pred`` returns a witness
    strictly below its argument (the no-minimal-elements axiom made
    computable), and ``atoms_up_to`` enumerates the atoms of bounded
    encoding depth for sampling and bounded semantics. ``cone_meet``
    is present when the intersection of two principal cones is again a
    principal cone or empty; models without it do not support
    generator-level intersection.
    """

    name: str
    leq: Callable[[object, object], bool]
    strict_pred: Callable[[object], object]
    atoms_up_to: Callable[[int], Iterator[object]]
    random_atom: Callable[[random.Random, int, int], object]
    render_atom: Callable[[object], str]
    parse_atom: Callable[[str], object]
    cone_meet: Callable[[object, object], object | None] | None = None

    def strict(self, a: object, b: object) -> bool:
        return self.leq(a, b) and not self.leq(b, a)


def _bitstrings(lo: int, hi: int) -> Iterator[str]:
    for length in range(lo, hi + 1):
        for tup in itertools.product("01", repeat=length):
            yield "".join(tup)


def _check_bitstring(s: str) -> str:
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"atom must be a nonempty binary string, got {s!r}")
    return s


def _random_bitstring(rng: random.Random, lo: int, hi: int) -> str:
    length = rng.randint(lo, hi)
    return "".join(rng.choice("01") for _ in range(length))


def binary_string_model() -> SymbolicPreOrder:
    """Atoms are nonempty binary strings; s <= t iff t is a prefix of s.

    Every cone is the infinite set of extensions of its tip, and
    appending "0" always gives a strict predecessor.
    """
    return SymbolicPreOrder(
        name="prefix",
        leq=lambda s, t: s.startswith(t),
        strict_pred=lambda t: t + "0",
        atoms_up_to=lambda depth: _bitstrings(1, depth),
        random_atom=_random_bitstring,
        render_atom=lambda s: s,
        parse_atom=_check_bitstring,
        cone_meet=lambda s, t: s if s.startswith(t) else (t if t.startswith(s) else None),
    )


def clustered_model(k: int) -> SymbolicPreOrder:
    """Prefix model with k-fold mutual-dependence clusters.

    Atoms are (string, i) with i < k; the relation ignores the tag, so
    each string carries one equivalence class of size k.
    """
    if k < 2:
        raise ValueError("cluster size must be at least 2")

    def atoms_up_to(depth: int) -> Iterator[tuple[str, int]]:
        for s in _bitstrings(1, depth):
            for i in range(k):
                yield (s, i)

    def parse(text: str) -> tuple[str, int]:
        s, sep, idx = text.partition("#")
        if not sep:
            raise ValueError(f"clustered atom must look like s#i, got {text!r}")
        i = int(idx)
        if not 0 <= i < k:
            raise ValueError(f"cluster index {i} outside 0..{k - 1}")
        return (_check_bitstring(s), i)

    return SymbolicPreOrder(
        name=f"clustered:{k}",
        leq=lambda a, b: a[0].startswith(b[0]),
        strict_pred=lambda a: (a[0] + "0", 0),
        atoms_up_to=atoms_up_to,
        random_atom=lambda rng, lo, hi: (_random_bitstring(rng, lo, hi), rng.randrange(k)),
        render_atom=lambda a: f"{a[0]}#{a[1]}",
        parse_atom=parse,
        cone_meet=lambda a, b: (a[0], 0) if a[0].startswith(b[0])
        else ((b[0], 0) if b[0].startswith(a[0]) else None),
    )


BUILTIN_MODELS = ("prefix", "clustered:k")


def model_by_name(name: str) -> SymbolicPreOrder:
    if name == "prefix":
        return binary_string_model()
    if name.startswith("clustered:"):
        return clustered_model(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown symbolic model {name!r} (expected prefix or clustered:k)")


@dataclass(frozen=True, eq=False)
class GenOpen:
    """A finitely generated open set over a symbolic model.

    At level 1 the generators are atoms and the set is the union of
    their cones; at level k+1 they are level-k GenOpens and the set is
    the union of their inclusion cones inside level k.
    """

    model: SymbolicPreOrder
    level: int
    generators: tuple = ()

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError("level must be positive")
        if not self.generators:
            raise ValueError("generator list must be nonempty")
        for g in self.generators:
            if self.level == 1 and isinstance(g, GenOpen):
                raise ValueError("level-1 generators must be atoms")
            if self.level > 1:
                if not isinstance(g, GenOpen):
                    raise ValueError("higher-level generators must be GenOpen values")
                if g.level != self.level - 1:
                    raise ValueError("generators must sit one level below")
                if g.model is not self.model:
                    raise ValueError("generators from a different model")

    def __repr__(self) -> str:
        if self.level == 1:
            inner = ",".join(self.model.render_atom(g) for g in self.generators)
            return f"<pr {inner}>"
        return "<cones " + "; ".join(repr(g) for g in self.generators) + ">"


def level1(model: SymbolicPreOrder, atoms: Iterable[object]) -> GenOpen:
    return GenOpen(model, 1, tuple(atoms))


def _check_same(g1: GenOpen, g2: GenOpen) -> None:
    if g1.model is not g2.model:
        raise ValueError("operands live in different models")
    if g1.level != g2.level:
        raise ValueError(f"level mismatch: {g1.level} vs {g2.level}")


def gen_member(g: GenOpen, z: object) -> bool:
    """Is z (an atom, or a GenOpen one level down) in the denoted set?"""
    if g.level == 1:
        if isinstance(z, GenOpen):
            raise ValueError("level-1 members are atoms")
        return any(g.model.leq(z, a) for a in g.generators)
    if not isinstance(z, GenOpen) or z.level != g.level - 1:
        raise ValueError("member must sit one level below the open")
    return any(gen_subset(z, x) for x in g.generators)


def gen_subset(g1: GenOpen, g2: GenOpen) -> bool:
    """Inclusion of denotations, decided on the generators.

    A cone is inside an open set exactly when its tip is a member, so
    it suffices that every generator of g1 is a member of g2.
    """
    _check_same(g1, g2)
    return all(gen_member(g2, a) for a in g1.generators)


def gen_equal(g1: GenOpen, g2: GenOpen) -> bool:
    """Extensional equality; distinct generator lists may denote one set."""
    return gen_subset(g1, g2) and gen_subset(g2, g1)


def gen_union(g1: GenOpen, g2: GenOpen) -> GenOpen:
    _check_same(g1, g2)
    return GenOpen(g1.model, g1.level, g1.generators + g2.generators)


def gen_intersect(g1: GenOpen, g2: GenOpen) -> GenOpen | None:
    """Pairwise meet of generator cones; None when the intersection is empty.

    Only guaranteed to stay finitely generated in models that provide
    cone_meet (both built-ins do); raises otherwise.
    """
    _check_same(g1, g2)
    if g1.level == 1:
        meet = g1.model.cone_meet
        if meet is None:
            raise ValueError(
                f"model {g1.model.name!r} does not support cone intersection"
            )
        gens = []
        for a in g1.generators:
            for b in g2.generators:
                m = meet(a, b)
                if m is not None:
                    gens.append(m)
    else:
        gens = []
        for x in g1.generators:
            for y in g2.generators:
                m = gen_intersect(x, y)
                if m is not None:
                    gens.append(m)
    if not gens:
        return None
    return GenOpen(g1.model, g1.level, tuple(gens))


def strict_shrink(g: GenOpen) -> GenOpen:
    """A generated open properly inside g.

    Shrinks the first generator: its strict predecessor's cone at level
    1, or the cone of its own shrink at higher levels. The old tip
    witnesses properness.
    """
    first = g.generators[0]
    if g.level == 1:
        return GenOpen(g.model, 1, (g.model.strict_pred(first),))
    return GenOpen(g.model, g.level, (strict_shrink(first),))


def normalize(g: GenOpen) -> GenOpen:
    """Drop generators absorbed by another generator's cone."""
    kept: list = []
    for i, a in enumerate(g.generators):
        absorbed = False
        for j, b in enumerate(g.generators):
            if i == j:
                continue
            if g.level == 1:
                wider = g.model.leq(a, b) and not (g.model.leq(b, a) and j > i)
            else:
                wider = gen_subset(a, b) and not (gen_subset(b, a) and j > i)
            if wider:
                absorbed = True
                break
        if not absorbed:
            kept.append(a)
    return GenOpen(g.model, g.level, tuple(kept))


def members_up_to(g: GenOpen, depth: int) -> list[object]:
    """The atoms of bounded depth in a level-1 generated open."""
    if g.level != 1:
        raise ValueError("bounded enumeration is a level-1 operation")
    return [z for z in g.model.atoms_up_to(depth) if gen_member(g, z)]


@dataclass
class ModelValidation:
    """Sampled check of reflexivity, transitivity, and strict predecessors."""

    model: str
    atoms_checked: int
    triples_checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_model(
    model: SymbolicPreOrder,
    *,
    depth: int = 8,
    extra_samples: int = 200,
    triple_samples: int = 500,
    seed: int = 0,
) -> ModelValidation:
    """Validate the axioms on all atoms up to ``depth`` plus random longer ones."""
    rng = random.Random(seed)
    pool = list(model.atoms_up_to(depth))
    pool.extend(model.random_atom(rng, depth + 1, depth + 8) for _ in range(extra_samples))
    failures: list[str] = []
    for a in pool:
        if not model.leq(a, a):
            failures.append(f"not reflexive at {model.render_atom(a)}")
        b = model.strict_pred(a)
        if not model.strict(b, a):
            failures.append(f"strict_pred failed at {model.render_atom(a)}")
    for _ in range(triple_samples):
        a, b, c = (rng.choice(pool) for _ in range(3))
        if model.leq(a, b) and model.leq(b, c) and not model.leq(a, c):
            failures.append(
                "not transitive at "
                + ", ".join(model.render_atom(z) for z in (a, b, c))
            )
    return ModelValidation(model.name, len(pool), triple_samples, failures)
