"""Statement-verification harness over exhaustively enumerated models.

Each suite re-checks one statement about pre-ordered atom sets against
every labeled pre-order up to the configured carrier size, or against the
sampled symbolic models. A failed suite carries a replayable
counterexample: the exact relation rows (so that injected-fault models
are not repaired by re-closing) plus the witness data of the failing
instance.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import hierarchy as hm
from . import shifting as sh
from . import symbolic as sym
from . import topology as tp
from .preorder import (AtomSet, CapExceeded, PreOrder, bits, build,
                       enumerate_preorders, format_atom_set, format_preorder)

HIER_GROWTH_CAP = 20  # |M2| reaches 18 on the 3-atom antichain
HIER_MAX_N = 3
SHIFT_LAW_MAX_N = 3
MIXED_FAMILY_SIZE = 20
TRICHOTOMY_CORPUS = 100


class ConfigError(ValueError):
    """Invalid harness configuration."""


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...] = ("all",)
    max_size: int = 4
    depth: int = 3
    symbolic_depth: int = 8
    seed: int = 0
    out: str | None = None

    def validate(self) -> None:
        if not 1 <= self.max_size <= 5:
            raise ConfigError(f"max_size must be in 1..5, got {self.max_size}")
        if self.depth < 1:
            raise ConfigError(f"depth must be at least 1, got {self.depth}")
        if self.symbolic_depth < 3:
            raise ConfigError(
                f"symbolic_depth must be at least 3, got {self.symbolic_depth}"
            )
        unknown = [s for s in self.suites if s != "all" and s not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)}")

    def selected(self) -> tuple[str, ...]:
        if "all" in self.suites:
            return tuple(SUITES)
        return tuple(s for s in SUITES if s in self.suites)


@dataclass(frozen=True)
class Counterexample:
    suite: str
    model: str
    model_text: str
    labels: tuple[str, ...]
    rows: tuple[int, ...]
    witness: dict
    message: str

    def to_blob(self) -> dict:
        return {
            "suite": self.suite,
            "model": self.model,
            "model_text": self.model_text,
            "labels": list(self.labels),
            "rows": list(self.rows),
            "witness": self.witness,
            "message": self.message,
        }

    @staticmethod
    def from_blob(blob: dict) -> "Counterexample":
        try:
            return Counterexample(
                suite=blob["suite"],
                model=blob["model"],
                model_text=blob.get("model_text", ""),
                labels=tuple(blob.get("labels", ())),
                rows=tuple(blob.get("rows", ())),
                witness=dict(blob.get("witness", {})),
                message=blob.get("message", ""),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed counterexample blob: {exc}") from exc


@dataclass
class SuiteResult:
    suite_id: str
    statement: str
    models_checked: int
    failures: list[Counterexample] = field(default_factory=list)
    seconds: float = 0.0
    skipped: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.skipped or not self.failures


@dataclass
class Report:
    config: SuiteConfig
    results: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[Counterexample]:
        return [cx for r in self.results for cx in r.failures]


class RunContext:
    """Shared per-run caches: enumerated models and their hierarchies."""

    def __init__(self, cfg: SuiteConfig, model_hook: Callable | None = None):
        self.cfg = cfg
        self.model_hook = model_hook
        self._models: dict[int, list[tuple[str, PreOrder]]] = {}
        self._hier: dict[PreOrder, hm.Hierarchy] = {}

    def finite_models(self, max_n: int) -> list[tuple[str, PreOrder]]:
        out = []
        for n in range(1, max_n + 1):
            if n not in self._models:
                models = []
                for idx, p in enumerate(enumerate_preorders(n, bound=5)):
                    if self.model_hook is not None:
                        p = self.model_hook(p)
                    models.append((f"n={n}#{idx}", p))
                self._models[n] = models
            out.extend(self._models[n])
        return out

    def hierarchy(self, p: PreOrder) -> hm.Hierarchy:
        h = self._hier.get(p)
        if h is None:
            h = hm.Hierarchy(p, growth_cap=HIER_GROWTH_CAP)
            self._hier[p] = h
        return h

    def rng(self, suite_id: str, model_name: str) -> random.Random:
        return random.Random(f"{self.cfg.seed}:{suite_id}:{model_name}")


# --- finite suite checks ------------------------------------------------------
# Each check takes (p, model_name, ctx) and returns a list of witness dicts;
# an empty list means the statement held on that model.


def _chk_closure_idempotent(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    edges = [
        (p.labels[a], p.labels[b])
        for b in range(p.n)
        for a in bits(p.pred[b])
    ]
    rebuilt = build(p.labels, edges)
    if rebuilt.pred != p.pred:
        return [{"rebuilt_rows": list(rebuilt.pred)}]
    return []


def _chk_strict_laws(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    out = []
    for a in range(p.n):
        if p.strict(a, a):
            out.append({"kind": "irreflexive", "atom": p.labels[a]})
        for b in range(p.n):
            if p.strict(a, b) and (not p.leq(a, b) or p.strict(b, a)):
                out.append({"kind": "strict-law", "a": p.labels[a], "b": p.labels[b]})
    return out


def _chk_class_vs_cone(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    out = []
    for a in range(p.n):
        for b in range(p.n):
            same_class = p.equiv_class(a) == p.equiv_class(b)
            same_cone = p.predecessors(a) == p.predecessors(b)
            if same_class != same_cone:
                out.append({"a": p.labels[a], "b": p.labels[b]})
    return out


def _chk_cone_transitive(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    out = []
    for a in range(p.n):
        cone = p.predecessors(a)
        for b in bits(cone):
            if p.predecessors(b) & ~cone:
                out.append({"a": p.labels[a], "b": p.labels[b]})
    return out


def _chk_finite_star_fails(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    ok, witness = p.satisfies_star()
    if ok:
        return [{"kind": "star-satisfied-finitely"}]
    has_strict_pred = any(p.strict(b, witness) for b in range(p.n))
    if has_strict_pred:
        return [{"kind": "bad-witness", "atom": p.labels[witness]}]
    return []


def _chk_open_family(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    opens = [d.members for d in tp.enumerate_opens(p)]
    out = []
    for i, x in enumerate(opens):
        for y in opens[i:]:
            if not tp.is_lower_open(p, x | y):
                out.append({"kind": "union", "x": format_atom_set(p, x),
                            "y": format_atom_set(p, y)})
            meet = x & y
            if meet and not tp.is_lower_open(p, meet):
                out.append({"kind": "intersection", "x": format_atom_set(p, x),
                            "y": format_atom_set(p, y)})
    for x in opens:
        for y in opens:
            for z in opens:
                u = x | y | z
                m = x & y & z
                if not tp.is_lower_open(p, u) or (m and not tp.is_lower_open(p, m)):
                    out.append({"kind": "triple",
                                "sets": [format_atom_set(p, s) for s in (x, y, z)]})
    return out


def _chk_duality(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    return [
        {"set": format_atom_set(p, s)}
        for s in range(1 << p.n)
        if not tp.complement_duality_holds(p, s)
    ]


def _brute_minimal(p: PreOrder, x: AtomSet, opens: list[AtomSet]) -> bool:
    return not any(y != x and not y & ~x for y in opens)


def _chk_minimal_characterizations(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    opens = [d.members for d in tp.enumerate_opens(p)]
    out = []
    for x in opens:
        brute = _brute_minimal(p, x, opens)
        by_cone = all(p.predecessors(a) == x for a in bits(x))
        by_class = all(p.equiv_class(a) == x for a in bits(x))
        lib = tp.is_minimal_open(p, x)
        if not brute == by_cone == by_class == lib:
            out.append({"open": format_atom_set(p, x),
                        "brute": brute, "cone": by_cone,
                        "class": by_class, "library": lib})
    return out


def _chk_star_iff_no_minimal(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    star, _ = p.satisfies_star()
    no_minimal = not tp.minimal_opens(p)
    if star != no_minimal:
        return [{"star": star, "no_minimal": no_minimal}]
    return []


def _chk_cones_contain_minimal(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    minimal = [d.members for d in tp.minimal_opens(p)]
    out = []
    for a in range(p.n):
        cone = p.predecessors(a)
        if not any(not m & ~cone for m in minimal):
            out.append({"atom": p.labels[a]})
    return out


def _chk_shift_laws(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    subsets = list(range(1 << p.n))
    out = []
    for x in subsets:
        if not sh.shift_leq(p, x, x):
            out.append({"kind": "reflexive", "x": format_atom_set(p, x)})
    for x in subsets:
        for y in subsets:
            if not sh.shift_leq(p, x, y):
                continue
            for z in subsets:
                if sh.shift_leq(p, y, z) and not sh.shift_leq(p, x, z):
                    out.append({"kind": "transitive",
                                "x": format_atom_set(p, x),
                                "y": format_atom_set(p, y),
                                "z": format_atom_set(p, z)})
    return out


def _chk_shift_total(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    if p.is_total() and not sh.shifted_is_total(p):
        return [{"kind": "shifted-not-total"}]
    return []


def _chk_connection(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    out = []
    for x in range(1 << p.n):
        c = sh.check_connection(p, x)
        if not c.ok:
            out.append({"x": format_atom_set(p, x),
                        "subset_dir": c.subset_dir,
                        "equality_when_open": c.equality_when_open})
    if not sh.shifted_opens_match(p):
        out.append({"kind": "induced-topologies-differ"})
    return out


def _chk_shift_minimal_contra(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    lo = sh.preorder_of_opens(p)
    has_minimal = bool(tp.minimal_opens(lo, cap=22))
    star, _ = p.satisfies_star()
    if has_minimal and star:
        return [{"kind": "minimal-despite-star"}]
    return []


def _hier_depth(ctx: RunContext) -> int:
    return max(1, ctx.cfg.depth)


def _chk_hierarchy_levels(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    depth = _hier_depth(ctx)
    h = ctx.hierarchy(p)
    levels = h.build(depth)
    out = []
    for i, li in enumerate(levels):
        for lj in levels[i + 1:]:
            if li.value_set & lj.value_set:
                out.append({"kind": "levels-overlap", "i": li.index, "j": lj.index})
        if not li.values:
            out.append({"kind": "empty-level", "level": li.index})
    for li in levels[:-1]:
        whole = li.as_element()
        nxt = levels[li.index]  # levels[k] has index k+1
        if whole.value not in nxt.value_set:
            out.append({"kind": "level-not-member-of-next", "level": li.index})
        if li.value_set == nxt.value_set:
            out.append({"kind": "fixed-point", "level": li.index})
    for li in levels:
        for v in li.values:
            if hm.hf_rank(v) != li.index:
                out.append({"kind": "rank-mismatch", "level": li.index,
                            "value": hm.render_value(v)})
    if depth >= 2:
        # the rank-2 fragment of the hierarchy strictly exceeds level 2:
        # level-1 members live at rank <= 2 but never at level 2
        l1, l2 = levels[0], levels[1]
        extra = [v for v in l1.values if hm.hf_rank(v) <= 2
                 and v not in l2.value_set]
        if not extra:
            out.append({"kind": "bottom-level-absorbed"})
    return out


def _chk_power_step(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    depth = _hier_depth(ctx)
    h = ctx.hierarchy(p)
    levels = h.build(depth)
    out = []
    for lv in levels:
        rows = lv.sub_rows
        k = len(lv)
        for i in range(k):
            cone = rows[i]
            if cone == 0:
                out.append({"kind": "empty-cone", "level": lv.index, "element": i})
                continue
            for j in bits(cone):
                if rows[j] & ~cone:
                    out.append({"kind": "cone-not-open", "level": lv.index,
                                "element": i})
                    break
        if k <= 200:
            for i, v in enumerate(lv.values):
                pe = h.power_element(hm.MElem(v, lv.index))
                expected = frozenset(lv.values[j] for j in bits(rows[i]))
                if pe.value != expected:
                    out.append({"kind": "power-value-mismatch", "level": lv.index,
                                "element": i})
                if not h.member_level(pe.value, lv.index + 1):
                    out.append({"kind": "power-not-member", "level": lv.index,
                                "element": i})
                if lv.index + 1 <= depth and pe.value not in levels[lv.index].value_set:
                    out.append({"kind": "power-not-materialized", "level": lv.index,
                                "element": i})
    # the carrier's power collapses to level 1; each whole level's power
    # collapses to the next level
    full = frozenset(p.labels)
    pa = h.power_element(hm.MElem(full, 1))
    if pa.value != frozenset(levels[0].values):
        out.append({"kind": "carrier-power-mismatch"})
    for li in levels[:-1]:
        pw = h.power_element(hm.MElem(frozenset(li.values), li.index + 1))
        if pw.value != frozenset(levels[li.index].values):
            out.append({"kind": "level-power-mismatch", "level": li.index})
    return out


def _chk_subsets_in_m_open(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    depth = _hier_depth(ctx)
    h = ctx.hierarchy(p)
    levels = h.build(depth)
    rng = ctx.rng("subsets-in-m-are-open", name)
    out = []
    for lv in levels[:max(1, depth - 1)]:
        vals = lv.values
        k = len(vals)
        if k <= 10:
            candidates = [
                frozenset(vals[i] for i in bits(mask))
                for mask in range(1, 1 << k)
            ]
        else:
            candidates = []
            for _ in range(150):
                mask = rng.randrange(1, 1 << k)
                candidates.append(frozenset(vals[i] for i in bits(mask)))
            if lv.index + 1 <= depth:
                candidates.extend(levels[lv.index].values)
        for v in candidates:
            mem = h.membership(v, depth + 1)
            if mem.in_m and not h.member_level(v, lv.index + 1):
                out.append({"kind": "member-subset-not-open", "level": lv.index,
                            "value": hm.render_value(v)})
    return out


def _mixed_family(h: hm.Hierarchy, depth: int, rng: random.Random,
                  count: int) -> list[frozenset]:
    if depth < 2:
        return []
    levels = h.build(depth)
    family = []
    for _ in range(count):
        picks = rng.sample(range(1, depth + 1), k=rng.randint(2, depth))
        parts: set = set()
        for n in sorted(picks):
            vals = levels[n - 1].values
            if rng.random() < 0.5:
                # union of inclusion cones: slice-open by construction
                tips = rng.sample(vals, k=min(len(vals), rng.randint(1, 2)))
                for t in tips:
                    parts.update(h._cone(t, n))
            else:
                size = rng.randint(1, min(3, len(vals)))
                parts.update(rng.sample(vals, k=size))
        family.append(frozenset(parts))
    return family


def _direct_limit_successor(h: hm.Hierarchy, v, depth: int) -> bool:
    # literal reading: nonempty, inside the union of built levels, and
    # downward closed there
    if not isinstance(v, frozenset) or not v:
        return False
    for w in v:
        if not isinstance(w, frozenset):
            return False
        if h.finite_level_of(w, depth) is None:
            return False
        for n in range(1, depth + 1):
            for z in h.level(n).values:
                if z <= w and z not in v:
                    return False
    return True


def _chk_limit_partition(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    depth = _hier_depth(ctx)
    if depth < 2:
        return []
    h = ctx.hierarchy(p)
    rng = ctx.rng("limit-partition", name)
    out = []
    for v in _mixed_family(h, depth, rng, MIXED_FAMILY_SIZE):
        direct = _direct_limit_successor(h, v, depth)
        mem = h.membership(v, depth)
        if mem.kind == "undecided":
            continue
        by_slices = mem.kind == "limit" or (mem.kind == "level" and mem.level >= 2)
        if direct != by_slices:
            out.append({"value": hm.render_value(v), "direct": direct,
                        "slices": by_slices})
    return out


def _recheck_limit_partition(p: PreOrder, witness: dict, ctx: RunContext) -> bool:
    depth = _hier_depth(ctx)
    h = ctx.hierarchy(p)
    v = hm.parse_value(witness["value"])
    direct = _direct_limit_successor(h, v, depth)
    mem = h.membership(v, depth)
    by_slices = mem.kind == "limit" or (mem.kind == "level" and (mem.level or 0) >= 2)
    return direct == by_slices


def _union_witnesses(h: hm.Hierarchy, v, depth: int) -> list[dict]:
    rep = h.union_report(v, depth)
    out = []
    if rep.membership.kind == "level" and rep.membership.level == 1:
        if rep.union_value != frozenset():
            out.append({"kind": "bottom-union-not-empty",
                        "value": hm.render_value(v)})
        if rep.criterion_tier or rep.criterion_union or rep.criterion_unmixed:
            out.append({"kind": "bottom-criteria-not-false",
                        "value": hm.render_value(v)})
    if rep.decided and not rep.consistent:
        out.append({"kind": "criteria-disagree", "value": hm.render_value(v),
                    "tier": rep.criterion_tier, "union": rep.criterion_union,
                    "unmixed": rep.criterion_unmixed})
    return out


def _chk_union_criterion(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    depth = _hier_depth(ctx)
    h = ctx.hierarchy(p)
    rng = ctx.rng("union-criterion", name)
    out = []
    for lv in h.build(depth):
        for v in lv.values:
            out.extend(_union_witnesses(h, v, depth))
    if depth >= 2:
        for v in _mixed_family(h, depth, rng, MIXED_FAMILY_SIZE):
            out.extend(_union_witnesses(h, v, depth))
    return out


def _recheck_union_criterion(p: PreOrder, witness: dict, ctx: RunContext) -> bool:
    h = ctx.hierarchy(p)
    v = hm.parse_value(witness["value"])
    return not _union_witnesses(h, v, _hier_depth(ctx))


def _chk_basic_no_partition(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    out = [{"kind": "basic-open-splits", "atom": p.labels[a]}
           for a in hm.basic_open_partition_free(p)]
    if p.n == 2 and all(p.pred[b] == 1 << b for b in range(p.n)):
        # negative control: the non-basic open {a,b} of the 2-antichain
        # must split into two opens
        if hm.find_open_partition(p.pred, p.full_mask) is None:
            out.append({"kind": "negative-control-failed"})
    if p.n <= HIER_MAX_N:
        h = ctx.hierarchy(p)
        for lv in h.build(min(_hier_depth(ctx), 2)):
            if len(lv) <= 12:
                for i in hm.level_basic_open_partition_free(lv):
                    out.append({"kind": "level-basic-open-splits",
                                "level": lv.index, "element": i})
    return out


def _trichotomy_corpus(p: PreOrder, h: hm.Hierarchy, depth: int,
                       rng: random.Random) -> list:
    corpus: list = [frozenset()]
    corpus.extend(p.labels)
    levels = h.build(depth)
    for lv in levels:
        corpus.extend(lv.values[:8])
    atoms = list(p.labels)
    pool = [frozenset(rng.sample(atoms, k=rng.randint(1, len(atoms))))
            for _ in range(10)]
    for _ in range(40):
        depth_pick = rng.randint(1, min(3, max(1, depth)))
        v = _random_hf(atoms, pool, rng, depth_pick)
        corpus.append(v)
    corpus.extend(_mixed_family(h, depth, rng, 10))
    for lv in levels[:2]:
        for v in lv.values[:4]:
            corpus.append(frozenset({atoms[0], v}))  # atom/set mix
    while len(corpus) < TRICHOTOMY_CORPUS:
        corpus.append(_random_hf(atoms, pool, rng,
                                 rng.randint(1, min(3, max(1, depth)))))
    return corpus


def _random_hf(atoms: list, pool: list, rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(atoms)
    size = rng.randint(0, 3)
    kids = []
    for _ in range(size):
        if rng.random() < 0.4 and pool:
            kids.append(rng.choice(pool))
        else:
            kids.append(_random_hf(atoms, pool, rng, depth - 1))
    return frozenset(kids)


def _trichotomy_witnesses(h: hm.Hierarchy, v, depth: int) -> list[dict]:
    cls = h.classify(v, depth)
    if cls == "undecided":
        return [{"kind": "classification-not-total", "value": hm.render_value(v)}]
    is_atom = isinstance(v, str)
    in_m = (not is_atom) and h.membership(v, depth).in_m
    expected = "atom" if is_atom else ("magma" if in_m else "set")
    flags = [is_atom, in_m, not is_atom and not in_m]
    if cls != expected or sum(flags) != 1:
        return [{"kind": "classification-mismatch", "value": hm.render_value(v),
                 "classified": cls}]
    return []


def _chk_trichotomy(p: PreOrder, name: str, ctx: RunContext) -> list[dict]:
    depth = _hier_depth(ctx)
    h = ctx.hierarchy(p)
    rng = ctx.rng("magma-set-atom-trichotomy", name)
    out = []
    for v in _trichotomy_corpus(p, h, depth, rng):
        out.extend(_trichotomy_witnesses(h, v, depth))
    return out


def _recheck_trichotomy(p: PreOrder, witness: dict, ctx: RunContext) -> bool:
    h = ctx.hierarchy(p)
    v = hm.parse_value(witness["value"])
    return not _trichotomy_witnesses(h, v, _hier_depth(ctx))


# --- symbolic suite checks ----------------------------------------------------


def _chk_symbolic_axioms(model: sym.SymbolicPreOrder, name: str,
                         ctx: RunContext) -> list[dict]:
    v = sym.validate_model(model, depth=ctx.cfg.symbolic_depth,
                           seed=ctx.cfg.seed)
    return [{"kind": "axiom-violation", "detail": f} for f in v.failures]


def _recheck_symbolic_axioms(model: sym.SymbolicPreOrder, witness: dict,
                             ctx: RunContext) -> bool:
    detail = witness.get("detail", "")
    atoms = [model.parse_atom(tok.strip()) for tok in
             detail.split(" at ", 1)[1].split(",")] if " at " in detail else []
    if detail.startswith("not reflexive") and atoms:
        return model.leq(atoms[0], atoms[0])
    if detail.startswith("strict_pred") and atoms:
        return model.strict(model.strict_pred(atoms[0]), atoms[0])
    if detail.startswith("not transitive") and len(atoms) == 3:
        a, b, c = atoms
        return not (model.leq(a, b) and model.leq(b, c)) or model.leq(a, c)
    return not _chk_symbolic_axioms(model, "replay", ctx)


def _gen_pool(model: sym.SymbolicPreOrder, rng: random.Random,
              depth: int, size: int) -> list[sym.GenOpen]:
    pool = []
    for _ in range(size):
        gens = tuple(model.random_atom(rng, 1, max(1, depth - 2))
                     for _ in range(rng.randint(1, 3)))
        pool.append(sym.GenOpen(model, 1, gens))
    return pool


def _semantic_subset(g1: sym.GenOpen, g2: sym.GenOpen, depth: int) -> bool:
    return all(sym.gen_member(g2, z) for z in sym.members_up_to(g1, depth))


def _chk_gen_subset_semantics(model: sym.SymbolicPreOrder, name: str,
                              ctx: RunContext) -> list[dict]:
    depth = ctx.cfg.symbolic_depth
    rng = ctx.rng("generator-subset-semantics", name)
    size = 50 if model.name == "prefix" else 20
    pool = _gen_pool(model, rng, depth, size)
    out = []
    for g1 in pool:
        for g2 in pool:
            if sym.gen_subset(g1, g2) != _semantic_subset(g1, g2, depth):
                out.append({
                    "g1": [model.render_atom(a) for a in g1.generators],
                    "g2": [model.render_atom(a) for a in g2.generators],
                })
    return out


def _recheck_gen_subset_semantics(model: sym.SymbolicPreOrder, witness: dict,
                                  ctx: RunContext) -> bool:
    g1 = sym.GenOpen(model, 1, tuple(model.parse_atom(t) for t in witness["g1"]))
    g2 = sym.GenOpen(model, 1, tuple(model.parse_atom(t) for t in witness["g2"]))
    return sym.gen_subset(g1, g2) == _semantic_subset(g1, g2, ctx.cfg.symbolic_depth)


def _shrink_witnesses(g: sym.GenOpen) -> list[dict]:
    out = []
    cur = g
    for _ in range(3):
        smaller = sym.strict_shrink(cur)
        if not sym.gen_subset(smaller, cur) or sym.gen_equal(smaller, cur):
            out.append({"level": g.level,
                        "gens": _render_gens(g),
                        "step_gens": _render_gens(cur)})
            break
        cur = smaller
    return out


def _render_gens(g: sym.GenOpen) -> list:
    if g.level == 1:
        return [g.model.render_atom(a) for a in g.generators]
    return [_render_gens(x) for x in g.generators]


def _parse_gens(model: sym.SymbolicPreOrder, level: int, payload: list) -> sym.GenOpen:
    if level == 1:
        return sym.GenOpen(model, 1, tuple(model.parse_atom(t) for t in payload))
    return sym.GenOpen(model, level,
                       tuple(_parse_gens(model, level - 1, sub) for sub in payload))


def _chk_shrink_descends(model: sym.SymbolicPreOrder, name: str,
                         ctx: RunContext) -> list[dict]:
    rng = ctx.rng("shrink-strictly-descends", name)
    depth = ctx.cfg.symbolic_depth
    out = []
    pool = _gen_pool(model, rng, depth, 25)
    for g in pool:
        out.extend(_shrink_witnesses(g))
    for g in pool[:8]:
        lifted = sym.GenOpen(model, 2, (g,))
        out.extend(_shrink_witnesses(lifted))
    return out


def _recheck_shrink(model: sym.SymbolicPreOrder, witness: dict,
                    ctx: RunContext) -> bool:
    g = _parse_gens(model, witness["level"], witness["gens"])
    return not _shrink_witnesses(g)


def _chk_cones_unbounded(model: sym.SymbolicPreOrder, name: str,
                         ctx: RunContext) -> list[dict]:
    rng = ctx.rng("generated-opens-unbounded", name)
    depth = ctx.cfg.symbolic_depth
    out = []
    for g in _gen_pool(model, rng, depth, 15):
        counts = [len(sym.members_up_to(g, d))
                  for d in (depth - 2, depth - 1, depth)]
        if not (counts[0] < counts[1] < counts[2]):
            out.append({"gens": _render_gens(g), "counts": counts})
    return out


def _recheck_cones_unbounded(model: sym.SymbolicPreOrder, witness: dict,
                             ctx: RunContext) -> bool:
    g = _parse_gens(model, 1, witness["gens"])
    depth = ctx.cfg.symbolic_depth
    counts = [len(sym.members_up_to(g, d)) for d in (depth - 2, depth - 1, depth)]
    return counts[0] < counts[1] < counts[2]


def _chk_cluster_saturation(model: sym.SymbolicPreOrder, name: str,
                            ctx: RunContext) -> list[dict]:
    k = int(model.name.split(":")[1])
    rng = ctx.rng("clustered-class-saturation", name)
    depth = ctx.cfg.symbolic_depth
    pool = _gen_pool(model, rng, depth, 15)
    out = []
    strings = {model.render_atom(a).split("#")[0]
               for a in model.atoms_up_to(min(depth, 5))}
    for g in pool:
        for s in sorted(strings):
            votes = {sym.gen_member(g, (s, i)) for i in range(k)}
            if len(votes) != 1:
                out.append({"gens": _render_gens(g), "atom": s})
    return out


def _recheck_cluster_saturation(model: sym.SymbolicPreOrder, witness: dict,
                                ctx: RunContext) -> bool:
    k = int(model.name.split(":")[1])
    g = _parse_gens(model, 1, witness["gens"])
    s = witness["atom"]
    return len({sym.gen_member(g, (s, i)) for i in range(k)}) == 1


# --- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    suite_id: str
    statement: str
    scope: str  # "finite" or "symbolic"
    check: Callable
    max_n: int | None = None           # finite scope: carrier-size limit
    models: tuple[str, ...] = ()       # symbolic scope: model names
    recheck: Callable | None = None


_SUITE_LIST = [
    Suite("closure-idempotence",
          "rebuilding a closed relation from its own edges returns it unchanged",
          "finite", _chk_closure_idempotent),
    Suite("strict-part-laws",
          "the strict part is irreflexive and one-directional",
          "finite", _chk_strict_laws),
    Suite("class-vs-cone",
          "two atoms share a mutual-dependence class exactly when their cones match",
          "finite", _chk_class_vs_cone),
    Suite("cone-transitivity",
          "predecessor cones are downward closed, hence open",
          "finite", _chk_cone_transitive),
    Suite("finite-star-fails",
          "on a finite carrier some atom always lacks a strict predecessor",
          "finite", _chk_finite_star_fails),
    Suite("open-family-closure",
          "unions and nonempty intersections of open sets are open",
          "finite", _chk_open_family),
    Suite("open-complement-duality",
          "a set is lower open exactly when its complement is upper open",
          "finite", _chk_duality),
    Suite("minimal-open-characterizations",
          "minimality, constant cones, and constant classes coincide on opens",
          "finite", _chk_minimal_characterizations),
    Suite("star-iff-no-minimal",
          "every atom has a strict predecessor iff no open set is minimal",
          "finite", _chk_star_iff_no_minimal),
    Suite("cones-contain-minimal",
          "every finite predecessor cone contains a minimal open subset",
          "finite", _chk_cones_contain_minimal),
    Suite("shift-preorder-laws",
          "the shifted relation is reflexive and transitive on all subsets",
          "finite", _chk_shift_laws, max_n=SHIFT_LAW_MAX_N),
    Suite("shift-totality",
          "shifting preserves totality",
          "finite", _chk_shift_total, max_n=SHIFT_LAW_MAX_N),
    Suite("shift-powerset-connection",
          "shifted cones contain the powerset, equal it on opens, and induce "
          "the inclusion topology on the open-set family",
          "finite", _chk_connection),
    Suite("shifted-minimality-contrapositive",
          "a minimal open in the lifted family refutes the strict-predecessor "
          "condition on the base",
          "finite", _chk_shift_minimal_contra),
    Suite("hierarchy-levels",
          "levels are disjoint, nest as members, never fix, and carry rank = level",
          "finite", _chk_hierarchy_levels, max_n=HIER_MAX_N),
    Suite("powerset-cone-step",
          "the submagmas of a member form a member one level up",
          "finite", _chk_power_step, max_n=HIER_MAX_N),
    Suite("subsets-in-m-are-open",
          "a member that is a subset of a level is an open subset of that level",
          "finite", _chk_subsets_in_m_open, max_n=HIER_MAX_N),
    Suite("limit-partition",
          "membership one step past the limit is equivalent to per-level slices "
          "being members two steps up",
          "finite", _chk_limit_partition, max_n=HIER_MAX_N,
          recheck=_recheck_limit_partition),
    Suite("union-criterion",
          "union membership, the two-steps-up tier, and level homogeneity agree",
          "finite", _chk_union_criterion, max_n=HIER_MAX_N,
          recheck=_recheck_union_criterion),
    Suite("basic-open-no-partition",
          "no basic open splits into two disjoint nonempty opens",
          "finite", _chk_basic_no_partition),
    Suite("magma-set-atom-trichotomy",
          "every hereditarily finite value is an atom, a magma, or a plain set",
          "finite", _chk_trichotomy, max_n=HIER_MAX_N,
          recheck=_recheck_trichotomy),
    Suite("symbolic-model-axioms",
          "the symbolic models are reflexive, transitive, and minimal-free "
          "on all samples",
          "symbolic", _chk_symbolic_axioms,
          models=("prefix", "clustered:2"), recheck=_recheck_symbolic_axioms),
    Suite("generator-subset-semantics",
          "generator-level inclusion matches bounded semantic inclusion",
          "symbolic", _chk_gen_subset_semantics,
          models=("prefix", "clustered:2"),
          recheck=_recheck_gen_subset_semantics),
    Suite("shrink-strictly-descends",
          "every generated open has a proper generated subopen",
          "symbolic", _chk_shrink_descends,
          models=("prefix", "clustered:2"), recheck=_recheck_shrink),
    Suite("generated-opens-unbounded",
          "bounded counts of every generated open grow strictly with depth",
          "symbolic", _chk_cones_unbounded,
          models=("prefix",), recheck=_recheck_cones_unbounded),
    Suite("clustered-class-saturation",
          "generated opens are constant on mutual-dependence clusters",
          "symbolic", _chk_cluster_saturation,
          models=("clustered:3",), recheck=_recheck_cluster_saturation),
]

SUITES: dict[str, Suite] = {s.suite_id: s for s in _SUITE_LIST}


# --- runner -------------------------------------------------------------------


def _run_finite_suite(suite: Suite, ctx: RunContext) -> SuiteResult:
    cfg = ctx.cfg
    limit = min(cfg.max_size, suite.max_n) if suite.max_n else cfg.max_size
    result = SuiteResult(suite.suite_id, suite.statement, 0)
    start = time.perf_counter()
    try:
        models = ctx.finite_models(limit)
        for name, p in models:
            result.models_checked += 1
            for witness in suite.check(p, name, ctx):
                result.failures.append(Counterexample(
                    suite=suite.suite_id,
                    model=name,
                    model_text=format_preorder(p),
                    labels=p.labels,
                    rows=p.pred,
                    witness=witness,
                    message=f"{suite.suite_id} failed on {name}",
                ))
    except CapExceeded as exc:
        result.note = f"cap exceeded: {exc}"
    result.seconds = time.perf_counter() - start
    return result


def _run_symbolic_suite(suite: Suite, ctx: RunContext) -> SuiteResult:
    result = SuiteResult(suite.suite_id, suite.statement, 0)
    start = time.perf_counter()
    for model_name in suite.models:
        model = sym.model_by_name(model_name)
        result.models_checked += 1
        for witness in suite.check(model, model_name, ctx):
            result.failures.append(Counterexample(
                suite=suite.suite_id,
                model=model_name,
                model_text="",
                labels=(),
                rows=(),
                witness=witness,
                message=f"{suite.suite_id} failed on {model_name}",
            ))
    result.seconds = time.perf_counter() - start
    return result


def run_suite(cfg: SuiteConfig, _model_hook: Callable | None = None) -> Report:
    """Run the selected suites; unselected ones appear as skipped."""
    cfg.validate()
    ctx = RunContext(cfg, _model_hook)
    selected = set(cfg.selected())
    results = []
    for suite_id, suite in SUITES.items():
        if suite_id not in selected:
            results.append(SuiteResult(suite_id, suite.statement, 0, skipped=True))
            continue
        if suite.scope == "finite":
            results.append(_run_finite_suite(suite, ctx))
        else:
            results.append(_run_symbolic_suite(suite, ctx))
    return Report(cfg, results)


def replay(blob: dict | Counterexample, cfg: SuiteConfig | None = None) -> bool:
    """Re-run the failing check of a counterexample; True means it passes now.

    The relation is rebuilt verbatim from the recorded rows (no closure),
    so injected-fault models reproduce their verdicts; the outcome does
    not depend on the seed because rechecks are concrete.
    """
    cx = blob if isinstance(blob, Counterexample) else Counterexample.from_blob(blob)
    suite = SUITES.get(cx.suite)
    if suite is None:
        raise ValueError(f"counterexample names unknown suite {cx.suite!r}")
    ctx = RunContext(cfg or SuiteConfig())
    if suite.scope == "finite":
        if not cx.labels:
            raise ValueError("finite counterexample is missing its relation rows")
        model: object = PreOrder(cx.labels, tuple(cx.rows))
    else:
        model = sym.model_by_name(cx.model)
    if suite.recheck is not None:
        return bool(suite.recheck(model, cx.witness, ctx))
    return not suite.check(model, cx.model, ctx)


# --- report rendering -----------------------------------------------------------


def render_report(report: Report, *, timing: bool = True) -> str:
    cfg = report.config
    lines = [
        "magmas verification report",
        "config:",
        f"  suites: {','.join(cfg.suites)}",
        f"  max_size: {cfg.max_size}",
        f"  depth: {cfg.depth}",
        f"  symbolic_depth: {cfg.symbolic_depth}",
        f"  seed: {cfg.seed}",
    ]
    ran = [r for r in report.results if not r.skipped]
    failed = [r for r in ran if r.failures]
    lines += [
        "summary:",
        f"  suites_run: {len(ran)}",
        f"  passed: {len(ran) - len(failed)}",
        f"  failed: {len(failed)}",
        f"  skipped: {len(report.results) - len(ran)}",
        "",
    ]
    for r in report.results:
        lines.append(f"suite: {r.suite_id}")
        lines.append(f"statement: {r.statement}")
        if r.skipped:
            lines.append("status: skipped")
            lines.append("")
            continue
        lines.append("status: " + ("pass" if not r.failures else "fail"))
        lines.append(f"models_checked: {r.models_checked}")
        if r.note:
            lines.append(f"note: {r.note}")
        if timing:
            lines.append(f"wall_time_s: {r.seconds:.3f}")
        for i, cx in enumerate(r.failures, start=1):
            lines.append(f"counterexample_{i}:")
            lines.append(f"  model: {cx.model}")
            lines.append(f"  message: {cx.message}")
            lines.append("  witness: " + json.dumps(cx.witness, sort_keys=True))
            if cx.model_text:
                lines.append("  model_text: |")
                for tl in cx.model_text.rstrip("\n").splitlines():
                    lines.append(f"    {tl}")
        lines.append("")
    return "\n".join(lines)


def report_to_json(report: Report) -> dict:
    return {
        "config": {
            "suites": list(report.config.suites),
            "max_size": report.config.max_size,
            "depth": report.config.depth,
            "symbolic_depth": report.config.symbolic_depth,
            "seed": report.config.seed,
        },
        "passed": report.passed,
        "results": [
            {
                "suite": r.suite_id,
                "statement": r.statement,
                "skipped": r.skipped,
                "models_checked": r.models_checked,
                "note": r.note,
                "failures": [cx.to_blob() for cx in r.failures],
            }
            for r in report.results
        ],
    }
