"""Finite intuitionistic epistemic Kripke models.

A model is (W, R, E, valuation) with a logic tag.  R is stored by generator
edges and closed reflexively-transitively on construction; we accept
preorders (antisymmetry is never load-bearing for forcing).  The valuation
is closed upward along R automatically.  E is taken literally.

Frame conditions checked by validate(), per logic:

    all logics:   R reflexive+transitive, valuation R-monotone,
                  uRv implies E(v) subset of E(u)
    IEL-, IEL:    E(u) subset of R(u)
    IEL only:     E(u) nonempty (seriality)
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .syntax import (
    And, Atom, Bottom, Formula, Imp, K, Logic, Or,
    parse, render, require_intuitionistic,
)

World = int


class ModelFormatError(ValueError):
    """Malformed model file."""


class ValuationClosureWarning(UserWarning):
    """Monotone closure added valuation pairs while loading a model file."""


def _close_preorder(worlds: frozenset, edges) -> dict:
    succ = {w: {w} for w in worlds}
    for u, v in edges:
        if u not in worlds or v not in worlds:
            raise ValueError(f"R edge ({u}, {v}) mentions an unknown world")
        succ[u].add(v)
    changed = True
    while changed:
        changed = False
        for u in worlds:
            grown = set(succ[u])
            for v in succ[u]:
                grown |= succ[v]
            if grown != succ[u]:
                succ[u] = grown
                changed = True
    return {u: frozenset(vs) for u, vs in succ.items()}


class KripkeModel:
    """Immutable after construction; forcing queries are pure and cached."""

    def __init__(self, worlds, r_edges=(), e_edges=(), valuation=(), logic=Logic.IEL):
        self.worlds = frozenset(worlds)
        if not self.worlds:
            raise ValueError("a model needs at least one world")
        self.logic = Logic(logic)
        self._rsucc = _close_preorder(self.worlds, r_edges)
        esucc = {w: set() for w in self.worlds}
        for u, v in e_edges:
            if u not in self.worlds or v not in self.worlds:
                raise ValueError(f"E edge ({u}, {v}) mentions an unknown world")
            esucc[u].add(v)
        self._esucc = {u: frozenset(vs) for u, vs in esucc.items()}
        val = {}
        for atom, w in valuation:
            if w not in self.worlds:
                raise ValueError(f"valuation pair ({atom}, {w}) mentions an unknown world")
            val.setdefault(atom, set()).add(w)
        self.valuation_additions = []
        for atom, ws in val.items():
            closed = set()
            for w in ws:
                closed |= self._rsucc[w]
            for w in sorted(closed - ws):
                self.valuation_additions.append((atom, w))
            val[atom] = closed
        self._val = {a: frozenset(ws) for a, ws in val.items()}
        self._cache: dict[Formula, frozenset] = {}

    # -- structure accessors -------------------------------------------------

    def r_successors(self, w: World) -> frozenset:
        return self._rsucc[w]

    def e_successors(self, w: World) -> frozenset:
        return self._esucc[w]

    @property
    def r_pairs(self) -> list[tuple[World, World]]:
        return sorted((u, v) for u in self.worlds for v in self._rsucc[u])

    @property
    def e_pairs(self) -> list[tuple[World, World]]:
        return sorted((u, v) for u in self.worlds for v in self._esucc[u])

    @property
    def valuation_pairs(self) -> list[tuple[str, World]]:
        return sorted((a, w) for a, ws in self._val.items() for w in ws)

    def atom_worlds(self, name: str) -> frozenset:
        return self._val.get(name, frozenset())

    def _key(self):
        return (self.worlds, tuple(self.r_pairs), tuple(self.e_pairs),
                tuple(self.valuation_pairs), self.logic)

    def __eq__(self, other):
        return isinstance(other, KripkeModel) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"KripkeModel(worlds={sorted(self.worlds)}, logic={self.logic.label}, "
                f"E={self.e_pairs}, val={self.valuation_pairs})")

    # -- forcing -------------------------------------------------------------

    def force_set(self, f: Formula) -> frozenset:
        """Worlds forcing f, computed bottom-up with memoization."""
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = self._val.get(f.name, frozenset())
        elif isinstance(f, Bottom):
            out = frozenset()
        elif isinstance(f, And):
            out = self.force_set(f.left) & self.force_set(f.right)
        elif isinstance(f, Or):
            out = self.force_set(f.left) | self.force_set(f.right)
        elif isinstance(f, Imp):
            a, b = self.force_set(f.left), self.force_set(f.right)
            out = frozenset(w for w in self.worlds
                            if all(v not in a or v in b for v in self._rsucc[w]))
        elif isinstance(f, K):
            a = self.force_set(f.body)
            out = frozenset(w for w in self.worlds if self._esucc[w] <= a)
        else:
            require_intuitionistic(f, "forces")
            raise AssertionError("unreachable")
        self._cache[f] = out
        return out

    def forces(self, world: World, f: Formula) -> bool:
        if world not in self.worlds:
            raise ValueError(f"unknown world {world}")
        require_intuitionistic(f, "forces")
        return world in self.force_set(f)


def forces(model: KripkeModel, world: World, f: Formula) -> bool:
    """w forces f under the intuitionistic clauses (K quantifies over E(w))."""
    return model.forces(world, f)


def holds_in_model(model: KripkeModel, f: Formula) -> bool:
    """True iff f is forced at every world."""
    require_intuitionistic(f, "holds_in_model")
    return model.force_set(f) == model.worlds


# ---------------------------------------------------------------------------
# Frame validation

@dataclass
class ValidationReport:
    ok: bool
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    def __str__(self):
        if self.ok:
            return "ok"
        lines = [f"  {name} at {witness}" for name, witness in self.violations]
        return "invalid:\n" + "\n".join(lines)


def validate(model: KripkeModel) -> ValidationReport:
    """Report every violated frame condition with witness worlds."""
    bad: list[tuple[str, tuple]] = []
    for w in sorted(model.worlds):
        if w not in model.r_successors(w):
            bad.append(("R-reflexive", (w,)))
    for u in sorted(model.worlds):
        for v in sorted(model.r_successors(u)):
            if not model.r_successors(v) <= model.r_successors(u):
                bad.append(("R-transitive", (u, v)))
            if not model.e_successors(v) <= model.e_successors(u):
                bad.append(("E-nesting", (u, v)))
    for atom in sorted(model._val):
        ws = model._val[atom]
        for u in sorted(ws):
            for v in sorted(model.r_successors(u)):
                if v not in ws:
                    bad.append(("valuation-monotone", (atom, u, v)))
    if model.logic in (Logic.IELMINUS, Logic.IEL):
        for u in sorted(model.worlds):
            for v in sorted(model.e_successors(u)):
                if v not in model.r_successors(u):
                    bad.append(("E-subset-R", (u, v)))
    if model.logic is Logic.IEL:
        for u in sorted(model.worlds):
            if not model.e_successors(u):
                bad.append(("E-seriality", (u,)))
    return ValidationReport(ok=not bad, violations=bad)


# ---------------------------------------------------------------------------
# Constructions from the admissibility / disjunction-property proofs

def add_root(model: KripkeModel) -> KripkeModel:
    """Add a fresh root related by R and E to every world, forcing no atoms.

    The original model is a generated submodel of the result, so forcing at
    the old worlds is unchanged.
    """
    x0 = max(model.worlds) + 1
    worlds = set(model.worlds) | {x0}
    r_edges = [(u, v) for u, v in model.r_pairs] + [(x0, u) for u in worlds]
    e_edges = [(u, v) for u, v in model.e_pairs] + [(x0, u) for u in worlds]
    return KripkeModel(worlds, r_edges, e_edges, model.valuation_pairs, model.logic)


def join_with_root(m1: KripkeModel, m2: KripkeModel) -> KripkeModel:
    """Disjoint union under a fresh root related by R and E to everything.

    World ids are renamed 1..n1 and n1+1..n1+n2 (in sorted order of the
    originals); the root gets id n1+n2+1.
    """
    if m1.logic != m2.logic:
        raise ValueError(f"cannot join a {m1.logic.label} model with a {m2.logic.label} model")
    n1 = len(m1.worlds)
    map1 = {w: i + 1 for i, w in enumerate(sorted(m1.worlds))}
    map2 = {w: i + 1 + n1 for i, w in enumerate(sorted(m2.worlds))}
    x0 = n1 + len(m2.worlds) + 1
    worlds = set(map1.values()) | set(map2.values()) | {x0}
    r_edges = [(map1[u], map1[v]) for u, v in m1.r_pairs] + \
              [(map2[u], map2[v]) for u, v in m2.r_pairs] + [(x0, u) for u in worlds]
    e_edges = [(map1[u], map1[v]) for u, v in m1.e_pairs] + \
              [(map2[u], map2[v]) for u, v in m2.e_pairs] + [(x0, u) for u in worlds]
    valuation = [(a, map1[w]) for a, w in m1.valuation_pairs] + \
                [(a, map2[w]) for a, w in m2.valuation_pairs]
    return KripkeModel(worlds, r_edges, e_edges, valuation, m1.logic)


# ---------------------------------------------------------------------------
# The four models used in the refutation proofs

def builtin(name: str) -> KripkeModel:
    """The models M1..M4 exactly as drawn in the figures."""
    if name == "M1":
        return KripkeModel({1}, [], [], [], Logic.IELMINUS)
    if name == "M2":
        return KripkeModel({1, 2}, [(1, 2)], [(1, 2), (2, 2)], [("p", 2)], Logic.IEL)
    if name == "M3":
        return KripkeModel({1, 2, 3}, [(1, 2), (1, 3)],
                           [(1, 2), (1, 3), (2, 2), (3, 3)], [("p", 3)], Logic.IEL)
    if name == "M4":
        return KripkeModel({1, 2, 3}, [(1, 2), (1, 3)], [(1, 3)], [("p", 3)], Logic.IELMINUS)
    raise ValueError(f"unknown builtin model {name!r} (expected M1, M2, M3 or M4)")


BUILTIN_NAMES = ("M1", "M2", "M3", "M4")


# ---------------------------------------------------------------------------
# Model file format (line oriented, # comments)

def parse_model(text: str) -> KripkeModel:
    """Load the line-oriented model format; warns when monotone closure adds pairs."""
    logic = None
    worlds = None
    r_edges: list[tuple[int, int]] = []
    e_edges: list[tuple[int, int]] = []
    valuation: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ModelFormatError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, rest = line.split(":", 1)
        key = key.strip().lower()
        rest = rest.strip()
        if key == "logic":
            try:
                logic = Logic.parse(rest)
            except ValueError as exc:
                raise ModelFormatError(f"line {lineno}: {exc}") from None
        elif key == "worlds":
            try:
                worlds = {int(tok) for tok in rest.split()}
            except ValueError:
                raise ModelFormatError(f"line {lineno}: worlds must be integers: {rest!r}") from None
            if any(w <= 0 for w in worlds):
                raise ModelFormatError(f"line {lineno}: world ids must be positive")
        elif key in ("r", "e"):
            target = r_edges if key == "r" else e_edges
            for chunk in rest.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                parts = chunk.split()
                if len(parts) != 2:
                    raise ModelFormatError(f"line {lineno}: expected pairs 'u v', got {chunk!r}")
                try:
                    target.append((int(parts[0]), int(parts[1])))
                except ValueError:
                    raise ModelFormatError(f"line {lineno}: world ids must be integers: {chunk!r}") from None
        elif key == "val":
            if ":" not in rest:
                raise ModelFormatError(f"line {lineno}: expected 'val: atom: worlds'")
            atom, ws = rest.split(":", 1)
            atom = atom.strip()
            try:
                valuation.extend((atom, int(tok)) for tok in ws.split())
            except ValueError:
                raise ModelFormatError(f"line {lineno}: world ids must be integers: {ws!r}") from None
        else:
            raise ModelFormatError(f"line {lineno}: unknown key {key!r}")
    if logic is None:
        raise ModelFormatError("missing 'logic:' line")
    if worlds is None:
        raise ModelFormatError("missing 'worlds:' line")
    try:
        model = KripkeModel(worlds, r_edges, e_edges, valuation, logic)
    except ValueError as exc:
        raise ModelFormatError(str(exc)) from None
    if model.valuation_additions:
        added = ", ".join(f"{a}@{w}" for a, w in model.valuation_additions)
        warnings.warn(f"monotone closure added valuation pairs: {added}", ValuationClosureWarning)
    return model


def format_model(model: KripkeModel) -> str:
    lines = [f"logic: {model.logic.label}",
             "worlds: " + " ".join(str(w) for w in sorted(model.worlds))]
    r_gen = [f"{u} {v}" for u, v in model.r_pairs if u != v]
    lines.append("R: " + "; ".join(r_gen))
    lines.append("E: " + "; ".join(f"{u} {v}" for u, v in model.e_pairs))
    by_atom: dict[str, list[int]] = {}
    for a, w in model.valuation_pairs:
        by_atom.setdefault(a, []).append(w)
    for a in sorted(by_atom):
        lines.append(f"val: {a}: " + " ".join(str(w) for w in sorted(by_atom[a])))
    return "\n".join(lines) + "\n"
