"""Classical bimodal Kripke models for the verification logics S4V- and S4V.

The paper gives these logics axiomatically (S4 for [], K for V, [] A -> V A,
and for S4V the consistency axiom ~[]V false); the frame conditions used
here are derived correspondents, shipped with a brute-force correspondence
check in the test suite rather than assumed:

    S4V-:  Rbox a preorder, Rv a subset of Rbox
    S4V:   additionally every world Rbox-reaches a world with Rv nonempty

Valuations are classical: unconstrained, no monotonicity.
"""

from __future__ import annotations

from enum import IntEnum

from .syntax import (
    And, Atom, Bottom, Box, Formula, Imp, Logic, Or, Ver,
    atoms as formula_atoms, require_bimodal,
)
from .semantics import ValidationReport, _close_preorder
from .search import SearchConfig, _canonical_key, _closed_preorders, _submasks


class Variant(IntEnum):
    S4VMINUS = 0
    S4V = 1

    @property
    def label(self) -> str:
        return "S4V-" if self is Variant.S4VMINUS else "S4V"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        key = text.strip().upper()
        if key in ("S4V-", "S4VMINUS"):
            return cls.S4VMINUS
        if key == "S4V":
            return cls.S4V
        raise ValueError(f"unknown variant {text!r} (expected S4V or S4V-)")


class ClassicalModel:
    """Immutable bimodal model; Rbox is closed on construction, Rv is literal."""

    def __init__(self, worlds, rbox_edges=(), rv_edges=(), valuation=(), variant=Variant.S4V):
        self.worlds = frozenset(worlds)
        if not self.worlds:
            raise ValueError("a model needs at least one world")
        self.variant = Variant(variant)
        self._boxsucc = _close_preorder(self.worlds, rbox_edges)
        rv = {w: set() for w in self.worlds}
        for u, v in rv_edges:
            if u not in self.worlds or v not in self.worlds:
                raise ValueError(f"Rv edge ({u}, {v}) mentions an unknown world")
            rv[u].add(v)
        self._rvsucc = {u: frozenset(vs) for u, vs in rv.items()}
        val: dict[str, set] = {}
        for atom, w in valuation:
            if w not in self.worlds:
                raise ValueError(f"valuation pair ({atom}, {w}) mentions an unknown world")
            val.setdefault(atom, set()).add(w)
        self._val = {a: frozenset(ws) for a, ws in val.items()}
        self._cache: dict[Formula, frozenset] = {}

    def box_successors(self, w):
        return self._boxsucc[w]

    def rv_successors(self, w):
        return self._rvsucc[w]

    @property
    def rbox_pairs(self):
        return sorted((u, v) for u in self.worlds for v in self._boxsucc[u])

    @property
    def rv_pairs(self):
        return sorted((u, v) for u in self.worlds for v in self._rvsucc[u])

    @property
    def valuation_pairs(self):
        return sorted((a, w) for a, ws in self._val.items() for w in ws)

    def __repr__(self):
        return (f"ClassicalModel(worlds={sorted(self.worlds)}, variant={self.variant.label}, "
                f"Rv={self.rv_pairs}, val={self.valuation_pairs})")

    def force_set(self, f: Formula) -> frozenset:
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
            out = (self.worlds - self.force_set(f.left)) | self.force_set(f.right)
        elif isinstance(f, Box):
            a = self.force_set(f.body)
            out = frozenset(w for w in self.worlds if self._boxsucc[w] <= a)
        elif isinstance(f, Ver):
            a = self.force_set(f.body)
            out = frozenset(w for w in self.worlds if self._rvsucc[w] <= a)
        else:
            require_bimodal(f, "forces_classical")
            raise AssertionError("unreachable")
        self._cache[f] = out
        return out

    def forces(self, world, f: Formula) -> bool:
        if world not in self.worlds:
            raise ValueError(f"unknown world {world}")
        require_bimodal(f, "forces_classical")
        return world in self.force_set(f)


def forces_classical(model: ClassicalModel, world, f: Formula) -> bool:
    """Classical truth at a world; [] quantifies over Rbox, V over Rv."""
    return model.forces(world, f)


def holds_in_classical_model(model: ClassicalModel, f: Formula) -> bool:
    require_bimodal(f, "holds_in_classical_model")
    return model.force_set(f) == model.worlds


def validate_classical(model: ClassicalModel) -> ValidationReport:
    """Check the derived frame conditions for the model's variant."""
    bad = []
    for u in sorted(model.worlds):
        for v in sorted(model.rv_successors(u)):
            if v not in model.box_successors(u):
                bad.append(("Rv-subset-Rbox", (u, v)))
    if model.variant is Variant.S4V:
        for w in sorted(model.worlds):
            if all(not model.rv_successors(u) for u in model.box_successors(w)):
                bad.append(("consistent-verification", (w,)))
    return ValidationReport(ok=not bad, violations=bad)


# ---------------------------------------------------------------------------
# Bounded countermodel search (same packed-valuation trick as the
# intuitionistic search, but with unconstrained valuations and classical ->)

_CFRAME_CACHE: dict[tuple, list] = {}


def _classical_frames(variant: Variant, n: int):
    key = (variant, n)
    if key not in _CFRAME_CACHE:
        frames = []
        seen = set()
        for rbox in _closed_preorders(n):
            full_choices = []
            for rv_per_world in _rv_products(rbox, n):
                full_choices.append(rv_per_world)
            for rv in full_choices:
                if variant is Variant.S4V and not _consistent(rbox, rv, n):
                    continue
                ck = _canonical_key(rbox, rv, n)
                if ck in seen:
                    continue
                seen.add(ck)
                frames.append((rbox, rv))
        _CFRAME_CACHE[key] = frames
    return _CFRAME_CACHE[key]


def _rv_products(rbox, n):
    def rec(i, acc):
        if i == n:
            yield tuple(acc)
            return
        for sub in _submasks(rbox[i]):
            acc.append(sub)
            yield from rec(i + 1, acc)
            acc.pop()
    yield from rec(0, [])


def _consistent(rbox, rv, n):
    return all(any(rv[u] for u in range(n) if rbox[w] >> u & 1) for w in range(n))


class _PackedClassicalFrame:
    def __init__(self, rbox, rv, n, atom_list):
        self.rbox, self.rv, self.n = rbox, rv, n
        self.atom_list = atom_list
        m = 1 << n  # all valuations, not just monotone ones
        self.combos = m ** len(atom_list)
        rep = 0
        for c in range(self.combos):
            rep |= 1 << (c * n)
        self.rep = rep
        self.full = rep * ((1 << n) - 1)
        self.atom_vec = {}
        for j, name in enumerate(atom_list):
            vec = 0
            stride = m ** j
            for c in range(self.combos):
                vec |= ((c // stride) % m) << (c * n)
            self.atom_vec[name] = vec
        self._memo: dict[Formula, int] = {}
        self._m = m

    def _box(self, vec, succ):
        n, rep = self.n, self.rep
        res = 0
        fail = vec ^ self.full
        for u in range(n):
            viol = (succ[u] * rep) & fail
            acc = viol
            for s in range(1, n):
                acc |= viol >> s
            res |= ((acc ^ self.full) & rep) << u
        return res

    def eval(self, f: Formula) -> int:
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = self.atom_vec.get(f.name, 0)
        elif isinstance(f, Bottom):
            out = 0
        elif isinstance(f, And):
            out = self.eval(f.left) & self.eval(f.right)
        elif isinstance(f, Or):
            out = self.eval(f.left) | self.eval(f.right)
        elif isinstance(f, Imp):
            out = (self.eval(f.left) ^ self.full) | self.eval(f.right)
        elif isinstance(f, Box):
            out = self._box(self.eval(f.body), self.rbox)
        elif isinstance(f, Ver):
            out = self._box(self.eval(f.body), self.rv)
        else:
            raise TypeError(f"cannot evaluate {f!r}")
        self._memo[f] = out
        return out

    def decode(self, bit_index):
        c, u = divmod(bit_index, self.n)
        val_pairs = []
        for j, name in enumerate(self.atom_list):
            mask = (c // (self._m ** j)) % self._m
            val_pairs += [(name, i + 1) for i in range(self.n) if mask >> i & 1]
        return val_pairs, u + 1


def find_classical_countermodel(variant: Variant, f: Formula, cfg: SearchConfig | None = None):
    """Search S4V-/S4V models up to cfg.max_worlds for one refuting f.

    Returns (model, world) or None (inconclusive within bounds).
    """
    require_bimodal(f, "find_classical_countermodel")
    cfg = cfg or SearchConfig(max_worlds=3)
    atom_list = tuple(cfg.atoms) if cfg.atoms is not None else tuple(sorted(formula_atoms(f)))
    for n in range(1, cfg.max_worlds + 1):
        for rbox, rv in _classical_frames(variant, n):
            packed = _PackedClassicalFrame(rbox, rv, n, atom_list)
            vec = packed.eval(f)
            if vec != packed.full:
                gap = vec ^ packed.full
                low = gap & -gap
                val_pairs, witness = packed.decode(low.bit_length() - 1)
                model = ClassicalModel(
                    range(1, n + 1),
                    [(i + 1, j + 1) for i in range(n) for j in range(n) if rbox[i] >> j & 1],
                    [(i + 1, j + 1) for i in range(n) for j in range(n) if rv[i] >> j & 1],
                    val_pairs, variant)
                assert validate_classical(model).ok, "enumerated classical frame failed validation"
                assert not model.forces(witness, f), "packed evaluation disagrees with forcing"
                return model, witness
    return None


# ---------------------------------------------------------------------------
# File format: mirrors the intuitionistic one with Rbox:/Rv: and variant:

class ClassicalModelFormatError(ValueError):
    pass


def parse_classical_model(text: str) -> ClassicalModel:
    variant = None
    worlds = None
    rbox: list[tuple[int, int]] = []
    rv: list[tuple[int, int]] = []
    valuation: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ClassicalModelFormatError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, rest = line.split(":", 1)
        key = key.strip().lower()
        rest = rest.strip()
        if key == "variant":
            try:
                variant = Variant.parse(rest)
            except ValueError as exc:
                raise ClassicalModelFormatError(f"line {lineno}: {exc}") from None
        elif key == "worlds":
            try:
                worlds = {int(tok) for tok in rest.split()}
            except ValueError:
                raise ClassicalModelFormatError(f"line {lineno}: worlds must be integers") from None
        elif key in ("rbox", "rv"):
            target = rbox if key == "rbox" else rv
            for chunk in rest.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                parts = chunk.split()
                if len(parts) != 2:
                    raise ClassicalModelFormatError(f"line {lineno}: expected pairs 'u v', got {chunk!r}")
                target.append((int(parts[0]), int(parts[1])))
        elif key == "val":
            if ":" not in rest:
                raise ClassicalModelFormatError(f"line {lineno}: expected 'val: atom: worlds'")
            atom, ws = rest.split(":", 1)
            valuation.extend((atom.strip(), int(tok)) for tok in ws.split())
        else:
            raise ClassicalModelFormatError(f"line {lineno}: unknown key {key!r}")
    if variant is None:
        raise ClassicalModelFormatError("missing 'variant:' line")
    if worlds is None:
        raise ClassicalModelFormatError("missing 'worlds:' line")
    try:
        return ClassicalModel(worlds, rbox, rv, valuation, variant)
    except ValueError as exc:
        raise ClassicalModelFormatError(str(exc)) from None


def format_classical_model(model: ClassicalModel) -> str:
    lines = [f"variant: {model.variant.label}",
             "worlds: " + " ".join(str(w) for w in sorted(model.worlds))]
    lines.append("Rbox: " + "; ".join(f"{u} {v}" for u, v in model.rbox_pairs if u != v))
    lines.append("Rv: " + "; ".join(f"{u} {v}" for u, v in model.rv_pairs))
    by_atom: dict[str, list[int]] = {}
    for a, w in model.valuation_pairs:
        by_atom.setdefault(a, []).append(w)
    for a in sorted(by_atom):
        lines.append(f"val: {a}: " + " ".join(str(w) for w in sorted(by_atom[a])))
    return "\n".join(lines) + "\n"
