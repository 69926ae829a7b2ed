"""Exhaustive bounded model enumeration and brute-force countermodel search.

This is the independent oracle for the tableau prover.  Search is one-sided:
"no countermodel within bounds" is inconclusive, never a validity proof
(no finite-model property is assumed).

Frames are enumerated as preorders (reflexive-transitive closures of all
edge subsets, deduplicated by the closed relation), then every E relation
satisfying the logic's conditions, then every R-monotone valuation.  The
inner refutation loop evaluates formulas over all valuations of a frame at
once, packed into big integers; any hit is materialized as a KripkeModel
and re-checked through the semantics module before being returned.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from random import Random

from .syntax import Formula, Logic, atoms as formula_atoms, require_intuitionistic
from .semantics import KripkeModel, forces, validate


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for countermodel search (also reused as prover limits)."""

    max_worlds: int = 4
    atoms: tuple[str, ...] | None = None
    time_budget: float | None = None  # seconds; None = no budget
    reduce_isomorphic: bool = True    # prune isomorphic frames inside find_countermodel

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")


# ---------------------------------------------------------------------------
# Frame enumeration (worlds are 0..n-1 internally, bitmask successor sets)

def _close_masks(succ: list[int], n: int) -> tuple[int, ...]:
    changed = True
    while changed:
        changed = False
        for i in range(n):
            s = succ[i]
            t = s
            j = s
            while j:
                low = j & -j
                t |= succ[low.bit_length() - 1]
                j ^= low
            if t != s:
                succ[i] = t
                changed = True
    return tuple(succ)


def _closed_preorders(n: int) -> list[tuple[int, ...]]:
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    out = []
    for bits in range(1 << len(offdiag)):
        succ = [1 << i for i in range(n)]
        for idx, (i, j) in enumerate(offdiag):
            if bits >> idx & 1:
                succ[i] |= 1 << j
        closed = _close_masks(succ, n)
        if closed not in seen:
            seen.add(closed)
            out.append(closed)
    out.sort()
    return out


def _clusters(rsucc: tuple[int, ...], n: int) -> list[int]:
    """Mutually-reachable classes as bitmasks, maximal clusters first."""
    masks = set()
    for i in range(n):
        cl = 0
        for j in range(n):
            if rsucc[i] >> j & 1 and rsucc[j] >> i & 1:
                cl |= 1 << j
        masks.add(cl)
    # succ sets shrink strictly along the strict order, so sorting by the
    # representative's successor count puts maximal clusters first
    return sorted(masks, key=lambda cl: bin(rsucc[(cl & -cl).bit_length() - 1]).count("1"))


def _submasks(free: int):
    sub = free
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & free


def _e_assignments(rsucc: tuple[int, ...], n: int, logic: Logic):
    """All E relations satisfying the logic's coordination conditions.

    E is constant on clusters (forced by uRv => E(v) subset E(u) both ways)
    and nested downward along the strict cluster order.
    """
    clusters = _clusters(rsucc, n)
    full = (1 << n) - 1
    reprs = [(cl & -cl).bit_length() - 1 for cl in clusters]

    def rec(idx: int, assigned: list[int]):
        if idx == len(clusters):
            esucc = [0] * n
            for cl, mask in zip(clusters, assigned):
                for i in range(n):
                    if cl >> i & 1:
                        esucc[i] = mask
            yield tuple(esucc)
            return
        rep = reprs[idx]
        upper = rsucc[rep] if logic is not Logic.INTK else full
        lower = 0
        for j in range(idx):
            if clusters[j] != clusters[idx] and rsucc[rep] >> reprs[j] & 1:
                lower |= assigned[j]
        if lower & ~upper:
            return
        for sub in _submasks(upper & ~lower):
            mask = lower | sub
            if logic is Logic.IEL and mask == 0:
                continue
            assigned.append(mask)
            yield from rec(idx + 1, assigned)
            assigned.pop()

    yield from rec(0, [])


def _upsets(rsucc: tuple[int, ...], n: int) -> list[int]:
    out = []
    for mask in range(1 << n):
        ok = True
        for i in range(n):
            if mask >> i & 1 and rsucc[i] & ~mask:
                ok = False
                break
        if ok:
            out.append(mask)
    return out


def _permute_frame(rsucc, esucc, n, perm):
    r2 = [0] * n
    e2 = [0] * n
    for i in range(n):
        rm = em = 0
        for j in range(n):
            if rsucc[i] >> j & 1:
                rm |= 1 << perm[j]
            if esucc[i] >> j & 1:
                em |= 1 << perm[j]
        r2[perm[i]] = rm
        e2[perm[i]] = em
    return tuple(r2), tuple(e2)


def _canonical_key(rsucc, esucc, n):
    return min(_permute_frame(rsucc, esucc, n, perm)
               for perm in itertools.permutations(range(n)))


def _frame_stream(logic: Logic, n: int):
    for rsucc in _closed_preorders(n):
        for esucc in _e_assignments(rsucc, n, logic):
            yield rsucc, esucc


_FRAME_CACHE: dict[tuple, list] = {}

# IntK with 4 worlds has too many frames to keep around; stream those instead.
_CACHE_LIMIT = {Logic.INTK: 3, Logic.IELMINUS: 4, Logic.IEL: 4}


def _frames(logic: Logic, n: int, modulo_iso: bool):
    if n > _CACHE_LIMIT[logic]:
        if not modulo_iso:
            yield from _frame_stream(logic, n)
            return
        seen = set()
        for rsucc, esucc in _frame_stream(logic, n):
            key = _canonical_key(rsucc, esucc, n)
            if key not in seen:
                seen.add(key)
                yield rsucc, esucc
        return
    cache_key = (logic, n, modulo_iso)
    if cache_key not in _FRAME_CACHE:
        frames = []
        seen = set()
        for rsucc, esucc in _frame_stream(logic, n):
            if modulo_iso:
                key = _canonical_key(rsucc, esucc, n)
                if key in seen:
                    continue
                seen.add(key)
            frames.append((rsucc, esucc))
        _FRAME_CACHE[cache_key] = frames
    yield from _FRAME_CACHE[cache_key]


def _materialize(rsucc, esucc, n, val_pairs, logic) -> KripkeModel:
    worlds = range(1, n + 1)
    r_edges = [(i + 1, j + 1) for i in range(n) for j in range(n) if rsucc[i] >> j & 1]
    e_edges = [(i + 1, j + 1) for i in range(n) for j in range(n) if esucc[i] >> j & 1]
    return KripkeModel(worlds, r_edges, e_edges, val_pairs, logic)


# ---------------------------------------------------------------------------
# Public enumeration

def enumerate_models(logic: Logic, n: int, atoms=(), modulo_isomorphism: bool = False):
    """Yield every validated model over worlds {1..n} and the given atoms.

    Deduplication is by closed-structure equality; pass modulo_isomorphism
    to additionally prune world-permutation copies.
    """
    if n < 1:
        raise ValueError("world count must be at least 1")
    atom_list = tuple(atoms)
    for rsucc, esucc in _frames(logic, n, modulo_isomorphism):
        upsets = _upsets(rsucc, n)
        for choice in itertools.product(upsets, repeat=len(atom_list)):
            val_pairs = [(a, i + 1) for a, mask in zip(atom_list, choice)
                         for i in range(n) if mask >> i & 1]
            yield _materialize(rsucc, esucc, n, val_pairs, logic)


# ---------------------------------------------------------------------------
# Packed refutation search
#
# For one frame, all valuation combinations are checked at once: bit
# (c*n + u) of a formula's vector says whether world u forces it under
# valuation combination c.  Boolean connectives are bitwise; -> and K
# fold successor masks per world.

class _PackedFrame:
    def __init__(self, rsucc, esucc, n, atom_list):
        self.rsucc = rsucc
        self.esucc = esucc
        self.n = n
        self.atom_list = atom_list
        upsets = _upsets(rsucc, n)
        m = len(upsets)
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
                vec |= upsets[(c // stride) % m] << (c * n)
            self.atom_vec[name] = vec
        self._memo: dict[Formula, int] = {}
        self._upsets = upsets
        self._m = m

    def _all_successors_hold(self, vec: int, succ) -> int:
        n, rep, full = self.n, self.rep, self.full
        res = 0
        fail = vec ^ full
        for u in range(n):
            req = succ[u] * rep
            viol = req & fail
            acc = viol
            for s in range(1, n):
                acc |= viol >> s
            res |= ((acc ^ self.full) & rep) << u
        return res

    def eval(self, f: Formula) -> int:
        hit = self._memo.get(f)
        if hit is not None:
            return hit
        kind = type(f).__name__
        if kind == "Atom":
            out = self.atom_vec.get(f.name, 0)
        elif kind == "Bottom":
            out = 0
        elif kind == "And":
            out = self.eval(f.left) & self.eval(f.right)
        elif kind == "Or":
            out = self.eval(f.left) | self.eval(f.right)
        elif kind == "Imp":
            out = self._all_successors_hold((self.eval(f.left) ^ self.full) | self.eval(f.right),
                                            self.rsucc)
        elif kind == "K":
            out = self._all_successors_hold(self.eval(f.body), self.esucc)
        else:
            raise TypeError(f"cannot evaluate {f!r}")
        self._memo[f] = out
        return out

    def decode(self, bit_index: int):
        """Map a refuting bit back to (valuation pairs, witness world)."""
        c, u = divmod(bit_index, self.n)
        val_pairs = []
        for j, name in enumerate(self.atom_list):
            mask = self._upsets[(c // (self._m ** j)) % self._m]
            val_pairs += [(name, i + 1) for i in range(self.n) if mask >> i & 1]
        return val_pairs, u + 1


def find_countermodel(logic: Logic, f: Formula, cfg: SearchConfig | None = None):
    """Search validated models up to cfg.max_worlds for one refuting f.

    Returns (model, world) with forces(model, world, f) False, or None if
    every model within bounds forces f everywhere (inconclusive).
    """
    require_intuitionistic(f, "find_countermodel")
    cfg = cfg or SearchConfig()
    atom_list = tuple(cfg.atoms) if cfg.atoms is not None else tuple(sorted(formula_atoms(f)))
    missing = formula_atoms(f) - set(atom_list)
    if missing:
        raise ValueError(f"search atoms {atom_list} do not cover formula atoms {sorted(missing)}")
    deadline = time.monotonic() + cfg.time_budget if cfg.time_budget else None
    for n in range(1, cfg.max_worlds + 1):
        for rsucc, esucc in _frames(logic, n, cfg.reduce_isomorphic):
            if deadline is not None and time.monotonic() > deadline:
                return None
            packed = _PackedFrame(rsucc, esucc, n, atom_list)
            vec = packed.eval(f)
            if vec != packed.full:
                gap = vec ^ packed.full
                low = gap & -gap
                val_pairs, witness = packed.decode(low.bit_length() - 1)
                model = _materialize(rsucc, esucc, n, val_pairs, logic)
                # oracle soundness: re-check through the semantics module
                assert validate(model).ok, "enumerated frame failed validation"
                assert not forces(model, witness, f), "packed evaluation disagrees with forcing"
                return model, witness
    return None


# ---------------------------------------------------------------------------
# Random validated models (for soundness sweeps)

def random_model(logic: Logic, rng: Random, max_worlds: int = 4,
                 atoms: tuple[str, ...] = ("p", "q")) -> KripkeModel:
    """Draw a random validated model: random preorder, repaired E, random valuation."""
    n = rng.randint(1, max_worlds)
    worlds = list(range(1, n + 1))
    r_edges = [(u, v) for u in worlds for v in worlds
               if u != v and rng.random() < 0.35]
    probe = KripkeModel(worlds, r_edges, [], [], Logic.INTK)
    esucc = {}
    for u in worlds:
        pool = sorted(probe.r_successors(u)) if logic is not Logic.INTK else worlds
        esucc[u] = {v for v in pool if rng.random() < 0.4}
    # repair the nesting condition by growing E(u) along R, then seriality
    changed = True
    while changed:
        changed = False
        for u in worlds:
            for v in probe.r_successors(u):
                if not esucc[v] <= esucc[u]:
                    esucc[u] |= esucc[v]
                    changed = True
    if logic is Logic.IEL:
        for u in worlds:
            if not esucc[u]:
                esucc[u].add(rng.choice(sorted(probe.r_successors(u))))
        changed = True
        while changed:
            changed = False
            for u in worlds:
                for v in probe.r_successors(u):
                    if not esucc[v] <= esucc[u]:
                        esucc[u] |= esucc[v]
                        changed = True
    e_edges = [(u, v) for u in worlds for v in sorted(esucc[u])]
    val = [(a, w) for a in atoms for w in worlds if rng.random() < 0.4]
    model = KripkeModel(worlds, r_edges, e_edges, val, logic)
    report = validate(model)
    assert report.ok, f"random model repair failed: {report}"
    return model
