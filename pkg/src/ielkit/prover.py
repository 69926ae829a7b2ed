"""Validity decision for INTK / IEL- / IEL by signed labeled tableau.

Worlds carry T- and F-signed formula sets plus R- and E-edges.  Rules:

    T(A & B)@w   ->  T A@w, T B@w          F(A | B)@w  ->  F A@w, F B@w
    T(A | B)@w   ->  branch T A@w | T B@w  F(A & B)@w  ->  branch F A | F B
    T(A -> B)@w  ->  branch F A@w | T B@w  (re-applied at R-successors
                                            through persistence)
    F(A -> B)@w  ->  fresh w' with w R w', T A@w', F B@w'
    T(K A)@w     ->  T A@v for every E-successor v (re-applied as E grows)
    F(K A)@w     ->  fresh v with w E v (and w R v except in INTK), F A@v
    IEL only     ->  a world whose R-cone has no E-edge gets a fresh
                     unconstrained E+R successor (seriality witness); this
                     is what lets branches like T(K false) close

T-formulas persist along R (monotonicity).  Termination: a world whose
signed sets are contained in an ancestor's is blocked from creating
successors; blocked worlds are folded onto their blockers at extraction,
which may create R-cycles (models are preorders, so that is fine).

A branch that saturates open is turned into a candidate model: fold blocked
worlds, close R, close E downward along R (E'(u) = union of E(v) for uRv),
apply the seriality repair for IEL, read atoms off T-signs.  The candidate
counts only if it validates and refutes the query at the root, so Invalid
verdicts are machine-checked by construction; when no candidate survives,
the verdict downgrades to Unknown rather than guessing.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from .syntax import (
    And, Atom, Bottom, Formula, Imp, K, Logic, Or,
    render, require_intuitionistic, require_propositional,
)
from .semantics import KripkeModel, validate
from .search import SearchConfig


@dataclass(frozen=True)
class Valid:
    certificate: tuple[str, ...] = ()


@dataclass(frozen=True)
class Invalid:
    countermodel: KripkeModel
    witness: int


@dataclass(frozen=True)
class Unknown:
    reason: str


Verdict = Valid | Invalid | Unknown


class _BudgetExceeded(Exception):
    pass


class _Branch:
    __slots__ = ("tset", "fset", "parent", "rkids", "eedges",
                 "beta_done", "beta_queue", "dyn_queue", "witnessed",
                 "todo", "closed", "clash", "next_id")

    def __init__(self):
        self.tset: dict[int, dict[Formula, None]] = {}
        self.fset: dict[int, dict[Formula, None]] = {}
        self.parent: dict[int, int | None] = {}
        self.rkids: dict[int, list[int]] = {}
        self.eedges: dict[int, dict[int, None]] = {}
        self.beta_done: set = set()
        self.beta_queue: dict = {}   # (world, sign, formula) -> None
        self.dyn_queue: dict = {}    # (world, formula) -> None
        self.witnessed: set = set()  # worlds already given a seriality witness
        self.todo: deque = deque()
        self.closed = False
        self.clash = ""
        self.next_id = 1

    def copy(self) -> "_Branch":
        assert not self.todo, "copy only between saturation steps"
        br = _Branch.__new__(_Branch)
        br.tset = {w: dict(d) for w, d in self.tset.items()}
        br.fset = {w: dict(d) for w, d in self.fset.items()}
        br.parent = dict(self.parent)
        br.rkids = {w: list(v) for w, v in self.rkids.items()}
        br.eedges = {w: dict(d) for w, d in self.eedges.items()}
        br.beta_done = set(self.beta_done)
        br.beta_queue = dict(self.beta_queue)
        br.dyn_queue = dict(self.dyn_queue)
        br.witnessed = set(self.witnessed)
        br.todo = deque()
        br.closed = self.closed
        br.clash = self.clash
        br.next_id = self.next_id
        return br

    def new_world(self, parent: int | None) -> int:
        w = self.next_id
        self.next_id += 1
        self.tset[w] = {}
        self.fset[w] = {}
        self.parent[w] = parent
        self.rkids[w] = []
        self.eedges[w] = {}
        return w

    def r_cone(self, w: int) -> list[int]:
        out = [w]
        stack = [w]
        while stack:
            for v in self.rkids[stack.pop()]:
                out.append(v)
                stack.append(v)
        return out


class _Tableau:
    def __init__(self, logic: Logic, query: Formula, limits: SearchConfig):
        self.logic = logic
        self.query = query
        self.steps = 0
        self.max_steps = 600_000
        self.world_cap = max(60, 16 * limits.max_worlds)
        self.deadline = time.monotonic() + limits.time_budget if limits.time_budget else None
        self.closed_branches = 0
        self.open_count = 0
        self.worlds_created = 0
        self.clash_notes: list[str] = []

    def _tick(self):
        self.steps += 1
        if self.steps > self.max_steps:
            raise _BudgetExceeded(f"step budget {self.max_steps} exhausted")
        if self.deadline is not None and self.steps % 512 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExceeded("time budget exhausted")

    # -- sign bookkeeping ---------------------------------------------------

    def _drain(self, br: _Branch):
        while br.todo and not br.closed:
            op, a, b, c = br.todo.popleft()
            if op == "T":
                self._do_t(br, a, b)
            elif op == "F":
                self._do_f(br, a, b)
            elif op == "R":
                self._do_redge(br, a, b)
            else:
                self._do_eedge(br, a, b)
        br.todo.clear()

    def _do_t(self, br: _Branch, w: int, f: Formula):
        if f in br.tset[w]:
            return
        self._tick()
        br.tset[w][f] = None
        if isinstance(f, Bottom) or f in br.fset[w]:
            br.closed = True
            br.clash = f"T {render(f)} at world {w}"
            return
        if isinstance(f, And):
            br.todo.append(("T", w, f.left, None))
            br.todo.append(("T", w, f.right, None))
        elif isinstance(f, K):
            for x in br.eedges[w]:
                br.todo.append(("T", x, f.body, None))
        elif isinstance(f, (Or, Imp)):
            key = (w, True, f)
            if key not in br.beta_done:
                br.beta_queue[key] = None
        for v in br.rkids[w]:
            br.todo.append(("T", v, f, None))

    def _do_f(self, br: _Branch, w: int, f: Formula):
        if f in br.fset[w]:
            return
        self._tick()
        br.fset[w][f] = None
        if f in br.tset[w]:
            br.closed = True
            br.clash = f"F {render(f)} at world {w}"
            return
        if isinstance(f, Or):
            br.todo.append(("F", w, f.left, None))
            br.todo.append(("F", w, f.right, None))
        elif isinstance(f, And):
            key = (w, False, f)
            if key not in br.beta_done:
                br.beta_queue[key] = None
        elif isinstance(f, (Imp, K)):
            br.dyn_queue[(w, f)] = None

    def _do_redge(self, br: _Branch, u: int, v: int):
        br.rkids[u].append(v)
        for f in list(br.tset[u]):
            br.todo.append(("T", v, f, None))

    def _do_eedge(self, br: _Branch, u: int, v: int):
        br.eedges[u][v] = None
        for f in list(br.tset[u]):
            if isinstance(f, K):
                br.todo.append(("T", v, f.body, None))

    # -- rule selection -----------------------------------------------------

    def _beta_alternatives(self, br: _Branch, w: int, sign: bool, f: Formula):
        t, fs = br.tset[w], br.fset[w]
        if sign and isinstance(f, Imp):
            a, b = f.left, f.right
            if b in t or a in fs:
                return []
            if a in t:
                return [("T", b)]
            if b in fs:
                return [("F", a)]
            return [("F", a), ("T", b)]
        if sign and isinstance(f, Or):
            a, b = f.left, f.right
            if a in t or b in t:
                return []
            if a in fs:
                return [("T", b)]
            if b in fs:
                return [("T", a)]
            return [("T", a), ("T", b)]
        a, b = f.left, f.right  # F(And)
        if a in fs or b in fs:
            return []
        if a in t:
            return [("F", b)]
        if b in t:
            return [("F", a)]
        return [("F", a), ("F", b)]

    def _blocked(self, br: _Branch, w: int) -> int | None:
        """Nearest strict ancestor whose signed sets contain w's, else None."""
        tw, fw = br.tset[w].keys(), br.fset[w].keys()
        u = br.parent[w]
        while u is not None:
            if tw <= br.tset[u].keys() and fw <= br.fset[u].keys():
                return u
            u = br.parent[u]
        return None

    def _fulfilled(self, br: _Branch, w: int, f: Formula) -> bool:
        if isinstance(f, Imp):
            return any(f.left in br.tset[v] and f.right in br.fset[v]
                       for v in br.r_cone(w))
        return any(f.body in br.fset[x] for x in br.eedges[w])

    def _e_cone_empty(self, br: _Branch, w: int) -> bool:
        return all(not br.eedges[v] for v in br.r_cone(w))

    def _spawn(self, br: _Branch, w: int, f: Formula):
        if len(br.tset) >= self.world_cap:
            raise _BudgetExceeded(f"world cap {self.world_cap} exhausted")
        v = br.new_world(parent=w)
        self.worlds_created += 1
        if isinstance(f, Imp):
            br.todo.append(("R", w, v, None))
            br.todo.append(("T", v, f.left, None))
            br.todo.append(("F", v, f.right, None))
        else:  # F(K A)
            br.todo.append(("E", w, v, None))
            if self.logic is not Logic.INTK:
                br.todo.append(("R", w, v, None))
            br.todo.append(("F", v, f.body, None))

    def _spawn_witness(self, br: _Branch, w: int):
        if len(br.tset) >= self.world_cap:
            raise _BudgetExceeded(f"world cap {self.world_cap} exhausted")
        v = br.new_world(parent=w)
        self.worlds_created += 1
        br.witnessed.add(w)
        br.todo.append(("E", w, v, None))
        br.todo.append(("R", w, v, None))

    # -- search -------------------------------------------------------------

    def open_branches(self):
        br = _Branch()
        root = br.new_world(parent=None)
        br.todo.append(("F", root, self.query, None))
        yield from self._explore(br)

    def _explore(self, br: _Branch):
        while True:
            self._drain(br)
            if br.closed:
                self.closed_branches += 1
                if len(self.clash_notes) < 8:
                    self.clash_notes.append(br.clash)
                return
            # branching rules first
            beta = next(iter(br.beta_queue), None)
            if beta is not None:
                del br.beta_queue[beta]
                br.beta_done.add(beta)
                w, sign, f = beta
                alts = self._beta_alternatives(br, w, sign, f)
                if not alts:
                    continue
                if len(alts) == 1:
                    op, g = alts[0]
                    br.todo.append((op, w, g, None))
                    continue
                for op, g in alts:
                    child = br.copy()
                    child.todo.append((op, w, g, None))
                    yield from self._explore(child)
                return
            # world-creating rules
            progressed = False
            for w, f in list(br.dyn_queue):
                if self._fulfilled(br, w, f):
                    del br.dyn_queue[(w, f)]
                    continue
                if self._blocked(br, w) is not None:
                    continue
                del br.dyn_queue[(w, f)]
                self._spawn(br, w, f)
                progressed = True
                break
            if progressed:
                continue
            # seriality witnesses, deepest worlds first
            if self.logic is Logic.IEL:
                for w in sorted(br.tset, reverse=True):
                    if w in br.witnessed or br.eedges[w]:
                        continue
                    if self._blocked(br, w) is not None:
                        continue
                    if self._e_cone_empty(br, w):
                        self._spawn_witness(br, w)
                        progressed = True
                        break
                if progressed:
                    continue
            self.open_count += 1
            yield br
            return

    # -- model extraction ---------------------------------------------------

    def extract(self, br: _Branch):
        """Candidate countermodel from a saturated open branch, or None."""
        blocker: dict[int, int | None] = {}
        for w in sorted(br.tset):
            blocker[w] = None
            tw, fw = br.tset[w].keys(), br.fset[w].keys()
            u = br.parent[w]
            while u is not None:
                if blocker[u] is None and tw <= br.tset[u].keys() and fw <= br.fset[u].keys():
                    blocker[w] = u
                    break
                u = br.parent[u]

        def fold(w: int) -> int:
            while blocker[w] is not None:
                w = blocker[w]
            return w

        keep = sorted(w for w in br.tset if blocker[w] is None)
        r_edges = [(fold(u), fold(v)) for u in br.tset for v in br.rkids[u]]
        eset = {w: set() for w in keep}
        for u in br.tset:
            for x in br.eedges[u]:
                eset[fold(u)].add(fold(x))

        rsucc = {w: {w} for w in keep}
        for u, v in r_edges:
            rsucc[u].add(v)
        changed = True
        while changed:
            changed = False
            for u in keep:
                grown = set(rsucc[u])
                for v in rsucc[u]:
                    grown |= rsucc[v]
                if grown != rsucc[u]:
                    rsucc[u] = grown
                    changed = True

        def close_e():
            final = {u: set() for u in keep}
            for u in keep:
                for v in rsucc[u]:
                    final[u] |= eset[v]
            return final

        eall = close_e()
        if self.logic is Logic.IEL:
            for _ in range(len(keep) + 1):
                empty = [u for u in keep if not eall[u]]
                if not empty:
                    break
                u = empty[0]
                kbodies = [g.body for g in br.tset[u] if isinstance(g, K)]
                if all(g in br.tset[u] for g in kbodies):
                    eset[u].add(u)
                else:
                    target = next((v for v in sorted(rsucc[u])
                                   if all(g in br.tset[v] for g in kbodies)), None)
                    if target is None:
                        return None
                    eset[u].add(target)
                eall = close_e()
            if any(not eall[u] for u in keep):
                return None

        val = [(g.name, w) for w in keep for g in br.tset[w] if isinstance(g, Atom)]
        rename = {w: i + 1 for i, w in enumerate(keep)}
        model = KripkeModel(
            rename.values(),
            [(rename[u], rename[v]) for u, v in r_edges],
            [(rename[u], rename[x]) for u in keep for x in sorted(eall[u])],
            [(a, rename[w]) for a, w in val],
            self.logic,
        )
        witness = rename[fold(1)]
        if not validate(model).ok:
            return None
        if model.forces(witness, self.query):
            return None
        return model, witness


def _restrict(model: KripkeModel, keep: set, logic: Logic) -> KripkeModel:
    return KripkeModel(
        keep,
        [(u, v) for u, v in model.r_pairs if u in keep and v in keep],
        [(u, v) for u, v in model.e_pairs if u in keep and v in keep],
        [(a, w) for a, w in model.valuation_pairs if w in keep],
        logic,
    )


def _minimize(model: KripkeModel, witness: int, f: Formula, logic: Logic):
    """Greedily drop worlds while the model still validates and refutes f."""
    improved = True
    while improved and len(model.worlds) > 1:
        improved = False
        for w in sorted(model.worlds):
            if w == witness:
                continue
            candidate = _restrict(model, set(model.worlds) - {w}, logic)
            if validate(candidate).ok and not candidate.forces(witness, f):
                model = candidate
                improved = True
                break
    rename = {w: i + 1 for i, w in enumerate(sorted(model.worlds))}
    renamed = KripkeModel(
        rename.values(),
        [(rename[u], rename[v]) for u, v in model.r_pairs],
        [(rename[u], rename[v]) for u, v in model.e_pairs],
        [(a, rename[w]) for a, w in model.valuation_pairs],
        logic,
    )
    return renamed, rename[witness]


def decide(logic: Logic, f: Formula, limits: SearchConfig | None = None) -> Verdict:
    """Decide validity of f in the given logic.

    Valid carries a closure trace; Invalid carries a countermodel that has
    been validated and re-checked to refute f at the witness; Unknown is
    only returned when resource limits ran out or no candidate model
    survived the final check.
    """
    require_intuitionistic(f, "decide")
    limits = limits or SearchConfig()
    engine = _Tableau(logic, f, limits)
    try:
        for branch in engine.open_branches():
            got = engine.extract(branch)
            if got is not None:
                model, witness = got
                model, witness = _minimize(model, witness, f, logic)
                assert validate(model).ok and not model.forces(witness, f)
                return Invalid(countermodel=model, witness=witness)
    except _BudgetExceeded as exc:
        return Unknown(str(exc))
    if engine.open_count:
        return Unknown("open tableau branches yielded no extractable countermodel")
    cert = (f"branches closed: {engine.closed_branches}",
            f"worlds created: {engine.worlds_created}",
            *engine.clash_notes)
    return Valid(certificate=cert)


def decide_ipc(f: Formula, limits: SearchConfig | None = None) -> Verdict:
    """Decide a modality-free formula in IPC (identical to IEL- by K-free conservativity)."""
    require_propositional(f, "decide_ipc")
    return decide(Logic.IELMINUS, f, limits)
