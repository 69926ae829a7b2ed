"""Hilbert-style proof objects and their checker.

Axiom schemas: a 9-schema basis for the propositional part (A1..A9), the
distribution schema DIST, co-reflection CO (absent from INTK), and
intuitionistic reflection IR (IEL only).  Rules: modus ponens, and
K-necessitation (primitive in INTK, derivable from CO elsewhere; a
rewriter that eliminates it is provided).

Justification "ipc" marks a step that is a substitution instance of a
propositional intuitionistic validity; it is checked by abstracting the
maximal K-subformulas as fresh atoms and running the IPC decision mode.

Proof file format (# comments allowed):

    logic: IEL
    goal: ~K false
    1. K false -> ~~false | axiom IR
    2. (K false -> ~~false) -> ((~~false -> false) -> (K false -> false)) | ipc
    3. (~~false -> false) -> (K false -> false) | mp 1 2
    4. ~~false -> false | ipc
    5. K false -> false | mp 4 3
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And, Atom, Bottom, Formula, Imp, K, Logic, Or,
    atoms as formula_atoms, has_box_or_ver, neg, parse, render,
)
from .prover import Valid, decide_ipc
from .search import SearchConfig


# ---------------------------------------------------------------------------
# Axiom schemas (patterns use metavariable atoms A, B, C, which are not
# expressible in the concrete grammar, so they can never collide with
# object-level atoms)

_A, _B, _C = Atom("A"), Atom("B"), Atom("C")


@dataclass(frozen=True)
class AxiomSchema:
    id: str
    pattern: Formula
    logics: tuple[Logic, ...]


_ALL = (Logic.INTK, Logic.IELMINUS, Logic.IEL)
_CO_LOGICS = (Logic.IELMINUS, Logic.IEL)

SCHEMAS: dict[str, AxiomSchema] = {s.id: s for s in [
    AxiomSchema("A1", Imp(_A, Imp(_B, _A)), _ALL),
    AxiomSchema("A2", Imp(Imp(_A, Imp(_B, _C)), Imp(Imp(_A, _B), Imp(_A, _C))), _ALL),
    AxiomSchema("A3", Imp(And(_A, _B), _A), _ALL),
    AxiomSchema("A4", Imp(And(_A, _B), _B), _ALL),
    AxiomSchema("A5", Imp(_A, Imp(_B, And(_A, _B))), _ALL),
    AxiomSchema("A6", Imp(_A, Or(_A, _B)), _ALL),
    AxiomSchema("A7", Imp(_B, Or(_A, _B)), _ALL),
    AxiomSchema("A8", Imp(Imp(_A, _C), Imp(Imp(_B, _C), Imp(Or(_A, _B), _C))), _ALL),
    AxiomSchema("A9", Imp(Bottom(), _A), _ALL),
    AxiomSchema("DIST", Imp(K(Imp(_A, _B)), Imp(K(_A), K(_B))), _ALL),
    AxiomSchema("CO", Imp(_A, K(_A)), _CO_LOGICS),
    AxiomSchema("IR", Imp(K(_A), neg(neg(_A))), (Logic.IEL,)),
]}


def match_axiom(f: Formula, schema: AxiomSchema):
    """Substitution mapping metavariables to formulas with sigma(pattern) = f, or None."""
    subst: dict[str, Formula] = {}

    def go(pat: Formula, g: Formula) -> bool:
        if isinstance(pat, Atom):
            seen = subst.get(pat.name)
            if seen is None:
                subst[pat.name] = g
                return True
            return seen == g
        if isinstance(pat, Bottom):
            return isinstance(g, Bottom)
        if type(pat) is not type(g):
            return False
        if isinstance(pat, (And, Or, Imp)):
            return go(pat.left, g.left) and go(pat.right, g.right)
        return go(pat.body, g.body)  # K

    return subst if go(schema.pattern, f) else None


# ---------------------------------------------------------------------------
# Proof objects

@dataclass(frozen=True)
class AxiomRef:
    schema_id: str


@dataclass(frozen=True)
class MP:
    i: int  # 1-based earlier line numbers
    j: int


@dataclass(frozen=True)
class Nec:
    i: int


@dataclass(frozen=True)
class Ipc:
    pass


@dataclass(frozen=True)
class Hyp:
    """Premise reference; only used in derivations, never in proof files."""
    index: int


Justification = AxiomRef | MP | Nec | Ipc | Hyp


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class HilbertProof:
    logic: Logic
    goal: Formula
    lines: tuple[ProofLine, ...]


@dataclass
class CheckResult:
    ok: bool
    line: int | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "ok" if self.ok else f"error at line {self.line}: {self.reason}"


def abstract_k_subformulas(f: Formula) -> Formula:
    """Replace maximal K-subformulas by fresh atoms (same subformula, same atom)."""
    used = formula_atoms(f)
    mapping: dict[Formula, Atom] = {}
    counter = [0]

    def fresh() -> Atom:
        while True:
            name = f"k{counter[0]}"
            counter[0] += 1
            if name not in used:
                return Atom(name)

    def go(g: Formula) -> Formula:
        if isinstance(g, K):
            if g not in mapping:
                mapping[g] = fresh()
            return mapping[g]
        if isinstance(g, And):
            return And(go(g.left), go(g.right))
        if isinstance(g, Or):
            return Or(go(g.left), go(g.right))
        if isinstance(g, Imp):
            return Imp(go(g.left), go(g.right))
        return g

    return go(f)


def _check_lines(logic: Logic, lines, premises=()) -> CheckResult:
    for no, line in enumerate(lines, start=1):
        f, just = line.formula, line.justification
        if has_box_or_ver(f):
            return CheckResult(False, no, "formula is not in the intuitionistic language")
        if isinstance(just, AxiomRef):
            schema = SCHEMAS.get(just.schema_id)
            if schema is None:
                return CheckResult(False, no, f"unknown axiom schema {just.schema_id!r}")
            if logic not in schema.logics:
                return CheckResult(False, no, f"axiom {schema.id} is not available in {logic.label}")
            if match_axiom(f, schema) is None:
                return CheckResult(False, no, f"formula is not an instance of {schema.id}")
        elif isinstance(just, MP):
            if not (1 <= just.i < no and 1 <= just.j < no):
                return CheckResult(False, no, "mp must reference earlier lines")
            major = lines[just.j - 1].formula
            if major != Imp(lines[just.i - 1].formula, f):
                return CheckResult(False, no,
                                   f"line {just.j} is not (line {just.i} -> this line)")
        elif isinstance(just, Nec):
            if not 1 <= just.i < no:
                return CheckResult(False, no, "nec must reference an earlier line")
            if f != K(lines[just.i - 1].formula):
                return CheckResult(False, no, f"formula is not K applied to line {just.i}")
        elif isinstance(just, Ipc):
            verdict = decide_ipc(abstract_k_subformulas(f), SearchConfig(max_worlds=4))
            if not isinstance(verdict, Valid):
                return CheckResult(False, no, "not an instance of an IPC validity")
        elif isinstance(just, Hyp):
            if not 0 <= just.index < len(premises):
                return CheckResult(False, no, f"no premise with index {just.index}")
            if f != premises[just.index]:
                return CheckResult(False, no, f"formula differs from premise {just.index}")
        else:
            return CheckResult(False, no, f"unknown justification {just!r}")
    return CheckResult(True)


def check_proof(proof: HilbertProof) -> CheckResult:
    """Check every line; a proof must be premise-free and end in its goal."""
    if not proof.lines:
        return CheckResult(False, None, "empty proof")
    if any(isinstance(line.justification, Hyp) for line in proof.lines):
        bad = next(i for i, line in enumerate(proof.lines, 1) if isinstance(line.justification, Hyp))
        return CheckResult(False, bad, "premises are not allowed in proofs")
    result = _check_lines(proof.logic, proof.lines)
    if not result.ok:
        return result
    if proof.lines[-1].formula != proof.goal:
        return CheckResult(False, len(proof.lines), "final line differs from the goal")
    return CheckResult(True)


def check_derivation(logic: Logic, premises: tuple[Formula, ...], lines) -> CheckResult:
    """Like check_proof but hypotheses (Hyp) referencing premises are allowed."""
    if not lines:
        return CheckResult(False, None, "empty derivation")
    return _check_lines(logic, tuple(lines), premises)


# ---------------------------------------------------------------------------
# Proof transformers

def eliminate_necessitation(proof: HilbertProof) -> HilbertProof:
    """Rewrite Nec steps into CO + MP; only meaningful for IEL-/IEL."""
    if proof.logic is Logic.INTK:
        raise ValueError("necessitation is primitive in INTK; nothing to eliminate")
    new_lines: list[ProofLine] = []
    remap: dict[int, int] = {}
    for no, line in enumerate(proof.lines, start=1):
        just = line.justification
        if isinstance(just, MP):
            just = MP(remap[just.i], remap[just.j])
        elif isinstance(just, Nec):
            body = proof.lines[just.i - 1].formula
            new_lines.append(ProofLine(Imp(body, K(body)), AxiomRef("CO")))
            just = MP(remap[just.i], len(new_lines))
        new_lines.append(ProofLine(line.formula, just))
        remap[no] = len(new_lines)
    return HilbertProof(proof.logic, proof.goal, tuple(new_lines))


def discharge_premise(logic: Logic, premises: tuple[Formula, ...], lines):
    """Deduction theorem, one step: from premises, G derive premises[:-1], P -> G.

    The derivation must be Nec-free (run eliminate_necessitation first);
    this matches the deduction theorem's scope in the CO logics, where Nec
    is an abbreviation anyway.
    """
    if not premises:
        raise ValueError("no premise to discharge")
    if any(isinstance(line.justification, Nec) for line in lines):
        raise ValueError("discharge requires a Nec-free derivation")
    p = premises[-1]
    rest = premises[:-1]
    new_lines: list[ProofLine] = []
    remap: dict[int, int] = {}

    def emit(formula: Formula, just: Justification) -> int:
        new_lines.append(ProofLine(formula, just))
        return len(new_lines)

    for no, line in enumerate(lines, start=1):
        f, just = line.formula, line.justification
        if isinstance(just, Hyp) and just.index == len(premises) - 1:
            remap[no] = emit(Imp(p, p), Ipc())
            continue
        if isinstance(just, MP):
            minor = lines[just.i - 1].formula
            a2 = Imp(Imp(p, Imp(minor, f)), Imp(Imp(p, minor), Imp(p, f)))
            n_a2 = emit(a2, AxiomRef("A2"))
            n_mid = emit(Imp(Imp(p, minor), Imp(p, f)), MP(remap[just.j], n_a2))
            remap[no] = emit(Imp(p, f), MP(remap[just.i], n_mid))
            continue
        n_f = emit(f, just)
        n_a1 = emit(Imp(f, Imp(p, f)), AxiomRef("A1"))
        remap[no] = emit(Imp(p, f), MP(n_f, n_a1))
    return rest, tuple(new_lines)


def deduction_transform(logic: Logic, premises: tuple[Formula, ...], lines) -> HilbertProof:
    """Discharge every premise (right to left), yielding a closed proof of
    premises[0] -> ... -> premises[-1] -> goal."""
    goal = lines[-1].formula
    work = tuple(lines)
    prem = tuple(premises)
    while prem:
        goal = Imp(prem[-1], goal)
        prem, work = discharge_premise(logic, prem, work)
    return HilbertProof(logic, goal, work)


# ---------------------------------------------------------------------------
# Proof file format

class ProofFormatError(ValueError):
    """Malformed proof file."""


def _parse_justification(text: str) -> Justification:
    parts = text.split()
    if not parts:
        raise ProofFormatError("missing justification")
    head = parts[0].lower()
    if head == "axiom" and len(parts) == 2:
        return AxiomRef(parts[1].upper())
    if head == "ipc" and len(parts) == 1:
        return Ipc()
    if head == "mp" and len(parts) == 3:
        return MP(int(parts[1]), int(parts[2]))
    if head == "nec" and len(parts) == 2:
        return Nec(int(parts[1]))
    raise ProofFormatError(f"bad justification {text!r} (expected 'axiom ID', 'ipc', 'mp i j' or 'nec i')")


def parse_proof(text: str) -> HilbertProof:
    logic = None
    goal = None
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        lowered = stripped.lower()
        if lowered.startswith("logic:"):
            logic = Logic.parse(stripped.split(":", 1)[1])
            continue
        if lowered.startswith("goal:"):
            goal = parse(stripped.split(":", 1)[1])
            continue
        if "." not in stripped:
            raise ProofFormatError(f"line {lineno}: expected 'N. formula | justification'")
        number, rest = stripped.split(".", 1)
        try:
            n = int(number)
        except ValueError:
            raise ProofFormatError(f"line {lineno}: bad line number {number!r}") from None
        if n != len(lines) + 1:
            raise ProofFormatError(f"line {lineno}: expected line number {len(lines) + 1}, got {n}")
        if "|" not in rest:
            raise ProofFormatError(f"line {lineno}: missing '| justification'")
        formula_text, just_text = rest.rsplit("|", 1)
        try:
            formula = parse(formula_text.strip())
            just = _parse_justification(just_text.strip())
        except (ProofFormatError, ValueError) as exc:
            raise ProofFormatError(f"line {lineno}: {exc}") from None
        lines.append(ProofLine(formula, just))
    if logic is None:
        raise ProofFormatError("missing 'logic:' line")
    if goal is None:
        raise ProofFormatError("missing 'goal:' line")
    if not lines:
        raise ProofFormatError("proof has no lines")
    return HilbertProof(logic, goal, tuple(lines))


def format_proof(proof: HilbertProof) -> str:
    out = [f"logic: {proof.logic.label}", f"goal: {render(proof.goal)}"]
    for no, line in enumerate(proof.lines, start=1):
        just = line.justification
        if isinstance(just, AxiomRef):
            jtext = f"axiom {just.schema_id}"
        elif isinstance(just, MP):
            jtext = f"mp {just.i} {just.j}"
        elif isinstance(just, Nec):
            jtext = f"nec {just.i}"
        elif isinstance(just, Ipc):
            jtext = "ipc"
        else:
            raise ValueError("premises cannot be serialized to the proof format")
        out.append(f"{no}. {render(line.formula)} | {jtext}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# The bundled library, written in the file format it checks

_LIBRARY_TEXT: dict[str, str] = {
    # K distributes over conjunction, left to right
    "distconj-lr": """
        logic: IEL-
        goal: K(p & q) -> (K p & K q)
        1. p & q -> p | axiom A3
        2. K(p & q -> p) | nec 1
        3. K(p & q -> p) -> (K(p & q) -> K p) | axiom DIST
        4. K(p & q) -> K p | mp 2 3
        5. p & q -> q | axiom A4
        6. K(p & q -> q) | nec 5
        7. K(p & q -> q) -> (K(p & q) -> K q) | axiom DIST
        8. K(p & q) -> K q | mp 6 7
        9. (K(p & q) -> K p) -> ((K(p & q) -> K q) -> (K(p & q) -> (K p & K q))) | ipc
        10. (K(p & q) -> K q) -> (K(p & q) -> (K p & K q)) | mp 4 9
        11. K(p & q) -> (K p & K q) | mp 8 10
    """,
    "distconj-rl": """
        logic: IEL-
        goal: (K p & K q) -> K(p & q)
        1. p -> (q -> (p & q)) | axiom A5
        2. K(p -> (q -> (p & q))) | nec 1
        3. K(p -> (q -> (p & q))) -> (K p -> K(q -> (p & q))) | axiom DIST
        4. K p -> K(q -> (p & q)) | mp 2 3
        5. K(q -> (p & q)) -> (K q -> K(p & q)) | axiom DIST
        6. (K p -> K(q -> (p & q))) -> ((K(q -> (p & q)) -> (K q -> K(p & q))) -> ((K p & K q) -> K(p & q))) | ipc
        7. (K(q -> (p & q)) -> (K q -> K(p & q))) -> ((K p & K q) -> K(p & q)) | mp 4 6
        8. (K p & K q) -> K(p & q) | mp 5 7
    """,
    # provable consistency of knowledge, following the printed proof script
    "ielth-1": """
        logic: IEL
        goal: ~K false
        1. K false -> ~~false | axiom IR
        2. (K false -> ~~false) -> ((~~false -> false) -> (K false -> false)) | ipc
        3. (~~false -> false) -> (K false -> false) | mp 1 2
        4. ~~false -> false | ipc
        5. K false -> false | mp 4 3
    """,
    "ielth-2": """
        logic: IEL
        goal: ~(K p & ~p)
        1. K p -> ~~p | axiom IR
        2. (K p -> ~~p) -> ~(K p & ~p) | ipc
        3. ~(K p & ~p) | mp 1 2
    """,
    "ielth-3": """
        logic: IEL
        goal: ~p -> ~K p
        1. K p -> ~~p | axiom IR
        2. (K p -> ~~p) -> (~p -> ~K p) | ipc
        3. ~p -> ~K p | mp 1 2
    """,
    "ielth-4": """
        logic: IEL
        goal: ~~(K p -> p)
        1. K p -> ~~p | axiom IR
        2. (K p -> ~~p) -> (~~K p -> ~~p) | ipc
        3. ~~K p -> ~~p | mp 1 2
        4. (~~K p -> ~~p) -> ~~(K p -> p) | ipc
        5. ~~(K p -> p) | mp 3 4
    """,
    # reflection for negated formulas
    "fknref": """
        logic: IEL
        goal: K ~p -> ~p
        1. K ~p -> ~~~p | axiom IR
        2. (K ~p -> ~~~p) -> (K ~p -> ~p) | ipc
        3. K ~p -> ~p | mp 1 2
    """,
    # knowledge and negation commute
    "kcomm": """
        logic: IEL
        goal: ~K p <-> K ~p
        1. p -> K p | axiom CO
        2. (p -> K p) -> (~K p -> ~p) | ipc
        3. ~K p -> ~p | mp 1 2
        4. ~p -> K ~p | axiom CO
        5. (~K p -> ~p) -> ((~p -> K ~p) -> (~K p -> K ~p)) | ipc
        6. (~p -> K ~p) -> (~K p -> K ~p) | mp 3 5
        7. ~K p -> K ~p | mp 4 6
        8. K ~p -> ~~~p | axiom IR
        9. (K ~p -> ~~~p) -> (K ~p -> ~p) | ipc
        10. K ~p -> ~p | mp 8 9
        11. K p -> ~~p | axiom IR
        12. (K p -> ~~p) -> (~p -> ~K p) | ipc
        13. ~p -> ~K p | mp 11 12
        14. (K ~p -> ~p) -> ((~p -> ~K p) -> (K ~p -> ~K p)) | ipc
        15. (~p -> ~K p) -> (K ~p -> ~K p) | mp 10 14
        16. K ~p -> ~K p | mp 13 15
        17. (~K p -> K ~p) -> ((K ~p -> ~K p) -> (~K p <-> K ~p)) | axiom A5
        18. (K ~p -> ~K p) -> (~K p <-> K ~p) | mp 7 17
        19. ~K p <-> K ~p | mp 16 18
    """,
    # unverifiability is falsehood
    "nka-na": """
        logic: IEL
        goal: ~K p <-> ~p
        1. p -> K p | axiom CO
        2. (p -> K p) -> (~K p -> ~p) | ipc
        3. ~K p -> ~p | mp 1 2
        4. K p -> ~~p | axiom IR
        5. (K p -> ~~p) -> (~p -> ~K p) | ipc
        6. ~p -> ~K p | mp 4 5
        7. (~K p -> ~p) -> ((~p -> ~K p) -> (~K p <-> ~p)) | axiom A5
        8. (~p -> ~K p) -> (~K p <-> ~p) | mp 3 7
        9. ~K p <-> ~p | mp 6 8
    """,
    # no truth is unverifiable
    "vfbl": """
        logic: IEL
        goal: ~(~K p & ~K ~p)
        1. p -> K p | axiom CO
        2. (p -> K p) -> (~K p -> ~p) | ipc
        3. ~K p -> ~p | mp 1 2
        4. ~p -> K ~p | axiom CO
        5. (~K p -> ~p) -> ((~p -> K ~p) -> (~K p -> K ~p)) | ipc
        6. (~p -> K ~p) -> (~K p -> K ~p) | mp 3 5
        7. ~K p -> K ~p | mp 4 6
        8. (~K p -> K ~p) -> ~(~K p & ~K ~p) | ipc
        9. ~(~K p & ~K ~p) | mp 7 8
    """,
    # positive and negative introspection are co-reflection instances
    "intro-pos": """
        logic: IEL-
        goal: K p -> K K p
        1. K p -> K K p | axiom CO
    """,
    "intro-neg": """
        logic: IEL-
        goal: ~K p -> K ~K p
        1. ~K p -> K ~K p | axiom CO
    """,
    # derived necessitation in action
    "nec-demo": """
        logic: IEL-
        goal: K(p -> (q -> p))
        1. p -> (q -> p) | axiom A1
        2. K(p -> (q -> p)) | nec 1
    """,
    # truth-condition hierarchy over INTK: downward implications
    "hierarchy-top-to-mid": """
        logic: INTK
        goal: (K p -> p) -> (K p -> ~~p)
        1. (K p -> p) -> (K p -> ~~p) | ipc
    """,
    "hierarchy-mid-to-bot": """
        logic: INTK
        goal: (~false -> ~K false) -> ~K false
        1. ~false | ipc
        2. ~false -> ((~false -> ~K false) -> ~K false) | ipc
        3. (~false -> ~K false) -> ~K false | mp 1 2
    """,
    # the middle group is a four-way propositional equivalence
    "hierarchy-mid-equiv-1": """
        logic: IEL-
        goal: ~(K p & ~p) <-> (K p -> ~~p)
        1. ~(K p & ~p) <-> (K p -> ~~p) | ipc
    """,
    "hierarchy-mid-equiv-2": """
        logic: IEL-
        goal: (K p -> ~~p) <-> ~~(K p -> p)
        1. (K p -> ~~p) <-> ~~(K p -> p) | ipc
    """,
    "hierarchy-mid-equiv-3": """
        logic: IEL-
        goal: (K p -> ~~p) <-> (~p -> ~K p)
        1. (K p -> ~~p) <-> (~p -> ~K p) | ipc
    """,
    # intuitionistic knowability and the double-negated co-reflection residue
    "knowability": """
        logic: IEL-
        goal: p -> ~~K p
        1. p -> K p | axiom CO
        2. (p -> K p) -> (p -> ~~K p) | ipc
        3. p -> ~~K p | mp 1 2
    """,
    "cf-residue": """
        logic: IEL-
        goal: ~~(p -> K p)
        1. p -> K p | axiom CO
        2. (p -> K p) -> ~~(p -> K p) | ipc
        3. ~~(p -> K p) | mp 1 2
    """,
}


def proof_library() -> list[tuple[str, HilbertProof]]:
    """The bundled machine-checked proofs; every entry passes check_proof."""
    return [(name, parse_proof(text)) for name, text in _LIBRARY_TEXT.items()]
