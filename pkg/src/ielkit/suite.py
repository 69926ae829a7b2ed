"""Reproduction suite: every checkable claim from the source material, run live.

Covers the four refutation models, the theorem corpora per logic, the
refuted principles with re-checked countermodels, the Glivenko embedding of
classical epistemic reasoning, the proof library, the root/join
constructions, the truth-condition hierarchy over INTK, and the forward
Goedel embedding into S4V-/S4V.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .syntax import Logic, glivenko_translate, godel_translate, parse, render
from .semantics import (
    KripkeModel, add_root, builtin, forces, holds_in_model, join_with_root, validate,
)
from .search import SearchConfig, find_countermodel
from .prover import Invalid, Valid, decide
from .hilbert import check_proof, proof_library
from .classical import Variant, find_classical_countermodel
from .corpus import NON_THEOREMS, S5_THEOREMS, THEOREMS


@dataclass
class SuiteEntry:
    name: str
    expected: str
    observed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass
class SuiteReport:
    entries: list[SuiteEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def passed_count(self) -> int:
        return sum(1 for e in self.entries if e.passed)

    def check(self, name: str, expected: str, observed: str) -> None:
        self.entries.append(SuiteEntry(name, expected, observed))

    def to_tsv(self) -> str:
        return "".join(
            f"{e.name}\t{e.expected}\t{e.observed}\t{'PASS' if e.passed else 'FAIL'}\n"
            for e in self.entries)

    def __str__(self) -> str:
        width = max(len(e.name) for e in self.entries) if self.entries else 0
        lines = []
        for e in self.entries:
            mark = "PASS" if e.passed else "FAIL"
            lines.append(f"{e.name:<{width}}  expected={e.expected} observed={e.observed}  {mark}")
        lines.append(f"{self.passed_count}/{len(self.entries)} checks pass")
        return "\n".join(lines)


def _verdict_name(v) -> str:
    return type(v).__name__


def _checked_invalid(v, f) -> str:
    """Invalid verdicts only count when the countermodel survives re-checking."""
    if not isinstance(v, Invalid):
        return _verdict_name(v)
    if not validate(v.countermodel).ok:
        return "Invalid(countermodel fails validation)"
    if forces(v.countermodel, v.witness, f):
        return "Invalid(countermodel fails to refute)"
    return "Invalid"


def run_paper_suite(report_path: str | None = None,
                    figures_dir: str | None = None,
                    max_worlds: int = 4) -> SuiteReport:
    """Run every reproduction check; optionally write the TSV report and figures."""
    rep = SuiteReport()
    cfg = SearchConfig(max_worlds=max_worlds)
    models = {name: builtin(name) for name in ("M1", "M2", "M3", "M4")}

    # -- the four refutation models, fact by fact
    model_facts = [
        ("M1", 1, "K false", True), ("M2", 1, "K p", True), ("M2", 1, "p", False),
        ("M2", 1, "K p -> p", False), ("M2", 1, "K p -> ~~p", True),
        ("M3", 1, "K(p | ~p)", True), ("M3", 1, "K p", False), ("M3", 1, "K ~p", False),
        ("M4", 1, "K p", True), ("M4", 1, "~~p", False),
    ]
    for name, w, text, expect in model_facts:
        got = forces(models[name], w, parse(text))
        rep.check(f"models/{name} forces({w}, {text})", str(expect).lower(), str(got).lower())
    rep.check("models/M1 holds(~K false)", "false",
              str(holds_in_model(models["M1"], parse("~K false"))).lower())
    m4_as_iel = KripkeModel(models["M4"].worlds, models["M4"].r_pairs,
                            models["M4"].e_pairs, models["M4"].valuation_pairs, Logic.IEL)
    report4 = validate(m4_as_iel)
    seriality_hits = sorted(w for cond, (w,) in report4.violations if cond == "E-seriality")
    rep.check("models/M4-as-IEL seriality violations", "[2, 3]", str(seriality_hits))

    # -- theorem corpora
    for logic, items in THEOREMS.items():
        for name, text in items:
            v = decide(logic, parse(text), cfg)
            rep.check(f"theorems/{logic.label} {name}", "Valid", _verdict_name(v))

    # -- refuted principles, countermodels re-checked
    for name, logic, text in NON_THEOREMS:
        f = parse(text)
        v = decide(logic, f, cfg)
        rep.check(f"refutations/{logic.label} {name}", "Invalid", _checked_invalid(v, f))

    # -- the two comparison points with the double-negation modality
    rep.check("dosen/IEL K p -> ~~p", "Valid", _verdict_name(decide(Logic.IEL, parse("K p -> ~~p"), cfg)))
    f = parse("~~p -> K p")
    rep.check("dosen/IEL ~~p -> K p", "Invalid", _checked_invalid(decide(Logic.IEL, f, cfg), f))

    # -- knowability residues
    for text in ("p -> ~~K p", "~~(p -> K p)"):
        v = decide(Logic.IELMINUS, parse(text), cfg)
        rep.check(f"residues/IEL- {text}", "Valid", _verdict_name(v))

    # -- Glivenko embedding of classical epistemic logic
    for name, text in S5_THEOREMS:
        v = decide(Logic.IEL, glivenko_translate(parse(text)), cfg)
        rep.check(f"glivenko/IEL ~~({name})", "Valid", _verdict_name(v))

    # -- proof library
    for name, proof in proof_library():
        rep.check(f"proofs/{name} checks", "ok", str(check_proof(proof)))
        v = decide(proof.logic, proof.goal, cfg)
        rep.check(f"proofs/{name} goal valid in {proof.logic.label}", "Valid", _verdict_name(v))

    # -- root and join constructions
    rooted = add_root(models["M1"])
    rep.check("constructions/add_root(M1) worlds", "2", str(len(rooted.worlds)))
    root = max(rooted.worlds)
    rep.check("constructions/add_root(M1) root refutes K p", "false",
              str(forces(rooted, root, parse("K p"))).lower())
    rep.check("constructions/add_root(M1) validates", "true", str(validate(rooted).ok).lower())
    preserved = all(forces(rooted, w, parse(t)) == forces(models["M1"], w, parse(t))
                    for w in models["M1"].worlds
                    for t in ("K false", "~~p", "p -> K p"))
    rep.check("constructions/add_root(M1) preserves old worlds", "true", str(preserved).lower())
    joined = join_with_root(models["M2"], models["M3"])
    rep.check("constructions/join(M2,M3) validates as IEL", "true", str(validate(joined).ok).lower())
    twins = join_with_root(models["M1"], models["M1"])
    rep.check("constructions/join(M1,M1) worlds", "3", str(len(twins.worlds)))
    rep.check("constructions/join(M1,M1) validates as IEL-", "true", str(validate(twins).ok).lower())

    # -- truth-condition hierarchy over INTK: strictness needs small countermodels
    for text in ("(K p -> ~~p) -> (K p -> p)", "~K false -> (K p -> ~~p)"):
        got = find_countermodel(Logic.INTK, parse(text), SearchConfig(max_worlds=2))
        ok = got is not None and len(got[0].worlds) <= 2
        rep.check(f"hierarchy/INTK refutes {text} with <=2 worlds", "true", str(ok).lower())

    # -- forward Goedel embedding
    for name, text in THEOREMS[Logic.IEL]:
        tr = godel_translate(parse(text))
        got = find_classical_countermodel(Variant.S4V, tr, SearchConfig(max_worlds=3))
        rep.check(f"embedding/S4V tr({name})", "none", "none" if got is None else "refuted")
    for name, text in THEOREMS[Logic.IELMINUS]:
        tr = godel_translate(parse(text))
        got = find_classical_countermodel(Variant.S4VMINUS, tr, SearchConfig(max_worlds=3))
        rep.check(f"embedding/S4V- tr({name})", "none", "none" if got is None else "refuted")
    witness = find_classical_countermodel(Variant.S4VMINUS, godel_translate(parse("~K false")),
                                          SearchConfig(max_worlds=2))
    rep.check("embedding/S4V- refutes tr(~K false)", "refuted",
              "none" if witness is None else "refuted")

    if report_path:
        with open(report_path, "w") as fh:
            fh.write(rep.to_tsv())
        if figures_dir is None:
            figures_dir = os.path.dirname(os.path.abspath(report_path))
    if figures_dir:
        from .figures import draw_model, draw_suite_summary
        os.makedirs(figures_dir, exist_ok=True)
        for name, model in models.items():
            draw_model(model, os.path.join(figures_dir, f"model-{name}.png"),
                       title=f"{name} ({model.logic.label})")
        draw_suite_summary(rep, os.path.join(figures_dir, "suite-summary.png"))
    return rep
