"""Bundled formula corpora shared by the reproduction suite and the tests.

IEL_THEOREMS lists the schema instances (at A,B,P := p,q) that the logic of
knowledge proves; IELMINUS_THEOREMS the ones already provable without
intuitionistic reflection; INTK_THEOREMS the ones needing neither
co-reflection nor reflection.  NON_THEOREMS pairs each refutable principle
with the logic it is refuted in.  S5_THEOREMS is the classical epistemic
list whose double negations embed into IEL.
"""

from __future__ import annotations

from .syntax import Logic, parse

IEL_THEOREMS = [
    ("distribution", "K(p -> q) -> (K p -> K q)"),
    ("co-reflection", "p -> K p"),
    ("intuitionistic-reflection", "K p -> ~~p"),
    ("consistency", "~K false"),
    ("no-false-knowledge", "~(K p & ~p)"),
    ("falsehood-unknowable", "~p -> ~K p"),
    ("double-negated-reflection", "~~(K p -> p)"),
    ("K-over-conjunction", "K(p & q) <-> (K p & K q)"),
    ("positive-introspection", "K p -> K K p"),
    ("negative-introspection", "~K p -> K ~K p"),
    ("negated-reflection", "K ~p -> ~p"),
    ("K-negation-commute", "~K p <-> K ~p"),
    ("unverifiable-is-false", "~K p <-> ~p"),
    ("no-unverifiable-truth", "~(~K p & ~K ~p)"),
    ("intuitionistic-knowability", "p -> ~~K p"),
    ("double-negated-co-reflection", "~~(p -> K p)"),
]

IELMINUS_THEOREMS = [
    ("distribution", "K(p -> q) -> (K p -> K q)"),
    ("co-reflection", "p -> K p"),
    ("K-over-conjunction", "K(p & q) <-> (K p & K q)"),
    ("positive-introspection", "K p -> K K p"),
    ("negative-introspection", "~K p -> K ~K p"),
    ("intuitionistic-knowability", "p -> ~~K p"),
    ("double-negated-co-reflection", "~~(p -> K p)"),
]

INTK_THEOREMS = [
    ("distribution", "K(p -> q) -> (K p -> K q)"),
    ("K-over-conjunction", "K(p & q) <-> (K p & K q)"),
    ("necessitated-identity", "K(p -> p)"),
    ("hierarchy-top-to-mid", "(K p -> p) -> (K p -> ~~p)"),
    ("hierarchy-mid-to-bot", "(~false -> ~K false) -> ~K false"),
    ("hierarchy-mid-equivalence", "~(K p & ~p) <-> (K p -> ~~p)"),
]

THEOREMS = {
    Logic.IEL: IEL_THEOREMS,
    Logic.IELMINUS: IELMINUS_THEOREMS,
    Logic.INTK: INTK_THEOREMS,
}

# refutable principles with the logic to refute them in
NON_THEOREMS = [
    ("reflection-iel", Logic.IEL, "K p -> p"),
    ("reflection-ielminus", Logic.IELMINUS, "K p -> p"),
    ("K-over-disjunction-iel", Logic.IEL, "K(p | q) -> (K p | K q)"),
    ("K-over-disjunction-ielminus", Logic.IELMINUS, "K(p | q) -> (K p | K q)"),
    ("classical-truth-implies-knowledge", Logic.IEL, "~~p -> K p"),
    ("consistency-ielminus", Logic.IELMINUS, "~K false"),
    ("intk-reflection-strict", Logic.INTK, "K p -> ~~p"),
    ("intk-co-reflection", Logic.INTK, "p -> K p"),
    ("hierarchy-mid-to-top-reversed", Logic.INTK, "(K p -> ~~p) -> (K p -> p)"),
    ("hierarchy-bot-to-mid-reversed", Logic.INTK, "~K false -> (K p -> ~~p)"),
]

# classical S5 theorems; IEL proves the double negation of each
S5_THEOREMS = [
    ("factivity", "K p -> p"),
    ("positive-introspection", "K p -> K K p"),
    ("negative-introspection", "~K p -> K ~K p"),
    ("excluded-middle", "p | ~p"),
    ("distribution", "K(p -> q) -> (K p -> K q)"),
    ("consistency", "~K false"),
    ("knowledge-excluded-middle", "K p | ~K p"),
    ("conjunction-aggregation", "(K p & K q) -> K(p & q)"),
    ("double-negation-elimination", "~~p -> p"),
    ("brouwersche", "p -> K ~K ~p"),
]


def theorem_formulas(logic: Logic):
    return [(name, parse(text)) for name, text in THEOREMS[logic]]
