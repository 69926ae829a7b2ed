"""Formula ASTs, the concrete grammar, a pretty-printer, and syntactic translations.

The surface syntax is ASCII (`~ & | -> <-> K [] V false`) with unicode
aliases accepted on input.  Grammar (EBNF):

    formula := imp
    imp     := or ("->" imp)? | or "<->" or
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := ("~" | "K" | "[]" | "V") unary
             | atom | "false" | "(" formula ")"
    atom    := [a-z][a-z0-9_]*

Negation and <-> are sugar: ~A is Imp(A, false), A <-> B is
(A -> B) & (B -> A).  The printer re-sugars ~ but not <->.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Logic(IntEnum):
    """The three logics, ordered by axiom-set inclusion: INTK < IELMINUS < IEL."""

    INTK = 0
    IELMINUS = 1
    IEL = 2

    @property
    def label(self) -> str:
        return {Logic.INTK: "INTK", Logic.IELMINUS: "IEL-", Logic.IEL: "IEL"}[self]

    @classmethod
    def parse(cls, text: str) -> "Logic":
        key = text.strip().upper()
        table = {
            "INTK": cls.INTK, "INT_K": cls.INTK,
            "IEL-": cls.IELMINUS, "IELMINUS": cls.IELMINUS, "IELM": cls.IELMINUS,
            "IEL": cls.IEL,
        }
        if key not in table:
            raise ValueError(f"unknown logic {text!r} (expected IEL, IEL- or INTK)")
        return table[key]


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class K(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class Ver(Formula):
    body: Formula


FALSE = Bottom()


def neg(f: Formula) -> Formula:
    return Imp(f, FALSE)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def is_negation(f: Formula) -> bool:
    return isinstance(f, Imp) and f.right == FALSE


def subformulas(f: Formula):
    """Yield every subformula of f, including f itself (with repeats)."""
    yield f
    if isinstance(f, (And, Or, Imp)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (K, Box, Ver)):
        yield from subformulas(f.body)


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def node_count(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def has_k(f: Formula) -> bool:
    return any(isinstance(g, K) for g in subformulas(f))


def has_box_or_ver(f: Formula) -> bool:
    return any(isinstance(g, (Box, Ver)) for g in subformulas(f))


class LanguageError(ValueError):
    """Formula belongs to the wrong sublanguage for the requested operation."""


def require_intuitionistic(f: Formula, operation: str) -> None:
    if has_box_or_ver(f):
        raise LanguageError(f"{operation} requires an intuitionistic formula (no [] or V): {render(f)}")


def require_bimodal(f: Formula, operation: str) -> None:
    if has_k(f):
        raise LanguageError(f"{operation} requires a classical bimodal formula (no K): {render(f)}")


def require_propositional(f: Formula, operation: str) -> None:
    if has_k(f) or has_box_or_ver(f):
        raise LanguageError(f"{operation} requires a modality-free formula: {render(f)}")


# ---------------------------------------------------------------------------
# Parsing

class ParseError(ValueError):
    """Syntax error carrying the byte offset and the set of expected tokens."""

    def __init__(self, offset: int, expected: set[str], found: str):
        self.offset = offset
        self.expected = frozenset(expected)
        self.found = found
        wanted = ", ".join(sorted(expected))
        super().__init__(f"syntax error at byte {offset}: found {found}, expected one of: {wanted}")


_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "⊥": "false", "□": "[]"}

_TOK_NOT, _TOK_AND, _TOK_OR, _TOK_IMP, _TOK_IFF = "~", "&", "|", "->", "<->"
_TOK_K, _TOK_BOX, _TOK_VER = "K", "[]", "V"
_TOK_FALSE, _TOK_LP, _TOK_RP, _TOK_ATOM, _TOK_EOF = "false", "(", ")", "atom", "end of input"

_UNARY_STARTERS = {_TOK_NOT, _TOK_K, _TOK_BOX, _TOK_VER, _TOK_FALSE, _TOK_LP, _TOK_ATOM}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Lex into (kind, value, byte_offset) triples, ending with an EOF marker."""
    out = []
    i = 0
    n = len(text)
    byte_of = [0]
    for ch in text:
        byte_of.append(byte_of[-1] + len(ch.encode("utf-8")))
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        off = byte_of[i]
        if ch in _ALIASES:
            alias = _ALIASES[ch]
            kind = _TOK_FALSE if alias == "false" else alias
            out.append((kind, alias, off))
            i += 1
            continue
        if ch == "~":
            out.append((_TOK_NOT, ch, off)); i += 1
        elif ch == "&":
            out.append((_TOK_AND, ch, off)); i += 1
        elif ch == "|":
            out.append((_TOK_OR, ch, off)); i += 1
        elif ch == "(":
            out.append((_TOK_LP, ch, off)); i += 1
        elif ch == ")":
            out.append((_TOK_RP, ch, off)); i += 1
        elif ch == "K":
            out.append((_TOK_K, ch, off)); i += 1
        elif ch == "V":
            out.append((_TOK_VER, ch, off)); i += 1
        elif text.startswith("[]", i):
            out.append((_TOK_BOX, "[]", off)); i += 2
        elif text.startswith("<->", i):
            out.append((_TOK_IFF, "<->", off)); i += 3
        elif text.startswith("->", i):
            out.append((_TOK_IMP, "->", off)); i += 2
        elif "a" <= ch <= "z":
            j = i + 1
            while j < n and (text[j].islower() or text[j].isdigit() or text[j] == "_") and text[j].isascii():
                j += 1
            word = text[i:j]
            out.append((_TOK_FALSE if word == "false" else _TOK_ATOM, word, off))
            i = j
        else:
            raise ParseError(off, _UNARY_STARTERS, repr(ch))
    out.append((_TOK_EOF, "", byte_of[n]))
    return out


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> str:
        return self.toks[self.pos][0]

    def advance(self) -> tuple[str, str, int]:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: set[str]):
        kind, value, off = self.toks[self.pos]
        found = _TOK_EOF if kind == _TOK_EOF else repr(value)
        raise ParseError(off, expected, found)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == _TOK_IMP:
            self.advance()
            return Imp(left, self.formula())
        if self.peek() == _TOK_IFF:
            self.advance()
            right = self.disjunction()
            return iff(left, right)
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == _TOK_OR:
            self.advance()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == _TOK_AND:
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, _ = self.toks[self.pos]
        if kind == _TOK_NOT:
            self.advance()
            return neg(self.unary())
        if kind == _TOK_K:
            self.advance()
            return K(self.unary())
        if kind == _TOK_BOX:
            self.advance()
            return Box(self.unary())
        if kind == _TOK_VER:
            self.advance()
            return Ver(self.unary())
        if kind == _TOK_FALSE:
            self.advance()
            return FALSE
        if kind == _TOK_ATOM:
            self.advance()
            return Atom(value)
        if kind == _TOK_LP:
            self.advance()
            f = self.formula()
            if self.peek() != _TOK_RP:
                self.fail({_TOK_RP, _TOK_AND, _TOK_OR, _TOK_IMP, _TOK_IFF})
            self.advance()
            return f
        self.fail(set(_UNARY_STARTERS))


def parse(text: str) -> Formula:
    """Parse concrete syntax into the unique AST under the declared precedence.

    Mixed K and []/V formulas are accepted here; sublanguage checks happen
    at the operations that care.
    """
    parser = _Parser(_tokenize(text))
    f = parser.formula()
    if parser.peek() != _TOK_EOF:
        parser.fail({_TOK_EOF})
    return f


# ---------------------------------------------------------------------------
# Printing
#
# Precedence levels: -> is 0, | is 1, & is 2, unary is 3, atoms 4.
# A child is parenthesized iff its level is below what its position requires.

def _level(f: Formula) -> int:
    if isinstance(f, (Atom, Bottom)):
        return 4
    if isinstance(f, Imp):
        return 3 if f.right == FALSE else 0
    if isinstance(f, Or):
        return 1
    if isinstance(f, And):
        return 2
    return 3  # K, Box, Ver


def _render(f: Formula, min_level: int) -> str:
    if isinstance(f, Atom):
        s = f.name
    elif isinstance(f, Bottom):
        s = "false"
    elif isinstance(f, Imp) and f.right == FALSE:
        s = "~" + _render(f.left, 3)
    elif isinstance(f, Imp):
        s = _render(f.left, 1) + " -> " + _render(f.right, 0)
    elif isinstance(f, Or):
        s = _render(f.left, 1) + " | " + _render(f.right, 2)
    elif isinstance(f, And):
        s = _render(f.left, 2) + " & " + _render(f.right, 3)
    elif isinstance(f, K):
        body = _render(f.body, 3)
        s = "K" + ("" if body.startswith("(") else " ") + body
    elif isinstance(f, Box):
        s = "[]" + _render(f.body, 3)
    elif isinstance(f, Ver):
        s = "V" + _render(f.body, 3)
    else:
        raise TypeError(f"not a formula: {f!r}")
    if _level(f) < min_level:
        return "(" + s + ")"
    return s


def render(f: Formula) -> str:
    """Print with minimal parentheses; parse(render(f)) == f."""
    return _render(f, 0)


# ---------------------------------------------------------------------------
# Translations

def godel_translate(f: Formula) -> Formula:
    """Box every subformula; K A becomes []V applied to the translation of A."""
    require_intuitionistic(f, "godel_translate")

    def tr(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return Box(g)
        if isinstance(g, Bottom):
            return g
        if isinstance(g, And):
            return Box(And(tr(g.left), tr(g.right)))
        if isinstance(g, Or):
            return Box(Or(tr(g.left), tr(g.right)))
        if isinstance(g, Imp):
            return Box(Imp(tr(g.left), tr(g.right)))
        return Box(Ver(tr(g.body)))  # K

    return tr(f)


def glivenko_translate(f: Formula) -> Formula:
    """Double negation: A becomes ~~A."""
    return neg(neg(f))


def kolmogorov_translate(f: Formula) -> Formula:
    """Double-negate every subformula, uniformly including K-subformulas."""
    require_intuitionistic(f, "kolmogorov_translate")

    def tr(g: Formula) -> Formula:
        if isinstance(g, Atom) or isinstance(g, Bottom):
            return neg(neg(g))
        if isinstance(g, And):
            return neg(neg(And(tr(g.left), tr(g.right))))
        if isinstance(g, Or):
            return neg(neg(Or(tr(g.left), tr(g.right))))
        if isinstance(g, Imp):
            return neg(neg(Imp(tr(g.left), tr(g.right))))
        return neg(neg(K(tr(g.body))))  # K

    return tr(f)
