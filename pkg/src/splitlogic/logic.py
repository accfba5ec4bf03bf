"""Propositional formulas: AST, parser, printer and truth-table semantics.

Surface syntax, loosest binding first::

    <->   (non-associative)
    ->    (right-associative)
    |  &  (left-associative)
    !
    identifiers, T, F, ( ... )

Unicode connectives are accepted as aliases: ``¬ ∧ ∨ → ↔ ⊤ ⊥``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import FormulaSyntaxError, UnknownVariableError
from .language import Language
from .models import Assignment, ModelSet


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    arg: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff:
    left: Formula
    right: Formula


Formula = Union[Var, Const, Not, And, Or, Implies, Iff]

TOP = Const(True)
BOTTOM = Const(False)

_BINARY = (And, Or, Implies, Iff)


# -- lexer / parser --------------------------------------------------------

_ALIASES = {"¬": "!", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "⊤": "T", "⊥": "F"}
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|[!&|()])|(?P<uni>[¬∧∨→↔⊤⊥])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*))"
)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        tok = m.group(kind)
        tokens.append((_ALIASES.get(tok, tok), start))
        pos = m.end()
    tokens.append(("<end>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.tokens[self.i][0]

    def fail(self, expected: str):
        tok, pos = self.tokens[self.i]
        found = "end of input" if tok == "<end>" else repr(tok)
        raise FormulaSyntaxError(f"expected {expected}, found {found}", pos, self.text)

    def take(self, tok: str) -> bool:
        if self.tok == tok:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok == "<->":
            tok, pos = self.tokens[self.i]
            raise FormulaSyntaxError("'<->' is non-associative; parenthesize", pos, self.text)
        if self.tok != "<end>":
            self.fail("an operator or end of input")
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.take("<->"):
            return Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.take("->"):
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.take("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.take("&"):
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        if self.take("!"):
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if tok == "(":
            self.i += 1
            f = self.iff()
            if not self.take(")"):
                self.fail("')'")
            return f
        if tok == "T":
            self.i += 1
            return TOP
        if tok == "F":
            self.i += 1
            return BOTTOM
        if tok not in ("<end>", "!", "&", "|", "->", "<->", ")"):
            self.i += 1
            return Var(tok)
        self.fail("a variable, T, F, '!' or '('")


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula AST.

    >>> parse_formula("p & q | r")
    Or(left=And(left=Var(name='p'), right=Var(name='q')), right=Var(name='r'))
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty formula", 0, text)
    return _Parser(text).parse()


# -- printing --------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Var: 6, Const: 6}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def format_formula(f: Formula) -> str:
    """ASCII rendering with the fewest parentheses that re-parse to the same tree."""
    t = type(f)
    if t is Var:
        return f.name
    if t is Const:
        return "T" if f.value else "F"
    if t is Not:
        inner = format_formula(f.arg)
        return "!" + (inner if _PREC[type(f.arg)] >= 5 else f"({inner})")
    p = _PREC[t]
    lp, rp = _PREC[type(f.left)], _PREC[type(f.right)]
    if t is Implies:
        wrap_left, wrap_right = lp <= p, rp < p
    elif t is Iff:
        wrap_left, wrap_right = lp <= p, rp <= p
    else:
        wrap_left, wrap_right = lp < p, rp <= p
    left = format_formula(f.left)
    right = format_formula(f.right)
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right = f"({right})"
    return f"{left} {_SYMBOL[t]} {right}"


# -- semantics -------------------------------------------------------------

def _walk_vars(f: Formula, out: list[str]) -> None:
    stack = [f]
    while stack:
        g = stack.pop()
        t = type(g)
        if t is Var:
            out.append(g.name)
        elif t is Not:
            stack.append(g.arg)
        elif t in _BINARY:
            stack.append(g.right)
            stack.append(g.left)


def vars_of(f: Formula) -> frozenset[str]:
    out: list[str] = []
    _walk_vars(f, out)
    return frozenset(out)


def vars_in_order(formulas: Iterable[Formula]) -> list[str]:
    """Variable names in order of first occurrence, left to right."""
    seen: dict[str, None] = {}
    for f in formulas:
        out: list[str] = []
        _walk_vars(f, out)
        for name in out:
            seen.setdefault(name)
    return list(seen)


def check_vars(f: Formula, lang: Language) -> None:
    missing = sorted(vars_of(f) - set(lang.names))
    if missing:
        raise UnknownVariableError(
            f"formula {format_formula(f)!r} mentions {', '.join(missing)} outside {lang!r}"
        )


def evaluate(f: Formula, valuation: Mapping[str, bool] | Assignment) -> bool:
    if isinstance(valuation, Assignment):
        valuation = valuation.valuation()
    t = type(f)
    if t is Var:
        try:
            return bool(valuation[f.name])
        except KeyError:
            raise UnknownVariableError(f"no value for variable {f.name!r}") from None
    if t is Const:
        return f.value
    if t is Not:
        return not evaluate(f.arg, valuation)
    a = evaluate(f.left, valuation)
    if t is And:
        return a and evaluate(f.right, valuation)
    if t is Or:
        return a or evaluate(f.right, valuation)
    if t is Implies:
        return (not a) or evaluate(f.right, valuation)
    return a == evaluate(f.right, valuation)


def truth_table(f: Formula, lang: Language) -> np.ndarray:
    """Boolean vector over the whole cube of ``lang``, indexed by assignment code."""
    check_vars(f, lang)
    codes = np.arange(lang.cube_size, dtype=np.uint32)
    columns: dict[str, np.ndarray] = {}

    def column(name: str) -> np.ndarray:
        if name not in columns:
            shift = lang.size - 1 - lang.index(name)
            columns[name] = ((codes >> np.uint32(shift)) & np.uint32(1)).astype(bool)
        return columns[name]

    def ev(g: Formula) -> np.ndarray:
        t = type(g)
        if t is Var:
            return column(g.name)
        if t is Const:
            return np.full(lang.cube_size, g.value, dtype=bool)
        if t is Not:
            return ~ev(g.arg)
        a, b = ev(g.left), ev(g.right)
        if t is And:
            return a & b
        if t is Or:
            return a | b
        if t is Implies:
            return ~a | b
        return a == b

    return ev(f)


def models_of(f: Formula, lang: Language) -> ModelSet:
    """All assignments over ``lang`` satisfying ``f``, in canonical order."""
    table = truth_table(f, lang)
    return ModelSet._trusted(lang, tuple(int(c) for c in np.flatnonzero(table)))


def _conjoin(items: list[Formula]) -> Formula:
    f = items[0]
    for g in items[1:]:
        f = And(f, g)
    return f


def _disjoin(items: list[Formula]) -> Formula:
    f = items[0]
    for g in items[1:]:
        f = Or(f, g)
    return f


def formula_of_models(X: ModelSet) -> Formula:
    """DNF with one full conjunction of literals per member; ``F`` for the empty set."""
    lang = X.language
    if not X:
        return BOTTOM
    disjuncts = []
    for code in X.codes:
        literals = []
        for i, name in enumerate(lang.names):
            v = Var(name)
            literals.append(v if code & lang.bit(i) else Not(v))
        disjuncts.append(_conjoin(literals) if literals else TOP)
    return _disjoin(disjuncts)


def entails(f: Formula, g: Formula, lang: Language) -> bool:
    """Classical consequence over ``lang``: every model of ``f`` is a model of ``g``."""
    tf = truth_table(f, lang)
    tg = truth_table(g, lang)
    return not bool(np.any(tf & ~tg))


def equivalent(f: Formula, g: Formula, lang: Language) -> bool:
    return bool(np.array_equal(truth_table(f, lang), truth_table(g, lang)))
