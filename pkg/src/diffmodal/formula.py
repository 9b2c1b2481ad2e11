"""Bimodal formulas over two modalities: a plain diamond `<>` and a
difference diamond `<!=>` read over a frame's second relation.

The stored AST uses five primitive constructors only (variables, falsum,
implication and the two diamonds).  Everything else -- negation,
conjunction, disjunction, verum, both boxes and the somewhere/everywhere
quantifiers -- is a macro that expands at construction or parse time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import BadParameter, ParseError


class Formula:
    """Base class; concrete nodes are Var, Bottom, Implies, Diamond, DiffDiamond."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    index: int


@dataclass(frozen=True, slots=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Diamond(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class DiffDiamond(Formula):
    child: Formula


BOT = Bottom()
TOP = Implies(BOT, BOT)


# --- derived connectives (macro expanders) ---

def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def conj(a: Formula, b: Formula) -> Formula:
    return Implies(Implies(a, Implies(b, BOT)), BOT)


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(Implies(a, BOT), b)


def box(f: Formula) -> Formula:
    return neg(Diamond(neg(f)))


def diff_box(f: Formula) -> Formula:
    return neg(DiffDiamond(neg(f)))


def somewhere(f: Formula) -> Formula:
    """`E f`: holds somewhere, assuming the second relation covers inequality."""
    return disj(DiffDiamond(f), f)


def everywhere(f: Formula) -> Formula:
    """`A f`: holds at every point, dual of `somewhere`."""
    return conj(diff_box(f), f)


def big_conj(fs: Sequence[Formula]) -> Formula:
    """Right-folded conjunction; empty -> T, singleton -> the formula itself."""
    fs = list(fs)
    if not fs:
        return TOP
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = conj(g, out)
    return out


def big_disj(fs: Sequence[Formula]) -> Formula:
    """Right-folded disjunction; empty -> F, singleton -> the formula itself."""
    fs = list(fs)
    if not fs:
        return BOT
    out = fs[-1]
    for g in reversed(fs[:-1]):
        out = disj(g, out)
    return out


# --- structural queries ---

def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Implies):
        return (f.left, f.right)
    if isinstance(f, (Diamond, DiffDiamond)):
        return (f.child,)
    return ()


def subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of f, including f itself, deduplicated structurally."""
    seen: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        stack.extend(_children(g))
    return frozenset(seen)


def node_count(f: Formula) -> int:
    """Number of AST nodes counted with multiplicity."""
    total = 0
    stack = [f]
    while stack:
        g = stack.pop()
        total += 1
        stack.extend(_children(g))
    return total


def variables(f: Formula) -> frozenset[int]:
    return frozenset(g.index for g in subformulas(f) if isinstance(g, Var))


def modal_depth(f: Formula) -> int:
    if isinstance(f, (Diamond, DiffDiamond)):
        return 1 + modal_depth(f.child)
    if isinstance(f, Implies):
        return max(modal_depth(f.left), modal_depth(f.right))
    return 0


def substitute(f: Formula, s: Mapping[int, Formula]) -> Formula:
    """Simultaneous substitution; variables outside `s` stay fixed."""
    if isinstance(f, Var):
        return s.get(f.index, f)
    if isinstance(f, Implies):
        return Implies(substitute(f.left, s), substitute(f.right, s))
    if isinstance(f, Diamond):
        return Diamond(substitute(f.child, s))
    if isinstance(f, DiffDiamond):
        return DiffDiamond(substitute(f.child, s))
    return f


def formula_sort_key(f: Formula) -> str:
    """Total order on formulas: the canonical printed text.

    `print_formula` is injective (it round-trips through `parse`), so this
    is a genuine structural order, usable for deterministic iteration over
    formula sets.
    """
    return print_formula(f)


# --- printing ---

def print_formula(f: Formula) -> str:
    """Canonical fully-parenthesized text; `parse(print_formula(f)) == f`."""
    if isinstance(f, Var):
        return f"p{f.index}"
    if isinstance(f, Bottom):
        return "F"
    if isinstance(f, Implies):
        return f"({print_formula(f.left)} -> {print_formula(f.right)})"
    if isinstance(f, Diamond):
        return f"<>{print_formula(f.child)}"
    if isinstance(f, DiffDiamond):
        return f"<!=>{print_formula(f.child)}"
    raise TypeError(f"not a formula: {f!r}")


# --- parsing ---
#
# Tokens: p<digits>, F, T, ~, &, |, ->, <>, [], <!=>, [!=], E, A, parentheses.
# Precedence, tightest first: unary prefixes, &, |, ->;  -> is
# right-associative, & and | associate to the left.

_TOKEN_RE = re.compile(r"\s+|p\d+|<!=>|\[!=\]|<>|\[\]|->|[~&|()EFTA]")

_UNARY = {
    "~": neg,
    "<>": Diamond,
    "[]": box,
    "<!=>": DiffDiamond,
    "[!=]": diff_box,
    "E": somewhere,
    "A": everywhere,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", pos + 1)
            if not m.group().isspace():
                self.tokens.append((m.group(), pos + 1))
            pos = m.end()
        self.eof = len(text) + 1
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def here(self) -> int:
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.eof

    def take(self) -> str:
        tok = self.peek()
        self.i += 1
        return tok

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.peek() == "|":
            self.take()
            out = disj(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = conj(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in _UNARY:
            self.take()
            return _UNARY[tok](self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.eof)
        if tok.startswith("p"):
            self.take()
            return Var(int(tok[1:]))
        if tok == "F":
            self.take()
            return BOT
        if tok == "T":
            self.take()
            return TOP
        if tok == "(":
            self.take()
            f = self.implication()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.here())
            self.take()
            return f
        raise ParseError(f"unexpected token {tok!r}", self.here())


def parse(text: str) -> Formula:
    """Parse formula text into the primitive AST, expanding all macros."""
    p = _Parser(text)
    f = p.implication()
    if p.peek() is not None:
        raise ParseError(f"unexpected token {p.peek()!r}", p.here())
    return f


# --- named axioms ---

AXIOM_NAMES = (
    "CF",
    "CON",
    "CON_DIRECTED",
    "DIFF_SYM",
    "DIFF_PSEUDOTRANS",
    "DIFF_INCL",
    "B",
    "IRR_INCL",
    "SERIAL",
)


def axiom(name: str, k: int | None = None) -> Formula:
    """Build a named axiom.

    `CF` (requires k >= 1) is valid on a difference frame exactly when the
    underlying relation admits no proper partition into at most k blocks;
    `CON` characterises connectedness on symmetric difference frames, and
    `CON_DIRECTED` is its directed variant.  `DIFF_SYM`,
    `DIFF_PSEUDOTRANS` and `DIFF_INCL` are the frame conditions tying the
    second relation to inequality, `B` is symmetry of the first relation,
    `IRR_INCL` ties the first relation into the second, and `SERIAL` says
    every point has a successor.
    """
    key = name.upper().replace("-", "_")
    p0 = Var(0)
    if key == "CF":
        if k is None or k < 1:
            raise BadParameter("CF requires k >= 1")
        ps = [Var(i) for i in range(k)]
        premise = big_disj(
            [big_conj([ps[i]] + [neg(ps[j]) for j in range(k) if j != i]) for i in range(k)]
        )
        conclusion = big_disj([conj(ps[i], Diamond(ps[i])) for i in range(k)])
        return Implies(everywhere(premise), somewhere(conclusion))
    if key == "CON":
        return Implies(
            conj(somewhere(p0), somewhere(neg(p0))),
            somewhere(conj(p0, Diamond(neg(p0)))),
        )
    if key == "CON_DIRECTED":
        return Implies(
            conj(somewhere(p0), somewhere(neg(p0))),
            disj(
                somewhere(conj(p0, Diamond(neg(p0)))),
                somewhere(conj(neg(p0), Diamond(p0))),
            ),
        )
    if key == "DIFF_SYM":
        return Implies(p0, diff_box(DiffDiamond(p0)))
    if key == "DIFF_PSEUDOTRANS":
        return Implies(DiffDiamond(DiffDiamond(p0)), somewhere(p0))
    if key == "DIFF_INCL":
        return Implies(Diamond(p0), somewhere(p0))
    if key == "B":
        return Implies(p0, box(Diamond(p0)))
    if key == "IRR_INCL":
        return Implies(Diamond(p0), DiffDiamond(p0))
    if key == "SERIAL":
        return Diamond(TOP)
    raise BadParameter(f"unknown axiom {name!r}")


def sub_closure(formulas: Iterable[Formula]) -> frozenset[Formula]:
    """Close a set of formulas under subformulas."""
    out: set[Formula] = set()
    for f in formulas:
        out |= subformulas(f)
    return frozenset(out)


def is_sub_closed(formulas: Iterable[Formula]) -> bool:
    fs = frozenset(formulas)
    return all(subformulas(f) <= fs for f in fs)
