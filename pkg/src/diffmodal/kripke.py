"""Finite frames and models for the bimodal language.

A frame carries a point list, a first relation R, and a second relation D
that is either an explicit pair set, the marker ``INEQUALITY`` (never
expanded into storage), or absent for plain unimodal graphs.

`check` is a direct recursion over the truth clauses and serves as the
reference semantics.  The frame-level sweeps (`frame_valid`,
`frame_satisfiable`, `scheme_true`) enumerate valuations as bit masks and
are vectorised with numpy; they are still exhaustive enumeration, only
batched.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import CapacityExceeded, UnknownPoint
from .formula import (
    Bottom,
    Diamond,
    DiffDiamond,
    Formula,
    Implies,
    Var,
    neg,
    variables,
)

INEQUALITY = "inequality"

DEFAULT_VALUATION_CAP = 24       # frame_valid enumerates 2**(points * vars)
DEFAULT_ALGEBRA_CAP = 4096       # definable-set closure size
DEFAULT_SCHEME_CAP = 1 << 20     # assignments swept by scheme_true

Pair = tuple[str, str]


def _pairset(pairs: Iterable[Pair]) -> frozenset[Pair]:
    return frozenset((str(x), str(y)) for x, y in pairs)


@dataclass(frozen=True)
class Frame:
    """Finite frame (points, R, D); D may be INEQUALITY, explicit, or None."""

    points: tuple[str, ...]
    R: frozenset[Pair] = frozenset()
    D: frozenset[Pair] | str | None = None

    def __post_init__(self):
        pts = tuple(str(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "R", _pairset(self.R))
        if self.D is not None and self.D != INEQUALITY:
            object.__setattr__(self, "D", _pairset(self.D))
        if not pts:
            raise ValueError("frame needs a non-empty point set")
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate point ids")
        universe = set(pts)
        for x, y in self.R:
            if x not in universe or y not in universe:
                raise ValueError(f"relation R mentions unknown point ({x!r}, {y!r})")
        if isinstance(self.D, frozenset):
            for x, y in self.D:
                if x not in universe or y not in universe:
                    raise ValueError(f"relation D mentions unknown point ({x!r}, {y!r})")

    def r_successors(self, x: str) -> Iterator[str]:
        return (b for a, b in self.R if a == x)

    def d_successors(self, x: str) -> Iterator[str]:
        if self.D is None:
            raise ValueError("frame has no second relation")
        if self.D == INEQUALITY:
            return (y for y in self.points if y != x)
        return (b for a, b in self.D if a == x)

    def d_materialized(self) -> frozenset[Pair] | None:
        """Explicit pair set for D; expands the INEQUALITY marker."""
        if self.D is None:
            return None
        if self.D == INEQUALITY:
            return frozenset(
                (x, y) for x in self.points for y in self.points if x != y
            )
        return self.D


@dataclass
class Model:
    """Frame plus a valuation; absent variables denote the empty set."""

    frame: Frame
    valuation: dict[int, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        universe = set(self.frame.points)
        cleaned: dict[int, frozenset[str]] = {}
        for v, pts in self.valuation.items():
            pts = frozenset(str(p) for p in pts)
            if not pts <= universe:
                raise ValueError(f"valuation of p{v} mentions unknown points")
            cleaned[int(v)] = pts
        self.valuation = cleaned

    def holds(self, v: int, x: str) -> bool:
        return x in self.valuation.get(v, frozenset())


# --- reference truth recursion ---

def check(m: Model, x: str, f: Formula) -> bool:
    """Truth of f at point x in m, by structural recursion over the clauses."""
    if x not in m.frame.points:
        raise UnknownPoint(x)
    return _check(m, x, f)


def _check(m: Model, x: str, f: Formula) -> bool:
    if isinstance(f, Var):
        return m.holds(f.index, x)
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Implies):
        return (not _check(m, x, f.left)) or _check(m, x, f.right)
    if isinstance(f, Diamond):
        return any(_check(m, y, f.child) for y in m.frame.r_successors(x))
    if isinstance(f, DiffDiamond):
        return any(_check(m, y, f.child) for y in m.frame.d_successors(x))
    raise TypeError(f"not a formula: {f!r}")


def model_true(m: Model, f: Formula) -> bool:
    """True in the model: true at every point."""
    return all(_check(m, x, f) for x in m.frame.points)


# --- compiled evaluation over bit-mask extensions ---
#
# A formula compiles to a flat program over deduplicated subformulas; each
# slot evaluates to the extension of its subformula, a bit mask over the
# frame's point list.  One numpy evaluation handles a whole batch of
# valuations at once.

_TABLE_LIMIT = 13     # precompute full diamond tables up to 2**13 masks
_CHUNK = 1 << 14      # valuations per numpy batch


@lru_cache(maxsize=256)
def _compile(f: Formula) -> tuple[tuple, ...]:
    table: dict[tuple, int] = {}
    prog: list[tuple] = []

    def slot(g: Formula) -> int:
        if isinstance(g, Var):
            key = ("var", g.index)
        elif isinstance(g, Bottom):
            key = ("bot",)
        elif isinstance(g, Implies):
            key = ("imp", slot(g.left), slot(g.right))
        elif isinstance(g, Diamond):
            key = ("dia", slot(g.child))
        elif isinstance(g, DiffDiamond):
            key = ("difdia", slot(g.child))
        else:
            raise TypeError(f"not a formula: {g!r}")
        if key not in table:
            table[key] = len(prog)
            prog.append(key)
        return table[key]

    slot(f)
    return tuple(prog)


class _Engine:
    """Per-frame successor masks and (lazy) diamond lookup tables."""

    def __init__(self, frame: Frame):
        self.frame = frame
        pts = frame.points
        self.n = n = len(pts)
        self.full = (1 << n) - 1
        index = {p: i for i, p in enumerate(pts)}
        rsucc = [0] * n
        for x, y in frame.R:
            rsucc[index[x]] |= 1 << index[y]
        self.rsucc = rsucc
        if frame.D is None:
            self.dsucc = None
        elif frame.D == INEQUALITY:
            self.dsucc = [self.full ^ (1 << i) for i in range(n)]
        else:
            dsucc = [0] * n
            for x, y in frame.D:
                dsucc[index[x]] |= 1 << index[y]
            self.dsucc = dsucc
        self._tables: dict[str, np.ndarray | None] = {}

    def mask_of(self, pts: Iterable[str]) -> int:
        index = {p: i for i, p in enumerate(self.frame.points)}
        out = 0
        for p in pts:
            out |= 1 << index[p]
        return out

    def points_of(self, mask: int) -> frozenset[str]:
        return frozenset(
            p for i, p in enumerate(self.frame.points) if mask >> i & 1
        )

    def _succ(self, which: str) -> list[int]:
        if which == "dia":
            return self.rsucc
        if self.dsucc is None:
            raise ValueError("frame has no second relation")
        return self.dsucc

    def preimage(self, which: str, mask: int) -> int:
        """Scalar diamond: points with a successor inside `mask`."""
        succ = self._succ(which)
        out = 0
        for i in range(self.n):
            if succ[i] & mask:
                out |= 1 << i
        return out

    def batch_preimage(self, which: str, masks: np.ndarray) -> np.ndarray:
        succ = self._succ(which)
        if self.n <= _TABLE_LIMIT:
            if which not in self._tables:
                size = 1 << self.n
                tbl = np.zeros(size, dtype=np.uint32)
                all_masks = np.arange(size, dtype=np.uint32)
                for i in range(self.n):
                    tbl[(all_masks & np.uint32(succ[i])) != 0] |= np.uint32(1 << i)
                self._tables[which] = tbl
            return self._tables[which][masks]
        out = np.zeros(len(masks), dtype=np.uint32)
        for i in range(self.n):
            out |= ((masks & np.uint32(succ[i])) != 0).astype(np.uint32) << np.uint32(i)
        return out


@lru_cache(maxsize=64)
def _engine(frame: Frame) -> _Engine:
    return _Engine(frame)


def _sweep_satisfiable(
    frame: Frame,
    f: Formula,
    candidates: list[int] | None,
) -> tuple[dict[int, frozenset[str]], str] | None:
    """First (valuation, point) making f true, scanning assignments of f's
    variables in lexicographic order.

    `candidates` restricts each variable to the given masks (in order);
    None enumerates all subsets of the point set per variable.
    """
    eng = _engine(frame)
    prog = _compile(f)
    vars_ = sorted(variables(f))
    m = len(vars_)
    radix = (1 << eng.n) if candidates is None else len(candidates)
    total = radix ** m
    if total == 0:
        return None
    cand_arr = None if candidates is None else np.asarray(candidates, dtype=np.uint32)
    full = np.uint32(eng.full)

    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        combos = np.arange(lo, hi, dtype=np.uint64)
        var_arrays: dict[int, np.ndarray] = {}
        for j, v in enumerate(vars_):
            stride = radix ** (m - 1 - j)
            digits = (combos // np.uint64(stride)) % np.uint64(radix)
            digits = digits.astype(np.uint32)
            var_arrays[v] = digits if cand_arr is None else cand_arr[digits]
        zeros = np.zeros(len(combos), dtype=np.uint32)
        slots: list[np.ndarray] = []
        for op in prog:
            tag = op[0]
            if tag == "var":
                arr = var_arrays.get(op[1], zeros)
            elif tag == "bot":
                arr = zeros
            elif tag == "imp":
                arr = (slots[op[1]] ^ full) | slots[op[2]]
            elif tag == "dia":
                arr = eng.batch_preimage("dia", slots[op[1]])
            else:
                arr = eng.batch_preimage("difdia", slots[op[1]])
            slots.append(arr)
        ext = slots[-1]
        hits = np.flatnonzero(ext)
        if hits.size:
            local = int(hits[0])
            combo = lo + local
            valuation: dict[int, frozenset[str]] = {}
            for j, v in enumerate(vars_):
                digit = (combo // radix ** (m - 1 - j)) % radix
                mask = digit if cand_arr is None else candidates[digit]
                valuation[v] = eng.points_of(mask)
            point = min(eng.points_of(int(ext[local])))
            return valuation, point
    return None


# --- frame-level operations ---

def frame_satisfiable(
    frame: Frame, f: Formula, cap: int = DEFAULT_VALUATION_CAP
) -> tuple[dict[int, frozenset[str]], str] | None:
    """Least witness (valuation, point) where f holds, or None.

    Witnesses are deterministic: valuations are ordered lexicographically
    as tuples of subset bit masks (variables ascending), and the point is
    the least satisfying point-id.
    """
    m = len(variables(f))
    budget = len(frame.points) * m
    if budget > cap:
        raise CapacityExceeded(budget, cap)
    return _sweep_satisfiable(frame, f, None)


def frame_valid(frame: Frame, f: Formula, cap: int = DEFAULT_VALUATION_CAP) -> bool:
    """Validity in the frame: true under every valuation of f's variables."""
    return frame_satisfiable(frame, neg(f), cap) is None


def diff_expand(frame: Frame) -> Frame:
    """Expand a unimodal graph with the inequality relation as its D."""
    if frame.D is not None:
        raise ValueError("frame already has a second relation")
    return Frame(frame.points, frame.R, INEQUALITY)


def is_diff_pointgen(frame: Frame) -> bool:
    """Does D contain every off-diagonal pair?"""
    if frame.D == INEQUALITY:
        return True
    d = frame.d_materialized() or frozenset()
    return all(
        (x, y) in d
        for x in frame.points
        for y in frame.points
        if x != y
    )


# --- definable sets and scheme validity ---

def _algebra_masks(m: Model, vars_: Iterable[int], cap: int) -> list[int]:
    eng = _engine(m.frame)
    masks = {0}
    for v in vars_:
        masks.add(eng.mask_of(m.valuation.get(v, frozenset())))
    has_d = m.frame.D is not None
    while True:
        new = set()
        for a in masks:
            new.add(eng.full ^ a)
            new.add(eng.preimage("dia", a))
            if has_d:
                new.add(eng.preimage("difdia", a))
        for a, b in itertools.combinations(masks, 2):
            new.add(a & b)
        if new <= masks:
            return sorted(masks)
        masks |= new
        if len(masks) > cap:
            raise CapacityExceeded(len(masks), cap)


def definable_algebra(
    m: Model, vars_: Iterable[int], cap: int = DEFAULT_ALGEBRA_CAP
) -> frozenset[frozenset[str]]:
    """Least family containing the given variables' values and the empty
    set, closed under complement, intersection and both diamond preimages.

    On a finite model these are exactly the point sets definable by a
    formula over the given variables.
    """
    eng = _engine(m.frame)
    return frozenset(eng.points_of(a) for a in _algebra_masks(m, vars_, cap))


def scheme_true(
    m: Model,
    f: Formula,
    cap: int = DEFAULT_SCHEME_CAP,
    algebra_cap: int = DEFAULT_ALGEBRA_CAP,
) -> bool:
    """Truth in m of every substitution instance of f.

    Equivalent, on finite models, to sweeping assignments of f's variables
    over the algebra of definable sets: each definable set is the value of
    some formula and conversely.
    """
    algebra = _algebra_masks(m, m.valuation.keys(), algebra_cap)
    count = len(algebra) ** len(variables(f))
    if count > cap:
        raise CapacityExceeded(count, cap)
    return _sweep_satisfiable(m.frame, neg(f), algebra) is None
