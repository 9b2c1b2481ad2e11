"""Bounded countermodel search over classes of finite difference frames.

Each preset names a class of frames (points, R, inequality); a formula is
searched for a refuting frame of growing size.  A refutation is always
sound and comes with a re-checkable frame, valuation and point; absence
of one up to the size bound is reported as theorem-within-bound, flagged
exhaustive once the bound reaches 2**|subformulas|.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from .errors import BadParameter
from .formula import Formula, neg, node_count, subformulas, variables
from .graph import chromatic_number, frame_properties, is_connected
from .kripke import (
    DEFAULT_VALUATION_CAP,
    INEQUALITY,
    Frame,
    frame_satisfiable,
)

PRESET_IDS = ("KDIFF_CF", "KBDIFF_CF", "KBDIFF_CON", "KBDIFF_CF_CON", "HN_LOWER")

_NEEDS_K = {"KDIFF_CF": True, "KBDIFF_CF": True, "KBDIFF_CON": False, "KBDIFF_CF_CON": True}

_HN_NOTE = (
    "refutations are sound countermodels; theorem-within-bound is relative "
    "to this preset's frame-class semantics, whose completeness for the "
    "axiomatic presentation is assumed rather than verified"
)


@dataclass(frozen=True)
class LogicPreset:
    """A frame class over (points, R, inequality).

    KDIFF_CF: arbitrary R, no proper partition of size <= k.
    KBDIFF_CF: symmetric R, same chromatic constraint.
    KBDIFF_CON: symmetric R, connected.
    KBDIFF_CF_CON: symmetric R, connected, chromatic constraint.
    HN_LOWER: symmetric, irreflexive, connected, serial, chromatic > 4.
    """

    id: str
    k: int | None = None


def preset(pid: str, k: int | None = None) -> LogicPreset:
    key = pid.upper().replace("-", "_")
    if key == "HN_LOWER":
        if k is not None and k != 4:
            raise BadParameter("HN_LOWER fixes k = 4")
        return LogicPreset(key, 4)
    if key not in _NEEDS_K:
        raise BadParameter(f"unknown preset {pid!r}")
    if _NEEDS_K[key] and (k is None or k < 1):
        raise BadParameter(f"preset {key} requires k >= 1")
    if not _NEEDS_K[key] and k is not None:
        raise BadParameter(f"preset {key} takes no k")
    return LogicPreset(key, k)


@dataclass(frozen=True)
class Refuted:
    """The formula fails at `point` under `valuation` on `frame`, a member
    of the preset's class with `size` points."""

    frame: Frame
    valuation: dict[int, frozenset[str]]
    point: str
    size: int


@dataclass(frozen=True)
class TheoremWithinBound:
    """No countermodel up to `searched_to` points; `exhaustive` marks that
    the bound covers 2**sub_count, the size any countermodel must fit in.
    `sub_count` deduplicates subformulas, `node_count` does not."""

    searched_to: int
    exhaustive: bool
    sub_count: int | None = None
    node_count: int | None = None
    note: str | None = None


@dataclass(frozen=True)
class Unknown:
    searched_to: int
    reason: str


Verdict = Union[Refuted, TheoremWithinBound, Unknown]


def _pair_order(n: int, symmetric: bool, loops: bool) -> list[tuple[int, int]]:
    if symmetric:
        return [(i, j) for i in range(n) for j in range(i if loops else i + 1, n)]
    return [(i, j) for i in range(n) for j in range(n) if loops or i != j]


def _in_class(fr: Frame, p: LogicPreset) -> bool:
    if p.id in ("KBDIFF_CON", "KBDIFF_CF_CON", "HN_LOWER") and not is_connected(fr):
        return False
    if p.id == "HN_LOWER" and not frame_properties(fr).serial:
        return False
    if p.k is not None and not chromatic_number(fr) > p.k:
        return False
    return True


def frames_in_class(n: int, p: LogicPreset) -> Iterator[Frame]:
    """All class members with n points, in lexicographic order of their
    adjacency bit strings (first listed pair most significant)."""
    if n < 1:
        raise BadParameter("size must be at least 1")
    points = tuple(f"x{i}" for i in range(n))
    symmetric = p.id != "KDIFF_CF"
    loops = p.id != "HN_LOWER"
    pairs = _pair_order(n, symmetric, loops)
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        r = set()
        for bit, (i, j) in zip(bits, pairs):
            if bit:
                r.add((points[i], points[j]))
                if symmetric:
                    r.add((points[j], points[i]))
        fr = Frame(points, r, INEQUALITY)
        if _in_class(fr, p):
            yield fr


@lru_cache(maxsize=8)
def _perms(n: int):
    return tuple(itertools.permutations(range(n)))


def _canonical_key(fr: Frame):
    index = {p: i for i, p in enumerate(fr.points)}
    rel = [(index[x], index[y]) for x, y in fr.R]
    best = None
    for perm in _perms(len(fr.points)):
        key = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or key < best:
            best = key
    return best


def decide(
    f: Formula,
    p: LogicPreset,
    max_size: int,
    val_cap: int = DEFAULT_VALUATION_CAP,
    dedup_isomorphic: bool = True,
) -> Verdict:
    """Scan class frames of size 1..max_size for one refuting f.

    The verdict is deterministic: the witness is the first refuting frame
    in enumeration order with its least refuting valuation and point.
    Isomorphic duplicates are skipped from size 5 on; a frame's first
    occurrence is canonical, so skipping never changes the verdict.
    """
    if max_size < 1:
        raise BadParameter("max_size must be at least 1")
    nf = neg(f)
    m = len(variables(f))
    for size in range(1, max_size + 1):
        if size * m > val_cap:
            return Unknown(
                size - 1,
                f"valuation budget exceeded at size {size}: {size * m} > {val_cap}",
            )
        seen: set = set()
        for fr in frames_in_class(size, p):
            if dedup_isomorphic and size >= 5:
                key = _canonical_key(fr)
                if key in seen:
                    continue
                seen.add(key)
            witness = frame_satisfiable(fr, nf, val_cap)
            if witness is not None:
                valuation, point = witness
                return Refuted(fr, valuation, point, size)
    subs = len(subformulas(f))
    return TheoremWithinBound(
        searched_to=max_size,
        exhaustive=max_size >= 2 ** subs,
        sub_count=subs,
        node_count=node_count(f),
        note=_HN_NOTE if p.id == "HN_LOWER" else None,
    )
