"""Frame morphisms: p-morphism verification, generated subframes, and the
two point-duplication ("repairing") constructions that replace a second
relation containing inequality by genuine inequality.
"""

from __future__ import annotations

from typing import Mapping

from .errors import BadParameter, NotPointGenerated, UnknownPoint
from .kripke import INEQUALITY, Frame, is_diff_pointgen

PointMap = dict[str, str]


def _relation_pair(src: Frame, dst: Frame):
    yield src.R, dst.R
    yield src.d_materialized() or frozenset(), dst.d_materialized() or frozenset()


def check_pmorphism(src: Frame, dst: Frame, f: Mapping[str, str]) -> bool:
    """Is f a p-morphism from src onto dst?

    Checks, for both relations: forth (edges map to edges), back (every
    edge out of an image point lifts), and surjectivity.  A missing D is
    treated as the empty relation.
    """
    if set(f.keys()) != set(src.points):
        raise ValueError("map must be total on the source points")
    if not set(f.values()) <= set(dst.points):
        raise ValueError("map image must lie inside the target points")
    if set(f.values()) != set(dst.points):
        return False
    for rel_s, rel_d in _relation_pair(src, dst):
        succ_s: dict[str, set[str]] = {x: set() for x in src.points}
        for x, y in rel_s:
            succ_s[x].add(y)
        for x, y in rel_s:
            if (f[x], f[y]) not in rel_d:
                return False
        for x in src.points:
            fx = f[x]
            for z in (b for a, b in rel_d if a == fx):
                if not any(f[y] == z for y in succ_s[x]):
                    return False
    return True


def generated_subframe(fr: Frame, x: str) -> Frame:
    """Restriction of fr to the points reachable from x along R or D."""
    if x not in fr.points:
        raise UnknownPoint(x)
    reached = {x}
    queue = [x]
    while queue:
        y = queue.pop()
        successors = list(fr.r_successors(y))
        if fr.D is not None:
            successors.extend(fr.d_successors(y))
        for z in successors:
            if z not in reached:
                reached.add(z)
                queue.append(z)
    points = tuple(p for p in fr.points if p in reached)
    r = frozenset(p for p in fr.R if p[0] in reached and p[1] in reached)
    if fr.D is None:
        d = None
    elif fr.D == INEQUALITY and len(points) == len(fr.points):
        d = INEQUALITY
    else:
        d = frozenset(
            p for p in fr.d_materialized() if p[0] in reached and p[1] in reached
        )
    return Frame(points, r, d)


def _d_loops(fr: Frame) -> set[str]:
    if fr.D == INEQUALITY or fr.D is None:
        return set()
    return {x for x, y in fr.D if x == y}


def repair(fr: Frame) -> tuple[Frame, PointMap]:
    """Duplicate each D-reflexive point once, producing a frame whose
    second relation is genuine inequality; copies (x,i) relate under S
    exactly when their originals relate under R.  The projection
    (x,i) -> x is a p-morphism onto the input.
    """
    if not is_diff_pointgen(fr):
        raise NotPointGenerated("second relation must contain inequality")
    loops = _d_loops(fr)
    copies = {x: ([0, 1] if x in loops else [0]) for x in fr.points}
    return _build_repaired(fr, copies, irreflexive=False)


def repair_irreflexive(fr: Frame, k: int) -> tuple[Frame, PointMap]:
    """Variant of `repair` with an irreflexive S: D-reflexive points get
    k extra copies and a copy never relates to itself, so an R-reflexive
    point with a D-loop turns into a clique on k+1 copies.
    """
    if k < 1:
        raise BadParameter("k must be at least 1")
    if not is_diff_pointgen(fr):
        raise NotPointGenerated("second relation must contain inequality")
    loops = _d_loops(fr)
    copies = {x: (list(range(k + 1)) if x in loops else [0]) for x in fr.points}
    return _build_repaired(fr, copies, irreflexive=True)


def _build_repaired(
    fr: Frame, copies: dict[str, list[int]], irreflexive: bool
) -> tuple[Frame, PointMap]:
    def name(x: str, i: int) -> str:
        return f"({x},{i})"

    points = [name(x, 0) for x in fr.points]
    points += [name(x, i) for x in fr.points for i in copies[x] if i > 0]
    mapping = {name(x, i): x for x in fr.points for i in copies[x]}
    s = set()
    for x, y in fr.R:
        for i in copies[x]:
            for j in copies[y]:
                if irreflexive and name(x, i) == name(y, j):
                    continue
                s.add((name(x, i), name(y, j)))
    return Frame(tuple(points), frozenset(s), INEQUALITY), mapping
