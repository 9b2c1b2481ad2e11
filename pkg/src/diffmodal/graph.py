"""Graph-theoretic oracles, independent of the modal machinery: proper
partitions, exact chromatic number (backtracking, plus an exhaustive
reference), connectivity, structural predicates and seeded random frames.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityExceeded, NotAPartition
from .kripke import Frame

INFINITE = math.inf

DEFAULT_CHROMATIC_CAP = 20
DEFAULT_EXHAUSTIVE_CAP = 8

Chromatic = int | float    # an exact count, or INFINITE when no proper partition exists


def _block_has_edge(fr: Frame, block: frozenset[str]) -> bool:
    return any(x in block and y in block for x, y in fr.R)


def is_proper(fr: Frame, blocks: Sequence[Iterable[str]]) -> bool:
    """Is this partition proper: no block contains x, y (possibly equal)
    with x R y?"""
    sets = [frozenset(str(p) for p in b) for b in blocks]
    if any(not b for b in sets):
        raise NotAPartition("empty block")
    total = 0
    union: set[str] = set()
    for b in sets:
        total += len(b)
        union |= b
    if total != len(union) or union != set(fr.points):
        raise NotAPartition("blocks must be disjoint and cover the point set")
    return not any(_block_has_edge(fr, b) for b in sets)


def _undirected_adjacency(fr: Frame) -> list[int]:
    """Loop-free symmetric closure of R as bit masks over the point list."""
    index = {p: i for i, p in enumerate(fr.points)}
    adj = [0] * len(fr.points)
    for x, y in fr.R:
        if x != y:
            adj[index[x]] |= 1 << index[y]
            adj[index[y]] |= 1 << index[x]
    return adj


def chromatic_number(fr: Frame, cap: int = DEFAULT_CHROMATIC_CAP) -> Chromatic:
    """Least size of a proper partition of (points, R); INFINITE when a
    point carries a loop (every partition then has a related pair).

    Direction of R does not matter: a block is bad as soon as it contains
    both ends of any pair, so the search runs on the symmetric closure.
    """
    n = len(fr.points)
    if n > cap:
        raise CapacityExceeded(n, cap)
    if any(x == y for x, y in fr.R):
        return INFINITE
    adj = _undirected_adjacency(fr)
    order = sorted(range(n), key=lambda i: (-bin(adj[i]).count("1"), i))

    def colorable(k: int) -> bool:
        colors = [-1] * n

        def place(pos: int, used: int) -> bool:
            if pos == n:
                return True
            v = order[pos]
            banned = {colors[u] for u in range(n) if adj[v] >> u & 1 and colors[u] >= 0}
            # allowing at most one fresh color breaks color-permutation symmetry
            for c in range(min(used + 1, k)):
                if c in banned:
                    continue
                colors[v] = c
                if place(pos + 1, max(used, c + 1)):
                    return True
            colors[v] = -1
            return False

        return place(0, 0)

    for k in range(1, n + 1):
        if colorable(k):
            return k
    return n


def _set_partitions(items: Sequence[str]) -> Iterator[list[frozenset[str]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in _set_partitions(rest):
        for i, block in enumerate(partial):
            yield partial[:i] + [block | {first}] + partial[i + 1:]
        yield partial + [frozenset([first])]


def chromatic_number_exhaustive(fr: Frame, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> Chromatic:
    """Reference oracle: enumerate every partition of the point set and
    take the least proper one.  Kept deliberately naive as a cross-check
    for the backtracking search."""
    n = len(fr.points)
    if n > cap:
        raise CapacityExceeded(n, cap)
    best = INFINITE
    for partition in _set_partitions(tuple(fr.points)):
        if len(partition) < best and not any(_block_has_edge(fr, b) for b in partition):
            best = len(partition)
    return best


def is_connected(fr: Frame) -> bool:
    """Connectivity of (points, R) along edges taken in either direction."""
    neighbours: dict[str, set[str]] = {p: set() for p in fr.points}
    for x, y in fr.R:
        neighbours[x].add(y)
        neighbours[y].add(x)
    seen = {fr.points[0]}
    queue = [fr.points[0]]
    while queue:
        x = queue.pop()
        for y in neighbours[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(fr.points)


@dataclass(frozen=True)
class FrameProperties:
    symmetric: bool
    irreflexive: bool
    serial: bool


def frame_properties(fr: Frame) -> FrameProperties:
    sources = {x for x, _ in fr.R}
    return FrameProperties(
        symmetric=all((y, x) in fr.R for x, y in fr.R),
        irreflexive=all(x != y for x, y in fr.R),
        serial=all(p in sources for p in fr.points),
    )


def random_graph(n: int, edge_prob: float, seed: int, directed: bool = False) -> Frame:
    """Seeded random loop-free frame on points x0..x{n-1}.

    Pairs are visited in a fixed order (i < j for undirected, row-major
    otherwise) and included independently with `edge_prob` using
    `random.Random(seed)`, so equal seeds give identical frames.
    """
    if n < 1:
        raise ValueError("need at least one point")
    rng = random.Random(seed)
    points = tuple(f"x{i}" for i in range(n))
    edges: set[tuple[str, str]] = set()
    if directed:
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < edge_prob:
                    edges.add((points[i], points[j]))
    else:
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < edge_prob:
                    edges.add((points[i], points[j]))
                    edges.add((points[j], points[i]))
    return Frame(points, edges, None)
