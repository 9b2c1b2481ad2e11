"""Finite quotients of models by agreement on a formula set, with the
minimal and largest admissible quotient relations, a verifier for
candidate quotients, and the truth-preservation check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import GammaNotSubClosed, GammaNotSubsetPsi
from .formula import Diamond, DiffDiamond, Formula, Var, formula_sort_key, is_sub_closed
from .kripke import Frame, Model, check

__all__ = [
    "FiltrationResult",
    "gamma_classes",
    "minimal_filtration",
    "largest_filtration",
    "verify_filtration",
    "check_filtration_lemma",
]


@dataclass
class FiltrationResult:
    """A quotient model, the point -> class map, and the formula sets that
    produced it (gamma drives the relation bounds, psi the equivalence)."""

    quotient_model: Model
    class_map: dict[str, str]
    gamma: frozenset[Formula]
    psi: frozenset[Formula]


def gamma_classes(m: Model, psi: Iterable[Formula]) -> dict[str, str]:
    """Partition points by agreement on every formula in psi; each class is
    named after its least member point-id."""
    psi = sorted(frozenset(psi), key=formula_sort_key)
    profiles: dict[tuple[bool, ...], list[str]] = {}
    for x in m.frame.points:
        profiles.setdefault(tuple(check(m, x, g) for g in psi), []).append(x)
    out: dict[str, str] = {}
    for members in profiles.values():
        cid = min(members)
        for x in members:
            out[x] = cid
    return out


def _validate(gamma: frozenset[Formula], psi: frozenset[Formula]) -> None:
    if not is_sub_closed(gamma):
        raise GammaNotSubClosed("gamma must be closed under subformulas")
    if not gamma <= psi:
        raise GammaNotSubsetPsi("gamma must be a subset of psi")


def _quotient_valuation(m: Model, cmap: Mapping[str, str]) -> dict[int, frozenset[str]]:
    return {
        v: frozenset(cmap[x] for x in pts)
        for v, pts in m.valuation.items()
    }


def _minimal_relation(pairs, cmap):
    return frozenset((cmap[x], cmap[y]) for x, y in pairs)


def _largest_relation(m, cmap, gamma, diamond_type):
    """Largest admissible lift: classes [x], [y] relate unless some boxed
    subformula witnesses otherwise.  Truth of tracked formulas is
    class-invariant once the equivalence refines agreement on gamma, so
    one member per class suffices."""
    tracked = [g for g in gamma if isinstance(g, diamond_type)]
    member: dict[str, str] = {}
    for x in sorted(cmap):
        member.setdefault(cmap[x], x)
    out = set()
    for a, xa in member.items():
        for b, xb in member.items():
            if all(
                check(m, xa, g)
                for g in tracked
                if check(m, xb, g.child)
            ):
                out.add((a, b))
    return frozenset(out)


def minimal_filtration(
    m: Model, gamma: Iterable[Formula], psi: Iterable[Formula] | None = None
) -> FiltrationResult:
    """Quotient by agreement on psi, with both relations lifted minimally:
    classes relate exactly when some pair of members does."""
    gamma = frozenset(gamma)
    psi = gamma if psi is None else frozenset(psi)
    _validate(gamma, psi)
    cmap = gamma_classes(m, psi)
    points = tuple(sorted(set(cmap.values())))
    r = _minimal_relation(m.frame.R, cmap)
    d_src = m.frame.d_materialized()
    d = None if d_src is None else _minimal_relation(d_src, cmap)
    qm = Model(Frame(points, r, d), _quotient_valuation(m, cmap))
    return FiltrationResult(qm, cmap, gamma, psi)


def largest_filtration(
    m: Model, gamma: Iterable[Formula], psi: Iterable[Formula] | None = None
) -> FiltrationResult:
    """Same quotient set and valuation as `minimal_filtration`, but with
    both relations as large as the boxed formulas in gamma allow."""
    gamma = frozenset(gamma)
    psi = gamma if psi is None else frozenset(psi)
    _validate(gamma, psi)
    cmap = gamma_classes(m, psi)
    points = tuple(sorted(set(cmap.values())))
    r = _largest_relation(m, cmap, gamma, Diamond)
    d = None if m.frame.D is None else _largest_relation(m, cmap, gamma, DiffDiamond)
    qm = Model(Frame(points, r, d), _quotient_valuation(m, cmap))
    return FiltrationResult(qm, cmap, gamma, psi)


def verify_filtration(m: Model, candidate: FiltrationResult) -> bool:
    """Check the three quotient conditions: the equivalence refines
    agreement on gamma, the quotient valuation matches on gamma's
    variables, and each quotient relation sits between the minimal and the
    largest lift."""
    cmap = candidate.class_map
    if set(cmap.keys()) != set(m.frame.points):
        raise ValueError("class map must be total on the model's points")
    gamma = candidate.gamma
    qm = candidate.quotient_model
    if set(cmap.values()) != set(qm.frame.points):
        return False

    by_class: dict[str, list[str]] = {}
    for x, c in cmap.items():
        by_class.setdefault(c, []).append(x)
    gamma_sorted = sorted(gamma, key=formula_sort_key)
    for members in by_class.values():
        profile = [check(m, members[0], g) for g in gamma_sorted]
        if any(
            [check(m, x, g) for g in gamma_sorted] != profile for x in members[1:]
        ):
            return False

    for g in gamma:
        if isinstance(g, Var):
            for x in m.frame.points:
                if check(m, x, g) != check(qm, cmap[x], g):
                    return False

    lows = [_minimal_relation(m.frame.R, cmap)]
    highs = [_largest_relation(m, cmap, gamma, Diamond)]
    quotients = [qm.frame.R]
    d_src = m.frame.d_materialized()
    d_q = qm.frame.d_materialized()
    if (d_src is None) != (d_q is None):
        return False
    if d_src is not None:
        lows.append(_minimal_relation(d_src, cmap))
        highs.append(_largest_relation(m, cmap, gamma, DiffDiamond))
        quotients.append(d_q)
    return all(lo <= q <= hi for lo, q, hi in zip(lows, quotients, highs))


def check_filtration_lemma(m: Model, candidate: FiltrationResult) -> bool:
    """Truth preservation: every formula in gamma holds at a point exactly
    when it holds at the point's class in the quotient."""
    qm = candidate.quotient_model
    cmap = candidate.class_map
    return all(
        check(m, x, g) == check(qm, cmap[x], g)
        for x in m.frame.points
        for g in candidate.gamma
    )
