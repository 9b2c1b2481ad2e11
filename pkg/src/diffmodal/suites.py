"""Randomized property suites wiring the graph oracles against the modal
semantics.  Every suite is seeded and deterministic; each returns per-trial
records so the CLI can render a delimited report and summary figures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .filtration import (
    check_filtration_lemma,
    largest_filtration,
    minimal_filtration,
    verify_filtration,
)
from .formula import (
    BOT,
    Diamond,
    DiffDiamond,
    Formula,
    Implies,
    Var,
    axiom,
    conj,
    disj,
    neg,
    sub_closure,
)
from .graph import (
    chromatic_number,
    chromatic_number_exhaustive,
    frame_properties,
    is_connected,
    random_graph,
)
from .kripke import (
    Frame,
    INEQUALITY,
    Model,
    diff_expand,
    frame_valid,
    scheme_true,
)
from .morphism import check_pmorphism, repair, repair_irreflexive


@dataclass
class TrialRecord:
    suite: str
    trial: int
    size: int
    param: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: int
    elapsed_s: float
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _finish(name: str, records: list[TrialRecord], started: float, trials: int) -> SuiteResult:
    return SuiteResult(
        name=name,
        trials=trials,
        failures=sum(not r.ok for r in records),
        elapsed_s=time.monotonic() - started,
        records=records,
    )


# --- random instance generators ---

def random_formula(rng: random.Random, modal_budget: int, n_vars: int, depth: int = 4) -> Formula:
    """Small random formula; `modal_budget` bounds diamond nesting."""
    leafy = depth <= 0 or rng.random() < 0.25
    if leafy:
        return Var(rng.randrange(n_vars)) if rng.random() < 0.85 else BOT
    roll = rng.random()
    if roll < 0.25 and modal_budget > 0:
        return Diamond(random_formula(rng, modal_budget - 1, n_vars, depth - 1))
    if roll < 0.45 and modal_budget > 0:
        return DiffDiamond(random_formula(rng, modal_budget - 1, n_vars, depth - 1))
    if roll < 0.6:
        return neg(random_formula(rng, modal_budget, n_vars, depth - 1))
    a = random_formula(rng, modal_budget, n_vars, depth - 1)
    b = random_formula(rng, modal_budget, n_vars, depth - 1)
    if roll < 0.75:
        return Implies(a, b)
    if roll < 0.9:
        return conj(a, b)
    return disj(a, b)


def random_valuation(rng: random.Random, points, n_vars: int) -> dict[int, frozenset[str]]:
    return {
        v: frozenset(p for p in points if rng.random() < 0.5)
        for v in range(n_vars)
    }


def random_model(rng: random.Random, max_points: int, n_vars: int = 3) -> Model:
    """Random bimodal model; the second relation is sometimes the
    inequality marker, sometimes explicit (possibly with loops)."""
    n = rng.randint(1, max_points)
    base = random_graph(n, rng.uniform(0.2, 0.7), rng.getrandbits(32), directed=True)
    points = base.points
    r = set(base.R)
    for p in points:
        if rng.random() < 0.2:
            r.add((p, p))
    mode = rng.random()
    if mode < 0.4:
        d = INEQUALITY
    elif mode < 0.7:
        d = {(x, y) for x in points for y in points if x != y}
        d |= {(p, p) for p in points if rng.random() < 0.4}
    else:
        d = {
            (x, y)
            for x in points
            for y in points
            if rng.random() < 0.5
        }
    frame = Frame(points, r, d)
    return Model(frame, random_valuation(rng, points, n_vars))


def random_pointgen_frame(rng: random.Random, max_points: int) -> tuple[Frame, bool]:
    """Random frame whose D contains inequality, with injected D-loops.

    Every R-reflexive point also gets a D-loop, so both repairing
    constructions stay p-morphic.  Returns (frame, symmetric_flag).
    """
    n = rng.randint(1, max_points)
    symmetric = rng.random() < 0.5
    base = random_graph(n, rng.uniform(0.3, 0.8), rng.getrandbits(32), directed=not symmetric)
    r = set(base.R)
    if n > 1:
        for p in base.points:
            if rng.random() < 0.3:
                r.add((p, p))
    d = {(x, y) for x in base.points for y in base.points if x != y}
    d |= {(p, p) for p, q in r if p == q}
    for p in base.points:
        if n > 1 and rng.random() < 0.4:
            d.add((p, p))
    return Frame(base.points, r, d), symmetric


# --- suites ---

def run_chromatic_equivalence(trials: int = 200, seed: int = 1101) -> SuiteResult:
    """Validity of CF:k on a difference frame against the partition oracle,
    for k = 1..3, over random directed and undirected graphs."""
    started = time.monotonic()
    rng = random.Random(seed)
    cfs = {k: axiom("CF", k) for k in (1, 2, 3)}
    records = []
    for t in range(trials):
        n = rng.randint(1, 5)
        g = random_graph(n, rng.choice((0.2, 0.4, 0.6, 0.8)), rng.getrandbits(32),
                         directed=rng.random() < 0.5)
        dg = diff_expand(g)
        bad = []
        for k in (1, 2, 3):
            if frame_valid(dg, cfs[k]) != (chromatic_number(g) > k):
                bad.append(k)
        records.append(TrialRecord("chromatic-equivalence", t, n, "k=1..3",
                                   not bad, f"mismatch at k={bad}" if bad else ""))
    return _finish("chromatic-equivalence", records, started, trials)


def run_connectivity_equivalence(trials: int = 200, seed: int = 1102) -> SuiteResult:
    """Validity of CON on a symmetric difference frame against the
    reachability oracle."""
    started = time.monotonic()
    rng = random.Random(seed)
    con = axiom("CON")
    records = []
    for t in range(trials):
        n = rng.randint(1, 10)
        g = random_graph(n, rng.choice((0.1, 0.2, 0.35, 0.6)), rng.getrandbits(32))
        ok = frame_valid(diff_expand(g), con) == is_connected(g)
        records.append(TrialRecord("connectivity-equivalence", t, n, "", ok))
    return _finish("connectivity-equivalence", records, started, trials)


def run_filtration_lemma(trials: int = 100, seed: int = 1103) -> SuiteResult:
    """Minimal and largest quotients over Sub(f) preserve truth of every
    subformula, on random bimodal models."""
    started = time.monotonic()
    rng = random.Random(seed)
    records = []
    for t in range(trials):
        m = random_model(rng, max_points=8, n_vars=3)
        f = random_formula(rng, modal_budget=3, n_vars=3)
        gamma = sub_closure([f])
        ok = True
        detail = ""
        for kind, build in (("minimal", minimal_filtration), ("largest", largest_filtration)):
            res = build(m, gamma)
            if not verify_filtration(m, res):
                ok, detail = False, f"{kind} quotient fails the sandwich conditions"
                break
            if not check_filtration_lemma(m, res):
                ok, detail = False, f"{kind} quotient breaks truth preservation"
                break
        records.append(TrialRecord("filtration-lemma", t, len(m.frame.points), "", ok, detail))
    return _finish("filtration-lemma", records, started, trials)


def _sample_graph_with(rng, predicate, max_points, directed_ok=False, attempts=2000):
    for _ in range(attempts):
        n = rng.randint(1, max_points)
        g = random_graph(n, rng.choice((0.4, 0.6, 0.8, 0.95)), rng.getrandbits(32),
                         directed=directed_ok and rng.random() < 0.5)
        if predicate(g):
            return g
    raise RuntimeError("rejection sampling failed; widen the generator")


def run_filtration_chromatic(
    trials: int = 50, seed: int = 1104, gammas_per_model: int = 20
) -> SuiteResult:
    """On models whose frame validates CF:k as a scheme, every minimal (and
    largest) quotient keeps the chromatic number above k."""
    started = time.monotonic()
    rng = random.Random(seed)
    records = []
    for t in range(trials):
        k = rng.randint(1, 2)
        g = _sample_graph_with(rng, lambda g: chromatic_number(g) > k, 5, directed_ok=True)
        m = Model(diff_expand(g), random_valuation(rng, g.points, 3))
        cf = axiom("CF", k)
        ok = scheme_true(m, cf)
        detail = "" if ok else "scheme validity of CF failed on a frame with C > k"
        if ok:
            for _ in range(gammas_per_model):
                gamma = sub_closure(
                    [random_formula(rng, 2, 3), random_formula(rng, 2, 3)]
                )
                for build in (minimal_filtration, largest_filtration):
                    res = build(m, gamma)
                    if not chromatic_number(res.quotient_model.frame) > k:
                        ok = False
                        detail = f"quotient dropped to <= {k} colors"
                        break
                if not ok:
                    break
        records.append(TrialRecord("filtration-chromatic", t, len(g.points), f"k={k}", ok, detail))
    return _finish("filtration-chromatic", records, started, trials)


def run_filtration_connectivity(
    trials: int = 50, seed: int = 1105, gammas_per_model: int = 20
) -> SuiteResult:
    """On models over connected symmetric difference frames, every minimal
    quotient stays connected."""
    started = time.monotonic()
    rng = random.Random(seed)
    con = axiom("CON")
    records = []
    for t in range(trials):
        g = _sample_graph_with(rng, is_connected, 8)
        m = Model(diff_expand(g), random_valuation(rng, g.points, 3))
        ok = scheme_true(m, con)
        detail = "" if ok else "scheme validity of CON failed on a connected frame"
        if ok:
            for _ in range(gammas_per_model):
                gamma = sub_closure(
                    [random_formula(rng, 2, 3), random_formula(rng, 2, 3)]
                )
                res = minimal_filtration(m, gamma)
                if not is_connected(res.quotient_model.frame):
                    ok = False
                    detail = "minimal quotient disconnected"
                    break
        records.append(TrialRecord("filtration-connectivity", t, len(g.points), "", ok, detail))
    return _finish("filtration-connectivity", records, started, trials)


def run_repairing(trials: int = 50, seed: int = 1106) -> SuiteResult:
    """Both repairing constructions: projection is a p-morphism; symmetry,
    chromatic excess and connectivity carry over; the irreflexive variant
    is loop-free and turns R-reflexive points into (k+1)-cliques."""
    started = time.monotonic()
    rng = random.Random(seed)
    records = []
    for t in range(trials):
        fr, symmetric = random_pointgen_frame(rng, 5)
        k = rng.randint(1, 2)
        checks: list[tuple[str, bool]] = []

        rep, fmap = repair(fr)
        checks.append(("repair p-morphism", check_pmorphism(rep, fr, fmap)))
        if symmetric:
            checks.append(("symmetry preserved", frame_properties(rep).symmetric))
        if chromatic_number(fr) > k:
            checks.append(("chromatic excess preserved", chromatic_number(rep) > k))
        if is_connected(fr):
            checks.append(("connectivity preserved", is_connected(rep)))

        irr, imap = repair_irreflexive(fr, k)
        checks.append(("irreflexive output", frame_properties(irr).irreflexive))
        checks.append(("irreflexive p-morphism", check_pmorphism(irr, fr, imap)))
        for x in fr.points:
            if (x, x) in fr.R:
                copies = [q for q, src in imap.items() if src == x]
                clique = len(copies) == k + 1 and all(
                    (a, b) in irr.R for a in copies for b in copies if a != b
                )
                checks.append((f"clique at {x}", clique))
        if chromatic_number(fr) > k or any(x == y for x, y in fr.R):
            checks.append(("irreflexive chromatic excess", chromatic_number(irr) > k))

        failed = [name for name, good in checks if not good]
        records.append(TrialRecord("repairing", t, len(fr.points), f"k={k}",
                                   not failed, "; ".join(failed)))
    return _finish("repairing", records, started, trials)


def run_chromatic_oracles(trials: int = 500, seed: int = 1107) -> SuiteResult:
    """Backtracking chromatic number against exhaustive partition
    enumeration, including frames with loops."""
    started = time.monotonic()
    rng = random.Random(seed)
    records = []
    for t in range(trials):
        n = rng.randint(1, 6)
        g = random_graph(n, rng.uniform(0.0, 1.0), rng.getrandbits(32),
                         directed=rng.random() < 0.5)
        r = set(g.R)
        for p in g.points:
            if rng.random() < 0.15:
                r.add((p, p))
        fr = Frame(g.points, r)
        ok = chromatic_number(fr) == chromatic_number_exhaustive(fr)
        records.append(TrialRecord("chromatic-oracles", t, n, "", ok))
    return _finish("chromatic-oracles", records, started, trials)


SUITES = {
    "chromatic-equivalence": run_chromatic_equivalence,
    "connectivity-equivalence": run_connectivity_equivalence,
    "filtration-lemma": run_filtration_lemma,
    "filtration-chromatic": run_filtration_chromatic,
    "filtration-connectivity": run_filtration_connectivity,
    "repairing": run_repairing,
    "chromatic-oracles": run_chromatic_oracles,
}


def run_suite(name: str, trials: int | None = None, seed: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    kwargs = {}
    if trials is not None:
        kwargs["trials"] = trials
    if seed is not None:
        kwargs["seed"] = seed
    return SUITES[name](**kwargs)
