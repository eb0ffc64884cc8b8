"""Named, reproducible experiments with structured pass/fail reports.

Every experiment samples through ``random.Random`` instances seeded from
(master seed, trial index), so re-running with identical parameters
reproduces the per-trial records byte for byte.  Random subsets are drawn
by seeded shuffling of the lexicographic point enumeration and taking a
prefix.  Reports carry no timing fields: identical runs serialize to
identical JSON.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import census, construct, ff, geom
from .errors import SizeExceeded, SphereTooSmall
from .geom import PointSet


@dataclass
class ExperimentReport:
    name: str
    claim: str
    params: dict
    per_trial: list[dict]
    verdict: str  # "pass" | "fail"
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "claim": self.claim,
            "params": self.params,
            "per_trial": self.per_trial,
            "verdict": self.verdict,
        }
        if self.extras:
            out["extras"] = self.extras
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


def trial_seed(seed: int, index: int) -> int:
    """Deterministic per-trial sub-seed."""
    return seed * 1_000_003 + index


def sample_prefix(universe: Sequence, size: int, rng: random.Random) -> list:
    """Uniform subset without replacement: shuffle a copy, take a prefix."""
    pool = list(universe)
    rng.shuffle(pool)
    return pool[:size]


def alpha(eps: Fraction) -> Fraction:
    """Line-count constant eps^2 / (1 + eps + eps^2)."""
    eps = Fraction(eps)
    return eps * eps / (1 + eps + eps * eps)


def frac_ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def ceil_scaled_power(c: Fraction, q: int, d: int) -> int:
    """Exact ceil(c * q^(d/2)) without floating point, d odd allowed."""
    c = Fraction(c)
    if d % 2 == 0:
        return frac_ceil(c * q ** (d // 2))
    target = c * c * q**d
    n = math.isqrt(target.numerator // target.denominator)
    while n * n < target:
        n += 1
    return n


def _verdict(oks) -> str:
    return "pass" if all(oks) else "fail"


# -- experiments ---------------------------------------------------------------


def run_bode(
    fd: ff.Field,
    trials: int,
    seed: int,
    full_plane: bool = False,
    workers: int = 1,
) -> ExperimentReport:
    """Size-(2q-1) subsets of the plane: does each determine exactly q
    distinct spreads?  ``full_plane`` replaces sampling by one deterministic
    trial on all of F_q^2."""
    q = fd.q
    size = 2 * q - 1
    universe = geom.all_points(fd, 2).points
    per_trial = []
    if full_plane:
        subsets = [(0, list(universe))]
    else:
        subsets = [
            (t, sample_prefix(universe, size, random.Random(trial_seed(seed, t))))
            for t in range(trials)
        ]
    for t, pts in subsets:
        cen = census.distinct_spreads(PointSet(fd, 2, pts), workers=workers)
        per_trial.append(
            {
                "trial": t,
                "size": len(pts),
                "defined_count": cen.defined_count,
                "defined_values": list(cen.defined_values),
                "ok": cen.defined_count == q,
            }
        )
    return ExperimentReport(
        name="bode",
        claim="every subset of the plane with at least 2q-1 points determines exactly q distinct spreads",
        params={"field": fd.label(), "d": 2, "size": size, "trials": len(per_trial), "seed": seed, "full_plane": full_plane},
        per_trial=per_trial,
        verdict=_verdict(r["ok"] for r in per_trial),
    )


def run_threshold(
    fd: ff.Field,
    d: int,
    epsilon: Fraction,
    trials: int,
    seed: int,
    adversarial: bool = False,
    workers: int = 1,
) -> ExperimentReport:
    """Random sets of size ceil((1+eps) q^ceil(d/2)): the defined-spread count
    should clear the conservative floor floor(q/4).  Odd d goes through the
    embedding into d+1 with a trailing 0 coordinate.  Adversarial mode swaps
    in the extremal construction of the same dimension, which sits just below
    the size threshold and must show its sharp count instead."""
    epsilon = Fraction(epsilon)
    q = fd.q
    size = frac_ceil((1 + epsilon) * q ** ((d + 1) // 2))
    floor_count = q // 4
    per_trial = []
    if adversarial:
        ps = construct.con1_set(fd, d) if d % 2 == 0 else construct.con2_set(fd, d)
        cen = census.distinct_spreads(ps, workers=workers)
        limit = 0 if d % 2 == 0 else 1
        per_trial.append(
            {
                "trial": 0,
                "size": len(ps),
                "defined_count": cen.defined_count,
                "defined_values": list(cen.defined_values),
                "ok": cen.defined_count <= limit,
            }
        )
    else:
        if size > q**d:
            raise SizeExceeded(f"sample size {size} exceeds |F_q^d| = {q ** d}")
        universe = geom.all_points(fd, d).points
        for t in range(trials):
            pts = sample_prefix(universe, size, random.Random(trial_seed(seed, t)))
            if d % 2:
                ps = PointSet(fd, d + 1, [p + (0,) for p in pts])
            else:
                ps = PointSet(fd, d, pts)
            cen = census.distinct_spreads(ps, workers=workers)
            per_trial.append(
                {
                    "trial": t,
                    "size": size,
                    "defined_count": cen.defined_count,
                    "ok": cen.defined_count >= floor_count,
                }
            )
    return ExperimentReport(
        name="threshold",
        claim="sets of size (1+eps)*q^ceil(d/2) determine at least floor(q/4) distinct spreads",
        params={
            "field": fd.label(),
            "d": d,
            "epsilon": str(epsilon),
            "size": size,
            "trials": len(per_trial),
            "seed": seed,
            "floor": floor_count,
            "adversarial": adversarial,
        },
        per_trial=per_trial,
        verdict=_verdict(r["ok"] for r in per_trial),
    )


def run_beck(
    fd: ff.Field,
    d: int,
    epsilon: Fraction,
    trials: int,
    seed: int,
) -> ExperimentReport:
    """Random sets of size ceil((1+eps) q^(d-1)) must span at least
    alpha_eps * q^(2d-2) lines, with alpha_eps = eps^2/(1+eps+eps^2)."""
    epsilon = Fraction(epsilon)
    q = fd.q
    size = frac_ceil((1 + epsilon) * q ** (d - 1))
    if size > q**d:
        raise SizeExceeded(f"sample size {size} exceeds |F_q^d| = {q ** d}")
    bound = alpha(epsilon) * q ** (2 * d - 2)
    universe = geom.all_points(fd, d).points
    per_trial = []
    for t in range(trials):
        pts = sample_prefix(universe, size, random.Random(trial_seed(seed, t)))
        cen = census.spanned_lines(PointSet(fd, d, pts))
        per_trial.append(
            {
                "trial": t,
                "size": size,
                "lines": cen.lines,
                "max_degree": cen.max_degree,
                "ok": cen.lines >= bound,
            }
        )
    return ExperimentReport(
        name="beck",
        claim="sets of size (1+eps)*q^(d-1) span at least eps^2/(1+eps+eps^2) * q^(2d-2) lines",
        params={
            "field": fd.label(),
            "d": d,
            "epsilon": str(epsilon),
            "size": size,
            "trials": trials,
            "seed": seed,
            "line_bound": str(bound),
        },
        per_trial=per_trial,
        verdict=_verdict(r["ok"] for r in per_trial),
    )


def run_projection(
    fd: ff.Field,
    d: int,
    k: int,
    n_points: int,
    trials: int,
    seed: int,
    expect_zero: bool = False,
) -> ExperimentReport:
    """Fix one random n-point set, sample seeded rank-k projections, and check
    the empirical mean collision count against 1.2 * C(n,2) / q^k (20%
    statistical slack).  ``expect_zero`` additionally demands zero collisions
    in every single trial (the k = d control)."""
    q = fd.q
    universe = geom.all_points(fd, d).points
    pts = PointSet(fd, d, sample_prefix(universe, n_points, random.Random(seed)))
    bound = Fraction(6, 5) * math.comb(n_points, 2) * Fraction(1, q**k)
    per_trial = []
    best: Optional[dict] = None
    total = 0
    for t in range(trials):
        proj = census.random_projection(fd, d, k, trial_seed(seed, t))
        coll = census.collision_count(pts, proj)
        total += coll
        rec = {"trial": t, "collisions": coll, "ok": (coll == 0) if expect_zero else True}
        per_trial.append(rec)
        if best is None or coll < best["collisions"]:
            best = {
                "trial": t,
                "collisions": coll,
                "image_size": census.image_size(pts, proj),
            }
    mean = Fraction(total, trials)
    mean_ok = mean <= bound
    image_ok = best["image_size"] >= n_points - best["collisions"]
    oks = [mean_ok, image_ok] + [r["ok"] for r in per_trial]
    return ExperimentReport(
        name="projection",
        claim="mean collision count of seeded rank-k projections stays below 1.2 * C(n,2) / q^k, and the best image loses at most its collision count",
        params={
            "field": fd.label(),
            "d": d,
            "k": k,
            "n_points": n_points,
            "trials": trials,
            "seed": seed,
            "mean_bound": str(bound),
            "expect_zero": expect_zero,
        },
        per_trial=per_trial,
        verdict=_verdict(oks),
        extras={
            "mean_collisions": str(mean),
            "mean_ok": mean_ok,
            "min_collision_trial": best,
        },
    )


def run_constructions(fd: ff.Field, d: int, workers: int = 1) -> ExperimentReport:
    """Build the extremal set for (q, d) and verify its exact size and its
    sharp spread count: zero defined spreads for even d, at most one distinct
    defined spread for odd d."""
    q = fd.q
    if d % 2 == 0:
        ps = construct.con1_set(fd, d)
        expected_size = q ** (d // 2)
        kind, limit = "con1", 0
    else:
        ps = construct.con2_set(fd, d)
        expected_size = q ** ((d + 1) // 2)
        kind, limit = "con2", 1
    cen = census.distinct_spreads(ps, workers=workers)
    ok = len(ps) == expected_size and cen.defined_count <= limit
    per_trial = [
        {
            "trial": 0,
            "kind": kind,
            "n_points": len(ps),
            "expected_size": expected_size,
            "defined_count": cen.defined_count,
            "defined_values": list(cen.defined_values),
            "undefined_triples": cen.undefined_triples,
            "ok": ok,
        }
    ]
    return ExperimentReport(
        name="constructions",
        claim="the isotropic-span set has its exact extremal size and determines no spread (even d) or at most one (odd d)",
        params={"field": fd.label(), "d": d, "kind": kind},
        per_trial=per_trial,
        verdict=_verdict([ok]),
    )


def run_sphere_distance(
    fd: ff.Field,
    d: int,
    c: Fraction,
    trials: int,
    seed: int,
) -> ExperimentReport:
    """Random subsets of the unit sphere of size ceil(C q^(d/2)) must
    determine at least min(floor(q/2), floor(C q/4)) nonzero distances."""
    if d < 3:
        raise SphereTooSmall(f"needs d >= 3, got d = {d}")
    c = Fraction(c)
    q = fd.q
    sphere = geom.sphere_points(fd, d, 1)
    size = ceil_scaled_power(c, q, d)
    if size > len(sphere):
        raise SphereTooSmall(
            f"sample size {size} exceeds |S1| = {len(sphere)} in F_{q}^{d}"
        )
    threshold = min(q // 2, math.floor(c * q / 4))
    per_trial = []
    for t in range(trials):
        pts = sample_prefix(sphere.points, size, random.Random(trial_seed(seed, t)))
        cen = census.distinct_distances(PointSet(fd, d, pts))
        got = len(cen.nonzero_values)
        per_trial.append(
            {"trial": t, "size": size, "nonzero_distances": got, "ok": got >= threshold}
        )
    return ExperimentReport(
        name="sphere-distance",
        claim="unit-sphere subsets of size C*q^(d/2) determine at least min(q/2, C*q/4) nonzero distances",
        params={
            "field": fd.label(),
            "d": d,
            "C": str(c),
            "size": size,
            "trials": trials,
            "seed": seed,
            "threshold": threshold,
        },
        per_trial=per_trial,
        verdict=_verdict(r["ok"] for r in per_trial),
    )


def run_sphere_equiv(fd: ff.Field, d: int, budget: int = census.DEFAULT_ENUM_BUDGET) -> ExperimentReport:
    """Exhaustive biconditional check on the unit sphere: origin-apex spreads
    coincide exactly when the endpoint distance or anti-distance coincides."""
    rep = census.sphere_equiv_check(fd, d, budget=budget)
    ok = not rep.violations
    return ExperimentReport(
        name="sphere-equiv",
        claim="on the unit sphere, spread(0,a,b) = spread(0,c,e) holds exactly when |a-b| = |c-e| or |a-b| = |c+e|",
        params={"field": fd.label(), "d": d},
        per_trial=[
            {
                "trial": 0,
                "quadruples_checked": rep.quadruples_checked,
                "excluded": rep.excluded,
                "violations": len(rep.violations),
                "ok": ok,
            }
        ],
        verdict=_verdict([ok]),
    )


def run_iso_search(fd: ff.Field, d: int, expect_found: bool) -> ExperimentReport:
    """Exhaustive isotropic-triple search, asserted against the expected
    existence answer; any found family is re-verified against the three
    family invariants."""
    found = census.search_iso_triple(fd, d)
    family_ok = construct.is_isotropic_family(fd, found) if found else True
    ok = (found is not None) == expect_found and family_ok
    return ExperimentReport(
        name="iso-search",
        claim="exhaustive search settles whether three mutually orthogonal, independent isotropic vectors exist",
        params={"field": fd.label(), "d": d, "expect_found": expect_found},
        per_trial=[
            {
                "trial": 0,
                "found": found is not None,
                "vectors": [list(v) for v in found] if found else None,
                "family_ok": family_ok,
                "ok": ok,
            }
        ],
        verdict=_verdict([ok]),
    )


def run_properties(
    fd: ff.Field,
    cases: int,
    seed: int,
    dims: tuple[int, ...] = (2, 3),
    matrix_pool: int = 32,
) -> ExperimentReport:
    """Randomized spread laws: symmetry, scaling invariance, rigid-motion
    invariance, and agreement of the order-2 simplex spread with spread(),
    undefined cases included."""
    rng = random.Random(trial_seed(seed, fd.q))
    pools = {
        d: [
            geom.random_orthogonal(fd, d, trial_seed(seed, 1000 * d + i))
            for i in range(matrix_pool)
        ]
        for d in dims
    }
    fails = {"symmetry": 0, "scaling": 0, "rigid": 0, "k2": 0}
    examples: list[dict] = []

    def note(kind, a, b, c):
        fails[kind] += 1
        if len(examples) < 3:
            examples.append({"kind": kind, "a": list(a), "b": list(b), "c": list(c)})

    for i in range(cases):
        d = dims[i % len(dims)]
        a, b, c = (
            tuple(rng.randrange(fd.q) for _ in range(d)) for _ in range(3)
        )
        s = geom.spread(fd, a, b, c)
        if geom.spread(fd, a, c, b) != s:
            note("symmetry", a, b, c)
        r = rng.randrange(1, fd.q)
        t = rng.randrange(1, fd.q)
        b2 = geom.vadd(fd, a, geom.vscale(fd, r, geom.vsub(fd, b, a)))
        c2 = geom.vadd(fd, a, geom.vscale(fd, t, geom.vsub(fd, c, a)))
        if geom.spread(fd, a, b2, c2) != s:
            note("scaling", a, b, c)
        m = pools[d][rng.randrange(matrix_pool)]
        z = tuple(rng.randrange(fd.q) for _ in range(d))
        ma, mb, mc = (
            geom.vadd(fd, geom.mat_vec(fd, m, v), z) for v in (a, b, c)
        )
        if geom.spread(fd, ma, mb, mc) != s:
            note("rigid", a, b, c)
        if geom.k_spread(fd, [a, b, c]) != s:
            note("k2", a, b, c)
    total = sum(fails.values())
    return ExperimentReport(
        name="properties",
        claim="spread is symmetric, scaling-invariant, rigid-motion-invariant, and matches the order-2 simplex spread",
        params={"field": fd.label(), "cases": cases, "seed": seed, "dims": list(dims)},
        per_trial=[{"trial": 0, "failures": fails, "examples": examples, "ok": total == 0}],
        verdict=_verdict([total == 0]),
    )


# -- acceptance suite ------------------------------------------------------------

CONSTRUCTION_CASES = ((5, 2), (5, 4), (13, 2), (3, 4), (7, 4), (5, 3), (13, 3), (3, 5))
TWO_Q_FIELDS = ("3^1", "5^1", "7^1", "3^2")
ISO_SEARCH_CASES = ((3, 6, False), (5, 6, True), (3, 8, True))
LINE_FLOOR_FIELDS = (5, 7, 11)
SPHERE_EQUIV_CASES = ((5, 2), (7, 2), (5, 3), (7, 3))
PROPERTY_FIELDS = ("5^1", "7^1", "3^2", "13^1")
SPHERE_DISTANCE_FIELDS = (5, 7)


def suite_constructions(workers: int = 1) -> list[ExperimentReport]:
    return [
        run_constructions(ff.Field(q), d, workers=workers)
        for q, d in CONSTRUCTION_CASES
    ]


def suite_two_q_minus_one(seed: int = 0, trials: int = 100) -> list[ExperimentReport]:
    return [run_bode(ff.parse_field(s), trials, seed) for s in TWO_Q_FIELDS]


def suite_iso_search() -> list[ExperimentReport]:
    return [run_iso_search(ff.Field(p), d, expect) for p, d, expect in ISO_SEARCH_CASES]


def suite_line_floor(seed: int = 0, trials: int = 100) -> list[ExperimentReport]:
    out = []
    for q in LINE_FLOOR_FIELDS:
        fd = ff.Field(q)
        out.append(run_beck(fd, 2, Fraction(1), trials, seed))
        cen = census.spanned_lines(geom.all_points(fd, 2))
        expected = q * (q + 1)
        ok = cen.lines == expected
        out.append(
            ExperimentReport(
                name="plane-lines",
                claim="the full plane spans exactly q*(q+1) lines",
                params={"field": fd.label(), "d": 2},
                per_trial=[
                    {"trial": 0, "lines": cen.lines, "expected": expected, "ok": ok}
                ],
                verdict=_verdict([ok]),
            )
        )
    return out


def suite_projection(seed: int = 0, trials: int = 200) -> list[ExperimentReport]:
    fd = ff.Field(5)
    return [
        run_projection(fd, 4, 2, 25, trials, seed),
        run_projection(fd, 4, 4, 25, trials, seed, expect_zero=True),
    ]


def suite_sphere_equiv() -> list[ExperimentReport]:
    return [run_sphere_equiv(ff.Field(q), d) for q, d in SPHERE_EQUIV_CASES]


def suite_properties(seed: int = 0, cases: int = 10_000) -> list[ExperimentReport]:
    return [run_properties(ff.parse_field(s), cases, seed) for s in PROPERTY_FIELDS]


def suite_sphere_distance(seed: int = 0, trials: int = 20) -> list[ExperimentReport]:
    return [
        run_sphere_distance(ff.Field(q), 3, Fraction(2), trials, seed)
        for q in SPHERE_DISTANCE_FIELDS
    ]


def suite_reproducibility(seed: int = 0) -> ExperimentReport:
    fd3 = ff.Field(3)
    first = run_bode(fd3, 5, seed).to_json()
    second = run_bode(fd3, 5, seed).to_json()
    json_ok = first == second
    ps = construct.con2_set(ff.Field(5), 3)
    serial = census.distinct_spreads(ps, workers=1)
    threaded = census.distinct_spreads(ps, workers=3)
    census_ok = serial == threaded
    ok = json_ok and census_ok
    return ExperimentReport(
        name="reproducibility",
        claim="identical seeds give byte-identical reports; census results do not depend on worker count",
        params={"seed": seed},
        per_trial=[
            {"trial": 0, "json_identical": json_ok, "census_worker_independent": census_ok, "ok": ok}
        ],
        verdict=_verdict([ok]),
    )


def acceptance_suite(seed: int = 0) -> list[ExperimentReport]:
    """The full desk-scale verification battery, in a fixed order."""
    reports: list[ExperimentReport] = []
    reports += suite_constructions()
    reports += suite_two_q_minus_one(seed)
    reports += suite_iso_search()
    reports += suite_line_floor(seed)
    reports += suite_projection(seed)
    reports += suite_sphere_equiv()
    reports += suite_properties(seed)
    reports += suite_sphere_distance(seed)
    reports.append(suite_reproducibility(seed))
    return reports
