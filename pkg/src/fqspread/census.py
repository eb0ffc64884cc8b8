"""Exhaustive counting engines: spreads, distances, lines, occurrences,
projection collisions, isotropic-triple search, and the sphere
spread/distance equivalence check.

Triple and pair sweeps run on dense field lookup tables (one code path for
prime and extension fields).  Sweeps are partitioned into per-apex chunks
merged associatively, so results never depend on the worker count; a scalar
reference kernel backs fields too large for tables and doubles as the test
oracle for the vectorized path.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import ff, geom
from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    InternalError,
    TooFewPoints,
)
from .geom import PointSet, Vec

DEFAULT_TRIPLE_BUDGET = 10**9
DEFAULT_PAIR_BUDGET = 10**9
DEFAULT_ENUM_BUDGET = 10**8


@dataclass(frozen=True)
class SpreadCensus:
    defined_values: tuple[int, ...]  # sorted
    defined_count: int
    undefined_triples: int
    triples_scanned: int


@dataclass(frozen=True)
class DistanceCensus:
    values: tuple[int, ...]  # sorted, over unordered pairs
    nonzero_values: tuple[int, ...]
    pairs_scanned: int


@dataclass(frozen=True)
class LineCensus:
    lines: int
    max_degree: int
    pairs_scanned: int


@dataclass(frozen=True)
class Projection:
    field: ff.Field
    rows: tuple[Vec, ...]  # k rows of length d, rank k

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return len(self.rows[0])

    def apply(self, v: Vec) -> Vec:
        return geom.mat_vec(self.field, self.rows, v)


@dataclass(frozen=True)
class EquivReport:
    quadruples_checked: int
    excluded: int
    violations: tuple[tuple[Vec, Vec, Vec, Vec], ...]


# -- spread sweeps -----------------------------------------------------------


def distinct_spreads(
    ps: PointSet, budget: int = DEFAULT_TRIPLE_BUDGET, workers: int = 1
) -> SpreadCensus:
    """Census over all ordered triples (a, b, c) of distinct points with apex
    a: the set of defined spread values plus the undefined-triple tally."""
    n = len(ps)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    if n**3 > budget:
        raise BudgetExceeded(f"n^3 = {n ** 3} exceeds budget {budget}")
    seen, undef = _sweep(ps, workers, _apex_spread_chunk, gamma=None)
    values = tuple(int(v) for v in np.nonzero(seen)[0])
    return SpreadCensus(
        defined_values=values,
        defined_count=len(values),
        undefined_triples=undef,
        triples_scanned=n * (n - 1) * (n - 2),
    )


def spread_occurrences(
    ps: PointSet, gamma: int, budget: int = DEFAULT_TRIPLE_BUDGET, workers: int = 1
) -> int:
    """Number of ordered triples of distinct points whose spread is gamma."""
    n = len(ps)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    if n**3 > budget:
        raise BudgetExceeded(f"n^3 = {n ** 3} exceeds budget {budget}")
    count, _ = _sweep(ps, workers, _apex_spread_chunk, gamma=gamma)
    return count


def _sweep(ps: PointSet, workers: int, chunk_fn, **kw):
    q = ps.field.q
    use_tables = q <= ff.TABLE_CAP
    apexes = range(len(ps))
    if workers <= 1:
        return chunk_fn(ps, apexes, use_tables, **kw)
    chunks = _split(apexes, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: chunk_fn(ps, c, use_tables, **kw), chunks))
    acc, extra = parts[0]
    for a, e in parts[1:]:
        acc = acc | a if isinstance(acc, np.ndarray) else acc + a
        extra += e
    return acc, extra


def _split(rng: range, k: int) -> list[range]:
    n = len(rng)
    k = max(1, min(k, n))
    step = (n + k - 1) // k
    return [rng[i : i + step] for i in range(0, n, step)]


def _apex_spread_chunk(ps: PointSet, apexes, use_tables: bool, gamma: Optional[int]):
    """One apex range of the triple sweep.

    Returns (seen-values bool array, undefined count) when gamma is None,
    else (occurrence count, 0).
    """
    fd = ps.field
    if not use_tables:
        return _apex_spread_chunk_scalar(ps, apexes, gamma)
    tb = fd.tables()
    pts = ps.as_array()
    n = len(ps)
    seen = np.zeros(fd.q, dtype=bool)
    count = 0
    undef = 0
    offdiag = ~np.eye(n - 1, dtype=bool)
    for ia in apexes:
        diff = np.delete(tb.sub[pts, pts[ia]], ia, axis=0)  # (n-1, d)
        nrm = np.zeros(n - 1, dtype=np.int32)
        gram = np.zeros((n - 1, n - 1), dtype=np.int32)
        for c in range(ps.dim):
            col = diff[:, c]
            nrm = tb.add[nrm, tb.mul[col, col]]
            gram = tb.add[gram, tb.mul[col[:, None], col[None, :]]]
        den = tb.mul[nrm[:, None], nrm[None, :]]
        defined = offdiag & (den != 0)
        undef += int(offdiag.sum() - defined.sum())
        val = tb.sub[1, tb.mul[tb.mul[gram, gram], tb.inv[den]]]
        if gamma is None:
            seen[np.unique(val[defined])] = True
        else:
            count += int(((val == gamma) & defined).sum())
    return (count, 0) if gamma is not None else (seen, undef)


def _apex_spread_chunk_scalar(ps: PointSet, apexes, gamma: Optional[int]):
    """Pure scalar reference sweep; exercised as the oracle in tests and used
    for fields beyond the table cap."""
    fd = ps.field
    pts = ps.points
    seen = np.zeros(fd.q, dtype=bool)
    count = 0
    undef = 0
    for ia in apexes:
        a = pts[ia]
        others = [p for i, p in enumerate(pts) if i != ia]
        arms = [geom.vsub(fd, p, a) for p in others]
        norms = [geom.norm(fd, v) for v in arms]
        for i, u in enumerate(arms):
            if norms[i] == 0:
                undef += len(arms) - 1
                continue
            for j, v in enumerate(arms):
                if i == j:
                    continue
                if norms[j] == 0:
                    undef += 1
                    continue
                duv = geom.dot(fd, u, v)
                s = fd.sub(1, fd.div(fd.mul(duv, duv), fd.mul(norms[i], norms[j])))
                if gamma is None:
                    seen[s] = True
                elif s == gamma:
                    count += 1
    return (count, 0) if gamma is not None else (seen, undef)


# -- distances ---------------------------------------------------------------


def distinct_distances(ps: PointSet) -> DistanceCensus:
    """Distances over unordered pairs of distinct points, reported both with
    and without the value 0 (conventions differ on whether 0 counts)."""
    n = len(ps)
    if n < 2:
        raise TooFewPoints(f"need at least 2 points, got {n}")
    fd = ps.field
    if fd.q <= ff.TABLE_CAP:
        tb = fd.tables()
        pts = ps.as_array()
        dmat = np.zeros((n, n), dtype=np.int32)
        for c in range(ps.dim):
            t = tb.sub[pts[:, c][:, None], pts[None, :, c]]
            dmat = tb.add[dmat, tb.mul[t, t]]
        iu = np.triu_indices(n, k=1)
        values = sorted(int(v) for v in np.unique(dmat[iu]))
    else:
        values = sorted(
            {geom.dist(fd, a, b) for a, b in itertools.combinations(ps.points, 2)}
        )
    return DistanceCensus(
        values=tuple(values),
        nonzero_values=tuple(v for v in values if v != 0),
        pairs_scanned=n * (n - 1) // 2,
    )


# -- spanned lines -------------------------------------------------------------


def spanned_lines(ps: PointSet, budget: int = DEFAULT_PAIR_BUDGET) -> LineCensus:
    """Distinct affine lines spanned by pairs of points, plus the largest
    number of spanned lines through any single point of the set."""
    n = len(ps)
    if n < 2:
        raise TooFewPoints(f"need at least 2 points, got {n}")
    if n * n > budget:
        raise BudgetExceeded(f"n^2 = {n * n} exceeds budget {budget}")
    fd = ps.field
    lines: set[geom.CanonLine] = set()
    degree: list[set[geom.CanonLine]] = [set() for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        ln = geom.line_through(fd, ps.points[i], ps.points[j])
        lines.add(ln)
        degree[i].add(ln)
        degree[j].add(ln)
    return LineCensus(
        lines=len(lines),
        max_degree=max(len(s) for s in degree),
        pairs_scanned=n * (n - 1) // 2,
    )


def total_affine_lines(q: int, d: int) -> int:
    """q^(d-1) * (q^d - 1) / (q - 1): every affine line of F_q^d."""
    return q ** (d - 1) * (q**d - 1) // (q - 1)


# -- random projections ----------------------------------------------------------


def random_projection(fd: ff.Field, d: int, k: int, seed: int) -> Projection:
    """Seeded uniform k x d matrix, rejection-sampled until it has rank k."""
    if not 1 <= k <= d:
        raise DimensionMismatch(f"need 1 <= k <= d, got k = {k}, d = {d}")
    rng = random.Random(seed)
    for _ in range(1000):
        rows = [tuple(rng.randrange(fd.q) for _ in range(d)) for _ in range(k)]
        if geom.rank(fd, rows) == k:
            return Projection(fd, tuple(rows))
    raise InternalError("rank-k sample not found in 1000 attempts")


def collision_count(ps: PointSet, proj: Projection) -> int:
    """Unordered pairs of points with equal images under the projection."""
    if proj.d != ps.dim:
        raise DimensionMismatch(
            f"projection expects dimension {proj.d}, point set has {ps.dim}"
        )
    buckets: dict[Vec, int] = {}
    for p in ps.points:
        img = proj.apply(p)
        buckets[img] = buckets.get(img, 0) + 1
    return sum(m * (m - 1) // 2 for m in buckets.values())


def image_size(ps: PointSet, proj: Projection) -> int:
    return len({proj.apply(p) for p in ps.points})


# -- isotropic triple search -------------------------------------------------------


def search_iso_triple(
    fd: ff.Field, d: int, budget: int = DEFAULT_ENUM_BUDGET
) -> Optional[list[Vec]]:
    """Exhaustive search for three mutually orthogonal, linearly independent
    isotropic vectors in F_q^d; None when no triple exists.

    Isotropy and orthogonality are scale-invariant, so the scan runs over one
    representative per projective class (first nonzero coordinate 1) and
    returns the lexicographically first triple of representatives.
    Independence is re-verified by a rank check: the sum of two orthogonal
    isotropic vectors is again orthogonal isotropic, so pairwise
    non-proportionality is not enough.
    """
    if fd.q**d > budget:
        raise BudgetExceeded(f"q^d = {fd.q ** d} exceeds budget {budget}")
    reps = _isotropic_reps(fd, d)
    m = len(reps)
    if m < 3:
        return None
    if m * m > budget:
        raise BudgetExceeded(
            f"pair scan over {m}^2 = {m * m} representatives exceeds budget {budget}"
        )
    orth_masks = _orthogonality_masks(fd, reps)
    for i in range(m):
        partners = orth_masks[i] & ~((1 << (i + 1)) - 1)
        while partners:
            low = partners & -partners
            partners ^= low
            j = low.bit_length() - 1
            cand = orth_masks[i] & orth_masks[j] & ~((1 << (j + 1)) - 1)
            while cand:
                lowk = cand & -cand
                cand ^= lowk
                k = lowk.bit_length() - 1
                if geom.rank(fd, [reps[i], reps[j], reps[k]]) == 3:
                    return [reps[i], reps[j], reps[k]]
    return None


def _isotropic_reps(fd: ff.Field, d: int) -> list[Vec]:
    """Nonzero isotropic vectors with first nonzero coordinate 1, in
    lexicographic order."""
    q = fd.q
    if q > ff.TABLE_CAP:
        out = []
        for v in itertools.product(fd.elements(), repeat=d):
            nz = next((i for i, x in enumerate(v) if x), None)
            if nz is not None and v[nz] == 1 and geom.norm(fd, v) == 0:
                out.append(v)
        return out
    tb = fd.tables()
    out = []
    chunk = 1 << 18
    for lo in range(0, q**d, chunk):
        idx = np.arange(lo, min(q**d, lo + chunk), dtype=np.int64)
        coords = np.empty((len(idx), d), dtype=np.int32)
        rest = idx
        for c in range(d - 1, -1, -1):
            coords[:, c] = rest % q
            rest = rest // q
        nrm = np.zeros(len(idx), dtype=np.int32)
        for c in range(d):
            nrm = tb.add[nrm, tb.mul[coords[:, c], coords[:, c]]]
        nonzero = (coords != 0).any(axis=1)
        first_nz = (coords != 0).argmax(axis=1)
        lead_one = coords[np.arange(len(idx)), first_nz] == 1
        keep = nonzero & lead_one & (nrm == 0)
        out.extend(map(tuple, coords[keep].tolist()))
    return out


def _orthogonality_masks(fd: ff.Field, reps: list[Vec]) -> list[int]:
    """Per-representative bitmasks of orthogonal partners, computed in row
    blocks so memory stays proportional to block x m, not m x m."""
    m = len(reps)
    arr = np.array(reps, dtype=np.int32)
    use_tables = fd.q <= ff.TABLE_CAP
    tb = fd.tables() if use_tables else None
    masks: list[int] = []
    block = max(1, min(m, (1 << 22) // max(m, 1)))
    for lo in range(0, m, block):
        hi = min(m, lo + block)
        if use_tables:
            g = np.zeros((hi - lo, m), dtype=np.int32)
            for c in range(arr.shape[1]):
                g = tb.add[g, tb.mul[arr[lo:hi, c][:, None], arr[None, :, c]]]
        else:
            g = np.array(
                [[geom.dot(fd, u, v) for v in reps] for u in reps[lo:hi]],
                dtype=np.int32,
            )
        for row in g == 0:
            bits = np.packbits(row, bitorder="little").tobytes()
            masks.append(int.from_bytes(bits, "little"))
    return masks


# -- sphere spread/distance equivalence ----------------------------------------------


def sphere_equiv_check(
    fd: ff.Field, d: int, budget: int = DEFAULT_ENUM_BUDGET, max_violations: int = 50
) -> EquivReport:
    """Exhaustively test, over quadruples (a, b, c, e) on the unit sphere with
    both origin-apex spreads defined, that spread(0,a,b) = spread(0,c,e) holds
    exactly when |a-b| = |c-e| or |a-b| = |c+e|."""
    sph = geom.sphere_points(fd, d, 1, budget=budget)
    m = len(sph)
    if m**4 > budget:
        raise BudgetExceeded(f"|S1|^4 = {m ** 4} exceeds budget {budget}")
    tb = fd.tables()
    pts = sph.as_array()
    nrm = np.zeros(m, dtype=np.int32)
    gram = np.zeros((m, m), dtype=np.int32)
    dmat = np.zeros((m, m), dtype=np.int32)
    smat = np.zeros((m, m), dtype=np.int32)
    for c in range(d):
        col = pts[:, c]
        nrm = tb.add[nrm, tb.mul[col, col]]
        gram = tb.add[gram, tb.mul[col[:, None], col[None, :]]]
        dcol = tb.sub[col[:, None], col[None, :]]
        dmat = tb.add[dmat, tb.mul[dcol, dcol]]
        scol = tb.add[col[:, None], col[None, :]]
        smat = tb.add[smat, tb.mul[scol, scol]]
    den = tb.mul[nrm[:, None], nrm[None, :]]
    defined = (den != 0).ravel()
    sval = tb.sub[1, tb.mul[tb.mul[gram, gram], tb.inv[den]]].ravel()
    dval = dmat.ravel()
    sumval = smat.ravel()

    eq_spread = sval[:, None] == sval[None, :]
    eq_rhs = (dval[:, None] == dval[None, :]) | (dval[:, None] == sumval[None, :])
    both = defined[:, None] & defined[None, :]
    bad = (eq_spread != eq_rhs) & both
    violations = []
    for flat1, flat2 in zip(*np.nonzero(bad)):
        if len(violations) >= max_violations:
            break
        a, b = divmod(int(flat1), m)
        c, e = divmod(int(flat2), m)
        violations.append((sph.points[a], sph.points[b], sph.points[c], sph.points[e]))
    return EquivReport(
        quadruples_checked=int(both.sum()),
        excluded=int(m**4 - both.sum()),
        violations=tuple(violations),
    )
