"""Vectors over F_q^d with the quadratic form |x| = sum(x_i^2).

Points and vectors are plain tuples of field-element indices.  The "norm"
is not a metric: distinct points can sit at distance 0 (isotropic
differences), and the spread of a triple is undefined whenever one of its
arm norms vanishes.  Undefined is represented by ``None`` throughout and is
never coerced to 0.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import ff
from .errors import (
    BadArity,
    BudgetExceeded,
    DimensionMismatch,
    DuplicatePoint,
    FormatError,
    IdenticalPoints,
)

Vec = tuple[int, ...]
SpreadValue = Optional[int]  # None = undefined

DEFAULT_ENUM_BUDGET = 10**8


def format_spread(s: SpreadValue) -> str:
    return "Undefined" if s is None else f"Value({s})"


# -- elementwise vector helpers ------------------------------------------------


def vadd(fd: ff.Field, u: Vec, v: Vec) -> Vec:
    _check_dims(u, v)
    return tuple(fd.add(x, y) for x, y in zip(u, v))


def vsub(fd: ff.Field, u: Vec, v: Vec) -> Vec:
    _check_dims(u, v)
    return tuple(fd.sub(x, y) for x, y in zip(u, v))


def vscale(fd: ff.Field, c: int, v: Vec) -> Vec:
    return tuple(fd.mul(c, x) for x in v)


def dot(fd: ff.Field, u: Vec, v: Vec) -> int:
    _check_dims(u, v)
    acc = 0
    for x, y in zip(u, v):
        acc = fd.add(acc, fd.mul(x, y))
    return acc


def norm(fd: ff.Field, v: Vec) -> int:
    return dot(fd, v, v)


def dist(fd: ff.Field, x: Vec, y: Vec) -> int:
    return norm(fd, vsub(fd, x, y))


def _check_dims(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise DimensionMismatch(f"dimensions {len(u)} and {len(v)} differ")


# -- spreads -------------------------------------------------------------------


def spread(fd: ff.Field, apex: Vec, b: Vec, c: Vec) -> SpreadValue:
    """Spread of the arms b-apex and c-apex: 1 - (u.v)^2 / (|u||v|).

    Argument order is (apex, arm, arm) everywhere in this package.
    Returns None when either arm norm is 0, which covers b == apex and
    c == apex.
    """
    u = vsub(fd, b, apex)
    v = vsub(fd, c, apex)
    nu = norm(fd, u)
    nv = norm(fd, v)
    if nu == 0 or nv == 0:
        return None
    duv = dot(fd, u, v)
    return fd.sub(1, fd.div(fd.mul(duv, duv), fd.mul(nu, nv)))


def k_spread(fd: ff.Field, points: Sequence[Vec]) -> SpreadValue:
    """Order-k spread of k+1 points: det(V^T V) / prod |v_i| with
    v_i = points[i] - points[0] the columns of V.

    The k = 2 case agrees with spread() on every input, undefined cases
    included.  Requires 2 <= k <= d.
    """
    k = len(points) - 1
    if k < 2:
        raise BadArity(f"need at least 3 points, got {len(points)}")
    d = len(points[0])
    if k > d:
        raise BadArity(f"order {k} exceeds dimension {d}")
    arms = [vsub(fd, x, points[0]) for x in points[1:]]
    denom = 1
    for v in arms:
        nv = norm(fd, v)
        if nv == 0:
            return None
        denom = fd.mul(denom, nv)
    gram = [[dot(fd, u, v) for v in arms] for u in arms]
    return fd.div(det(fd, gram), denom)


def det(fd: ff.Field, m: Sequence[Sequence[int]]) -> int:
    """Determinant by Gaussian elimination over F_q, pivoting on the first
    nonzero entry of each column; exact (no rounding exists here)."""
    n = len(m)
    a = [list(row) for row in m]
    sign_flip = False
    prod = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign_flip = not sign_flip
        pivot = a[col][col]
        prod = fd.mul(prod, pivot)
        pinv = fd.inv(pivot)
        for i in range(col + 1, n):
            f = fd.mul(a[i][col], pinv)
            if f:
                a[i] = [fd.sub(x, fd.mul(f, y)) for x, y in zip(a[i], a[col])]
    return fd.neg(prod) if sign_flip else prod


def rank(fd: ff.Field, vectors: Sequence[Vec]) -> int:
    """Row rank by elimination."""
    if not vectors:
        return 0
    rows = [list(v) for v in vectors]
    d = len(rows[0])
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pinv = fd.inv(rows[r][col])
        rows[r] = [fd.mul(pinv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [fd.sub(x, fd.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


# -- canonical affine lines ------------------------------------------------------


class CanonLine(NamedTuple):
    """Canonical (base, direction) form of an affine line.

    direction's first nonzero coordinate is 1, at position j, and base_j = 0;
    two CanonLine values are equal exactly when the underlying point sets
    coincide.
    """

    base: Vec
    direction: Vec


def line_through(fd: ff.Field, p: Vec, q: Vec) -> CanonLine:
    _check_dims(p, q)
    d = vsub(fd, q, p)
    if all(x == 0 for x in d):
        raise IdenticalPoints("a line needs two distinct points")
    j = next(i for i, x in enumerate(d) if x != 0)
    direction = vscale(fd, fd.inv(d[j]), d)
    base = vsub(fd, p, vscale(fd, p[j], direction))
    return CanonLine(base, direction)


def line_points(fd: ff.Field, line: CanonLine) -> list[Vec]:
    return [vadd(fd, line.base, vscale(fd, t, line.direction)) for t in fd.elements()]


# -- point sets ------------------------------------------------------------------


class PointSet:
    """Ordered, duplicate-free collection of points sharing field and dimension."""

    __slots__ = ("field", "dim", "points", "_arr")

    def __init__(self, field: ff.Field, dim: int, points: Iterable[Vec]):
        pts = [tuple(p) for p in points]
        seen = set()
        for p in pts:
            if len(p) != dim:
                raise DimensionMismatch(f"point {p} does not have dimension {dim}")
            if any(not 0 <= x < field.q for x in p):
                raise FormatError(f"coordinate out of range in {p}")
            if p in seen:
                raise DuplicatePoint(f"duplicate point {p}")
            seen.add(p)
        self.field = field
        self.dim = dim
        self.points = tuple(pts)
        self._arr = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self.field == other.field
            and self.dim == other.dim
            and self.points == other.points
        )

    def __repr__(self) -> str:
        return f"PointSet(q={self.field.q}, d={self.dim}, n={len(self)})"

    def as_array(self) -> np.ndarray:
        if self._arr is None:
            self._arr = np.array(self.points, dtype=np.int32).reshape(len(self.points), self.dim)
        return self._arr

    # File format: first line "q=<int> d=<int>", then one point per line as
    # d comma-separated element indices.

    def dumps(self) -> str:
        lines = [f"q={self.field.q} d={self.dim}"]
        lines += [",".join(str(x) for x in p) for p in self.points]
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "PointSet":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise FormatError("empty point-set file")
        header = lines[0].split()
        try:
            fields = dict(part.split("=") for part in header)
            q = int(fields["q"])
            d = int(fields["d"])
        except (ValueError, KeyError):
            raise FormatError(f"bad header {lines[0]!r}") from None
        fd = ff.field_for_order(q)
        pts = []
        for ln in lines[1:]:
            try:
                p = tuple(int(x) for x in ln.split(","))
            except ValueError:
                raise FormatError(f"bad point line {ln!r}") from None
            pts.append(p)
        return cls(fd, d, pts)

    @classmethod
    def load(cls, path) -> "PointSet":
        return cls.loads(Path(path).read_text())


def all_points(fd: ff.Field, d: int, budget: int = DEFAULT_ENUM_BUDGET) -> PointSet:
    """All of F_q^d in lexicographic order."""
    if fd.q**d > budget:
        raise BudgetExceeded(f"q^d = {fd.q ** d} exceeds budget {budget}")
    return PointSet(fd, d, itertools.product(fd.elements(), repeat=d))


def sphere_points(
    fd: ff.Field, d: int, t: int, budget: int = DEFAULT_ENUM_BUDGET
) -> PointSet:
    """All x in F_q^d with |x| = t, enumerated in index order."""
    if fd.q**d > budget:
        raise BudgetExceeded(f"q^d = {fd.q ** d} exceeds budget {budget}")
    pts = [
        v
        for v in itertools.product(fd.elements(), repeat=d)
        if norm(fd, v) == t
    ]
    return PointSet(fd, d, pts)


# -- orthogonal matrices -----------------------------------------------------------

Matrix = tuple[Vec, ...]


def identity(fd: ff.Field, d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_mul(fd: ff.Field, a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(
            dot(fd, row, tuple(b[k][j] for k in range(len(b))))
            for j in range(len(b[0]))
        )
        for row in a
    )


def mat_vec(fd: ff.Field, m: Matrix, v: Vec) -> Vec:
    return tuple(dot(fd, row, v) for row in m)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def is_orthogonal(fd: ff.Field, m: Matrix) -> bool:
    return mat_mul(fd, transpose(m), m) == identity(fd, len(m))


def random_orthogonal(fd: ff.Field, d: int, seed: int) -> Matrix:
    """Product of d+2 reflections I - 2*v*v^T/|v| through seeded random
    non-isotropic vectors; always satisfies M^T M = I and is deterministic
    per seed.  Reflections generate the orthogonal group, so products give
    adequate coverage for invariance testing (no uniformity claim)."""
    rng = random.Random(seed)
    m = identity(fd, d)
    for _ in range(d + 2):
        while True:
            v = tuple(rng.randrange(fd.q) for _ in range(d))
            nv = norm(fd, v)
            if nv != 0:
                break
        scale = fd.mul(2, fd.inv(nv))
        refl = tuple(
            tuple(
                fd.sub(1 if i == j else 0, fd.mul(scale, fd.mul(v[i], v[j])))
                for j in range(d)
            )
            for i in range(d)
        )
        m = mat_mul(fd, refl, m)
    return m
