import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqspread import errors, geom
from fqspread.ff import Field
from fqspread.geom import (
    CanonLine,
    PointSet,
    dist,
    dot,
    k_spread,
    line_through,
    norm,
    spread,
)

F3 = Field(3)
F5 = Field(5)
F7 = Field(7)
F9 = Field(3, 2)


def test_dot_examples():
    assert dot(F5, (1, 2), (3, 4)) == 1
    assert dot(F5, (0, 0), (4, 1)) == 0
    assert dot(F5, (1, 2), (1, 2)) == 0  # isotropic vector
    with pytest.raises(errors.DimensionMismatch):
        dot(F5, (1, 2), (1, 2, 3))


def test_norm_examples():
    assert norm(F5, (1, 2)) == 0
    assert norm(F5, (1, 0)) == 1
    assert norm(F3, (1, 1, 1)) == 0


def test_dist_examples():
    assert dist(F5, (3, 4), (3, 4)) == 0
    assert dist(F5, (0, 0), (1, 0)) == 1
    assert dist(F5, (0, 0), (1, 2)) == 0  # distinct points at distance 0


def test_spread_examples():
    assert spread(F5, (0, 0), (1, 0), (0, 1)) == 1
    assert spread(F5, (0, 0), (1, 1), (2, 2)) == 0
    assert spread(F5, (0, 0), (1, 2), (0, 1)) is None
    assert spread(F5, (0, 0), (0, 0), (0, 1)) is None  # b == apex


def test_spread_matches_brute_force_formula():
    # Independent check against the defining formula evaluated naively.
    rng = random.Random(3)
    for fd in (F5, F7, F9):
        for _ in range(300):
            a, b, c = (
                tuple(rng.randrange(fd.q) for _ in range(2)) for _ in range(3)
            )
            u = geom.vsub(fd, b, a)
            v = geom.vsub(fd, c, a)
            nu, nv = norm(fd, u), norm(fd, v)
            if nu == 0 or nv == 0:
                assert spread(fd, a, b, c) is None
            else:
                duv = dot(fd, u, v)
                expect = fd.sub(1, fd.mul(fd.mul(duv, duv), fd.inv(fd.mul(nu, nv))))
                assert spread(fd, a, b, c) == expect


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=6, max_size=6), st.integers(1, 4), st.integers(1, 4))
def test_spread_symmetry_and_scaling(coords, r, s):
    a, b, c = tuple(coords[0:2]), tuple(coords[2:4]), tuple(coords[4:6])
    val = spread(F5, a, b, c)
    assert spread(F5, a, c, b) == val
    b2 = geom.vadd(F5, a, geom.vscale(F5, r, geom.vsub(F5, b, a)))
    c2 = geom.vadd(F5, a, geom.vscale(F5, s, geom.vsub(F5, c, a)))
    assert spread(F5, a, b2, c2) == val


def test_spread_rigid_motion_invariance():
    rng = random.Random(11)
    for fd in (F5, F9):
        for trial in range(40):
            m = geom.random_orthogonal(fd, 3, trial)
            z = tuple(rng.randrange(fd.q) for _ in range(3))
            pts = [tuple(rng.randrange(fd.q) for _ in range(3)) for _ in range(3)]
            moved = [geom.vadd(fd, geom.mat_vec(fd, m, p), z) for p in pts]
            assert spread(fd, *moved) == spread(fd, *pts)


def test_k_spread_examples():
    assert k_spread(F5, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1
    # x4 - x1 dependent on the first two arms, all norms nonzero
    assert k_spread(F5, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 0
    assert k_spread(F5, [(0, 0, 0), (1, 2, 0), (0, 1, 0), (0, 0, 1)]) is None


def test_k_spread_arity_checks():
    with pytest.raises(errors.BadArity):
        k_spread(F5, [(0, 0), (1, 0)])  # k = 1
    with pytest.raises(errors.BadArity):
        k_spread(F5, [(0, 0), (1, 0), (0, 1), (1, 1)])  # k = 3 > d = 2


def test_k2_equals_spread_exhaustively_on_f3_plane():
    pts = list(itertools.product(range(3), repeat=2))
    for a, b, c in itertools.permutations(pts, 3):
        assert k_spread(F3, [a, b, c]) == spread(F3, a, b, c)


def test_det_matches_permutation_expansion():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.choice((2, 3))
        m = [[rng.randrange(7) for _ in range(n)] for _ in range(n)]
        expect = 0
        for perm in itertools.permutations(range(n)):
            sign = 1
            seen = [False] * n
            # parity via cycle decomposition
            par = 0
            for i in range(n):
                if seen[i]:
                    continue
                j, clen = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    clen += 1
                par += clen - 1
            term = 1
            for i in range(n):
                term = F7.mul(term, m[i][perm[i]])
            sign = F7.neg(1) if par % 2 else 1
            expect = F7.add(expect, F7.mul(sign, term))
        assert geom.det(F7, m) == expect


def test_rank():
    assert geom.rank(F5, [(1, 2, 0), (2, 4, 0)]) == 1
    assert geom.rank(F5, [(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
    assert geom.rank(F5, []) == 0
    assert geom.rank(F5, [(1, 2), (0, 1)]) == 2


def test_line_through_examples():
    assert line_through(F5, (0, 0), (2, 4)) == CanonLine((0, 0), (1, 2))
    assert line_through(F5, (1, 1), (1, 3)) == CanonLine((1, 0), (0, 1))
    with pytest.raises(errors.IdenticalPoints):
        line_through(F5, (2, 2), (2, 2))


def test_line_through_symmetry_and_membership():
    rng = random.Random(9)
    for _ in range(100):
        p = tuple(rng.randrange(5) for _ in range(3))
        q = tuple(rng.randrange(5) for _ in range(3))
        if p == q:
            continue
        ln = line_through(F5, p, q)
        assert ln == line_through(F5, q, p)
        pts = geom.line_points(F5, ln)
        assert p in pts and q in pts
        assert len(set(pts)) == 5


def test_line_canonicalization_is_bijective_on_f3_plane():
    # Every affine line arises exactly once from canonical forms.
    lines = {
        line_through(F3, p, q)
        for p, q in itertools.combinations(itertools.product(range(3), repeat=2), 2)
    }
    assert len(lines) == 3 * (3 + 1)  # q^(d-1)(q^d-1)/(q-1) for d = 2
    as_sets = {frozenset(geom.line_points(F3, ln)) for ln in lines}
    assert len(as_sets) == len(lines)


def test_sphere_points_frozen_values():
    s1 = geom.sphere_points(F5, 2, 1)
    assert set(s1.points) == {(1, 0), (4, 0), (0, 1), (0, 4)}
    assert len(s1) == 4
    s0 = geom.sphere_points(F5, 2, 0)
    assert len(s0) == 9  # the two isotropic lines through the origin
    assert (1, 1, 1) in geom.sphere_points(F3, 3, 0)


def test_sphere_budget():
    with pytest.raises(errors.BudgetExceeded):
        geom.sphere_points(F5, 4, 1, budget=100)


def test_isotropic_points_split_across_two_lines_when_root_exists():
    # Nonzero points at distance 0 from the origin: 2(q-1) points on two
    # isotropic lines (q-1 each) when -1 is a square, none otherwise.
    for fd in (F5, Field(13)):
        zero_pts = [p for p in geom.sphere_points(fd, 2, 0) if p != (0, 0)]
        assert len(zero_pts) == 2 * (fd.q - 1)
        lines = {line_through(fd, (0, 0), p) for p in zero_pts}
        assert len(lines) == 2
        for ln in lines:
            on_line = [p for p in zero_pts if line_through(fd, (0, 0), p) == ln]
            assert len(on_line) == fd.q - 1
    for fd in (F3, F7):
        assert [p for p in geom.sphere_points(fd, 2, 0) if p != (0, 0)] == []


def test_pinned_spread_separates_lines_up_to_reflection():
    # With apex p and a fixed first arm a, the spread seen along another
    # non-isotropic line through p is 0 exactly on the line of a, defined
    # everywhere else, and takes each value on at most 2 lines (mirror
    # images about the line of a collide, so injectivity cannot hold).
    for fd in (F5, F7):
        p, a = (0, 0), (1, 0)
        dirs = [(1, m) for m in range(fd.q)] + [(0, 1)]
        non_iso = [u for u in dirs if norm(fd, u) != 0]
        values = {}
        for u in non_iso:
            s = spread(fd, p, a, u)
            assert s is not None
            if u == (1, 0):
                assert s == 0
            else:
                assert s != 0
                values.setdefault(s, []).append(u)
        assert all(len(v) <= 2 for v in values.values())
        # the value multiset covers every non-apex line
        assert sum(len(v) for v in values.values()) == len(non_iso) - 1


def test_random_orthogonal_properties():
    for fd in (F5, F9):
        for d in (1, 2, 3):
            for seed in range(8):
                m = geom.random_orthogonal(fd, d, seed)
                assert geom.is_orthogonal(fd, m)
                if d == 1:
                    assert m[0][0] in (1, fd.neg(1))
    assert geom.random_orthogonal(F5, 2, 42) == geom.random_orthogonal(F5, 2, 42)


def test_random_orthogonal_preserves_norm():
    rng = random.Random(0)
    m = geom.random_orthogonal(F7, 3, 5)
    for _ in range(50):
        v = tuple(rng.randrange(7) for _ in range(3))
        assert norm(F7, geom.mat_vec(F7, m, v)) == norm(F7, v)


def test_pointset_validation():
    with pytest.raises(errors.DuplicatePoint):
        PointSet(F5, 2, [(0, 0), (0, 0)])
    with pytest.raises(errors.DimensionMismatch):
        PointSet(F5, 2, [(0, 0, 0)])
    with pytest.raises(errors.FormatError):
        PointSet(F5, 2, [(0, 7)])


def test_pointset_file_roundtrip(tmp_path):
    ps = geom.sphere_points(F9, 2, 1)
    path = tmp_path / "pts.txt"
    ps.save(path)
    again = PointSet.load(path)
    assert again == ps
    assert again.field == F9
    text = path.read_text()
    assert text.splitlines()[0] == "q=9 d=2"


def test_pointset_load_errors():
    with pytest.raises(errors.FormatError):
        PointSet.loads("")
    with pytest.raises(errors.FormatError):
        PointSet.loads("q=x d=2\n0,0")
    with pytest.raises(errors.FormatError):
        PointSet.loads("q=5 d=2\n0,zebra")
    with pytest.raises(errors.DuplicatePoint):
        PointSet.loads("q=5 d=2\n0,0\n0,0")


def test_format_spread():
    assert geom.format_spread(None) == "Undefined"
    assert geom.format_spread(3) == "Value(3)"
