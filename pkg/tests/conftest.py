"""Shared naive oracles: straight-line reimplementations used to cross-check
the vectorized census kernels.  Deliberately dumb and table-free."""

import itertools

from fqspread import geom


def naive_spread_census(ps):
    values = set()
    undefined = 0
    scanned = 0
    for a, b, c in itertools.permutations(ps.points, 3):
        scanned += 1
        s = geom.spread(ps.field, a, b, c)
        if s is None:
            undefined += 1
        else:
            values.add(s)
    return sorted(values), undefined, scanned


def naive_occurrences(ps, gamma):
    return sum(
        1
        for a, b, c in itertools.permutations(ps.points, 3)
        if geom.spread(ps.field, a, b, c) == gamma
    )


def naive_distances(ps):
    return sorted(
        {
            geom.dist(ps.field, a, b)
            for a, b in itertools.combinations(ps.points, 2)
        }
    )
