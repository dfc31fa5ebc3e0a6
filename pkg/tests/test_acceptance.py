"""End-to-end acceptance criteria, one test per criterion.

Shared artifacts (realized pencils, extremal pencils, single-base-point
pencils, random low-degree pencils) are built once per session by fixtures.
The cross-cutting criteria 4, 7 and 9 then sweep every artifact.  All
comparisons are exact integer arithmetic; no floats enter a verdict.
"""

import math

import numpy as np
import pytest

from blockpencil.blocking import Blocking, classify, incidence_profile
from blockpencil.constructions import example31_pencil, extremal_pencil, indicator_poly, interpolate, realize_partition
from blockpencil.gf import field_for_order
from blockpencil.pencil import (base_locus_points, classify_pencil, induced_partition, member_points,
                                member_points_bruteforce)
from blockpencil.plane import plane_for
from blockpencil.poly import evaluate_plane
from blockpencil.sampling import (base_point_free_pencils, make_rng, random_partition, random_pencil,
                                  random_point_function, random_point_set)

pytestmark = pytest.mark.acceptance


def ceil_sqrt(q):
    r = math.isqrt(q)
    return r if r * r == q else r + 1


def nonblocking(pencil):
    """Nonblocking member count from scratch: a member blocks iff no line misses it."""
    pl = pencil.plane
    count = 0
    for prm in pl.params:
        S = member_points(pencil, prm)
        if not S.mask[pl.line_points].any(axis=1).all():
            count += 1
    return count


# -- shared artifacts ---------------------------------------------------------------------

@pytest.fixture(scope="session")
def realized():
    """(q, partition, pencil) for 50 seeded random partitions per q."""
    out = []
    for q in (2, 3, 4, 5):
        pl = plane_for(field_for_order(q))
        rng = make_rng(2000 + q)
        for _ in range(50):
            part = random_partition(pl, rng)
            out.append((q, part, realize_partition(part)))
    return out


@pytest.fixture(scope="session")
def extremal():
    return {q: extremal_pencil(field_for_order(q)) for q in (4, 9, 16, 25)}


@pytest.fixture(scope="session")
def example31():
    return {q: example31_pencil(field_for_order(q)) for q in (2, 3, 4, 5, 7, 8, 9)}


@pytest.fixture(scope="session")
def low_degree():
    """At least 20 base-point-free pencils for each degree d in {2, 3} and q in {5,7,9,11,13}."""
    out = {}
    for q in (5, 7, 9, 11, 13):
        ctx = field_for_order(q)
        for d in (2, 3):
            out[(q, d)] = base_point_free_pencils(ctx, d, 20, make_rng(100 * q + d))
    return out


@pytest.fixture(scope="session")
def small_random():
    """Random pencils over q in {2, 3}, with and without base points."""
    out = []
    for q in (2, 3):
        ctx = field_for_order(q)
        rng = make_rng(300 + q)
        out += [random_pencil(ctx, d, rng) for d in (1, 2, 3, 4) for _ in range(10)]
    return out


# -- criteria -----------------------------------------------------------------------------

def test_criterion_1_indicator_and_interpolation():
    for q in (2, 3, 4, 5, 7, 8, 9):
        ctx = field_for_order(q)
        pl = plane_for(ctx)
        table = np.array([evaluate_plane(ctx, indicator_poly(ctx, Q)) for Q in pl.points])
        assert np.array_equal(table, np.eye(pl.size, dtype=table.dtype)), q
        rng = make_rng(10 + q)
        for _ in range(20):
            f = random_point_function(pl, rng)
            got = evaluate_plane(ctx, interpolate(ctx, f))
            assert [int(v) for v in got] == [f[P] for P in pl.points], q


def test_criterion_2_partition_roundtrip(realized):
    assert len(realized) == 200
    for q, part, pencil in realized:
        assert pencil.degree == 3 * (q - 1)
        assert len(base_locus_points(pencil)) == 0
        induced = induced_partition(pencil)
        for i in range(q + 1):
            assert induced[i] == part[i]


def test_criterion_3_extremal_pencils(extremal):
    for q, pencil in extremal.items():
        r = math.isqrt(q)
        rep = classify_pencil(pencil)
        assert rep.base_locus_size == 0
        assert rep.nonblocking == r
        nontrivial = [rec for rec in rep.members if rec.blocking.kind is Blocking.NONTRIVIAL]
        assert len(nontrivial) == q - r + 1
        assert all(rec.count == q + r + 1 for rec in nontrivial)
        assert nonblocking(pencil) == r


def test_criterion_4_sqrt_bound_universal(realized, extremal, low_degree):
    pencils = [p for _, _, p in realized] + list(extremal.values())
    pencils += [p for group in low_degree.values() for p in group]
    checked = 0
    for pencil in pencils:
        assert len(base_locus_points(pencil)) == 0
        nb = nonblocking(pencil)
        assert nb >= ceil_sqrt(pencil.q)
        assert classify_pencil(pencil).checks["prop32"].status == "pass"
        checked += 1
    assert checked == 200 + 4 + 200
    for q, pencil in extremal.items():
        assert nonblocking(pencil) == math.isqrt(q)      # sharpness


def test_criterion_5_single_base_point(example31):
    for q, pencil in example31.items():
        m = max(0, q - 3)
        e = q * q + q + 1 + m
        assert pencil.degree == e
        assert math.gcd(q - 1, e) == 1
        assert base_locus_points(pencil).points() == [(1, 0, 0)]
        assert nonblocking(pencil) == 0
        assert classify_pencil(pencil).m == q + 1


def test_criterion_6_incidence_identities():
    for q in (2, 3, 4, 5, 7, 9):
        pl = plane_for(field_for_order(q))
        rng = make_rng(600 + q)
        for _ in range(100):
            prof = incidence_profile(random_point_set(pl, rng))
            t, N = prof.t, prof.N
            assert sum(t) == q * q + q + 1
            assert sum(i * ti for i, ti in enumerate(t)) == (q + 1) * N
            assert sum(math.comb(i, 2) * ti for i, ti in enumerate(t)) == math.comb(N, 2)


def test_criterion_7_size_bounds(realized, extremal, example31, low_degree):
    pencils = list(extremal.values()) + list(example31.values()) + [p for _, _, p in realized]
    pencils += [p for group in low_degree.values() for p in group]
    seen = 0
    for pencil in pencils:
        ctx, q = pencil.ctx, pencil.q
        for prm in pencil.plane.params:
            S = member_points(pencil, prm)
            if classify(S).kind is not Blocking.NONTRIVIAL:
                continue
            N = len(S)
            seen += 1
            assert N - q - 1 >= 0 and (N - q - 1) ** 2 >= q, (q, prm, N)    # Bruen
            if ctx.n == 1:
                assert 2 * N >= 3 * (q + 1), (q, prm, N)                   # Blokhuis
    assert seen >= sum(q - math.isqrt(q) + 1 for q in extremal)


def test_criterion_8_degree_bound_low_degree(low_degree):
    for (q, d), pencils in low_degree.items():
        assert len(pencils) >= 20
        for pencil in pencils:
            assert pencil.degree == d
            assert len(base_locus_points(pencil)) == 0
            nb = nonblocking(pencil)
            assert nb * (d + 1) >= q + 1, (q, d, nb)
            assert classify_pencil(pencil).checks["thm12"].status == "pass"


def test_criterion_9_bruteforce_oracle(realized, example31, small_random):
    pencils = [p for q, _, p in realized if q in (2, 3)]
    pencils += [example31[2], example31[3]] + small_random
    for pencil in pencils:
        for prm in pencil.plane.params:
            assert member_points(pencil, prm) == member_points_bruteforce(pencil, prm)
    assert len(pencils) == 100 + 2 + 80
