"""Seeded random inputs for the randomized suites.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``.  The same
seed always gives the same sequence of partitions, point sets, functions
and pencils.
"""

from __future__ import annotations

import itertools

import numpy as np

from .blocking import PointSet
from .errors import PencilError
from .gf import GF
from .pencil import Partition, Pencil, base_locus_points
from .plane import Plane, Point
from .poly import PolyExpr, SparsePoly


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_partition(plane: Plane, rng: np.random.Generator) -> Partition:
    """Each point gets an independent uniform label in ``0 .. q``."""
    return Partition.from_labels(plane, rng.integers(0, plane.q + 1, size=plane.size))


def random_point_set(plane: Plane, rng: np.random.Generator) -> PointSet:
    """Uniform size in ``0 .. |PG(2,q)|``, then a uniform subset of that size."""
    k = int(rng.integers(0, plane.size + 1))
    return PointSet.from_indices(plane, rng.choice(plane.size, size=k, replace=False))


def random_point_function(plane: Plane, rng: np.random.Generator) -> dict[Point, int]:
    """Uniform values; redrawn until not identically zero."""
    while True:
        vals = rng.integers(0, plane.q, size=plane.size)
        if vals.any():
            return {P: int(v) for P, v in zip(plane.points, vals)}


def exponent_triples(d: int) -> list[tuple[int, int, int]]:
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def random_form(ctx: GF, d: int, rng: np.random.Generator) -> PolyExpr:
    """A form of degree ``d`` with independent uniform coefficients."""
    while True:
        coefs = rng.integers(0, ctx.q, size=(d + 1) * (d + 2) // 2)
        if coefs.any():
            sp = SparsePoly(d, {e: int(c) for e, c in zip(exponent_triples(d), coefs)})
            return sp.to_expr(ctx)


def random_pencil(ctx: GF, d: int, rng: np.random.Generator) -> Pencil:
    while True:
        try:
            return Pencil(ctx, random_form(ctx, d, rng), random_form(ctx, d, rng))
        except PencilError:
            continue


def base_point_free_pencils(ctx: GF, d: int, count: int, rng: np.random.Generator,
                            max_tries: int = 10_000) -> list[Pencil]:
    """``count`` random degree-``d`` pencils with no F_q-point in the base locus."""
    out: list[Pencil] = []
    for _ in itertools.repeat(None, max_tries):
        P = random_pencil(ctx, d, rng)
        if len(base_locus_points(P)) == 0:
            out.append(P)
            if len(out) == count:
                return out
    raise RuntimeError(f"found only {len(out)} base-point-free pencils in {max_tries} tries")
