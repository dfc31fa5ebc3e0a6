"""The projective plane PG(2, q) and its dual.

Points and lines are normalized homogeneous triples: the leftmost nonzero
coordinate is 1.  Both are enumerated in the same order::

    [1:y:z] for y, z in encoding order (y outer), then [0:1:z], then [0:0:1]

so the incidence form ``a*x + b*y + c*z`` is symmetric in point and line
indices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import FieldMismatchError, PreconditionError
from .gf import GF


class Point(NamedTuple):
    x: int
    y: int
    z: int


class Line(NamedTuple):
    a: int
    b: int
    c: int


class Param(NamedTuple):
    """A point ``[s:t]`` of the projective line."""

    s: int
    t: int


def normalize(ctx: GF, v: Sequence[int]) -> tuple[int, ...]:
    """Scale ``v`` so its leftmost nonzero entry is 1."""
    for c in v:
        if c:
            inv = ctx.inv(c)
            return tuple(ctx.mul(inv, x) for x in v)
    raise PreconditionError("the zero vector has no projective class")


def normalize_param(ctx: GF, s: int, t: int) -> Param:
    return Param(*normalize(ctx, (s, t)))


def _triples(q: int) -> list[tuple[int, int, int]]:
    out = [(1, y, z) for y in range(q) for z in range(q)]
    out += [(0, 1, z) for z in range(q)]
    out.append((0, 0, 1))
    return out


class Plane:
    """Enumerated PG(2, q) with a precomputed line/point incidence table.

    ``line_points[i]`` holds the indices of the ``q + 1`` points on line
    ``i``.  Because the enumeration orders coincide, the same table lists
    the lines through point ``i``.
    """

    def __init__(self, ctx: GF):
        self.ctx = ctx
        self.q = q = ctx.q
        triples = _triples(q)
        self.points: list[Point] = [Point(*t) for t in triples]
        self.lines: list[Line] = [Line(*t) for t in triples]
        self.params: list[Param] = [Param(1, t) for t in range(q)] + [Param(0, 1)]
        self.size = len(triples)
        self._index = {t: i for i, t in enumerate(triples)}
        self._param_index = {p: i for i, p in enumerate(self.params)}
        self.coords = np.array(triples, dtype=np.int64)
        self.line_points = self._incidence_table()
        self.coords.setflags(write=False)
        self.line_points.setflags(write=False)

    def _index_of(self, V: np.ndarray) -> np.ndarray:
        """Enumeration index of each row of ``V`` (nonzero triples), after
        scaling the leading nonzero coordinate to 1."""
        ctx, q = self.ctx, self.q
        lead = np.where(V[:, 0] != 0, V[:, 0], np.where(V[:, 1] != 0, V[:, 1], V[:, 2]))
        V = ctx.vmul(V, ctx.vinv(lead)[:, None])
        x, y, z = V.T
        return np.where(x == 1, y * q + z, np.where(y == 1, q * q + z, q * q + q))

    def _incidence_table(self) -> np.ndarray:
        """Points of each line, built from a parametrization of the line
        rather than by testing all points: ``O(q^3)`` work."""
        ctx, N, q = self.ctx, self.size, self.q
        a, b, c = self.coords.T
        # (u, v) runs over P^1: [1:t] for every t, then [0:1]
        u = np.r_[np.ones(q, dtype=np.int64), 0][None, :]
        v = np.r_[np.arange(q, dtype=np.int64), 1][None, :]
        a, b, c = a[:, None], b[:, None], c[:, None]
        shape = (N, q + 1)
        X = np.empty(shape, dtype=np.int64)
        Y = np.empty(shape, dtype=np.int64)
        Z = np.empty(shape, dtype=np.int64)
        # a = 1: x = -(b*u + c*v), (y, z) = (u, v)
        m = (a == 1)[:, 0]
        X[m] = ctx.vneg(ctx.vadd(ctx.vmul(b[m], u), ctx.vmul(c[m], v)))
        Y[m], Z[m] = np.broadcast_to(u, (m.sum(), q + 1)), np.broadcast_to(v, (m.sum(), q + 1))
        # a = 0, b = 1: y = -c*v, (x, z) = (u, v)
        m2 = ((a == 0) & (b == 1))[:, 0]
        X[m2], Z[m2] = np.broadcast_to(u, (m2.sum(), q + 1)), np.broadcast_to(v, (m2.sum(), q + 1))
        Y[m2] = ctx.vneg(ctx.vmul(c[m2], v))
        # the line z = 0: (x, y) = (u, v)
        m3 = ~(m | m2)
        X[m3], Y[m3] = u, v
        Z[m3] = 0
        idx = self._index_of(np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1))
        table = np.sort(idx.reshape(shape), axis=1)
        return table

    def __repr__(self) -> str:
        return f"PG(2, {self.q})"

    # -- lookup -----------------------------------------------------------

    def point_index(self, P: Sequence[int]) -> int:
        try:
            return self._index[tuple(int(c) for c in P)]
        except KeyError:
            raise FieldMismatchError(f"{tuple(P)} is not a normalized point of {self}") from None

    def line_index(self, L: Sequence[int]) -> int:
        try:
            return self._index[tuple(int(c) for c in L)]
        except KeyError:
            raise FieldMismatchError(f"{tuple(L)} is not a normalized line of {self}") from None

    def param_index(self, param: Sequence[int]) -> int:
        try:
            return self._param_index[tuple(int(c) for c in param)]
        except KeyError:
            raise FieldMismatchError(f"{tuple(param)} is not a normalized parameter over {self.ctx}") from None

    def point(self, v: Sequence[int]) -> Point:
        """Normalize an arbitrary nonzero triple to a point of the plane."""
        for c in v:
            self.ctx.check(c)
        return Point(*normalize(self.ctx, v))

    def line(self, v: Sequence[int]) -> Line:
        for c in v:
            self.ctx.check(c)
        return Line(*normalize(self.ctx, v))

    # -- incidence ----------------------------------------------------------

    def incident(self, line: Sequence[int], point: Sequence[int]) -> bool:
        self.line_index(line)
        self.point_index(point)
        ctx = self.ctx
        acc = 0
        for u, v in zip(line, point):
            acc = ctx.add(acc, ctx.mul(u, v))
        return acc == 0

    def points_on(self, line: Sequence[int]) -> list[Point]:
        return [self.points[j] for j in self.line_points[self.line_index(line)]]

    def lines_through(self, point: Sequence[int]) -> list[Line]:
        return [self.lines[j] for j in self.line_points[self.point_index(point)]]

    def line_through(self, P: Sequence[int], Q: Sequence[int]) -> Line:
        self.point_index(P)
        self.point_index(Q)
        if tuple(P) == tuple(Q):
            raise PreconditionError("line_through needs two distinct points")
        m, s = self.ctx.mul, self.ctx.sub
        x1, y1, z1 = P
        x2, y2, z2 = Q
        cross = (s(m(y1, z2), m(z1, y2)), s(m(z1, x2), m(x1, z2)), s(m(x1, y2), m(y1, x2)))
        return Line(*normalize(self.ctx, cross))

    def intersection(self, L: Sequence[int], M: Sequence[int]) -> Point:
        """The common point of two distinct lines (by duality)."""
        return Point(*self.line_through(L, M))

    def incidence_matrix(self) -> np.ndarray:
        """Dense boolean lines x points matrix."""
        inc = np.zeros((self.size, self.size), dtype=bool)
        np.put_along_axis(inc, self.line_points, True, axis=1)
        return inc

    def indices(self, pts: Iterable[Sequence[int]]) -> np.ndarray:
        return np.array([self.point_index(P) for P in pts], dtype=np.int64)


@lru_cache(maxsize=None)
def plane_for(ctx: GF) -> Plane:
    return Plane(ctx)


def points(ctx: GF) -> list[Point]:
    return plane_for(ctx).points


def lines(ctx: GF) -> list[Line]:
    return plane_for(ctx).lines
