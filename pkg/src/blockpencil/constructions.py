"""Explicit pencils: interpolation, partition and cover realization, the
single-base-point pencil with only blocking members, and the Baer-subplane
pencil with exactly sqrt(q) nonblocking members.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

from .blocking import PointSet, incidence_profile, is_blocking
from .errors import FieldError, PencilError, PreconditionError
from .gf import GF, cubic_extension
from .pencil import Partition, Pencil
from .plane import Plane, Point, normalize, plane_for
from .poly import (COORDINATE_FORMS, LinearForm, PolyExpr, Product, ScalarMul, Sum, X, Y, Z,
                   all_lines_product, difference, power, vanishing_form)


def indicator_poly(ctx: GF, Q: Sequence[int]) -> PolyExpr:
    """Degree ``3(q-1)`` form equal to 1 at ``Q`` and 0 at every other point.

    With ``w`` the coordinate of the last nonzero entry of ``Q`` and
    ``L1``, ``L2`` the first two lines through ``Q``::

        w^(q-1) * (w^(q-1) - L1^(q-1)) * (w^(q-1) - L2^(q-1))
    """
    plane = plane_for(ctx)
    Q = plane.points[plane.point_index(Q)]
    k = ctx.q - 1
    last = max(i for i, c in enumerate(Q) if c)
    w = power(COORDINATE_FORMS[last], k)
    L1, L2 = plane.lines_through(Q)[:2]
    return Product((w,
                    difference(ctx, w, power(LinearForm(*L1), k)),
                    difference(ctx, w, power(LinearForm(*L2), k))))


def interpolate(ctx: GF, f: Mapping[Sequence[int], int], exclude: PointSet | None = None) -> PolyExpr:
    """Degree ``3(q-1)`` form whose value at each point ``P`` is ``f[P]``.

    ``f`` maps points to field elements; missing points count as 0.  With
    ``exclude`` (the cover variant) indicators of excluded points are left
    out, so the result vanishes there.
    """
    plane = plane_for(ctx)
    terms = []
    for P in plane.points:
        if exclude is not None and P in exclude:
            continue
        v = ctx.check(f.get(P, 0))
        if v:
            S = indicator_poly(ctx, P)
            terms.append(S if v == 1 else ScalarMul(v, S))
    if not terms:
        raise PreconditionError("cannot interpolate the zero function; use a zero form instead")
    return Sum(terms)


def _pencil_from_phi(ctx: GF, phi: Mapping[Point, int], exclude: PointSet | None) -> Pencil:
    """``F = -R_g``, ``G = R_f`` with ``[f(P):g(P)]`` the parameter of ``phi(P)``."""
    plane = plane_for(ctx)
    f = {P: plane.params[i].s for P, i in phi.items()}
    g = {P: plane.params[i].t for P, i in phi.items()}
    degree = 3 * (ctx.q - 1)

    def interp_or_vanishing(h):
        if any(h.values()):
            return interpolate(ctx, h, exclude)
        # h vanishes everywhere it matters: use a nonzero form with no F_q-points
        # off the zero set, keeping F and G independent as polynomials
        return vanishing_form(ctx, degree)

    Rg = interp_or_vanishing(g)
    F = ScalarMul(ctx.neg(1), Rg)
    G = interp_or_vanishing(f)
    return Pencil(ctx, F, G)


def realize_partition(partition: Partition) -> Pencil:
    """A base-point-free pencil of degree ``3(q-1)`` whose member labeled by
    ``plane.params[i]`` has exactly ``partition[i]`` as its F_q-points."""
    plane = partition.plane
    labels = partition.labels
    phi = {P: int(labels[j]) for j, P in enumerate(plane.points)}
    return _pencil_from_phi(plane.ctx, phi, None)


class CoverSpec:
    """``q + 1`` point sets covering PG(2, q) whose pairwise intersections
    all equal their common intersection ``B``."""

    def __init__(self, plane: Plane, parts: Sequence[PointSet], common: PointSet | None = None):
        parts = tuple(parts)
        if len(parts) != plane.q + 1:
            raise PencilError(f"a cover of {plane} needs {plane.q + 1} parts, got {len(parts)}")
        B = parts[0]
        union = parts[0]
        for U in parts[1:]:
            B = B & U
            union = union | U
        if common is not None and common != B:
            raise PencilError("the given common set is not the intersection of all parts")
        if len(union) != plane.size:
            raise PencilError("the parts do not cover the plane")
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if parts[i] & parts[j] != B:
                    raise PencilError(f"parts {i} and {j} meet outside the common set")
        self.plane = plane
        self.parts = parts
        self.common = B

    def to_json(self) -> dict:
        return {"q": self.plane.q, "field": self.plane.ctx.to_dict(),
                "parts": [U.to_json() for U in self.parts], "common": self.common.to_json()}


def realize_cover(spec: CoverSpec) -> Pencil:
    """A pencil whose ``i``-th member has exactly ``spec.parts[i]`` as its
    F_q-points.  Both generators vanish on the common set."""
    plane = spec.plane
    phi = {}
    for i, U in enumerate(spec.parts):
        for j in (U - spec.common).indices:
            phi[plane.points[j]] = i
    return _pencil_from_phi(plane.ctx, phi, spec.common)


def example31_exponent(q: int) -> tuple[int, int]:
    """``(m, e)`` with ``m = max(0, q-3)`` and ``e = q^2+q+1+m``."""
    m = max(0, q - 3)
    return m, q * q + q + 1 + m


def example31_pencil(ctx: GF) -> Pencil:
    """``F = x^m H + y^e``, ``G = x^m H + z^e`` with ``H`` the product of all
    lines.  Its only F_q base point is ``[1:0:0]`` and every member blocks."""
    q = ctx.q
    m, e = example31_exponent(q)
    if math.gcd(q - 1, e) != 1:
        raise AssertionError(f"gcd(q-1, {e}) != 1")  # pragma: no cover
    H = all_lines_product(ctx)
    xH = H if m == 0 else Product((power(X, m), H))
    return Pencil(ctx, Sum((xH, power(Y, e))), Sum((xH, power(Z, e))))


def _sqrt_exact(q: int) -> int:
    r = math.isqrt(q)
    if r * r != q:
        raise FieldError(f"q = {q} is not a square")
    return r


def singer_points(ctx: GF) -> list[Point]:
    """Points of PG(2, q) indexed by ``Z/(q^2+q+1)``: index ``i`` is the
    class of ``g^i`` for a primitive ``g`` of GF(q^3)."""
    ext = cubic_extension(ctx)
    N = ctx.q ** 2 + ctx.q + 1
    return [Point(*normalize(ctx, ext.coords(x))) for x in ext.powers(N)]


def baer_partition(ctx: GF) -> list[PointSet]:
    """Partition PG(2, q), q square, into ``q - sqrt(q) + 1`` Baer subplanes.

    The parts are the orbits of the subgroup of order ``q + sqrt(q) + 1`` of
    the Singer cycle.  Size, disjointness, cover, blocking and the
    ``{1, sqrt(q)+1}`` line profile are verified before returning.
    """
    r = _sqrt_exact(ctx.q)
    q = ctx.q
    pts = singer_points(ctx)     # size guard of the cubic extension applies first
    plane = plane_for(ctx)
    N = q * q + q + 1
    size = q + r + 1
    step = q - r + 1             # generates the subgroup of order q + r + 1
    if len(set(pts)) != N:
        raise AssertionError("Singer enumeration is not a bijection")  # pragma: no cover
    parts = [PointSet.from_points(plane, (pts[(j + k * step) % N] for k in range(size)))
             for j in range(step)]
    covered = np.zeros(plane.size, dtype=np.int64)
    for S in parts:
        covered += S.mask
        t = incidence_profile(S).t
        allowed = {1, r + 1}
        if len(S) != size or not is_blocking(S) or any(t[i] for i in range(len(t)) if i not in allowed):
            raise AssertionError("a Singer subgroup orbit is not a Baer subplane")  # pragma: no cover
    if not np.all(covered == 1):
        raise AssertionError("Baer parts do not partition the plane")  # pragma: no cover
    return parts


def baer_partition_padded(ctx: GF) -> Partition:
    """The Baer subplanes followed by ``sqrt(q)`` empty parts."""
    plane = plane_for(ctx)
    parts = baer_partition(ctx)
    parts += [PointSet.empty(plane)] * (plane.q + 1 - len(parts))
    return Partition(plane, parts)


def extremal_pencil(ctx: GF) -> Pencil:
    """Base-point-free pencil with exactly ``sqrt(q)`` nonblocking members."""
    return realize_partition(baer_partition_padded(ctx))


def lines_through_point_cover(ctx: GF, center: Sequence[int]) -> CoverSpec:
    """The ``q + 1`` lines through ``center`` as a cover with common set ``{center}``."""
    plane = plane_for(ctx)
    return CoverSpec(plane, [PointSet.line(plane, L) for L in plane.lines_through(center)])


# -- file formats ---------------------------------------------------------------------

def _parts_from_json(plane: Plane, obj: Mapping) -> list[PointSet]:
    if int(obj["q"]) != plane.q:
        raise PencilError(f"file is for q = {obj['q']}, expected {plane.q}")
    return [PointSet.from_points(plane, part) for part in obj["parts"]]


def partition_from_json(obj: Mapping, plane: Plane) -> Partition:
    return Partition(plane, _parts_from_json(plane, obj))


def cover_from_json(obj: Mapping, plane: Plane) -> CoverSpec:
    common = obj.get("common")
    common_set = PointSet.from_points(plane, common) if common is not None else None
    return CoverSpec(plane, _parts_from_json(plane, obj), common_set)
