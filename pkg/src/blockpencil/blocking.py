"""Blocking sets in PG(2, q): classification, incidence profiles, size bounds.

All bound comparisons are exact.  Thresholds involving sqrt(q) are kept as
:class:`Surd` values ``r + s*sqrt(q)`` and compared against rationals by
squaring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import FieldError, FieldMismatchError
from .gf import is_prime
from .plane import Line, Plane, Point


class PointSet:
    """An immutable set of points of one plane, stored as a boolean mask."""

    __slots__ = ("plane", "mask")

    def __init__(self, plane: Plane, mask):
        mask = np.array(mask, dtype=bool)
        if mask.shape != (plane.size,):
            raise FieldMismatchError(f"mask of shape {mask.shape} does not fit {plane}")
        mask.setflags(write=False)
        self.plane = plane
        self.mask = mask

    @classmethod
    def from_points(cls, plane: Plane, pts: Iterable[Sequence[int]]) -> "PointSet":
        mask = np.zeros(plane.size, dtype=bool)
        for P in pts:
            mask[plane.point_index(P)] = True
        return cls(plane, mask)

    @classmethod
    def from_indices(cls, plane: Plane, idx) -> "PointSet":
        mask = np.zeros(plane.size, dtype=bool)
        mask[np.asarray(idx, dtype=np.int64)] = True
        return cls(plane, mask)

    @classmethod
    def empty(cls, plane: Plane) -> "PointSet":
        return cls(plane, np.zeros(plane.size, dtype=bool))

    @classmethod
    def full(cls, plane: Plane) -> "PointSet":
        return cls(plane, np.ones(plane.size, dtype=bool))

    @classmethod
    def line(cls, plane: Plane, L: Sequence[int]) -> "PointSet":
        return cls.from_indices(plane, plane.line_points[plane.line_index(L)])

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def points(self) -> list[Point]:
        return [self.plane.points[i] for i in self.indices]

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())

    def __contains__(self, P: object) -> bool:
        try:
            return bool(self.mask[self.plane.point_index(P)])
        except (FieldMismatchError, TypeError):
            return False

    def _same_plane(self, other: "PointSet") -> None:
        if other.plane is not self.plane and other.plane.ctx != self.plane.ctx:
            raise FieldMismatchError("point sets live in different planes")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.plane.ctx == other.plane.ctx and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash((self.plane.q, self.mask.tobytes()))

    def __or__(self, other: "PointSet") -> "PointSet":
        self._same_plane(other)
        return PointSet(self.plane, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._same_plane(other)
        return PointSet(self.plane, self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._same_plane(other)
        return PointSet(self.plane, self.mask & ~other.mask)

    def issubset(self, other: "PointSet") -> bool:
        self._same_plane(other)
        return not np.any(self.mask & ~other.mask)

    def isdisjoint(self, other: "PointSet") -> bool:
        self._same_plane(other)
        return not np.any(self.mask & other.mask)

    def to_json(self) -> list[list[int]]:
        return [list(P) for P in self.points()]

    def __repr__(self) -> str:
        return f"PointSet({len(self)} points of {self.plane})"


class Blocking(str, Enum):
    NON = "non"
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class BlockingClass:
    kind: Blocking
    witness: Line | None = None

    @property
    def is_blocking(self) -> bool:
        return self.kind is not Blocking.NON


@dataclass(frozen=True)
class IncidenceProfile:
    """``t[i]`` = number of lines meeting the set in exactly ``i`` points."""

    N: int
    t: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.t) - 2

    def identities(self) -> dict[str, bool]:
        q, N, t = self.q, self.N, self.t
        return {
            "lines": sum(t) == q * q + q + 1,
            "incidences": sum(i * ti for i, ti in enumerate(t)) == (q + 1) * N,
            "pairs": sum(math.comb(i, 2) * ti for i, ti in enumerate(t)) == math.comb(N, 2),
        }

    def to_json(self) -> dict:
        return {"N": self.N, "t": list(self.t)}


def line_hits(S: PointSet) -> np.ndarray:
    """Per line, the number of points of ``S`` on it."""
    return S.mask[S.plane.line_points].sum(axis=1)


def is_blocking(S: PointSet) -> bool:
    return bool(S.mask[S.plane.line_points].any(axis=1).all())


def classify(S: PointSet) -> BlockingClass:
    on_line = S.mask[S.plane.line_points]
    if not on_line.any(axis=1).all():
        return BlockingClass(Blocking.NON)
    full = np.flatnonzero(on_line.all(axis=1))
    if full.size:
        return BlockingClass(Blocking.TRIVIAL, S.plane.lines[full[0]])
    return BlockingClass(Blocking.NONTRIVIAL)


def incidence_profile(S: PointSet) -> IncidenceProfile:
    q = S.plane.q
    t = np.bincount(line_hits(S), minlength=q + 2)
    return IncidenceProfile(len(S), tuple(int(v) for v in t))


# -- exact thresholds ------------------------------------------------------------

@dataclass(frozen=True)
class Surd:
    """The real number ``rational + coeff * sqrt(radicand)``."""

    rational: Fraction
    coeff: Fraction
    radicand: int

    def _sign_minus(self, x: Fraction | int) -> int:
        """Sign of ``self - x``."""
        a = Fraction(self.rational) - Fraction(x)   # self - x = a + b*sqrt(r)
        b = Fraction(self.coeff)
        r = self.radicand
        if b == 0 or r == 0:
            return (a > 0) - (a < 0)
        # sign(a + b*sqrt(r)) without floats
        sb = 1 if b > 0 else -1
        if a == 0:
            return sb
        sa = 1 if a > 0 else -1
        if sa == sb:
            return sa
        big = b * b * r - a * a      # > 0 means the surd term dominates
        if big == 0:
            return 0
        return sb if big > 0 else sa

    def exact(self) -> Fraction | None:
        s = math.isqrt(self.radicand)
        if s * s == self.radicand:
            return Fraction(self.rational) + Fraction(self.coeff) * s
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Surd):
            return (self.rational, self.coeff, self.radicand) == (other.rational, other.coeff, other.radicand) \
                or (self.exact() is not None and self.exact() == other.exact())
        if isinstance(other, (int, Fraction)):
            return self._sign_minus(other) == 0
        return NotImplemented

    def __hash__(self) -> int:
        ex = self.exact()
        return hash(ex) if ex is not None else hash((self.rational, self.coeff, self.radicand))

    def __lt__(self, x): return self._sign_minus(x) < 0
    def __le__(self, x): return self._sign_minus(x) <= 0
    def __gt__(self, x): return self._sign_minus(x) > 0
    def __ge__(self, x): return self._sign_minus(x) >= 0

    def __float__(self) -> float:
        return float(self.rational) + float(self.coeff) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        ex = self.exact()
        if ex is not None:
            return str(ex)
        return f"{self.rational} + {self.coeff}*sqrt({self.radicand})"


def ceil_sqrt(q: int) -> int:
    s = math.isqrt(q)
    return s if s * s == q else s + 1


def bruen_bound(q: int) -> Surd:
    """``q + sqrt(q) + 1`` as an exact surd."""
    return Surd(Fraction(q + 1), Fraction(1), q)


def bruen_threshold(q: int) -> int:
    """Least integer size a nontrivial blocking set of PG(2, q) can have
    according to the bound ``q + sqrt(q) + 1``."""
    return q + 1 + ceil_sqrt(q)


def blokhuis_threshold(p: int) -> Fraction:
    """``3(p+1)/2``, the lower bound for nontrivial blocking sets over a
    prime field."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    return Fraction(3 * (p + 1), 2)


def lemma41_threshold(q: int, d: int) -> Surd:
    """``q + (q + sqrt(q)) / d``: a degree-``d`` curve whose points form a
    nontrivial blocking set has strictly more points than this."""
    if d < 1:
        raise ValueError("degree must be positive")
    return Surd(Fraction(q) + Fraction(q, d), Fraction(1, d), q)


@dataclass
class BoundCheck:
    name: str
    status: str          # "pass" | "fail" | "n/a"
    size: int
    threshold: str
    strict: bool = False

    def to_json(self) -> dict:
        return {"status": self.status, "size": self.size, "threshold": self.threshold,
                "strict": self.strict}


@dataclass
class SizeBoundReport:
    kind: Blocking
    size: int
    checks: dict[str, BoundCheck] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks.values())

    def to_json(self) -> dict:
        return {"class": self.kind.value, "size": self.size,
                "checks": {k: v.to_json() for k, v in self.checks.items()}}


def check_size_bounds(S: PointSet, d: int | None = None, kind: BlockingClass | None = None) -> SizeBoundReport:
    """Check a point set against the nontrivial-blocking-set size bounds.

    Only applies when ``S`` is nontrivially blocking; otherwise every check
    is ``"n/a"``.  ``d``, when given, is the degree of a curve whose point
    set is ``S`` and enables the strict curve bound.  A ``"fail"`` means a
    bug: all three bounds are theorems.
    """
    q = S.plane.q
    p = S.plane.ctx.p
    kind = kind or classify(S)
    N = len(S)
    rep = SizeBoundReport(kind.kind, N)
    applies = kind.kind is Blocking.NONTRIVIAL

    def verdict(ok: bool, active: bool = True) -> str:
        if not (applies and active):
            return "n/a"
        return "pass" if ok else "fail"

    rep.checks["bruen"] = BoundCheck("bruen", verdict(bruen_bound(q) <= N), N, str(bruen_bound(q)))
    prime = S.plane.ctx.n == 1
    rep.checks["blokhuis"] = BoundCheck(
        "blokhuis", verdict(prime and N >= blokhuis_threshold(p), prime), N,
        str(blokhuis_threshold(p)) if prime else "-")
    if d is not None:
        thr = lemma41_threshold(q, d)
        rep.checks["lemma41"] = BoundCheck("lemma41", verdict(thr < N), N, str(thr), strict=True)
    else:
        rep.checks["lemma41"] = BoundCheck("lemma41", "n/a", N, "-", strict=True)
    return rep
