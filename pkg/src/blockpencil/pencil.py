"""Pencils <F, G> of plane curves over GF(q) and their F_q-members."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .blocking import Blocking, BlockingClass, PointSet, ceil_sqrt, check_size_bounds, classify
from .errors import GuardExceeded, PencilError, PreconditionError
from .gf import GF
from .plane import Param, Plane, plane_for
from .poly import (DEFAULT_TERM_GUARD, PolyExpr, evaluate_plane, expand, expr_from_json,
                   expr_to_json, linear_combination)


def _proportional_values(ctx: GF, u: np.ndarray, v: np.ndarray) -> bool:
    """True if some nontrivial combination ``l*u + m*v`` vanishes identically."""
    nz = np.flatnonzero(u)
    if nz.size == 0:
        return True
    j = nz[0]
    ratio = ctx.div(int(v[j]), int(u[j]))
    return bool(np.array_equal(ctx.vmul(ratio, u), v))


def _proportional_polys(ctx: GF, F: PolyExpr, G: PolyExpr, guard: int) -> bool:
    A = expand(ctx, F, guard)
    B = expand(ctx, G, guard)
    if A.is_zero() or B.is_zero():
        return True
    e, a = next(iter(A.terms.items()))
    if e not in B.terms:
        return False
    ratio = ctx.div(B.terms[e], a)
    return {k: ctx.mul(ratio, c) for k, c in A.terms.items()} == B.terms


class Pencil:
    """The pencil spanned by two forms ``F`` and ``G`` of equal degree.

    Construction rejects proportional ``F`` and ``G``.  The check first
    compares the value vectors over PG(2, q); only if those are
    proportional (for instance when one form vanishes on every F_q-point)
    are the forms expanded, within ``term_guard``, and compared exactly;
    ``GuardExceeded`` is raised when that expansion is too large.
    """

    def __init__(self, ctx: GF, F: PolyExpr, G: PolyExpr, term_guard: int = DEFAULT_TERM_GUARD):
        if F.degree != G.degree:
            raise PencilError(f"F and G have different degrees ({F.degree} != {G.degree})")
        if F.degree < 1:
            raise PencilError("a pencil needs forms of positive degree")
        self.ctx = ctx
        self.F, self.G = F, G
        self.degree = F.degree
        self.plane: Plane = plane_for(ctx)
        self.F_values = evaluate_plane(ctx, F)
        self.G_values = evaluate_plane(ctx, G)
        self.F_values.setflags(write=False)
        self.G_values.setflags(write=False)
        if _proportional_values(ctx, self.F_values, self.G_values):
            try:
                prop = _proportional_polys(ctx, F, G, term_guard)
            except GuardExceeded as exc:
                raise GuardExceeded(
                    "F and G agree up to scaling on every F_q-point and are too large "
                    f"to compare exactly ({exc})") from exc
            if prop:
                raise PencilError("F and G are proportional; they do not span a pencil")

    @property
    def q(self) -> int:
        return self.ctx.q

    @cached_property
    def _buckets(self) -> tuple[np.ndarray, np.ndarray]:
        """Per point: member index ``normalize(-G(P), F(P))`` and base-point flag."""
        ctx, q = self.ctx, self.q
        s = ctx.vneg(self.G_values)
        t = self.F_values
        base = (s == 0) & (t == 0)
        label = np.full(self.plane.size, q, dtype=np.int64)       # [0:1] when s == 0
        has_s = s != 0
        label[has_s] = ctx.vmul(t[has_s], ctx.vinv(s[has_s]))   # [1 : t/s]
        label[base] = -1
        label.setflags(write=False)
        base.setflags(write=False)
        return label, base

    def to_json(self) -> dict:
        return {"field": self.ctx.to_dict(), "degree": self.degree,
                "F": expr_to_json(self.F), "G": expr_to_json(self.G)}

    @classmethod
    def from_json(cls, obj: dict, ctx: GF | None = None, term_guard: int = DEFAULT_TERM_GUARD) -> "Pencil":
        file_ctx = GF.from_dict(obj["field"]) if "field" in obj else None
        if ctx is None:
            if file_ctx is None:
                raise PencilError("pencil file has no field descriptor")
            ctx = file_ctx
        elif file_ctx is not None and file_ctx != ctx:
            raise PencilError(f"pencil file is over {file_ctx}, expected {ctx}")
        return cls(ctx, expr_from_json(obj["F"]), expr_from_json(obj["G"]), term_guard=term_guard)

    def __repr__(self) -> str:
        return f"Pencil(degree={self.degree} over {self.ctx})"


def base_locus_points(pencil: Pencil) -> PointSet:
    return PointSet(pencil.plane, pencil._buckets[1])


def member(pencil: Pencil, param: Sequence[int]) -> PolyExpr:
    pencil.plane.param_index(param)
    s, t = param
    return linear_combination(s, t, pencil.F, pencil.G)


def member_points(pencil: Pencil, param: Sequence[int]) -> PointSet:
    """F_q-points of the member ``[s:t]``; base points lie on every member."""
    i = pencil.plane.param_index(param)
    label, base = pencil._buckets
    return PointSet(pencil.plane, (label == i) | base)


def member_points_bruteforce(pencil: Pencil, param: Sequence[int]) -> PointSet:
    """Zero set of ``s*F + t*G`` by direct evaluation of the member."""
    values = evaluate_plane(pencil.ctx, member(pencil, param))
    return PointSet(pencil.plane, values == 0)


def all_member_points(pencil: Pencil) -> list[PointSet]:
    return [member_points(pencil, prm) for prm in pencil.plane.params]


class Partition:
    """A labeled division of PG(2, q) into ``q + 1`` parts (some may be empty).

    Part ``i`` is labeled by ``plane.params[i]``.
    """

    def __init__(self, plane: Plane, parts: Sequence[PointSet]):
        parts = tuple(parts)
        if len(parts) != plane.q + 1:
            raise PencilError(f"a partition of {plane} needs {plane.q + 1} parts, got {len(parts)}")
        counts = np.zeros(plane.size, dtype=np.int64)
        for part in parts:
            if part.plane.ctx != plane.ctx:
                raise PencilError("partition parts live in a different plane")
            counts += part.mask
        if np.any(counts > 1):
            raise PencilError("partition parts are not pairwise disjoint")
        if np.any(counts == 0):
            raise PencilError("partition parts do not cover the plane")
        self.plane = plane
        self.parts = parts

    @classmethod
    def from_labels(cls, plane: Plane, labels) -> "Partition":
        labels = np.asarray(labels, dtype=np.int64)
        return cls(plane, [PointSet(plane, labels == i) for i in range(plane.q + 1)])

    @property
    def labels(self) -> np.ndarray:
        out = np.empty(self.plane.size, dtype=np.int64)
        for i, part in enumerate(self.parts):
            out[part.mask] = i
        return out

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> PointSet:
        return self.parts[i]

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def sizes(self) -> list[int]:
        return [len(p) for p in self.parts]

    def to_json(self) -> dict:
        return {"q": self.plane.q, "field": self.plane.ctx.to_dict(),
                "parts": [part.to_json() for part in self.parts]}

    def __repr__(self) -> str:
        return f"Partition(sizes={self.sizes()} of {self.plane})"


def induced_partition(pencil: Pencil) -> Partition:
    if pencil._buckets[1].any():
        raise PreconditionError(
            f"the pencil has {int(pencil._buckets[1].sum())} F_q-point(s) in its base locus")
    return Partition(pencil.plane, all_member_points(pencil))


# -- classification and the counting theorems -------------------------------------

@dataclass
class MemberRecord:
    param: Param
    count: int
    blocking: BlockingClass

    def to_json(self) -> dict:
        return {"param": list(self.param), "count": self.count, "class": self.blocking.kind.value}


@dataclass
class CheckResult:
    name: str
    status: str                  # "pass" | "fail" | "skipped"
    required: str
    actual: int
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == "fail"

    def to_json(self) -> dict:
        out = {"status": self.status, "required": self.required, "actual": self.actual}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class PencilReport:
    q: int
    p: int
    d: int
    base_locus_size: int
    members: list[MemberRecord]
    size_bounds: list = field(default_factory=list)
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return sum(rec.blocking.is_blocking for rec in self.members)

    @property
    def nonblocking(self) -> int:
        return len(self.members) - self.m

    @property
    def base_point_free(self) -> bool:
        return self.base_locus_size == 0

    def count_of(self, kind: Blocking) -> int:
        return sum(rec.blocking.kind is kind for rec in self.members)

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "base_locus_size": self.base_locus_size,
            "members": [rec.to_json() for rec in self.members],
            "m": self.m,
            "nonblocking": self.nonblocking,
            "checks": {k: v.to_json() for k, v in self.checks.items()},
        }


def classify_pencil(pencil: Pencil, run_checks: bool = True) -> PencilReport:
    sets = all_member_points(pencil)
    members = [MemberRecord(prm, len(S), classify(S)) for prm, S in zip(pencil.plane.params, sets)]
    report = PencilReport(
        q=pencil.q, p=pencil.ctx.p, d=pencil.degree,
        base_locus_size=int(pencil._buckets[1].sum()), members=members)
    report.size_bounds = [check_size_bounds(S, pencil.degree, rec.blocking)
                          for S, rec in zip(sets, members)]
    if run_checks:
        for name, fn in (("prop32", check_prop32), ("thm12", check_thm12),
                         ("prime_bound", check_prime_bound)):
            try:
                report.checks[name] = fn(report)
            except PreconditionError as exc:
                report.checks[name] = CheckResult(name, "skipped", "-", report.nonblocking, str(exc))
        bad = [str(rec.param) for rec, sb in zip(members, report.size_bounds) if not sb.ok]
        report.checks["size_bounds"] = CheckResult(
            "size_bounds", "fail" if bad else "pass", "all nontrivially blocking members",
            report.count_of(Blocking.NONTRIVIAL), ", ".join(bad))
    return report


def _require_base_point_free(report: PencilReport) -> None:
    if not report.base_point_free:
        raise PreconditionError(
            f"the pencil has {report.base_locus_size} F_q-point(s) in its base locus")


def check_prop32(report: PencilReport) -> CheckResult:
    """At least sqrt(q) nonblocking members, i.e. ``nb**2 >= q``."""
    _require_base_point_free(report)
    nb = report.nonblocking
    ok = nb * nb >= report.q
    return CheckResult("prop32", "pass" if ok else "fail", f">= {ceil_sqrt(report.q)}", nb)


def check_thm12(report: PencilReport) -> CheckResult:
    """``nb * (d + 1) >= q + 1`` for pencils of degree ``d <= q``."""
    _require_base_point_free(report)
    nb, d, q = report.nonblocking, report.d, report.q
    required = f">= (q+1)/(d+1) = {q + 1}/{d + 1}"
    if d > q:
        return CheckResult("thm12", "skipped", required, nb, f"degree {d} exceeds q = {q}")
    ok = nb * (d + 1) >= q + 1
    return CheckResult("thm12", "pass" if ok else "fail", required, nb)


def check_prime_bound(report: PencilReport) -> CheckResult:
    """Over a prime field, ``3 * nb >= p + 1``."""
    _require_base_point_free(report)
    nb, q = report.nonblocking, report.q
    required = f">= (p+1)/3 = {q + 1}/3"
    if q != report.p:
        return CheckResult("prime_bound", "skipped", required, nb, f"q = {q} is not prime")
    ok = 3 * nb >= q + 1
    return CheckResult("prime_bound", "pass" if ok else "fail", required, nb)


def averaging_bound_holds(report: PencilReport) -> bool:
    """Base-point-free pencils always have a nonblocking member."""
    return not report.base_point_free or report.nonblocking >= 1


def thm12_required(q: int, d: int) -> int:
    return -(-(q + 1) // (d + 1)) if d <= q else 1
