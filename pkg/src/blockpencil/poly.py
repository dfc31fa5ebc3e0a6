"""Homogeneous polynomials in x, y, z over GF(q), kept as expression DAGs.

Interpolating polynomials built from indicator products have degree
``3(q-1)`` and up to ``q^2+q+1`` summands; expanding them is wasteful, but
evaluating the DAG at every point of the plane is cheap.  Nodes are
immutable and structurally hashed, so shared subexpressions (the same
``L**(q-1)`` appearing in many indicators) are evaluated once per call.

Sparse expansion is available behind a term guard for small expressions.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegreeError, FieldMismatchError, GuardExceeded, PreconditionError
from .gf import GF

DEFAULT_TERM_GUARD = 10**6


class PolyExpr:
    """Base class of expression nodes.  Subclasses set ``degree`` and ``_key``."""

    __slots__ = ("degree", "_key", "_hash")

    def _seal(self, degree: int, key: tuple) -> None:
        self.degree = degree
        self._key = key
        self._hash = hash(key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return type(other) is type(self) and self._hash == other._hash and self._key == other._key

    def __repr__(self) -> str:
        return f"{type(self).__name__}{self._key[1:]}"


class Scalar(PolyExpr):
    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = int(value)
        self._seal(0, ("scalar", self.value))


class LinearForm(PolyExpr):
    __slots__ = ("a", "b", "c")

    def __init__(self, a: int, b: int, c: int):
        self.a, self.b, self.c = int(a), int(b), int(c)
        self._seal(1, ("linear", self.a, self.b, self.c))


class Power(PolyExpr):
    __slots__ = ("child", "k")

    def __init__(self, child: PolyExpr, k: int):
        if k < 1:
            raise ValueError(f"Power exponent must be positive, got {k}")
        self.child, self.k = child, int(k)
        self._seal(self.k * child.degree, ("pow", child, self.k))


class Product(PolyExpr):
    __slots__ = ("children",)

    def __init__(self, children: Iterable[PolyExpr]):
        self.children = tuple(children)
        if not self.children:
            raise ValueError("Product needs at least one factor")
        self._seal(sum(ch.degree for ch in self.children), ("mul", self.children))


class Sum(PolyExpr):
    __slots__ = ("children",)

    def __init__(self, children: Iterable[PolyExpr]):
        self.children = tuple(children)
        if not self.children:
            raise ValueError("Sum needs at least one term")
        degrees = {ch.degree for ch in self.children}
        if len(degrees) != 1:
            raise DegreeError(f"Sum of mixed degrees {sorted(degrees)}")
        self._seal(degrees.pop(), ("add", self.children))


class ScalarMul(PolyExpr):
    __slots__ = ("scalar", "child")

    def __init__(self, scalar: int, child: PolyExpr):
        self.scalar, self.child = int(scalar), child
        self._seal(child.degree, ("smul", self.scalar, child))


X = LinearForm(1, 0, 0)
Y = LinearForm(0, 1, 0)
Z = LinearForm(0, 0, 1)
COORDINATE_FORMS = (X, Y, Z)


def power(child: PolyExpr, k: int) -> PolyExpr:
    return child if k == 1 else Power(child, k)


def monomial(a: int, b: int, c: int) -> PolyExpr:
    """``x**a * y**b * z**c``; the empty monomial is ``Scalar(1)``."""
    factors = [power(v, e) for v, e in zip(COORDINATE_FORMS, (a, b, c)) if e > 0]
    if not factors:
        return Scalar(1)
    return factors[0] if len(factors) == 1 else Product(factors)


def difference(ctx: GF, a: PolyExpr, b: PolyExpr) -> PolyExpr:
    return Sum((a, ScalarMul(ctx.neg(1), b)))


def linear_combination(s: int, t: int, F: PolyExpr, G: PolyExpr) -> PolyExpr:
    """The member ``s*F + t*G`` of the pencil spanned by ``F`` and ``G``."""
    if F.degree != G.degree:
        raise DegreeError(f"degrees differ: {F.degree} != {G.degree}")
    if s == 0 and t == 0:
        raise PreconditionError("(s, t) = (0, 0) is not a projective parameter")
    return Sum((ScalarMul(s, F), ScalarMul(t, G)))


def all_lines_product(ctx: GF) -> PolyExpr:
    """Product of the linear forms of all q^2+q+1 lines; vanishes on PG(2,q)."""
    from .plane import plane_for

    return Product(LinearForm(*L) for L in plane_for(ctx).lines)


def vanishing_form(ctx: GF, degree: int) -> PolyExpr:
    """A nonzero form of the given degree vanishing at every F_q-point.

    Built as ``(x**q * y - x * y**q) * z**(degree - q - 1)``.
    """
    q = ctx.q
    if degree < q + 1:
        raise PreconditionError(f"no vanishing form template below degree {q + 1}")
    core = difference(ctx, Product((power(X, q), Y)), Product((X, power(Y, q))))
    rest = degree - q - 1
    return core if rest == 0 else Product((core, power(Z, rest)))


def zero_form(degree: int) -> PolyExpr:
    """The zero polynomial, carried at a given degree."""
    return ScalarMul(0, power(X, degree)) if degree > 0 else Scalar(0)


def walk(expr: PolyExpr) -> Iterable[PolyExpr]:
    """Distinct nodes of the DAG, children before parents."""
    seen: set[PolyExpr] = set()
    order: list[PolyExpr] = []
    stack: list[tuple[PolyExpr, bool]] = [(expr, False)]
    while stack:
        node, done = stack.pop()
        if done:
            order.append(node)
            continue
        if node in seen:
            continue
        seen.add(node)
        stack.append((node, True))
        for ch in _children(node):
            if ch not in seen:
                stack.append((ch, False))
    return order


def _children(node: PolyExpr) -> tuple[PolyExpr, ...]:
    if isinstance(node, (Product, Sum)):
        return node.children
    if isinstance(node, (Power, ScalarMul)):
        return (node.child,)
    return ()


def node_count(expr: PolyExpr) -> int:
    return len(walk(expr))


# -- evaluation --------------------------------------------------------------

def _check_scalar(ctx: GF, c: int) -> None:
    if not 0 <= c < ctx.q:
        raise FieldMismatchError(f"coefficient {c} is not an element of {ctx}")


def evaluate_coords(ctx: GF, expr: PolyExpr, coords) -> np.ndarray:
    """Evaluate ``expr`` at each row of an ``(M, 3)`` array of raw triples.

    The triples need not be normalized.
    """
    coords = np.asarray(coords, dtype=np.int64).reshape(-1, 3)
    cols = coords[:, 0], coords[:, 1], coords[:, 2]
    size = coords.shape[0]
    memo: dict[PolyExpr, np.ndarray] = {}
    for node in walk(expr):
        if isinstance(node, LinearForm):
            acc = np.zeros(size, dtype=np.int64)
            for coef, col in zip((node.a, node.b, node.c), cols):
                _check_scalar(ctx, coef)
                if coef:
                    acc = ctx.vadd(acc, col if coef == 1 else ctx.vmul(coef, col))
            val = acc
        elif isinstance(node, Power):
            val = ctx.vpow(memo[node.child], node.k)
        elif isinstance(node, Product):
            val = memo[node.children[0]]
            for ch in node.children[1:]:
                val = ctx.vmul(val, memo[ch])
        elif isinstance(node, Sum):
            val = memo[node.children[0]]
            for ch in node.children[1:]:
                val = ctx.vadd(val, memo[ch])
        elif isinstance(node, ScalarMul):
            _check_scalar(ctx, node.scalar)
            val = ctx.vmul(node.scalar, memo[node.child])
        elif isinstance(node, Scalar):
            _check_scalar(ctx, node.value)
            val = np.full(size, node.value, dtype=np.int64)
        else:  # pragma: no cover
            raise TypeError(f"unknown node {node!r}")
        memo[node] = val
    return memo[expr]


def evaluate_at(ctx: GF, expr: PolyExpr, v: Sequence[int]) -> int:
    """Value at the raw coordinate triple ``v`` (no normalization)."""
    for c in v:
        ctx.check(c)
    return int(evaluate_coords(ctx, expr, [v])[0])


def evaluate(ctx: GF, expr: PolyExpr, point: Sequence[int]) -> int:
    """Value at the canonical representative of ``point``.

    When ``expr.degree`` is a multiple of ``q - 1`` this is the value of
    the induced function on PG(2, q); otherwise only its vanishing is
    representative-independent.
    """
    from .plane import plane_for

    plane = plane_for(ctx)
    return int(evaluate_coords(ctx, expr, plane.coords[plane.point_index(point)])[0])


def evaluate_plane(ctx: GF, expr: PolyExpr) -> np.ndarray:
    """Values at every point of PG(2, q), in enumeration order."""
    from .plane import plane_for

    return evaluate_coords(ctx, expr, plane_for(ctx).coords)


def is_zero_at(ctx: GF, expr: PolyExpr, point: Sequence[int]) -> bool:
    return evaluate(ctx, expr, point) == 0


def zero_set(ctx: GF, expr: PolyExpr):
    """The F_q-rational points of ``expr = 0`` as a PointSet."""
    from .blocking import PointSet
    from .plane import plane_for

    return PointSet(plane_for(ctx), evaluate_plane(ctx, expr) == 0)


# -- sparse expansion ----------------------------------------------------------

class SparsePoly:
    """Expanded form: exponent triple ``(a, b, c)`` -> nonzero coefficient."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[int, int, int], int]):
        self.degree = degree
        self.terms = {tuple(e): int(c) for e, c in terms.items() if c}
        for e in self.terms:
            if sum(e) != degree or min(e) < 0:
                raise DegreeError(f"exponent {e} does not have total degree {degree}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparsePoly) and (self.degree, self.terms) == (other.degree, other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"SparsePoly(degree={self.degree}, terms={len(self.terms)})"

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate_at(self, ctx: GF, v: Sequence[int]) -> int:
        """Direct term-by-term evaluation (independent of the DAG path)."""
        x, y, z = v
        acc = 0
        for (a, b, c), coef in self.terms.items():
            term = ctx.mul(coef, ctx.mul(ctx.pow(x, a), ctx.mul(ctx.pow(y, b), ctx.pow(z, c))))
            acc = ctx.add(acc, term)
        return acc

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "terms": [[a, b, c, coef] for (a, b, c), coef in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SparsePoly":
        return cls(int(obj["degree"]), {(a, b, c): coef for a, b, c, coef in obj["terms"]})

    def to_expr(self, ctx: GF) -> PolyExpr:
        """A DAG with one scaled monomial per term."""
        if not self.terms:
            return zero_form(self.degree)
        return Sum(ScalarMul(coef, monomial(*e)) for e, coef in sorted(self.terms.items()))


def _sp_mul(ctx: GF, A: SparsePoly, B: SparsePoly, guard: int) -> SparsePoly:
    if len(A) * len(B) > guard:
        raise GuardExceeded(f"product of {len(A)} x {len(B)} terms exceeds term guard {guard}")
    out: dict[tuple[int, int, int], int] = {}
    for (a1, b1, c1), u in A.terms.items():
        for (a2, b2, c2), v in B.terms.items():
            e = (a1 + a2, b1 + b2, c1 + c2)
            out[e] = ctx.add(out.get(e, 0), ctx.mul(u, v))
    return SparsePoly(A.degree + B.degree, out)


def _sp_add(ctx: GF, parts: Sequence[SparsePoly], guard: int) -> SparsePoly:
    out: dict[tuple[int, int, int], int] = {}
    for P in parts:
        for e, c in P.terms.items():
            out[e] = ctx.add(out.get(e, 0), c)
        if len(out) > guard:
            raise GuardExceeded(f"sum exceeds term guard {guard}")
    return SparsePoly(parts[0].degree, out)


def _sp_product(ctx: GF, parts: list[SparsePoly], guard: int) -> SparsePoly:
    # balanced tree keeps intermediate degrees even
    while len(parts) > 1:
        nxt = [_sp_mul(ctx, parts[i], parts[i + 1], guard) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


def _sp_pow(ctx: GF, A: SparsePoly, k: int, guard: int) -> SparsePoly:
    result: SparsePoly | None = None
    base = A
    while True:
        if k & 1:
            result = base if result is None else _sp_mul(ctx, result, base, guard)
        k >>= 1
        if not k:
            return result
        base = _sp_mul(ctx, base, base, guard)


def expand(ctx: GF, expr: PolyExpr, term_guard: int = DEFAULT_TERM_GUARD) -> SparsePoly:
    """Fully expand ``expr``.

    Raises GuardExceeded as soon as any intermediate product would form more
    than ``term_guard`` term pairs or any sum would hold more than
    ``term_guard`` terms.
    """
    memo: dict[PolyExpr, SparsePoly] = {}
    for node in walk(expr):
        if isinstance(node, LinearForm):
            for c in (node.a, node.b, node.c):
                _check_scalar(ctx, c)
            val = SparsePoly(1, {(1, 0, 0): node.a, (0, 1, 0): node.b, (0, 0, 1): node.c})
        elif isinstance(node, Scalar):
            _check_scalar(ctx, node.value)
            val = SparsePoly(0, {(0, 0, 0): node.value})
        elif isinstance(node, ScalarMul):
            _check_scalar(ctx, node.scalar)
            child = memo[node.child]
            val = SparsePoly(child.degree, {e: ctx.mul(node.scalar, c) for e, c in child.terms.items()})
        elif isinstance(node, Power):
            val = _sp_pow(ctx, memo[node.child], node.k, term_guard)
        elif isinstance(node, Product):
            val = _sp_product(ctx, [memo[ch] for ch in node.children], term_guard)
        elif isinstance(node, Sum):
            val = _sp_add(ctx, [memo[ch] for ch in node.children], term_guard)
        else:  # pragma: no cover
            raise TypeError(f"unknown node {node!r}")
        memo[node] = val
    return memo[expr]


# -- JSON ----------------------------------------------------------------------

def expr_to_json(expr: PolyExpr) -> dict:
    if isinstance(expr, LinearForm):
        return {"op": "linear", "coeffs": [expr.a, expr.b, expr.c]}
    if isinstance(expr, Scalar):
        return {"op": "scalar", "value": expr.value}
    if isinstance(expr, Power):
        return {"op": "pow", "k": expr.k, "arg": expr_to_json(expr.child)}
    if isinstance(expr, ScalarMul):
        return {"op": "smul", "scalar": expr.scalar, "arg": expr_to_json(expr.child)}
    if isinstance(expr, Product):
        return {"op": "mul", "args": [expr_to_json(ch) for ch in expr.children]}
    if isinstance(expr, Sum):
        return {"op": "add", "args": [expr_to_json(ch) for ch in expr.children]}
    raise TypeError(f"unknown node {expr!r}")  # pragma: no cover


def expr_from_json(obj: Mapping) -> PolyExpr:
    try:
        op = obj["op"]
        if op == "linear":
            return LinearForm(*obj["coeffs"])
        if op == "scalar":
            return Scalar(obj["value"])
        if op == "pow":
            return Power(expr_from_json(obj["arg"]), obj["k"])
        if op == "smul":
            return ScalarMul(obj["scalar"], expr_from_json(obj["arg"]))
        if op == "mul":
            return Product(expr_from_json(a) for a in obj["args"])
        if op == "add":
            return Sum(expr_from_json(a) for a in obj["args"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed expression node: {exc}") from exc
    raise ValueError(f"unknown expression op {obj.get('op')!r}")
