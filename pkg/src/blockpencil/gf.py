"""Finite fields GF(p^n) and cubic extensions GF(q^3).

Elements of GF(p^n) are plain integers in ``range(q)``: the integer
``sum(c_i * p**i)`` encodes the element ``sum(c_i * alpha**i)``, where
``alpha`` is a root of the field modulus.  ``0`` and ``1`` are the additive
and multiplicative identities.

Every field carries discrete exp/log tables over a primitive element, so
multiplication, inversion and powering are table lookups.  Each scalar
operation has a ``v``-prefixed twin that works elementwise on numpy arrays.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldError, FieldMismatchError, SizeBoundError

DEFAULT_MAX_Q = 1024
TABLE_MAX_Q = 4096
EXT_MAX_Q = 128


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, n)`` with ``q == p**n``; raise FieldError otherwise."""
    fac = factorize(q) if q > 1 else {}
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, n),) = fac.items()
    return p, n


def _digits(x: int, base: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        x, r = divmod(x, base)
        out.append(r)
    return out


def _undigits(ds: Iterable[int], base: int) -> int:
    x = 0
    for d in reversed(list(ds)):
        x = x * base + d
    return x


# -- polynomials over GF(p), little-endian coefficient lists ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _trim(r)
    return r


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_rem(prod, m, p)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division of a monic polynomial by all monic
    polynomials of degree ``1 .. deg // 2``."""
    n = len(modulus) - 1
    if n < 1 or modulus[-1] != 1:
        return False
    for k in range(1, n // 2 + 1):
        for low in range(p**k):
            g = _digits(low, p, k) + [1]
            if not _poly_rem(modulus, g, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``n`` over GF(p) with the smallest
    little-endian encoding."""
    for low in range(p**n):
        cand = _digits(low, p, n) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")  # pragma: no cover


class GF:
    """The finite field GF(p^n).

    Parameters
    ----------
    p : int
        The characteristic; must be prime.
    n : int
        Extension degree, ``n >= 1``.
    modulus : sequence of int, optional
        Monic irreducible polynomial (little-endian, length ``n + 1``).
        Defaults to the canonical one from :func:`smallest_irreducible`.
    max_q : int
        Refuse fields with more than ``max_q`` elements.
    """

    def __init__(self, p: int, n: int = 1, modulus: Sequence[int] | None = None,
                 max_q: int = DEFAULT_MAX_Q):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if not isinstance(n, int) or n < 1:
            raise FieldError(f"extension degree {n!r} must be a positive integer")
        q = p**n
        if q > min(max_q, TABLE_MAX_Q):
            raise SizeBoundError(f"GF({p}^{n}) has {q} elements, above the bound {min(max_q, TABLE_MAX_Q)}")
        self.p, self.n, self.q = p, n, q
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is not a monic irreducible of degree {n} over GF({p})")
        self.modulus = modulus
        self._pw = np.array([p**i for i in range(n)], dtype=np.int64)
        self._neg = [self._neg_raw(x) for x in range(q)]
        self._neg_np = np.array(self._neg, dtype=np.int64)
        self.generator = self._find_primitive()
        self._build_tables()

    # -- construction helpers ----------------------------------------------

    def _neg_raw(self, x: int) -> int:
        return _undigits([(-d) % self.p for d in _digits(x, self.p, self.n)], self.p)

    def _mul_raw(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        pa = _digits(a, self.p, self.n)
        pb = _digits(b, self.p, self.n)
        return _undigits(_poly_mulmod(pa, pb, self.modulus, self.p), self.p)

    def _pow_raw(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            k >>= 1
        return r

    def _find_primitive(self) -> int:
        order = self.q - 1
        primes = list(factorize(order))
        for g in range(1, self.q):
            if all(self._pow_raw(g, order // r) != 1 for r in primes):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _build_tables(self) -> None:
        q = self.q
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = self._mul_raw(x, self.generator)
        self._exp, self._log = exp, log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    # -- identity ----------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict, max_q: int = DEFAULT_MAX_Q) -> "GF":
        return cls(int(d["p"]), int(d["n"]), d.get("modulus"), max_q=max_q)

    def elements(self) -> range:
        return range(self.q)

    def check(self, x: int) -> int:
        if not (isinstance(x, (int, np.integer)) and 0 <= x < self.q):
            raise FieldMismatchError(f"{x!r} is not an element encoding of {self}")
        return int(x)

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, w = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * w
            w *= p
        return out

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k > 0:
                return 0
            if k == 0:
                return 1
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def log(self, a: int) -> int:
        """Discrete log of ``a != 0`` to the base :attr:`generator`."""
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        order = self.q - 1
        for r in factorize(order):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    # -- vectorized arithmetic (numpy int64 arrays) --------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.n == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da = (a[..., None] // self._pw) % self.p
        db = (b[..., None] // self._pw) % self.p
        return (((da + db) % self.p) * self._pw).sum(axis=-1)

    def vneg(self, a) -> np.ndarray:
        return self._neg_np[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        prod = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        return self._exp_np[(self.q - 1 - self._log_np[a]) % (self.q - 1)]

    def vpow(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            return self.vpow(self.vinv(a), -k)
        powed = self._exp_np[(self._log_np[a] * k) % (self.q - 1)]
        return np.where(a == 0, 1 if k == 0 else 0, powed)


@lru_cache(maxsize=None)
def field_create(p: int, n: int = 1, max_q: int = DEFAULT_MAX_Q) -> GF:
    """Canonical GF(p^n); repeated calls return the same context."""
    return GF(p, n, max_q=max_q)


def field_for_order(q: int, max_q: int = DEFAULT_MAX_Q) -> GF:
    p, n = prime_power(q)
    return field_create(p, n, max_q=max_q)


def primitive_element(ctx: GF) -> int:
    return ctx.generator


def subfield_elements(ctx: GF, m: int) -> frozenset[int]:
    """The subfield GF(p^m): all ``x`` with ``x**(p**m) == x``."""
    if m < 1 or ctx.n % m:
        raise FieldError(f"{m} does not divide the extension degree {ctx.n}")
    xs = np.arange(ctx.q)
    fixed = ctx.vpow(xs, ctx.p**m) == xs
    return frozenset(int(x) for x in xs[fixed])


class CubicExtension:
    """GF(q^3) as GF(q)[beta] / (cubic).

    Elements are integers ``c0 + c1*q + c2*q**2`` standing for
    ``c0 + c1*beta + c2*beta**2`` with ``c_i`` in the base field.
    """

    def __init__(self, base: GF, max_q: int = EXT_MAX_Q):
        if base.q > max_q:
            raise SizeBoundError(f"cubic extension of {base} exceeds the bound q <= {max_q}")
        self.base = base
        self.q = base.q
        self.order = self.q**3
        self.cubic = self._smallest_cubic()
        self.generator = self._find_primitive()

    def _smallest_cubic(self) -> tuple[int, int, int, int]:
        b, q = self.base, self.q
        for low in range(q**3):
            c0, c1, c2 = _digits(low, q, 3)
            if c0 == 0:
                continue
            has_root = False
            for x in range(q):
                x2 = b.mul(x, x)
                val = b.add(b.add(b.mul(x2, x), b.mul(c2, x2)), b.add(b.mul(c1, x), c0))
                if val == 0:
                    has_root = True
                    break
            if not has_root:
                return (c0, c1, c2, 1)
        raise FieldError("no irreducible cubic found")  # pragma: no cover

    def coords(self, e: int) -> tuple[int, int, int]:
        """Coordinates of ``e`` on the basis ``1, beta, beta**2``."""
        c = _digits(e, self.q, 3)
        return c[0], c[1], c[2]

    def from_coords(self, c: Sequence[int]) -> int:
        return c[0] + self.q * c[1] + self.q * self.q * c[2]

    def mul(self, x: int, y: int) -> int:
        b = self.base
        a = self.coords(x)
        c = self.coords(y)
        prod = [0] * 5
        for i in range(3):
            if a[i]:
                for j in range(3):
                    if c[j]:
                        prod[i + j] = b.add(prod[i + j], b.mul(a[i], c[j]))
        # beta^3 = -(c0 + c1 beta + c2 beta^2)
        m0, m1, m2, _ = self.cubic
        for k in (4, 3):
            lead = prod[k]
            if lead:
                prod[k] = 0
                prod[k - 3] = b.sub(prod[k - 3], b.mul(lead, m0))
                prod[k - 2] = b.sub(prod[k - 2], b.mul(lead, m1))
                prod[k - 1] = b.sub(prod[k - 1], b.mul(lead, m2))
        return self.from_coords(prod[:3])

    def pow(self, x: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            k >>= 1
        return r

    def element_order(self, x: int) -> int:
        order = self.order - 1
        for r in factorize(order):
            while order % r == 0 and self.pow(x, order // r) == 1:
                order //= r
        return order

    def _find_primitive(self) -> int:
        order = self.order - 1
        primes = list(factorize(order))
        for g in range(1, self.order):
            if all(self.pow(g, order // r) != 1 for r in primes):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def powers(self, count: int) -> list[int]:
        """``[g**0, g**1, ..., g**(count-1)]`` for the generator ``g``."""
        out = [1]
        for _ in range(count - 1):
            out.append(self.mul(out[-1], self.generator))
        return out


def cubic_extension(ctx: GF, max_q: int = EXT_MAX_Q) -> CubicExtension:
    return CubicExtension(ctx, max_q=max_q)
