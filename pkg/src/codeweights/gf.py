"""Arithmetic in F_p and F_{p^e}.

Elements of F_{p^e} are coefficient vectors over F_p (constant term first)
reduced modulo a monic irreducible polynomial.  Every element also has an
integer *index* ``sum(c_j * p**j)``; the field is enumerated in index order,
so coordinate 0 varies fastest.

Two arithmetic paths exist.  The methods on :class:`FieldCtx` work on single
:class:`FFElem` values through plain polynomial arithmetic.  The ``*_all`` /
``*_idx`` helpers work on whole numpy index arrays through log/antilog
tables and are what the enumeration code uses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DegreeTooLarge,
    FieldMismatch,
    FieldTooLarge,
    NonPrime,
    ReducibleModulus,
    ZeroArgument,
    ZeroInverse,
)

MAX_DEGREE = 16
# largest field the exhaustive oracles are allowed to walk
BRUTE_FORCE_LIMIT = 1 << 20
# largest field for which index tables are built at all
TABLE_LIMIT = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
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


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p, coefficient lists with the constant term first --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_mod(out, m, p)


def _poly_powmod(a: list[int], n: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), m, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        n >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Degrees up to 3 are irreducible iff rootless.  In general a degree-e
    polynomial m is irreducible iff gcd(x^{p^k} - x, m) = 1 for k <= e/2.
    """
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p != 1:
        return False
    if e == 1:
        return True
    if e <= 3:
        return all(
            sum(c * pow(r, j, p) for j, c in enumerate(modulus)) % p != 0
            for r in range(p)
        )
    xpk = [0, 1]
    for _ in range(1, e // 2 + 1):
        xpk = _poly_powmod(xpk, p, modulus, p)
        diff = list(xpk) + [0] * max(0, 2 - len(xpk))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(list(modulus), diff, p)
        if len(g) != 1:
            return False
    return True


def irreducible_polys(p: int, e: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducible polynomials of degree e in lexicographic order.

    Coefficients are compared constant term first.
    """
    for low in itertools.product(range(p), repeat=e):
        if e > 1 and low[0] == 0:
            continue
        m = tuple(low) + (1,)
        if is_irreducible(m, p):
            yield m


def legendre(c: int, p: int) -> int:
    """Quadratic character of F_p, computed as c^{(p-1)/2}."""
    c %= p
    if c == 0:
        return 0
    return 1 if pow(c, (p - 1) // 2, p) == 1 else -1


def cyclotomic_class(c: int, p: int) -> int:
    """0 for nonzero squares mod p, 1 for non-squares."""
    if c % p == 0:
        raise ZeroArgument("cyclotomic class of 0 is undefined")
    return 0 if legendre(c, p) == 1 else 1


def cyclotomic_classes(p: int) -> tuple[list[int], list[int]]:
    squares = sorted({x * x % p for x in range(1, p)})
    others = [c for c in range(1, p) if c not in squares]
    return squares, others


@dataclass(frozen=True, slots=True)
class FFElem:
    coeffs: tuple[int, ...]
    field: tuple  # (p, modulus) of the owning context

    def __repr__(self) -> str:
        return f"FFElem({list(self.coeffs)})"


class FieldCtx:
    """The field F_{p^e} with a fixed modulus.

    Immutable after construction; the lazily built lookup tables are pure
    functions of (p, modulus), so contexts can be shared freely.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int] | None = None):
        if not is_prime(p) or p < 3:
            raise NonPrime(f"p must be an odd prime, got {p}")
        if e < 1:
            raise ValueError(f"degree must be >= 1, got {e}")
        if e > MAX_DEGREE:
            raise DegreeTooLarge(f"degree {e} exceeds the cap {MAX_DEGREE}")
        if modulus is None:
            modulus = next(irreducible_polys(p, e))
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ReducibleModulus(
                    f"modulus must be monic of degree {e}, got {list(modulus)}")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus: tuple[int, ...] = tuple(modulus)
        self.key = (p, self.modulus)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __reduce__(self):
        return (FieldCtx, (self.p, self.e, self.modulus))

    # -- element construction --

    def elem(self, coeffs: Iterable[int] | int) -> FFElem:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.e:
            c = _poly_mod(c, self.modulus, self.p)
        c = c + [0] * (self.e - len(c))
        return FFElem(tuple(c), self.key)

    def zero(self) -> FFElem:
        return self.elem([])

    def one(self) -> FFElem:
        return self.elem([1])

    def gen(self) -> FFElem:
        """The class of x modulo the modulus."""
        return self.elem([0, 1])

    def from_index(self, idx: int) -> FFElem:
        c = []
        for _ in range(self.e):
            idx, r = divmod(idx, self.p)
            c.append(r)
        return FFElem(tuple(c), self.key)

    def index(self, a: FFElem) -> int:
        self._check(a)
        return sum(c * self.p ** j for j, c in enumerate(a.coeffs))

    def enumerate(self) -> Iterator[FFElem]:
        """All q elements in index order."""
        for idx in range(self.q):
            yield self.from_index(idx)

    def _check(self, *elems: FFElem) -> None:
        for a in elems:
            if a.field != self.key:
                raise FieldMismatch(f"{a!r} does not belong to {self!r}")

    # -- arithmetic on single elements --

    def add(self, a: FFElem, b: FFElem) -> FFElem:
        self._check(a, b)
        return FFElem(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)), self.key)

    def sub(self, a: FFElem, b: FFElem) -> FFElem:
        self._check(a, b)
        return FFElem(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)), self.key)

    def neg(self, a: FFElem) -> FFElem:
        self._check(a)
        return FFElem(tuple(-x % self.p for x in a.coeffs), self.key)

    def scale(self, lam: int, a: FFElem) -> FFElem:
        self._check(a)
        return FFElem(tuple(lam * x % self.p for x in a.coeffs), self.key)

    def mul(self, a: FFElem, b: FFElem) -> FFElem:
        self._check(a, b)
        return self.elem(_poly_mulmod(list(a.coeffs), list(b.coeffs), self.modulus, self.p))

    def pow(self, a: FFElem, n: int) -> FFElem:
        self._check(a)
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: FFElem) -> FFElem:
        self._check(a)
        if not any(a.coeffs):
            raise ZeroInverse("0 has no inverse")
        return self.pow(a, self.q - 2)

    def is_zero(self, a: FFElem) -> bool:
        return not any(a.coeffs)

    def frobenius(self, a: FFElem) -> FFElem:
        return self.pow(a, self.p)

    def trace_by_frobenius(self, a: FFElem) -> int:
        """Absolute trace a + a^p + ... + a^{p^{e-1}} summed literally."""
        self._check(a)
        total = self.zero()
        cur = a
        for _ in range(self.e):
            total = self.add(total, cur)
            cur = self.frobenius(cur)
        if any(total.coeffs[1:]):
            raise AssertionError(f"trace of {a!r} left the prime field")
        return total.coeffs[0]

    @cached_property
    def _trace_basis(self) -> tuple[int, ...]:
        return tuple(self.trace_by_frobenius(self.from_index(self.p ** j))
                     for j in range(self.e))

    def trace(self, a: FFElem) -> int:
        """Absolute trace, returned as an int mod p.

        Uses F_p-linearity: Tr(a) = sum_j a_j Tr(x^j).
        """
        self._check(a)
        return sum(c * t for c, t in zip(a.coeffs, self._trace_basis)) % self.p

    def legendre(self, c: int) -> int:
        return legendre(c, self.p)

    def cyclotomic_class(self, c: int) -> int:
        return cyclotomic_class(c, self.p)

    def quad_char(self, a: FFElem) -> int:
        """Quadratic character of F_q via a^{(q-1)/2}."""
        self._check(a)
        if self.is_zero(a):
            return 0
        r = self.pow(a, (self.q - 1) // 2)
        if r == self.one():
            return 1
        if r == self.elem([-1]):
            return -1
        raise AssertionError(f"{a!r}^((q-1)/2) is not +-1")

    # -- index tables --

    @cached_property
    def coords(self) -> np.ndarray:
        """(q, e) array; row idx holds the coefficients of element idx."""
        if self.q > TABLE_LIMIT:
            raise FieldTooLarge(f"q = {self.q} exceeds {TABLE_LIMIT}")
        idx = np.arange(self.q, dtype=np.int64)
        out = np.empty((self.q, self.e), dtype=np.int64)
        for j in range(self.e):
            idx, out[:, j] = np.divmod(idx, self.p)
        return out

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.e, dtype=np.int64)

    def to_index(self, coords: np.ndarray) -> np.ndarray:
        return (np.asarray(coords) % self.p) @ self._place

    def _mul_matrix(self, a: FFElem) -> np.ndarray:
        """Matrix of u -> a*u acting on coordinate column vectors."""
        cols = []
        basis_j = self.one()
        x = self.gen()
        for _ in range(self.e):
            cols.append(self.mul(a, basis_j).coeffs)
            basis_j = self.mul(basis_j, x)
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def primitive(self) -> FFElem:
        """First primitive element in enumeration order."""
        order = self.q - 1
        factors = prime_factors(order)
        for idx in range(1, self.q):
            g = self.from_index(idx)
            if all(self.pow(g, order // f) != self.one() for f in factors):
                return g
        raise AssertionError("no primitive element found")

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        order = self.q - 1
        g = self.primitive
        exp_c = np.zeros((order, self.e), dtype=np.int64)
        exp_c[0, 0] = 1
        filled = 1
        step = g
        # doubling: exp[filled + k] = g^filled * exp[k]
        while filled < order:
            take = min(filled, order - filled)
            mat = self._mul_matrix(step)
            exp_c[filled:filled + take] = (exp_c[:take] @ mat.T) % self.p
            filled += take
            step = self.pow(g, filled)
        exp = self.to_index(exp_c)
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("log table incomplete; generator is not primitive")
        return exp, log

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp_log[0]

    @property
    def log_table(self) -> np.ndarray:
        return self._exp_log[1]

    def mul_idx(self, a: np.ndarray | int, b: np.ndarray | int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        exp, log = self._exp_log
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def add_idx(self, a: np.ndarray | int, b: np.ndarray | int) -> np.ndarray:
        c = self.coords
        return self.to_index(c[np.asarray(a)] + c[np.asarray(b)])

    def neg_idx(self, a: np.ndarray | int) -> np.ndarray:
        return self.to_index(-self.coords[np.asarray(a)])

    def pow_all(self, n: int) -> np.ndarray:
        """Index of x^n for every x, as an array indexed by x."""
        exp, log = self._exp_log
        out = np.empty(self.q, dtype=np.int64)
        out[1:] = exp[(log[1:] * (n % (self.q - 1))) % (self.q - 1)]
        out[0] = 0 if n > 0 else 1
        return out

    def trace_form(self, a: FFElem) -> np.ndarray:
        """Vector t with Tr(a*u) = coords(u) . t mod p."""
        mat = self._mul_matrix(a)
        return (np.array(self._trace_basis, dtype=np.int64) @ mat) % self.p

    def trace_idx(self, u: np.ndarray, a: FFElem | None = None) -> np.ndarray:
        """Tr(a*u) for an index array u (a defaults to 1)."""
        t = self.trace_form(self.one() if a is None else a)
        return (self.coords[np.asarray(u)] @ t) % self.p

    @cached_property
    def trace_all(self) -> np.ndarray:
        return (self.coords @ np.array(self._trace_basis, dtype=np.int64)) % self.p


def field_new(p: int, e: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    return FieldCtx(p, e, modulus)


def require_enumerable(ctx: FieldCtx, limit: int = BRUTE_FORCE_LIMIT) -> None:
    if ctx.q > limit:
        raise FieldTooLarge(f"q = {ctx.q} exceeds the brute-force limit {limit}")
