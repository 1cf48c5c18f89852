"""Exact arithmetic in Z[zeta_p].

A :class:`CycInt` stores integer coordinates in the basis
1, zeta, ..., zeta^{p-2}; zeta^{p-1} is rewritten as -(1 + zeta + ... +
zeta^{p-2}).  The representation is canonical, so equality is equality of
coefficient tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import OddExponentValue, PrimeMismatch
from .gf import cyclotomic_classes, is_prime, legendre


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Sequence[int]):
        if len(coeffs) != p - 1:
            raise ValueError(f"need {p - 1} coordinates, got {len(coeffs)}")
        self.p = p
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Sequence[int]) -> CycInt:
        """sum_k counts[k] * zeta^k for k in 0..p-1."""
        counts = [int(c) for c in counts]
        counts += [0] * (p - len(counts))
        top = counts[p - 1]
        return cls(p, [counts[k] - top for k in range(p - 1)])

    @classmethod
    def integer(cls, p: int, n: int) -> CycInt:
        return cls(p, [n] + [0] * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycInt:
        return cls.integer(p, 0)

    def expand(self) -> list[int]:
        """Length-p exponent vector (last entry 0)."""
        return list(self.coeffs) + [0]

    def _coerce(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.p != self.p:
            raise PrimeMismatch(f"Z[zeta_{self.p}] vs Z[zeta_{other.p}]")
        return other

    def __add__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycInt:
        return (-self) + other

    def __mul__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        acc[(i + j) % p] += a * b
        return CycInt.from_exponent_counts(p, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            raise ValueError("negative powers are not in Z[zeta]")
        result = CycInt.integer(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == CycInt.integer(self.p, other).coeffs
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"CycInt[p={self.p}](" + (" + ".join(terms) or "0") + ")"

    def as_int(self) -> int | None:
        """The integer n if self == n, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def galois(self, a: int) -> CycInt:
        """Image under zeta -> zeta^a."""
        if a % self.p == 0:
            raise ValueError("a must be a unit mod p")
        acc = [0] * self.p
        for k, c in enumerate(self.coeffs):
            acc[k * a % self.p] += c
        return CycInt.from_exponent_counts(self.p, acc)


def cyc_root(p: int, k: int) -> CycInt:
    """zeta_p^k in canonical form."""
    counts = [0] * p
    counts[k % p] = 1
    return CycInt.from_exponent_counts(p, counts)


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def cyc_neg(a: CycInt) -> CycInt:
    return -a


def cyc_is_rational(a: CycInt) -> int | None:
    return a.as_int()


def cyc_sum(p: int, terms: Iterable[CycInt]) -> CycInt:
    acc = CycInt.zero(p)
    for t in terms:
        acc = acc + t
    return acc


def gauss_sum(p: int) -> CycInt:
    """Quadratic Gauss sum sum_v eta(v) zeta^v over F_p."""
    return CycInt.from_exponent_counts(p, [legendre(v, p) for v in range(p)])


def gaussian_period(i: int, p: int) -> CycInt:
    """Sum of zeta^x over the squares (i=0) or non-squares (i=1) of F_p^*."""
    if i not in (0, 1):
        raise ValueError(f"class index must be 0 or 1, got {i}")
    cls = cyclotomic_classes(p)[i]
    counts = [0] * p
    for x in cls:
        counts[x] = 1
    return CycInt.from_exponent_counts(p, counts)


def p_star(p: int) -> int:
    return legendre(-1, p) * p


class SignedPrimePower:
    """Symbolic power G^k of the Gauss sum G = sqrt(p*).

    Only even k have an integer value ((p*)^{k/2}); asking for the value of an
    odd power raises :class:`OddExponentValue`.
    """

    __slots__ = ("p", "k")

    def __init__(self, p: int, k: int):
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        self.p = p
        self.k = k

    @property
    def star_sign(self) -> int:
        return legendre(-1, self.p)

    @property
    def base(self) -> int:
        return p_star(self.p)

    @property
    def is_integral(self) -> bool:
        return self.k % 2 == 0 and self.k >= 0

    def value(self) -> int:
        if self.k % 2:
            raise OddExponentValue(f"G^{self.k} for p={self.p} is not rational")
        if self.k < 0:
            raise OddExponentValue(f"G^{self.k} for p={self.p} is not an integer")
        return self.base ** (self.k // 2)

    def rational(self) -> Fraction:
        """Exact value for even k, including negative k."""
        if self.k % 2:
            raise OddExponentValue(f"G^{self.k} for p={self.p} is not rational")
        return Fraction(self.base) ** (self.k // 2)

    def as_cycint(self) -> CycInt:
        if self.k < 0:
            raise ValueError("negative powers of G are not in Z[zeta]")
        half, odd = divmod(self.k, 2)
        v = CycInt.integer(self.p, self.base ** half)
        return v * gauss_sum(self.p) if odd else v

    def __mul__(self, other: SignedPrimePower) -> SignedPrimePower:
        if other.p != self.p:
            raise PrimeMismatch(f"G powers for p={self.p} and p={other.p}")
        return SignedPrimePower(self.p, self.k + other.k)

    def __repr__(self) -> str:
        return f"G[p={self.p}]^{self.k}"


def g_power(p: int, k: int) -> SignedPrimePower:
    return SignedPrimePower(p, k)
