"""Weil sums S(alpha, beta) = sum_x zeta^{Tr(alpha x^{p^l+1} + beta x)}.

Brute force over the whole field is the reference; the closed forms (l = 1
only) are checked against it.  Also hosts the linearized equation
alpha^{p^l} X^{p^{2l}} + alpha X = -beta^{p^l} that decides which closed form
applies, and the delta sums that enter the code lengths and weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cyclotomic import CycInt, cyc_root, g_power
from .errors import NonRationalSum, UnsupportedExponent
from .gf import FFElem, FieldCtx, cyclotomic_classes, legendre, require_enumerable


@dataclass(frozen=True)
class WeilParams:
    ctx: FieldCtx
    alpha: FFElem
    beta: FFElem
    l: int = 1
    s: int = field(init=False)

    def __post_init__(self):
        if self.ctx.is_zero(self.alpha):
            raise ValueError("alpha must be nonzero")
        if self.l < 1:
            raise ValueError(f"l must be positive, got {self.l}")
        object.__setattr__(self, "s", math.gcd(self.l, self.ctx.e))


@dataclass(frozen=True)
class SolvabilityReport:
    solvable: bool
    solutions: list[FFElem]
    count: int


def exponential_sum(p: int, exponents: np.ndarray) -> CycInt:
    """sum_k zeta^{exponents[k]}, exponents taken mod p."""
    counts = np.bincount(np.asarray(exponents, dtype=np.int64) % p, minlength=p)
    return CycInt.from_exponent_counts(p, counts.tolist())


def weil_sum_bruteforce(params: WeilParams) -> CycInt:
    ctx = params.ctx
    require_enumerable(ctx)
    xs = np.arange(ctx.q, dtype=np.int64)
    powered = ctx.pow_all(ctx.p ** params.l + 1)
    exps = ctx.trace_idx(powered, params.alpha) + ctx.trace_idx(xs, params.beta)
    return exponential_sum(ctx.p, exps)


def weil_sum(ctx: FieldCtx, alpha: FFElem, beta: FFElem, l: int = 1) -> CycInt:
    return weil_sum_bruteforce(WeilParams(ctx, alpha, beta, l))


# -- the linearized equation --

def _linearized_image(ctx: FieldCtx, alpha: FFElem, l: int, x: FFElem) -> FFElem:
    a_pl = ctx.pow(alpha, ctx.p ** l)
    return ctx.add(ctx.mul(a_pl, ctx.pow(x, ctx.p ** (2 * l))), ctx.mul(alpha, x))


def _solve_mod_p(a: list[list[int]], b: list[int], p: int):
    """Row-reduce a x = b over F_p.

    Returns (particular solution or None, list of kernel basis vectors).
    """
    rows, cols = len(a), len(a[0])
    m = [list(r) + [bi] for r, bi in zip(a, b)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(vi - f * vr) % p for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(m[i][cols] % p for i in range(r, rows)):
        return None, _kernel(m, pivots, cols, p)
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x, _kernel(m, pivots, cols, p)


def _kernel(m, pivots, cols, p):
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -m[i][f] % p
        basis.append(v)
    return basis


def solve_linearized(ctx: FieldCtx, alpha: FFElem, beta: FFElem, l: int = 1) -> list[FFElem]:
    """All solutions of alpha^{p^l} X^{p^{2l}} + alpha X = -beta^{p^l} by linear algebra."""
    basis = [ctx.from_index(ctx.p ** j) for j in range(ctx.e)]
    images = [_linearized_image(ctx, alpha, l, b).coeffs for b in basis]
    mat = [[images[j][i] for j in range(ctx.e)] for i in range(ctx.e)]
    rhs = ctx.neg(ctx.pow(beta, ctx.p ** l)).coeffs
    x0, kernel = _solve_mod_p(mat, list(rhs), ctx.p)
    if x0 is None:
        return []
    sols = []
    for combo in np.ndindex(*([ctx.p] * len(kernel))):
        v = list(x0)
        for lam, kv in zip(combo, kernel):
            v = [(a + lam * b) % ctx.p for a, b in zip(v, kv)]
        sols.append(ctx.elem(v))
    return sols


def solve_affine(ctx: FieldCtx, alpha: FFElem, beta: FFElem, l: int = 1) -> SolvabilityReport:
    """Exhaustive search for solutions of alpha^{p^l} X^{p^{2l}} + alpha X = -beta^{p^l}."""
    require_enumerable(ctx)
    p = ctx.p
    a_pl = ctx.index(ctx.pow(alpha, p ** l))
    target = ctx.index(ctx.neg(ctx.pow(beta, p ** l)))
    xs = np.arange(ctx.q, dtype=np.int64)
    lhs = ctx.add_idx(ctx.mul_idx(a_pl, ctx.pow_all(p ** (2 * l))),
                      ctx.mul_idx(ctx.index(alpha), xs))
    hits = np.nonzero(lhs == target)[0]
    s = math.gcd(l, ctx.e)
    if len(hits) not in (0, 1, p ** (2 * s)):
        raise AssertionError(f"{len(hits)} solutions violates the count invariant")
    sols = [ctx.from_index(int(i)) for i in hits]
    return SolvabilityReport(bool(sols), sols, len(sols))


# -- closed forms --

def _quadratic_phase(ctx: FieldCtx, alpha: FFElem, x0: FFElem) -> int:
    """Tr(-alpha x0^{p+1})."""
    return ctx.trace(ctx.neg(ctx.mul(alpha, ctx.pow(x0, ctx.p + 1))))


def weil_sum_closed(params: WeilParams) -> CycInt:
    ctx, alpha, beta = params.ctx, params.alpha, params.beta
    if params.l != 1:
        raise UnsupportedExponent(f"closed form implemented for l = 1 only, got l = {params.l}")
    p, e = ctx.p, ctx.e
    sols = solve_linearized(ctx, alpha, beta, 1)

    if e % 2 == 1:
        if len(sols) != 1:
            raise AssertionError("linearized map must be a permutation for odd e")
        g_e = g_power(p, e).as_cycint()
        return g_e * ctx.quad_char(alpha) * cyc_root(p, _quadratic_phase(ctx, alpha, sols[0]))

    m = e // 2
    sign = (-1) ** m
    degenerate = ctx.pow(alpha, (ctx.q - 1) // (p + 1)) == ctx.elem([sign])
    if not degenerate:
        if len(sols) != 1:
            raise AssertionError("linearized map must be a permutation here")
        return sign * p ** m * cyc_root(p, _quadratic_phase(ctx, alpha, sols[0]))
    if not sols:
        return CycInt.zero(p)
    phases = {_quadratic_phase(ctx, alpha, x) for x in sols}
    if len(phases) != 1:
        raise AssertionError(f"solutions disagree on Tr(-alpha x^(p+1)): {sorted(phases)}")
    return -sign * p ** (m + 1) * cyc_root(p, phases.pop())


def s_y_minus_y_closed(p: int, e: int, y: int) -> CycInt:
    """Closed form of S(y, -y) for y in F_p^*."""
    phase = -e * y * pow(4, -1, p) % p
    root = cyc_root(p, phase)
    if e % 2 == 1:
        return g_power(p, e).as_cycint() * legendre(y, p) * root
    if e % 4 == 2:
        return -p ** (e // 2) * root
    return -p ** (e // 2 + 1) * root


# -- delta sums --

def _rational(v: CycInt, what: str) -> int:
    n = v.as_int()
    if n is None:
        raise NonRationalSum(f"{what} = {v!r} is not rational")
    return n


def _class_kernel(p: int, i: int, y: int) -> CycInt:
    """sum_{c in C_i} zeta^{-c y}."""
    counts = [0] * p
    for c in cyclotomic_classes(p)[i]:
        counts[-c * y % p] += 1
    return CycInt.from_exponent_counts(p, counts)


def delta1(ctx: FieldCtx, i: int) -> int:
    """sum_{c in C_i} sum_{y in F_p^*} zeta^{-cy} S(y, -y), by enumeration."""
    require_enumerable(ctx)
    p = ctx.p
    total = CycInt.zero(p)
    for y in range(1, p):
        s = weil_sum(ctx, ctx.elem(y), ctx.elem(-y))
        total = total + _class_kernel(p, i, y) * s
    return _rational(total, f"delta1 at (p={p}, e={ctx.e}, i={i})")


def delta1_closed(p: int, e: int, i: int) -> int:
    sgn = (-1) ** i
    eta_m1 = legendre(-1, p)
    if e % 2 == 1:
        g = g_power(p, e + 1).value()
        if e % p == 0:
            return sgn * eta_m1 * (p - 1) // 2 * g
        return -((sgn + legendre(e, p)) * eta_m1 * g) // 2
    half = p ** (e // 2) if e % 4 == 2 else p ** (e // 2 + 1)
    if e % p == 0:
        return (p - 1) // 2 * half
    return -((sgn * legendre(-e, p) * p + 1) * half) // 2


def delta2(ctx: FieldCtx, i: int, a: FFElem) -> int:
    """sum_{c in C_i} sum_{z in F_p^*} sum_x zeta^{Tr(a z x)}, by enumeration."""
    require_enumerable(ctx)
    p = ctx.p
    xs = np.arange(ctx.q, dtype=np.int64)
    total = CycInt.zero(p)
    n_class = len(cyclotomic_classes(p)[i])
    for z in range(1, p):
        total = total + exponential_sum(p, ctx.trace_idx(xs, ctx.scale(z, a))) * n_class
    return _rational(total, "delta2")


def delta3(ctx: FieldCtx, i: int, a: FFElem) -> int:
    """sum_{c in C_i} sum_y zeta^{-cy} sum_z S(y, a z - y), by enumeration."""
    require_enumerable(ctx)
    p = ctx.p
    total = CycInt.zero(p)
    for y in range(1, p):
        inner = CycInt.zero(p)
        for z in range(1, p):
            beta = ctx.sub(ctx.scale(z, a), ctx.elem(y))
            inner = inner + weil_sum(ctx, ctx.elem(y), beta)
        total = total + _class_kernel(p, i, y) * inner
    return _rational(total, "delta3")


def weight_from_deltas(ctx: FieldCtx, i: int, a: FFElem) -> int:
    """wt(c(a)) = (p-1)^2/2 p^{e-2} + delta1/p - (delta1 + delta3)/p^2, for a != 0."""
    p, e = ctx.p, ctx.e
    d1 = delta1(ctx, i)
    d3 = delta3(ctx, i, a)
    w = Fraction((p - 1) ** 2 * p ** e, 2 * p * p) + Fraction(d1, p) - Fraction(d1 + d3, p * p)
    if w.denominator != 1:
        raise NonRationalSum(f"weight {w} is not an integer")
    return int(w)
