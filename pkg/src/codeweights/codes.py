"""Trace codes C_D = {(Tr(a x))_{x in D} : a in F_q} and their weight distributions."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import WorkBudgetExceeded
from .gf import FFElem, FieldCtx, cyclotomic_classes, require_enumerable

DEFAULT_BUDGET = 10 ** 9


@dataclass(frozen=True)
class DefiningSet:
    ctx: FieldCtx
    class_index: int
    indices: np.ndarray  # field indices of the members, ascending

    def __len__(self) -> int:
        return len(self.indices)

    @cached_property
    def elements(self) -> list[FFElem]:
        return [self.ctx.from_index(int(i)) for i in self.indices]


def trace_classes(ctx: FieldCtx) -> np.ndarray:
    """Tr(x^{p+1} - x) for every x, indexed by x."""
    require_enumerable(ctx)
    return (ctx.trace_idx(ctx.pow_all(ctx.p + 1)) - ctx.trace_all) % ctx.p


def defining_set(ctx: FieldCtx, i: int) -> DefiningSet:
    """D_i = {x : Tr(x^{p+1} - x) lies in the i-th cyclotomic class of order 2}."""
    if i not in (0, 1):
        raise ValueError(f"class index must be 0 or 1, got {i}")
    vals = trace_classes(ctx)
    member = np.zeros(ctx.p, dtype=bool)
    member[cyclotomic_classes(ctx.p)[i]] = True
    return DefiningSet(ctx, i, np.nonzero(member[vals])[0])


def codeword(ctx: FieldCtx, a: FFElem, D: DefiningSet) -> np.ndarray:
    """c(a) = (Tr(a x))_{x in D}, coordinates in D order."""
    return ctx.trace_idx(D.indices, a)


@dataclass(frozen=True)
class WeightDistribution:
    p: int
    n: int
    k: int
    counts: dict[int, int]  # weight -> number of codewords, ascending

    @property
    def d(self) -> int | None:
        positive = [w for w in self.counts if w > 0]
        return min(positive) if positive else None

    @property
    def params(self) -> tuple[int, int, int | None]:
        return self.n, self.k, self.d

    def enumerator(self) -> list[tuple[int, int]]:
        return enumerator_polynomial(self)

    def check(self) -> None:
        total = sum(self.counts.values())
        if total != self.p ** self.k:
            raise AssertionError(f"multiplicities sum to {total}, not {self.p}^{self.k}")
        if self.counts.get(0) != 1:
            raise AssertionError("weight 0 must occur exactly once")
        if any(w < 0 or w > self.n for w in self.counts):
            raise AssertionError("weight outside [0, n]")


def _from_weights(p: int, n: int, e: int, weights: np.ndarray) -> WeightDistribution:
    """Collapse per-a weights (all p^e messages) into the code's distribution."""
    kernel = int(np.count_nonzero(weights == 0))
    dim_kernel = round(math.log(kernel, p))
    if p ** dim_kernel != kernel:
        raise AssertionError(f"kernel size {kernel} is not a power of {p}")
    hist = Counter(weights.tolist())
    counts = {}
    for w in sorted(hist):
        if hist[w] % kernel:
            raise AssertionError("weight class not a union of kernel cosets")
        counts[int(w)] = hist[w] // kernel
    wd = WeightDistribution(p, n, e - dim_kernel, counts)
    wd.check()
    return wd


def _zero_counts(ctx: FieldCtx, buckets: np.ndarray) -> np.ndarray:
    """For every a, sum_v buckets[v] * [v . a == 0] over F_p^e.

    Processes one coordinate at a time: the trailing axis tracks the partial
    dot product t, so each step costs O(q p^2) integer additions.
    """
    p, e = ctx.p, ctx.e
    shape = (p,) * e
    f = np.zeros(shape + (p,), dtype=np.int64)
    f[..., 0] = buckets.reshape(shape)
    for axis in range(e):
        g = np.zeros_like(f)
        slices = [np.take(f, v, axis=axis) for v in range(p)]
        for a in range(p):
            acc = np.zeros_like(slices[0])
            for v in range(p):
                acc += np.roll(slices[v], a * v % p, axis=-1)
            idx = [slice(None)] * (e + 1)
            idx[axis] = a
            g[tuple(idx)] = acc
        f = g
    return f[..., 0].reshape(-1)


def weight_distribution(ctx: FieldCtx, D: DefiningSet,
                        budget: int = DEFAULT_BUDGET) -> WeightDistribution:
    """Exact weight distribution of C_D.

    Elements of D are bucketed by v(x) = (Tr(b_j x))_j for the power basis
    b_j = x^j; then Tr(a x) = v(x) . coords(a), so the number of zero
    coordinates of c(a) is the bucket mass on the hyperplane orthogonal to a.
    """
    cost = ctx.q * len(D)
    if cost > budget:
        raise WorkBudgetExceeded(f"p^e * |D| = {cost} exceeds budget {budget}")
    basis_traces = np.stack([ctx.trace_idx(D.indices, ctx.from_index(ctx.p ** j))
                             for j in range(ctx.e)], axis=1)
    buckets = np.bincount(ctx.to_index(basis_traces), minlength=ctx.q)
    zeros = _zero_counts(ctx, buckets)
    return _from_weights(ctx.p, len(D), ctx.e, len(D) - zeros)


def weight_distribution_direct(ctx: FieldCtx, D: DefiningSet,
                               budget: int = DEFAULT_BUDGET) -> WeightDistribution:
    """Same distribution by computing every codeword in full."""
    cost = ctx.q * len(D)
    if cost > budget:
        raise WorkBudgetExceeded(f"p^e * |D| = {cost} exceeds budget {budget}")
    p = ctx.p
    traces = np.stack([ctx.trace_idx(D.indices, ctx.from_index(p ** j))
                       for j in range(ctx.e)], axis=0)
    weights = np.empty(ctx.q, dtype=np.int64)
    chunk = max(1, 2 ** 22 // max(1, len(D)))
    for start in range(0, ctx.q, chunk):
        a = ctx.coords[start:start + chunk]
        words = (a @ traces) % p
        weights[start:start + chunk] = np.count_nonzero(words, axis=1)
    return _from_weights(p, len(D), ctx.e, weights)


def enumerator_polynomial(wd: WeightDistribution) -> list[tuple[int, int]]:
    return [(w, a) for w, a in sorted(wd.counts.items()) if a]


def format_enumerator(pairs: list[tuple[int, int]]) -> str:
    terms = []
    for w, a in pairs:
        if w == 0:
            terms.append(str(a))
        else:
            terms.append(("" if a == 1 else str(a)) + f"z^{w}")
    return "+".join(terms)


def distribution_csv(wd: WeightDistribution) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["weight", "multiplicity"])
    writer.writerows(enumerator_polynomial(wd))
    return buf.getvalue()


@dataclass(frozen=True)
class GriesmerVerdict:
    bound_n: int
    passes: bool
    next_passes: bool
    classification: str


def griesmer_bound(k: int, d: int, q: int) -> int:
    return sum(-(-d // q ** i) for i in range(k))


def griesmer(wd: WeightDistribution) -> GriesmerVerdict:
    """Griesmer check for [n,k,d], [n,k,d+1] and [n,k,d+2].

    The bound is only a necessary condition, hence the "candidate" labels.
    """
    n, k, d = wd.params
    if k < 1 or d is None:
        raise ValueError("Griesmer bound needs k >= 1")
    bound = griesmer_bound(k, d, wd.p)
    plus1 = n >= griesmer_bound(k, d + 1, wd.p)
    plus2 = n >= griesmer_bound(k, d + 2, wd.p)
    if not plus1:
        cls = "griesmer-optimal-candidate"
    elif not plus2:
        cls = "almost-optimal-candidate"
    else:
        cls = "inconclusive"
    return GriesmerVerdict(bound, n >= bound, plus1, cls)


@dataclass(frozen=True)
class WeightRatio:
    wt_min: int
    wt_max: int
    exceeds: bool  # wt_min / wt_max > (p-1)/p

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.wt_min, self.wt_max)


def wt_ratio(wd: WeightDistribution) -> WeightRatio:
    positive = [w for w, a in wd.counts.items() if w > 0 and a]
    if not positive:
        raise ValueError("wt_ratio needs k >= 1")
    lo, hi = min(positive), max(positive)
    return WeightRatio(lo, hi, Fraction(lo, hi) > Fraction(wd.p - 1, wd.p))
