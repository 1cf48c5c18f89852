"""Closed-form lengths, counting functions and weight tables for C_{D_i}.

Every table row is a sum of terms ``coef * p**a * G**b`` with G the quadratic
Gauss sum, evaluated exactly.  Rows are transcribed as printed; rows that
need an odd power of G, or that come out fractional or negative, are kept as
anomalies instead of being repaired.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .codes import (
    DEFAULT_BUDGET,
    GriesmerVerdict,
    WeightDistribution,
    WeightRatio,
    defining_set,
    griesmer,
    weight_distribution,
    wt_ratio,
)
from .cyclotomic import g_power
from .errors import BranchUnavailable, OddExponentValue, OutOfScope
from .gf import FieldCtx, is_prime, legendre, require_enumerable

F = Fraction


# -- case analysis --

@dataclass(frozen=True)
class CaseKey:
    p: int
    e: int
    i: int
    e_parity: int
    e_mod4: int
    p_divides_e: bool
    legendre_e: int
    legendre_neg_e: int
    eta_minus1: int
    theorem: int  # dispatch on (-e/p) for e even, as in the table captions
    statement_theorem: int  # dispatch on (e/p), as in the theorem statements

    @property
    def table(self) -> int:
        return self.theorem


def classify(p: int, e: int, i: int) -> CaseKey:
    if not is_prime(p) or p < 3:
        raise OutOfScope(f"p must be an odd prime, got {p}")
    if e < 2:
        raise OutOfScope(f"the theorems need e >= 2, got e = {e}")
    if i not in (0, 1):
        raise OutOfScope(f"class index must be 0 or 1, got {i}")
    sgn = (-1) ** i
    leg_e = legendre(e, p)
    leg_ne = legendre(-e, p)
    divides = e % p == 0
    if e % 2 == 1:
        base = 1
        by_statement = by_caption = 0 if divides else (1 if leg_e == sgn else 2)
    else:
        base = 4 if e % 4 == 2 else 7
        by_statement = 0 if divides else (1 if leg_e == sgn else 2)
        by_caption = 0 if divides else (1 if leg_ne == sgn else 2)
    return CaseKey(p, e, i, e % 2, e % 4, divides, leg_e, leg_ne, legendre(-1, p),
                   base + by_caption, base + by_statement)


# -- exact term evaluation --

@dataclass(frozen=True)
class Term:
    coef: Fraction
    p_pow: int = 0
    g_pow: int = 0


def t(coef, p_pow: int = 0, g_pow: int = 0) -> Term:
    return Term(F(coef), p_pow, g_pow)


def evaluate(p: int, terms: list[Term]) -> Fraction:
    """Exact value of a sum of terms; raises OddExponentValue on odd G powers."""
    total = F(0)
    for term in terms:
        if term.coef == 0:
            continue
        total += term.coef * F(p) ** term.p_pow * g_power(p, term.g_pow).rational()
    return total


def _as_int(v: Fraction, what: str) -> int:
    if v.denominator != 1:
        raise ArithmeticError(f"{what} = {v} is not an integer")
    return int(v)


# -- lengths --

def length_closed(p: int, e: int, i: int) -> int:
    """n_i = |D_i| by the closed form."""
    sgn, base = (-1) ** i, [t(F(p - 1, 2), e - 1)]
    if e % 2 == 1:
        if e % p == 0:
            extra = [t(sgn * F(p - 1, 2), 0, e - 1)]
        else:
            extra = [t(-F(sgn + legendre(e, p), 2), 0, e - 1)]
    else:
        h = e // 2 - 1 if e % 4 == 2 else e // 2
        if e % p == 0:
            extra = [t(F(p - 1, 2), h)]
        else:
            extra = [t(-F(sgn * legendre(-e, p) * p + 1, 2), h)]
    return _as_int(evaluate(p, base + extra), f"n_{i}")


def claimed_length(theorem: int, p: int, e: int, i: int) -> int:
    """Code length asserted in the statement of the given theorem."""
    sgn, h1 = (-1) ** i, legendre(-1, p)
    base = [t(F(p - 1, 2), e - 1)]
    extra = {
        1: [t(sgn * F(p - 1, 2), 0, e - 1)],
        2: [t(-sgn, 0, e - 1)],
        3: [],
        4: [t(F(p - 1, 2), e // 2 - 1)],
        5: [t(-F(1 + h1 * p, 2), e // 2 - 1)],
        6: [t(-F(1 - h1 * p, 2), e // 2 - 1)],
        7: [t(F(p - 1, 2), e // 2)],
        8: [t(-F(1 + h1 * p, 2), e // 2)],
        9: [t(-F(1 - h1 * p, 2), e // 2)],
    }[theorem]
    return _as_int(evaluate(p, base + extra), f"Theorem {theorem} length")


# -- the nine tables --

def _table_rows(p: int, e: int, i: int, table: int) -> list[tuple[list[Term], list[Term]]]:
    s, h = (-1) ** i, legendre(-1, p)
    B = [t(F((p - 1) ** 2, 2), e - 2)]
    H = e // 2 - 1
    E = e // 2
    q1 = F(p - 1, 2)
    sq4 = F((p - 1) ** 2, 4)
    if table == 1:
        w2 = B + [t(s * q1, 0, e - 1)]
        return [
            (B, [t(1, e - 2), t(-1)]),
            (w2, [t(p - 1, e - 2)]),
            (w2 + [t(s * q1, 0, e - 3)],
             [t(q1, e - 2), t(-s * q1, 0, e - 1), t((1 - h) * sq4, e - 2)]),
            (w2 + [t(-s * q1, 0, e - 3)],
             [t(q1, e - 1), t(s * q1, 0, e - 1), t((1 + h) * sq4, e - 2)]),
            (w2 + [t(-s * F(p + 1, 2), 0, e + 3)], [t(F((p - 1) ** 2, 2), e - 2)]),
        ]
    if table == 2:
        w2 = B + [t(-s, 0, e - 1)]
        return [
            (B, [t(1, e - 2), t(-1), t(s * h * (p - 1), 0, e - 3)]),
            (w2, [t(p - 1, e - 2), t(-s * h * (p - 1), 0, e - 3)]),
            (w2 + [t(-s * h * q1, 0, e - 3)], [t(sq4, e - 2), t(-s * h * sq4, 0, e - 3)]),
            (w2 + [t(s * h * q1, 0, e - 3)],
             [t(F((p - 1) * (p + 3), 4), e - 2), t(s * h * 3 * sq4, 0, e - 3)]),
            (w2 + [t(s * h * F(p + 1, 2), 0, e - 3)],
             [t(F(p * p - 1, 4), e - 2), t(-s * h * F(p * p - 1, 4), 0, e - 3)]),
            (w2 + [t(-s * h * F(p + 1, 2), 0, e - 3)],
             [t(F((p - 1) * (p - 3), 4), e - 2), t(-s * h * F((p - 1) * (p - 3), 4), 0, e - 3)]),
        ]
    if table == 3:
        return [
            (B, [t(1, e - 1), t(-1)]),
            (B + [t(s * h * q1, 0, e - 3)],
             [t(F(p * p - 1, 4), e - 2), t(s * h * F(p * p - 1, 4), 0, e - 3)]),
            (B + [t(-s * h * q1, 0, e - 3)],
             [t(F(p * p - 1, 4), e - 2), t(-s * h * F((p - 1) * (3 * p - 1), 4), 0, e - 3)]),
            (B + [t(-s * F(p + 1, 2), 0, e - 3)], [t(sq4, e - 2), t(s * h * sq4, 0, e - 3)]),
            (B + [t(s * F(p + 1, 2), 0, e - 3)], [t(sq4, e - 2), t(s * h * sq4, 0, e - 3)]),
        ]
    if table == 4:
        return [
            (B, [t(F(p + 1, 2), e - 2), t(-1), t(-q1, H)]),
            (B + [t(q1, H)], [t(F(p * p - 1, 2), e - 2)]),
            (B + [t(p - 1, H)], [t(q1, e - 2), t(q1, H)]),
            (B + [t(F(p - 3, 2), H)], [t(F((p - 1) ** 2, 2), e - 2)]),
        ]
    if table == 5:
        return [
            (B, [t(1, e - 2), t(-1)]),
            (B + [t(-F(p + 1, 2), H)], [t(F(p * p - 1, 2), e - 2), t(-(p - 1), H)]),
            (B + [t(-F(p + 3, 2), H)],
             [t(F((p - 1) * (p - 3), 4), e - 2), t(-F((p - 1) * (p - 3), 4), H)]),
            (B + [t(-q1, H)], [t(F(p * p - 1, 4), e - 2), t(F(p * p - 1, 4), H)]),
            (B + [t(-1, H)], [t(p - 1, e - 2)]),
        ]
    if table == 6:
        return [
            (B, [t(1, e - 1), t(-1)]),
            (B + [t(q1, H)], [t(F(p * p - 1, 2), e - 2)]),
            (B + [t(F(p - 3, 2), H)], [t(sq4, e - 2), t(-sq4, H)]),
            (B + [t(F(p + 1, 2), H)], [t(sq4, e - 2), t(sq4, H)]),
        ]
    if table == 7:
        return [
            (B + [t(F((p - 1) ** 2, 2), E - 1)], [t(1, e), t(-1, e - 2)]),
            (B, [t(F(p + 1, 2), e - 4), t(-1), t(-q1, E - 2)]),
            (B + [t(q1, E)], [t(F(p * p - 1, 2), e - 4)]),
            (B + [t(p - 1, E)], [t(q1, e - 4), t(q1, E - 2)]),
            (B + [t(F(p - 3, 2), E)], [t(F((p - 1) ** 2, 2), e - 4)]),
        ]
    if table == 8:
        return [
            (B + [t(-F(p * p - 1, 2), E - 1)], [t(1, e), t(-1, e - 2)]),
            (B, [t(1, e - 4), t(-1)]),
            (B + [t(-F(p + 1, 2), E)], [t(F(p * p - 1, 2), e - 4), t(-(p - 1), E - 2)]),
            (B + [t(-F(p + 3, 2), E)],
             [t(F((p - 1) * (p - 3), 4), e - 4), t(-F((p - 1) * (p - 3), 4), E - 2)]),
            (B + [t(-q1, E)], [t(F(p * p - 1, 4), e - 4), t(F(p * p - 1, 4), E - 2)]),
            (B + [t(-1, E)], [t(p - 1, e - 4)]),
        ]
    if table == 9:
        return [
            (B + [t(F((p - 1) ** 2, 2), E - 1)], [t(1, e), t(-1, e - 2)]),
            (B, [t(1, e - 3), t(-1)]),
            (B + [t(q1, E)], [t(F(p * p - 1, 2), e - 4)]),
            (B + [t(F(p - 3, 2), E)], [t(sq4, e - 4), t(-sq4, E - 2)]),
            (B + [t(F(p + 1, 2), E)], [t(sq4, e - 4), t(sq4, E - 2)]),
        ]
    raise ValueError(f"no table {table}")


@dataclass(frozen=True)
class PredictedRow:
    row: int  # table row number; row 1 is the implicit weight-0 row
    weight: int | None
    multiplicity: int | None
    problem: str | None = None

    @property
    def is_zero(self) -> bool:
        return self.problem is None and self.multiplicity == 0


@dataclass(frozen=True)
class PredictedDistribution:
    theorem: int
    table: int
    rows: list[PredictedRow]

    @property
    def anomalies(self) -> list[PredictedRow]:
        return [r for r in self.rows if r.problem is not None]

    def as_map(self) -> dict[int, int]:
        """weight -> multiplicity over usable nonzero rows, plus the zero row."""
        out = {0: 1}
        for r in self.rows:
            if r.problem is None and r.multiplicity:
                out[r.weight] = out.get(r.weight, 0) + r.multiplicity
        return dict(sorted(out.items()))


def _row_value(p: int, terms: list[Term], what: str) -> tuple[int | None, str | None]:
    try:
        v = evaluate(p, terms)
    except OddExponentValue as exc:
        return None, f"{what}: {exc}"
    if v.denominator != 1:
        return None, f"{what} = {v} is not an integer"
    if v < 0:
        return int(v), f"{what} = {v} is negative"
    return int(v), None


def predicted_table(p: int, e: int, i: int) -> PredictedDistribution:
    case = classify(p, e, i)
    rows = []
    for idx, (w_terms, m_terms) in enumerate(_table_rows(p, e, i, case.table), start=2):
        w, w_err = _row_value(p, w_terms, "weight")
        m, m_err = _row_value(p, m_terms, "multiplicity")
        problem = "; ".join(x for x in (w_err, m_err) if x) or None
        rows.append(PredictedRow(idx, w, m, problem))
    return PredictedDistribution(case.theorem, case.table, rows)


# -- counting functions --

def _require_p_ndivides_e(p: int, e: int, name: str) -> None:
    if e % p == 0:
        raise BranchUnavailable(f"{name} is only stated for p not dividing e")


def _count_n00(p, e):
    gt = [t(legendre(-e, p) * F(p - 1, p * p), 0, e + 1)]
    if e % 2 == 1:
        return [t(1, e - 2)] + ([] if e % p == 0 else gt)
    if e % p == 0:
        return [t(1, e - 2), t(-(p - 1), e // 2 - 1 if e % 4 == 2 else e // 2)]
    return [t(1, e - 2)]


def _count_n00bar(p, e):
    base = [t(p - 1, e - 2)]
    if e % p == 0:
        return base
    if e % 2 == 1:
        return base + [t(-legendre(-e, p) * F(p - 1, p * p), 0, e + 1)]
    return base + [t(-(p - 1), e // 2 - 1 if e % 4 == 2 else e // 2)]


def _count_m_l0(p, e, l):
    base = [t(F(p - 1, 2), e - 2)]
    sl, h = (-1) ** l, legendre(-1, p)
    if e % 2 == 1:
        if e % p == 0:
            return base + [t(sl * h * F(p - 1, 2 * p), 0, e + 1)]
        return base + [t(-legendre(-e, p) * F(p - 1, 2 * p * p), 0, e + 1)]
    hp = e // 2 - 1 if e % 4 == 2 else e // 2
    if e % p == 0:
        return base + [t(F(p - 1, 2), hp)]
    return base + [t(-sl * legendre(-e, p) * F(p - 1, 2), hp)]


def _count_m_l0bar(p, e, l):
    base = [t(F((p - 1) ** 2, 2), e - 2)]
    sl, h, ne = (-1) ** l, legendre(-1, p), legendre(-e, p)
    if e % p == 0:
        return base
    if e % 2 == 1:
        return base + [t((sl * h * p + ne) * F(p - 1, 2 * p * p), 0, e + 1)]
    hp = e // 2 - 1 if e % 4 == 2 else e // 2
    return base + [t((1 + sl * ne) * F(p - 1, 2), hp)]


def _count_nbar_bar_e(p, e):
    _require_p_ndivides_e(p, e, "N(0bar,0bar,e)")
    base = [t(p - 1, e - 2)]
    if e % 2 == 0:
        return base
    return base + [t(legendre(-e, p) * F((p - 1) ** 2, p * p), 0, e + 1)]


def _check_s(p, e, s):
    if s % p == 0 or (s - e) % p == 0:
        raise BranchUnavailable(f"V_s needs s in F_p^* with s != e, got s = {s}")


def _count_v_s(p, e, s):
    _require_p_ndivides_e(p, e, "|V_s|")
    _check_s(p, e, s)
    base = [t(p - 1, e - 2)]
    if e % 2 == 1:
        return base + [t(-legendre(-e, p) * F(p - 1, p * p), 0, e + 1)]
    hp = e // 2 - 1 if e % 4 == 2 else e // 2
    return base + [t(-legendre(s, p) * legendre(s - e, p) * (p - 1), hp)]


def _nu_closed(p, e, k, j) -> Fraction:
    le, h = legendre(e, p), legendre(-1, p)
    return F(p - 2 - (-1) ** k * le - (-1) ** j * le - (-1) ** (k + j) * h, 4)


def _count_nu(p, e, k, j):
    _require_p_ndivides_e(p, e, "|nu(k,j)|")
    return [t(_nu_closed(p, e, k, j))]


def _count_n_k_bar_bar_j(p, e, k, j):
    _require_p_ndivides_e(p, e, "N(k,0bar,0bar,j)")
    nu = _nu_closed(p, e, k, j)
    if e % 2 == 1:
        inner = [t(p - 1, e - 2), t(-legendre(-e, p) * F(p - 1, p * p), 0, e + 1)]
    else:
        hp = e // 2 - 1 if e % 4 == 2 else e // 2
        inner = [t(p - 1, e - 2), t(-(-1) ** (k + j) * legendre(-1, p) * (p - 1), hp)]
    return [Term(nu * term.coef, term.p_pow, term.g_pow) for term in inner]


_CLOSED: dict[str, Callable[..., list[Term]]] = {
    "N00": _count_n00,
    "N00bar": _count_n00bar,
    "M_l0": _count_m_l0,
    "M_l0bar": _count_m_l0bar,
    "N_bar_bar_e": _count_nbar_bar_e,
    "V_s": _count_v_s,
    "nu": _count_nu,
    "N_k_bar_bar_j": _count_n_k_bar_bar_j,
}

# argument names per counting function, for sweeping admissible values
COUNTING_ARGS: dict[str, tuple[str, ...]] = {
    "N00": (),
    "N00bar": (),
    "M_l0": ("l",),
    "M_l0bar": ("l",),
    "N_bar_bar_e": (),
    "V_s": ("s",),
    "nu": ("k", "j"),
    "N_k_bar_bar_j": ("k", "j"),
}


def counting_closed(name: str, p: int, e: int, *args: int) -> int:
    if name not in _CLOSED:
        raise KeyError(f"unknown counting function {name!r}")
    return _as_int(evaluate(p, _CLOSED[name](p, e, *args)), name)


def _trace_pair(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    """(Tr(x^{p+1}), Tr(x)) for every x."""
    require_enumerable(ctx)
    return ctx.trace_idx(ctx.pow_all(ctx.p + 1)), ctx.trace_all


def counting_bruteforce(name: str, ctx: FieldCtx, *args: int) -> int:
    p, e = ctx.p, ctx.e
    eta = np.array([legendre(c, p) for c in range(p)])
    if name == "nu":
        k, j = args
        return sum(1 for s in range(1, p)
                   if (s - e) % p and legendre(s, p) == (-1) ** k
                   and legendre(s - e, p) == (-1) ** j * legendre(-1, p))
    t2, t1 = _trace_pair(ctx)
    if name == "N00":
        mask = (t2 == 0) & (t1 == 0)
    elif name == "N00bar":
        mask = (t2 == 0) & (t1 != 0)
    elif name in ("M_l0", "M_l0bar"):
        (l,) = args
        mask = eta[t2] == (-1) ** l
        mask &= (t1 == 0) if name == "M_l0" else (t1 != 0)
    elif name == "N_bar_bar_e":
        mask = (t2 != 0) & (t1 != 0) & ((t1 * t1 - e * t2) % p == 0)
    elif name == "V_s":
        (s,) = args
        mask = (t2 != 0) & (t1 != 0) & ((t1 * t1 - s * t2) % p == 0)
    elif name == "N_k_bar_bar_j":
        k, j = args
        inv = np.array([0] + [pow(c, -1, p) for c in range(1, p)])
        ratio = ((e * t2 - t1 * t1) * inv[t2]) % p
        mask = (eta[t2] == (-1) ** k) & (t1 != 0) & ((t1 * t1 - e * t2) % p != 0)
        mask &= eta[ratio] == (-1) ** j
    else:
        raise KeyError(f"unknown counting function {name!r}")
    return int(np.count_nonzero(mask))


def admissible_args(name: str, p: int, e: int) -> list[tuple[int, ...]]:
    """Argument tuples for which the named closed form is stated."""
    if name in ("N_bar_bar_e", "V_s", "nu", "N_k_bar_bar_j") and e % p == 0:
        return []
    if name in ("M_l0", "M_l0bar"):
        return [(0,), (1,)]
    if name == "V_s":
        return [(s,) for s in range(1, p) if (s - e) % p]
    if name in ("nu", "N_k_bar_bar_j"):
        return [(k, j) for k in (0, 1) for j in (0, 1)]
    return [()]


# -- verification --

@dataclass
class VerifyReport:
    case: CaseKey
    modulus: tuple[int, ...]
    predicted: PredictedDistribution
    enumerated: WeightDistribution
    claimed_length: int
    length_closed: int
    parameter_match: bool
    rows_matched: list[dict] = field(default_factory=list)
    rows_mismatched: list[dict] = field(default_factory=list)
    griesmer: GriesmerVerdict | None = None
    ratio: WeightRatio | None = None
    verdict: str = "MISMATCH"


def _row_dict(r: PredictedRow, observed: int | None) -> dict:
    return {"row": r.row, "weight": r.weight, "multiplicity": r.multiplicity,
            "observed": observed, "problem": r.problem}


def verify(p: int, e: int, i: int, budget: int = DEFAULT_BUDGET,
           ctx: FieldCtx | None = None) -> VerifyReport:
    case = classify(p, e, i)
    ctx = ctx or FieldCtx(p, e)
    predicted = predicted_table(p, e, i)
    D = defining_set(ctx, i)
    wd = weight_distribution(ctx, D, budget)
    observed = wd.counts
    claimed = claimed_length(case.statement_theorem, p, e, i)

    matched, mismatched = [], []
    for r in predicted.rows:
        got = observed.get(r.weight) if r.weight is not None else None
        if r.problem is None and (got or 0) == r.multiplicity:
            matched.append(_row_dict(r, got))
        else:
            mismatched.append(_row_dict(r, got))
    predicted_weights = {r.weight for r in predicted.rows if r.problem is None}
    for w, a in observed.items():
        if w and w not in predicted_weights:
            mismatched.append({"row": None, "weight": w, "multiplicity": None,
                               "observed": a, "problem": "weight not predicted"})

    if predicted.as_map() == observed and not predicted.anomalies:
        verdict = "MATCH"
    elif predicted.anomalies:
        verdict = "FORMULA_ANOMALY"
    else:
        verdict = "MISMATCH"

    return VerifyReport(
        case=case,
        modulus=ctx.modulus,
        predicted=predicted,
        enumerated=wd,
        claimed_length=claimed,
        length_closed=length_closed(p, e, i),
        parameter_match=(claimed, e) == (wd.n, wd.k),
        rows_matched=matched,
        rows_mismatched=mismatched,
        griesmer=griesmer(wd) if wd.k >= 1 else None,
        ratio=wt_ratio(wd) if wd.k >= 1 else None,
        verdict=verdict,
    )
