"""Acceptance criteria 1-9.

Every comparison is exact (integers, fractions or cyclotomic integers), so all
tolerances are zero; the only numeric limits are the wall-clock budgets of
criteria 1 (10 s) and 3 (120 s).  Run as a script, or under pytest where the
PASS/FAIL lines appear in the terminal summary.
"""

import contextlib
import io
import time

import numpy as np
import pytest

from codeweights.cli import main as cli_main
from codeweights.codes import defining_set, griesmer, weight_distribution
from codeweights.cyclotomic import cyc_root, cyc_sum, gauss_sum, gaussian_period
from codeweights.expsums import WeilParams, delta2, weil_sum_bruteforce, weil_sum_closed
from codeweights.gf import FieldCtx, irreducible_polys, legendre
from codeweights.theory import (
    COUNTING_ARGS,
    admissible_args,
    counting_bruteforce,
    counting_closed,
    length_closed,
    verify,
)

NINE_PAIRS = [(3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (5, 4), (7, 2), (7, 4)]
GOLDEN = {
    (3, 3, 0): ((6, 3, 3), {0: 1, 3: 6, 4: 12, 5: 6, 6: 2}),
    (3, 3, 1): ((12, 3, 6), {0: 1, 6: 2, 7: 6, 8: 6, 9: 6, 10: 6}),
    (5, 2, 0): ((12, 2, 8), {0: 1, 8: 4, 10: 12, 11: 8}),
    (5, 2, 1): ((7, 2, 5), {0: 1, 5: 8, 6: 12, 7: 4}),
    (7, 4, 0): ((1176, 4, 882), {0: 1, 882: 6, 1008: 2352, 1029: 24, 1078: 18}),
    (7, 4, 1): ((833, 4, 686), {0: 1, 686: 18, 714: 2352, 735: 24, 833: 6}),
}
GOLDEN_SECONDS = 10.0
WEIL_SECONDS = 120.0
# cases where the dispatched table reproduces the enumerator; both (3,3,i)
# disagree with the printed table
MATCH_CASES = [(5, 2, 0), (5, 2, 1), (7, 4, 0), (7, 4, 1)]
FLAGGED_CASES = [(3, 3, 0), (3, 3, 1)]

RESULTS: list[str] = []


def c1_golden():
    start = time.perf_counter()
    bad = []
    for (p, e, i), (params, counts) in GOLDEN.items():
        ctx = FieldCtx(p, e)
        wd = weight_distribution(ctx, defining_set(ctx, i))
        if wd.params != params or wd.counts != counts:
            bad.append((p, e, i))
    took = time.perf_counter() - start
    return not bad and took < GOLDEN_SECONDS, f"6 enumerators, mismatches={bad}, {took:.2f}s"


def c2_lengths():
    bad = [(p, e, i) for p, e in NINE_PAIRS for i in (0, 1)
           if length_closed(p, e, i) != len(defining_set(FieldCtx(p, e), i))]
    return not bad, f"18 equalities, failures={bad}"


def c3_weil():
    start = time.perf_counter()
    checked, bad = 0, []
    for p, e in NINE_PAIRS:
        ctx = FieldCtx(p, e)
        nonsq = next(a for a in ctx.enumerate() if ctx.quad_char(a) == -1)
        for a in list(ctx.enumerate())[1:]:
            for b in (ctx.zero(), ctx.one(), nonsq):
                params = WeilParams(ctx, a, b)
                checked += 1
                if weil_sum_closed(params) != weil_sum_bruteforce(params):
                    bad.append((p, e, ctx.index(a), ctx.index(b)))
    took = time.perf_counter() - start
    return not bad and took < WEIL_SECONDS, f"{checked} sums, mismatches={len(bad)}, {took:.1f}s"


def c4_counting():
    checked, bad = 0, []
    for p, e in NINE_PAIRS:
        ctx = FieldCtx(p, e)
        for name in COUNTING_ARGS:
            for args in admissible_args(name, p, e):
                checked += 1
                if counting_closed(name, p, e, *args) != counting_bruteforce(name, ctx, *args):
                    bad.append((name, p, e, args))
    return not bad and checked > 0, f"{checked} branch instances, failures={bad}"


def c5_identities():
    bad = []
    for p in (3, 5, 7, 11, 13):
        g = gauss_sum(p)
        if g * g != legendre(-1, p) * p:
            bad.append(("G^2", p))
        if 2 * gaussian_period(0, p) + 1 != g:
            bad.append(("2rho0+1", p))
        for a in range(p):
            if cyc_sum(p, (cyc_root(p, a * x) for x in range(p))) != (p if a == 0 else 0):
                bad.append(("additive orthogonality", p, a))
        for a in range(1, p):
            if sum(legendre(a * x, p) for x in range(1, p)):
                bad.append(("eta orthogonality", p, a))
    for p, e in [(3, 3), (5, 2)]:
        ctx = FieldCtx(p, e)
        for i in (0, 1):
            for a in list(ctx.enumerate())[1:]:
                if delta2(ctx, i, a) != 0:
                    bad.append(("delta2", p, e, i, ctx.index(a)))
    return not bad, f"failures={bad}"


def c6_solvability():
    notes = []
    ok = True
    for p, e in [(3, 4), (5, 4)]:
        ctx = FieldCtx(p, e)
        fibre = np.bincount(ctx.add_idx(ctx.pow_all(p * p), np.arange(ctx.q)), minlength=ctx.q)
        counts = fibre[ctx.neg_idx(ctx.pow_all(p))]
        unsolvable = int(np.count_nonzero(counts == 0))
        sizes = set(counts[counts > 0].tolist())
        ok &= unsolvable == p ** e - p ** (e - 2) and sizes == {p * p}
        notes.append(f"({p},{e}) unsolvable={unsolvable} solution counts={sorted(sizes)}")
    return ok, "; ".join(notes)


def c7_invariants():
    bad = []
    cases = sorted({(p, e, i) for p, e in NINE_PAIRS for i in (0, 1)}
                   | {(p, e, i) for p in (3, 5, 7) for e in (2, 3, 4, 5) for i in (0, 1)})
    for p, e, i in cases:
        ctx = FieldCtx(p, e)
        wd = weight_distribution(ctx, defining_set(ctx, i))
        if sum(wd.counts.values()) != p ** wd.k or wd.counts.get(0) != 1:
            bad.append(("sums", p, e, i))
        if wd.d != min(w for w, a in wd.counts.items() if w and a):
            bad.append(("d", p, e, i))
        if not griesmer(wd).passes:
            bad.append(("griesmer", p, e, i))
    for p, e, i in [(3, 3, 0), (5, 2, 1)]:
        ctx = FieldCtx(p, e)
        if griesmer(weight_distribution(ctx, defining_set(ctx, i))).classification \
                != "griesmer-optimal-candidate":
            bad.append(("optimal", p, e, i))
    return not bad, f"{len(cases)} codes, failures={bad}"


def c8_verifier():
    bad = []
    for case in MATCH_CASES:
        rep = verify(*case)
        if rep.verdict != "MATCH" or rep.enumerated.counts != GOLDEN[case][1]:
            bad.append(("expected MATCH", case, rep.verdict))
    for case in FLAGGED_CASES:
        rep = verify(*case)
        if rep.verdict == "MATCH" or not rep.rows_mismatched:
            bad.append(("expected flag", case, rep.verdict))
        if rep.enumerated.counts != GOLDEN[case][1]:
            bad.append(("enumerated side", case))
    with contextlib.redirect_stdout(io.StringIO()):
        codes = [cli_main(["verify", "-p", str(p), "-e", str(e), "-i", str(i)])
                 for p, e, i in MATCH_CASES + FLAGGED_CASES]
    if codes != [0] * len(MATCH_CASES) + [2] * len(FLAGGED_CASES):
        bad.append(("exit codes", codes))
    flagged = {r["row"] for r in verify(3, 3, 0).rows_mismatched if r["row"]}
    return not bad, f"MATCH at {MATCH_CASES}; (3,3,0) rows flagged {sorted(flagged)}; failures={bad}"


def c9_representation():
    mods = [m for _, m in zip(range(2), irreducible_polys(3, 3))]
    dists = []
    for m in mods:
        ctx = FieldCtx(3, 3, m)
        dists.append(weight_distribution(ctx, defining_set(ctx, 0)).counts)
    return mods[0] != mods[1] and dists[0] == dists[1], f"moduli {mods}"


CRITERIA = [
    (1, "golden enumerators", c1_golden),
    (2, "length formulas", c2_lengths),
    (3, "Weil-sum closed forms", c3_weil),
    (4, "counting functions", c4_counting),
    (5, "algebraic identities", c5_identities),
    (6, "solvability structure", c6_solvability),
    (7, "distribution invariants", c7_invariants),
    (8, "verifier discrimination", c8_verifier),
    (9, "representation independence", c9_representation),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'} criterion {num} ({name}): {detail}"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check):
    ok, detail = check()
    line = _line(num, name, ok, detail)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail))
    raise SystemExit(1 if failed else 0)
