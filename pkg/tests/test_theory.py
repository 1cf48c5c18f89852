import numpy as np
import pytest

from codeweights.codes import defining_set
from codeweights.errors import BranchUnavailable, OutOfScope
from codeweights.gf import legendre
from codeweights.theory import (
    COUNTING_ARGS,
    admissible_args,
    classify,
    claimed_length,
    counting_bruteforce,
    counting_closed,
    evaluate,
    length_closed,
    predicted_table,
    t,
    verify,
)

from conftest import NINE_PAIRS
from test_codes import GOLDEN

GRID = [(p, e, i) for p in (3, 5, 7) for e in (2, 3, 4, 5) for i in (0, 1)]


def test_classify_examples():
    assert classify(7, 4, 0).table == 9
    assert classify(5, 2, 0).table == 6
    assert classify(5, 2, 1).table == 5
    assert classify(3, 3, 0).table == 1
    k = classify(7, 4, 1)
    assert (k.theorem, k.statement_theorem) == (8, 9)
    assert (k.e_mod4, k.p_divides_e, k.legendre_e, k.legendre_neg_e) == (0, False, 1, -1)
    for bad in [(2, 3, 0), (3, 1, 0), (9, 2, 0), (3, 2, 2)]:
        with pytest.raises(OutOfScope):
            classify(*bad)


def test_dispatch_readings_agree_when_minus_one_is_square():
    for p, e, i in GRID:
        k = classify(p, e, i)
        if k.eta_minus1 == 1 or e % 2:
            assert k.theorem == k.statement_theorem


def test_evaluate_terms():
    assert evaluate(3, [t(1, 2), t(2, 0, 2)]) == 9 - 6
    assert evaluate(5, [t(1, -1)]) * 5 == 1


@pytest.mark.parametrize("p,e", NINE_PAIRS)
@pytest.mark.parametrize("i", [0, 1])
def test_length_closed(fields, p, e, i):
    assert length_closed(p, e, i) == len(defining_set(fields(p, e), i))


def test_claimed_lengths():
    assert claimed_length(1, 3, 3, 0) == 6
    assert claimed_length(6, 5, 2, 0) == 12
    assert claimed_length(5, 5, 2, 1) == 7
    assert claimed_length(8, 7, 4, 0) == 1176
    assert claimed_length(9, 7, 4, 1) == 833


def _counting_cases():
    for p, e in NINE_PAIRS:
        for name in COUNTING_ARGS:
            for args in admissible_args(name, p, e):
                yield p, e, name, args


@pytest.mark.parametrize("p,e,name,args", list(_counting_cases()))
def test_counting_closed_equals_bruteforce(fields, p, e, name, args):
    assert counting_closed(name, p, e, *args) == counting_bruteforce(name, fields(p, e), *args)


def test_counting_examples():
    assert counting_closed("N00", 3, 3) == 3
    for p, e in NINE_PAIRS:
        if e % p:
            assert sum(counting_closed("nu", p, e, k, j) for k in (0, 1) for j in (0, 1)) == p - 2
    for l in (0, 1):
        expect = 2 - (-1) ** l * legendre(-2, 5) * 2
        assert counting_closed("M_l0", 5, 2, l) == expect


def test_counting_partitions(fields):
    ctx = fields(3, 3)
    t2 = ctx.trace_idx(ctx.pow_all(4))
    assert (counting_bruteforce("N00", ctx) + counting_bruteforce("N00bar", ctx)
            == int(np.count_nonzero(t2 == 0)))
    ctx = fields(5, 2)
    total = sum(counting_bruteforce(n, ctx, l) for n in ("M_l0", "M_l0bar") for l in (0, 1))
    total += counting_bruteforce("N00", ctx) + counting_bruteforce("N00bar", ctx)
    assert total == 25


@pytest.mark.parametrize("p,e", [(5, 3), (7, 2), (5, 4)])
def test_n_k_j_is_sum_over_v_s(fields, p, e):
    ctx = fields(p, e)
    for k in (0, 1):
        for j in (0, 1):
            members = [s for s in range(1, p) if (s - e) % p
                       and legendre(s, p) == (-1) ** k
                       and legendre(s - e, p) == (-1) ** j * legendre(-1, p)]
            assert len(members) == counting_bruteforce("nu", ctx, k, j)
            assert counting_bruteforce("N_k_bar_bar_j", ctx, k, j) == sum(
                counting_bruteforce("V_s", ctx, s) for s in members)


def test_branch_unavailable():
    with pytest.raises(BranchUnavailable):
        counting_closed("V_s", 3, 3, 1)
    with pytest.raises(BranchUnavailable):
        counting_closed("N_bar_bar_e", 5, 5)
    with pytest.raises(BranchUnavailable):
        counting_closed("V_s", 5, 2, 2)  # s = e
    with pytest.raises(KeyError):
        counting_closed("nope", 3, 3)


def test_table1_at_3_3_0():
    rows = {r.row: (r.weight, r.multiplicity) for r in predicted_table(3, 3, 0).rows}
    assert rows[2] == (6, 2)
    assert rows[3] == (3, 6)
    assert rows[4] == (4, 12)
    assert rows[6] == (57, 6)


def test_table8_at_7_4_1():
    pt = predicted_table(7, 4, 1)
    assert pt.table == 8 and not pt.anomalies
    assert pt.as_map() == GOLDEN[(7, 4, 1)][1]


@pytest.mark.parametrize("p,e,i", GRID)
def test_predicted_tables_are_consistent(p, e, i):
    pt = predicted_table(p, e, i)
    if pt.anomalies:
        return
    weights = [r.weight for r in pt.rows if r.multiplicity]
    assert len(weights) == len(set(weights))
    if pt.table != 1:
        assert sum(pt.as_map().values()) == p ** e


def test_table1_multiplicities_do_not_sum_to_q():
    assert sum(predicted_table(3, 3, 0).as_map().values()) == 33
    assert sum(predicted_table(5, 5, 1).as_map().values()) != 5 ** 5


@pytest.mark.parametrize("case", [(5, 2, 0), (5, 2, 1), (7, 4, 0), (7, 4, 1)])
def test_verify_match(case):
    rep = verify(*case)
    assert rep.verdict == "MATCH"
    assert not rep.rows_mismatched
    assert rep.parameter_match
    assert rep.enumerated.counts == GOLDEN[case][1]


@pytest.mark.parametrize("i", [0, 1])
def test_verify_flags_table1_at_3_3(i):
    rep = verify(3, 3, i)
    assert rep.verdict in ("MISMATCH", "FORMULA_ANOMALY")
    assert rep.enumerated.counts == GOLDEN[(3, 3, i)][1]
    assert rep.rows_mismatched
    matched_rows = {r["row"] for r in rep.rows_matched}
    assert {2, 3} <= matched_rows


def test_verify_3_3_0_row_diff():
    rep = verify(3, 3, 0)
    bad = {r["row"] for r in rep.rows_mismatched}
    assert bad == {5, 6, None}
    assert {r["row"] for r in rep.rows_matched} == {2, 3, 4}


def test_parameter_claim_fails_when_dimension_drops():
    rep = verify(3, 4, 1)
    assert rep.enumerated.k == 3 and not rep.parameter_match


@pytest.mark.parametrize("p,e,i", [c for c in GRID if c[0] != 3 and not (c[0] == 5 and c[1] == 5)])
def test_verify_matches_away_from_degenerate_cases(p, e, i):
    assert verify(p, e, i).verdict == "MATCH"
