import json
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from prodforge.arith import mobius, mobius_table
from prodforge.coefficients import (
    CoeffTable,
    Kind,
    a_closed,
    a_s_closed,
    b_closed,
    b_s_closed,
    certify_tables,
    closed_table,
    solve_triangular,
    table_to_json,
    table_to_tsv,
    triangular_row,
)
from prodforge.errors import InvalidArgumentError, UnsupportedParameterError

F = Fraction


def naive_solve(weight, leading, N):
    """Row-by-row forward substitution straight from the comparison-of-coefficients rows."""
    v = {1: leading}
    for n in range(2, N + 1):
        v[n] = -sum(v[d] * weight(n // d) for d in range(1, n) if n % d == 0)
    return v


def test_a_examples():
    assert a_closed(1) == -1
    assert a_closed(6) == F(-1, 6)
    assert a_closed(4) == 0
    assert a_closed(3) == F(1, 3)
    assert a_closed(2) == F(1, 2)
    with pytest.raises(InvalidArgumentError):
        a_closed(0)


def test_b_examples():
    assert b_closed(2) == F(1, 2)
    assert b_closed(12) == F(-1, 6)
    assert b_closed(9) == 0
    assert b_closed(6) == F(-1, 6)


def test_b_6_from_naive_solver():
    v = naive_solve(lambda m: F((-1) ** (m + 1), m), F(1), 6)
    assert v[6] == F(-1, 6) == b_closed(2) * b_closed(3)


def test_a_s_examples():
    for s in (2, 3, 5):
        assert a_s_closed(1, s) == 1
    assert a_s_closed(2, 2) == F(-1, 4)
    assert a_s_closed(4, 3) == 0
    v = naive_solve(lambda m: F(1, m**2), F(1), 2)
    assert v[2] == F(-1, 4)


def test_b_s_examples_against_naive_solver():
    v = naive_solve(lambda m: F((-1) ** (m + 1), m**2), F(1), 6)
    assert v[2] == b_s_closed(2, 2) == F(1, 4)
    assert v[4] == b_s_closed(4, 2) == F(1, 8)
    assert v[6] == b_s_closed(6, 2) == F(-1, 36)


def test_s_restrictions():
    with pytest.raises(UnsupportedParameterError):
        a_s_closed(3, 1)
    with pytest.raises(UnsupportedParameterError):
        b_s_closed(3, 1)
    with pytest.raises(InvalidArgumentError):
        solve_triangular(Kind.A_S, 10)
    with pytest.raises(InvalidArgumentError):
        solve_triangular(Kind.A_LOG, 10, 2)


def test_b_s_reduces_to_b_at_s_equal_one():
    # the general-s rule evaluated at s = 1 (bypassing the s >= 2 guard)
    for n in range(1, 300):
        k = (n & -n).bit_length() - 1
        m = n >> k
        mu = mobius(m)
        value = F(mu, m) if k == 0 else F(mu * 2 ** (k - 1), n)
        assert value == b_closed(n)


def test_row_36_a_weights():
    row = triangular_row(Kind.A_LOG, 36)
    assert row == {1: F(1, 36), 2: F(1, 18), 3: F(1, 12), 4: F(1, 9), 6: F(1, 6),
                   9: F(1, 4), 12: F(1, 3), 18: F(1, 2), 36: F(1)}


def test_row_36_b_signs():
    row = triangular_row(Kind.B_LOG, 36)
    signs = {d: (1 if w > 0 else -1) for d, w in row.items()}
    printed = {1: -1, 2: -1, 3: -1, 4: 1, 6: -1, 9: 1, 12: 1, 18: -1, 36: 1}
    # d = 9 sits on w(4) = -1/4; the printed '+' there multiplies b_9 = 0
    assert {d: s for d, s in signs.items() if d != 9} == {d: s for d, s in printed.items() if d != 9}
    assert row[9] == F(-1, 4) and b_closed(9) == 0
    assert [abs(w) for w in row.values()] == [F(1, 36 // d) for d in row]


def test_solver_small_tables():
    assert solve_triangular(Kind.A_LOG, 10).values == closed_table(Kind.A_LOG, 10).values
    assert solve_triangular(Kind.A_LOG, 4).values == (F(-1), F(1, 2), F(1, 3), F(0))


@pytest.mark.parametrize("kind,s", [(Kind.A_LOG, None), (Kind.B_LOG, None), (Kind.A_S, 2), (Kind.B_S, 3)])
def test_solver_matches_naive(kind, s):
    table = solve_triangular(kind, 120, s)
    row_weight = lambda m: triangular_row(kind, m, s)[1]
    v = naive_solve(row_weight, table[1], 120)
    assert all(table[n] == v[n] for n in range(1, 121))


def test_certify_small_and_trivial():
    report = certify_tables(1, [2])
    assert report.ok and all(r.equal_count == 1 for r in report.results)
    report = certify_tables(500, [2, 3])
    assert report.ok
    assert len(report.results) == 6


def test_table_invariants():
    for kind, s in [(Kind.A_LOG, None), (Kind.B_LOG, None), (Kind.A_S, 2), (Kind.B_S, 2)]:
        table = closed_table(kind, 400, s)
        assert table[1] == (-1 if kind is Kind.A_LOG else 1)
        for n, v in table.items():
            odd = n
            while kind.alternating and odd % 2 == 0:
                odd //= 2
            if mobius(odd) == 0:
                assert v == 0


def test_a_equals_minus_mobius_over_n():
    mu = mobius_table(20_000)
    table = closed_table(Kind.A_LOG, 20_000)
    for n in range(1, 20_001):
        assert table[n] == F(-mu[n], n)


def test_convolution_rows_vanish():
    N = 3000
    a = closed_table(Kind.A_LOG, N)
    b = closed_table(Kind.B_LOG, N)
    for n in range(2, N + 1):
        ds = [d for d in range(1, n + 1) if n % d == 0]
        assert sum(a[d] * F(d, n) for d in ds) == 0
        assert sum(b[d] * F((-1) ** (n // d + 1) * d, n) for d in ds) == 0


@given(st.integers(1, 1000), st.integers(1, 1000))
def test_b_multiplicative(m, n):
    if gcd(m, n) == 1:
        assert b_closed(m * n) == b_closed(m) * b_closed(n)


@given(st.integers(1, 40))
def test_b_powers_of_two(k):
    assert b_closed(2**k) == F(1, 2)


@given(st.integers(1, 5000), st.integers(2, 5))
def test_a_s_is_mobius_over_power(n, s):
    assert a_s_closed(n, s) == F(mobius(n), n**s)
    if n >= 2:
        ds = [d for d in range(1, n + 1) if n % d == 0]
        assert sum(a_s_closed(d, s) * F(1, (n // d) ** s) for d in ds) == 0


def test_prime_sign_pattern():
    table = closed_table(Kind.A_LOG, 1000)
    for p in (2, 3, 5, 7, 11, 13, 997):
        assert table[p] == F(1, p)


def test_serialization():
    table = closed_table(Kind.B_LOG, 12)
    lines = table_to_tsv(table).splitlines()
    assert lines[11] == "12\t-1/6"
    assert lines[3] == "4\t1/2"
    rows = [json.loads(line) for line in table_to_json(table).splitlines()]
    assert rows[5] == {"kind": "B_LOG", "n": 6, "schema": "prodforge/1", "value": "-1/6"}


def test_kind_parse():
    assert Kind.parse("a") is Kind.A_LOG
    assert Kind.parse("b_s") is Kind.B_S
    assert Kind.parse("A_S") is Kind.A_S
    with pytest.raises(InvalidArgumentError):
        Kind.parse("c")


def test_coeff_table_is_frozen():
    table = closed_table(Kind.A_LOG, 5)
    assert isinstance(table, CoeffTable)
    with pytest.raises(Exception):
        table.limit = 3
