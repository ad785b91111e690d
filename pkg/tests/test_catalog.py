import math
from fractions import Fraction

import mpmath
import pytest

from prodforge.catalog import (
    BOUNDARY,
    DESK_PROFILE,
    INTERIOR,
    b_s_tail_bound,
    check_identity,
    get_identity,
    list_identities,
    phi_reference,
    stirling_ratio,
    zeta_reference,
)
from prodforge.coefficients import Kind, closed_table
from prodforge.errors import InvalidArgumentError, PolicyRefusal

mpmath.mp.dps = 40

INTERIOR_IDS = [e.id for e in list_identities() if e.validity == INTERIOR]
BOUNDARY_IDS = [e.id for e in list_identities() if e.validity == BOUNDARY]


def test_listing_is_complete_and_stable():
    ids = [e.id for e in list_identities()]
    assert len(ids) >= 17
    assert ids == sorted(ids) == [e.id for e in list_identities()]
    assert set(BOUNDARY_IDS) == {"BOUNDARY_SIN", "BOUNDARY_SIN_REFLECT", "BOUNDARY_TAN", "B_SUM_LOG2"}
    for e in list_identities():
        assert set(e.summary()) >= {"id", "anchor", "validity", "status"}


def test_unknown_identity():
    with pytest.raises(InvalidArgumentError):
        get_identity("NOPE")


@pytest.mark.parametrize("identity_id", INTERIOR_IDS)
def test_interior_identity_at_two_points(identity_id):
    entry = get_identity(identity_id)
    assert len(entry.points) >= 2
    for point in entry.points:
        report = check_identity(identity_id, point, K=point.get("K"), tol=1e-9)
        assert report.passed, (point, report.to_dict())


@pytest.mark.parametrize("identity_id,params,K,tol", DESK_PROFILE)
def test_desk_profile(identity_id, params, K, tol):
    report = check_identity(identity_id, params, K, tol)
    assert report.passed, report.to_dict()


@pytest.mark.parametrize("s", [1.5, 2, 2.5, 3, 4, 7.25])
def test_zeta_reference_against_mpmath(s):
    assert zeta_reference(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-14)


def test_zeta_reference_domain():
    with pytest.raises(InvalidArgumentError):
        zeta_reference(1.0)


@pytest.mark.parametrize("x,s", [(0.5, 2), (-0.7, 3), (0.9, 1.5)])
def test_phi_reference_against_polylog(x, s):
    value, tail = phi_reference(x, s)
    assert abs(value - float(mpmath.re(mpmath.polylog(s, x)))) <= tail + 1e-14
    tilde, _ = phi_reference(x, s, "PHI_TILDE")
    assert tilde == pytest.approx(-float(mpmath.re(mpmath.polylog(s, -x))), abs=1e-14)


def test_phi_tilde_at_one():
    value, tail = phi_reference(1.0, 2, "PHI_TILDE")
    assert abs(value - math.pi**2 / 12) <= tail


def test_b_s_tail_bound_dominates_actual_tail():
    N, big = 2000, 200_000
    table = closed_table(Kind.B_S, big, 2)
    actual = sum(abs(float(v)) for v in table.values[N:])
    bound = b_s_tail_bound(2, N)
    assert actual <= bound <= 10 * actual + 1e-3
    assert b_s_tail_bound(2, 100_000) < 1e-4


def test_stirling_monotone_in_n():
    residuals = [stirling_ratio(n).residual for n in (6, 10, 20)]
    assert residuals[0] > residuals[1] > residuals[2]
    assert stirling_ratio(10).passed and stirling_ratio(20).passed


def test_stirling_small_n_is_tail_dominated():
    report = stirling_ratio(2)
    assert report.status == "tail-dominated" and not report.passed
    with pytest.raises(InvalidArgumentError):
        stirling_ratio(1)
    with pytest.raises(InvalidArgumentError):
        stirling_ratio(10, J=9)


def test_stirling_as_printed_fails():
    report = stirling_ratio(10, as_printed=True)
    assert report.residual > 1e-2 and not report.passed


@pytest.mark.parametrize("identity_id", BOUNDARY_IDS)
def test_boundary_identities_refuse_assertions(identity_id):
    with pytest.raises(PolicyRefusal):
        check_identity(identity_id, {"theta": 1.0})
    report = check_identity(identity_id, {"theta": 1.0}, assert_mode=False, abel_xs=(0.9, 0.99))
    assert report.status == "boundary-experimental"
    assert report.tail_bound == math.inf and report.passed is None
    assert [row["x"] for row in report.extra["trace"]] == [0.9, 0.99]


@pytest.mark.parametrize(
    "identity_id,params,K",
    [
        ("MIXED_PARITY", {"x": 0.3, "theta": 1.0}, 60),
        ("EXP_COS_RATIO", {"x": 1 / 3, "theta": math.pi / 4}, 100),
        ("SEC", {"x": 0.5}, 30),
        ("ZETA_A", {"s": 2, "N": 100000}, None),
    ],
)
def test_as_printed_variants_fail(identity_id, params, K):
    corrected = check_identity(identity_id, params, K, tol=1e-4)
    printed = check_identity(identity_id, params, K, tol=1e-4, as_printed=True)
    assert corrected.passed
    assert printed.residual > 1e-2 and not printed.passed


def test_as_printed_requires_variant():
    with pytest.raises(InvalidArgumentError):
        check_identity("EXP_MINUS", {"x": 0.3}, as_printed=True)


def test_interior_rejects_large_x():
    with pytest.raises(InvalidArgumentError):
        check_identity("EXP_MINUS", {"x": 0.995})


def test_tail_dominated_never_passes():
    report = check_identity("EXP_MINUS", {"x": 0.7}, K=5, tol=1e-9)
    assert report.status == "tail-dominated" and not report.passed


def test_identity_values_exact_small_case():
    # K = 1 product for sqrt(e) is (1/2)^-1 = 2
    report = check_identity("SQRT_E", {}, K=1, tol=1.0)
    assert report.value == pytest.approx(2.0, rel=1e-15)
    assert closed_table(Kind.A_LOG, 1)[1] == Fraction(-1)
