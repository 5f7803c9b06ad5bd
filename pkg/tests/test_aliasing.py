import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebquad.aliasing import (
    ReducedForm,
    alias_error,
    alias_reduce,
    error_series_check,
    gauss_alias_error,
)
from chebquad.chebcore import CHEBYSHEV_FAMILIES, Family, chebyshev_T
from chebquad.moments import WeightKind, WeightSpec, jacobi_moments
from chebquad.rules import apply, gauss_legendre, rule_for

UNIT = WeightSpec(WeightKind.JACOBI, 0.0, 0.0)
JAC = WeightSpec(WeightKind.JACOBI, -0.3, 0.2)
LOG = WeightSpec(WeightKind.LOGJACOBI, 0.0, 0.0)


def _period(family: Family, n: int) -> int:
    if family is Family.FEJER1:
        return n
    if family is Family.FEJER2:
        return n + 1
    return n - 1


# --- degree reduction ---------------------------------------------------------


def test_reduce_worked_examples():
    # T_10 on the 5-point Clenshaw-Curtis grid folds once (period 8) to T_2
    assert alias_reduce(Family.CLENSHAW_CURTIS, 5, 10) == (1, 2, 1)
    # T_8 on the 4-point Fejer-1 grid lands on T_0 with the odd-fold sign
    assert alias_reduce(Family.FEJER1, 4, 8) == (1, 0, -1)
    # Fejer-2 boundary reduction: T_27 on 8 points folds to index n+1 = 9
    assert alias_reduce(Family.FEJER2, 8, 27) == (1, 9, 1)
    # degrees below the period are identities
    assert alias_reduce(Family.FEJER1, 7, 5) == (0, 5, 1)


@given(
    family=st.sampled_from(CHEBYSHEV_FAMILIES),
    n=st.integers(min_value=2, max_value=40),
    m=st.integers(min_value=0, max_value=500),
)
@settings(max_examples=120, deadline=None)
def test_reduce_reconstructs_the_degree(family, n, m):
    p, j, sign = alias_reduce(family, n, m)
    K = _period(family, n)
    assert p >= 0 and 0 <= j <= K
    assert 2 * K * p + j == m or 2 * K * p - j == m
    assert sign == ((-1) ** p if family is Family.FEJER1 else 1)


@given(
    family=st.sampled_from(CHEBYSHEV_FAMILIES),
    n=st.integers(min_value=2, max_value=25),
    m=st.integers(min_value=0, max_value=300),
)
@settings(max_examples=60, deadline=None)
def test_reduction_preserves_node_values(family, n, m):
    # the whole point of the reduction: T_m and sign*T_j agree at the nodes
    from chebquad.chebcore import make_points

    p, j, sign = alias_reduce(family, n, m)
    pts = make_points(family, n).points
    assert np.max(np.abs(chebyshev_T(m, pts) - sign * chebyshev_T(j, pts))) < 1e-11


# --- exact identities on the Chebyshev-point rules ------------------------------


@pytest.mark.parametrize("weight", [UNIT, JAC, LOG], ids=["unit", "jacobi", "log"])
@pytest.mark.parametrize("family", CHEBYSHEV_FAMILIES)
def test_alias_identities_small(family, weight, n=9):
    for p in range(3):
        for j in range(n):
            for m in {2 * _period(family, n) * p + j,
                      abs(2 * _period(family, n) * p - j)}:
                rec = alias_error(family, n, m, weight)
                assert rec.residual <= 1e-11, (family, weight, m)


def test_fejer1_zero_identity():
    # odd multiples of n alias onto T_n, which vanishes at the Fejer-1
    # nodes, so the rule returns 0 and the error is the bare moment
    rec = alias_error(Family.FEJER1, 6, 18, UNIT)
    assert rec.reduced_form is ReducedForm.FEJER1_ZERO
    assert rec.residual <= 1e-12
    m18 = jacobi_moments(0.0, 0.0, 18).values[18]
    assert rec.computed == pytest.approx(m18, abs=1e-13)
    rule = rule_for(Family.FEJER1, 6, UNIT)
    assert abs(apply(rule, lambda x: chebyshev_T(18, x))) <= 1e-13


def test_fejer1_error_combines_two_moments():
    # degree 35 on 16 points folds to T_3 with a sign flip:
    # E[T_35] = M_35 + M_3
    rec = alias_error(Family.FEJER1, 16, 35, UNIT)
    vals = jacobi_moments(0.0, 0.0, 35).values
    assert rec.computed == pytest.approx(vals[35] + vals[3], abs=1e-12)
    assert rec.residual <= 1e-12


def test_fejer2_boundary_forms():
    rec = alias_error(Family.FEJER2, 8, 27, UNIT)
    assert rec.reduced_form is ReducedForm.FEJER2_EDGE_N1
    assert rec.residual <= 1e-11
    rec = alias_error(Family.FEJER2, 8, 26, UNIT)
    assert rec.reduced_form is ReducedForm.FEJER2_EDGE_N
    assert rec.residual <= 1e-11


@pytest.mark.parametrize("family", CHEBYSHEV_FAMILIES)
def test_alias_identities_survive_large_degrees(family):
    # identities are exact for every m; check degrees up to 50n where the
    # trigonometric evaluation of T_m is the only hazard
    weight = WeightSpec(WeightKind.JACOBI, -0.6, -0.5)
    n = 16
    for m in np.unique(np.geomspace(n, 50 * n, 15).astype(int)):
        rec = alias_error(family, n, int(m), weight)
        assert rec.residual <= 1e-11, (family, m)


# --- Gauss-Legendre error structure ---------------------------------------------


def test_gauss_exact_below_degree_2n_and_odd():
    assert gauss_alias_error(20, 39).reduced_form is ReducedForm.GAUSS_EXACT
    assert abs(gauss_alias_error(20, 39).computed) <= 1e-12
    # odd degrees above 2n-1 are killed by node symmetry
    assert gauss_alias_error(20, 41).reduced_form is ReducedForm.GAUSS_EXACT
    assert abs(gauss_alias_error(20, 41).computed) <= 1e-12


def test_gauss_half_pi_family():
    # at m = 2n the rule aliases the sqrt weight: the error is near pi/2
    rec = gauss_alias_error(20, 40)
    assert rec.reduced_form is ReducedForm.GAUSS_HALF_PI
    exact_part = 2.0 / (1.0 - 40.0**2)
    assert rec.predicted == pytest.approx(exact_part + math.pi / 2.0, abs=1e-12)
    assert rec.residual <= 10.0 * 40.0 / 20.0**2
    # its mirror at m = 2n + 2 flips the sign
    rec = gauss_alias_error(20, 42)
    assert rec.reduced_form is ReducedForm.GAUSS_HALF_PI
    assert rec.predicted < 0.0
    assert rec.residual <= 10.0 * 42.0 / 20.0**2


def test_gauss_plain_family_and_n_scaling():
    # m = (4n+2) + 6 reduces to (j, r) = (1, 3): leading value 2/35
    rec = gauss_alias_error(50, 208)
    assert rec.reduced_form is ReducedForm.GAUSS_PLAIN
    assert (rec.j, rec.r) == (1, 3)
    exact_part = 2.0 / (1.0 - 208.0**2)
    assert rec.predicted == pytest.approx(exact_part - 2.0 / 35.0, abs=1e-12)
    # the same (j, r) class at doubled n: residual shrinks like m/n^2
    rec2 = gauss_alias_error(100, 408)
    assert rec2.residual < rec.residual


def test_gauss_sqrt_weight_proof_constant():
    # The half-pi family rests on I_n[sqrt(1-x^2)] -> pi/2.  The convexity
    # bound holds with the angle 2*pi/(2n+1); the observed error actually
    # decays one power faster (~n^-3), so the margin grows with n.
    f = lambda x: np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    for n in (5, 10, 20, 40, 80, 160):
        err = abs(math.pi / 2.0 - apply(gauss_legendre(n), f))
        assert err <= 2.0 * math.sin(2.0 * math.pi / (2.0 * n + 1.0)) ** 2, n


# --- error series ------------------------------------------------------------------


def test_series_single_term():
    # f = T_{n+2} has exactly one coefficient past the exactness degree
    f = lambda x: chebyshev_T(11, x)
    assert error_series_check(Family.CLENSHAW_CURTIS, 9, f, JAC, 40) <= 1e-11


def test_series_polynomial_is_zero_on_both_sides():
    f = lambda x: x**3
    assert error_series_check(Family.CLENSHAW_CURTIS, 9, f, JAC, 40) <= 1e-13


def test_series_converges_with_truncation():
    # abspow (not a bare lambda) so the reference oracle knows where the
    # kink sits and can split the integration region there
    from chebquad.analysis import abspow, reference_integral

    f = abspow(0.3, 2.82)
    rule = rule_for(Family.CLENSHAW_CURTIS, 12, UNIT)
    measured = abs(reference_integral(UNIT, f) - apply(rule, f))
    coarse = error_series_check(Family.CLENSHAW_CURTIS, 12, f, UNIT, 60)
    fine = error_series_check(Family.CLENSHAW_CURTIS, 12, f, UNIT, 600)
    assert fine < coarse
    assert fine <= 0.05 * measured


def test_series_check_validation():
    with pytest.raises(ValueError):
        error_series_check(Family.CLENSHAW_CURTIS, 9, np.exp, JAC, 5)
    with pytest.raises(ValueError):
        error_series_check(Family.GAUSS_LEGENDRE, 9, np.exp, JAC, 40)
