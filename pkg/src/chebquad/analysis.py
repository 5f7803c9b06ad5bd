"""Reference integrals, convergence sweeps and slope fits.

The empirical side of the package: a high-precision oracle for weighted
integrals of kink test functions, error sweeps of every rule over n,
and least-squares rate fits compared against the theoretical
convergence-rate tables (interpolatory Chebyshev rules under Jacobi and
log-Jacobi weights; Gauss-Legendre under the unit weight).

The oracle computes every integral twice with structurally different
methods -- adaptive double-exponential quadrature in 40-digit
arithmetic, and composite 60-point Gauss-Legendre over dyadically
graded panels in float64 -- and refuses to hand out a value when the
two disagree.  Both methods integrate in distance-from-singularity
coordinates, so neither endpoint algebra nor the interior kink suffers
cancellation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import mpmath as mp
import numpy as np
from scipy.signal import argrelmax

from .chebcore import Family
from .errors import NumericalFailure
from .moments import WeightKind, WeightSpec, min_bar, moments_for
from .rules import apply, gauss_legendre, rule_for, weight_abs_sum

__all__ = [
    "TestKind",
    "TestFunction",
    "abspow",
    "powplus",
    "custom",
    "reference_integral",
    "oracle_integral",
    "theoretical_rate",
    "fit_slope",
    "envelope_slope",
    "convergence_study",
    "ConvergenceReport",
    "weight_sum_study",
    "moment_decay_exponent",
    "gauss_open_problem_study",
    "OpenProblemReport",
]

_ORACLE_DPS = 40
_PANEL_NODES, _PANEL_WEIGHTS = np.polynomial.legendre.leggauss(60)
_AGREEMENT_ABORT = 1e-11
_NOISE_FLOOR_FACTOR = 1e3
_SLOPE_TOLERANCE = 0.2


class TestKind(enum.Enum):
    ABS_POW = "abspow"      # |x - c|^s, kink at interior c
    POW_PLUS = "powplus"    # (x - xi)_+^s, one-sided kink at xi
    CUSTOM = "custom"       # arbitrary smooth callable


@dataclass(frozen=True)
class TestFunction:
    """A test integrand with known singularity structure.

    AbsPow |x-c|^s lies in the coefficient class X^s (its Chebyshev
    coefficients decay like j^(-s-1)), as does PowPlus; s must not be
    an even integer for AbsPow, which would make it a polynomial.
    ``c`` doubles as xi for PowPlus and is ignored for Custom.
    """

    kind: TestKind
    c: float = 0.0
    s: float = 1.0
    fn: Optional[Callable] = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "kind", TestKind(self.kind))
        if self.kind is TestKind.CUSTOM:
            if self.fn is None:
                raise ValueError("custom test functions need a callable")
            return
        if not -1.0 < self.c < 1.0:
            raise ValueError(f"kink must sit inside (-1, 1), got {self.c}")
        if self.s <= 0:
            raise ValueError(f"exponent must be positive, got {self.s}")
        if self.kind is TestKind.ABS_POW and self.s % 2 == 0:
            raise ValueError("even-integer exponents make |x-c|^s a polynomial")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind is TestKind.ABS_POW:
            return np.abs(x - self.c) ** self.s
        if self.kind is TestKind.POW_PLUS:
            return np.maximum(x - self.c, 0.0) ** self.s
        return self.fn(x)

    def describe(self) -> str:
        if self.kind is TestKind.ABS_POW:
            return f"|x-{self.c:g}|^{self.s:g}"
        if self.kind is TestKind.POW_PLUS:
            return f"(x-{self.c:g})_+^{self.s:g}"
        return self.label or "custom"


def abspow(c: float, s: float) -> TestFunction:
    return TestFunction(TestKind.ABS_POW, c, s)


def powplus(xi: float, s: float) -> TestFunction:
    return TestFunction(TestKind.POW_PLUS, xi, s)


def custom(fn: Callable, label: str = "") -> TestFunction:
    return TestFunction(TestKind.CUSTOM, fn=fn, label=label)


def _as_test_function(f) -> TestFunction:
    if isinstance(f, TestFunction):
        return f
    if callable(f):
        return custom(f)
    raise TypeError(f"expected TestFunction or callable, got {type(f)!r}")


# ---------------------------------------------------------------------------
# Reference oracle.
#
# The integral over [-1, 1] is assembled from regions, each parametrized
# by the distance z to its own singular (or potentially singular) point:
#
#   left   z = 1 + x        weight ~ z^beta (log z) near z = 0
#   right  z = 1 - x        weight ~ z^alpha near z = 0
#   kink   z = |x - c|      integrand ~ z^s near z = 0
#
# Every region runs from z = 0 to the midpoint of its segment, so the
# regions tile [-1, 1] exactly and no evaluation ever subtracts nearly
# equal quantities.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Region:
    variable: str       # "left", "right" or "kink"
    length: float       # upper z limit
    exponent: float     # local algebraic behavior z^exponent at z = 0
    kink_side: int = 0  # for "kink": x = c + kink_side * z


def _regions_for(weight: WeightSpec, f: TestFunction) -> tuple[_Region, ...]:
    if f.kind is TestKind.POW_PLUS:
        # The integrand vanishes identically left of xi.
        half = (1.0 - f.c) / 2.0
        return (
            _Region("kink", half, f.s, +1),
            _Region("right", half, weight.alpha),
        )
    c = f.c if f.kind is TestKind.ABS_POW else 0.0
    kink_exp = f.s if f.kind is TestKind.ABS_POW else 0.0
    lhalf = (1.0 + c) / 2.0
    rhalf = (1.0 - c) / 2.0
    return (
        _Region("left", lhalf, weight.beta),
        _Region("kink", lhalf, kink_exp, -1),
        _Region("kink", rhalf, kink_exp, +1),
        _Region("right", rhalf, weight.alpha),
    )


def _panel_depth(exponent: float, length: float) -> int:
    """Number of dyadic panels so the dropped tail mass is ~1e-16."""
    z, depth = length, 0
    while depth < 4000:
        tail = z ** (1.0 + exponent) * (1.0 + abs(math.log(z)))
        if tail <= 1e-16:
            break
        z *= 0.5
        depth += 1
    return max(depth, 4)


def _float_region(weight: WeightSpec, f: TestFunction, region: _Region) -> list[float]:
    """Contributions of one region under graded-panel Gauss-Legendre."""
    c = f.c if f.kind is not TestKind.CUSTOM else 0.0
    depth = _panel_depth(region.exponent, region.length)
    hi = region.length * np.exp2(-np.arange(depth, dtype=float))
    lo = hi * 0.5
    mid, half = (hi + lo) / 2.0, (hi - lo) / 2.0
    z = mid[:, None] + half[:, None] * _PANEL_NODES[None, :]
    wq = half[:, None] * _PANEL_WEIGHTS[None, :]

    log_weight = weight.kind is WeightKind.LOGJACOBI
    if region.variable == "left":
        w = z ** weight.beta * (2.0 - z) ** weight.alpha
        if log_weight:
            w = w * np.log(z / 2.0)
        if f.kind is TestKind.ABS_POW:
            fv = ((1.0 + c) - z) ** f.s
        else:
            fv = f(z - 1.0)
    elif region.variable == "right":
        w = z ** weight.alpha * (2.0 - z) ** weight.beta
        if log_weight:
            w = w * np.log1p(-z / 2.0)
        if f.kind is TestKind.ABS_POW:
            fv = ((1.0 - c) - z) ** f.s
        elif f.kind is TestKind.POW_PLUS:
            fv = ((1.0 - c) - z) ** f.s
        else:
            fv = f(1.0 - z)
    else:
        one_minus = (1.0 - c) - region.kink_side * z
        one_plus = (1.0 + c) + region.kink_side * z
        w = one_minus ** weight.alpha * one_plus ** weight.beta
        if log_weight:
            w = w * np.log(one_plus / 2.0)
        if f.kind is TestKind.CUSTOM:
            fv = f(c + region.kink_side * z)
        else:
            fv = z ** f.s
    return list(np.ravel(wq * w * fv))


def _float_value(weight: WeightSpec, f: TestFunction) -> float:
    terms: list[float] = []
    for region in _regions_for(weight, f):
        terms.extend(_float_region(weight, f, region))
    return math.fsum(terms)


def _mp_region(weight: WeightSpec, f: TestFunction, region: _Region):
    """One region integrated by double-exponential quadrature in mpf."""
    alpha = mp.mpf(weight.alpha)
    beta = mp.mpf(weight.beta)
    s = mp.mpf(f.s)
    c = mp.mpf(f.c if f.kind is not TestKind.CUSTOM else 0.0)
    log_weight = weight.kind is WeightKind.LOGJACOBI
    kind = f.kind
    side = region.kink_side

    if region.variable == "left":
        def integrand(z):
            if z <= 0:
                return mp.mpf(0)
            w = z ** beta * (2 - z) ** alpha
            if log_weight:
                w *= mp.log(z / 2)
            if kind is TestKind.ABS_POW:
                v = (1 + c) - z
                fv = (v if v > 0 else mp.mpf(0)) ** s
            else:
                fv = mp.mpf(float(f.fn(float(z - 1))))
            return w * fv
    elif region.variable == "right":
        def integrand(z):
            if z <= 0:
                return mp.mpf(0)
            w = z ** alpha * (2 - z) ** beta
            if log_weight:
                w *= mp.log(1 - z / 2)
            if kind is TestKind.CUSTOM:
                fv = mp.mpf(float(f.fn(float(1 - z))))
            else:
                v = (1 - c) - z
                fv = (v if v > 0 else mp.mpf(0)) ** s
            return w * fv
    else:
        def integrand(z):
            if z < 0:
                return mp.mpf(0)
            one_minus = (1 - c) - side * z
            one_plus = (1 + c) + side * z
            if one_minus <= 0 or one_plus <= 0:
                return mp.mpf(0)
            w = one_minus ** alpha * one_plus ** beta
            if log_weight:
                w *= mp.log(one_plus / 2)
            if kind is TestKind.CUSTOM:
                fv = mp.mpf(float(f.fn(float(c + side * z))))
            else:
                fv = z ** s
            return w * fv

    return mp.quad(integrand, [0, region.length], error=True)


def _mp_value(weight: WeightSpec, f: TestFunction) -> tuple[float, float]:
    with mp.workdps(_ORACLE_DPS):
        total = mp.mpf(0)
        err = mp.mpf(0)
        for region in _regions_for(weight, f):
            val, e = _mp_region(weight, f, region)
            total += val
            err += abs(e)
        return float(total), float(err)


@lru_cache(maxsize=512)
def _oracle(weight: WeightSpec, f: TestFunction) -> tuple[float, float]:
    de_value, de_err = _mp_value(weight, f)
    panel_value = _float_value(weight, f)
    disagreement = abs(de_value - panel_value)
    scale = max(1.0, abs(de_value))
    if disagreement > _AGREEMENT_ABORT * scale:
        raise NumericalFailure(
            "reference oracle disagreement for "
            f"weight={weight}, f={f.describe()}: "
            f"double-exponential {de_value!r} vs graded-panel {panel_value!r} "
            f"(|diff| = {disagreement:.3e} > {_AGREEMENT_ABORT:g} * {scale:g})"
        )
    est = max(disagreement, de_err, abs(de_value) * 1e-16, 1e-300)
    return de_value, est


def oracle_integral(weight: WeightSpec, f) -> tuple[float, float]:
    """Reference value of integral(w * f) and its estimated absolute error."""
    return _oracle(weight, _as_test_function(f))


def reference_integral(weight: WeightSpec, f) -> float:
    """Reference value of integral(w * f); see oracle_integral for the error."""
    return oracle_integral(weight, f)[0]


# ---------------------------------------------------------------------------
# Rate theory and slope fitting.
# ---------------------------------------------------------------------------


def theoretical_rate(family: Family, weight: WeightSpec, s: float) -> tuple[float, bool]:
    """Predicted error exponent and whether an ln(n) factor accompanies it.

    Chebyshev-point rules: n^(-s-1) when min(alpha, beta) >= -1/2
    (Jacobi) resp. beta > -1/2 (log-Jacobi); otherwise the endpoint
    singularity throttles the rate to n^(-s-2-2*min(alpha, beta)) resp.
    n^(-s-2-2*beta) ln(n).  Gauss-Legendre under the unit weight:
    n^(-2s) for 0 < s < 1, n^(-2) ln(n) at s = 1, n^(-s-1) for s > 1.
    """
    family = Family(family)
    if s <= 0:
        raise ValueError(f"exponent must be positive, got {s}")
    if family is Family.GAUSS_LEGENDRE:
        if weight.kind is not WeightKind.JACOBI or weight.alpha or weight.beta:
            raise ValueError("Gauss-Legendre rate theory covers the unit weight only")
        if s < 1.0:
            return -2.0 * s, False
        if s == 1.0:
            return -2.0, True
        return -s - 1.0, False
    if weight.kind is WeightKind.JACOBI:
        smaller = min(weight.alpha, weight.beta)
        if smaller >= -0.5:
            return -s - 1.0, False
        return -s - 2.0 - 2.0 * smaller, False
    if weight.beta > -0.5:
        return -s - 1.0, False
    return -s - 2.0 - 2.0 * weight.beta, True


def fit_slope(
    ns: Sequence[int], errors: Sequence[float], window: tuple[int, int]
) -> tuple[float, float]:
    """Least-squares slope of log(error) against log(n) inside the window.

    Zero, negative and non-finite errors are excluded (they mark exact
    hits or noise-floor entries, not data).  Raises ValueError when
    fewer than 5 usable points remain or the data are degenerate.
    """
    ns = np.asarray(ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if ns.shape != errors.shape:
        raise ValueError("ns and errors must have matching shapes")
    lo, hi = window
    keep = (ns >= lo) & (ns <= hi) & np.isfinite(errors) & (errors > 0.0)
    if int(keep.sum()) < 5:
        raise ValueError(
            f"need at least 5 usable points in window {window}, got {int(keep.sum())}"
        )
    x = np.log(ns[keep])
    y = np.log(errors[keep])
    if np.ptp(x) == 0.0 or np.ptp(y) == 0.0:
        raise ValueError("degenerate fit data: no spread in n or in error")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(residual**2)) / ss_tot
    return float(slope), r_squared


def envelope_slope(
    ns: Sequence[int], errors: Sequence[float], window: tuple[int, int]
) -> tuple[float, float]:
    """Least-squares slope through the local maxima of the error sequence.

    Kink integrands make the quadrature error oscillate inside a
    C*n^slope envelope as nodes slide past the kink; a straight fit
    through all points then measures the oscillation as much as the
    decay (visible as a poor r_squared from fit_slope).  Fitting only
    the strict interior local maxima recovers the envelope exponent --
    the quantity the rate-line figures display.  The grid must be dense
    (ideally every integer in the window): on a sparse grid a point can
    be a maximum among its sampled neighbours while sitting nowhere
    near a true envelope peak.
    """
    ns = np.asarray(ns, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if ns.shape != errors.shape:
        raise ValueError("ns and errors must have matching shapes")
    lo, hi = window
    keep = (ns >= lo) & (ns <= hi) & np.isfinite(errors) & (errors > 0.0)
    x = ns[keep]
    y = errors[keep]
    (peaks,) = argrelmax(y, order=2)
    if len(peaks) < 5:
        raise ValueError(
            f"need at least 5 envelope peaks in window {window}, got {len(peaks)}"
        )
    return fit_slope(x[peaks], y[peaks], window)


@dataclass(frozen=True)
class ConvergenceReport:
    family: Family
    weight: WeightSpec
    test: TestFunction
    ns: tuple[int, ...]
    abs_errors: tuple[float, ...]
    fitted_slope: float
    r_squared: float
    theoretical_slope: float
    log_factor: bool
    passed: bool
    fit_window: tuple[int, int]
    reference: float
    oracle_error: float
    fit: str = "ols"


def _rule_error(family: Family, weight: WeightSpec, n: int, f: TestFunction,
                reference: float) -> float:
    if family is Family.GAUSS_LEGENDRE:
        rule = gauss_legendre(n)
    else:
        rule = rule_for(family, n, weight)
    return abs(reference - apply(rule, f))


def convergence_study(
    family: Family,
    weight: WeightSpec,
    f,
    ns: Sequence[int],
    fit_window: Optional[tuple[int, int]] = None,
    slope_tolerance: float = _SLOPE_TOLERANCE,
    fit: str = "ols",
) -> ConvergenceReport:
    """Sweep the rule over n, fit the error decay, compare with theory.

    Entries whose error sits within 1e3x of the oracle's own error
    estimate are treated as noise and excluded from the fit (never
    clamped).  When the theoretical rate carries an ln(n) factor the
    fit divides it out first.  The default window [max(100, ns[0]),
    ns[-1]] skips the pre-asymptotic regime.

    fit="ols" regresses through every usable point; fit="envelope"
    regresses through local error maxima only (see envelope_slope),
    which needs a dense n-grid but is insensitive to the node-kink
    oscillation that dominates sparse-grid OLS estimates.
    """
    family = Family(family)
    f = _as_test_function(f)
    ns = tuple(int(n) for n in ns)
    if any(b <= a for a, b in zip(ns, ns[1:])) or not ns:
        raise ValueError("ns must be strictly increasing and nonempty")
    if ns[0] < 10 or ns[-1] > 5000:
        raise ValueError("ns must lie within [10, 5000]")
    if f.kind is TestKind.CUSTOM:
        raise ValueError("rate prediction needs an AbsPow or PowPlus test function")
    if fit not in ("ols", "envelope"):
        raise ValueError(f"fit must be 'ols' or 'envelope', got {fit!r}")

    reference, est = oracle_integral(weight, f)
    theoretical_slope, log_factor = theoretical_rate(family, weight, f.s)
    errors = tuple(_rule_error(family, weight, n, f, reference) for n in ns)

    if fit_window is None:
        fit_window = (max(100, ns[0]), ns[-1])
    noise_floor = _NOISE_FLOOR_FACTOR * est
    fit_errors = np.asarray(errors, dtype=float)
    fit_errors = np.where(fit_errors > noise_floor, fit_errors, 0.0)
    if log_factor:
        fit_errors = fit_errors / np.log(np.asarray(ns, dtype=float))
    fitter = envelope_slope if fit == "envelope" else fit_slope
    fitted_slope, r_squared = fitter(ns, fit_errors, fit_window)
    passed = abs(fitted_slope - theoretical_slope) <= slope_tolerance
    return ConvergenceReport(
        family=family,
        weight=weight,
        test=f,
        ns=ns,
        abs_errors=errors,
        fitted_slope=fitted_slope,
        r_squared=r_squared,
        theoretical_slope=theoretical_slope,
        log_factor=log_factor,
        passed=passed,
        fit_window=(int(fit_window[0]), int(fit_window[1])),
        reference=reference,
        oracle_error=est,
        fit=fit,
    )


# ---------------------------------------------------------------------------
# Auxiliary studies.
# ---------------------------------------------------------------------------


def weight_sum_study(
    family: Family, weight: WeightSpec, ns: Sequence[int]
) -> list[tuple[int, float, float]]:
    """(n, sum of |w_j|, signed deviation from integral |w|) for each n.

    Both weight families keep one sign on (-1, 1) (the log factor is
    <= 0 throughout), so integral |w| is |M_0| resp. |G_0| and the
    interpolatory weight sums must converge to it.
    """
    family = Family(family)
    target = abs(moments_for(weight, 0).values[0])
    rows = []
    for n in ns:
        n = int(n)
        if family is Family.GAUSS_LEGENDRE:
            rule = gauss_legendre(n)
        else:
            rule = rule_for(family, n, weight)
        total = weight_abs_sum(rule)
        rows.append((n, total, total - target))
    return rows


def moment_decay_exponent(
    weight: WeightSpec, k_lo: int = 32, k_hi: int = 4096
) -> tuple[float, float, float]:
    """(fitted exponent, theoretical exponent, r^2) of the moment decay.

    Jacobi moments |M_k| decay like k^(-2-2*min_bar(alpha, beta));
    log-Jacobi moments carry an extra ln(2k), which is divided out
    before fitting so the exponent comparison is -2-2*beta.  Zero
    moments (symmetric weights, degenerate half-integer pairs) are
    excluded; degenerate tails raise ValueError.
    """
    if not 0 < k_lo < k_hi:
        raise ValueError(f"need 0 < k_lo < k_hi, got {k_lo}, {k_hi}")
    table = moments_for(weight, k_hi)
    ks = np.unique(np.round(np.geomspace(k_lo, k_hi, 30)).astype(int))
    vals = np.abs(table.values[ks])
    if weight.kind is WeightKind.LOGJACOBI:
        vals = vals / np.log(2.0 * ks)
        theoretical = -2.0 - 2.0 * weight.beta
    else:
        theoretical = -2.0 - 2.0 * min_bar(weight.alpha, weight.beta)
    # Magnitudes at the roundoff floor of the recurrence are noise.
    floor = np.max(vals) * 1e-13
    usable = np.where(vals > floor, vals, 0.0)
    fitted, r_squared = fit_slope(ks, usable, (k_lo, k_hi))
    return fitted, theoretical, r_squared


@dataclass(frozen=True)
class OpenProblemReport:
    """Gauss-vs-Clenshaw-Curtis rates on a Jacobi weight; informational only.

    Whether the n-point Gauss rule of the Jacobi weight matches the
    Chebyshev-rule rate for X^s integrands is open, so this report
    carries fitted slopes and no pass/fail verdict.  Columns: the Gauss
    rule built for the weight itself, Gauss-Legendre applied to the
    weighted integrand, and the weighted Clenshaw-Curtis rule.
    """

    weight: WeightSpec
    test: TestFunction
    ns: tuple[int, ...]
    gauss_jacobi_errors: tuple[float, ...]
    gauss_legendre_errors: tuple[float, ...]
    clenshaw_curtis_errors: tuple[float, ...]
    slopes: dict
    chebyshev_rate: float
    reference: float


def gauss_open_problem_study(
    weight: WeightSpec, f, ns: Sequence[int],
    fit_window: Optional[tuple[int, int]] = None,
) -> OpenProblemReport:
    import scipy.special

    f = _as_test_function(f)
    if weight.kind is not WeightKind.JACOBI:
        raise ValueError("the open-problem experiment uses Jacobi weights")
    if f.kind is TestKind.CUSTOM:
        raise ValueError("the open-problem experiment needs an X^s test function")
    ns = tuple(int(n) for n in ns)
    reference, _ = oracle_integral(weight, f)
    gj, gl, cc = [], [], []
    for n in ns:
        x, w = scipy.special.roots_jacobi(n, weight.alpha, weight.beta)
        gj.append(abs(reference - math.fsum(w * f(x))))
        rule = gauss_legendre(n)
        gl.append(abs(reference - math.fsum(rule.weights * weight(rule.nodes) * f(rule.nodes))))
        cc.append(abs(reference - apply(rule_for(Family.CLENSHAW_CURTIS, n, weight), f)))
    if fit_window is None:
        fit_window = (max(100, ns[0]), ns[-1])
    slopes = {}
    for name, errs in (("gauss-jacobi", gj), ("gauss-legendre", gl),
                       ("clenshaw-curtis", cc)):
        try:
            slopes[name] = fit_slope(ns, errs, fit_window)
        except ValueError:
            slopes[name] = (math.nan, math.nan)
    rate, _ = theoretical_rate(Family.CLENSHAW_CURTIS, weight, f.s)
    return OpenProblemReport(
        weight=weight,
        test=f,
        ns=ns,
        gauss_jacobi_errors=tuple(gj),
        gauss_legendre_errors=tuple(gl),
        clenshaw_curtis_errors=tuple(cc),
        slopes=slopes,
        chebyshev_rate=rate,
        reference=reference,
    )
