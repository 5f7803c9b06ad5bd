"""Independent reference values shared by the test modules.

Everything here deliberately avoids the recurrence/transform machinery in
``chebquad`` itself: moments come from a terminating hypergeometric sum
evaluated in 60-digit arithmetic, so agreement with the package is a real
cross-check rather than the same code run twice.
"""

from __future__ import annotations

import mpmath as mp

# 60 working digits: the terminating sum below has alternating terms that can
# exceed the result by ~4^k, so double precision would lose everything long
# before k = 40.  60 digits leaves ~35 guard digits at the largest k we use.
_DPS = 60


def _chebyshev_hyp_coeffs(k: int) -> list:
    """Coefficients c_m of T_k(x) = sum_m c_m ((1-x)/2)^m (terminating 2F1)."""
    c = [mp.mpf(1)]
    for m in range(k):
        c.append(c[-1] * (-k + m) * (k + m) / ((mp.mpf(1) / 2 + m) * (m + 1)))
    return c


def chebyshev_jacobi_moment(alpha: float, beta: float, k: int) -> float:
    """integral of T_k(x) (1-x)^alpha (1+x)^beta over [-1,1], in closed form.

    Substituting u = (1-x)/2 turns each power of (1-x)/2 into a Beta
    function, so the whole moment is a finite sum of Beta values.
    """
    with mp.workdps(_DPS):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        total = mp.mpf(0)
        for m, cm in enumerate(_chebyshev_hyp_coeffs(k)):
            total += cm * mp.beta(a + 1 + m, b + 1)
        return float(mp.mpf(2) ** (a + b + 1) * total)


def chebyshev_log_jacobi_moment(alpha: float, beta: float, k: int) -> float:
    """Same integral with an extra ln((x+1)/2) factor.

    ln((x+1)/2) is d/dbeta of ((x+1)/2)^beta, so each Beta-function term
    just picks up a digamma difference; no quadrature involved.
    """
    with mp.workdps(_DPS):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        psi_b1 = mp.digamma(b + 1)
        total = mp.mpf(0)
        for m, cm in enumerate(_chebyshev_hyp_coeffs(k)):
            total += cm * mp.beta(a + 1 + m, b + 1) * (
                psi_b1 - mp.digamma(a + b + m + 2)
            )
        return float(mp.mpf(2) ** (a + b + 1) * total)


def quad_jacobi_moment(alpha: float, beta: float, k: int,
                       log_factor: bool = False) -> float:
    """Direct adaptive quadrature of the same integrand (mpmath tanh-sinh).

    Only trustworthy for small k (the integrand makes k oscillations); used
    to spot-check the closed form, never as the primary reference.
    """
    with mp.workdps(40):
        a, b = mp.mpf(alpha), mp.mpf(beta)

        def integrand(x):
            val = mp.chebyt(k, x) * (1 - x) ** a * (1 + x) ** b
            if log_factor:
                val *= mp.log((1 + x) / 2)
            return val

        return float(mp.quad(integrand, [-1, 0, 1]))
