"""Headline constants of ladder first-passage percolation.

* time constant  tau = 1/(1 + pi_0) = (2*J_3 + J_0)/(2*J_3 + 2*J_0)
* residual-time coefficients  gamma_n = E[time to next height increase | front = n]
* average residual time  T = sum_n pi_n * gamma_n

The gamma coefficients satisfy the first-step recursion

    gamma_0 = 1/2,
    gamma_n = (1 + 2*gamma_{n-1} + sum_{j<=n-2} gamma_j) / (n+2),  n >= 1,

whose increments telescope to gamma_n - gamma_{n-1} = 1/(n+2)!.  The closed
form consistent with those boundary values is

    gamma_n = sum_{j=0}^{n+2} 1/j!  -  2     for all n >= 0

(the -2 offset is forced by gamma_1 = 2/3; without it the sum gives 8/3).
Both routes are exposed and verified to coincide; T computed from the
rearranged series below is asserted against the direct sum pi_n*gamma_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bessel import BoundedReal, bessel_j
from .chain import pi, pi0

__all__ = [
    "HeadlineConstants",
    "time_constant",
    "gamma_residual",
    "gamma_residual_recursion",
    "avg_residual_time",
    "avg_residual_time_direct",
    "headline_constants",
]


def time_constant(tol: float) -> BoundedReal:
    """tau = (2*J_3 + J_0)/(2*J_3 + 2*J_0), the long-run time per unit height."""
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    sub = tol / 16.0
    j0 = bessel_j(0, sub)
    j3 = bessel_j(3, sub)
    out = (2 * j3 + j0) / (2 * j3 + 2 * j0)
    if out.err > tol:
        raise ValueError(f"cannot reach tol={tol} for tau (err={out.err:.2e})")
    return out


def gamma_residual(n: int) -> Fraction:
    """Exact gamma_n = sum_{j=0}^{n+2} 1/j! - 2 (equals 1/2 at n = 0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum((Fraction(1, math.factorial(j)) for j in range(n + 3)), Fraction(-2))


def gamma_residual_recursion(n: int) -> Fraction:
    """gamma_n by the first-step recursion; independent of the closed form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    g = [Fraction(1, 2)]
    acc = Fraction(0)  # sum of g[0..n-2]
    for m in range(1, n + 1):
        if m >= 2:
            acc += g[m - 2]
        g.append((1 + 2 * g[m - 1] + acc) / (m + 2))
    return g[n]


def avg_residual_time(tol: float) -> BoundedReal:
    """Average residual time T via the rearranged series

        T = [ J_0/2 + (4/3)*J_3 + 2*sum_{n>=1} J_{n+3}/(n+3)! ] / (2*J_3 + J_0).

    The sum's terms are below 1/((n+3)!)^2, so truncation tails are
    negligible after a handful of terms.  The returned value is asserted to
    agree with the direct sum over pi_n * gamma_n.
    """
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    sub = tol / 32.0
    j0 = bessel_j(0, sub)
    j3 = bessel_j(3, sub)
    total = j0 / 2 + (4 * j3) / 3
    stop = min(sub, 2.0 ** -56)
    n = 1
    while True:
        fact = math.factorial(n + 3)
        term = 2 * bessel_j(n + 3, sub) / fact
        total = total + term
        # J_{n+4} <= 1/(n+4)!; times 2/(n+4)! and a 1.1 geometric cover
        tail = 2.2 / float(math.factorial(n + 4)) ** 2
        if tail < stop:
            break
        n += 1
    total = total + BoundedReal(0.0, tail)
    out = total / (2 * j3 + j0)
    if out.err > tol:
        raise ValueError(f"cannot reach tol={tol} for T (err={out.err:.2e})")
    direct = avg_residual_time_direct(tol)
    if abs(direct.value - out.value) > direct.err + out.err:
        raise AssertionError(
            f"residual-time routes disagree: series {out.value!r} vs direct {direct.value!r}"
        )
    return out


def avg_residual_time_direct(tol: float, n_terms: int = 25) -> BoundedReal:
    """T by direct summation of pi_n * gamma_n (validation route).

    gamma_n < e - 2 < 1, so the dropped tail is below the tail mass of Pi
    beyond n_terms, itself below 1e-29 for the default 25 terms.
    """
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    sub = tol / 8.0
    total = BoundedReal.exact(0)
    for n in range(n_terms + 1):
        total = total + pi(n, sub / (n_terms + 1)) * gamma_residual(n)
    d = 2 * bessel_j(3, 1e-14) + bessel_j(0, 1e-14)
    jt = bessel_j(n_terms + 3, 1e-15)
    tail = 2.0 * (jt.value + jt.err) / (d.value - d.err)  # Pi tail * sup gamma < 1
    return total + BoundedReal(0.0, tail)


@dataclass(frozen=True)
class HeadlineConstants:
    """pi_0, the time constant, and the mean residual time, with bounds."""

    pi0: BoundedReal
    tau: BoundedReal
    T_resid: BoundedReal


def headline_constants(tol: float = 1e-10) -> HeadlineConstants:
    return HeadlineConstants(pi0(tol), time_constant(tol), avg_residual_time(tol))
