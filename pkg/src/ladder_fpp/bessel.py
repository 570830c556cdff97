"""Bessel functions J_n(2), Y_n(2) with rigorous error bounds, and the integer
cross-product Upsilon(n, m) = pi*[J_n(2) Y_m(2) - J_m(2) Y_n(2)].

Everything here is evaluated at fixed argument x = 2, where the series
simplify because (x/2)^k = 1.  Floating-point results carry an explicit
absolute error bound (`BoundedReal`) that accounts for series truncation and
float rounding.  Upsilon is computed purely in integer arithmetic via its
three-term recursion; the analytic definition is only used as a
bounded-precision cross-check at small orders, because the floating route
loses all precision once Upsilon grows factorially.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BoundedReal",
    "EULER_GAMMA",
    "PI",
    "bessel_j",
    "bessel_y",
    "harmonic",
    "upsilon",
    "upsilon_run",
    "upsilon_analytic",
]

# Euler-Mascheroni constant, 30 decimal digits (OEIS A001620); rounding to
# double adds < 6e-17 absolute error, covered by the constant below.
EULER_GAMMA_30 = "0.577215664901532860606512090082"
_EULER_GAMMA_ERR = 6e-17

# One extra binary digit of slack per float operation: covers the correctly
# rounded op itself plus int/Fraction -> float conversion of either operand.
_ULP = 2.0 ** -52
_TINY = 1e-300  # keeps err nonzero for subnormal-scale values


@dataclass(frozen=True)
class BoundedReal:
    """A float paired with a rigorous absolute error bound.

    Arithmetic propagates bounds conservatively: for every operation the
    exact-interval propagation term is added to a one-ulp rounding allowance
    on the computed value.
    """

    value: float
    err: float

    def __post_init__(self):
        if not (self.err >= 0.0) or math.isnan(self.value):
            raise ValueError(f"invalid BoundedReal({self.value}, {self.err})")

    @staticmethod
    def exact(x) -> "BoundedReal":
        """Wrap a value that is exactly representable as a double."""
        return BoundedReal(float(x), 0.0)

    @staticmethod
    def from_fraction(q: Fraction) -> "BoundedReal":
        v = float(q)  # correctly rounded
        return BoundedReal(v, abs(v) * 2.0 ** -53 + _TINY)

    def _coerce(self, other) -> "BoundedReal":
        if isinstance(other, BoundedReal):
            return other
        if isinstance(other, int):
            if abs(other) <= 2 ** 53:
                return BoundedReal.exact(other)
            return BoundedReal.from_fraction(Fraction(other))
        if isinstance(other, float):
            return BoundedReal.exact(other)
        if isinstance(other, Fraction):
            return BoundedReal.from_fraction(other)
        return NotImplemented

    def _slop(self, v: float) -> float:
        return abs(v) * _ULP + _TINY

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        v = self.value + o.value
        return BoundedReal(v, self.err + o.err + self._slop(v))

    __radd__ = __add__

    def __neg__(self):
        return BoundedReal(-self.value, self.err)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        v = self.value * o.value
        prop = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return BoundedReal(v, prop + self._slop(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        denom_low = abs(o.value) - o.err
        if denom_low <= 0.0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / o.value
        prop = (self.err + abs(v) * o.err) / denom_low
        return BoundedReal(v, prop + self._slop(v))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __abs__(self):
        return BoundedReal(abs(self.value), self.err)

    def __repr__(self):
        return f"BoundedReal({self.value!r} ± {self.err:.3e})"


EULER_GAMMA = BoundedReal(float(EULER_GAMMA_30), _EULER_GAMMA_ERR)
# math.pi is the correctly rounded double; |math.pi - pi| < 2.3e-16.
PI = BoundedReal(math.pi, 2.3e-16)


def harmonic(m: int) -> Fraction:
    """Exact harmonic number sum_{j=1}^{m} 1/j, with harmonic(0) = 0."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def _sum_terms(terms, compensated: bool):
    """Sum floats; return (total, rounding error bound).

    Compensated mode uses Neumaier summation, whose recovered total is
    accurate to one rounding of the result; plain mode bounds the error by
    one ulp of the running magnitude per addition.
    """
    if compensated:
        s = 0.0
        c = 0.0
        for t in terms:
            x = s + t
            if abs(s) >= abs(t):
                c += (s - x) + t
            else:
                c += (t - x) + s
            s = x
        total = s + c
        return total, abs(total) * _ULP + _TINY
    s = 0.0
    bound = 0.0
    for t in terms:
        s += t
        bound += abs(s) * _ULP
    return s, bound + _TINY


def bessel_j(n: int, tol: float | None, compensated: bool = True) -> BoundedReal:
    """J_n(2) = sum_{k>=0} (-1)^k / (k! (n+k)!) with |value - J_n(2)| <= err <= tol.

    Term magnitudes decrease strictly from k = 0, so the alternating-series
    remainder is bounded by the first omitted term.  Absolute accuracy below
    ~1e-16 is not reachable in double precision and raises ValueError;
    tol=None means "as tight as double precision allows" with the achieved
    bound reported in err.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if tol is not None and not tol > 0.0:
        raise ValueError("tol must be > 0")
    # The extra terms down to the double-precision floor are nearly free and
    # keep downstream propagated bounds tight; tol remains the contract.
    stop = 2.0 ** -56 if tol is None else min(tol / 4.0, 2.0 ** -56)
    terms = []
    k = 0
    denom = math.factorial(n)  # k! (n+k)! at k=0
    term = 1.0 / denom
    sign = 1.0
    while term > stop or k < 2:
        terms.append(sign * term)
        k += 1
        sign = -sign
        denom *= k * (n + k)
        term = 1.0 / denom
        if k > 400:  # unreachable: terms decay factorially
            raise RuntimeError("J series failed to converge")
    value, rounding = _sum_terms(terms, compensated)
    err = term + rounding  # first omitted term bounds the truncation
    if tol is not None and err > tol:
        raise ValueError(
            f"requested tol={tol} for J_{n}(2) is below the double-precision floor ({err:.2e})"
        )
    return BoundedReal(value, err)


def _y_finite_sum(n: int) -> Fraction:
    # sum_{k=0}^{n-1} (n-k-1)!/k!, exact
    return sum(
        (Fraction(math.factorial(n - k - 1), math.factorial(k)) for k in range(n)),
        Fraction(0),
    )


def bessel_y(n: int, tol: float | None, compensated: bool = True) -> BoundedReal:
    """Y_n(2) from the standard series, with |value - Y_n(2)| <= err <= tol.

    At x = 2 the log term vanishes and

        pi * Y_n(2) = 2*gamma*J_n(2) - sum_{k=0}^{n-1} (n-k-1)!/k!
                      - sum_{k>=0} (-1)^k (H_k + H_{n+k}) / (k! (n+k)!)

    with H_m the harmonic numbers.  The infinite sum's term ratio is below
    3/8 for k >= 1 (harmonic growth factor <= 3/2 against 1/((k+1)(n+k+1))
    <= 1/4), so the tail after term K >= 1 is at most 1.6x the next term.
    |Y_n(2)| grows like (n-1)!/pi; tolerances below the resulting rounding
    floor raise ValueError, and tol=None requests the achievable floor.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if tol is not None and not tol > 0.0:
        raise ValueError("tol must be > 0")
    jn = bessel_j(n, None, compensated)
    two_gamma_jn = 2.0 * EULER_GAMMA * jn
    finite = BoundedReal.from_fraction(_y_finite_sum(n))

    stop = 2.0 ** -56 if tol is None else min(tol / 4.0, 2.0 ** -56)
    terms = []
    k = 0
    denom = math.factorial(n)
    h_k = 0.0
    h_nk = float(harmonic(n))
    sign = 1.0
    while True:
        terms.append(sign * (h_k + h_nk) / denom)
        k += 1
        sign = -sign
        denom *= k * (n + k)
        h_k += 1.0 / k
        h_nk += 1.0 / (n + k)
        next_mag = (h_k + h_nk) / denom
        if k >= 2 and 1.6 * next_mag <= stop:
            break
        if k > 400:
            raise RuntimeError("Y series failed to converge")
    series_value, rounding = _sum_terms(terms, compensated)
    # harmonic increments accumulate <= k ulps of ~2*H_k <= 16 ulp each term
    series = BoundedReal(series_value, 1.6 * next_mag + rounding + len(terms) * 16.0 * _ULP)

    result = (two_gamma_jn - finite - series) / PI
    if tol is not None and result.err > tol:
        raise ValueError(
            f"requested tol={tol} for Y_{n}(2) is below the achievable floor ({result.err:.2e})"
        )
    return result


# ---------------------------------------------------------------------------
# Upsilon(n, m): exact integers by the three-term recursion
#     Upsilon(n+1, m) = n*Upsilon(n, m) - Upsilon(n-1, m),
# anchored at Upsilon(m, m) = 0, Upsilon(m+1, m) = 1.  Values for n < m come
# from running the same recursion downward.

_ups_lock = threading.Lock()
_ups_memo: dict[int, list[int]] = {}  # m -> [Upsilon(m, m), Upsilon(m+1, m), ...]
_UPS_MEMO_CAP = 2048  # entries kept per m; longer runs are streamed


def _ups_upward(m: int, n: int) -> int:
    with _ups_lock:
        run = _ups_memo.setdefault(m, [0, 1])
        top = m + len(run) - 1
        while top < n and len(run) < _UPS_MEMO_CAP:
            run.append(top * run[-1] - run[-2])
            top += 1
        if n <= top:
            return run[n - m]
        a, b = run[-2], run[-1]
    while top < n:
        a, b = b, top * b - a
        top += 1
    return b


def upsilon(n: int, m: int) -> int:
    """Exact integer Upsilon(n, m); requires n >= 0 and m >= 0."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    if n >= m:
        return _ups_upward(m, n)
    # downward: Upsilon(j-1, m) = j*Upsilon(j, m) - Upsilon(j+1, m)
    above, here = 1, 0  # values at m+1 and m
    j = m
    while j > n:
        above, here = here, j * here - above
        j -= 1
    return here


def upsilon_run(m: int, n_hi: int) -> list[int]:
    """[Upsilon(m, m), Upsilon(m+1, m), ..., Upsilon(n_hi, m)] in one pass."""
    if m < 0 or n_hi < m:
        raise ValueError("need 0 <= m <= n_hi")
    run = [0, 1]
    for j in range(m + 1, n_hi):
        run.append(j * run[-1] - run[-2])
    return run[: n_hi - m + 1]


def upsilon_analytic(n: int, m: int) -> BoundedReal:
    """pi*[J_n(2) Y_m(2) - J_m(2) Y_n(2)] with propagated bounds.

    Bounded-precision cross-check of the integer recursion; useless beyond
    n ~ 15 where the products cancel to below double precision.
    """
    jn = bessel_j(n, None)
    jm = bessel_j(m, None)
    yn = bessel_y(n, None)
    ym = bessel_y(m, None)
    return PI * (jn * ym - jm * yn)
