"""The front process of ladder first-passage percolation: generator matrix,
coefficient sequences, and the stationary distribution by two independent
routes.

The front F_t (absolute height difference of the two infection levels) is a
continuous-time Markov chain on the nonnegative integers.  Its stationary
distribution Pi satisfies pi_n = a_n*pi_0 - b_n, where a_n and b_n are
integer sequences obtained from the balance equations; both are also
expressible through the integer Bessel cross-products Upsilon(n, m).  The
closed form

    pi_0 = J_0 / (2*J_3 + J_0),      pi_n = 2*(J_{n+2} - J_{n+3}) / (2*J_3 + J_0)

is validated here against a dense linear solve of the truncated balance
equations, which never consults the closed form.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bessel import BoundedReal, bessel_j, upsilon

__all__ = [
    "QRow",
    "FrontDistribution",
    "RecursionReport",
    "q_row",
    "seq",
    "seq_via_upsilon",
    "pi0",
    "pi",
    "front_distribution",
    "stationary_truncated_solve",
    "check_sequence_recursions",
    "SEQ_INDEX_CAP",
]

SEQ_INDEX_CAP = 10_000


@dataclass(frozen=True)
class QRow:
    """One row of the front-chain intensity matrix.

    `entries` maps target states to off-diagonal rates; the diagonal is
    -(state + 2) so that the row sums to zero.
    """

    state: int
    entries: dict[int, int]
    diagonal: int

    def total_rate(self) -> int:
        return -self.diagonal


def q_row(n: int) -> QRow:
    """Transition rates out of front state n.

    From state 0 both candidate infections raise the height and lead to
    state 1, giving the single entry {1: 2}.  From n >= 1 the lagging level
    can advance by one (rate 2: rail plus rung), jump via any higher rung
    (rate 1 each, landing in 0..n-2), or the leading level extends (rate 1,
    to n+1).
    """
    if n < 0:
        raise ValueError("state must be >= 0")
    if n == 0:
        return QRow(0, {1: 2}, -2)
    entries = {j: 1 for j in range(n - 1)}
    entries[n - 1] = 2
    entries[n + 1] = 1
    return QRow(n, entries, -(n + 2))


# ---------------------------------------------------------------------------
# Coefficient sequences a_n, b_n with pi_n = a_n*pi_0 - b_n.
# Seeds from the first three balance equations; for n >= 4 both satisfy
#     c_n = c_{n-3} - (n+1)*c_{n-2} + (n+3)*c_{n-1}.

_seq_lock = threading.Lock()
_seq_memo = {"a": [3, 11, 56], "b": [1, 5, 26]}
_SEQ_MEMO_CAP = 2048


def seq(kind: str, n: int) -> int:
    """Exact a_n (kind='a') or b_n (kind='b') for n >= 1."""
    if kind not in ("a", "b"):
        raise ValueError("kind must be 'a' or 'b'")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > SEQ_INDEX_CAP:
        raise ValueError(f"sequence index {n} exceeds the supported cap {SEQ_INDEX_CAP}")
    with _seq_lock:
        memo = _seq_memo[kind]
        m = len(memo)  # memo holds indices 1..m
        while m < n and m < _SEQ_MEMO_CAP:
            memo.append(memo[-3] - (m + 2) * memo[-2] + (m + 4) * memo[-1])
            m += 1
        if n <= m:
            return memo[n - 1]
        c3, c2, c1 = memo[-3], memo[-2], memo[-1]
    while m < n:
        c3, c2, c1 = c2, c1, c3 - (m + 2) * c2 + (m + 4) * c1
        m += 1
    return c1


def seq_via_upsilon(kind: str, n: int) -> int:
    """Second route to a_n/b_n through Upsilon:

        b_n = Upsilon(n+3, 0) - Upsilon(n+2, 0)
        a_n = 2*[Upsilon(n+3, 3) - Upsilon(n+2, 3)] + b_n

    Must agree with `seq` exactly (checked for n = 1..200 in the test suite;
    the identity is derived for n >= 2 and holds empirically at n = 1 too).
    """
    if kind not in ("a", "b"):
        raise ValueError("kind must be 'a' or 'b'")
    if n < 1:
        raise ValueError("n must be >= 1")
    b = upsilon(n + 3, 0) - upsilon(n + 2, 0)
    if kind == "b":
        return b
    return 2 * (upsilon(n + 3, 3) - upsilon(n + 2, 3)) + b


# ---------------------------------------------------------------------------
# Stationary distribution: closed form.


def _denominator(tol: float) -> BoundedReal:
    # 2*J_3 + J_0 ~ 0.4818
    return 2 * bessel_j(3, tol) + bessel_j(0, tol)


def pi0(tol: float) -> BoundedReal:
    """pi_0 = J_0 / (2*J_3 + J_0) with error bound <= tol."""
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    sub = tol / 16.0
    out = bessel_j(0, sub) / _denominator(sub)
    if out.err > tol:  # never at reachable tolerances; retry once, tighter
        sub /= 64.0
        out = bessel_j(0, sub) / _denominator(sub)
        if out.err > tol:
            raise ValueError(f"cannot reach tol={tol} for pi_0 (err={out.err:.2e})")
    return out


def pi(n: int, tol: float) -> BoundedReal:
    """Stationary probability of front state n:

        pi_0 as above;  pi_n = 2*(J_{n+2} - J_{n+3}) / (2*J_3 + J_0), n >= 1.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if not tol > 0.0:
        raise ValueError("tol must be > 0")
    if n == 0:
        return pi0(tol)
    sub = tol / 16.0
    num = 2 * (bessel_j(n + 2, sub) - bessel_j(n + 3, sub))
    out = num / _denominator(sub)
    if out.err > tol:
        raise ValueError(f"cannot reach tol={tol} for pi_{n} (err={out.err:.2e})")
    return out


@dataclass
class FrontDistribution:
    """Stationary probabilities for states 0..K plus an analytic tail bound.

    `tail_bound` dominates the true tail mass 2*J_{K+3}/(2*J_3 + J_0).  For
    the closed-form route sum(probs) + tail = 1; for the truncated-solve
    route the probs renormalize the tail away, so sum(probs) = 1 up to float
    error.
    """

    probs: np.ndarray
    tail_bound: float
    K: int
    method: str = field(default="closed_form")


def _tail_bound(K: int) -> float:
    j = bessel_j(K + 3, 1e-15) if K + 3 < 170 else None
    if j is None:
        return 0.0  # beyond representable factorials the tail underflows
    d = _denominator(1e-14)
    return 2.0 * (j.value + j.err) / (d.value - d.err)


def front_distribution(K: int, tol: float = 1e-13) -> FrontDistribution:
    """Closed-form Pi truncated at state K."""
    if K < 0:
        raise ValueError("K must be >= 0")
    probs = np.array([pi(n, tol).value for n in range(K + 1)])
    return FrontDistribution(probs, _tail_bound(K), K, method="closed_form")


def stationary_truncated_solve(K: int) -> FrontDistribution:
    """Independent oracle for Pi: dense solve of the truncated balance system.

    Unknowns pi_0..pi_K.  Equations: (Pi Q)_j = 0 for columns j = 0..K-1
    (states beyond K carry zero mass), plus normalization sum = 1 in place
    of column K, which is the column most polluted by truncation.  One step
    of iterative refinement pushes the solve to near machine accuracy;
    entries whose true value sits below the ~1e-16 float noise floor may
    come out with either sign.
    """
    if K < 5:
        raise ValueError("K must be >= 5")
    A = np.zeros((K + 1, K + 1))
    for n in range(K + 1):
        row = q_row(n)
        A[n, n] = row.diagonal
        for j, rate in row.entries.items():
            if j <= K:
                A[n, j] = rate
    M = np.zeros((K + 1, K + 1))
    M[:K, :] = A.T[:K, :]
    M[K, :] = 1.0
    rhs = np.zeros(K + 1)
    rhs[K] = 1.0
    try:
        x = np.linalg.solve(M, rhs)
        x += np.linalg.solve(M, rhs - M @ x)
    except np.linalg.LinAlgError as exc:  # signals a Q-construction bug
        raise RuntimeError("truncated balance system is singular; q_row is broken") from exc
    return FrontDistribution(x, _tail_bound(K), K, method="truncated_solve")


# ---------------------------------------------------------------------------
# Recursion checks on the sequences (exact arithmetic).


@dataclass(frozen=True)
class RecursionReport:
    """Outcome of the exact recursion checks up to index n_max."""

    n_max: int
    first_order_ok: bool  # c_n = (c_{n+1}-c_n)/(n+1) - (c_n-c_{n-1})/n, n >= 2
    difference_ok: bool  # C_{n+1} + C_{n-1} = (n+2)*C_n for C_n = (c_n-c_{n-1})/n, n >= 3
    n_checked: int
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return self.first_order_ok and self.difference_ok


def check_sequence_recursions(N: int) -> RecursionReport:
    """Verify both sequence recursions exactly up to index N (N >= 4).

    The first-order identity involves divisions by n and n+1 and is checked
    in rationals; the difference-sequence identity is pure integers.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    failures = []
    first_ok = True
    diff_ok = True
    for kind in ("a", "b"):
        c = {n: seq(kind, n) for n in range(1, N + 1)}
        for n in range(2, N):
            lhs = Fraction(c[n])
            rhs = Fraction(c[n + 1] - c[n], n + 1) - Fraction(c[n] - c[n - 1], n)
            if lhs != rhs:
                first_ok = False
                failures.append((kind, "first_order", n))
        C = {n: Fraction(c[n] - c[n - 1], n) for n in range(2, N + 1)}
        for n in range(3, N):
            if C[n + 1] + C[n - 1] != (n + 2) * C[n]:
                diff_ok = False
                failures.append((kind, "difference", n))
    n_checked = 2 * ((N - 2) + max(0, N - 3))
    return RecursionReport(N, first_ok, diff_ok, n_checked, tuple(failures))
