"""Independent oracles for the test suite.

Everything here is deliberately separate from the package implementation:
exact-rational Bessel partial sums with alternating-series remainder bounds,
and a brute-force shortest-path search over an explicit edge list.
"""

from fractions import Fraction
from math import factorial


def j_partial(n: int, terms: int) -> Fraction:
    """Rational partial sum of J_n(2) = sum (-1)^k / (k!(n+k)!)."""
    return sum(
        (Fraction((-1) ** k, factorial(k) * factorial(n + k)) for k in range(terms)),
        Fraction(0),
    )


def j_oracle(n: int, terms: int = 45) -> tuple[Fraction, Fraction]:
    """(partial sum, remainder bound): |J_n(2) - partial| <= bound.

    The terms alternate with strictly decreasing magnitude, so the remainder
    is bounded by the first omitted term.
    """
    return j_partial(n, terms), Fraction(1, factorial(terms) * factorial(n + terms))


def pi_oracle(n: int, terms: int = 45) -> Fraction:
    """Closed-form stationary probability from the rational J oracle."""
    denom = 2 * j_partial(3, terms) + j_partial(0, terms)
    if n == 0:
        return j_partial(0, terms) / denom
    return 2 * (j_partial(n + 2, terms) - j_partial(n + 3, terms)) / denom


def brute_force_passage_times(edges: dict, sources: list) -> dict:
    """Single-source-set shortest times by exhaustive relaxation
    (Bellman-Ford style) over an explicit finite edge list.

    edges: {(u, v): weight} undirected; sources get time 0.
    """
    nodes = set()
    for u, v in edges:
        nodes.add(u)
        nodes.add(v)
    nodes.update(sources)
    dist = {v: float("inf") for v in nodes}
    for s in sources:
        dist[s] = 0.0
    for _ in range(len(nodes)):
        changed = False
        for (u, v), w in edges.items():
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            break
    return dist
