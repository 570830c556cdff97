"""Monte Carlo engines for ladder first-passage percolation.

Two independent simulators:

* `simulate_front_chain` -- exact Gillespie sampling of the front chain from
  its generator (holding time Exp(n+2) in state n, categorical jump
  proportional to the `q_row` rates).
* `simulate_fpp_ladder` -- lazy-Dijkstra shortest-path expansion over the raw
  ladder with Exp(1) edge weights sampled on first relaxation.  It never
  consults the generator, so reconstructing the front from its output
  (`front_of_fpp`) validates the chain model rather than assuming it.

Randomness: streams are Philox counter-based generators keyed by hashing
(seed, replicate_index) through numpy's SeedSequence, so replicates are
independent and results are reproducible regardless of scheduling.
Exponentials are drawn by inverse CDF, -log1p(-U) with U uniform on [0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappop, heappush

import numpy as np

__all__ = [
    "SimConfig",
    "ChainTrajectory",
    "FppRecord",
    "FrontPath",
    "SimEstimate",
    "make_stream",
    "simulate_front_chain",
    "simulate_fpp_ladder",
    "fpp_time_constant",
    "empirical_front_distribution",
    "empirical_residual_time",
    "front_state_at",
    "height_rate_estimate",
    "front_of_fpp",
    "front_transition_stats",
]

STATE_CAP = 10 ** 6  # front state this large signals a bug, not an excursion
_CHUNK = 1 << 16


def make_stream(seed: int, replicate: int = 0) -> np.random.Generator:
    """Philox stream for (seed, replicate); distinct replicates never collide."""
    key = np.random.SeedSequence((int(seed), int(replicate))).generate_state(2, np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class SimConfig:
    """Simulation request: exactly one of target_height / t_max must be set."""

    seed: int
    mode: str  # 'front_chain' | 'fpp_dijkstra'
    target_height: int | None = None
    t_max: float | None = None
    initial: str = "both_nodes"  # or 'single_node'
    replicates: int = 1
    burn_in: float = 100.0

    def __post_init__(self):
        if self.mode not in ("front_chain", "fpp_dijkstra"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.initial not in ("both_nodes", "single_node"):
            raise ValueError(f"unknown initial condition {self.initial!r}")
        if (self.target_height is None) == (self.t_max is None):
            raise ValueError("set exactly one of target_height / t_max")
        if self.target_height is not None and self.target_height < 1:
            raise ValueError("target_height must be >= 1")
        if self.t_max is not None and not self.t_max > 0:
            raise ValueError("t_max must be > 0")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be >= 0")


@dataclass
class ChainTrajectory:
    """Front-chain path as parallel event arrays.

    Event i: the chain sat in `states[i]` for `holding_times[i]`, then jumped;
    `height_incremented[i]` marks jumps that raised the infection height
    (exactly the n -> n+1 transitions, including 0 -> 1).
    """

    states: np.ndarray
    holding_times: np.ndarray
    height_incremented: np.ndarray
    total_time: float
    final_height: int
    final_state: int
    initial_state: int = 0
    _jump_times: np.ndarray | None = field(default=None, repr=False)

    @property
    def n_events(self) -> int:
        return len(self.states)

    @property
    def jump_times(self) -> np.ndarray:
        if self._jump_times is None:
            self._jump_times = np.cumsum(self.holding_times)
        return self._jump_times

    def events(self):
        """Iterate (state_before, holding_time, height_incremented) tuples."""
        for s, h, u in zip(self.states, self.holding_times, self.height_incremented):
            yield int(s), float(h), bool(u)


def simulate_front_chain(cfg: SimConfig, replicate: int = 0) -> ChainTrajectory:
    """Gillespie path of the front chain started at state 0.

    Runs until total time exceeds cfg.t_max (the straddling holding interval
    is kept in full) or until cfg.target_height increments have occurred.
    """
    if cfg.mode != "front_chain":
        raise ValueError("cfg.mode must be 'front_chain'")
    rng = make_stream(cfg.seed, replicate)
    e_hold = (-np.log1p(-rng.random(_CHUNK))).tolist()
    u_jump = rng.random(_CHUNK).tolist()
    ptr = 0
    cap = 1 << 16
    states = np.empty(cap, np.int64)
    holds = np.empty(cap, np.float64)
    incr = np.empty(cap, np.bool_)
    n_ev = 0
    t = 0.0
    s = 0
    height = 0
    t_max = cfg.t_max if cfg.t_max is not None else np.inf
    h_target = cfg.target_height if cfg.target_height is not None else None
    while True:
        if ptr == _CHUNK:
            e_hold = (-np.log1p(-rng.random(_CHUNK))).tolist()
            u_jump = rng.random(_CHUNK).tolist()
            ptr = 0
        if n_ev == cap:
            cap *= 2
            states = np.resize(states, cap)
            holds = np.resize(holds, cap)
            incr = np.resize(incr, cap)
        rate = s + 2
        dt = e_hold[ptr] / rate
        if s == 0:
            nxt, up = 1, True
        else:
            r = u_jump[ptr] * rate
            if r < 1.0:
                nxt, up = s + 1, True
            elif r < 3.0:
                nxt, up = s - 1, False
            else:
                nxt, up = int(r - 3.0), False
        ptr += 1
        states[n_ev] = s
        holds[n_ev] = dt
        incr[n_ev] = up
        n_ev += 1
        t += dt
        s = nxt
        if up:
            height += 1
        if s >= STATE_CAP:
            raise RuntimeError(
                f"front state reached {s}; excursions this large are impossible "
                "for a working generator"
            )
        if t > t_max or (h_target is not None and height >= h_target):
            break
    return ChainTrajectory(
        states[:n_ev].copy(), holds[:n_ev].copy(), incr[:n_ev].copy(), t, height, s
    )


# ---------------------------------------------------------------------------
# Raw first-passage percolation by lazy Dijkstra.


@dataclass
class FppRecord:
    """Settled infection times of the ladder up to (at least) target_height.

    infection_times[y, x] is T[(x, y)], +inf where not settled.  Edge weights
    are sampled lazily and stored by their lower endpoint: rail_weights[y, x]
    is the rail (x,y)-(x+1,y), rung_weights[x] the rung (x,0)-(x,1); NaN
    marks edges never relaxed.  Every vertex with infection time <=
    horizon_time is settled (Dijkstra settles in nondecreasing time order),
    so reconstructions are exact up to that horizon.
    """

    infection_times: np.ndarray
    settled: np.ndarray
    horizon_time: float
    target_height: int
    initial: str
    rail_weights: np.ndarray
    rung_weights: np.ndarray
    seed: int
    replicate: int

    def passage_time(self, height: int | None = None) -> float:
        """First time the infection reaches the given height (min over levels)."""
        h = self.target_height if height is None else height
        return float(min(self.infection_times[0, h], self.infection_times[1, h]))


def simulate_fpp_ladder(cfg: SimConfig, replicate: int = 0) -> FppRecord:
    """Multi-source Dijkstra over the ladder with Exp(1) weights drawn on
    first relaxation.

    Correctness with lazy sampling: any path escaping the settled region
    passes a frontier vertex whose tentative distance already exceeds every
    settled distance, and the unsampled edges beyond it are nonnegative.
    Heap ties are broken by vertex order (height, then level); ties have
    probability zero under continuous weights.
    """
    if cfg.mode != "fpp_dijkstra":
        raise ValueError("cfg.mode must be 'fpp_dijkstra'")
    if cfg.target_height is None:
        raise ValueError("fpp_dijkstra needs target_height")
    H = cfg.target_height
    rng = make_stream(cfg.seed, replicate)
    buf = (-np.log1p(-rng.random(_CHUNK))).tolist()
    bp = 0

    size = H + 1 + 64
    rail = np.full((2, size), np.nan)
    rung = np.full(size, np.nan)
    dist = np.full((2, size), np.inf)
    settled = np.zeros((2, size), np.bool_)

    def grow():
        nonlocal rail, rung, dist, settled, size
        add = size
        rail = np.concatenate([rail, np.full((2, add), np.nan)], axis=1)
        rung = np.concatenate([rung, np.full(add, np.nan)])
        dist = np.concatenate([dist, np.full((2, add), np.inf)], axis=1)
        settled = np.concatenate([settled, np.zeros((2, add), np.bool_)], axis=1)
        size += add

    def draw() -> float:
        nonlocal buf, bp
        if bp == _CHUNK:
            buf = (-np.log1p(-rng.random(_CHUNK))).tolist()
            bp = 0
        w = buf[bp]
        bp += 1
        return w

    heap = [(0.0, 0, 0)]
    dist[0, 0] = 0.0
    if cfg.initial == "both_nodes":
        dist[1, 0] = 0.0
        heap.append((0.0, 0, 1))
    remaining = 2 * (H + 1)
    horizon = 0.0
    while remaining:
        d, x, y = heappop(heap)
        if settled[y, x]:
            continue
        settled[y, x] = True
        horizon = d
        if x <= H:
            remaining -= 1
        if x + 1 >= size:
            grow()
        if not settled[y, x + 1]:
            w = rail[y, x]
            if w != w:
                w = draw()
                rail[y, x] = w
            nd = d + w
            if nd < dist[y, x + 1]:
                dist[y, x + 1] = nd
                heappush(heap, (nd, x + 1, y))
        if x > 0 and not settled[y, x - 1]:
            w = rail[y, x - 1]
            if w != w:
                w = draw()
                rail[y, x - 1] = w
            nd = d + w
            if nd < dist[y, x - 1]:
                dist[y, x - 1] = nd
                heappush(heap, (nd, x - 1, y))
        if not settled[1 - y, x]:
            w = rung[x]
            if w != w:
                w = draw()
                rung[x] = w
            nd = d + w
            if nd < dist[1 - y, x]:
                dist[1 - y, x] = nd
                heappush(heap, (nd, x, 1 - y))
    return FppRecord(
        infection_times=dist,
        settled=settled,
        horizon_time=horizon,
        target_height=H,
        initial=cfg.initial,
        rail_weights=rail,
        rung_weights=rung,
        seed=cfg.seed,
        replicate=replicate,
    )


@dataclass(frozen=True)
class SimEstimate:
    """Point estimate with standard error; n_samples counts batches or replicates."""

    mean: float
    std_err: float
    n_samples: int
    quantity: str

    def __post_init__(self):
        if self.std_err < 0:
            raise ValueError("std_err must be >= 0")


def _replicate_passage(args) -> tuple[int, float]:
    seed, rep, height, initial = args
    cfg = SimConfig(seed=seed, mode="fpp_dijkstra", target_height=height, initial=initial)
    rec = simulate_fpp_ladder(cfg, replicate=rep)
    return rep, rec.passage_time() / height


def fpp_time_constant(cfg: SimConfig, jobs: int = 1) -> tuple[SimEstimate, np.ndarray]:
    """Replicate estimate of tau from T_H / H; returns (estimate, per-replicate values)."""
    if cfg.mode != "fpp_dijkstra":
        raise ValueError("cfg.mode must be 'fpp_dijkstra'")
    args = [(cfg.seed, r, cfg.target_height, cfg.initial) for r in range(cfg.replicates)]
    if jobs > 1 and cfg.replicates > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            out = sorted(pool.map(_replicate_passage, args))
    else:
        out = [_replicate_passage(a) for a in args]
    values = np.array([v for _, v in out])
    mean = float(values.mean())
    se = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else 0.0
    return SimEstimate(mean, se, len(values), "tau"), values


# ---------------------------------------------------------------------------
# Estimators over a chain trajectory.


def _batch_edges(lo: float, hi: float, n_batches: int) -> np.ndarray:
    if not hi > lo:
        raise ValueError("empty averaging window")
    return lo + (hi - lo) * np.arange(n_batches + 1) / n_batches


def empirical_front_distribution(
    traj: ChainTrajectory, burn_in: float, n_batches: int = 100
) -> list[SimEstimate]:
    """Time-weighted occupation fraction per state over [burn_in, total_time].

    Standard errors come from batch means over n_batches equal time slices;
    holding times are correlated, so plain per-event variances would be
    optimistic.
    """
    if burn_in >= traj.total_time:
        raise ValueError("burn_in must be < total_time")
    ends = traj.jump_times
    starts = ends - traj.holding_times
    n_states = int(traj.states.max()) + 1
    edges = _batch_edges(burn_in, traj.total_time, n_batches)
    occ = np.zeros((n_batches, n_states))
    for b in range(n_batches):
        lo, hi = edges[b], edges[b + 1]
        i0 = np.searchsorted(ends, lo, side="right")
        i1 = np.searchsorted(starts, hi, side="left")
        overlap = np.minimum(ends[i0:i1], hi) - np.maximum(starts[i0:i1], lo)
        occ[b] = np.bincount(
            traj.states[i0:i1], weights=np.clip(overlap, 0.0, None), minlength=n_states
        ) / (hi - lo)
    means = occ.mean(axis=0)
    ses = occ.std(axis=0, ddof=1) / np.sqrt(n_batches)
    return [
        SimEstimate(float(means[s]), float(ses[s]), n_batches, f"pi_{s}")
        for s in range(n_states)
    ]


def height_rate_estimate(
    traj: ChainTrajectory, burn_in: float, n_batches: int = 100
) -> SimEstimate:
    """Height increments per unit time (the percolation rate 1/tau), batch means."""
    if burn_in >= traj.total_time:
        raise ValueError("burn_in must be < total_time")
    inc_times = traj.jump_times[traj.height_incremented]
    edges = _batch_edges(burn_in, traj.total_time, n_batches)
    counts = np.diff(np.searchsorted(inc_times, edges))
    rates = counts / np.diff(edges)
    return SimEstimate(
        float(rates.mean()),
        float(rates.std(ddof=1) / np.sqrt(n_batches)),
        n_batches,
        "inv_tau",
    )


def empirical_residual_time(
    traj: ChainTrajectory, sample_times: np.ndarray
) -> tuple[SimEstimate, int]:
    """Mean waiting time from each sample time to the next height increment.

    Sample times whose next increment lies beyond the trajectory end are
    excluded; the count of exclusions is returned alongside the estimate.
    Sample times spaced well beyond the chain's O(1) mixing time are
    effectively independent, so the plain standard error is reported.
    """
    sample_times = np.asarray(sample_times, dtype=float)
    inc_times = traj.jump_times[traj.height_incremented]
    idx = np.searchsorted(inc_times, sample_times, side="right")
    ok = idx < len(inc_times)
    resid = inc_times[idx[ok]] - sample_times[ok]
    n = int(ok.sum())
    if n == 0:
        raise ValueError("no sample time has a following height increment")
    se = float(resid.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return SimEstimate(float(resid.mean()), se, n, "mean_residual"), int(len(sample_times) - n)


def front_state_at(traj: ChainTrajectory, times: np.ndarray) -> np.ndarray:
    """Chain state at each time (times must lie in [0, total_time))."""
    times = np.asarray(times, dtype=float)
    if times.size and (times.min() < 0 or times.max() >= traj.jump_times[-1]):
        raise ValueError("times must lie within the trajectory")
    idx = np.searchsorted(traj.jump_times, times, side="right")
    return traj.states[idx]


# ---------------------------------------------------------------------------
# Front/height reconstruction from raw percolation output.


@dataclass
class FrontPath:
    """Piecewise-constant front and height processes rebuilt from infection
    times, valid on [start_time, end_time] (end = record horizon).

    For a single-node start the segment before both levels are infected is
    discarded; start_time is then the first level-1 infection time.
    """

    start_time: float
    end_time: float
    initial_state: int
    initial_height: int
    times: np.ndarray  # front jump times
    states: np.ndarray  # front state after each jump
    height_times: np.ndarray  # height increment times
    heights: np.ndarray  # height after each increment

    def state_at(self, t: float) -> int:
        if not (self.start_time <= t <= self.end_time):
            raise ValueError("t outside the reconstructed window")
        i = np.searchsorted(self.times, t, side="right")
        return self.initial_state if i == 0 else int(self.states[i - 1])

    def height_at(self, t: float) -> int:
        if not (self.start_time <= t <= self.end_time):
            raise ValueError("t outside the reconstructed window")
        i = np.searchsorted(self.height_times, t, side="right")
        return self.initial_height if i == 0 else int(self.heights[i - 1])


def front_of_fpp(record: FppRecord) -> FrontPath:
    """Rebuild F_t = |N^(0)_t - N^(1)_t| and N_t from settled infection times.

    Only infections that raise a level's running maximum move the front;
    later fill-ins of skipped vertices are ignored.
    """
    t0 = record.infection_times[0][record.settled[0]]
    x0 = np.nonzero(record.settled[0])[0]
    t1 = record.infection_times[1][record.settled[1]]
    x1 = np.nonzero(record.settled[1])[0]
    times = np.concatenate([t0, t1])
    xs = np.concatenate([x0, x1])
    level = np.concatenate([np.zeros(len(x0), np.int8), np.ones(len(x1), np.int8)])
    order = np.argsort(times, kind="stable")

    cur = [-1, -1]
    f_times, f_states = [], []
    h_times, h_vals = [], []
    start = None
    init_state = init_height = 0
    for i in order:
        t, x, y = float(times[i]), int(xs[i]), int(level[i])
        if x <= cur[y]:
            continue
        prev_n = max(cur)
        cur[y] = x
        n_t = max(cur)
        if start is None:
            if cur[0] >= 0 and cur[1] >= 0:
                start = t
                init_state = abs(cur[0] - cur[1])
                init_height = n_t
            continue
        f_times.append(t)
        f_states.append(abs(cur[0] - cur[1]))
        if n_t > prev_n:
            h_times.append(t)
            h_vals.append(n_t)
    if start is None:
        raise ValueError("record never infected both levels")
    return FrontPath(
        start_time=start,
        end_time=record.horizon_time,
        initial_state=init_state,
        initial_height=init_height,
        times=np.array(f_times),
        states=np.array(f_states, dtype=np.int64),
        height_times=np.array(h_times),
        heights=np.array(h_vals, dtype=np.int64),
    )


def front_transition_stats(path: FrontPath):
    """(counts, exposure): jump counts per (from, to) pair and time spent per
    state, censored at the path horizon.  counts[s][s'] / exposure[s] estimates
    the generator rate q(s, s')."""
    counts: dict[int, dict[int, int]] = {}
    n_states = int(max(path.initial_state, path.states.max() if len(path.states) else 0)) + 1
    exposure = np.zeros(n_states)
    s = path.initial_state
    t = path.start_time
    for jt, ns in zip(path.times, path.states):
        if jt > path.end_time:
            break
        exposure[s] += jt - t
        counts.setdefault(s, {}).setdefault(int(ns), 0)
        counts[s][int(ns)] += 1
        s, t = int(ns), float(jt)
    exposure[s] += max(0.0, path.end_time - t)
    return counts, exposure
