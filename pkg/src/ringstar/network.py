"""Heterogeneous, time-varying ring-star network of memristive Chialvo maps.

Node numbering follows the model's convention: node 1 is the hub, nodes
2..N form the ring. Arrays are 0-based, so row ``m - 1`` holds node ``m``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

from . import _kernels
from .errors import ConfigError, DivergenceError
from .neuron import DEFAULT_GUARD, NeuronParams, NeuronState

LINK_MODES = ("layer", "link")
STAR_SIGNS = {"printed": 1.0, "diffusive": -1.0}
RING_SIGNS = {"printed": 1.0, "reversed": -1.0}

# number of steps whose coupling draws are generated in one block
_CHUNK = 1000

# (purpose -> child index) of the per-run SeedSequence
_STREAMS = ("init", "xi_sigma", "xi_mu", "ring", "star")


@dataclass(frozen=True)
class NetworkConfig:
    n_nodes: int = 100
    r_neighbors: int = 2
    sigma0: float = 0.0
    mu0: float = 0.0
    d_sigma: float = 0.0
    d_mu: float = 0.0
    p_sigma: float = 1.0
    p_mu: float = 1.0
    noise_lo: float = -0.001
    noise_hi: float = 0.001
    n_total: int = 20_000
    n_transient: int = 10_000
    seed: int = 0
    neuron: NeuronParams = field(default_factory=NeuronParams)
    # "layer": one Bernoulli draw per layer per step; "link": one per link per step
    link_mode: str = "layer"
    # "printed": +mu_m (x_m - x_1) on ring nodes; "diffusive": +mu_m (x_1 - x_m)
    star_sign: str = "printed"
    # "printed": +sigma_i (x_i - x_m); "reversed": +sigma_i (x_m - x_i)
    ring_sign: str = "printed"
    guard: float = DEFAULT_GUARD

    @property
    def n_keep(self) -> int:
        return self.n_total - self.n_transient

    def validate(self, paper_mode: bool = False) -> list[str]:
        """Raise ``ConfigError`` on hard violations; return soft warnings."""
        n, r = self.n_nodes, self.r_neighbors
        if n < 3:
            raise ConfigError("need at least 3 nodes", "n_nodes")
        # 2R distinct neighbours among N - 1 ring nodes, excluding the node itself
        if not 1 <= r <= (n - 2) // 2:
            raise ConfigError(f"must satisfy 1 <= R <= {(n - 2) // 2} for N={n}", "r_neighbors")
        for name in ("p_sigma", "p_mu"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigError("probability must lie in [0, 1]", name)
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and not math.isfinite(v):
                raise ConfigError("must be finite", f.name)
        if self.noise_lo > self.noise_hi:
            raise ConfigError("noise_lo must not exceed noise_hi", "noise_lo")
        if not 0 <= self.n_transient < self.n_total:
            raise ConfigError("need 0 <= n_transient < n_total", "n_transient")
        if self.link_mode not in LINK_MODES:
            raise ConfigError(f"one of {LINK_MODES}", "link_mode")
        if self.star_sign not in STAR_SIGNS:
            raise ConfigError(f"one of {tuple(STAR_SIGNS)}", "star_sign")
        if self.ring_sign not in RING_SIGNS:
            raise ConfigError(f"one of {tuple(RING_SIGNS)}", "ring_sign")
        if not self.guard > 0:
            raise ConfigError("must be positive", "guard")

        warnings = self.neuron.validate(paper_mode)
        ranges = {
            "sigma0": (-0.01, 0.01),
            "mu0": (-0.001, 0.001),
            "d_sigma": (0.0, 0.1),
            "d_mu": (0.0, 0.1),
        }
        for name, (lo, hi) in ranges.items():
            v = getattr(self, name)
            if not lo <= v <= hi:
                msg = f"{v} outside the studied range [{lo}, {hi}]"
                if paper_mode:
                    raise ConfigError(msg, name)
                warnings.append(f"{name}: {msg}")
        return warnings

    def with_params(self, **overrides) -> NetworkConfig:
        """Copy with fields replaced; ``k`` and other neuron fields are routed to ``neuron``."""
        neuron_names = {f.name for f in fields(NeuronParams)}
        local = {k: v for k, v in overrides.items() if k in neuron_names}
        rest = {k: v for k, v in overrides.items() if k not in neuron_names}
        cfg = replace(self, **rest)
        if local:
            cfg = replace(cfg, neuron=replace(cfg.neuron, **local))
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CouplingDraw:
    """Couplings for one step.

    ``sigma`` and ``mu`` are per-node (length N). The activity flags are
    layer-wide; ``ring_links`` / ``star_links`` hold per-link activity in
    link mode and are ``None`` otherwise.
    """

    sigma: np.ndarray
    mu: np.ndarray
    star_active: bool
    ring_active: bool
    star_links: np.ndarray | None = None
    ring_links: np.ndarray | None = None

    def star_mask(self) -> np.ndarray:
        n_ring = len(self.mu) - 1
        if self.star_links is not None:
            return np.asarray(self.star_links, dtype=np.bool_)
        return np.full(n_ring, bool(self.star_active))

    def ring_mask(self, r_neighbors: int) -> np.ndarray:
        """(N-1, R) mask; entry [p, d-1] gates the edge between ring slots p and p+d."""
        n_ring = len(self.sigma) - 1
        if self.ring_links is not None:
            return np.asarray(self.ring_links, dtype=np.bool_)
        return np.full((n_ring, r_neighbors), bool(self.ring_active))


class CouplingStreams:
    """Independent seeded random streams, one per purpose.

    Each stream is consumed strictly in (step, node) order, so the value used
    for a given step and node does not depend on how draws are batched.
    """

    def __init__(self, seed: int):
        children = np.random.SeedSequence(seed).spawn(len(_STREAMS))
        gens = {name: np.random.Generator(np.random.Philox(ss)) for name, ss in zip(_STREAMS, children)}
        self.init = gens["init"]
        self.xi_sigma = gens["xi_sigma"]
        self.xi_mu = gens["xi_mu"]
        self.ring = gens["ring"]
        self.star = gens["star"]

    def block(self, config: NetworkConfig, n_steps: int):
        """Draw couplings for ``n_steps`` consecutive steps as kernel-ready arrays."""
        n, r = config.n_nodes, config.r_neighbors
        lo, hi = config.noise_lo, config.noise_hi
        sigma = config.sigma0 + config.d_sigma * self.xi_sigma.uniform(lo, hi, (n_steps, n))
        mu = config.mu0 + config.d_mu * self.xi_mu.uniform(lo, hi, (n_steps, n))
        if config.link_mode == "link":
            ring_on = self.ring.random((n_steps, n - 1, r)) < config.p_sigma
            star_on = self.star.random((n_steps, n - 1)) < config.p_mu
        else:
            ring_gate = self.ring.random(n_steps) < config.p_sigma
            star_gate = self.star.random(n_steps) < config.p_mu
            ring_on = np.repeat(ring_gate, (n - 1) * r).reshape(n_steps, n - 1, r)
            star_on = np.repeat(star_gate, n - 1).reshape(n_steps, n - 1)
        return sigma, mu, ring_on, star_on


def init_states(config: NetworkConfig) -> np.ndarray:
    """Initial (N, 3) state: x ~ U(0, 1) from the seeded stream, y = phi = 1."""
    streams = CouplingStreams(config.seed)
    states = np.ones((config.n_nodes, 3))
    states[:, 0] = streams.init.uniform(0.0, 1.0, config.n_nodes)
    return states


def ring_neighbors(m: int, config: NetworkConfig) -> list[int]:
    """1-based ring neighbours of node ``m``: m-R..m-1 then m+1..m+R, wrapped over 2..N."""
    n, r = config.n_nodes, config.r_neighbors
    if not 2 <= m <= n:
        raise IndexError(f"node {m} is not a ring node (valid: 2..{n})")
    n_ring = n - 1
    p = m - 2
    below = [(p - d) % n_ring + 2 for d in range(r, 0, -1)]
    above = [(p + d) % n_ring + 2 for d in range(1, r + 1)]
    return below + above


def draw_couplings(config: NetworkConfig, streams: CouplingStreams) -> CouplingDraw:
    """Draw one step of couplings, consuming the same streams as ``run``."""
    sigma, mu, ring_on, star_on = streams.block(config, 1)
    if config.link_mode == "link":
        return CouplingDraw(sigma[0], mu[0], bool(star_on.any()), bool(ring_on.any()),
                            star_links=star_on[0], ring_links=ring_on[0])
    return CouplingDraw(sigma[0], mu[0], bool(star_on[0, 0]), bool(ring_on[0, 0, 0]))


def _local_vector(params: NeuronParams) -> np.ndarray:
    p = params
    return np.array([p.a, p.b, p.c, p.k0, p.alpha, p.beta, p.k1, p.k2, p.k], dtype=float)


_EMPTY = np.empty((0, 0))


def network_step(states: np.ndarray, draw: CouplingDraw, config: NetworkConfig) -> np.ndarray:
    """Synchronously advance all nodes by one step; returns a new (N, 3) array."""
    out = np.array(states, dtype=float, copy=True)
    r = config.r_neighbors
    status = _kernels.advance(
        out,
        np.asarray(draw.sigma, dtype=float)[None, :],
        np.asarray(draw.mu, dtype=float)[None, :],
        draw.ring_mask(r)[None, :, :],
        draw.star_mask()[None, :],
        _local_vector(config.neuron),
        r,
        RING_SIGNS[config.ring_sign],
        STAR_SIGNS[config.star_sign],
        config.guard,
        _EMPTY, _EMPTY, _EMPTY,
        0, 1, False, False,
    )
    if status[0] >= 0:
        raise DivergenceError(f"node {status[1] + 1} diverged", step=1, node=int(status[1]) + 1)
    return out


@dataclass
class TrajectoryBlock:
    """Post-transient history. ``x[m - 1, t]`` is node m at retained step t."""

    x: np.ndarray
    final: np.ndarray
    y: np.ndarray | None = None
    phi: np.ndarray | None = None
    config: NetworkConfig | None = None

    @property
    def n_nodes(self) -> int:
        return self.x.shape[0]

    @property
    def final_states(self) -> list[NeuronState]:
        return [NeuronState(*map(float, row)) for row in self.final]

    @property
    def last_instance(self) -> np.ndarray:
        return self.x[:, -1].copy()


def run(config: NetworkConfig, *, record_y: bool = False, record_phi: bool = False,
        initial: np.ndarray | None = None) -> TrajectoryBlock:
    """Iterate the network ``n_total`` steps and keep the last ``n_total - n_transient``.

    ``initial`` overrides the seeded initial condition (the coupling draws
    still come from ``config.seed``).
    """
    config.validate()
    n = config.n_nodes
    streams = CouplingStreams(config.seed)
    state = init_states(config) if initial is None else np.array(initial, dtype=float, copy=True)
    if state.shape != (n, 3):
        raise ValueError(f"initial state must have shape {(n, 3)}")

    keep = config.n_keep
    x_rec = np.empty((n, keep))
    y_rec = np.empty((n, keep)) if record_y else _EMPTY
    phi_rec = np.empty((n, keep)) if record_phi else _EMPTY
    local = _local_vector(config.neuron)
    ring_sign = RING_SIGNS[config.ring_sign]
    star_sign = STAR_SIGNS[config.star_sign]

    done = 0
    while done < config.n_total:
        size = min(_CHUNK, config.n_total - done)
        sigma, mu, ring_on, star_on = streams.block(config, size)
        bad_step, bad_node = _kernels.advance(
            state, sigma, mu, ring_on, star_on, local, config.r_neighbors, ring_sign, star_sign,
            config.guard, x_rec, y_rec, phi_rec, done, config.n_transient, record_y, record_phi,
        )
        if bad_step >= 0:
            raise DivergenceError(
                f"node {bad_node + 1} diverged at step {bad_step}", step=int(bad_step), node=int(bad_node) + 1
            )
        done += size

    return TrajectoryBlock(
        x=x_rec,
        final=state,
        y=y_rec if record_y else None,
        phi=phi_rec if record_phi else None,
        config=config,
    )
