"""Memristive Chialvo map: single-neuron update, Jacobian and Lyapunov exponents."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from typing import Callable

import numpy as np

from .errors import ConfigError, DivergenceError

DEFAULT_GUARD = 1e6


@dataclass(frozen=True)
class NeuronParams:
    """Local map constants plus the flux coupling ``k``.

    Defaults are the values used throughout the study, with ``k = -1``.
    """

    a: float = 0.89
    b: float = 0.6
    c: float = 0.28
    k0: float = 0.04
    alpha: float = 0.1
    beta: float = 0.2
    k1: float = 0.1
    k2: float = 0.2
    k: float = -1.0

    def validate(self, paper_mode: bool = False) -> list[str]:
        """Check invariants; return soft warnings, raise on hard violations.

        ``a < 1`` and ``b < 1`` are hard constraints. ``k`` outside
        ``[-1, 4]`` is only flagged, and only raises in ``paper_mode``.
        """
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise ConfigError("must be finite", f"neuron.{name}")
        if not self.a < 1:
            raise ConfigError("recovery constant a must be < 1", "neuron.a")
        if not self.b < 1:
            raise ConfigError("activation dependence b must be < 1", "neuron.b")
        warnings = []
        if not -1.0 <= self.k <= 4.0:
            msg = f"k={self.k} outside the studied range [-1, 4]"
            if paper_mode:
                raise ConfigError(msg, "neuron.k")
            warnings.append(msg)
        return warnings

    def with_k(self, k: float) -> NeuronParams:
        return replace(self, k=k)


@dataclass(frozen=True)
class NeuronState:
    x: float
    y: float
    phi: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.phi])


def memconductance(phi, params: NeuronParams):
    """Flux-controlled memductance ``alpha + 3 beta phi^2``; works on arrays."""
    return params.alpha + 3.0 * params.beta * phi * phi


def _check(state: NeuronState, guard: float) -> NeuronState:
    if not (math.isfinite(state.x) and math.isfinite(state.y) and math.isfinite(state.phi)):
        raise DivergenceError(f"non-finite state {state}")
    if abs(state.x) > guard:
        raise DivergenceError(f"|x| = {abs(state.x):.3g} exceeds guard {guard:g}")
    return state


def step(state: NeuronState, params: NeuronParams, guard: float = DEFAULT_GUARD) -> NeuronState:
    x, y, phi = state.x, state.y, state.phi
    try:
        x_next = x * x * math.exp(y - x) + params.k0 + params.k * x * memconductance(phi, params)
    except OverflowError as exc:
        raise DivergenceError(f"overflow in exp(y - x) at {state}") from exc
    y_next = params.a * y - params.b * x + params.c
    phi_next = params.k1 * x - params.k2 * phi
    return _check(NeuronState(x_next, y_next, phi_next), guard)


def original_step(x: float, y: float, params: NeuronParams) -> tuple[float, float]:
    """Two-variable Chialvo map without flux (the k = 0 reduction)."""
    return x * x * math.exp(y - x) + params.k0, params.a * y - params.b * x + params.c


def jacobian(state: NeuronState, params: NeuronParams) -> np.ndarray:
    x, y, phi = state.x, state.y, state.phi
    e = math.exp(y - x)
    return np.array(
        [
            [x * e * (2.0 - x) + params.k * memconductance(phi, params), x * x * e, 6.0 * params.k * params.beta * x * phi],
            [-params.b, params.a, 0.0],
            [params.k1, 0.0, -params.k2],
        ]
    )


def trajectory(initial: NeuronState, params: NeuronParams, n_steps: int,
               guard: float = DEFAULT_GUARD) -> np.ndarray:
    """Return the ``(n_steps + 1, 3)`` orbit starting at ``initial`` (row 0)."""
    out = np.empty((n_steps + 1, 3))
    s = initial
    out[0] = s.x, s.y, s.phi
    for n in range(1, n_steps + 1):
        try:
            s = step(s, params, guard)
        except DivergenceError as exc:
            raise DivergenceError(str(exc), step=n) from exc
        out[n] = s.x, s.y, s.phi
    return out


def lyapunov_spectrum(initial, step_fn: Callable, jac_fn: Callable,
                      n_transient: int, n_sample: int) -> np.ndarray:
    """Lyapunov spectrum of a map via repeated QR re-orthonormalisation.

    ``step_fn(s) -> s'`` and ``jac_fn(s) -> ndarray`` act on an arbitrary state
    object, so linear test maps can be plugged in. Exponents are per iteration,
    sorted as they come out of the QR factorisation (leading first).
    """
    s = initial
    for _ in range(n_transient):
        s = step_fn(s)
    q = None
    sums = None
    for _ in range(n_sample):
        j = np.asarray(jac_fn(s), dtype=float)
        if q is None:
            q = np.eye(j.shape[0])
            sums = np.zeros(j.shape[0])
        q, r = np.linalg.qr(j @ q)
        sums += np.log(np.abs(np.diag(r)))
        s = step_fn(s)
    return sums / n_sample


def max_lyapunov(initial: NeuronState, params: NeuronParams, n_transient: int = 10_000,
                 n_sample: int = 10_000, *, full: bool = False, guard: float = DEFAULT_GUARD):
    """Leading Lyapunov exponent of the flux-augmented map (per iteration).

    With ``full=True`` the whole 3-exponent spectrum is returned instead.
    """
    if n_sample < 1000:
        raise ValueError("n_sample must be >= 1000")
    spectrum = lyapunov_spectrum(
        initial,
        lambda s: step(s, params, guard),
        lambda s: jacobian(s, params),
        n_transient,
        n_sample,
    )
    return spectrum if full else float(spectrum[0])
