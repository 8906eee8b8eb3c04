"""Trace-distance (BLP) non-Markovianity for amplitude-damping dynamics.

For AD dynamics the optimal initial pair is any antipodal pair on the Bloch
equator, whose trace distance is ``|η|``. The pair ``|0>, |1>`` is
sub-optimal and has trace distance ``|η|²``; its increments coincide with the
only possibly negative eigenvalue of the stepwise intermediate Choi matrices.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import choi_of, is_cp
from .damping import (
    CollisionParams,
    ContinuousParams,
    EtaSeries,
    _eta_kernel,
    ad_two_times,
    collision_to_params,
    eta_integrate,
)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
NM_ZERO = 1e-8


@dataclass(frozen=True)
class BlochDifference:
    d_x: float
    d_y: float
    d_z: float

    @classmethod
    def from_states(cls, r1, r2):
        diff = np.asarray(r1) - np.asarray(r2)
        return cls(*(float(np.real(np.trace(s @ diff))) for s in PAULI))


@dataclass(frozen=True)
class SweepRecord:
    g: float
    G: float
    dtau: float
    lambda_tilde: float
    n_steps: int
    nm_optimal: float
    nm_suboptimal: float


def trace_distance_ad(eta, d: BlochDifference):
    """Trace distance of two AD-evolved states from their Bloch difference."""
    a2 = abs(eta) ** 2
    return 0.5 * np.sqrt(a2 * (d.d_x**2 + d.d_y**2) + a2 * a2 * d.d_z**2)


def blp_discrete(d_series):
    """Sum of the strictly positive increments of a trace-distance series."""
    d = np.diff(np.asarray(d_series, dtype=float))
    return float(np.sum(d[d > 0]))


def nm_optimal(e: EtaSeries):
    return blp_discrete(np.abs(e.values))


def nm_suboptimal(e: EtaSeries):
    return blp_discrete(np.abs(e.values) ** 2)


def choi_negativity(e: EtaSeries):
    """Negative Choi eigenvalues of the stepwise intermediate maps.

    For each step the minimum eigenvalue ``μ_k`` of the Choi matrix of
    ``Φ_{k+1,k}`` is computed numerically. Returns ``(raw, normalized)``
    sums over negative entries, where ``normalized = -Σ μ_k`` and
    ``raw = -Σ |η_k|² μ_k``. The raw convention drops the ``1/|η_k|²``
    that the intermediate map carries and equals :func:`nm_suboptimal`.
    """
    vals = e.values
    raw = 0.0
    normalized = 0.0
    for k in range(len(vals) - 1):
        s, _ = ad_two_times(vals[k + 1], vals[k])
        _, mu = is_cp(choi_of(s))
        if mu < 0:
            normalized -= mu
            raw -= abs(vals[k]) ** 2 * mu
    return raw, normalized


def sweep_axis(epsilon, grid_per_axis):
    """Uniform samples of ``[ε, π/2 - ε)`` including the left edge."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    step = (np.pi / 2 - 2 * epsilon) / grid_per_axis
    return epsilon + step * np.arange(grid_per_axis)


def _sweep_rows(g_values, G_values, n_steps, phi):
    gg, GG = np.meshgrid(g_values, G_values, indexing="ij")
    eta = _eta_kernel(gg, GG, phi, n_steps)
    a = np.abs(eta)
    da = np.diff(a, axis=0)
    da2 = np.diff(a * a, axis=0)
    nm_opt = np.where(da > 0, da, 0.0).sum(axis=0)
    nm_sub = np.where(da2 > 0, da2, 0.0).sum(axis=0)
    records = []
    for i, g in enumerate(g_values):
        for j, G in enumerate(G_values):
            cont, dtau = collision_to_params(CollisionParams(g, G, phi))
            records.append(
                SweepRecord(
                    float(g), float(G), dtau, cont.lambda_tilde, n_steps,
                    float(nm_opt[i, j]), float(nm_sub[i, j]),
                )
            )
    return records


def sweep_gG(epsilon, grid_per_axis, n_steps, phi=np.pi / 2, workers=1):
    """Optimal and sub-optimal non-Markovianity over a uniform ``(g, G)`` grid.

    Records are ordered by ``(g, G)`` regardless of ``workers``.
    """
    axis = sweep_axis(epsilon, grid_per_axis)
    if workers <= 1:
        return _sweep_rows(axis, axis, n_steps, phi)
    chunks = np.array_split(axis, min(workers, len(axis)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_sweep_rows, chunks, [axis] * len(chunks),
                         [n_steps] * len(chunks), [phi] * len(chunks))
        return [rec for part in parts for rec in part]


def blp_continuous(p: ContinuousParams, tau_max, h):
    """Continuous-time BLP measure for the equatorial pair, ``∫ (d|η|/dτ)_+``,
    as the fine-grid sum of positive increments of the RK4 solution."""
    return blp_discrete(np.abs(eta_integrate(p, tau_max, h).values))
