"""Markovian embedding of the collision model on system ⊗ ancilla.

Tracing every environment qubit except the most recently touched one leaves a
two-qubit state ``κ_n`` (system first, ancilla second) that evolves under a
fixed map ``Λ``: dilate with a fresh |0>, couple old ancilla to the fresh
qubit with ``V``, collide the system with the fresh qubit through ``W``, and
discard the old ancilla.

With excitation-conserving ``W`` and ``V`` and ancilla started in |0>, the
state lives on span{|10>, |01>, |00>} and takes the form

    κ_n = |ψ_n><ψ_n| + ξ²_n |00><00|,   ψ_n = g_n |00> + α_n |10> + β_n |01>.

Basis indices in 4x4 matrices: |00> -> 0, |01> -> 1, |10> -> 2, |11> -> 3.
"""

from dataclasses import dataclass

import numpy as np

from .channels import superop_from_function, unvec, vec
from .collision import (
    NUMBER,
    SIGMA_MINUS,
    CollisionChain,
    _check_chain,
    apply_one_qubit,
    apply_two_qubit,
    build_V,
    build_W,
    exchange_hamiltonian,
    reduced_block,
    MAX_COLLISIONS,
)
from .damping import ContinuousParams
from .errors import DomainError, IntegrationError
from .linalg import herm_eig, kron, partial_trace

I00, I01, I10, I11 = 0, 1, 2, 3
_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
SECTOR_TOL = 1e-10


@dataclass
class SectorAmplitudes:
    alpha: complex
    beta: complex
    g_amp: complex
    xi2: float

    @property
    def prob_total(self):
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2 + abs(self.g_amp) ** 2 + self.xi2

    def to_kappa(self):
        psi = np.zeros(4, dtype=complex)
        psi[I00] = self.g_amp
        psi[I10] = self.alpha
        psi[I01] = self.beta
        k = np.outer(psi, psi.conj())
        k[I00, I00] += self.xi2
        return k


@dataclass(frozen=True)
class PseudomodeParams:
    """Physical-unit reservoir parameters: coupling ``lam``, width ``Gamma``,
    detuning ``Omega``."""

    lam: float
    Gamma: float
    Omega: float = 0.0

    def __post_init__(self):
        if self.lam < 0 or self.Gamma <= 0:
            raise DomainError("need lam >= 0 and Gamma > 0")

    def dimensionless(self):
        return ContinuousParams(self.lam / self.Gamma, self.Omega / self.Gamma)


def collision_params_physical(p: PseudomodeParams, dt):
    """``(g, G, φ)`` for a collision every ``dt`` (physical time)."""
    return (
        np.sqrt(p.lam * p.Gamma / 2) * dt,
        float(np.arcsin(np.exp(-p.Gamma * dt))),
        np.pi / 2 - p.Omega * dt,
    )


def kappa_initial(c0, c1, g):
    """``κ_1 = W (ρ_0 ⊗ |0><0|) W^†`` for ``ρ_0 = |φ><φ|``, ``φ = c0|0> + c1|1>``."""
    if abs(abs(c0) ** 2 + abs(c1) ** 2 - 1.0) > 1e-12:
        raise DomainError("|c0|^2 + |c1|^2 must equal 1")
    phi = np.array([c0, c1], dtype=complex)
    psi = build_W(g) @ np.kron(phi, [1.0, 0.0])
    amps = SectorAmplitudes(
        alpha=c1 * np.cos(g), beta=-1j * c1 * np.sin(g), g_amp=complex(c0), xi2=0.0
    )
    return np.outer(psi, psi.conj()), amps


def lambda_apply(kappa, g, G, phi):
    """One step of ``Λ`` by explicit dilation on three qubits."""
    big = kron(np.asarray(kappa, dtype=complex), _P0)
    swap12 = kron(np.eye(2), _SWAP)
    w02 = swap12 @ kron(build_W(g), np.eye(2)) @ swap12
    u = w02 @ kron(np.eye(2), build_V(G, phi))
    out = u @ big @ u.conj().T
    return partial_trace(out, [2, 2, 2], keep=[0, 2])


def lambda_superop(g, G, phi):
    """16x16 column-stacked superoperator of ``Λ`` on two-qubit operators."""
    return superop_from_function(lambda x: lambda_apply(x, g, G, phi), 4)


def lambda_explicit(kappa, g, G, phi):
    """Entrywise closed form of ``Λ`` on the {|10>, |01>, |00>} sector.

    Independent of the dilation route. Note the ``-csS²`` coefficient of
    ``κ_{01,01}`` in ``<10|·|01>`` and the ``s²S`` coefficient of ``κ_{10,01}``
    in ``<01|·|10>``; with any other sign the output is not Hermitian.
    """
    c, s = np.cos(g), np.sin(g)
    S, C = np.sin(G), np.cos(G)
    e, ec = np.exp(1j * phi), np.exp(-1j * phi)
    k = np.asarray(kappa, dtype=complex)
    aa, ab, ag = k[I10, I10], k[I10, I01], k[I10, I00]
    ba, bb, bg = k[I01, I10], k[I01, I01], k[I01, I00]
    ga, gb, gg = k[I00, I10], k[I00, I01], k[I00, I00]

    out = np.zeros((4, 4), dtype=complex)
    out[I10, I10] = c * c * aa + s * s * S * S * bb - c * s * S * (ec * ab + e * ba)
    out[I10, I01] = 1j * (c * s * aa + S * c * c * ec * ab - e * S * s * s * ba - c * s * S * S * bb)
    out[I10, I00] = c * ag - e * s * S * bg
    out[I01, I10] = -1j * (c * s * aa + S * c * c * e * ba - c * s * S * S * bb - ec * s * s * S * ab)
    out[I01, I01] = s * s * aa + c * s * S * (ec * ab + e * ba) + c * c * S * S * bb
    out[I01, I00] = -1j * (s * ag + e * c * S * bg)
    out[I00, I10] = c * ga - ec * s * S * gb
    out[I00, I01] = 1j * (s * ga + c * S * ec * gb)
    out[I00, I00] = C * C * bb + gg
    return out


def kraus_operators(g, G, phi):
    """Kraus pair ``(B1, B2)`` of ``Λ`` restricted to the sector."""
    c, s = np.cos(g), np.sin(g)
    S, C = np.sin(G), np.cos(G)
    e = np.exp(1j * phi)
    b1 = np.zeros((4, 4), dtype=complex)
    b1[I00, I01] = C
    b2 = np.zeros((4, 4), dtype=complex)
    b2[I10, I10] = c
    b2[I10, I01] = -e * s * S
    b2[I01, I10] = -1j * s
    b2[I01, I01] = -1j * e * c * S
    b2[I00, I00] = 1.0
    return b1, b2


def _check_sector(kappa, tol=SECTOR_TOL):
    k = np.asarray(kappa)
    leak = max(np.max(np.abs(k[I11, :])), np.max(np.abs(k[:, I11])))
    if leak > tol:
        raise DomainError(f"state has weight {leak:.3e} outside the single-excitation sector")


def lambda_kraus(kappa, g, G, phi):
    _check_sector(kappa)
    k = np.asarray(kappa, dtype=complex)
    return sum(b @ k @ b.conj().T for b in kraus_operators(g, G, phi))


def sector_step(a: SectorAmplitudes, g, G, phi):
    """Advance the amplitudes one collision.

    ``B2`` rotates the excited-sector amplitudes and leaves ``g_amp`` alone;
    ``B1`` moves the old ancilla's leftover excitation weight ``C²|β|²``
    incoherently into |00>.
    """
    c, s = np.cos(g), np.sin(g)
    S, C = np.sin(G), np.cos(G)
    e = np.exp(1j * phi)
    return SectorAmplitudes(
        alpha=c * a.alpha - e * s * S * a.beta,
        beta=-1j * s * a.alpha - 1j * e * c * S * a.beta,
        g_amp=a.g_amp,
        xi2=a.xi2 + C * C * abs(a.beta) ** 2,
    )


def sector_trajectory(c0, c1, g, G, phi, steps):
    """Amplitudes ``a_1 … a_steps`` starting from ``κ_1``."""
    _, a = kappa_initial(c0, c1, g)
    out = [a]
    for _ in range(steps - 1):
        a = sector_step(a, g, G, phi)
        out.append(a)
    return out


def reduced_system(kappa):
    return partial_trace(kappa, [2, 2], keep=[0])


def kappa_chain(chain: CollisionChain, system_init, ancilla_resident=False,
                max_collisions=MAX_COLLISIONS):
    """Two-qubit states ``κ_1 … κ_n`` (system, last-touched qubit) from the
    dense chain.

    With ``ancilla_resident`` the collision always targets qubit 1: after the
    environment coupling the fresh qubit is swapped into slot 1, which is the
    swap-isomorphic rewriting ``W_n V = S_{n,1} W_1 S_{n,1} V`` without
    undoing the swap.
    """
    _check_chain(chain, max_collisions)
    phi0 = np.asarray(system_init, dtype=complex).reshape(2)
    n = chain.n_collisions
    nq = n + 1
    psi = np.zeros(2**nq, dtype=complex)
    psi[0] = phi0[0]
    psi[2 ** (nq - 1)] = phi0[1]
    out = []
    for k in range(1, n + 1):
        if ancilla_resident:
            if k >= 2:
                psi = apply_two_qubit(psi, chain.V, 1, k, nq)
                psi = apply_two_qubit(psi, _SWAP, 1, k, nq)
            psi = apply_one_qubit(psi, chain.U0, 0, nq)
            psi = apply_two_qubit(psi, chain.W, 0, 1, nq)
            a = reduced_block(psi, [0, 1], nq)
        else:
            if k >= 2:
                psi = apply_two_qubit(psi, chain.V, k - 1, k, nq)
            psi = apply_one_qubit(psi, chain.U0, 0, nq)
            psi = apply_two_qubit(psi, chain.W, 0, k, nq)
            a = reduced_block(psi, [0, k], nq)
        out.append(a @ a.conj().T)
    return out


def _commutator_superop(h):
    eye = np.eye(h.shape[0])
    return np.kron(eye, h) - np.kron(h.T, eye)


def pseudomode_generator(p: PseudomodeParams):
    """GKSL generator on system ⊗ pseudomode.

    ``L κ = -i[Ω n_a + √(λΓ/2)(σ₊⊗σ₋ + σ₋⊗σ₊), κ] + Γ(2 a κ a^† - {a^† a, κ})``
    with ``a = I ⊗ σ₋``.
    """
    delta = np.sqrt(p.lam * p.Gamma / 2)
    h = p.Omega * np.kron(np.eye(2), NUMBER) + delta * exchange_hamiltonian(0.0)
    a = np.kron(np.eye(2), SIGMA_MINUS)
    n_a = a.conj().T @ a
    eye = np.eye(4)
    dissipator = 2 * np.kron(a.conj(), a) - np.kron(eye, n_a) - np.kron(n_a.T, eye)
    return -1j * _commutator_superop(h) + p.Gamma * dissipator


def integrate_lindblad(L, k0, t_max, h, trace_tol=1e-10, psd_tol=1e-8):
    """Classical RK4 on the vectorized state.

    Returns ``(times, states)`` with ``states`` of shape ``(steps + 1, d, d)``.
    Raises ``IntegrationError`` if the trace drifts more than ``trace_tol`` in
    one step or the final state is not PSD within ``psd_tol``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    L = np.asarray(L, dtype=complex)
    k0 = np.asarray(k0, dtype=complex)
    d = k0.shape[0]
    steps = int(round(t_max / h))
    v = vec(k0)
    tr_row = vec(np.eye(d))
    tr0 = tr_row @ v
    states = np.empty((steps + 1, d, d), dtype=complex)
    states[0] = k0
    for k in range(1, steps + 1):
        k1 = L @ v
        k2 = L @ (v + 0.5 * h * k1)
        k3 = L @ (v + 0.5 * h * k2)
        k4 = L @ (v + h * k3)
        v = v + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        tr = tr_row @ v
        if abs(tr - tr0) > trace_tol:
            raise IntegrationError(
                f"trace drift {abs(tr - tr0):.2e} at step {k}; try h <= {h / 10:.3g}"
            )
        v = v * (tr0 / tr)
        states[k] = unvec(v, d)
    final = states[-1]
    w, _ = herm_eig(0.5 * (final + final.conj().T))
    if w[0] < -psd_tol:
        raise IntegrationError(
            f"final state has eigenvalue {w[0]:.2e}; try h <= {h / 10:.3g}"
        )
    return np.arange(steps + 1) * h, states


def probe_states():
    """Six fixed sector states: pure, coherent with |00>, and mixed."""
    def pure(amps):
        v = np.zeros(4, dtype=complex)
        for idx, x in amps.items():
            v[idx] = x
        v /= np.linalg.norm(v)
        return np.outer(v, v.conj())

    psi = pure({I10: 1, I01: 1j})
    mixed = 0.5 * psi + 0.3 * pure({I00: 1}) + 0.2 * pure({I01: 1})
    return [
        pure({I10: 1}),
        pure({I01: 1}),
        pure({I10: 1, I01: -1j}),
        pure({I00: 1, I10: 1}),
        pure({I00: 1, I10: 1, I01: 1}),
        mixed,
    ]


def first_order_check(p: PseudomodeParams, dt, probes=None):
    """Residual ``max ‖Λκ - κ - dt L κ‖_max`` over probe states.

    The collision parameters are tied to ``dt`` through
    :func:`collision_params_physical`; the residual is O(dt²).
    """
    g, G, phi = collision_params_physical(p, dt)
    L = pseudomode_generator(p)
    probes = probe_states() if probes is None else probes
    worst = 0.0
    for k in probes:
        lhs = lambda_apply(k, g, G, phi)
        rhs = k + dt * unvec(L @ vec(k), 4)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst
