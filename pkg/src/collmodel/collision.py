"""Qubit collision models: collision unitaries, dense chain evolution and map
extraction, and the single-excitation sector engine.

Single-qubit basis: index 0 is the ground state |0>, index 1 the excited state
|1>, so ``SIGMA_PLUS = |1><0|``. Two-qubit operators act on ``(first, second)``
with the first factor most significant, e.g. ``|10>`` means "first excited".
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .channels import vec
from .damping import EtaSeries
from .errors import DimensionError, ShapeError
from .linalg import unitary_from_hermitian

SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_MINUS = SIGMA_PLUS.conj().T
NUMBER = SIGMA_PLUS @ SIGMA_MINUS
MAX_COLLISIONS = 18


def exchange_hamiltonian(phase=0.0):
    """``e^{iφ} σ₋⊗σ₊ + e^{-iφ} σ₊⊗σ₋``: hops an excitation first → second
    picking up ``e^{iφ}`` (and second → first with ``e^{-iφ}``)."""
    return np.exp(1j * phase) * np.kron(SIGMA_MINUS, SIGMA_PLUS) + np.exp(
        -1j * phase
    ) * np.kron(SIGMA_PLUS, SIGMA_MINUS)


def build_W(g):
    """System-environment collision ``exp(-i g (σ₊⊗σ₋ + σ₋⊗σ₊))``."""
    return unitary_from_hermitian(exchange_hamiltonian(0.0), g)


def build_V(G, phi):
    """Environment-environment coupling with exchange phase ``phi``.

    Acts on (older, newer) environment qubit. An excitation moving from the
    older to the newer qubit acquires ``-i e^{iφ} sin G``; this is the phase
    convention under which the induced memory kernel is
    ``(-i e^{iφ} cos g sin G)^k``.
    """
    return unitary_from_hermitian(exchange_hamiltonian(phi), G)


def number_operator(n_qubits=2):
    """Total excitation number on ``n_qubits`` qubits."""
    total = np.zeros((2**n_qubits, 2**n_qubits), dtype=complex)
    for k in range(n_qubits):
        op = np.array([[1.0]], dtype=complex)
        for j in range(n_qubits):
            op = np.kron(op, NUMBER if j == k else np.eye(2))
        total += op
    return total


def apply_two_qubit(psi, u, i, j, n_qubits):
    """Apply a 4x4 gate to qubits ``(i, j)`` of an ``n_qubits`` statevector."""
    t = np.asarray(psi).reshape((2,) * n_qubits)
    t = np.moveaxis(t, (i, j), (0, 1))
    shape = t.shape
    t = (u @ t.reshape(4, -1)).reshape(shape)
    return np.moveaxis(t, (0, 1), (i, j)).reshape(-1)


def apply_one_qubit(psi, u, i, n_qubits):
    t = np.asarray(psi).reshape((2,) * n_qubits)
    t = np.moveaxis(t, i, 0)
    shape = t.shape
    t = (u @ t.reshape(2, -1)).reshape(shape)
    return np.moveaxis(t, 0, i).reshape(-1)


def reduced_block(psi, keep, n_qubits):
    """Matrix ``A`` with ``tr_rest |psi><psi| = A A^†`` for the kept qubits."""
    t = np.asarray(psi).reshape((2,) * n_qubits)
    t = np.moveaxis(t, list(keep), list(range(len(keep))))
    return t.reshape(2 ** len(keep), -1)


@dataclass
class CollisionChain:
    """Homogeneous collision chain ``K_n = W U0 V K_{n-1}``, ``K_1 = W U0``.

    ``W`` acts on (system, k-th environment qubit) and ``V`` on
    (environment k-1, environment k). ``overrides`` is reserved for per-step
    unitaries; inhomogeneous chains are not supported yet.
    """

    n_collisions: int
    W: np.ndarray
    V: np.ndarray = field(default_factory=lambda: np.eye(4, dtype=complex))
    U0: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))
    overrides: Optional[dict] = None

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=complex)
        self.V = np.asarray(self.V, dtype=complex)
        self.U0 = np.asarray(self.U0, dtype=complex)
        if self.W.shape != (4, 4) or self.V.shape != (4, 4) or self.U0.shape != (2, 2):
            raise ShapeError("W and V must be 4x4, U0 must be 2x2")
        if self.n_collisions < 0:
            raise ValueError("n_collisions must be non-negative")

    @property
    def homogeneous(self):
        return not self.overrides

    @classmethod
    def from_params(cls, g, G, phi, n_collisions):
        return cls(n_collisions, build_W(g), build_V(G, phi))


def _check_chain(chain, max_collisions):
    if not chain.homogeneous:
        raise NotImplementedError("per-step overrides are not supported")
    if chain.n_collisions > max_collisions:
        raise DimensionError(
            f"{chain.n_collisions} collisions exceed the dense-engine cap of {max_collisions}"
        )


def _step(psi, chain, k, n_qubits):
    """Advance the statevector through collision ``k`` (1-based)."""
    if k >= 2:
        psi = apply_two_qubit(psi, chain.V, k - 1, k, n_qubits)
    psi = apply_one_qubit(psi, chain.U0, 0, n_qubits)
    return apply_two_qubit(psi, chain.W, 0, k, n_qubits)


def simulate_chain(chain: CollisionChain, system_init, max_collisions=MAX_COLLISIONS):
    """Reduced system states ``ρ_0 … ρ_n`` for an initial system vector.

    Environment qubits start in |0>. The full-space unitary is never formed;
    gates act locally on the ``2^(n+1)`` statevector.
    """
    _check_chain(chain, max_collisions)
    phi0 = np.asarray(system_init, dtype=complex).reshape(2)
    n = chain.n_collisions
    n_qubits = n + 1
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[0] = phi0[0]
    psi[2 ** (n_qubits - 1)] = phi0[1]
    states = [np.outer(phi0, phi0.conj())]
    for k in range(1, n + 1):
        psi = _step(psi, chain, k, n_qubits)
        a = reduced_block(psi, [0], n_qubits)
        states.append(a @ a.conj().T)
    return states


def extract_maps(chain: CollisionChain, max_collisions=MAX_COLLISIONS):
    """Superoperators ``Φ_0 … Φ_n`` reconstructed from two pure-state runs.

    ``Φ_k(|i><j|) = tr_E(ψ_i ψ_j^†)`` with ``ψ_i = K_k(|i> ⊗ |0…0>)``.
    """
    _check_chain(chain, max_collisions)
    n = chain.n_collisions
    n_qubits = n + 1
    psis = []
    for i in range(2):
        p = np.zeros(2**n_qubits, dtype=complex)
        p[i * 2 ** (n_qubits - 1)] = 1.0
        psis.append(p)
    maps = [np.eye(4, dtype=complex)]
    for k in range(1, n + 1):
        psis = [_step(p, chain, k, n_qubits) for p in psis]
        blocks = [reduced_block(p, [0], n_qubits) for p in psis]
        s = np.zeros((4, 4), dtype=complex)
        for j in range(2):
            for i in range(2):
                s[:, i + 2 * j] = vec(blocks[i] @ blocks[j].conj().T)
        maps.append(s)
    return maps


def extract_map(chain: CollisionChain, k, max_collisions=MAX_COLLISIONS):
    if not 0 <= k <= chain.n_collisions:
        raise ValueError(f"step {k} outside 0..{chain.n_collisions}")
    sub = CollisionChain(k, chain.W, chain.V, chain.U0, chain.overrides)
    return extract_maps(sub, max_collisions)[k]


def sector_transfer(g, G, phi):
    """One-step propagator of (system, newest-environment) excitation amplitudes.

    The newest environment amplitude first hops onto a fresh qubit through
    ``V`` (amplitude ``-i e^{iφ} sin G``; the remainder stays on a qubit that
    never interacts again), then ``W`` rotates the (system, fresh) pair.
    """
    c, s = np.cos(g), np.sin(g)
    hop = -1j * np.exp(1j * phi) * np.sin(G)
    return np.array([[c, -1j * s * hop], [-1j * s, c * hop]], dtype=complex)


def simulate_sector(g, G, phi, n):
    """``η_0 … η_n`` via excitation-number conservation.

    Starting from a single system excitation, the amplitude stays in the
    one-excitation subspace; only the system amplitude and that of the most
    recently touched environment qubit feed back. ``η_k`` is the system
    amplitude after ``k`` collisions. Cost is O(n).
    """
    (t00, t01), (t10, t11) = sector_transfer(g, G, phi).tolist()
    out = np.empty(n + 1, dtype=complex)
    a, b = 1.0 + 0j, 0j
    out[0] = a
    for k in range(1, n + 1):
        a, b = t00 * a + t01 * b, t10 * a + t11 * b
        out[k] = a
    return EtaSeries(out, np.arange(n + 1))
