"""Amplitude damping of a qubit coupled to a single-Lorentzian reservoir.

The coherence factor ``η`` determines the reduced dynamics completely:

    ρ ↦ ρ11 |η|² |1><1| + (1 - ρ11 |η|²) |0><0| + ρ10 η |1><0| + ρ01 η* |0><1|

In dimensionless units (τ = Γt, λ̃ = λ/Γ, Ω̃ = Ω/Γ) the continuous ``η_τ``
obeys

    dη/dτ = -(λ̃/2) ∫_0^τ exp(-(1 + iΩ̃)(τ - τ')) η(τ') dτ',   η(0) = 1,

and the collision model produces a discrete ``η_n`` through a geometric
memory kernel in the collision parameters ``(g, G, φ)``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import superop_from_kraus
from .errors import DomainError, InvertibilityError, SingularityError


@dataclass(frozen=True)
class ContinuousParams:
    lambda_tilde: float
    omega_tilde: float = 0.0

    def __post_init__(self):
        if self.lambda_tilde < 0:
            raise DomainError("lambda_tilde must be non-negative")


@dataclass(frozen=True)
class CollisionParams:
    g: float
    G: float
    phi: float = np.pi / 2


@dataclass
class EtaSeries:
    """Values of ``η`` on a grid.

    For discrete series ``grid`` holds step indices and ``dt`` (if known) the
    time step; for continuous series ``grid`` holds τ values directly.
    """

    values: np.ndarray
    grid: np.ndarray
    dt: Optional[float] = None
    continuous: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        self.grid = np.asarray(self.grid)

    def __len__(self):
        return len(self.values)

    @property
    def times(self):
        if self.continuous:
            return np.asarray(self.grid, dtype=float)
        if self.dt is None:
            return np.asarray(self.grid, dtype=float)
        return np.asarray(self.grid, dtype=float) * self.dt


@dataclass
class RateSeries:
    gamma: np.ndarray
    shift: np.ndarray
    grid: np.ndarray


def _eta_kernel(g, G, phi, n):
    """Memory-kernel recursion, broadcasting over parameter arrays.

    The kernel sum ``m_k = Σ_{j=0}^{k-2} η_j q^{k-1-j}`` satisfies
    ``m_{k+1} = q (m_k + η_{k-1})``, which keeps the cost O(n).
    Returns an array of shape ``(n + 1,) + broadcast_shape``.
    """
    g, G, phi = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (g, G, phi)))
    c = np.cos(g)
    if np.any(np.abs(c) < 1e-12):
        raise DomainError("g = pi/2 makes tan^2 g singular")
    t2 = np.tan(g) ** 2
    q = -1j * np.exp(1j * phi) * c * np.sin(G)
    eta = np.empty((n + 1,) + g.shape, dtype=complex)
    eta[0] = 1.0
    m = np.zeros(g.shape, dtype=complex)
    for k in range(1, n + 1):
        if k >= 2:
            m = q * (m + eta[k - 2])
        eta[k] = c * (eta[k - 1] - t2 * m)
    return eta


def eta_recursion(p: CollisionParams, n, dtau=None):
    """Discrete ``η_0 … η_n`` of the collision model from its memory kernel.

    ``η_k = cos g (η_{k-1} - tan²g Σ_{j=0}^{k-2} η_j (-i e^{iφ} cos g sin G)^{k-1-j})``
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    values = _eta_kernel(p.g, p.G, p.phi, n)
    return EtaSeries(values, np.arange(n + 1), dt=dtau)


def _rk4_propagator(a, h):
    """One classical RK4 step for the linear system ``y' = A y``.

    For linear right-hand sides the four stages collapse to the polynomial
    ``I + hA + (hA)²/2 + (hA)³/6 + (hA)⁴/24``.
    """
    x = h * np.asarray(a, dtype=complex)
    eye = np.eye(x.shape[0], dtype=complex)
    x2 = x @ x
    return eye + x + x2 / 2 + x2 @ x / 6 + x2 @ x2 / 24


def eta_integrate(p: ContinuousParams, tau_max, h):
    """Integrate the memory-kernel equation with classical RK4.

    The exponential kernel is absorbed into an auxiliary variable
    ``z(τ) = ∫_0^τ exp(-(1+iΩ̃)(τ-τ')) η(τ') dτ'`` giving the local system
    ``η' = -(λ̃/2) z``, ``z' = η - (1 + iΩ̃) z`` with ``η(0) = 1``, ``z(0) = 0``.
    Output is sampled every step on ``τ_k = k h``.
    """
    if h <= 0 or tau_max <= 0:
        raise ValueError("h and tau_max must be positive")
    steps = int(round(tau_max / h))
    a = np.array(
        [[0.0, -p.lambda_tilde / 2], [1.0, -(1.0 + 1j * p.omega_tilde)]], dtype=complex
    )
    (p00, p01), (p10, p11) = _rk4_propagator(a, h).tolist()
    out = np.empty(steps + 1, dtype=complex)
    eta, z = 1.0 + 0j, 0j
    out[0] = eta
    for k in range(1, steps + 1):
        eta, z = p00 * eta + p01 * z, p10 * eta + p11 * z
        out[k] = eta
    return EtaSeries(out, np.arange(steps + 1) * h, dt=h, continuous=True)


def eta_analytic(p: ContinuousParams, tau, variant="corrected"):
    """Closed-form ``η_τ``.

    ``corrected`` uses the prefactor ``exp(-(1+iΩ̃)τ/2)`` which satisfies
    ``η'(0) = 0``; ``as_printed`` keeps the full-rate prefactor
    ``exp(-(1+iΩ̃)τ)``, which does not solve the kernel equation and is kept
    only for comparison. Vectorized in ``tau``.
    """
    tau = np.asarray(tau, dtype=float)
    a = 1.0 + 1j * p.omega_tilde
    b = np.sqrt(a * a - 2.0 * p.lambda_tilde + 0j)
    x = tau * b / 2
    if abs(b) < 1e-8:
        # sinh(x)/b -> tau/2 at critical damping; keep the next series term
        bracket = a * tau / 2 * (1 + x * x / 6) + np.cosh(x)
    else:
        bracket = a / b * np.sinh(x) + np.cosh(x)
    if variant == "corrected":
        pref = np.exp(-a * tau / 2)
    elif variant == "as_printed":
        pref = np.exp(-a * tau)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return pref * bracket


def params_to_collision(p: ContinuousParams, dtau):
    """Collision parameters reproducing continuous damping at step ``dtau``."""
    if dtau <= 0:
        raise DomainError("dtau must be positive")
    return CollisionParams(
        g=np.sqrt(p.lambda_tilde / 2) * dtau,
        G=float(np.arcsin(np.exp(-dtau))),
        phi=np.pi / 2 - p.omega_tilde * dtau,
    )


def collision_to_params(p: CollisionParams):
    """Inverse map ``(g, G, φ) -> (ContinuousParams, dtau)``.

    Singular at ``sin G = 1`` (dtau = 0) and ``sin G = 0`` (dtau = ∞).
    """
    sg = np.sin(p.G)
    if not 0.0 < sg < 1.0:
        raise SingularityError(f"sin G = {sg!r} is outside (0, 1)")
    dtau = float(np.log(1.0 / sg))
    lam = 2.0 * p.g**2 / dtau**2
    omega = (np.pi / 2 - p.phi) / dtau
    return ContinuousParams(lam, omega), dtau


def _ad_form(eta):
    """AD-shaped superoperator for any complex ``eta`` (no CP check)."""
    eta = complex(eta)
    a2 = abs(eta) ** 2
    s = np.zeros((4, 4), dtype=complex)
    # column-stacked basis: index i + 2j <-> |i><j|
    s[0, 0] = 1.0                # |0><0| -> |0><0|
    s[0, 3] = 1.0 - a2           # |1><1| -> (1-|η|²)|0><0| + |η|²|1><1|
    s[3, 3] = a2
    s[1, 1] = eta                # |1><0| -> η |1><0|
    s[2, 2] = eta.conjugate()    # |0><1| -> η* |0><1|
    return s


def ad_channel(eta):
    """Amplitude-damping channel with coherence factor ``eta``."""
    if abs(eta) > 1.0 + 1e-12:
        raise DomainError(f"|eta| = {abs(eta):.6g} > 1 does not define a channel")
    return _ad_form(eta)


def ad_kraus(eta):
    """Kraus pair of :func:`ad_channel`; the coherence phase sits on K0."""
    eta = complex(eta)
    r = abs(eta)
    k0 = np.array([[1, 0], [0, eta]], dtype=complex)
    k1 = np.array([[0, np.sqrt(max(0.0, 1 - r * r))], [0, 0]], dtype=complex)
    return [k0, k1]


def ad_superop_from_kraus(eta):
    return superop_from_kraus(ad_kraus(eta))


def ad_two_times(eta_later, eta_earlier):
    """Intermediate map between two AD channels.

    Returns ``(superop, cp_ok)``; the map has AD form with ratio
    ``eta_later / eta_earlier`` and is CP iff that ratio has modulus ≤ 1.
    """
    if eta_earlier == 0:
        raise InvertibilityError("eta_earlier = 0: AD channel is not invertible", np.inf)
    ratio = complex(eta_later) / complex(eta_earlier)
    return _ad_form(ratio), abs(ratio) <= 1.0


def divisibility_violations(e: EtaSeries):
    """Indices ``k`` with ``|η_{k+1}|² > |η_k|²`` (stepwise non-CP intermediates)."""
    a2 = np.abs(e.values) ** 2
    return [int(k) for k in np.nonzero(a2[1:] > a2[:-1])[0]]


def rates_from_eta(e: EtaSeries, threshold=1e-12):
    """Decay rate and frequency shift of the time-local master equation.

    ``γ = -2 d/dτ ln|η|`` and ``s = -2 d/dτ arg η`` by second-order finite
    differences (one-sided at the ends).
    """
    vals = e.values
    small = np.nonzero(np.abs(vals) <= threshold)[0]
    if small.size:
        raise SingularityError(f"|eta| below {threshold} at index {int(small[0])}")
    tau = e.times
    log_abs = np.log(np.abs(vals))
    phase = np.unwrap(np.angle(vals))
    gamma = -2.0 * np.gradient(log_abs, tau, edge_order=2)
    shift = -2.0 * np.gradient(phase, tau, edge_order=2)
    return RateSeries(gamma, shift, tau)
