"""Random two-qubit unitary ensembles and the indivisibility Monte Carlo.

Every sample draws from its own generator seeded by ``(seed, sample_index)``
through :class:`numpy.random.SeedSequence`, so results do not depend on how
samples are split across worker processes.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .linalg import unitary_from_hermitian
from .nonmarkov import PAULI

RNG_ALGORITHM = "numpy.PCG64/SeedSequence(entropy=[seed, sample_index])"
INDIVISIBLE_TOL = 1e-9
MAX_CONDITION = 1e12
KINDS = ("haar", "max_entangling")
_XX_YY_ZZ = [np.kron(s, s) for s in PAULI]


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    seed: int
    samples: int
    swap_assignment: bool = False
    identity_v: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble {self.kind!r}; expected one of {KINDS}")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")


@dataclass
class McResult:
    fraction_indivisible: float
    samples: int
    seed: int
    ci95_halfwidth: float
    excluded_singular: int
    indivisible: int
    min_phi2_choi_eigenvalue: float
    ensemble: str = "haar"
    assignment: str = "Z1->W, Z2->V"
    rng_algorithm: str = RNG_ALGORITHM
    extras: dict = field(default_factory=dict)


def sample_rng(seed, index):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def haar_unitary(dim, rng):
    """Haar-random unitary by QR of a complex Ginibre matrix with the phases
    of ``diag(R)`` moved onto ``Q``."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def propose_alphas(rng):
    """Uniform point of the ordered simplex ``π/4 ≥ α1 ≥ α2 ≥ α3 ≥ 0``."""
    return np.sort(rng.uniform(0.0, np.pi / 4, 3))[::-1]


def in_max_entangling_polytope(a):
    a1, a2, a3 = a
    return (
        np.pi / 4 >= a1 >= a2 >= a3 >= 0
        and a1 + a2 >= np.pi / 4
        and a2 + a3 <= np.pi / 4
    )


def canonical_unitary(alphas):
    """``exp(-i Σ_j α_j σ_j⊗σ_j)``."""
    h = sum(a * p for a, p in zip(alphas, _XX_YY_ZZ))
    return unitary_from_hermitian(h, 1.0)


def max_entangling_unitary(rng):
    """Canonical-form two-qubit unitary with coefficients drawn uniformly
    from the maximally entangling region (rejection from the ordered simplex).

    Returns ``(U, alphas)``.
    """
    while True:
        a = propose_alphas(rng)
        if in_max_entangling_polytope(a):
            return canonical_unitary(a), tuple(float(x) for x in a)


def draw_pair(kind, rng):
    if kind == "haar":
        return haar_unitary(4, rng), haar_unitary(4, rng)
    return max_entangling_unitary(rng)[0], max_entangling_unitary(rng)[0]


def two_step_maps(W, V):
    """Batched ``Φ_1`` and ``Φ_2`` for stacks of 4x4 ``W`` and ``V``.

    Qubits are (system, e1, e2); ``K_1 = W_{s,e1}``, ``K_2 = W_{s,e2} V_{e1,e2} K_1``.
    Returns two arrays of shape ``(N, 4, 4)`` (column-stacked superoperators).
    """
    W = np.asarray(W).reshape(-1, 2, 2, 2, 2)
    V = np.asarray(V).reshape(-1, 2, 2, 2, 2)
    n = W.shape[0]
    psi = np.zeros((n, 2, 2, 2, 2), dtype=complex)  # (sample, input i, s, e1, e2)
    psi[:, 0, 0, 0, 0] = 1.0
    psi[:, 1, 1, 0, 0] = 1.0
    psi = np.einsum("nabcd,nicdx->niabx", W, psi)
    phi1 = _maps_from_blocks(psi.reshape(n, 2, 2, 4))
    psi = np.einsum("nabcd,nixcd->nixab", V, psi)
    psi = np.einsum("nabcd,nicxd->niaxb", W, psi)
    phi2 = _maps_from_blocks(psi.reshape(n, 2, 2, 4))
    return phi1, phi2


def _maps_from_blocks(a):
    # a[n, i, s, rest]: Φ(|i><j|) = a_i a_j^†; column index i + 2j, row index s + 2t
    out = np.einsum("nisr,njtr->ntsji", a, a.conj())
    return out.reshape(a.shape[0], 4, 4)


def batched_choi(s):
    n = s.shape[0]
    return s.reshape(n, 2, 2, 2, 2).transpose(0, 4, 2, 3, 1).reshape(n, 4, 4)


def _run_chunk(spec: EnsembleSpec, indices):
    Ws, Vs = [], []
    for idx in indices:
        z1, z2 = draw_pair(spec.kind, sample_rng(spec.seed, idx))
        w, v = (z2, z1) if spec.swap_assignment else (z1, z2)
        if spec.identity_v:
            v = np.eye(4, dtype=complex)
        Ws.append(w)
        Vs.append(v)
    phi1, phi2 = two_step_maps(np.array(Ws), np.array(Vs))
    cond = np.linalg.cond(phi1)
    ok = np.isfinite(cond) & (cond <= MAX_CONDITION)
    m2 = batched_choi(phi2)
    min_phi2 = float(np.linalg.eigvalsh(0.5 * (m2 + m2.conj().transpose(0, 2, 1)))[:, 0].min())
    inter = phi2[ok] @ np.linalg.inv(phi1[ok])
    m = batched_choi(inter)
    mins = np.linalg.eigvalsh(0.5 * (m + m.conj().transpose(0, 2, 1)))[:, 0]
    return int(np.sum(mins < -INDIVISIBLE_TOL)), int(np.sum(~ok)), min_phi2


def indivisibility_fraction(spec: EnsembleSpec, workers=1, chunk_size=5000):
    """Fraction of sampled two-collision chains whose ``Φ_2 ∘ Φ_1⁻¹`` is not CP.

    Samples with ill-conditioned ``Φ_1`` are dropped from both numerator and
    denominator and counted in ``excluded_singular``.
    """
    chunks = [
        range(start, min(start + chunk_size, spec.samples))
        for start in range(0, spec.samples, chunk_size)
    ]
    if workers <= 1 or len(chunks) == 1:
        parts = [_run_chunk(spec, c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [spec] * len(chunks), chunks))
    bad = sum(p[0] for p in parts)
    excluded = sum(p[1] for p in parts)
    used = spec.samples - excluded
    frac = bad / used if used else float("nan")
    ci = 1.96 * np.sqrt(frac * (1 - frac) / used) if used else float("nan")
    return McResult(
        fraction_indivisible=frac,
        samples=spec.samples,
        seed=spec.seed,
        ci95_halfwidth=float(ci),
        excluded_singular=excluded,
        indivisible=bad,
        min_phi2_choi_eigenvalue=min(p[2] for p in parts),
        ensemble=spec.kind,
        assignment="Z2->W, Z1->V" if spec.swap_assignment else "Z1->W, Z2->V",
    )
