"""States, superoperators and Choi matrices.

Conventions
-----------
Operators are vectorized by column stacking, ``vec(X)[i + d*j] = X[i, j]``,
so that ``vec(A X B) = (B.T ⊗ A) vec(X)`` and composition of maps is the
ordinary matrix product of their superoperators.

Choi matrices are unnormalized, ``M = Σ_ij |i><j| ⊗ S(|i><j|)``; a trace
preserving map has ``tr M = d`` and ``S`` is completely positive iff ``M ⪰ 0``.
"""

import numpy as np

from .errors import DomainError, InvertibilityError, ShapeError
from .linalg import herm_eig, trace_norm

MAX_CONDITION = 1e12
CP_TOL = 1e-9


def vec(x):
    x = np.asarray(x, dtype=complex)
    return x.reshape(-1, order="F")


def unvec(v, d=None):
    v = np.asarray(v, dtype=complex)
    if d is None:
        d = int(round(np.sqrt(v.size)))
    if d * d != v.size:
        raise ShapeError(f"vector of length {v.size} is not a vectorized {d}x{d} operator")
    return v.reshape(d, d, order="F")


def _dim_of(s):
    s = np.asarray(s)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ShapeError("superoperator must be square")
    d = int(round(np.sqrt(s.shape[0])))
    if d * d != s.shape[0]:
        raise ShapeError(f"superoperator size {s.shape[0]} is not a square number")
    return d


def identity_superop(d):
    return np.eye(d * d, dtype=complex)


def superop_from_kraus(kraus):
    """Superoperator ``Σ_k conj(K_k) ⊗ K_k`` of a Kraus family."""
    return sum(np.kron(np.conj(k), k) for k in kraus)


def superop_from_function(fn, d):
    """Tabulate a linear map given as a Python callable on ``d``x``d`` arrays."""
    s = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            s[:, i + d * j] = vec(fn(e))
    return s


def apply(s, rho):
    """Apply a superoperator to an operator. Positivity is not enforced."""
    rho = np.asarray(rho, dtype=complex)
    d = _dim_of(s)
    if rho.shape != (d, d):
        raise ShapeError(f"operator shape {rho.shape} does not match map dimension {d}")
    return unvec(np.asarray(s) @ vec(rho), d)


def compose(s2, s1):
    """The map ``s2 ∘ s1`` (apply ``s1`` first)."""
    if np.shape(s2) != np.shape(s1):
        raise ShapeError(f"cannot compose maps of shapes {np.shape(s2)} and {np.shape(s1)}")
    _dim_of(s1)
    return np.asarray(s2) @ np.asarray(s1)


def invert(s, max_condition=MAX_CONDITION):
    """Inverse superoperator, guarded by a 2-norm condition number check."""
    s = np.asarray(s, dtype=complex)
    _dim_of(s)
    cond = float(np.linalg.cond(s))
    if not np.isfinite(cond) or cond > max_condition:
        raise InvertibilityError(
            f"map is not invertible (condition number {cond:.3e} > {max_condition:.1e})",
            condition=cond,
        )
    return np.linalg.inv(s)


def two_times(phi_later, phi_earlier, max_condition=MAX_CONDITION):
    """Intermediate map ``phi_later ∘ phi_earlier⁻¹``."""
    return compose(phi_later, invert(phi_earlier, max_condition))


def choi_of(s):
    """Unnormalized Choi matrix ``Σ_ij |i><j| ⊗ S(|i><j|)``."""
    s = np.asarray(s, dtype=complex)
    d = _dim_of(s)
    # s[a + d*b, i + d*j] = <a|S(|i><j|)|b>  ->  M[(i, a), (j, b)]
    return s.reshape(d, d, d, d).transpose(3, 1, 2, 0).reshape(d * d, d * d)


def superop_from_choi(m):
    """Inverse of :func:`choi_of`."""
    m = np.asarray(m, dtype=complex)
    d = _dim_of(m)
    return m.reshape(d, d, d, d).transpose(3, 1, 2, 0).reshape(d * d, d * d)


def is_cp(m, tol=CP_TOL):
    """Check positivity of a Choi matrix.

    Returns ``(ok, min_eigenvalue)`` where ``ok`` is true iff the smallest
    eigenvalue is at least ``-tol``.
    """
    w, _ = herm_eig(m, tol=max(tol, 1e-10))
    lam_min = float(w[0])
    return lam_min >= -tol, lam_min


def is_trace_preserving(s, tol=1e-10):
    """``tr S(X) = tr X`` for all X, i.e. ``vec(I)^† S = vec(I)^†``."""
    d = _dim_of(s)
    row = vec(np.eye(d)).conj() @ np.asarray(s)
    return bool(np.max(np.abs(row - vec(np.eye(d)))) <= tol)


def validate_density(rho, tol=1e-10, psd_tol=1e-9):
    """Raise ``DomainError`` unless ``rho`` is a density operator."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ShapeError("density operator must be square")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise DomainError("density operator is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise DomainError(f"density operator has trace {np.trace(rho).real:.12g}")
    w, _ = herm_eig(rho)
    if w[0] < -psd_tol:
        raise DomainError(f"density operator has negative eigenvalue {w[0]:.3e}")
    return rho


def trace_distance(r1, r2):
    r1 = np.asarray(r1, dtype=complex)
    r2 = np.asarray(r2, dtype=complex)
    if r1.shape != r2.shape:
        raise ShapeError(f"shape mismatch {r1.shape} vs {r2.shape}")
    # averaging both orderings makes the result exactly symmetric in (r1, r2)
    d = r1 - r2
    return 0.25 * (trace_norm(d) + trace_norm(-d))
