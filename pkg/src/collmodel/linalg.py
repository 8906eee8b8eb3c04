"""Dense complex linear algebra on small Hilbert spaces.

Basis ordering follows the usual Kronecker convention: the first factor is the
most significant index. Throughout the package qubit 0 is the open system and
environment qubits follow in collision order.
"""

from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError, ShapeError

MAX_ENTRIES = 2**22
HERMITIAN_TOL = 1e-10


def kron(a, b, max_entries=MAX_ENTRIES):
    """Kronecker product ``a ⊗ b`` with a guard on the output size."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError("kron expects two matrices")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows * cols > max_entries:
        raise DimensionError(
            f"kron result {rows}x{cols} exceeds cap of {max_entries} entries"
        )
    return np.kron(a, b)


def partial_trace(m, subsystem_dims: Sequence[int], keep):
    """Trace out every subsystem whose index is not in ``keep``.

    Kept subsystems appear in the result in increasing index order.
    """
    m = np.asarray(m, dtype=complex)
    dims = [int(d) for d in subsystem_dims]
    total = int(np.prod(dims)) if dims else 1
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError("partial_trace expects a square matrix")
    if m.shape[0] != total:
        raise ShapeError(
            f"subsystem dims {dims} give {total}, matrix has dimension {m.shape[0]}"
        )
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ShapeError(f"keep indices {keep} out of range for {len(dims)} subsystems")

    n = len(dims)
    t = m.reshape(dims + dims)
    # trace pairs from the highest index down so axis numbers stay valid
    for idx in reversed(range(n)):
        if idx in keep:
            continue
        cur = t.ndim // 2
        t = np.trace(t, axis1=idx, axis2=idx + cur)
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(d_keep, d_keep)


def _check_hermitian(h, tol):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeError("expected a square matrix")
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    dev = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if dev > tol * scale:
        raise DomainError(f"matrix is not Hermitian (deviation {dev:.3e})")
    return 0.5 * (h + h.conj().T)


def herm_eig(h, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the matrix whose columns are the
    corresponding orthonormal eigenvectors. Input is symmetrized before the
    solve; deviations from Hermiticity beyond ``tol`` raise ``DomainError``.
    """
    hs = _check_hermitian(h, tol)
    w, v = np.linalg.eigh(hs)
    return w, v


def unitary_from_hermitian(h, scale=1.0):
    """Return ``exp(-i * scale * h)`` for Hermitian ``h``."""
    w, v = herm_eig(h)
    return (v * np.exp(-1j * scale * w)) @ v.conj().T


def trace_norm(m):
    """Schatten 1-norm (sum of singular values)."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError("trace_norm expects a square matrix")
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))
