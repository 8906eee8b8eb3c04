import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from collmodel.collision import SIGMA_MINUS, SIGMA_PLUS, build_W
from collmodel.errors import DimensionError, DomainError, ShapeError
from collmodel.linalg import herm_eig, kron, partial_trace, trace_norm, unitary_from_hermitian

from _util import ket, random_density, random_hermitian, rng_of

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)
seeds = st.integers(0, 2**32 - 1)


def test_kron_identities():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))


def test_kron_sigma_plus_sigma_minus_single_entry():
    m = kron(SIGMA_PLUS, SIGMA_MINUS)
    expected = np.outer(ket("10"), ket("01"))
    assert np.array_equal(m, expected)
    assert np.count_nonzero(m) == 1


def test_kron_cap():
    with pytest.raises(DimensionError):
        kron(np.eye(64), np.eye(64))  # 2^24 entries > default cap
    with pytest.raises(ShapeError):
        kron(np.ones(3), np.eye(2))


@given(seeds)
def test_kron_associative(seed):
    rng = rng_of(seed)
    a, b, c = (rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3)) for _ in range(3))
    assert np.max(np.abs(kron(kron(a, b), c) - kron(a, kron(b, c)))) <= 1e-14


def test_partial_trace_bell_marginal():
    bell = (ket("00") + ket("11")) / np.sqrt(2)
    out = partial_trace(np.outer(bell, bell.conj()), [2, 2], keep=[0])
    assert np.allclose(out, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_product_state():
    rng = rng_of(3)
    rho, sigma = random_density(rng, 2), 2.5 * random_density(rng, 3)
    out = partial_trace(np.kron(rho, sigma), [2, 3], keep=[0])
    assert np.allclose(out, rho * 2.5, atol=1e-14)
    out = partial_trace(np.kron(rho, sigma), [2, 3], keep=[1])
    assert np.allclose(out, sigma, atol=1e-14)


def _brute_partial_trace_keep_02(m):
    out = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for c in range(2):
            for a2 in range(2):
                for c2 in range(2):
                    out[2 * a + c, 2 * a2 + c2] = sum(
                        m[4 * a + 2 * b + c, 4 * a2 + 2 * b + c2] for b in range(2)
                    )
    return out


@given(seeds)
def test_partial_trace_matches_index_sum(seed):
    m = random_hermitian(rng_of(seed), 8)
    out = partial_trace(m, [2, 2, 2], keep=[0, 2])
    assert np.max(np.abs(out - _brute_partial_trace_keep_02(m))) <= 1e-13
    assert abs(np.trace(out) - np.trace(m)) <= 1e-13


@given(seeds)
def test_partial_trace_linear_and_total(seed):
    rng = rng_of(seed)
    a, b = random_hermitian(rng, 6), random_hermitian(rng, 6)
    x = 0.3 - 1.2j
    lhs = partial_trace(a + x * b, [3, 2], keep=[1])
    rhs = partial_trace(a, [3, 2], keep=[1]) + x * partial_trace(b, [3, 2], keep=[1])
    assert np.max(np.abs(lhs - rhs)) <= 1e-13
    full = partial_trace(a, [3, 2], keep=[])
    assert full.shape == (1, 1)
    assert abs(full[0, 0] - np.trace(a)) <= 1e-13


def test_partial_trace_shape_errors():
    with pytest.raises(ShapeError):
        partial_trace(np.eye(4), [2, 3], keep=[0])
    with pytest.raises(ShapeError):
        partial_trace(np.eye(4), [2, 2], keep=[2])


def test_herm_eig_examples():
    assert np.allclose(herm_eig(SZ)[0], [-1, 1])
    hop = np.kron(SIGMA_PLUS, SIGMA_MINUS) + np.kron(SIGMA_MINUS, SIGMA_PLUS)
    assert np.allclose(herm_eig(hop)[0], [-1, 0, 0, 1], atol=1e-15)
    assert np.allclose(herm_eig(np.eye(5))[0], np.ones(5))


def test_herm_eig_rejects_non_hermitian():
    with pytest.raises(DomainError):
        herm_eig(SIGMA_PLUS)


@settings(max_examples=40)
@given(seeds, st.integers(1, 32))
def test_herm_eig_reconstruction(seed, d):
    h = random_hermitian(rng_of(seed), d)
    w, v = herm_eig(h)
    norm = np.max(np.abs(h))
    assert np.max(np.abs(h - (v * w) @ v.conj().T)) <= 1e-10 * max(norm, 1)
    assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10
    assert np.all(np.diff(w) >= 0)


def test_unitary_from_hermitian_examples():
    assert np.allclose(unitary_from_hermitian(SZ, 0.0), np.eye(2))
    assert np.allclose(unitary_from_hermitian(SX, np.pi / 2), -1j * SX, atol=1e-15)
    g = 0.37
    out = build_W(g) @ ket("10")
    assert np.allclose(out, np.cos(g) * ket("10") - 1j * np.sin(g) * ket("01"), atol=1e-15)


@settings(max_examples=30)
@given(seeds, st.sampled_from([2, 4, 8, 16, 64]), st.floats(-10, 10))
def test_unitary_from_hermitian_is_unitary(seed, d, scale):
    u = unitary_from_hermitian(random_hermitian(rng_of(seed), d), scale)
    assert np.max(np.abs(u.conj().T @ u - np.eye(d))) <= 1e-12


def test_trace_norm_examples():
    assert trace_norm(np.diag([1.0, -2.0])) == pytest.approx(3.0, abs=1e-15)
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2.0, abs=1e-15)
    rho = random_density(rng_of(1), 3)
    assert trace_norm(rho) == pytest.approx(1.0, abs=1e-13)


@given(seeds)
def test_trace_norm_hermitian_is_abs_eig_sum(seed):
    h = random_hermitian(rng_of(seed), 4)
    assert trace_norm(h) == pytest.approx(np.sum(np.abs(np.linalg.eigvalsh(h))), rel=1e-12)
