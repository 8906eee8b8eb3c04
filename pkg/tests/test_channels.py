import numpy as np
import pytest
from hypothesis import given, strategies as st

from collmodel.channels import (
    apply,
    choi_of,
    compose,
    identity_superop,
    invert,
    is_cp,
    is_trace_preserving,
    superop_from_choi,
    superop_from_function,
    superop_from_kraus,
    trace_distance,
    two_times,
    unvec,
    validate_density,
    vec,
)
from collmodel.collision import CollisionChain, extract_map
from collmodel.damping import _ad_form, ad_channel
from collmodel.errors import DomainError, InvertibilityError, ShapeError

from _util import random_density, random_unitary, rng_of

seeds = st.integers(0, 2**32 - 1)
etas = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)
P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)
PLUS = np.full((2, 2), 0.5, dtype=complex)
MINUS = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)


def test_vec_convention():
    x = np.arange(9).reshape(3, 3)
    v = vec(x)
    for i in range(3):
        for j in range(3):
            assert v[i + 3 * j] == x[i, j]
    assert np.array_equal(unvec(v), x)


@given(seeds)
def test_vec_of_product(seed):
    rng = rng_of(seed)
    a, x, b = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(3))
    assert np.allclose(vec(a @ x @ b), np.kron(b.T, a) @ vec(x), atol=1e-12)


def test_superop_from_function_matches_kraus():
    u = random_unitary(rng_of(0), 2)
    assert np.allclose(superop_from_function(lambda r: u @ r @ u.conj().T, 2),
                       superop_from_kraus([u]), atol=1e-14)


def test_apply_examples():
    rho = random_density(rng_of(5), 2)
    assert np.allclose(apply(identity_superop(2), rho), rho)
    assert np.allclose(apply(ad_channel(0.0), rho), P0, atol=1e-15)
    out = apply(ad_channel(0.5), P1)
    # excited population scales by |η|²
    assert out[1, 1].real == pytest.approx(0.25, abs=1e-15)
    assert out[0, 0].real == pytest.approx(0.75, abs=1e-15)
    assert abs(out[0, 1]) == 0.0


def test_apply_shape_mismatch():
    with pytest.raises(ShapeError):
        apply(identity_superop(2), np.eye(3))


@given(etas, etas)
def test_compose_ad_multiplies(a, b):
    assert np.allclose(compose(ad_channel(a), ad_channel(b)), ad_channel(a * b), atol=1e-14)


def test_compose_identity_and_unital():
    s = ad_channel(0.3 + 0.4j)
    assert np.array_equal(compose(s, identity_superop(2)), s)
    rng = rng_of(2)
    u1, u2 = random_unitary(rng, 2), random_unitary(rng, 2)
    dephase = superop_from_kraus([np.sqrt(0.7) * np.eye(2), np.sqrt(0.3) * np.diag([1, -1])])
    m = compose(superop_from_kraus([u1]), compose(dephase, superop_from_kraus([u2])))
    assert np.allclose(apply(m, np.eye(2)), np.eye(2), atol=1e-14)
    with pytest.raises(ShapeError):
        compose(s, identity_superop(3))


def test_invert_examples():
    assert np.allclose(invert(identity_superop(2)), identity_superop(2))
    s = ad_channel(0.5)
    assert np.max(np.abs(invert(s) @ s - np.eye(4))) <= 1e-10
    with pytest.raises(InvertibilityError) as info:
        invert(ad_channel(0.0))
    assert info.value.condition > 1e12


def test_two_times_examples():
    s = ad_channel(0.6j)
    assert np.allclose(two_times(s, s), np.eye(4), atol=1e-14)
    e1, e2 = 0.8 * np.exp(0.3j), 0.5 * np.exp(-1.1j)
    assert np.allclose(two_times(ad_channel(e2), ad_channel(e1)), _ad_form(e2 / e1), atol=1e-13)


@given(st.floats(0.05, 1.0), st.floats(0.0, 1.0), st.floats(-np.pi, np.pi))
def test_two_times_growth_gives_known_negative_eigenvalue(r1, frac, theta):
    r2 = r1 + frac * (1.0 - r1)
    inter = two_times(ad_channel(r2 * np.exp(1j * theta)), ad_channel(r1))
    ok, mu = is_cp(choi_of(inter))
    expected = (r1**2 - r2**2) / r1**2
    assert mu == pytest.approx(min(expected, 0.0), abs=1e-9)
    if expected < -1e-9:
        assert not ok


@given(seeds)
def test_two_times_recomposes(seed):
    rng = rng_of(seed)
    chain = CollisionChain(2, random_unitary(rng, 4), random_unitary(rng, 4))
    p1, p2 = extract_map(chain, 1), extract_map(chain, 2)
    if np.linalg.cond(p1) < 1e8:
        assert np.max(np.abs(compose(two_times(p2, p1), p1) - p2)) <= 1e-8


def test_choi_identity_spectrum():
    w = np.linalg.eigvalsh(choi_of(identity_superop(3)))
    assert np.allclose(w, [0] * 8 + [3], atol=1e-14)


@given(etas)
def test_choi_ad_spectrum(eta):
    w = np.linalg.eigvalsh(choi_of(ad_channel(eta)))
    a2 = abs(eta) ** 2
    assert np.allclose(np.sort(w), np.sort([0.0, 0.0, 1 - a2, 1 + a2]), atol=1e-13)
    assert is_cp(choi_of(ad_channel(eta)))[0]


def test_choi_entries_follow_definition():
    s = superop_from_kraus([random_unitary(rng_of(9), 2)])
    m = choi_of(s)
    for i in range(2):
        for j in range(2):
            e = np.zeros((2, 2))
            e[i, j] = 1
            assert np.allclose(m[2 * i:2 * i + 2, 2 * j:2 * j + 2], apply(s, e), atol=1e-15)


@given(seeds)
def test_choi_round_trip(seed):
    rng = rng_of(seed)
    s = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    assert np.max(np.abs(superop_from_choi(choi_of(s)) - s)) <= 1e-12


def test_is_cp_examples():
    assert is_cp(choi_of(identity_superop(2)))[0]
    ok, mu = is_cp(choi_of(_ad_form(1.2)))
    assert not ok
    assert mu == pytest.approx(1 - 1.44, abs=1e-12)
    ok, mu = is_cp(np.diag([-1e-12, 1.0, 1.0, 1.0]), tol=1e-10)
    assert ok and mu == pytest.approx(-1e-12)
    with pytest.raises(DomainError):
        is_cp(np.array([[1.0, 1.0], [0.0, 1.0]]))


@given(seeds)
def test_unitary_dilation_maps_are_cp_and_tp(seed):
    rng = rng_of(seed)
    chain = CollisionChain(3, random_unitary(rng, 4), random_unitary(rng, 4))
    for k in range(4):
        s = extract_map(chain, k)
        ok, mu = is_cp(choi_of(s))
        assert ok and mu >= -1e-10
        assert is_trace_preserving(s)


def test_trace_distance_examples():
    assert trace_distance(P0, P1) == pytest.approx(1.0)
    rho = random_density(rng_of(4), 3)
    assert trace_distance(rho, rho) == 0.0
    eta = 0.45 * np.exp(0.7j)
    s = ad_channel(eta)
    assert trace_distance(apply(s, PLUS), apply(s, MINUS)) == pytest.approx(abs(eta), abs=1e-14)


@given(seeds)
def test_trace_distance_metric(seed):
    rng = rng_of(seed)
    a, b, c = (random_density(rng, 3, rank=int(rng.integers(1, 4))) for _ in range(3))
    dab = trace_distance(a, b)
    assert dab == trace_distance(b, a)
    assert 0.0 <= dab <= 1.0 + 1e-12
    assert dab <= trace_distance(a, c) + trace_distance(c, b) + 1e-12


def test_validate_density():
    validate_density(random_density(rng_of(0), 2))
    with pytest.raises(DomainError):
        validate_density(np.diag([1.1, -0.1]))
    with pytest.raises(DomainError):
        validate_density(np.diag([0.5, 0.6]))
