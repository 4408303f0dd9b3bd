import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from polyretract.errors import DomainError, NonConvergenceError, SingularityError
from polyretract.matcore import expm_skew, frobenius_norm, random_skew_hermitian, random_unitary
from polyretract.means import (
    arithmetic_mean,
    check_weights,
    geometric_mean,
    interpolate_polar,
    karcher_residual,
    supercloseness_experiment,
)
from polyretract.polar import IterationConfig
from polyretract.report import observed_order


def cluster(count, m, t, seed=0):
    U0 = random_unitary(m, seed)
    return [U0 @ expm_skew(t * random_skew_hermitian(m, seed + 1 + i)) for i in range(count)]


def sqrt_midpoint(U1, U2):
    return U1 @ scipy.linalg.sqrtm(U1.conj().T @ U2)


def test_check_weights():
    np.testing.assert_array_equal(check_weights([0.25, 0.75], 2), [0.25, 0.75])
    check_weights([1.5, -0.5], 2)
    with pytest.raises(DomainError):
        check_weights([0.5, 0.4], 2)
    with pytest.raises(DomainError):
        check_weights([1.0], 2)


def test_arithmetic_mean_examples():
    U = random_unitary(5, 0)
    np.testing.assert_allclose(arithmetic_mean([U, U, U], [0.2, 0.3, 0.5]), U, atol=1e-14)
    U1, U2 = cluster(2, 5, 0.8)
    np.testing.assert_allclose(arithmetic_mean([U1, U2], [1.0, 0.0]), U1, atol=1e-14)
    assert frobenius_norm(arithmetic_mean([U1, U2], [0.5, 0.5]) - sqrt_midpoint(U1, U2)) <= 1e-10


def test_arithmetic_mean_errors():
    with pytest.raises(SingularityError):
        arithmetic_mean([np.eye(3), -np.eye(3)], [0.5, 0.5])
    with pytest.raises(DomainError):
        arithmetic_mean([np.eye(3), 2 * np.eye(3)], [0.5, 0.5])
    with pytest.raises(DomainError):
        arithmetic_mean([np.eye(3), np.eye(2)], [0.5, 0.5])
    with pytest.raises(DomainError):
        arithmetic_mean([], [])


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**30), st.integers(1, 8), st.integers(1, 4))
def test_arithmetic_mean_left_equivariance(seed, m, count):
    Us = cluster(count, m, 0.5, seed)
    w = np.random.default_rng(seed).dirichlet(np.ones(count))
    w[-1] = 1 - w[:-1].sum()
    V = random_unitary(m, seed + 99)
    A = arithmetic_mean([V @ U for U in Us], w)
    assert frobenius_norm(A - V @ arithmetic_mean(Us, w)) <= 1e-10


def test_geometric_mean_examples():
    U = random_unitary(4, 3)
    G, it, res = geometric_mean([U, U], [0.5, 0.5], full_output=True)
    np.testing.assert_allclose(G, U, atol=1e-14)
    assert it == 0
    U1, U2 = cluster(2, 6, 0.5, 4)
    G = geometric_mean([U1, U2], [0.5, 0.5])
    assert frobenius_norm(G - arithmetic_mean([U1, U2], [0.5, 0.5])) <= 1e-9
    assert frobenius_norm(G - sqrt_midpoint(U1, U2)) <= 1e-9


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**30), st.integers(2, 5), st.sampled_from([1e-8, 1e-12, 1e-13]))
def test_geometric_mean_certificate(seed, count, tol):
    Us = cluster(count, 6, 0.2, seed)
    w = np.full(count, 1.0 / count)
    G, _, res = geometric_mean(Us, w, IterationConfig(tol=tol), full_output=True)
    assert res <= tol
    assert frobenius_norm(karcher_residual(G, Us, w)) == pytest.approx(res, abs=1e-15)
    assert frobenius_norm(G.conj().T @ G - np.eye(6)) <= 1e-12


def test_geometric_mean_errors():
    far = [np.eye(2), expm_skew(np.array([[0, -1.5], [1.5, 0]]))]
    with pytest.raises(DomainError):
        geometric_mean(far, [0.5, 0.5])
    Us = cluster(3, 5, 0.3)
    with pytest.raises(NonConvergenceError) as exc:
        geometric_mean(Us, [0.2, 0.3, 0.5], IterationConfig(tol=1e-300, max_iters=1))
    assert exc.value.residual > 0


def test_interpolate_polar_examples():
    U1, U2 = cluster(2, 5, 0.6, 7)
    np.testing.assert_allclose(interpolate_polar(U1, U2, 0.0), U1, atol=1e-14)
    np.testing.assert_allclose(interpolate_polar(U1, U2, 1.0), U2, atol=1e-14)
    assert frobenius_norm(interpolate_polar(U1, U2, 0.5) - sqrt_midpoint(U1, U2)) <= 1e-10
    with pytest.raises(SingularityError):
        interpolate_polar(np.eye(2), -np.eye(2), 0.5)


def test_interpolate_quarter_is_third_order():
    U1 = random_unitary(6, 0)
    omega = random_skew_hermitian(6, 1)
    ts = 0.4 * 2.0 ** -np.arange(5)
    errs = [frobenius_norm(interpolate_polar(U1, U1 @ expm_skew(t * omega), 0.25)
                           - U1 @ expm_skew(0.25 * t * omega)) for t in ts]
    assert np.mean(observed_order(errs)) == pytest.approx(3, abs=0.3)


def test_supercloseness_single_matrix():
    rep = supercloseness_experiment(seed=1, count=1, levels=3)
    assert all(e == 0 for e in rep.results[0].errors())
    assert all(lv.floored for lv in rep.results[0].levels)


def test_supercloseness_two_equal_weights():
    rep = supercloseness_experiment(seed=2, count=2, levels=4)
    assert all(e <= 1e-9 for e in rep.results[0].errors())


def test_supercloseness_order_three():
    rep = supercloseness_experiment(seed=0, count=3, w=[0.5, 0.3, 0.2])
    assert rep.results[0].mean_order() >= 2.7
    assert max(rep.diagnostics["residuals"]) <= 1e-12
    assert rep.config["weights"] == [0.5, 0.3, 0.2]
    assert supercloseness_experiment(seed=0, count=3, w=[0.5, 0.3, 0.2]) == rep
