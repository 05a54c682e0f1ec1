"""
Tests for the eigendecomposition and matrix exponentials.
"""

# packages
import numpy
import pytest
import scipy.linalg

# project
from inamc_app.exceptions import InputError, NearDefectiveError
from inamc_app.linalg.eig import (
    ROUNDOFF_FACTOR,
    _extended_eigenpairs,
    decompose,
    exp_reference,
    exp_via_eig,
    min_eigenvalue_gap,
)
from inamc_app.model.generators import generators_at


def test_decompose_diagonal():
    a = numpy.diag(-numpy.arange(1.0, 10.0))
    e = decompose(a)
    numpy.testing.assert_array_equal(e.D.real, -numpy.arange(1.0, 10.0))
    numpy.testing.assert_allclose(numpy.abs(e.S), numpy.eye(9), atol=1e-15)
    assert e.residual(a) == 0.0


def test_decompose_generator_residual():
    a = generators_at(0.0).A
    e = decompose(a, voltage=0.0)
    assert e.residual(a) <= 1e-10 * max(1.0, numpy.linalg.norm(a, "fro"))
    # descending real parts; the stationary eigenvalue comes first
    assert numpy.all(numpy.diff(e.D.real) <= 0.0)
    assert abs(e.D[0]) < 1e-10


def test_decompose_is_read_only():
    e = decompose(generators_at(-50.0).A)
    with pytest.raises(ValueError):
        e.D[0] = 0.0


def test_decompose_rejects_defective():
    with pytest.raises(NearDefectiveError) as info:
        decompose(numpy.array([[1.0, 1.0], [0.0, 1.0]]), voltage=12.5)
    assert info.value.voltage == 12.5
    assert "Vm=12.5" in str(info.value)


@pytest.mark.parametrize(
    "a", [numpy.ones((2, 3)), numpy.array([[numpy.nan, 0.0], [0.0, 1.0]])]
)
def test_decompose_rejects_bad_input(a):
    with pytest.raises(InputError):
        decompose(a)


@pytest.mark.parametrize("vm", [41.7, 46.0, 55.3, 63.8, 69.9, 70.0])
def test_decompose_depolarized_generators(vm):
    a = generators_at(vm).A
    e = decompose(a, voltage=vm)
    norm_a = max(1.0, numpy.linalg.norm(a, "fro"))
    assert e.residual(a) <= e.residual_bound(1e-10) * norm_a
    assert numpy.linalg.norm(e.S @ e.Sinv - numpy.eye(9), "fro") <= e.residual_bound(1e-10)
    numpy.testing.assert_allclose(
        exp_via_eig(e, 0.1), exp_reference(a, 0.1), rtol=0.0, atol=1e-9
    )


def test_extended_refinement_matches_lapack_at_rest():
    a = generators_at(-60.0).A
    fast = decompose(a)
    d, s, s_inv = _extended_eigenpairs(a, 32)
    numpy.testing.assert_allclose(d, fast.D, rtol=1e-12, atol=1e-12)
    numpy.testing.assert_allclose(numpy.abs(s), numpy.abs(fast.S), rtol=0.0, atol=1e-8)
    numpy.testing.assert_allclose(s @ s_inv, numpy.eye(9), rtol=0.0, atol=1e-12)


def test_residual_bound_floor():
    e = decompose(numpy.diag([-1.0, -2.0]))
    assert e.residual_bound(1e-10) == 1e-10
    assert e.residual_bound(0.0) == pytest.approx(
        ROUNDOFF_FACTOR * 2 * numpy.finfo(numpy.float64).eps
    )


def test_min_eigenvalue_gap():
    assert min_eigenvalue_gap(numpy.array([1.0, 4.0, 2.5])) == 1.5
    assert min_eigenvalue_gap(numpy.array([3.0])) == float("inf")


def test_exp_via_eig_at_zero_step():
    e = decompose(generators_at(-20.0).A)
    numpy.testing.assert_allclose(exp_via_eig(e, 0.0), numpy.eye(9), atol=1e-12)


def test_exp_via_eig_is_stochastic():
    t = exp_via_eig(decompose(generators_at(0.0).A), 0.1)
    numpy.testing.assert_allclose(t.sum(axis=0), numpy.ones(9), rtol=0.0, atol=1e-10)


def test_exp_via_eig_matches_reference(rng):
    for _ in range(100):
        vm = float(rng.uniform(-100.0, 70.0))
        dt = float(rng.uniform(0.0, 0.1))
        a = generators_at(vm).A
        numpy.testing.assert_allclose(
            exp_via_eig(decompose(a, voltage=vm), dt),
            exp_reference(a, dt),
            rtol=0.0,
            atol=1e-9,
        )


def test_exp_via_eig_rejects_negative_step():
    with pytest.raises(InputError):
        exp_via_eig(decompose(numpy.diag([-1.0, -2.0])), -0.1)


def test_exp_reference_zero_matrix():
    numpy.testing.assert_array_equal(exp_reference(numpy.zeros((9, 9)), 0.5), numpy.eye(9))


def test_exp_reference_scalar_decay():
    rate, dt = 3.0, 0.2
    t = exp_reference(numpy.array([[-rate, 0.0], [rate, 0.0]]), dt)
    assert t[0, 0] == pytest.approx(numpy.exp(-rate * dt), rel=1e-13)
    assert t[1, 0] == pytest.approx(1.0 - numpy.exp(-rate * dt), rel=1e-13)


def test_exp_reference_agrees_with_scipy():
    a = generators_at(35.0).A
    numpy.testing.assert_array_equal(exp_reference(a, 0.05), scipy.linalg.expm(a * 0.05))


def test_exp_reference_rejects_overflow():
    with pytest.raises(InputError):
        exp_reference(numpy.array([[1e9]]), 1.0)
    with pytest.raises(InputError):
        exp_reference(numpy.eye(2), -1.0)
