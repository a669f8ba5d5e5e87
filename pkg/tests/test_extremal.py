import numpy as np
import pytest

from spectral_schwarz.errors import DegeneratePairError, InvalidInputError
from spectral_schwarz.extremal import (
    companion_Nd,
    disc_sharpness,
    example_Fd,
    extremal_disc_map,
    extremal_self_map,
    in_Sn,
    naive_bound_counterexample,
    sample_jordan,
    sample_Sn,
)
from spectral_schwarz.linalg import eigenvalues, spectral_radius
from spectral_schwarz.spectrum import minimal_polynomial

from .conftest import jordan_block


def test_example_values():
    assert abs(example_Fd(3, 2, 0.25).spectral_radius - 0.5) <= 1e-15
    assert abs(spectral_radius(example_Fd(3, 2, 0.25).matrix) - 0.5) <= 1e-15
    assert minimal_polynomial(example_Fd(3, 2, 0).matrix).degree == 2
    r = spectral_radius(example_Fd(4, 3, 0.1).matrix)
    assert abs(r - 0.1 ** (1 / 3)) <= 1e-12
    assert r > 0.1 and r**2 > 0.1
    for n, d in ((2, 1), (3, 3), (3, 1)):
        with pytest.raises(InvalidInputError):
            example_Fd(n, d, 0.1)


def test_companion_examples():
    assert np.array_equal(companion_Nd(1, 0.3).matrix, [[0.3]])
    assert np.array_equal(companion_Nd(3, 0).matrix, jordan_block(0, 3).T)
    assert np.allclose(np.sort(eigenvalues(companion_Nd(2, 0.25).matrix).real), [-0.5, 0.5])


def test_structured_verify():
    for S in (example_Fd(5, 3, 0.3 + 0.2j), companion_Nd(4, -0.2j), sample_Sn(4, 1), sample_jordan(5, 2)):
        v = S.verify()
        assert v["radius_ok"]
        assert v.get("degree_ok", True)
    assert "structure_tag" in example_Fd(3, 2, 0.1).to_dict()


def test_extremal_disc_map_is_nilpotent_at_z():
    F = extremal_disc_map(0.3, -0.2j, 4, 3)
    assert minimal_polynomial(F(0.3)).roots == ((0, 3),)
    with pytest.raises(DegeneratePairError):
        extremal_disc_map(0.1, 0.1, 3, 2)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_disc_sharpness(n):
    for d in range(1, n + 1):
        s = disc_sharpness(0.2 + 0.1j, -0.5 + 0.3j, n, d)
        assert abs(s.report.slack) <= 1e-9
        assert s.distinct_roots == (d >= 2 and n > d)
        if s.distinct_roots:
            assert s.d_w == d + 1 and s.backward_error <= 1e-9


def test_extremal_self_map_examples(rng):
    X = rng.normal(size=(3, 3)) * 0.1
    Y = extremal_self_map(3, 1)(X)
    assert np.allclose(Y, np.trace(X) / 3 * np.eye(3))
    assert abs(spectral_radius(extremal_self_map(2, 2)(0.49 * np.eye(2))) - 0.7) <= 1e-15
    Z = np.diag([0.3, -0.3])
    assert spectral_radius(extremal_self_map(2, 2)(Z)) == 0


def test_single_eigenvalue_set(rng):
    for _ in range(20):
        A = sample_Sn(int(rng.integers(2, 6)), rng)
        assert in_Sn(A.matrix)
        assert A.spectral_radius <= 0.95
    assert not in_Sn(np.diag([0.1, 0.2]))
    assert not in_Sn(np.eye(2))


@pytest.mark.parametrize("n,t", [(2, 0.01), (3, 0.04), (2, 0.25), (4, 0.81)])
def test_naive_counterexample(n, t):
    _, _, naive, thm2 = naive_bound_counterexample(n, t)
    assert abs(naive.slack - (t - np.sqrt(t))) <= 1e-15
    assert not naive.passed
    assert abs(thm2.slack) <= 1e-9
