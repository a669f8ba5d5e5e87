import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_schwarz.errors import IllConditionedStructureError, InvalidInputError
from spectral_schwarz.extremal import companion_Nd, extremal_self_map, sample_jordan
from spectral_schwarz.maps import conjugate, random_similarity
from spectral_schwarz.spectrum import (
    MinPoly,
    annihilation_residual,
    cluster_spectrum,
    krylov_minpoly_oracle,
    minimal_polynomial,
)

from .conftest import jordan_block


def as_set(mp, digits=10):
    return sorted((round(l.real, digits), round(l.imag, digits), m) for l, m in mp.roots)


def test_cluster_examples():
    assert cluster_spectrum([0.5, 0.5, 0.2], 1e-8).points == ((0.5, 2), (0.2, 1))
    s = cluster_spectrum([0.5, 0.5 + 1e-12, 0.2], 1e-8)
    assert [m for _, m in s.points] == [2, 1] and abs(s.points[0][0] - 0.5) <= 1e-12
    assert len(cluster_spectrum([0.1, 0.2, 0.3], 1e-8)) == 3
    assert cluster_spectrum([0.1, 0.2, 0.3], 10).points[0][1] == 3


def test_cluster_is_single_linkage():
    # a chain of gaps below tol merges end to end
    s = cluster_spectrum([0.0, 0.6e-8, 1.2e-8, 1.8e-8], 1e-8)
    assert len(s) == 1 and s.size == 4


def test_cluster_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        cluster_spectrum([0.1, np.nan], 1e-8)
    with pytest.raises(InvalidInputError):
        cluster_spectrum([0.1], 0)


def test_minpoly_examples():
    assert minimal_polynomial(np.eye(2)).roots == ((1, 1),)
    assert minimal_polynomial(jordan_block(0, 3)).roots == ((0, 3),)
    assert minimal_polynomial(np.zeros((3, 3))).roots == ((0, 1),)
    mp = minimal_polynomial(np.diag([0.5, 0.5, 0.2]))
    assert as_set(mp) == [(0.2, 0.0, 1), (0.5, 0.0, 1)]
    assert krylov_minpoly_oracle(np.diag([0.5, 0.5, 0.2])).degree == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_extremal_value_at_origin_has_degree_d(n):
    for d in range(1, n + 1):
        G0 = extremal_self_map(n, d)(np.zeros((n, n)))
        assert minimal_polynomial(G0).degree == d


def test_companion_matches_krylov():
    A = companion_Nd(3, 0.2).matrix
    mp, kr = minimal_polynomial(A), krylov_minpoly_oracle(A)
    roots = np.roots([1, 0, 0, -0.2])
    assert mp.degree == kr.degree == 3
    for lam, _ in mp.roots:
        assert np.min(np.abs(roots - lam)) <= 1e-12


def test_jordan_structure_is_recovered(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        S = sample_jordan(n, rng)
        mp = minimal_polynomial(S.matrix)
        assert mp.degree == S.minpoly_degree
        assert annihilation_residual(S.matrix, mp) <= 1e-8 * np.linalg.norm(S.matrix) ** mp.degree


def test_similarity_invariance(rng):
    J = np.zeros((5, 5), complex)
    J[:3, :3] = jordan_block(0.3, 3)
    J[3:, 3:] = jordan_block(-0.5j, 2)
    base = as_set(minimal_polynomial(J), 6)
    for _ in range(20):
        A = conjugate(random_similarity(5, rng), J)
        assert as_set(minimal_polynomial(A), 6) == base


def test_ambiguous_structure_raises():
    # coupling 1e-8 sits right on the default rank threshold
    A = np.array([[0.2, 1e-8], [0.0, 0.2]])
    with pytest.raises(IllConditionedStructureError):
        minimal_polynomial(A)
    assert minimal_polynomial(A, 1e-13).degree == 2


def test_minpoly_serialisation():
    mp = minimal_polynomial(companion_Nd(3, 0.2).matrix)
    back = MinPoly.from_dict(mp.to_dict())
    assert back == mp and back.to_dict()["degree"] == 3
    assert np.allclose(np.poly([0.5, 0.5, 0.2]), MinPoly(((0.5, 2), (0.2, 1))).coefficients())


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6))
def test_krylov_agrees_on_random_jordan_data(seed, n):
    S = sample_jordan(n, np.random.default_rng(seed))
    try:
        mp = minimal_polynomial(S.matrix)
    except IllConditionedStructureError:
        return
    assert krylov_minpoly_oracle(S.matrix).degree == mp.degree
