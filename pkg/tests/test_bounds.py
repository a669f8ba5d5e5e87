import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_schwarz.bounds import (
    SlackReport,
    check_theorem1,
    check_theorem2,
    globevnik_check,
    pullback_to_origin,
    ransford_white_check,
    theorem1_lhs,
    theorem1_terms,
    theorem2_bound,
)
from spectral_schwarz.errors import GeneratorViolationError, InvalidInputError, PreconditionError
from spectral_schwarz.extremal import example_Fd, example_map, extremal_self_map
from spectral_schwarz.hyperbolic import BlaschkeProduct
from spectral_schwarz.linalg import spectral_radius
from spectral_schwarz.maps import (
    Constant,
    DiscMapSpec,
    FunctionalCalculus,
    Similarity,
    identity_map,
    random_similarity,
    sample_omega,
    sample_self_map,
)

from .conftest import jordan_block


def test_slack_report():
    r = SlackReport(0.3, 0.2, tol=0.05)
    assert abs(r.slack + 0.1) <= 1e-16 and not r.passed
    assert SlackReport(0.3, 0.2, tol=0.2).passed
    assert r.to_dict()["pass"] is False


def test_theorem1_lhs_examples(rng):
    W2 = sample_omega(3, rng)
    assert theorem1_lhs(np.zeros((3, 3)), W2) == spectral_radius(W2)
    assert theorem1_lhs(W2, W2) == 0


def test_theorem1_on_nilpotent_example():
    t = theorem1_terms(example_Fd(3, 2, 0), example_Fd(3, 2, 0.25))
    assert (t.d1, t.d2) == (2, 3)
    assert sorted(np.round(np.real(t.sigma2), 12)) == [-0.5, 0.25, 0.5]
    assert abs(t.lhs - 0.25) <= 1e-15
    rep = check_theorem1(example_map(3, 2), 0, 0.25)
    assert abs(rep.slack) <= 1e-9


def test_theorem1_trivial_maps(rng):
    F = DiscMapSpec(np.stack([np.zeros((2, 2)), jordan_block(0, 2)]))
    rep = check_theorem1(F, 0.3, -0.6j)
    assert rep.lhs == 0 and rep.passed


def test_theorem1_reports_generator_violation():
    F = DiscMapSpec(np.stack([np.zeros((2, 2)), 5 * np.eye(2)]))
    with pytest.raises(GeneratorViolationError):
        check_theorem1(F, 0.0, 0.5)


def test_globevnik_examples(rng):
    A = sample_omega(3, rng)
    F = DiscMapSpec(np.stack([np.zeros((3, 3)), A]))
    rep = globevnik_check(F, 0, 0.7)
    assert abs(rep.lhs - 0.7 * spectral_radius(A)) <= 1e-12 and rep.passed
    zero = DiscMapSpec(np.zeros((1, 2, 2)))
    assert globevnik_check(zero, 0.1, 0.5).lhs == 0
    with pytest.raises(PreconditionError):
        globevnik_check(example_map(3, 2), 0, 0.5)


def test_theorem2_bound_examples():
    assert theorem2_bound(0.37, 0, 1) == 0.37
    assert theorem2_bound(0, 0.6, 3) == 0.6
    assert abs(theorem2_bound(0.49, 0, 2) - 0.7) <= 1e-15
    for bad in ((1.0, 0, 1), (0.5, -0.1, 1), (0.5, 0.5, 0), (0.5, 0.5, 1.5)):
        with pytest.raises(InvalidInputError):
            theorem2_bound(*bad)


@settings(max_examples=200, deadline=None)
@given(
    rX=st.floats(0, 0.999),
    rG0=st.floats(0, 0.999),
    d=st.integers(1, 6),
    bump=st.floats(0, 0.5),
)
def test_theorem2_bound_properties(rX, rG0, d, bump):
    b = theorem2_bound(rX, rG0, d)
    # oracle: the disc automorphism image formula written out independently
    s = rX ** (1.0 / d)
    assert abs(b - (s + rG0) / (1 + rG0 * s)) <= 1e-15
    assert 0 <= b < 1 + 1e-15
    assert b >= rG0 - 1e-15
    assert theorem2_bound(min(rX + bump, 0.999), rG0, d) >= b - 1e-15
    assert theorem2_bound(rX, min(rG0 + bump, 0.999), d) >= b - 1e-15
    assert theorem2_bound(rX, rG0, d + 1) >= b - 1e-15


def test_theorem2_examples(rng):
    assert abs(check_theorem2(extremal_self_map(2, 2), 0.49 * np.eye(2)).slack) <= 1e-15
    X = sample_omega(4, rng)
    rep = check_theorem2(identity_map(), X)
    assert rep.slack == 0 and rep.context["dG"] == 1
    C = sample_omega(4, rng)
    rep = check_theorem2(Constant(C), X)
    assert rep.lhs == spectral_radius(C) and rep.passed
    rep = check_theorem2(Similarity(random_similarity(4, rng)), X)
    assert abs(rep.slack) <= 1e-9
    rep = check_theorem2(FunctionalCalculus(BlaschkeProduct(((0, 2),))), X)
    assert abs(rep.lhs - spectral_radius(X) ** 2) <= 1e-10 and rep.passed


def test_ransford_white(rng):
    X = sample_omega(3, rng)
    assert ransford_white_check(identity_map(), X).slack == 0
    with pytest.raises(PreconditionError):
        ransford_white_check(Constant(sample_omega(3, rng, "generic")), X)


def test_pullback_examples(rng):
    G = identity_map()
    assert pullback_to_origin(G, 3) is G
    C = sample_omega(3, rng, "generic")
    H = pullback_to_origin(Constant(C), 3)
    assert np.linalg.norm(H(sample_omega(3, rng))) <= 1e-12
    for n in range(2, 5):
        for d in range(1, n + 1):
            H = pullback_to_origin(extremal_self_map(n, d), n)
            assert np.linalg.norm(H(np.zeros((n, n)))) <= 1e-15


def test_pullback_of_random_maps_passes(rng):
    for _ in range(50):
        n = int(rng.integers(2, 5))
        H = pullback_to_origin(sample_self_map(n, 2, rng), n)
        if np.linalg.norm(H(np.zeros((n, n)))) > 1e-10:
            continue
        assert ransford_white_check(H, sample_omega(n, rng)).passed
