"""The two-point disc inequality, the growth bound for self-maps, and their classical special cases.

Every check returns a :class:`SlackReport` and never raises on a negative
slack: a violation is data. Errors are reserved for broken preconditions
and for generated maps that leave the spectral unit ball.

A negative slack beyond ``tol_check`` is recomputed once with the tighter
structure tolerance ``REEVAL_TOL`` before it is reported, since a spurious
merge of two close eigenvalues lowers a minimal-polynomial degree and can
fake a violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeneratorViolationError, IllConditionedStructureError, InvalidInputError, PreconditionError
from .hyperbolic import dist_M, minpoly_blaschke, pseudo_hyperbolic
from .linalg import as_cmatrix, matrix_digest, scale_of, spectral_radius
from .maps import Compose, DiscMap, FunctionalCalculus, SelfMap, eval_self_map
from .spectrum import DEFAULT_TOL, minimal_polynomial

TOL_CHECK = 1e-9
REEVAL_TOL = 1e-12
#: Frobenius norm under which a matrix counts as zero in the special-case preconditions.
ZERO_TOL = 1e-10


def _point(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class SlackReport:
    """``slack = rhs - lhs``; ``passed`` iff ``slack >= -tol``."""

    lhs: float
    rhs: float
    context: dict = field(default_factory=dict)
    tol: float = TOL_CHECK

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tol

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "slack": self.slack, "pass": self.passed, "context": self.context}


def _in_ball(W, what: str):
    W = as_cmatrix(W)
    r = spectral_radius(W)
    if not r < 1:
        raise InvalidInputError(f"{what} is not in the spectral unit ball (r = {r:.17g})")
    return W, r


@dataclass(frozen=True)
class Theorem1Terms:
    """The two halves of the disc inequality's left-hand side.

    ``forward`` is ``max over mu in sigma(W2) of dist(mu; sigma(W1))^d1``,
    ``backward`` the same with the roles of ``W1`` and ``W2`` exchanged.
    """

    forward: float
    backward: float
    d1: int
    d2: int
    sigma1: tuple
    sigma2: tuple

    @property
    def lhs(self) -> float:
        return max(self.forward, self.backward)


def theorem1_terms(W1, W2, tol: float = DEFAULT_TOL) -> Theorem1Terms:
    W1, _ = _in_ball(W1, "W1")
    W2, _ = _in_ball(W2, "W2")
    mp1 = minimal_polynomial(W1, tol)
    mp2 = minimal_polynomial(W2, tol)
    s1, s2 = mp1.values, mp2.values
    forward = max(dist_M(mu, s1)[0] ** mp1.degree for mu in s2)
    backward = max(dist_M(lam, s2)[0] ** mp2.degree for lam in s1)
    return Theorem1Terms(float(forward), float(backward), mp1.degree, mp2.degree, tuple(s1), tuple(s2))


def theorem1_lhs(W1, W2, tol: float = DEFAULT_TOL) -> float:
    """Left-hand side of the two-point inequality for ``W1 = F(z1)``, ``W2 = F(z2)``.

    Spectra are clustered; multiplicities enter only through the
    minimal-polynomial degrees ``d1`` and ``d2``.
    """
    return theorem1_terms(W1, W2, tol).lhs


def _disc_value(F: DiscMap, zeta, label: str):
    W = F(zeta)
    r = spectral_radius(W)
    if not r < 1:
        raise GeneratorViolationError(f"disc map left the spectral unit ball at {label} (r = {r:.17g})", path=label, radius=r)
    return W


def check_theorem1(F: DiscMap, zeta1, zeta2, tol_check: float = TOL_CHECK, tol: float = DEFAULT_TOL) -> SlackReport:
    """Compare the two-point left-hand side against ``pseudo_hyperbolic(zeta1, zeta2)``."""
    rhs = pseudo_hyperbolic(zeta1, zeta2)
    W1 = _disc_value(F, zeta1, "zeta1")
    W2 = _disc_value(F, zeta2, "zeta2")
    terms = theorem1_terms(W1, W2, tol)
    reevaluated = False
    if rhs - terms.lhs < -tol_check:
        try:
            terms = theorem1_terms(W1, W2, REEVAL_TOL)
            reevaluated = True
        except IllConditionedStructureError:
            pass
    context = {
        "zeta1": _point(zeta1),
        "zeta2": _point(zeta2),
        "d1": terms.d1,
        "d2": terms.d2,
        "forward": terms.forward,
        "backward": terms.backward,
        "W1": matrix_digest(W1),
        "W2": matrix_digest(W2),
        "reevaluated": reevaluated,
    }
    return SlackReport(terms.lhs, rhs, context, tol_check)


def globevnik_check(F: DiscMap, zeta1, zeta2, tol_check: float = TOL_CHECK) -> SlackReport:
    """``r(F(zeta2)) <= pseudo_hyperbolic(zeta1, zeta2)`` for maps with ``F(zeta1) = 0``.

    Raises :class:`PreconditionError` when ``F(zeta1)`` is not numerically the
    zero matrix; a nilpotent but nonzero value does not qualify.
    """
    W1 = F(zeta1)
    if scale_of(W1) > ZERO_TOL:
        raise PreconditionError(f"F(zeta1) is not zero (||F(zeta1)||_F = {scale_of(W1):.3e})")
    W2 = _disc_value(F, zeta2, "zeta2")
    rhs = pseudo_hyperbolic(zeta1, zeta2)
    context = {"zeta1": _point(zeta1), "zeta2": _point(zeta2), "W2": matrix_digest(W2)}
    return SlackReport(spectral_radius(W2), rhs, context, tol_check)


def theorem2_bound(rX: float, rG0: float, dG: int) -> float:
    """``(rX^(1/dG) + rG0) / (1 + rG0 * rX^(1/dG))``, increasing in both radii."""
    if not 0 <= rX < 1 or not 0 <= rG0 < 1:
        raise InvalidInputError(f"radii must lie in [0, 1), got rX={rX}, rG0={rG0}")
    if int(dG) != dG or dG < 1:
        raise InvalidInputError(f"degree must be a positive integer, got {dG}")
    root = rX if dG == 1 else rX ** (1.0 / dG)
    return (root + rG0) / (1 + rG0 * root)


def _origin_value(G: SelfMap, n: int) -> np.ndarray:
    return eval_self_map(G, np.zeros((n, n), dtype=np.complex128))


def check_theorem2(G: SelfMap, X, tol_check: float = TOL_CHECK, tol: float = DEFAULT_TOL) -> SlackReport:
    """Compare ``r(G(X))`` with the growth bound built from ``r(X)``, ``r(G(0))`` and ``deg minpoly(G(0))``."""
    X, rX = _in_ball(X, "X")
    n = X.shape[0]
    G0 = _origin_value(G, n)
    mp = minimal_polynomial(G0, tol)
    rG0 = spectral_radius(G0)
    GX = eval_self_map(G, X)
    lhs = spectral_radius(GX)
    rhs = theorem2_bound(rX, rG0, mp.degree)
    reevaluated = False
    if rhs - lhs < -tol_check:
        try:
            mp = minimal_polynomial(G0, REEVAL_TOL)
            rhs = theorem2_bound(rX, rG0, mp.degree)
            reevaluated = True
        except IllConditionedStructureError:
            pass
    context = {
        "rX": rX,
        "rG0": rG0,
        "dG": mp.degree,
        "X": matrix_digest(X),
        "G0": matrix_digest(G0),
        "reevaluated": reevaluated,
    }
    return SlackReport(lhs, rhs, context, tol_check)


def ransford_white_check(G: SelfMap, X, tol_check: float = TOL_CHECK) -> SlackReport:
    """``r(G(X)) <= r(X)`` for self-maps fixing the origin."""
    X, rX = _in_ball(X, "X")
    n = X.shape[0]
    G0 = _origin_value(G, n)
    if scale_of(G0) > ZERO_TOL:
        raise PreconditionError(f"G(0) is not zero (||G(0)||_F = {scale_of(G0):.3e})")
    lhs = spectral_radius(eval_self_map(G, X))
    return SlackReport(lhs, rX, {"rX": rX, "X": matrix_digest(X)}, tol_check)


def naive_check(G: SelfMap, X, tol_check: float = TOL_CHECK) -> SlackReport:
    """``r(G(X)) <= r(X)`` without any hypothesis on ``G(0)``; expected to fail in general."""
    X, rX = _in_ball(X, "X")
    return SlackReport(spectral_radius(eval_self_map(G, X)), rX, {"rX": rX, "naive": True}, tol_check)


def pullback_to_origin(G: SelfMap, n: int, tol: float = DEFAULT_TOL) -> SelfMap:
    """``X -> B_G(G(X))`` with ``B_G`` the minimal-polynomial Blaschke product of ``G(0)``.

    The result fixes the origin. When ``G(0)`` is already zero, ``B_G`` is
    the identity factor and ``G`` itself is returned.
    """
    G0 = _origin_value(G, n)
    B = minpoly_blaschke(G0, tol)
    if B.factors == ((0j, 1),):
        return G
    return Compose((G, FunctionalCalculus(B, 1.0)))
