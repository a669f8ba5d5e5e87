"""Pseudo-hyperbolic geometry of the unit disc, Blaschke products and Moebius circles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericalFailureError, UnboundedImageError
from .linalg import as_cmatrix, identity, modulus, spectral_radius
from .spectrum import DEFAULT_TOL, minimal_polynomial


def _check_disc(*points):
    for p in points:
        if not np.isfinite(p) or abs(p) >= 1:
            raise InvalidInputError(f"point {p!r} is not in the open unit disc")


def pseudo_hyperbolic(z: complex, w: complex) -> float:
    """``|z - w| / |1 - conj(w) z|`` for ``z, w`` in the unit disc."""
    _check_disc(z, w)
    return float(modulus(z - w) / modulus(1 - np.conj(w) * z))


def dist_M(zeta: complex, K) -> tuple[float, complex]:
    """Pseudo-hyperbolic distance from ``zeta`` to a finite set ``K``.

    Returns the minimal distance together with the first point of ``K``
    (in input order) attaining it.
    """
    K = list(K)
    if not K:
        raise InvalidInputError("dist_M needs a non-empty set")
    best, arg = np.inf, None
    for z in K:
        rho = pseudo_hyperbolic(zeta, z)
        if rho < best:
            best, arg = rho, z
    return best, arg


def disc_automorphism(a: complex):
    """The map ``zeta -> (zeta - a) / (1 - conj(a) zeta)``."""
    _check_disc(a)
    ca = np.conj(a)
    return lambda zeta: (zeta - a) / (1 - ca * zeta)


@dataclass(frozen=True)
class Mobius:
    """``T(z) = (a z + b) / (c z + d)``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise InvalidInputError("degenerate Moebius transformation (ad - bc = 0)")

    def __call__(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    @classmethod
    def automorphism(cls, lam: complex) -> "Mobius":
        _check_disc(lam)
        return cls(1, -lam, -np.conj(lam), 1)


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def to_dict(self) -> dict:
        return {"center": {"re": float(np.real(self.center)), "im": float(np.imag(self.center))}, "radius": self.radius}


def mobius_image_circle(T: Mobius) -> Circle:
    """Image of the unit circle under ``T``.

    Raises :class:`UnboundedImageError` when ``|c| = |d|`` (the pole lies on
    the unit circle and the image is a line).
    """
    den = abs(T.d) ** 2 - abs(T.c) ** 2
    if den == 0:
        raise UnboundedImageError("|c| = |d|: the image of the unit circle is unbounded")
    center = (T.b * np.conj(T.d) - T.a * np.conj(T.c)) / den
    radius = abs(T.a * T.d - T.b * T.c) / abs(den)
    return Circle(complex(center), float(radius))


def circle_min_modulus(T: Mobius) -> float:
    """Smallest ``|w|`` over ``w`` in the image of the unit circle.

    For a circle with centre ``c`` and radius ``r`` this is ``| |c| - r |``,
    which covers both circles that enclose the origin (``r > |c|``) and those
    that do not.
    """
    circ = mobius_image_circle(T)
    return abs(abs(circ.center) - circ.radius)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product given by zeros inside the disc and multiplicities."""

    factors: tuple[tuple[complex, int], ...]

    def __post_init__(self):
        factors = tuple((complex(z), int(m)) for z, m in self.factors)
        if not factors:
            raise InvalidInputError("a Blaschke product needs at least one factor")
        for z, m in factors:
            _check_disc(z)
            if m < 1:
                raise InvalidInputError("multiplicities must be positive")
        object.__setattr__(self, "factors", factors)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def __call__(self, zeta):
        return blaschke_eval(self, zeta)

    def to_dict(self) -> dict:
        return {"factors": [{"re": z.real, "im": z.imag, "mult": m} for z, m in self.factors]}

    @classmethod
    def from_dict(cls, obj) -> "BlaschkeProduct":
        return cls(tuple((complex(f["re"], f["im"]), int(f["mult"])) for f in obj["factors"]))


def blaschke_eval(B: BlaschkeProduct, zeta: complex) -> complex:
    _check_disc(zeta)
    out = 1 + 0j
    for lam, m in B.factors:
        out *= ((zeta - lam) / (1 - np.conj(lam) * zeta)) ** m
    return complex(out)


#: Condition number beyond which a factor solve is refused.
MAX_FACTOR_COND = 1e12


def blaschke_matrix(B: BlaschkeProduct, A) -> np.ndarray:
    """Matrix Blaschke product ``prod (I - conj(lam) A)^(-m) (A - lam I)^m``.

    Evaluated in closed form with one linear solve per factor power, in the
    order the factors are listed.

    Raises
    ------
    InvalidInputError
        ``A`` is not in the spectral unit ball.
    NumericalFailureError
        A factor ``I - conj(lam) A`` is numerically singular.
    """
    A = as_cmatrix(A)
    if not spectral_radius(A) < 1:
        raise InvalidInputError("blaschke_matrix needs a matrix with spectral radius < 1")
    n = A.shape[0]
    I = identity(n)
    out = I
    for lam, m in B.factors:
        num = A - lam * I
        den = I - np.conj(lam) * A
        if lam != 0 and np.linalg.cond(den) > MAX_FACTOR_COND:
            raise NumericalFailureError(f"factor for zero {lam:.6g} is numerically singular", matrix=A)
        for _ in range(m):
            out = num @ out
            if lam != 0:
                out = np.linalg.solve(den, out)
    return out


def minpoly_blaschke(A, tol: float = DEFAULT_TOL) -> BlaschkeProduct:
    """Blaschke product whose zeros are the minimal-polynomial roots of ``A``.

    Its matrix version annihilates ``A``.
    """
    A = as_cmatrix(A)
    if not spectral_radius(A) < 1:
        raise InvalidInputError("minpoly_blaschke needs a matrix with spectral radius < 1")
    return BlaschkeProduct(minimal_polynomial(A, tol).roots)
