"""Finite descriptions of holomorphic maps ``D -> Omega_n`` and ``Omega_n -> Omega_n``.

Disc maps are matrix polynomials (``DiscMapSpec``) or the shift-block family
``zeta -> diag(N_d(phi(zeta)), phi(zeta) I)`` with ``phi`` a disc
automorphism (``ShiftBlockDiscMap``).

Self-maps of the spectral unit ball are expression trees whose every node
maps ``Omega_n`` into itself by construction:

* ``FunctionalCalculus(B, theta)``: ``X -> theta * B(X)`` for a finite
  Blaschke product ``B`` and ``|theta| <= 1``;
* ``Extremal(n, d)``: the trace-companion map (see :func:`trace_companion`);
* ``Similarity(S)``: ``X -> S X S^-1``;
* ``Constant(C)`` with ``C`` in ``Omega_n``;
* ``Compose(steps)``: the steps applied left to right, so
  ``Compose((f, g))(X) == g(f(X))``.

Convex combinations are deliberately absent: ``Omega_n`` is not convex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GeneratorViolationError, InvalidInputError, NumericalFailureError
from .hyperbolic import BlaschkeProduct, blaschke_matrix
from .linalg import (
    as_cmatrix,
    block_diag,
    identity,
    matrix_from_json,
    matrix_to_json,
    spectral_radii,
    spectral_radius,
)

BOUNDARY_SAMPLES = 4096
SAFETY = 1.05
MAX_RESAMPLE = 10
MAX_SIMILARITY_COND = 100.0


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def shift_block(d: int, corner: complex) -> np.ndarray:
    """``d x d`` lower shift with ``corner`` in the top-right entry; ``[corner]`` for ``d = 1``.

    The characteristic polynomial is ``x^d - corner``.
    """
    if d < 1:
        raise InvalidInputError("block size must be at least 1")
    N = np.zeros((d, d), dtype=np.complex128)
    if d > 1:
        N[np.arange(1, d), np.arange(d - 1)] = 1.0
    N[0, d - 1] += corner
    return N


def _shift_stack(d: int, n: int, corners: np.ndarray) -> np.ndarray:
    m = corners.shape[0]
    out = np.zeros((m, n, n), dtype=np.complex128)
    if d > 1:
        out[:, np.arange(1, d), np.arange(d - 1)] = 1.0
    out[:, 0, d - 1] += corners
    idx = np.arange(d, n)
    out[:, idx, idx] = corners[:, None]
    return out


def _check_point(zeta):
    if not np.isfinite(zeta) or abs(zeta) >= 1:
        raise InvalidInputError(f"point {zeta!r} is not in the open unit disc")


# ---------------------------------------------------------------------------
# Disc maps


class DiscMap:
    """Holomorphic map from the unit disc into ``Omega_n``."""

    n: int
    certified_sup: float | None = None

    def __call__(self, zeta) -> np.ndarray:
        _check_point(zeta)
        return self.evaluate_many(np.array([zeta], dtype=np.complex128))[0]

    def evaluate_many(self, zetas) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class DiscMapSpec(DiscMap):
    """Matrix polynomial ``F(zeta) = sum_k coeffs[k] zeta^k``."""

    coeffs: np.ndarray
    certified_sup: float | None = None

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.complex128)
        if c.ndim == 2:
            c = c[None]
        if c.ndim != 3 or c.shape[1] != c.shape[2] or not np.all(np.isfinite(c)):
            raise InvalidInputError("coefficients must be a finite stack of square matrices")
        if self.certified_sup is not None and not self.certified_sup < 1:
            raise InvalidInputError("certified_sup must be < 1")
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def evaluate_many(self, zetas) -> np.ndarray:
        z = np.asarray(zetas, dtype=np.complex128).ravel()
        out = np.broadcast_to(self.coeffs[-1], (z.size, self.n, self.n)).copy()
        for A in self.coeffs[-2::-1]:
            out = out * z[:, None, None] + A
        return out

    def to_dict(self) -> dict:
        return {
            "kind": "polynomial",
            "n": self.n,
            "coeffs": [matrix_to_json(A) for A in self.coeffs],
            "certified_sup": self.certified_sup,
        }

    @classmethod
    def from_dict(cls, obj) -> "DiscMapSpec":
        return cls(np.stack([matrix_from_json(A) for A in obj["coeffs"]]), obj.get("certified_sup"))


@dataclass(frozen=True, eq=False)
class ShiftBlockDiscMap(DiscMap):
    """``zeta -> diag(N_d(phi(zeta)), phi(zeta) I_{n-d})`` with ``phi(zeta) = (zeta - z)/(1 - conj(z) zeta)``.

    With ``z = 0`` this is the nilpotent-at-the-origin example map; with a
    general ``z`` it is the extremal map for the two-point inequality.
    ``w`` is carried only for reporting.
    """

    n: int
    d: int
    z: complex = 0j
    w: complex | None = None

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.d <= self.n:
            raise InvalidInputError(f"need 1 <= d <= n, got n={self.n}, d={self.d}")
        _check_point(self.z)

    def phi(self, zeta):
        return (zeta - self.z) / (1 - np.conj(self.z) * zeta)

    def evaluate_many(self, zetas) -> np.ndarray:
        z = np.asarray(zetas, dtype=np.complex128).ravel()
        return _shift_stack(self.d, self.n, self.phi(z))

    def to_dict(self) -> dict:
        out = {"kind": "shift_block", "n": self.n, "d": self.d, "z": [self.z.real, self.z.imag]}
        if self.w is not None:
            out["w"] = [complex(self.w).real, complex(self.w).imag]
        return out


def eval_disc_map(F: DiscMap, zeta) -> np.ndarray:
    return F(zeta)


def _gaussian(rng, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def boundary_points(m: int = BOUNDARY_SAMPLES) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


def sample_disc_map(n: int, degree: int, target: float = 0.95, rng_seed=None, vanish_at=None) -> DiscMapSpec:
    """Random matrix polynomial with ``sup_D r(F) <= target``.

    Gaussian coefficients are rescaled so the largest spectral radius over
    4096 boundary samples equals ``target / 1.05``; the 5% margin absorbs
    variation between samples, and the maximum principle for the subharmonic
    function ``r(F(.))`` carries the bound into the disc. Constant maps need no
    margin. With ``vanish_at = a`` the polynomial has the form
    ``(zeta - a) P(zeta)`` so that ``F(a) = 0``.
    """
    if degree < 0 or n < 1:
        raise InvalidInputError("need n >= 1 and degree >= 0")
    if not 0 < target < 1:
        raise InvalidInputError("target must lie in (0, 1)")
    if vanish_at is not None:
        _check_point(vanish_at)
        if degree < 1:
            raise InvalidInputError("a map vanishing at a point needs degree >= 1")
    rng = as_rng(rng_seed)
    safety = SAFETY if degree >= 1 else 1.0
    zs = boundary_points()
    for _ in range(MAX_RESAMPLE):
        if vanish_at is None:
            coeffs = _gaussian(rng, degree + 1, n, n)
        else:
            P = _gaussian(rng, degree, n, n)
            coeffs = np.zeros((degree + 1, n, n), dtype=np.complex128)
            coeffs[1:] += P
            coeffs[:-1] -= vanish_at * P
        F = DiscMapSpec(coeffs)
        s = float(spectral_radii(F.evaluate_many(zs)).max()) if degree >= 1 else spectral_radius(coeffs[0])
        if s > 0:
            return DiscMapSpec(coeffs * (target / (s * safety)), certified_sup=target)
    raise NumericalFailureError(f"{MAX_RESAMPLE} consecutive draws were nilpotent on the whole circle")


# ---------------------------------------------------------------------------
# Self-maps of the spectral unit ball


def _out_of_ball(Y, path):
    r = spectral_radius(Y)
    if not r < 1:
        raise GeneratorViolationError(f"node {path} left the spectral unit ball (r = {r:.17g})", path=path, radius=r)
    return Y


class SelfMap:
    """Node of a self-map expression tree."""

    def __call__(self, X) -> np.ndarray:
        return eval_self_map(self, X)

    def evaluate(self, X: np.ndarray, path: str) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class FunctionalCalculus(SelfMap):
    blaschke: BlaschkeProduct
    theta: complex = 1.0

    def __post_init__(self):
        if abs(self.theta) > 1:
            raise InvalidInputError("|theta| must not exceed 1")

    def evaluate(self, X, path):
        return _out_of_ball(self.theta * blaschke_matrix(self.blaschke, X), path)

    def to_dict(self):
        t = complex(self.theta)
        return {"kind": "functional_calculus", "theta": [t.real, t.imag], **self.blaschke.to_dict()}


def trace_companion(X, d: int) -> np.ndarray:
    """``diag(N_d(tr X / n), (tr X / n) I_{n-d})`` where ``N_d(c)`` has characteristic polynomial ``x^d - c``."""
    X = as_cmatrix(X)
    n = X.shape[0]
    if not 1 <= d <= n:
        raise InvalidInputError(f"need 1 <= d <= n, got d={d}, n={n}")
    c = np.trace(X) / n
    return block_diag(shift_block(d, c), c * identity(n - d))


@dataclass(frozen=True, eq=False)
class Extremal(SelfMap):
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or not 1 <= self.d <= self.n:
            raise InvalidInputError(f"need 1 <= d <= n, got n={self.n}, d={self.d}")

    def evaluate(self, X, path):
        if X.shape[0] != self.n:
            raise InvalidInputError(f"extremal map of size {self.n} applied to a {X.shape[0]}x{X.shape[0]} matrix")
        return _out_of_ball(trace_companion(X, self.d), path)

    def to_dict(self):
        return {"kind": "extremal", "n": self.n, "d": self.d}


@dataclass(frozen=True, eq=False)
class Similarity(SelfMap):
    S: np.ndarray
    S_inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        S = as_cmatrix(self.S)
        cond = np.linalg.cond(S)
        if not cond <= MAX_SIMILARITY_COND * (1 + 1e-9):
            raise InvalidInputError(f"similarity condition number {cond:.3g} exceeds {MAX_SIMILARITY_COND}")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "S_inv", np.linalg.inv(S))

    def evaluate(self, X, path):
        return _out_of_ball(self.S @ X @ self.S_inv, path)

    def to_dict(self):
        return {"kind": "similarity", "S": matrix_to_json(self.S)}


@dataclass(frozen=True, eq=False)
class Constant(SelfMap):
    C: np.ndarray

    def __post_init__(self):
        C = as_cmatrix(self.C)
        if not spectral_radius(C) < 1:
            raise InvalidInputError("constant value must lie in the spectral unit ball")
        object.__setattr__(self, "C", C)

    def evaluate(self, X, path):
        return self.C.copy()

    def to_dict(self):
        return {"kind": "constant", "C": matrix_to_json(self.C)}


@dataclass(frozen=True, eq=False)
class Compose(SelfMap):
    steps: tuple

    def __post_init__(self):
        steps = tuple(self.steps)
        if not steps:
            raise InvalidInputError("empty composition")
        object.__setattr__(self, "steps", steps)

    def evaluate(self, X, path):
        for i, step in enumerate(self.steps):
            X = step.evaluate(X, f"{path}.{i}")
        return X

    def to_dict(self):
        return {"kind": "compose", "steps": [s.to_dict() for s in self.steps]}


def identity_map() -> FunctionalCalculus:
    return FunctionalCalculus(BlaschkeProduct(((0j, 1),)), 1.0)


def self_map_from_dict(obj) -> SelfMap:
    kind = obj["kind"]
    if kind == "functional_calculus":
        return FunctionalCalculus(BlaschkeProduct.from_dict(obj), complex(*obj["theta"]))
    if kind == "extremal":
        return Extremal(obj["n"], obj["d"])
    if kind == "similarity":
        return Similarity(matrix_from_json(obj["S"]))
    if kind == "constant":
        return Constant(matrix_from_json(obj["C"]))
    if kind == "compose":
        return Compose(tuple(self_map_from_dict(s) for s in obj["steps"]))
    raise InvalidInputError(f"unknown self-map node kind {kind!r}")


def eval_self_map(G: SelfMap, X) -> np.ndarray:
    """Evaluate ``G`` at ``X``; every node output is checked against ``Omega_n``.

    Raises
    ------
    InvalidInputError
        ``X`` is not in the spectral unit ball.
    GeneratorViolationError
        Some node produced a matrix outside the ball; ``path`` names it.
    """
    X = as_cmatrix(X)
    if not spectral_radius(X) < 1:
        raise InvalidInputError("argument is not in the spectral unit ball")
    return G.evaluate(X, "root")


# ---------------------------------------------------------------------------
# Random elements


def random_unitary(n: int, rng) -> np.ndarray:
    Q, R = np.linalg.qr(_gaussian(rng, n, n))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_similarity(n: int, rng, max_cond: float = MAX_SIMILARITY_COND) -> np.ndarray:
    """``U diag(s) V`` with singular values spread geometrically up to a random condition number <= ``max_cond``."""
    kappa = 10 ** rng.uniform(0, np.log10(max_cond))
    s = np.geomspace(1.0, kappa, n) if n > 1 else np.ones(1)
    return random_unitary(n, rng) @ np.diag(s) @ random_unitary(n, rng)


def conjugate(S, T) -> np.ndarray:
    return S @ T @ np.linalg.inv(S)


def scalar_plus_nilpotent(n: int, rng, lam=None, max_modulus: float = 0.95) -> tuple[np.ndarray, complex]:
    """``S (lam I + U) S^-1`` with ``U`` strictly upper triangular; single eigenvalue ``lam``."""
    if lam is None:
        lam = rng.uniform(0, max_modulus) * np.exp(2j * np.pi * rng.uniform())
    U = np.triu(_gaussian(rng, n, n), 1) * rng.uniform(0.05, 1.0)
    return conjugate(random_similarity(n, rng), lam * identity(n) + U), complex(lam)


def sample_omega(n: int, rng_seed=None, kind: str | None = None) -> np.ndarray:
    """Random element of ``Omega_n`` drawn from a mixture of shapes.

    ``kind`` is one of ``generic``, ``diagonal``, ``single_eigenvalue``,
    ``nilpotent`` and ``near_boundary``; by default it is drawn at random.
    """
    rng = as_rng(rng_seed)
    kinds = ("generic", "diagonal", "single_eigenvalue", "nilpotent", "near_boundary")
    if kind is None:
        kind = kinds[rng.choice(len(kinds), p=[0.45, 0.15, 0.15, 0.1, 0.15])]
    if kind == "generic" or kind == "near_boundary":
        A = _gaussian(rng, n, n)
        r = spectral_radius(A)
        target = rng.uniform(0.95, 0.999) if kind == "near_boundary" else rng.uniform(0.0, 0.95)
        return A * (target / r) if r > 0 else A
    if kind == "diagonal":
        vals = np.sqrt(rng.uniform(0, 0.99**2, n)) * np.exp(2j * np.pi * rng.uniform(size=n))
        return np.diag(vals).astype(np.complex128)
    if kind == "single_eigenvalue":
        return scalar_plus_nilpotent(n, rng)[0]
    if kind == "nilpotent":
        return scalar_plus_nilpotent(n, rng, lam=0.0)[0]
    raise InvalidInputError(f"unknown kind {kind!r}")


def _sample_blaschke(rng) -> BlaschkeProduct:
    k = int(rng.integers(1, 4))
    factors = []
    for _ in range(k):
        if rng.uniform() < 0.3:
            z = 0j
        else:
            z = rng.uniform(0, 0.9) * np.exp(2j * np.pi * rng.uniform())
        factors.append((complex(z), int(rng.integers(1, 3))))
    return BlaschkeProduct(tuple(factors))


def _sample_leaf(n: int, rng) -> SelfMap:
    kind = rng.choice(4, p=[0.35, 0.25, 0.25, 0.15])
    if kind == 0:
        phase = np.exp(2j * np.pi * rng.uniform())
        theta = phase if rng.uniform() < 0.5 else rng.uniform(0.2, 1.0) * phase
        return FunctionalCalculus(_sample_blaschke(rng), complex(theta))
    if kind == 1:
        return Extremal(n, int(rng.integers(1, n + 1)))
    if kind == 2:
        return Similarity(random_similarity(n, rng))
    return Constant(sample_omega(n, rng))


def sample_self_map(n: int, depth: int, rng_seed=None) -> SelfMap:
    """Random composition of ``depth`` grammar nodes acting on ``n x n`` matrices."""
    if depth < 1:
        raise InvalidInputError("depth must be at least 1")
    rng = as_rng(rng_seed)
    leaves = tuple(_sample_leaf(n, rng) for _ in range(depth))
    return leaves[0] if depth == 1 else Compose(leaves)


def sample_origin_fixing_map(n: int, depth: int, rng_seed=None) -> SelfMap:
    """Random composition that maps the zero matrix to exactly zero.

    Leaves are similarities and functional-calculus nodes whose Blaschke
    product vanishes at the origin, so ``G(0) = 0`` holds in floating point
    and not only up to rounding.
    """
    if depth < 1:
        raise InvalidInputError("depth must be at least 1")
    rng = as_rng(rng_seed)
    leaves = []
    for _ in range(depth):
        if rng.uniform() < 0.6:
            B = _sample_blaschke(rng)
            if all(z != 0 for z, _ in B.factors):
                B = BlaschkeProduct(B.factors + ((0j, 1),))
            leaves.append(FunctionalCalculus(B, complex(rng.uniform(0.2, 1.0) * np.exp(2j * np.pi * rng.uniform()))))
        else:
            leaves.append(Similarity(random_similarity(n, rng)))
    return leaves[0] if depth == 1 else Compose(tuple(leaves))
