"""Clustered spectra and numerical minimal polynomials.

The minimal polynomial of a floating-point matrix is ill-posed next to a
change of Jordan structure, so everything here runs against an explicit
relative tolerance ``tol`` and refuses to guess inside an ambiguity band
``[tol/10, 10*tol]``.

For a clustered eigenvalue ``lam`` of algebraic multiplicity ``a`` the
index ``m`` (multiplicity of ``lam`` in the minimal polynomial) is the
smallest ``k`` at which ``rank((A - lam I)^k)`` stops dropping. The ranks
are read off a staircase of SVD deflations (Golub-Wilkinson), which gives
``nullity((A - lam I)^k)`` for every ``k`` without forming matrix powers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IllConditionedStructureError, InvalidInputError, NumericalFailureError
from .linalg import EIG_CONSTANT, EPS, _single_linkage, as_cmatrix, eigenvalues, identity, scale_of

DEFAULT_TOL = 1e-8
#: Lower bound on the scale that relative tolerances multiply. Inputs in the
#: spectral unit ball come out of O(1) computations, so their rounding noise
#: does not shrink with ``||A||``; without the floor a matrix of size 1e-17
#: that should be zero would resolve its noise into distinct eigenvalues.
SCALE_FLOOR = 1.0


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with algebraic multiplicities."""

    points: tuple[tuple[complex, int], ...]

    @property
    def values(self) -> list[complex]:
        return [v for v, _ in self.points]

    @property
    def size(self) -> int:
        return sum(m for _, m in self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class MinPoly:
    """Roots of the minimal polynomial with their multiplicities."""

    roots: tuple[tuple[complex, int], ...]

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    @property
    def values(self) -> list[complex]:
        return [v for v, _ in self.roots]

    def coefficients(self) -> np.ndarray:
        """Monic coefficients, highest degree first."""
        return np.poly(np.repeat(self.values, [m for _, m in self.roots]))

    def to_dict(self) -> dict:
        return {
            "roots": [{"re": float(np.real(v)), "im": float(np.imag(v)), "mult": int(m)} for v, m in self.roots],
            "degree": self.degree,
        }

    @classmethod
    def from_dict(cls, obj) -> "MinPoly":
        return cls(tuple((complex(r["re"], r["im"]), int(r["mult"])) for r in obj["roots"]))


def _representative(vals: np.ndarray) -> complex:
    # exact duplicates stay bit-identical; a float mean of k copies need not
    if np.all(vals == vals[0]):
        return complex(vals[0])
    return complex(vals.mean())


def cluster_spectrum(eigs, tol: float) -> Spectrum:
    """Single-linkage clustering of an eigenvalue list at absolute threshold ``tol``.

    Each cluster is represented by the mean of its members.

    >>> cluster_spectrum([0.5, 0.5, 0.2], 1e-8).points
    (((0.5+0j), 2), ((0.2+0j), 1))
    """
    if not tol > 0:
        raise InvalidInputError("clustering tolerance must be positive")
    vals = np.asarray(eigs, dtype=np.complex128).ravel()
    if vals.size == 0:
        raise InvalidInputError("empty eigenvalue list")
    if not np.all(np.isfinite(vals)):
        raise InvalidInputError("non-finite eigenvalue")
    groups = _single_linkage(vals, tol)
    return Spectrum(tuple((_representative(vals[g]), len(g)) for g in groups))


def _staircase_nullities(M: np.ndarray, base: float, tol: float, kmax: int) -> list[int]:
    """Cumulative nullities of ``M^1 .. M^kmax`` by repeated SVD deflation."""
    n = M.shape[0]
    threshold = tol * base
    lo, hi = threshold / 10, threshold * 10
    nullities = []
    total = 0
    B = M
    for _ in range(kmax):
        if B.shape[0] == 0:
            nullities.append(total)
            continue
        U, s, Vh = np.linalg.svd(B)
        ambiguous = (s >= lo) & (s <= hi)
        if np.any(ambiguous):
            raise IllConditionedStructureError(
                f"singular value {s[ambiguous][0]:.3e} inside ambiguity band "
                f"[{lo:.1e}, {hi:.1e}]; supply exactly structured input"
            )
        nu = int(np.count_nonzero(s <= threshold))
        total += nu
        nullities.append(total)
        if nu == 0:
            # rank stopped dropping; every later power has the same nullity
            nullities.extend([total] * (kmax - len(nullities)))
            break
        r = B.shape[0] - nu
        V = Vh.conj().T
        B = V[:, :r].conj().T @ B @ V[:, :r]
    assert len(nullities) == kmax and total <= n
    return nullities


def jordan_index(A, lam: complex, alg_mult: int, tol: float = DEFAULT_TOL) -> int:
    """Multiplicity of ``(x - lam)`` in the minimal polynomial of ``A``.

    Raises
    ------
    IllConditionedStructureError
        A probed singular value is ambiguous, or the nullities never reach
        ``alg_mult`` (the cluster is not a numerical eigenvalue of that
        multiplicity).
    """
    A = as_cmatrix(A)
    n = A.shape[0]
    M = A - lam * identity(n)
    base = max(scale_of(M), scale_of(A), SCALE_FLOOR)
    nullities = _staircase_nullities(M, base, tol, alg_mult)
    for k, nu in enumerate(nullities, start=1):
        if nu >= alg_mult:
            if nu > alg_mult:
                break
            return k
    raise IllConditionedStructureError(
        f"eigenvalue {lam:.6g}: nullities {nullities} never match algebraic multiplicity {alg_mult}",
        matrix=A,
        eigenvalue=lam,
    )


def clustered_spectrum(A, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of ``A`` clustered at ``tol * max(||A||_F, SCALE_FLOOR)``."""
    A = as_cmatrix(A)
    return cluster_spectrum(eigenvalues(A), tol * max(scale_of(A), SCALE_FLOOR))


def minimal_polynomial(A, tol: float = DEFAULT_TOL) -> MinPoly:
    """Numerical minimal polynomial of ``A``.

    Parameters
    ----------
    A : array_like
        Square complex matrix.
    tol : float
        Relative threshold. Eigenvalues closer than ``tol * ||A||_F`` are one
        cluster; singular values below ``tol * max(||A - lam I||_F, ||A||_F)``
        count as zero in the rank probe. Both scales are floored at
        ``SCALE_FLOOR``.

    Returns
    -------
    MinPoly
        Distinct eigenvalues with their minimal-polynomial multiplicities.
    """
    if not tol > 0:
        raise InvalidInputError("tolerance must be positive")
    A = as_cmatrix(A)
    spec = clustered_spectrum(A, tol)
    roots = []
    for lam, a in spec.points:
        try:
            m = jordan_index(A, lam, a, tol)
        except IllConditionedStructureError as exc:
            exc.matrix = A
            raise
        roots.append((lam, m))
    return MinPoly(tuple(roots))


def annihilation_residual(A, mp: MinPoly) -> float:
    """Frobenius norm of the minimal polynomial evaluated at ``A`` in product form."""
    A = as_cmatrix(A)
    n = A.shape[0]
    P = identity(n)
    for lam, m in mp.roots:
        F = A - lam * identity(n)
        for _ in range(m):
            P = P @ F
    return scale_of(P)


def krylov_minpoly_oracle(A, tol: float = 1e-9) -> MinPoly:
    """Minimal polynomial from the first linear dependence among ``I, A, A^2, ...``.

    Independent of the rank probe: the degree is the least ``k`` for which
    ``vec(A^k)`` lies in the span of the lower powers (relative least-squares
    residual below ``tol``, or below the eigenvalue backward-error level
    for powers that have decayed to rounding noise). The dependence polynomial is factored with a
    companion-matrix root finder and each root is attributed to the nearest
    point of the clustered spectrum of ``A``.
    """
    A = as_cmatrix(A)
    n = A.shape[0]
    scale = scale_of(A)
    spec = clustered_spectrum(A)
    if scale == 0.0:
        return MinPoly(((0j, 1),))
    An = A / scale
    basis = []
    P = identity(n)
    coeffs = None
    for k in range(n + 1):
        v = P.ravel()
        if basis:
            Q = np.stack(basis, axis=1)
            c, *_ = np.linalg.lstsq(Q, v, rcond=None)
            resid = np.linalg.norm(v - Q @ c)
            # powers of a nilpotent part decay to rounding noise, hence the absolute floor
            if resid <= max(tol * np.linalg.norm(v), EIG_CONSTANT * n * EPS):
                coeffs = c
                break
        basis.append(v)
        P = P @ An
    if coeffs is None:
        raise NumericalFailureError("no linear dependence among powers up to n (Cayley-Hamilton violated)", matrix=A)
    degree = len(basis)
    # A^k = sum c_i A^i  ->  x^k - sum c_i x^i, highest degree first
    poly = np.concatenate([[1.0], -coeffs[::-1]])
    try:
        roots = np.roots(poly) * scale if degree > 0 else np.array([])
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"root finder failed: {exc}", matrix=A) from exc
    refs = np.array(spec.values)
    counts = np.zeros(len(refs), dtype=int)
    # multiple roots scatter like eps**(1/m); attribute each to the nearest reference
    if len(refs) > 1:
        gaps = np.abs(refs[:, None] - refs[None, :])
        limit = min(gaps[~np.eye(len(refs), dtype=bool)].min() / 2, 0.1 * scale)
    else:
        limit = 0.1 * scale
    for r in roots:
        d = np.abs(refs - r)
        j = int(d.argmin())
        if d[j] > limit:
            raise NumericalFailureError(f"polynomial root {r:.6g} matches no eigenvalue", matrix=A)
        counts[j] += 1
    return MinPoly(tuple((complex(refs[j]), int(counts[j])) for j in range(len(refs)) if counts[j] > 0))
