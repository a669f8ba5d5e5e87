"""Explicit constructions: the nilpotent-at-the-origin example maps, the maps
attaining equality in both bounds, the single-eigenvalue set, and the
counterexample to the naive self-map bound.

Structured matrices carry a tag from which their spectral radius and
minimal polynomial follow in closed form, so downstream code can compare
the numerical probes against exact values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import SlackReport, check_theorem1, check_theorem2, naive_check, theorem1_terms
from .errors import DegeneratePairError, InvalidInputError
from .hyperbolic import pseudo_hyperbolic
from .linalg import block_diag, identity, matrix_to_json, spectral_radius
from .maps import (
    Extremal,
    ShiftBlockDiscMap,
    _check_point,
    as_rng,
    conjugate,
    random_similarity,
    scalar_plus_nilpotent,
    shift_block,
)
from .spectrum import DEFAULT_TOL, clustered_spectrum, minimal_polynomial

# ---------------------------------------------------------------------------
# Structure tags


def nilpotent(d: int) -> dict:
    return {"kind": "nilpotent", "d": int(d)}


def companion(d: int, w: complex) -> dict:
    w = complex(w)
    return {"kind": "companion", "d": int(d), "w": [w.real, w.imag]}


def scalar_plus_nilpotent_tag(lam: complex, size: int, index: int | None = None) -> dict:
    """``lam I_size + N`` with ``N`` nilpotent; ``index`` is the nilpotency degree of ``N`` when known."""
    lam = complex(lam)
    return {"kind": "scalar_plus_nilpotent", "lam": [lam.real, lam.imag], "size": int(size), "index": index}


def block_diag_tag(*tags) -> dict:
    return {"kind": "block_diag", "blocks": list(tags)}


def jordan(blocks) -> dict:
    """Jordan data ``[(lam, size), ...]``, possibly conjugated by a similarity."""
    return {"kind": "jordan", "blocks": [[complex(l).real, complex(l).imag, int(s)] for l, s in blocks]}


def _tag_size(tag) -> int:
    kind = tag["kind"]
    if kind in ("nilpotent", "companion"):
        return tag["d"]
    if kind == "scalar_plus_nilpotent":
        return tag["size"]
    if kind == "block_diag":
        return sum(_tag_size(t) for t in tag["blocks"])
    if kind == "jordan":
        return sum(b[2] for b in tag["blocks"])
    raise InvalidInputError(f"unknown structure tag {kind!r}")


def _tag_roots(tag) -> list[tuple[complex, int]] | None:
    """Minimal-polynomial roots implied by a tag, or ``None`` when the tag leaves them open."""
    kind = tag["kind"]
    if kind == "nilpotent":
        return [(0j, tag["d"])]
    if kind == "companion":
        d, w = tag["d"], complex(*tag["w"])
        if w == 0:
            return [(0j, d)]
        rho, arg = abs(w) ** (1.0 / d), np.angle(w)
        return [(complex(rho * np.exp(1j * (arg + 2 * np.pi * k) / d)), 1) for k in range(d)]
    if kind == "scalar_plus_nilpotent":
        if tag.get("index") is None:
            return None
        return [(complex(*tag["lam"]), tag["index"])]
    if kind == "jordan":
        index: dict[complex, int] = {}
        for re, im, s in tag["blocks"]:
            lam = complex(re, im)
            index[lam] = max(index.get(lam, 0), s)
        return list(index.items())
    if kind == "block_diag":
        merged: list[list] = []
        for t in tag["blocks"]:
            roots = _tag_roots(t)
            if roots is None:
                return None
            for lam, m in roots:
                for entry in merged:
                    if abs(entry[0] - lam) <= 1e-14:
                        entry[1] = max(entry[1], m)
                        break
                else:
                    merged.append([lam, m])
        return [(l, m) for l, m in merged]
    raise InvalidInputError(f"unknown structure tag {kind!r}")


def _tag_radius(tag) -> float:
    kind = tag["kind"]
    if kind == "scalar_plus_nilpotent":
        return abs(complex(*tag["lam"]))
    if kind == "block_diag":
        return max(_tag_radius(t) for t in tag["blocks"])
    if kind == "companion":
        return abs(complex(*tag["w"])) ** (1.0 / tag["d"])
    return max(abs(l) for l, _ in _tag_roots(tag))


@dataclass(frozen=True, eq=False)
class StructuredMatrix:
    """A matrix together with a tag describing its exact spectral structure."""

    matrix: np.ndarray
    tag: dict

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def spectral_radius(self) -> float:
        return _tag_radius(self.tag)

    @property
    def minpoly_roots(self):
        return _tag_roots(self.tag)

    @property
    def minpoly_degree(self) -> int | None:
        roots = _tag_roots(self.tag)
        return None if roots is None else sum(m for _, m in roots)

    def verify(self, tol: float = DEFAULT_TOL, radius_tol: float = 1e-10) -> dict:
        """Re-derive the tag's claims numerically; returns the measured and implied values."""
        r_num = spectral_radius(self.matrix)
        out = {"radius": r_num, "implied_radius": self.spectral_radius, "radius_ok": abs(r_num - self.spectral_radius) <= radius_tol}
        deg = self.minpoly_degree
        if deg is not None:
            num = minimal_polynomial(self.matrix, tol).degree
            out.update(degree=num, implied_degree=deg, degree_ok=num == deg)
        return out

    def to_dict(self) -> dict:
        return {**matrix_to_json(self.matrix), "structure_tag": self.tag}


# ---------------------------------------------------------------------------
# Constructors


def companion_Nd(d: int, w: complex) -> StructuredMatrix:
    """``d x d`` lower shift with corner ``w``; its eigenvalues are the ``d``-th roots of ``w``."""
    if d < 1:
        raise InvalidInputError("d must be at least 1")
    _check_point(w)
    return StructuredMatrix(shift_block(d, w), companion(d, w) if w != 0 else nilpotent(d))


def example_map(n: int, d: int) -> ShiftBlockDiscMap:
    """``zeta -> diag(N_d(zeta), zeta I_{n-d})``, nilpotent of degree ``d`` at the origin."""
    if n < 3 or not 2 <= d <= n - 1:
        raise InvalidInputError(f"example map needs n >= 3 and 2 <= d <= n-1, got n={n}, d={d}")
    return ShiftBlockDiscMap(n, d, 0j)


def example_Fd(n: int, d: int, zeta: complex) -> StructuredMatrix:
    """Value of :func:`example_map` at ``zeta``; spectral radius ``|zeta|^(1/d)``."""
    F = example_map(n, d)
    _check_point(zeta)
    head = companion(d, zeta) if zeta != 0 else nilpotent(d)
    tag = block_diag_tag(head, scalar_plus_nilpotent_tag(zeta, n - d, 1))
    return StructuredMatrix(F(zeta), tag)


def extremal_disc_map(z: complex, w: complex, n: int, d: int) -> ShiftBlockDiscMap:
    """Map attaining equality in the two-point inequality at ``(z, w)``.

    ``zeta -> diag(N_d(M(zeta)), M(zeta) I_{n-d})`` with
    ``M(zeta) = (zeta - z)/(1 - conj(z) zeta)``; its value at ``z`` is
    nilpotent of degree ``d``.
    """
    if n < 2 or not 1 <= d <= n:
        raise InvalidInputError(f"need n >= 2 and 1 <= d <= n, got n={n}, d={d}")
    _check_point(z)
    _check_point(w)
    if z == w:
        raise DegeneratePairError("extremal disc map needs z != w")
    return ShiftBlockDiscMap(n, d, complex(z), complex(w))


@dataclass(frozen=True)
class DiscSharpness:
    report: SlackReport
    backward: float
    backward_expected: float
    d_w: int
    #: whether the d-th roots of M(w) avoid M(w), so that d(w) = d + 1
    distinct_roots: bool

    @property
    def backward_error(self) -> float:
        return abs(self.backward - self.backward_expected)


def disc_sharpness(z: complex, w: complex, n: int, d: int, tol_check: float = 1e-9) -> DiscSharpness:
    """Evaluate the extremal disc map at ``(z, w)``: the slack and the secondary term."""
    F = extremal_disc_map(z, w, n, d)
    report = check_theorem1(F, z, w, tol_check)
    terms = theorem1_terms(F(z), F(w))
    rho = pseudo_hyperbolic(z, w)
    distinct = d >= 2 and n > d and terms.d2 == d + 1
    return DiscSharpness(report, terms.backward, rho ** (d + 1), terms.d2, distinct)


def extremal_self_map(n: int, d: int) -> Extremal:
    """``X -> diag(N_d(tr X / n), (tr X / n) I_{n-d})``; nilpotent of degree ``d`` at the origin."""
    if n < 2 or not 1 <= d <= n:
        raise InvalidInputError(f"need n >= 2 and 1 <= d <= n, got n={n}, d={d}")
    return Extremal(n, d)


def sample_Sn(n: int, rng_seed=None, max_modulus: float = 0.95) -> StructuredMatrix:
    """Random matrix with a single eigenvalue of multiplicity ``n``.

    ``S (lam I + U) S^-1`` with ``U`` strictly upper triangular, ``|lam|``
    uniform on ``[0, max_modulus]`` and ``cond(S) <= 100``.
    """
    if n < 2:
        raise InvalidInputError("n must be at least 2")
    rng = as_rng(rng_seed)
    A, lam = scalar_plus_nilpotent(n, rng, max_modulus=max_modulus)
    return StructuredMatrix(A, scalar_plus_nilpotent_tag(lam, n))


def in_Sn(A, tol: float = DEFAULT_TOL) -> bool:
    """Membership in the spectral unit ball with a single (numerical) eigenvalue."""
    A = np.asarray(A)
    if not spectral_radius(A) < 1:
        return False
    return len(clustered_spectrum(A, tol)) == 1


def sample_jordan(n: int, rng_seed=None, pool=None, max_cond: float = 100.0) -> StructuredMatrix:
    """``S J S^-1`` for a random Jordan matrix ``J`` with eigenvalues from a well-separated pool."""
    rng = as_rng(rng_seed)
    if pool is None:
        pool = np.array([0.0, 0.6, -0.5, 0.4j, -0.3 - 0.6j, 0.7 + 0.5j])
    pool = np.asarray(pool, dtype=np.complex128)
    k = int(rng.integers(1, min(n, len(pool)) + 1))
    eigs = rng.choice(pool, size=k, replace=False)
    blocks = []
    rem = n
    while rem > 0:
        s = int(rng.integers(1, rem + 1))
        blocks.append((complex(eigs[rng.integers(k)]), s))
        rem -= s
    J = block_diag(*[l * identity(s) + np.diag(np.ones(s - 1), 1) for l, s in blocks])
    return StructuredMatrix(conjugate(random_similarity(n, rng, max_cond), J), jordan(blocks))


def naive_bound_counterexample(n: int, t: float = 0.01):
    """``G = extremal_self_map(n, 2)`` at ``X = t I``: ``r(G(X)) = sqrt(t) > t = r(X)``.

    Returns ``(G, X, naive_report, theorem2_report)``. The naive report has
    negative slack while the growth bound holds with equality.
    """
    if n < 2:
        raise InvalidInputError("n must be at least 2")
    if not 0 < t < 1:
        raise InvalidInputError("t must lie in (0, 1)")
    G = extremal_self_map(n, 2)
    X = t * identity(n)
    return G, X, naive_check(G, X), check_theorem2(G, X)
