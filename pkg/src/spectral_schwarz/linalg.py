"""Dense complex matrices, eigenvalues and the spectral unit ball.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Eigenvalues come
from LAPACK (Hessenberg reduction followed by shifted QR) and are then
post-processed: clusters that are numerically a single multiple eigenvalue
are replaced by their mean. The mean of a Jordan cluster is accurate to
roughly machine precision even though the individual computed eigenvalues
scatter like ``eps**(1/k)``.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, NumericalFailureError

EPS = np.finfo(float).eps

#: Constant ``c`` in ``tol_eig = c * n * eps * ||A||``.
EIG_CONSTANT = 100.0


def as_cmatrix(A) -> np.ndarray:
    """Validate ``A`` and return it as a square complex128 array."""
    arr = np.asarray(A)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("matrix has non-finite entries")
    return arr


def _as_stack(As) -> np.ndarray:
    arr = np.asarray(As)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2] or arr.shape[1] == 0:
        raise InvalidInputError(f"expected a stack of square matrices, got shape {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("matrix stack has non-finite entries")
    return arr


def scale_of(A) -> float:
    """Frobenius norm; the scale every relative tolerance refers to."""
    return float(np.linalg.norm(A))


def tol_eig(A) -> float:
    """Backward-error budget for computed eigenvalues of ``A``."""
    A = as_cmatrix(A)
    return EIG_CONSTANT * A.shape[0] * EPS * scale_of(A)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def block_diag(*blocks) -> np.ndarray:
    """Block-diagonal matrix from square blocks (empty blocks are skipped)."""
    blocks = [np.atleast_2d(np.asarray(b, dtype=np.complex128)) for b in blocks if np.size(b)]
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.complex128)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def _raw_eigvals(stack: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvals(stack)
    except np.linalg.LinAlgError as exc:
        bad = stack[0] if stack.shape[0] == 1 else stack
        raise NumericalFailureError(f"eigenvalue iteration failed: {exc}", matrix=bad) from exc


def _single_linkage(values: np.ndarray, threshold: float) -> list[np.ndarray]:
    """Connected components of the graph ``|v_i - v_j| <= threshold``."""
    m = len(values)
    close = np.abs(values[:, None] - values[None, :]) <= threshold
    label = -np.ones(m, dtype=int)
    groups = []
    for start in range(m):
        if label[start] >= 0:
            continue
        label[start] = len(groups)
        stack, members = [start], [start]
        while stack:
            i = stack.pop()
            for j in np.flatnonzero(close[i] & (label < 0)):
                label[j] = label[start]
                stack.append(j)
                members.append(j)
        groups.append(np.array(sorted(members)))
    return groups


def _is_multiple(A: np.ndarray, mu: complex, k: int, scale: float) -> bool:
    # ((A - mu I)^k has nullity >= k) at the eigenvalue backward-error level
    n = A.shape[0]
    M = A - mu * identity(n)
    base = max(scale_of(M), scale)
    if base == 0.0:
        return True
    s = np.linalg.svd(np.linalg.matrix_power(M / base, k), compute_uv=False)
    return bool(np.all(s[n - k:] <= EIG_CONSTANT * n * EPS))


def _refine_cluster(A, values, idx, threshold, floor, scale, out):
    for group in _single_linkage(values[idx], threshold):
        members = idx[group]
        if len(members) == 1:
            continue
        mu = values[members].mean()
        if _is_multiple(A, mu, len(members), scale):
            out[members] = mu
        elif threshold / 10 > floor:
            _refine_cluster(A, values, members, threshold / 10, floor, scale, out)


def merge_threshold(n: int) -> float:
    """Relative pair distance below which a raw spectrum is inspected for multiple eigenvalues."""
    return (EIG_CONSTANT * n * EPS) ** (1.0 / n) if n > 1 else 0.0


def _refine(A: np.ndarray, raw: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    scale = scale_of(A)
    if n == 1 or scale == 0.0:
        return raw
    top = merge_threshold(n) * scale
    out = raw.copy()
    _refine_cluster(A, raw, np.arange(n), top, EIG_CONSTANT * n * EPS * scale, scale, out)
    return out


def _needs_refinement(raw: np.ndarray, scales: np.ndarray) -> np.ndarray:
    n = raw.shape[1]
    if n == 1:
        return np.zeros(raw.shape[0], dtype=bool)
    gaps = np.abs(raw[:, :, None] - raw[:, None, :])
    gaps[:, np.arange(n), np.arange(n)] = np.inf
    return (gaps.min(axis=(1, 2)) <= merge_threshold(n) * scales) & (scales > 0)


def eigenvalues_batch(As) -> np.ndarray:
    """Eigenvalues of a stack of matrices, shape ``(m, n)``."""
    stack = _as_stack(As)
    raw = _raw_eigvals(stack)
    scales = np.linalg.norm(stack, axis=(1, 2))
    for i in np.flatnonzero(_needs_refinement(raw, scales)):
        raw[i] = _refine(stack[i], raw[i])
    return raw


def eigenvalues(A) -> np.ndarray:
    """All ``n`` eigenvalues of ``A`` with algebraic multiplicity.

    Each returned value ``lam`` satisfies ``sigma_min(A - lam I) <= tol_eig(A)``
    up to the Jordan-structure effects described in the module docstring.

    Raises
    ------
    InvalidInputError
        Non-square or non-finite input.
    NumericalFailureError
        The QR iteration did not converge; the matrix is attached.
    """
    A = as_cmatrix(A)
    return eigenvalues_batch(A[None])[0]


def modulus(z):
    """``|z|`` via ``hypot``.

    ``np.abs`` on complex arrays takes a vectorised path that can differ
    from the scalar result in the last bit; ``hypot`` agrees on both, which
    keeps identities such as ``dist(mu; {0}) == |mu|`` exact.
    """
    z = np.asarray(z, dtype=np.complex128)
    return np.hypot(z.real, z.imag)


def spectral_radii(As) -> np.ndarray:
    """Spectral radius of each matrix in a stack."""
    return modulus(eigenvalues_batch(As)).max(axis=1)


def spectral_radius(A) -> float:
    """Largest eigenvalue modulus of ``A``."""
    return float(modulus(eigenvalues(A)).max())


def in_spectral_ball(A, margin: float = 0.0) -> bool:
    """True iff ``spectral_radius(A) < 1 - margin``."""
    if margin < 0:
        raise InvalidInputError("margin must be non-negative")
    return spectral_radius(A) < 1.0 - margin


def matrix_to_json(A) -> dict:
    """Matrix literal ``{"n", "re", "im"}`` with row-major entries."""
    A = as_cmatrix(A)
    return {
        "n": int(A.shape[0]),
        "re": [float(x) for x in A.real.ravel()],
        "im": [float(x) for x in A.imag.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`; accepts a dict or a JSON string."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros(n * n)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix literal: {exc}") from exc
    if n <= 0 or re.size != n * n or im.size != n * n:
        raise InvalidInputError("matrix literal must carry n*n real and imaginary parts")
    return as_cmatrix((re + 1j * im).reshape(n, n))


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(Path(path).read_text())


def matrix_digest(A) -> str:
    """Short content hash used to reference matrices inside reports."""
    A = as_cmatrix(A)
    return hashlib.sha256(np.ascontiguousarray(A).tobytes()).hexdigest()[:16]
