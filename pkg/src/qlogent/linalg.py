"""Dense complex linear algebra primitives for small dimensions (d <= 64).

All matrices are square numpy arrays of complex128.  The eigensolver is a
cyclic Jacobi sweep, chosen for bit-level reproducibility across platforms
rather than speed.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-9
PSD_TOL = 1e-9
RECON_TOL = 1e-9
EQ_TOL = 1e-9

_JACOBI_OFF_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 100


class DimensionMismatchError(ValueError):
    """Raised when operand dimensions are incompatible."""


class NotHermitianError(ValueError):
    """Raised when an operation requires a Hermitian input."""


class NotPsdError(ValueError):
    """Raised when an eigenvalue falls below the PSD clamping window."""


class HermitianEigenSystem(NamedTuple):
    """Eigenvalues sorted non-increasing; eigenvector columns in matching order."""

    values: np.ndarray
    vectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-abs entry of m - m^dagger."""
    return float(np.max(np.abs(m - m.conj().T)))


def require_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    m = as_matrix(m)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"hermiticity defect {defect:.3e} exceeds {tol:.1e}")
    return m


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with index (i1*b.dim + i2) flattening."""
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_many(*mats: np.ndarray) -> np.ndarray:
    out = as_matrix(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_matrix(m))
    return out


def partial_trace(m: np.ndarray, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    """Trace out one factor of a bipartite matrix; keep is 'A' or 'B'."""
    m = as_matrix(m)
    if m.shape[0] != dim_a * dim_b:
        raise DimensionMismatchError(
            f"matrix dim {m.shape[0]} != {dim_a}*{dim_b}"
        )
    t = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ikjk->ij", t)
    if keep == "B":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def reduce_state(m: np.ndarray, dims: list[int], keep: list[int]) -> np.ndarray:
    """Partial trace over all factors not listed in keep (multipartite form)."""
    m = as_matrix(m)
    n = len(dims)
    total = 1
    for d in dims:
        total *= d
    if m.shape[0] != total:
        raise DimensionMismatchError(f"matrix dim {m.shape[0]} != prod{dims}")
    keep = sorted(keep)
    t = m.reshape(*dims, *dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out_idx = [i for i in keep] + [i + n for i in keep]
    t = np.einsum(t, row + col, out_idx)
    kept = 1
    for i in keep:
        kept *= dims[i]
    return t.reshape(kept, kept)


def _jacobi_rotate(a: np.ndarray, v: np.ndarray | None, p: int, q: int) -> None:
    z = a[p, q]
    m = abs(z)
    if m == 0.0:
        return
    w = z / m
    theta = (a[q, q].real - a[p, p].real) / (2.0 * m)
    if theta >= 0.0:
        t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
    else:
        t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    r = np.array([[w * c, w * s], [-s, c]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ r
    a[idx, :] = r.conj().T @ a[idx, :]
    # kill rounding drift that the rotation is supposed to annihilate
    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    if v is not None:
        v[:, idx] = v[:, idx] @ r


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def _jacobi(m: np.ndarray, want_vectors: bool) -> tuple[np.ndarray, np.ndarray | None]:
    a = m.copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex) if want_vectors else None
    scale = max(1.0, float(np.sqrt(np.sum(np.abs(a) ** 2))))
    for _ in range(_JACOBI_MAX_SWEEPS):
        if _off_norm(a) <= _JACOBI_OFF_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > _JACOBI_OFF_TOL * scale / (n * n):
                    _jacobi_rotate(a, v, p, q)
    return np.real(np.diag(a)), v


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component of each column real and positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        pivot = col[k]
        if abs(pivot) > 0:
            out[:, j] = col * (pivot.conjugate() / abs(pivot))
    return out


def hermitian_eig(m: np.ndarray) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi sweeps.

    Deterministic for a fixed input: fixed sweep order, eigenvalues sorted
    non-increasing (stable), each eigenvector phased so its largest-magnitude
    component is real positive.
    """
    m = require_hermitian(m)
    values, vectors = _jacobi(m, want_vectors=True)
    order = np.argsort(-values, kind="stable")
    return HermitianEigenSystem(values[order], _fix_phases(vectors[:, order]))


def hermitian_eigvals(m: np.ndarray) -> np.ndarray:
    """Eigenvalues only, sorted non-increasing."""
    m = require_hermitian(m)
    values, _ = _jacobi(m, want_vectors=False)
    return np.sort(values)[::-1]


def clamp_psd_eigvals(values: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Clamp eigenvalues in [-tol, 0) to zero; reject anything below -tol."""
    low = float(np.min(values))
    if low < -tol:
        raise NotPsdError(f"eigenvalue {low:.3e} below -{tol:.1e}")
    return np.maximum(values, 0.0)


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix."""
    values, vectors = hermitian_eig(m)
    values = clamp_psd_eigvals(values)
    return (vectors * np.sqrt(values)) @ vectors.conj().T


def majorizes(y: np.ndarray, x: np.ndarray, slack: float = 1e-12) -> bool:
    """True iff sorted prefix sums of y dominate those of x (equal totals)."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != x.shape or y.ndim != 1:
        raise DimensionMismatchError("majorizes requires equal-length vectors")
    if abs(float(np.sum(y) - np.sum(x))) > 1e-9:
        raise ValueError("majorizes requires equal sums within 1e-9")
    ys = np.cumsum(np.sort(y)[::-1])
    xs = np.cumsum(np.sort(x)[::-1])
    return bool(np.all(xs <= ys + slack))


def is_unitary(u: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    u = as_matrix(u)
    eye = np.eye(u.shape[0])
    return float(np.max(np.abs(u.conj().T @ u - eye))) <= tol
