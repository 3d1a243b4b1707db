"""Density matrices, PVMs, and the logical entropy quantities built on them."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .linalg import (
    EQ_TOL,
    HERMITICITY_TOL,
    PSD_TOL,
    DimensionMismatchError,
    hermitian_eig,
    hermitian_eigvals,
    partial_trace,
    psd_sqrt,
    require_hermitian,
    tensor_product,
)

TRACE_TOL = 1e-9
OUTCOME_EPS = 1e-12


class ValidationError(ValueError):
    """Raised when a state or PVM fails its structural invariants."""


class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix, optionally tagged with factor dims.

    Validation clamps eigenvalues in [-1e-9, 0) and renormalizes trace drift
    up to 1e-9; anything worse is rejected, not repaired.
    """

    __slots__ = ("mat", "dims")

    def __init__(self, mat, dims: tuple[int, ...] | None = None, *, validate: bool = True):
        mat = la.as_matrix(mat)
        if dims is not None:
            dims = tuple(int(d) for d in dims)
            prod = int(np.prod(dims))
            if prod != mat.shape[0]:
                raise DimensionMismatchError(
                    f"factor dims {dims} do not multiply to {mat.shape[0]}"
                )
        if validate:
            mat = self._validated(mat)
        self.mat = mat
        self.dims = dims

    @staticmethod
    def _validated(mat: np.ndarray) -> np.ndarray:
        defect = la.hermiticity_defect(mat)
        if defect > HERMITICITY_TOL:
            raise ValidationError(f"not Hermitian: defect {defect:.3e}")
        mat = (mat + mat.conj().T) / 2
        tr = float(np.trace(mat).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace {tr} differs from 1 beyond {TRACE_TOL:.1e}")
        mat = mat / tr
        low = float(np.min(hermitian_eigvals(mat)))
        if low < -PSD_TOL:
            raise ValidationError(f"negative eigenvalue {low:.3e} beyond -{PSD_TOL:.1e}")
        return mat

    @classmethod
    def trusted(cls, mat, dims: tuple[int, ...] | None = None) -> "DensityMatrix":
        """Fast path for matrices PSD/unit-trace by construction (samplers, channels)."""
        return cls(mat, dims, validate=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def with_dims(self, dims: tuple[int, ...]) -> "DensityMatrix":
        return DensityMatrix(self.mat, dims, validate=False)

    def bipartite_dims(self) -> tuple[int, int]:
        if self.dims is None or len(self.dims) != 2:
            raise DimensionMismatchError("bipartite factor dims required")
        return self.dims

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigvals(self.mat)

    def reduced(self, keep: str) -> "DensityMatrix":
        da, db = self.bipartite_dims()
        return DensityMatrix.trusted(partial_trace(self.mat, da, db, keep))

    @classmethod
    def pure(cls, vec, dims: tuple[int, ...] | None = None) -> "DensityMatrix":
        v = np.asarray(vec, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if n == 0:
            raise ValidationError("zero vector")
        v = v / n
        return cls.trusted(np.outer(v, v.conj()), dims)

    @classmethod
    def maximally_mixed(cls, dim: int, dims: tuple[int, ...] | None = None) -> "DensityMatrix":
        return cls.trusted(np.eye(dim, dtype=complex) / dim, dims)


class Pvm:
    """Ordered list of mutually orthogonal projectors summing to identity."""

    __slots__ = ("blocks", "non_degenerate")

    def __init__(self, blocks, *, validate: bool = True):
        blocks = [la.as_matrix(b) for b in blocks]
        if not blocks:
            raise ValidationError("PVM needs at least one block")
        dim = blocks[0].shape[0]
        if validate:
            total = np.zeros((dim, dim), dtype=complex)
            for i, b in enumerate(blocks):
                if b.shape[0] != dim:
                    raise DimensionMismatchError("PVM blocks of mixed dimension")
                require_hermitian(b)
                if np.max(np.abs(b @ b - b)) > HERMITICITY_TOL:
                    raise ValidationError(f"block {i} not idempotent")
                total += b
            if np.max(np.abs(total - np.eye(dim))) > HERMITICITY_TOL:
                raise ValidationError("PVM blocks do not sum to identity")
            for i in range(len(blocks)):
                for j in range(i + 1, len(blocks)):
                    if np.max(np.abs(blocks[i] @ blocks[j])) > HERMITICITY_TOL:
                        raise ValidationError(f"blocks {i},{j} not orthogonal")
        self.blocks = tuple(blocks)
        self.non_degenerate = all(
            abs(float(np.trace(b).real) - 1.0) <= TRACE_TOL for b in blocks
        )

    @property
    def dim(self) -> int:
        return self.blocks[0].shape[0]

    def __len__(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_basis(cls, basis: np.ndarray, groups: list[int] | None = None) -> "Pvm":
        """PVM whose blocks project onto groups of columns of a unitary basis."""
        basis = la.as_matrix(basis)
        dim = basis.shape[0]
        if groups is None:
            groups = [1] * dim
        if sum(groups) != dim or any(g < 1 for g in groups):
            raise ValidationError(f"groups {groups} do not partition dimension {dim}")
        blocks = []
        start = 0
        for g in groups:
            cols = basis[:, start:start + g]
            blocks.append(cols @ cols.conj().T)
            start += g
        return cls(blocks)

    @classmethod
    def computational(cls, dim: int, groups: list[int] | None = None) -> "Pvm":
        return cls.from_basis(np.eye(dim, dtype=complex), groups)

    @classmethod
    def trivial(cls, dim: int) -> "Pvm":
        return cls([np.eye(dim, dtype=complex)], validate=False)

    def lift_to_first_factor(self, dim_b: int) -> "Pvm":
        """Blocks B_k otimes I_B, for measuring subsystem A of a bipartite state."""
        eye_b = np.eye(dim_b, dtype=complex)
        return Pvm([tensor_product(b, eye_b) for b in self.blocks], validate=False)


def _check_same_dim(a: DensityMatrix, b: DensityMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch {a.dim} vs {b.dim}")


def purity(rho: DensityMatrix) -> float:
    """tr rho^2."""
    m = rho.mat
    return float(np.real(np.trace(m @ m)))


def logical_entropy(rho: DensityMatrix) -> float:
    """1 - tr rho^2: probability that two eigenbasis draws are distinct."""
    return 1.0 - purity(rho)


def outcome_probabilities(rho: DensityMatrix, pvm: Pvm) -> np.ndarray:
    if pvm.dim != rho.dim:
        raise DimensionMismatchError(f"PVM dim {pvm.dim} vs state dim {rho.dim}")
    q = np.array([float(np.real(np.trace(b @ rho.mat))) for b in pvm.blocks])
    return np.clip(q, 0.0, 1.0)


def measured_state(rho: DensityMatrix, pvm: Pvm) -> DensityMatrix:
    """Non-selective post-measurement state sum_i B_i rho B_i."""
    if pvm.dim != rho.dim:
        raise DimensionMismatchError(f"PVM dim {pvm.dim} vs state dim {rho.dim}")
    out = np.zeros_like(rho.mat)
    for b in pvm.blocks:
        out += b @ rho.mat @ b
    return DensityMatrix.trusted((out + out.conj().T) / 2, rho.dims)


def pvm_logical_entropy(rho: DensityMatrix, pvm: Pvm) -> float:
    """Probability that two consecutive measurements give distinct outcomes.

    Computed from the outcome distribution q_i = tr(B_i rho); for coarse PVMs
    this is the operational two-draw reading, which differs from the measured
    state's 1 - tr rho'^2 (rho' keeps intra-block coherences).
    """
    q = outcome_probabilities(rho, pvm)
    return float(1.0 - np.sum(q * q))


def min_logical_entropy(rho: DensityMatrix) -> float:
    """Minimum of the PVM-dependent entropy over non-degenerate PVMs.

    The minimizer is the eigenbasis of rho, where the value collapses to
    1 - tr rho^2.
    """
    return logical_entropy(rho)


def eigenbasis_pvm(rho: DensityMatrix) -> Pvm:
    """The non-degenerate PVM that attains min_logical_entropy."""
    _, vectors = hermitian_eig(rho.mat)
    return Pvm.from_basis(vectors)


def basis_decomposition_check(rho: DensityMatrix, pvm: Pvm) -> tuple[float, float]:
    """Split tr rho^2 into (tr rho'^2, off-diagonal mass) in a non-degenerate basis."""
    if not pvm.non_degenerate:
        raise ValidationError("basis decomposition requires a non-degenerate PVM")
    q = outcome_probabilities(rho, pvm)
    diag_part = float(np.sum(q * q))
    return diag_part, purity(rho) - diag_part


def logical_divergence(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Squared Hilbert-Schmidt distance tr(rho - sigma)^2."""
    _check_same_dim(rho, sigma)
    diff = rho.mat - sigma.mat
    return float(np.real(np.trace(diff @ diff)))


def logical_divergence_definitional(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """The defining combination 2 tr rho(I - sigma) - L(rho) - L(sigma)."""
    _check_same_dim(rho, sigma)
    cross = float(np.real(np.trace(rho.mat @ sigma.mat)))
    return 2.0 * (1.0 - cross) - logical_entropy(rho) - logical_entropy(sigma)


def relative_logical_entropy(rho_ab: DensityMatrix) -> float:
    """L(rho_AB) - L(I/d otimes rho_B) for a bipartite state."""
    da, db = rho_ab.bipartite_dims()
    rho_b = rho_ab.reduced("B")
    ref = DensityMatrix.trusted(
        tensor_product(np.eye(da, dtype=complex) / da, rho_b.mat), (da, db)
    )
    return logical_entropy(rho_ab) - logical_entropy(ref)


def relative_entropy_report(rho_ab: DensityMatrix) -> dict:
    """Definitional value next to both candidate divergence factors.

    The -1 factor is what the definitions themselves give; the -1/4 factor is
    also reported so a reader can see which one matches numerically.
    """
    da, db = rho_ab.bipartite_dims()
    rho_b = rho_ab.reduced("B")
    ref = DensityMatrix.trusted(
        tensor_product(np.eye(da, dtype=complex) / da, rho_b.mat), (da, db)
    )
    value = logical_entropy(rho_ab) - logical_entropy(ref)
    div = logical_divergence(rho_ab, ref)
    return {
        "relative_logical_entropy": value,
        "minus_divergence": -div,
        "minus_quarter_divergence": -div / 4.0,
        "matches_minus_divergence": bool(abs(value + div) <= EQ_TOL),
        "matches_minus_quarter_divergence": bool(abs(value + div / 4.0) <= EQ_TOL),
    }


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """(tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, clipped to [0, 1]."""
    _check_same_dim(rho, sigma)
    root_sigma = psd_sqrt(sigma.mat)
    inner = root_sigma @ rho.mat @ root_sigma
    inner = (inner + inner.conj().T) / 2
    values = la.clamp_psd_eigvals(hermitian_eigvals(inner))
    # sqrt amplifies eigensolver noise near zero; drop values at the noise floor
    floor = 1e-13 * max(1.0, float(values[0]) if values.size else 1.0)
    values = np.where(values < floor, 0.0, values)
    f = float(np.sum(np.sqrt(values))) ** 2
    return min(max(f, 0.0), 1.0)


def conditional_states(
    rho_ab: DensityMatrix, pvm_on_a: Pvm
) -> list[tuple[float, DensityMatrix]]:
    """Outcome probabilities and conditional B states for a PVM on factor A.

    Outcomes with probability <= 1e-12 are dropped (their conditional state is
    undefined).
    """
    da, db = rho_ab.bipartite_dims()
    if pvm_on_a.dim != da:
        raise DimensionMismatchError(f"PVM dim {pvm_on_a.dim} vs factor A dim {da}")
    eye_b = np.eye(db, dtype=complex)
    out = []
    for a_k in pvm_on_a.blocks:
        proj = tensor_product(a_k, eye_b)
        sandwiched = proj @ rho_ab.mat @ proj
        m_k = partial_trace(sandwiched, da, db, "B")
        p_k = float(np.real(np.trace(m_k)))
        if p_k > OUTCOME_EPS:
            out.append((p_k, DensityMatrix.trusted((m_k + m_k.conj().T) / 2 / p_k)))
    return out
