"""Unital channels, POVM implementations, purification, and structure tools."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .linalg import (
    HERMITICITY_TOL,
    DimensionMismatchError,
    hermitian_eig,
    hermitian_eigvals,
    partial_trace,
    psd_sqrt,
    require_hermitian,
    tensor_product,
)
from .states import DensityMatrix, Pvm, ValidationError, logical_entropy


class UnitalChannel:
    """Kraus map that is both trace-preserving and unital."""

    __slots__ = ("kraus_ops",)

    def __init__(self, kraus_ops, *, validate: bool = True):
        kraus_ops = [la.as_matrix(k) for k in kraus_ops]
        if not kraus_ops:
            raise ValidationError("channel needs at least one Kraus operator")
        dim = kraus_ops[0].shape[0]
        if validate:
            eye = np.eye(dim)
            tp = sum(k.conj().T @ k for k in kraus_ops)
            un = sum(k @ k.conj().T for k in kraus_ops)
            if np.max(np.abs(tp - eye)) > HERMITICITY_TOL:
                raise ValidationError("Kraus operators are not trace-preserving")
            if np.max(np.abs(un - eye)) > HERMITICITY_TOL:
                raise ValidationError("Kraus operators are not unital")
        self.kraus_ops = tuple(kraus_ops)

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]


class Povm:
    """Positive effects summing to identity."""

    __slots__ = ("effects",)

    def __init__(self, effects, *, validate: bool = True):
        effects = [la.as_matrix(e) for e in effects]
        if not effects:
            raise ValidationError("POVM needs at least one effect")
        dim = effects[0].shape[0]
        if validate:
            total = np.zeros((dim, dim), dtype=complex)
            for e in effects:
                require_hermitian(e)
                la.clamp_psd_eigvals(hermitian_eigvals(e))
                total += e
            if np.max(np.abs(total - np.eye(dim))) > HERMITICITY_TOL:
                raise ValidationError("effects do not sum to identity")
        self.effects = tuple(effects)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]


class InteractionBlocks:
    """Blocks B_ij of a joint state in the canonical basis of the second factor."""

    __slots__ = ("blocks", "dim_s", "dim_r")

    def __init__(self, blocks: np.ndarray, dim_s: int, dim_r: int):
        self.blocks = blocks  # shape (dim_r, dim_r, dim_s, dim_s)
        self.dim_s = dim_s
        self.dim_r = dim_r

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[i, j]

    def reduced_first_factor(self) -> np.ndarray:
        """sum_i B_ii, the reduced state of the first factor."""
        return np.einsum("iikl->kl", self.blocks)


def apply_channel(ch: UnitalChannel, rho: DensityMatrix) -> DensityMatrix:
    if ch.dim != rho.dim:
        raise DimensionMismatchError(f"channel dim {ch.dim} vs state dim {rho.dim}")
    out = np.zeros_like(rho.mat)
    for k in ch.kraus_ops:
        out += k @ rho.mat @ k.conj().T
    return DensityMatrix.trusted((out + out.conj().T) / 2, rho.dims)


def povm_unital_implementation(povm: Povm) -> UnitalChannel:
    """Channel with Kraus operators sqrt(E_i) (the identity-unitary implementation).

    The unitality check inside UnitalChannel is unreachable for a valid POVM
    (sum sqrt(E_i) sqrt(E_i)^dag = sum E_i = I); a failure signals numerical
    corruption and is raised as-is.
    """
    return UnitalChannel([psd_sqrt(e) for e in povm.effects])


def pvm_dephasing_channel(pvm: Pvm) -> UnitalChannel:
    return UnitalChannel(list(pvm.blocks), validate=False)


def purify(rho: DensityMatrix) -> np.ndarray:
    """Unit vector on dim^2 whose first-factor reduced state is rho.

    Built as sum_i sqrt(lambda_i) |lambda_i> |i> with the ancilla in the
    computational basis and terms ordered by non-increasing eigenvalue.
    """
    values, vectors = hermitian_eig(rho.mat)
    values = la.clamp_psd_eigvals(values)
    d = rho.dim
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        psi += np.sqrt(values[i]) * np.kron(vectors[:, i], _basis_vec(d, i))
    return psi / np.linalg.norm(psi)


def _basis_vec(dim: int, k: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[k] = 1.0
    return v


def schmidt_decompose(psi: np.ndarray, dim_a: int, dim_b: int):
    """Schmidt form psi = sum_k s_k |a_k>|b_k>, s_k >= 0 non-increasing.

    Returns (coefficients, basis_a, basis_b) with basis columns holding the
    Schmidt vectors of each factor.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != dim_a * dim_b:
        raise DimensionMismatchError(f"vector size {psi.size} != {dim_a}*{dim_b}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-9:
        raise ValidationError("Schmidt decomposition requires a unit vector")
    c = psi.reshape(dim_a, dim_b)
    rho_a = c @ c.conj().T
    values, vec_a = hermitian_eig((rho_a + rho_a.conj().T) / 2)
    values = la.clamp_psd_eigvals(values)
    coeffs = np.sqrt(values)
    rank = min(dim_a, dim_b)
    basis_a = vec_a[:, :rank]
    basis_b = np.zeros((dim_b, rank), dtype=complex)
    for k in range(rank):
        if coeffs[k] > 1e-12:
            basis_b[:, k] = (c.T @ basis_a[:, k].conj()) / coeffs[k]
        else:
            basis_b[:, k] = _fill_orthonormal(basis_b[:, :k])
    return coeffs[:rank], basis_a, basis_b


def _fill_orthonormal(existing: np.ndarray) -> np.ndarray:
    """Deterministic unit vector orthogonal to the given columns."""
    dim = existing.shape[0]
    for k in range(dim):
        v = _basis_vec(dim, k)
        if existing.shape[1]:
            v = v - existing @ (existing.conj().T @ v)
        n = np.linalg.norm(v)
        if n > 1e-6:
            return v / n
    raise ValidationError("could not extend to an orthonormal set")


def interaction_blocks(rho_sr: DensityMatrix, u: np.ndarray) -> InteractionBlocks:
    """Blocks <i| U rho_SR U^dag |j> in the canonical basis of the second factor."""
    dim_s, dim_r = rho_sr.bipartite_dims()
    u = la.as_matrix(u)
    if u.shape[0] != rho_sr.dim:
        raise DimensionMismatchError("unitary dim mismatch with joint state")
    if not la.is_unitary(u):
        raise ValidationError("interaction matrix is not unitary")
    rotated = u @ rho_sr.mat @ u.conj().T
    # axes: (s, r, s', r') -> (r, r', s, s')
    t = rotated.reshape(dim_s, dim_r, dim_s, dim_r).transpose(1, 3, 0, 2)
    return InteractionBlocks(t.copy(), dim_s, dim_r)


def prop6_bounds(
    blocks: InteractionBlocks, joint_pure: bool
) -> tuple[float, float | None]:
    """Interaction-block bracket for the entropy of the reduced first factor.

    lower: 2 sum_{j<i} { tr(B_ij B_ij^dag) - Re tr(B_ii B_jj) }, always valid.
    upper: 2 sum_{j<i} tr(B_ij B_ij^dag), valid when the joint state is pure.
    """
    b = blocks.blocks
    n = blocks.dim_r
    lower = 0.0
    cross = 0.0
    for i in range(n):
        for j in range(i):
            bij = b[i, j]
            cross_ij = float(np.real(np.trace(bij @ bij.conj().T)))
            cross += cross_ij
            lower += cross_ij - float(np.real(np.trace(b[i, i] @ b[j, j])))
    lower *= 2.0
    upper = 2.0 * cross if joint_pure else None
    return lower, upper


def weyl_operators(dim: int) -> list[np.ndarray]:
    """The dim^2 shift-clock products X^a Z^c."""
    shift = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        shift[(k + 1) % dim, k] = 1.0
    omega = np.exp(2j * np.pi / dim)
    clock = np.diag(omega ** np.arange(dim))
    ops = []
    xa = np.eye(dim, dtype=complex)
    for _ in range(dim):
        zc = np.eye(dim, dtype=complex)
        for _ in range(dim):
            ops.append(xa @ zc)
            zc = zc @ clock
        xa = xa @ shift
    return ops


def twirl_subsystem(rho_ab: DensityMatrix) -> DensityMatrix:
    """Average of (I otimes W) rho (I otimes W)^dag over the Weyl group on B.

    The result is rho_A otimes I/b.
    """
    da, db = rho_ab.bipartite_dims()
    eye_a = np.eye(da, dtype=complex)
    acc = np.zeros_like(rho_ab.mat)
    for w in weyl_operators(db):
        lifted = tensor_product(eye_a, w)
        acc += lifted @ rho_ab.mat @ lifted.conj().T
    acc /= db * db
    return DensityMatrix.trusted((acc + acc.conj().T) / 2, (da, db))
