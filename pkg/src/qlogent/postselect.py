"""Pre/post-selected states, weak values, and their logical entropies."""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .linalg import EQ_TOL, DimensionMismatchError
from .states import Pvm, ValidationError

OVERLAP_EPS = 1e-12


class OrthogonalSelectionError(ValueError):
    """Pre- and post-selection vectors are (numerically) orthogonal."""


class PrePostPair:
    """A pre-selected vector |psi> and a post-selected vector |phi> with <phi|psi> != 0."""

    __slots__ = ("pre", "post", "overlap")

    def __init__(self, pre, post):
        pre = _unit_vector(pre, "pre")
        post = _unit_vector(post, "post")
        if pre.size != post.size:
            raise DimensionMismatchError("pre and post vectors of different dimension")
        overlap = complex(np.vdot(post, pre))
        if abs(overlap) <= OVERLAP_EPS:
            raise OrthogonalSelectionError(
                f"|<phi|psi>| = {abs(overlap):.3e} is below {OVERLAP_EPS:.0e}"
            )
        self.pre = pre
        self.post = post
        self.overlap = overlap

    @property
    def dim(self) -> int:
        return self.pre.size


def _unit_vector(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if abs(n - 1.0) > 1e-9:
        if n == 0:
            raise ValidationError(f"{name} vector is zero")
        raise ValidationError(f"{name} vector norm {n} differs from 1 beyond 1e-9")
    return v / n


class GeneralizedDensity:
    """The rank-1, trace-1, generally non-Hermitian matrix |psi><phi| / <phi|psi>."""

    __slots__ = ("mat",)

    def __init__(self, mat):
        mat = la.as_matrix(mat)
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > 1e-9:
            raise ValidationError(f"generalized density has trace {tr}, expected 1")
        self.mat = mat

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def pre_post_state(pair: PrePostPair) -> GeneralizedDensity:
    return GeneralizedDensity(np.outer(pair.pre, pair.post.conj()) / pair.overlap)


def weak_values(rho: GeneralizedDensity, pvm: Pvm) -> np.ndarray:
    """Quasi-probabilities w_i = tr(B_i rho); they sum to 1."""
    if pvm.dim != rho.dim:
        raise DimensionMismatchError(f"PVM dim {pvm.dim} vs state dim {rho.dim}")
    return np.array([complex(np.trace(b @ rho.mat)) for b in pvm.blocks])


def abl_probabilities(rho: GeneralizedDensity, pvm: Pvm) -> dict:
    """|w_i|^2 outcome weights, raw and normalized.

    The raw vector is the textbook-free form |tr(B_i rho)|^2; the normalized
    vector divides by its sum so consumers get an actual distribution.
    """
    w = weak_values(rho, pvm)
    raw = np.abs(w) ** 2
    total = float(np.sum(raw))
    if total < 1e-15:
        raise ValidationError("all ABL weights vanish; inputs are corrupted")
    return {"raw": raw, "normalized": raw / total}


def postselected_logical_entropy(rho: GeneralizedDensity, pvm: Pvm) -> float:
    """sum_i |w_i|^2 |1 - w_i|^2; non-negative by construction."""
    w = weak_values(rho, pvm)
    return float(np.sum((np.abs(w) ** 2) * (np.abs(1.0 - w) ** 2)))


def weak_logical_entropy(rho: GeneralizedDensity, pvm: Pvm) -> complex:
    """sum_i w_i (1 - w_i); may be complex-valued."""
    w = weak_values(rho, pvm)
    return complex(np.sum(w * (1.0 - w)))


def relation_diagnostic(rho: GeneralizedDensity, pvm: Pvm) -> dict:
    """Compare the post-selected entropy against |weak entropy|^2.

    The two coincide only in special cases (e.g. a single effective outcome);
    this diagnostic reports both sides and never asserts equality.
    """
    left = postselected_logical_entropy(rho, pvm)
    weak = weak_logical_entropy(rho, pvm)
    right = abs(weak) ** 2
    diff = abs(left - right)
    return {
        "postselected_entropy": left,
        "weak_entropy": weak,
        "abs_weak_entropy_squared": right,
        "abs_difference": diff,
        "agrees": bool(diff <= EQ_TOL),
    }
