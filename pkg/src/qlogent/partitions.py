"""Logical entropy of set partitions and finite probability distributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sampling import rng_for

PROB_SUM_TOL = 1e-9


@dataclass(frozen=True)
class SetPartition:
    """Partition of {0..n-1} stored as an element -> block map.

    Block labels are normalized by first occurrence, so two partitions with
    the same blocks compare equal regardless of input labeling.
    """

    universe_size: int
    block_of: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels) -> "SetPartition":
        labels = list(labels)
        if not labels:
            raise ValueError("partition of an empty set is not supported")
        relabel: dict = {}
        canon = []
        for lab in labels:
            if lab not in relabel:
                relabel[lab] = len(relabel)
            canon.append(relabel[lab])
        return cls(len(canon), tuple(canon))

    @classmethod
    def from_blocks(cls, blocks: list[list[int]]) -> "SetPartition":
        n = sum(len(b) for b in blocks)
        labels = [-1] * n
        for i, block in enumerate(blocks):
            if not block:
                raise ValueError("empty block")
            for u in block:
                if not 0 <= u < n or labels[u] != -1:
                    raise ValueError(f"element {u} missing or assigned twice")
                labels[u] = i
        return cls.from_labels(labels)

    @property
    def num_blocks(self) -> int:
        return max(self.block_of) + 1

    def block_sizes(self) -> np.ndarray:
        return np.bincount(self.block_of, minlength=self.num_blocks)

    def refines(self, other: "SetPartition") -> bool:
        """True if every block of self is contained in a block of other."""
        if self.universe_size != other.universe_size:
            raise ValueError("partitions over different universes")
        seen: dict[int, int] = {}
        for u in range(self.universe_size):
            b = self.block_of[u]
            if b in seen:
                if other.block_of[u] != seen[b]:
                    return False
            else:
                seen[b] = other.block_of[u]
        return True


def as_probability_vector(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("probability vector must be 1-dimensional and non-empty")
    if np.min(p) < -PROB_SUM_TOL or np.max(p) > 1 + PROB_SUM_TOL:
        raise ValueError("probabilities must lie in [0, 1]")
    if abs(float(np.sum(p)) - 1.0) > PROB_SUM_TOL:
        raise ValueError(f"probabilities sum to {float(np.sum(p))}, not 1")
    return np.clip(p, 0.0, 1.0)


def dit_count(p: SetPartition) -> int:
    """Number of ordered pairs (u, u') lying in distinct blocks."""
    n = p.universe_size
    return int(n * n - np.sum(p.block_sizes() ** 2))


def partition_logical_entropy(p: SetPartition) -> float:
    """Probability that two uniform draws land in distinct blocks."""
    n = p.universe_size
    return dit_count(p) / (n * n)


def distribution_logical_entropy(p) -> float:
    """1 - sum p_i^2: probability of drawing two different elements."""
    p = as_probability_vector(p)
    return float(1.0 - np.sum(p * p))


def block_mass_entropy(p: SetPartition, probs) -> float:
    """Logical entropy of a partition whose elements carry probabilities."""
    probs = as_probability_vector(probs)
    if probs.size != p.universe_size:
        raise ValueError("probability vector size must match the universe")
    masses = np.zeros(p.num_blocks)
    np.add.at(masses, np.asarray(p.block_of), probs)
    return distribution_logical_entropy(masses)


def two_draw_distinction_mc(p, trials: int, seed: int) -> float:
    """Monte Carlo fraction of i.i.d. draw pairs with distinct outcomes."""
    p = as_probability_vector(p)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = rng_for(seed, 0x7061)
    draws = rng.choice(p.size, size=(2, trials), p=p / np.sum(p))
    return float(np.mean(draws[0] != draws[1]))
