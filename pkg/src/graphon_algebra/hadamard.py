"""Hadamard matrices, Hadamard graphons U_B = (W_B + 1)/2, and P(B, F)."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import SizeLimitError
from .graphs import Multigraph, skeleton
from .kernels import StepKernel, step_kernel
from .quantum import QuantumGraph, unlabel

__all__ = [
    "sylvester",
    "is_hadamard",
    "symmetric_hadamards",
    "hadamard_graphon",
    "map_probability",
    "hadamard_closed_form",
    "MAX_SYLVESTER_POWER",
]

MAX_SYLVESTER_POWER = 10
MAX_MAPS = 5_000_000

Matrix = Sequence[Sequence[int]]


def sylvester(k: int) -> np.ndarray:
    """Symmetric Hadamard matrix of order 2**k by repeated doubling."""
    if not 0 <= k <= MAX_SYLVESTER_POWER:
        raise ValueError(f"k must lie in [0, {MAX_SYLVESTER_POWER}], got {k}")
    H = np.array([[1]], dtype=np.int64)
    for _ in range(k):
        H = np.block([[H, H], [H, -H]])
    return H


def is_hadamard(B: Matrix) -> bool:
    A = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    if not np.all(np.isin(A, (-1, 1))):
        return False
    A = A.astype(np.int64)
    return bool(np.array_equal(A @ A.T, A.shape[0] * np.eye(A.shape[0], dtype=np.int64)))


def symmetric_hadamards(n: int) -> list[np.ndarray]:
    """Every symmetric Hadamard matrix of order n, by exhaustive search (n <= 4)."""
    if n > 4:
        raise SizeLimitError("exhaustive search is limited to order 4")
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for signs in itertools.product((1, -1), repeat=len(cells)):
        A = np.zeros((n, n), dtype=np.int64)
        for (i, j), s in zip(cells, signs):
            A[i, j] = A[j, i] = s
        if is_hadamard(A):
            out.append(A)
    return out


def _check_symmetric_hadamard(B: Matrix) -> np.ndarray:
    A = np.asarray(B)
    if not is_hadamard(A):
        raise ValueError("not a Hadamard matrix")
    if not np.array_equal(A, A.T):
        raise ValueError("Hadamard graphons need a symmetric matrix")
    return A


def hadamard_graphon(B: Matrix) -> StepKernel:
    """Uniform-step graphon with block values (b_ij + 1)/2 in {0, 1}."""
    A = _check_symmetric_hadamard(B)
    return step_kernel([[Fraction(int(x) + 1, 2) for x in row] for row in A])


def map_probability(B: Matrix, F: Multigraph) -> Fraction:
    """Fraction of maps [v] -> [n] sending every adjacent pair onto a +1 entry.

    Adjacency is taken from the skeleton of F; labels are ignored.
    """
    A = np.asarray(B)
    n = A.shape[0]
    v = F.vertex_count
    if n**v > MAX_MAPS:
        raise SizeLimitError(f"instance too large: {n}^{v} maps")
    pairs = [(i, j) for i, j, _ in skeleton(F).edges]
    plus = A == 1
    good = 0
    for phi in itertools.product(range(n), repeat=v):
        if all(plus[phi[i], phi[j]] for i, j in pairs):
            good += 1
    return Fraction(good, n**v)


def hadamard_closed_form(g: Union[QuantumGraph, Multigraph], B: Matrix) -> Fraction:
    """(1/2) * sum_i alpha_i * P(B, F_i) * 2**|E(F_i)|, evaluated literally.

    Kept as an audit value.  It disagrees with the density of U_B in
    general; compare with ``t_step(F, hadamard_graphon(B))``.
    |E| counts edges with multiplicity.
    """
    if isinstance(g, Multigraph):
        g = QuantumGraph.of(g)
    return Fraction(1, 2) * sum(
        (c * map_probability(B, F) * 2**F.edge_total for c, F in unlabel(g).terms()),
        Fraction(0),
    )
