"""Homomorphism densities t(F, W) and t(g, W).

Three routes: exact summation over step assignments, exact summation over
edge colorings of a finite spectral decomposition, and a Monte Carlo
estimate used as an independent oracle.  Labels on F are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import SizeLimitError
from .graphs import Multigraph
from .hom import WeightedTarget, hom_count_brute, hom_count_dp
from .kernels import SpectralKernel, StepKernel, spectral_to_step, step_to_spectral
from .quantum import QuantumGraph, unlabel

__all__ = [
    "DensityResult",
    "t_step",
    "t_step_brute",
    "t_spectral",
    "vertex_moment",
    "t_quantum",
    "t_monte_carlo",
    "density",
    "MAX_COLORINGS",
]

# Largest r**|E| enumerated by the spectral route.
MAX_COLORINGS = 2_000_000
_MC_CHUNK = 1 << 14

Kernel = Union[StepKernel, SpectralKernel]


@dataclass(frozen=True)
class DensityResult:
    """A density value.  Exact routes carry no error bars; Monte Carlo always does."""

    value: Fraction | float
    route: str
    stderr: float | None = None
    samples: int | None = None

    @property
    def exact(self) -> bool:
        return self.route != "mc"


def _target(W: StepKernel) -> WeightedTarget:
    return WeightedTarget(W.steps, W.values)


def t_step(F: Multigraph, W: StepKernel) -> Fraction:
    """Exact density in a step kernel via vertex elimination."""
    return hom_count_dp(F, _target(W))


def t_step_brute(F: Multigraph, W: StepKernel) -> Fraction:
    """Same value by enumerating all n**|V| step assignments."""
    return hom_count_brute(F, _target(W))


def vertex_moment(v: int, chi, S: SpectralKernel, F: Multigraph) -> Fraction:
    """Integral over x of the product of f_chi(e)(x) over edges e at ``v``.

    ``chi`` assigns a color in ``range(S.rank)`` to each position of
    ``F.edge_list``.
    """
    colors = [chi[k] for k, (i, j) in enumerate(F.edge_list) if v in (i, j)]
    return _moment(colors, S)


def _moment(colors, S: SpectralKernel) -> Fraction:
    if not colors:
        return Fraction(1)
    fs = S.eigenfunctions
    total = Fraction(0)
    for a, m in enumerate(S.steps):
        w = m
        for c in colors:
            w *= fs[c][a]
            if not w:
                break
        total += w
    return total


def _edge_order(F: Multigraph) -> list[int]:
    """Edge positions ordered so that vertices are completed early."""
    edges = F.edge_list
    left = list(range(len(edges)))
    order: list[int] = []
    done: set[int] = set()
    while left:
        # prefer edges touching vertices already reached
        k = max(left, key=lambda e: ((edges[e][0] in done) + (edges[e][1] in done), -e))
        order.append(k)
        left.remove(k)
        done.update(edges[k])
    return order


def t_spectral(F: Multigraph, S: SpectralKernel) -> Fraction:
    """Exact density as a sum over edge colorings by eigen-indices.

    t(F, W) = sum_chi prod_e lambda_chi(e) prod_v M_chi(v).  Colorings are
    searched depth first; a vertex moment is multiplied in as soon as all
    edges at the vertex are colored, and zero partial products are pruned.
    """
    edges = F.edge_list
    r = S.rank
    if not edges:
        return Fraction(1)
    if r == 0:
        return Fraction(0)
    if r ** len(edges) > MAX_COLORINGS:
        raise SizeLimitError(f"instance too large: {r}^{len(edges)} colorings")
    order = _edge_order(F)
    incident = [[k for k, e in enumerate(order) if v in edges[e]] for v in range(F.vertex_count)]
    completes: list[list[int]] = [[] for _ in order]
    for v, inc in enumerate(incident):
        if inc:
            completes[inc[-1]].append(v)
    lam = S.eigenvalues
    colors = [c for c in range(r) if lam[c]]
    chi = [0] * len(order)
    memo: dict = {}

    def moment(v: int) -> Fraction:
        cs = tuple(sorted(chi[k] for k in incident[v]))
        m = memo.get(cs)
        if m is None:
            m = memo[cs] = _moment(cs, S)
        return m

    def walk(k: int, w: Fraction) -> Fraction:
        if k == len(order):
            return w
        total = Fraction(0)
        for c in colors:
            chi[k] = c
            w2 = w * lam[c]
            for v in completes[k]:
                w2 *= moment(v)
                if not w2:
                    break
            if w2:
                total += walk(k + 1, w2)
        return total

    return walk(0, Fraction(1))


def t_quantum(g: Union[QuantumGraph, Multigraph], W: Kernel) -> Fraction:
    """Linear extension of the density to quantum graphs (labels erased first)."""
    if isinstance(g, Multigraph):
        g = QuantumGraph.of(g)
    f = t_step if isinstance(W, StepKernel) else t_spectral
    return sum((c * f(F, W) for c, F in unlabel(g).terms()), Fraction(0))


def t_monte_carlo(F: Multigraph, W: StepKernel, samples: int = 100_000, seed=0) -> DensityResult:
    """Sample mean of prod_e W(x_i, x_j) over uniform vertex coordinates.

    Chunk k draws from the stream ``SeedSequence(seed, spawn_key=(k,))`` so
    the estimate is bit-identical for a fixed seed whatever the chunking
    of work across tasks.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    P = np.array([[float(x) for x in row] for row in W.values])
    bounds = np.array([float(b) for b in W.boundaries()[1:-1]])
    n = F.vertex_count
    s1 = 0.0
    s2 = 0.0
    done = 0
    chunk = 0
    while done < samples:
        size = min(_MC_CHUNK, samples - done)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(chunk,)))
        x = rng.random((size, n))
        cells = np.searchsorted(bounds, x, side="right")
        prod = np.ones(size)
        for i, j, m in F.edges:
            prod *= P[cells[:, i], cells[:, j]] ** m
        s1 += float(prod.sum())
        s2 += float((prod * prod).sum())
        done += size
        chunk += 1
    mean = s1 / samples
    if samples > 1:
        var = max(s2 - samples * mean * mean, 0.0) / (samples - 1)
        se = (var / samples) ** 0.5
    else:
        se = float("inf")
    return DensityResult(mean, "mc", se, samples)


def density(g: Union[QuantumGraph, Multigraph], W: Kernel, route: str = "auto", samples: int = 100_000, seed: int = 0) -> DensityResult:
    """Dispatch to a route: ``step``, ``spectral``, ``mc`` or ``auto``."""
    if route == "auto":
        route = "step" if isinstance(W, StepKernel) else "spectral"
    if route == "mc":
        if not isinstance(W, StepKernel):
            W = spectral_to_step(W)
        if isinstance(g, QuantumGraph):
            g = unlabel(g)
            # independent streams per term, so variances add
            parts = [(c, t_monte_carlo(F, W, samples, [seed, k])) for k, (c, F) in enumerate(g.terms())]
            value = sum(float(c) * r.value for c, r in parts)
            se = sum((float(c) * r.stderr) ** 2 for c, r in parts) ** 0.5
            return DensityResult(value, "mc", se, samples)
        return t_monte_carlo(g, W, samples, seed)
    if route == "step":
        if isinstance(W, SpectralKernel):
            W = spectral_to_step(W)
        return DensityResult(t_quantum(g, W), "step")
    if route == "spectral":
        if not isinstance(W, SpectralKernel):
            W = step_to_spectral(W)
        return DensityResult(t_quantum(g, W), "spectral")
    raise ValueError(f"unknown route {route!r}")
