"""scikit-learn style wrappers around the density and variety machinery.

Samples are kernels: a sequence of :class:`StepKernel`,
:class:`SpectralKernel`, kernel JSON dicts, or square matrices (taken as
uniform-step kernels).  Features are quantum graphs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .density import density
from .graphs import Multigraph
from .kernels import SpectralKernel, StepKernel, kernel_from_json, step_kernel
from .parser import format_expr, parse_expr
from .quantum import QuantumGraph, unlabel

__all__ = ["check_kernel", "check_kernels", "check_quantum_graph", "HomDensityTransformer", "VarietyClassifier"]


def check_kernel(W) -> StepKernel | SpectralKernel:
    """Coerce one sample to a kernel.  Float entries are converted exactly."""
    if isinstance(W, (StepKernel, SpectralKernel)):
        return W
    if isinstance(W, (dict, str)):
        return kernel_from_json(W)
    A = np.asarray(W, dtype=object)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix or a kernel, got shape {A.shape}")
    return step_kernel([[Fraction(x) for x in row] for row in A.tolist()])


def check_kernels(X) -> list[StepKernel | SpectralKernel]:
    if isinstance(X, (StepKernel, SpectralKernel, dict, str)):
        raise ValueError("expected a sequence of kernels, got a single kernel")
    kernels = [check_kernel(W) for W in X]
    if not kernels:
        raise ValueError("need at least one kernel")
    return kernels


def check_quantum_graph(g) -> QuantumGraph:
    if isinstance(g, str):
        g = parse_expr(g)
    elif isinstance(g, Multigraph):
        g = QuantumGraph.of(g)
    elif not isinstance(g, QuantumGraph):
        raise TypeError(f"cannot interpret {g!r} as a quantum graph")
    return unlabel(g)


class HomDensityTransformer(TransformerMixin, BaseEstimator):
    """Map each kernel to its homomorphism densities t(g, W) for fixed graphs g.

    Parameters
    ----------
    graphs : iterable of str, Multigraph or QuantumGraph
        Expressions such as ``"K2"`` or ``"1/2*K2^3 - C4"``.
    route : {"auto", "step", "spectral", "mc"}
    exact : bool
        Return an object array of ``Fraction`` (exact routes only) instead
        of floats.
    n_samples, random_state : Monte Carlo settings.
    """

    def __init__(self, graphs: Iterable = ("K2",), route: str = "auto", exact: bool = False,
                 n_samples: int = 100_000, random_state: int = 0):
        self.graphs = graphs
        self.route = route
        self.exact = exact
        self.n_samples = n_samples
        self.random_state = random_state

    def fit(self, X=None, y=None):
        if self.route not in ("auto", "step", "spectral", "mc"):
            raise ValueError(f"unknown route {self.route!r}")
        if self.exact and self.route == "mc":
            raise ValueError("exact output is not available on the Monte Carlo route")
        self.graphs_ = [check_quantum_graph(g) for g in self.graphs]
        if not self.graphs_:
            raise ValueError("need at least one graph")
        if X is not None:
            check_kernels(X)
        return self

    def transform(self, X):
        check_is_fitted(self, "graphs_")
        kernels = check_kernels(X)
        out = np.empty((len(kernels), len(self.graphs_)), dtype=object if self.exact else float)
        for a, W in enumerate(kernels):
            for b, g in enumerate(self.graphs_):
                r = density(g, W, self.route, self.n_samples, self.random_state)
                out[a, b] = r.value if self.exact else float(r.value)
        return out

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "graphs_")
        return np.array([f"t({format_expr(g)})" for g in self.graphs_], dtype=object)


class VarietyClassifier(BaseEstimator):
    """Predict membership of kernels in the variety V(constraint)."""

    def __init__(self, constraint="K0 - K0"):
        self.constraint = constraint

    def fit(self, X=None, y=None):
        self.constraint_ = check_quantum_graph(self.constraint)
        if X is not None:
            check_kernels(X)
        return self

    def decision_function(self, X) -> np.ndarray:
        """Exact densities t(g, W) as an object array of ``Fraction``."""
        check_is_fitted(self, "constraint_")
        kernels = check_kernels(X)
        return np.array([density(self.constraint_, W).value for W in kernels], dtype=object)

    def predict(self, X) -> np.ndarray:
        return np.array([v == 0 for v in self.decision_function(X)], dtype=bool)
