"""Step-function kernels and explicit finite-rank (spectral) kernels.

All values are exact rationals.  :func:`numeric_decompose` is the only
floating-point surface; its output carries ``approx_error`` and should not
feed exact zero tests.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "StepKernel",
    "SpectralKernel",
    "KernelClass",
    "step_kernel",
    "classify",
    "spectral_kernel",
    "spectral_to_step",
    "step_to_spectral",
    "numeric_decompose",
    "is_orthonormal",
    "kernel_to_json",
    "kernel_from_json",
    "load_kernel",
    "frac",
]


def frac(x) -> Fraction:
    """Exact rational from int, Fraction or a ``"p/q"`` string."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact kernel values; use 'p/q' strings")
    return Fraction(x)


def _check_steps(steps: Sequence) -> tuple[Fraction, ...]:
    mu = tuple(frac(s) for s in steps)
    if not mu:
        raise ValueError("a kernel needs at least one step")
    if any(s <= 0 for s in mu):
        raise ValueError("step lengths must be positive")
    if sum(mu) != 1:
        raise ValueError(f"step lengths must sum to 1, got {sum(mu)}")
    return mu


@dataclass(frozen=True)
class StepKernel:
    """W(x, y) = values[a][b] for x in step a, y in step b."""

    values: tuple[tuple[Fraction, ...], ...]
    steps: tuple[Fraction, ...]

    def __post_init__(self):
        P = tuple(tuple(frac(x) for x in row) for row in self.values)
        mu = _check_steps(self.steps)
        n = len(mu)
        if len(P) != n or any(len(r) != n for r in P):
            raise ValueError(f"values must be {n}x{n} to match the steps")
        for a in range(n):
            for b in range(a):
                if P[a][b] != P[b][a]:
                    raise ValueError(f"kernel values not symmetric at ({a},{b})")
        object.__setattr__(self, "values", P)
        object.__setattr__(self, "steps", mu)

    @property
    def n(self) -> int:
        return len(self.steps)

    def boundaries(self) -> list[Fraction]:
        out, acc = [Fraction(0)], Fraction(0)
        for s in self.steps:
            acc += s
            out.append(acc)
        return out

    def __call__(self, x: float, y: float) -> Fraction:
        b = self.boundaries()
        return self.values[_cell(b, x)][_cell(b, y)]


def _cell(bounds: list[Fraction], x) -> int:
    for a in range(len(bounds) - 1):
        if x < bounds[a + 1]:
            return a
    return len(bounds) - 2


def step_kernel(P: Sequence[Sequence], steps: Sequence | None = None) -> StepKernel:
    """Step kernel of a symmetric matrix; uniform steps 1/n when omitted."""
    n = len(P)
    if steps is None:
        steps = [Fraction(1, n)] * n
    return StepKernel(tuple(map(tuple, P)), tuple(steps))


class KernelClass(enum.Enum):
    KERNEL = "kernel"
    SIGNED_UNIT = "signed-unit"
    GRAPHON = "graphon"


def classify(W: StepKernel) -> KernelClass:
    vals = [x for row in W.values for x in row]
    if all(0 <= x <= 1 for x in vals):
        return KernelClass.GRAPHON
    if all(-1 <= x <= 1 for x in vals):
        return KernelClass.SIGNED_UNIT
    return KernelClass.KERNEL


@dataclass(frozen=True)
class SpectralKernel:
    """W(x, y) = sum_k eigenvalues[k] f_k(x) f_k(y), f_k constant on each step."""

    eigenvalues: tuple[Fraction, ...]
    eigenfunctions: tuple[tuple[Fraction, ...], ...]
    steps: tuple[Fraction, ...] = (Fraction(1),)
    approx_error: float | None = None

    def __post_init__(self):
        lam = tuple(frac(x) for x in self.eigenvalues)
        fs = tuple(tuple(frac(x) for x in f) for f in self.eigenfunctions)
        mu = _check_steps(self.steps)
        if len(lam) != len(fs):
            raise ValueError("need one eigenfunction per eigenvalue")
        for f in fs:
            if len(f) != len(mu):
                raise ValueError("eigenfunctions must share the kernel's partition")
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenfunctions", fs)
        object.__setattr__(self, "steps", mu)

    @property
    def rank(self) -> int:
        return len(self.eigenvalues)


def spectral_kernel(eigenvalues: Sequence, eigenfunctions: Sequence[Sequence], steps: Sequence | None = None) -> SpectralKernel:
    if steps is None:
        cells = len(eigenfunctions[0]) if eigenfunctions else 1
        steps = [Fraction(1, cells)] * cells
    return SpectralKernel(tuple(eigenvalues), tuple(map(tuple, eigenfunctions)), tuple(steps))


def spectral_to_step(S: SpectralKernel) -> StepKernel:
    """Exact block matrix of a spectral kernel on its own partition."""
    n = len(S.steps)
    P = [[Fraction(0)] * n for _ in range(n)]
    for lam, f in zip(S.eigenvalues, S.eigenfunctions):
        for a in range(n):
            la = lam * f[a]
            if la:
                row = P[a]
                for b in range(n):
                    row[b] += la * f[b]
    return StepKernel(tuple(map(tuple, P)), S.steps)


def step_to_spectral(W: StepKernel) -> SpectralKernel:
    """Exact rational decomposition W = sum_k d_k f_k(x) f_k(y) of rank rank(P).

    Repeated rank-one reductions R <- R - (R u)(R u)^T / (u^T R u), with u a
    unit vector on a non-zero diagonal entry, or e_a + e_b when the diagonal
    vanishes.  The f_k are not orthonormal.
    """
    n = W.n
    R = [list(row) for row in W.values]
    lams: list[Fraction] = []
    fns: list[tuple[Fraction, ...]] = []
    while True:
        diag = [a for a in range(n) if R[a][a]]
        if diag:
            u = [Fraction(int(k == diag[0])) for k in range(n)]
        else:
            off = next(((a, b) for a in range(n) for b in range(a + 1, n) if R[a][b]), None)
            if off is None:
                break
            u = [Fraction(int(k in off)) for k in range(n)]
        f = [sum((R[a][b] * u[b] for b in range(n)), Fraction(0)) for a in range(n)]
        d = sum((u[a] * f[a] for a in range(n)), Fraction(0))
        for a in range(n):
            for b in range(n):
                R[a][b] -= f[a] * f[b] / d
        lams.append(1 / d)
        fns.append(tuple(f))
    return SpectralKernel(tuple(lams), tuple(fns), W.steps)


def is_orthonormal(S: SpectralKernel) -> bool:
    """Advisory check: the f_k are orthonormal in L2[0,1]."""
    fs = S.eigenfunctions
    for k, f in enumerate(fs):
        for l in range(k, len(fs)):
            ip = sum(m * a * b for m, a, b in zip(S.steps, f, fs[l]))
            if ip != (1 if k == l else 0):
                return False
    return True


def numeric_decompose(
    W: StepKernel, tol: float = 1e-9, max_denominator: int = 10**15
) -> SpectralKernel:
    """Approximate eigen-decomposition of the integral operator of ``W``.

    Eigenpairs of D^1/2 P D^1/2 (D the step lengths) give L2-normalized step
    eigenfunctions.  Floats are rationalized with growing denominators until
    the exact reconstruction error (max block deviation) is at most ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    mu = np.array([float(s) for s in W.steps])
    P = np.array([[float(x) for x in row] for row in W.values])
    root = np.sqrt(mu)
    lam, U = np.linalg.eigh(root[:, None] * P * root[None, :])
    scale = max(1.0, float(np.max(np.abs(lam))) if lam.size else 0.0)
    keep = [k for k in range(len(lam)) if abs(lam[k]) > 1e-13 * scale]
    keep.sort(key=lambda k: -abs(lam[k]))
    F = U / root[:, None]
    denom = 10**6
    while True:
        evs = [Fraction(float(lam[k])).limit_denominator(denom) for k in keep]
        fns = [[Fraction(float(F[a, k])).limit_denominator(denom) for a in range(W.n)] for k in keep]
        S = SpectralKernel(tuple(evs), tuple(map(tuple, fns)), W.steps)
        R = spectral_to_step(S)
        err = max(abs(R.values[a][b] - W.values[a][b]) for a in range(W.n) for b in range(W.n))
        if err <= tol:
            return SpectralKernel(S.eigenvalues, S.eigenfunctions, S.steps, float(err))
        if denom >= max_denominator:
            raise RuntimeError(
                f"decomposition did not reach tol={tol} (best error {float(err):.3g})"
            )
        denom *= 1000


# -- JSON ------------------------------------------------------------------------------


def _s(x: Fraction) -> str:
    return str(x)


def kernel_to_json(W: StepKernel | SpectralKernel) -> str:
    if isinstance(W, StepKernel):
        data = {"steps": [_s(s) for s in W.steps], "values": [[_s(x) for x in r] for r in W.values]}
    else:
        data = {
            "steps": [_s(s) for s in W.steps],
            "eigenvalues": [_s(x) for x in W.eigenvalues],
            "eigenfunctions": [[_s(x) for x in f] for f in W.eigenfunctions],
        }
    return json.dumps(data, sort_keys=True)


def kernel_from_json(text: str | dict) -> StepKernel | SpectralKernel:
    data = json.loads(text) if isinstance(text, str) else text
    if "values" in data:
        values = data["values"]
        steps = data.get("steps")
        return step_kernel([[frac(x) for x in r] for r in values], None if steps is None else [frac(s) for s in steps])
    if "eigenvalues" in data:
        return spectral_kernel(
            [frac(x) for x in data["eigenvalues"]],
            [[frac(x) for x in f] for f in data["eigenfunctions"]],
            None if data.get("steps") is None else [frac(s) for s in data["steps"]],
        )
    raise ValueError("kernel JSON needs 'values' (step) or 'eigenvalues' (spectral)")


def load_kernel(path) -> StepKernel | SpectralKernel:
    with open(path) as fh:
        return kernel_from_json(fh.read())
