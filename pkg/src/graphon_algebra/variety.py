"""Kernel varieties V(g) = {W : t(g, W) = 0}, Zariski-law combinators and audits.

A variety is held by its defining quantum graph; membership is decided by
an exact zero test of the density.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .density import t_quantum
from .graphs import enumerate_multigraphs
from .groebner import DEFAULT_STEP_BUDGET, IdealHandle, radical_member
from .hom import hom_poly
from .kernels import SpectralKernel, StepKernel, kernel_to_json
from .parser import format_expr
from .quantum import QuantumGraph, qg_add, qg_product, unlabel

__all__ = [
    "VarietyConstraint",
    "ClosureReport",
    "AuditEntry",
    "HnakReport",
    "in_variety",
    "union_constraint",
    "intersection_constraint",
    "trivial_constraint",
    "closure_check",
    "hnak_audit",
]

Kernel = Union[StepKernel, SpectralKernel]


@dataclass(frozen=True)
class VarietyConstraint:
    """Membership test t(g, W) = 0.  ``g = 0`` is the always-true constraint."""

    g: QuantumGraph
    provenance: str = "raw"

    def __post_init__(self):
        if self.provenance not in ("raw", "union-combined", "intersection-combined"):
            raise ValueError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "g", unlabel(self.g))

    @property
    def is_trivial(self) -> bool:
        return not self.g


def trivial_constraint() -> VarietyConstraint:
    """Constraint K0 - K0 = 0, satisfied by every kernel."""
    return VarietyConstraint(QuantumGraph.zero())


def in_variety(W: Kernel, c: VarietyConstraint | QuantumGraph) -> bool:
    if isinstance(c, QuantumGraph):
        c = VarietyConstraint(c)
    return t_quantum(c.g, W) == 0


def union_constraint(c1: VarietyConstraint, c2: VarietyConstraint) -> VarietyConstraint:
    """V(g1) u V(g2) = V(g1 g2) for finite-rank kernels."""
    return VarietyConstraint(qg_product(c1.g, c2.g), "union-combined")


def intersection_constraint(cs: Sequence[VarietyConstraint]) -> VarietyConstraint:
    """Intersection as the single sum-of-squares constraint sum_i g_i^2."""
    total = QuantumGraph.zero()
    for c in cs:
        total = qg_add(total, qg_product(c.g, c.g))
    return VarietyConstraint(total, "intersection-combined")


# -- closure under gluing ----------------------------------------------------------------


@dataclass
class ClosureReport:
    kernel: str
    base: str
    bound: tuple[int, int]
    base_density: Fraction
    multipliers_checked: int
    violations: list[str] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        """The base graph does not vanish on the kernel, so the check says nothing."""
        return self.base_density != 0

    @property
    def holds(self) -> bool:
        return not self.vacuous and not self.violations

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel,
            "base": self.base,
            "bound": {"max_vertices": self.bound[0], "max_edges": self.bound[1]},
            "base_density": str(self.base_density),
            "multipliers_checked": self.multipliers_checked,
            "violations": list(self.violations),
            "vacuous": self.vacuous,
            "holds": self.holds,
        }


def _kernel_id(W: Kernel, kernel_id: str | None) -> str:
    return kernel_id if kernel_id is not None else kernel_to_json(W)


def closure_check(
    W: Kernel,
    g: QuantumGraph,
    bound: tuple[int, int] = (4, 4),
    kernel_id: str | None = None,
) -> ClosureReport:
    """Test t(g F, W) = 0 for every unlabeled multigraph F within ``bound``."""
    g = unlabel(g)
    base = t_quantum(g, W)
    report = ClosureReport(_kernel_id(W, kernel_id), format_expr(g), tuple(bound), base, 0)
    for F in enumerate_multigraphs(*bound):
        report.multipliers_checked += 1
        if t_quantum(qg_product(g, QuantumGraph.of(F)), W) != 0:
            report.violations.append(F.to_text())
    return report


# -- Nullstellensatz audit ---------------------------------------------------------------


@dataclass
class AuditEntry:
    candidate: str
    kernel: str
    radical_member: bool
    density: Fraction

    @property
    def vanishes(self) -> bool:
        return self.density == 0

    @property
    def violation(self) -> bool:
        """Radical member whose density does not vanish on a kernel of V(Q)."""
        return self.radical_member and not self.vanishes

    @property
    def strict_inclusion(self) -> bool:
        """Vanishes on the kernel although not in the radical."""
        return not self.radical_member and self.vanishes

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "kernel": self.kernel,
            "radical_member": self.radical_member,
            "density": str(self.density),
            "vanishes": self.vanishes,
            "violation": self.violation,
            "strict_inclusion": self.strict_inclusion,
        }


@dataclass
class HnakReport:
    q: int
    generators: list[str]
    ideal_generators: list[str]
    entries: list[AuditEntry]

    @property
    def violations(self) -> list[AuditEntry]:
        return [e for e in self.entries if e.violation]

    @property
    def strict_inclusions(self) -> list[AuditEntry]:
        return [e for e in self.entries if e.strict_inclusion]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "generators": self.generators,
            "ideal_generators": self.ideal_generators,
            "entries": [e.to_dict() for e in self.entries],
            "violations": len(self.violations),
            "strict_inclusions": len(self.strict_inclusions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def hnak_audit(
    q: int,
    Q: Sequence[QuantumGraph],
    candidates: Sequence[QuantumGraph],
    test_kernels: Sequence[Kernel],
    kernel_ids: Sequence[str] | None = None,
    budget: int = DEFAULT_STEP_BUDGET,
) -> HnakReport:
    """Compare radical membership of hom(c, X) with vanishing of t(c, W).

    The ideal is generated by the homomorphism polynomials of ``Q`` at this
    q.  Every test kernel must lie in V(Q); a ``ValueError`` is raised
    otherwise.
    """
    Q = [unlabel(g) for g in Q]
    if not Q:
        raise ValueError("need at least one generator")
    ids = list(kernel_ids) if kernel_ids is not None else [kernel_to_json(W) for W in test_kernels]
    for W, kid in zip(test_kernels, ids):
        for g in Q:
            if t_quantum(g, W) != 0:
                raise ValueError(f"test kernel {kid} is not in V(Q): t({format_expr(g)}) != 0")
    ideal = IdealHandle(q, [hom_poly(g, q) for g in Q])
    entries = []
    for c in candidates:
        c = unlabel(c)
        member = radical_member(hom_poly(c, q), ideal, budget)
        for W, kid in zip(test_kernels, ids):
            entries.append(AuditEntry(format_expr(c), kid, member, t_quantum(c, W)))
    return HnakReport(q, [format_expr(g) for g in Q], [p.to_text() for p in ideal.generators], entries)
