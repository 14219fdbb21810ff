"""Buchberger's algorithm over Q, ideal membership and radical membership.

Polynomials inside the algorithm are plain ``{exponent tuple: Fraction}``
dicts so that the Rabinowitsch variable can be appended without changing q.
Pair management uses the Gebauer-Moeller criteria with the normal
selection strategy.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import SizeLimitError
from .polynomial import SymPolynomial, monomial_key, parse_polynomial

__all__ = [
    "IdealHandle",
    "groebner_basis",
    "ideal_member",
    "radical_member",
    "reduce_polynomial",
    "buchberger",
    "DEFAULT_STEP_BUDGET",
]

DEFAULT_STEP_BUDGET = 10**6

Poly = dict  # {exponent tuple: Fraction}


def _heap_key(order: str):
    if order == "grevlex":
        return lambda e: (-sum(e), e[::-1])
    if order == "grlex":
        return lambda e: (-sum(e), tuple(-x for x in e))
    if order == "lex":
        return lambda e: tuple(-x for x in e)
    raise ValueError(f"unknown monomial order {order!r}")


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a: tuple, b: tuple) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Ring:
    """Order-specific helpers shared by one Buchberger run."""

    def __init__(self, order: str):
        self.order = order
        self.key = monomial_key(order)
        self.hkey = _heap_key(order)

    def lead(self, p: Poly) -> tuple:
        return max(p, key=self.key)

    def monic(self, p: Poly) -> Poly:
        c = p[self.lead(p)]
        return p if c == 1 else {e: v / c for e, v in p.items()}

    def normal_form(self, f: Poly, basis: list[tuple[tuple, Poly]]) -> Poly:
        """Full reduction of ``f`` by monic ``basis`` entries ``(lead, poly)``."""
        p = dict(f)
        hkey = self.hkey
        heap = [(hkey(e), e) for e in p]
        heapq.heapify(heap)
        rem: Poly = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = p.pop(m, None)
            if c is None:
                continue
            for lm, g in basis:
                if _divides(lm, m):
                    shift = tuple(x - y for x, y in zip(m, lm))
                    for e, d in g.items():
                        if e == lm:
                            continue
                        ne = tuple(x + y for x, y in zip(e, shift))
                        old = p.get(ne)
                        if old is None:
                            p[ne] = -c * d
                            heapq.heappush(heap, (hkey(ne), ne))
                        else:
                            nv = old - c * d
                            if nv:
                                p[ne] = nv
                            else:
                                del p[ne]
                    break
            else:
                rem[m] = c
        return rem

    def spoly(self, f: Poly, lf: tuple, g: Poly, lg: tuple) -> Poly:
        lcm = _lcm(lf, lg)
        sf = tuple(x - y for x, y in zip(lcm, lf))
        sg = tuple(x - y for x, y in zip(lcm, lg))
        out: Poly = {}
        for e, c in f.items():
            out[tuple(x + y for x, y in zip(e, sf))] = c
        for e, c in g.items():
            ne = tuple(x + y for x, y in zip(e, sg))
            v = out.get(ne, 0) - c
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
        return out


def buchberger(
    generators: Sequence[Poly],
    order: str = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
    stop_on_unit: bool = False,
) -> list[Poly]:
    """Reduced Groebner basis of the ideal spanned by ``generators``.

    ``budget`` bounds the number of S-polynomial reductions.  With
    ``stop_on_unit`` the run ends as soon as a non-zero constant appears
    and returns ``[{0...0: 1}]``.
    """
    ring = _Ring(order)
    polys: list[Poly] = []
    leads: list[tuple] = []
    basis_idx: list[int] = []
    pairs: list[tuple[int, int]] = []
    steps = 0

    def is_unit(p):
        return len(p) == 1 and not any(next(iter(p)))

    def update(h: int):
        nonlocal basis_idx, pairs
        lh = leads[h]
        cand = [(g, _lcm(lh, leads[g])) for g in basis_idx]
        keep = []
        for k, (g, lcm_g) in enumerate(cand):
            if _disjoint(lh, leads[g]):
                keep.append((g, lcm_g))
                continue
            others = cand[k + 1:] + keep
            if not any(_divides(l2, lcm_g) for _, l2 in others):
                keep.append((g, lcm_g))
        new_pairs = [(g, h) for g, lcm_g in keep if not _disjoint(lh, leads[g])]
        survived = []
        for a, b in pairs:
            lab = _lcm(leads[a], leads[b])
            if (
                _divides(lh, lab)
                and _lcm(leads[a], lh) != lab
                and _lcm(leads[b], lh) != lab
            ):
                continue
            survived.append((a, b))
        pairs = survived + new_pairs
        basis_idx = [g for g in basis_idx if not _divides(lh, leads[g])] + [h]

    def add(p: Poly):
        polys.append(p)
        leads.append(ring.lead(p))
        update(len(polys) - 1)

    start = [ring.monic(dict(g)) for g in generators if g]
    if not start:
        return []
    start.sort(key=lambda p: ring.key(ring.lead(p)))
    for g in start:
        if stop_on_unit and is_unit(g):
            return [g]
        add(g)

    while pairs:
        best = min(
            range(len(pairs)),
            key=lambda k: (ring.key(_lcm(leads[pairs[k][0]], leads[pairs[k][1]])), pairs[k]),
        )
        a, b = pairs.pop(best)
        steps += 1
        if steps > budget:
            raise SizeLimitError(
                f"basis computation too large: exceeded {budget} S-polynomial reductions"
            )
        s = ring.spoly(polys[a], leads[a], polys[b], leads[b])
        h = ring.normal_form(s, [(leads[g], polys[g]) for g in basis_idx])
        if h:
            h = ring.monic(h)
            if stop_on_unit and is_unit(h):
                return [h]
            add(h)

    return _reduce_basis(ring, [polys[g] for g in basis_idx])


def _reduce_basis(ring: _Ring, basis: list[Poly]) -> list[Poly]:
    basis = sorted(basis, key=lambda p: ring.key(ring.lead(p)))
    minimal: list[Poly] = []
    for k, p in enumerate(basis):
        lp = ring.lead(p)
        if any(_divides(ring.lead(r), lp) for j, r in enumerate(basis) if j != k and (
            ring.lead(r) != lp or j < k
        )):
            continue
        minimal.append(p)
    reduced = []
    for k, p in enumerate(minimal):
        lp = ring.lead(p)
        others = [(ring.lead(r), r) for j, r in enumerate(minimal) if j != k]
        tail = {e: c for e, c in p.items() if e != lp}
        nf = ring.normal_form(tail, others)
        nf[lp] = Fraction(1)
        reduced.append(nf)
    reduced.sort(key=lambda p: ring.key(ring.lead(p)), reverse=True)
    return reduced


# -- ideals of SymPolynomials -----------------------------------------------------


@dataclass(frozen=True)
class IdealHandle:
    """Generators of an ideal of Q[X], plus a cached reduced Groebner basis."""

    q: int
    generators: tuple[SymPolynomial, ...]
    order: str = "grevlex"
    basis: tuple[SymPolynomial, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.q != self.q:
                raise ValueError(f"generator has q={g.q}, ideal has q={self.q}")

    def to_json(self) -> str:
        data = {
            "q": self.q,
            "order": self.order,
            "generators": [g.to_text() for g in self.generators],
            "basis": None if self.basis is None else [b.to_text() for b in self.basis],
        }
        return json.dumps(data, sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "IdealHandle":
        data = json.loads(text)
        q = data["q"]
        gens = tuple(parse_polynomial(t, q) for t in data["generators"])
        basis = data.get("basis")
        if basis is not None:
            basis = tuple(parse_polynomial(t, q) for t in basis)
        return cls(q, gens, data.get("order", "grevlex"), basis)


def groebner_basis(
    h: IdealHandle, order: str | None = None, budget: int = DEFAULT_STEP_BUDGET
) -> IdealHandle:
    """Handle with the reduced basis under ``order`` computed and cached."""
    order = order or h.order
    if h.basis is not None and order == h.order:
        return h
    if not h.generators:
        raise ValueError("ideal needs at least one generator")
    gb = buchberger([g.terms for g in h.generators], order, budget)
    return replace(h, order=order, basis=tuple(SymPolynomial(h.q, p) for p in gb))


def reduce_polynomial(f: SymPolynomial, h: IdealHandle) -> SymPolynomial:
    """Remainder of ``f`` on division by the reduced basis of ``h``."""
    h = groebner_basis(h)
    ring = _Ring(h.order)
    basis = [(ring.lead(b.terms), b.terms) for b in h.basis]
    return SymPolynomial(h.q, ring.normal_form(f.terms, basis))


def ideal_member(f: SymPolynomial, h: IdealHandle, budget: int = DEFAULT_STEP_BUDGET) -> bool:
    if f.q != h.q:
        raise ValueError("mismatched q")
    h = groebner_basis(h, budget=budget)
    return reduce_polynomial(f, h).is_zero()


def radical_member(
    f: SymPolynomial, h: IdealHandle, budget: int = DEFAULT_STEP_BUDGET
) -> bool:
    """Whether some power of ``f`` lies in the ideal (Rabinowitsch trick).

    ``f`` is in the radical iff ``1`` is in ``I + (1 - y f)`` with one
    extra variable ``y``, ordered last.
    """
    if f.q != h.q:
        raise ValueError("mismatched q")
    if f.is_zero():
        return True
    if not h.generators:
        raise ValueError("ideal needs at least one generator")
    lifted = [{e + (0,): c for e, c in g.terms.items()} for g in h.generators]
    n = f.nvars
    rab = {(0,) * (n + 1): Fraction(1)}
    for e, c in f.terms.items():
        ne = e + (1,)
        rab[ne] = rab.get(ne, 0) - c
    rab = {e: c for e, c in rab.items() if c}
    gb = buchberger(lifted + [rab], h.order, budget, stop_on_unit=True)
    return len(gb) == 1 and not any(next(iter(gb[0])))
