"""Vertex deletion, edge deletion and edge division with their energy gaps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_WEAK_CUT_BUDGET,
    DivisionSpec,
    Hypergraph,
    Verdict,
    WeakCutSpec,
    apply_divisions,
    is_weak_cut,
)
from .errors import BadIndex, NotAWeakCut, NotIsolated, TheoremViolation
from .spectra import adjacency_matrix, energy, spectrum_numeric

__all__ = [
    "GapReport",
    "delete_vertex",
    "delete_edge",
    "divide_edges",
    "vertex_deletion_check",
    "edge_deletion_check",
    "division_check",
    "isolated_edge_division_check",
    "weak_cut_energy_check",
    "EQ_TOL",
    "STRICT_TOL",
]

EQ_TOL = 1e-6
STRICT_TOL = 1e-9


@dataclass(frozen=True)
class GapReport:
    """Energy before and after an operation, checked against a bound.

    ``holds`` is ``gap <= bound + 1e-6`` unless stated otherwise by the
    producing check.  ``strict`` is only set when a strict decrease is part
    of the claim.
    """

    energy_before: float
    energy_after: float
    gap: float
    bound: float
    holds: bool
    strict: bool | None = None

    def to_json(self) -> dict:
        return {
            "before": self.energy_before,
            "after": self.energy_after,
            "gap": self.gap,
            "bound": self.bound,
            "holds": self.holds,
            "strict": self.strict,
        }


def _E(H: Hypergraph) -> float:
    return energy(H, exact=False).energy


def delete_vertex(H: Hypergraph, v) -> Hypergraph:
    """``H - v``: drop v and shrink every edge through it (kept even if tiny)."""
    i = H.index(v)
    remap = {j: j - (j > i) for j in range(H.n) if j != i}
    vertices = [u for j, u in enumerate(H.vertices) if j != i]
    edges = [[remap[j] for j in e if j != i] for e in H.edges]
    return Hypergraph._from_indices(vertices, edges, True)


def delete_edge(H: Hypergraph, edge_index: int) -> Hypergraph:
    if not 0 <= edge_index < H.m:
        raise BadIndex(f"edge index {edge_index} out of range for {H.m} edges")
    edges = [e for j, e in enumerate(H.edges) if j != edge_index]
    return Hypergraph._from_indices(H.vertices, edges, H.multi)


def divide_edges(H: Hypergraph, specs: Sequence[DivisionSpec]) -> Hypergraph:
    """Replace every selected edge by its two halves; the result is a multi-hypergraph."""
    if isinstance(specs, DivisionSpec):
        specs = [specs]
    return apply_divisions(H, specs)


def vertex_deletion_check(H: Hypergraph, v) -> GapReport:
    """Deleting a vertex never increases energy (interlacing).

    ``gap`` is the increase ``E(H - v) - E(H)`` and the bound is 0.
    """
    before = _E(H)
    after = _E(delete_vertex(H, v)) if H.n > 1 else 0.0
    gap = after - before
    return GapReport(before, after, gap, 0.0, gap <= EQ_TOL)


def edge_deletion_check(H: Hypergraph, edge_index: int) -> GapReport:
    """``|E(H) - E(H - e)| <= 2|e| - 2``."""
    e = H.edge(edge_index)
    before = _E(H)
    after = _E(delete_edge(H, edge_index))
    gap = abs(before - after)
    bound = 2.0 * len(e) - 2.0
    return GapReport(before, after, gap, bound, gap <= bound + EQ_TOL)


def division_difference_spectrum(H: Hypergraph, spec: DivisionSpec) -> np.ndarray:
    """Eigenvalues of ``A(H) - A(H divided at spec)``."""
    D = adjacency_matrix(H) - adjacency_matrix(divide_edges(H, [spec]))
    return spectrum_numeric(D).values


def division_check(H: Hypergraph, spec: DivisionSpec) -> GapReport:
    """``|E(H) - E(H divided at e)| <= 2 sqrt(|e'| |e''|)``.

    The difference of the two adjacency matrices is a complete bipartite
    block whose only non-zero eigenvalues are ``+-sqrt(|e'| |e''|)``; that
    is asserted along the way.
    """
    _, left, right = spec.resolve(H)
    p, q = len(left), len(right)
    divided = divide_edges(H, [spec])
    before, after = _E(H), _E(divided)

    diff = spectrum_numeric(adjacency_matrix(H) - adjacency_matrix(divided)).values
    root = math.sqrt(p * q)
    nz = np.sort(diff[np.abs(diff) > EQ_TOL])
    if len(nz) != 2 or abs(nz[0] + root) > EQ_TOL or abs(nz[1] - root) > EQ_TOL:
        raise TheoremViolation(f"division difference spectrum {nz} is not +-{root}")

    gap = abs(before - after)
    bound = 2.0 * root
    return GapReport(before, after, gap, bound, gap <= bound + EQ_TOL)


def isolated_edge_division_check(H: Hypergraph, spec: DivisionSpec) -> GapReport:
    """Dividing an isolated edge changes the energy by exactly 2.

    ``bound`` holds the generic division bound ``2 sqrt(|e'||e''|)``;
    ``holds`` requires the gap to be 2 and to equal that bound exactly when
    the edge has two vertices.
    """
    i, left, right = spec.resolve(H)
    e = H.edges[i]
    for j, f in enumerate(H.edges):
        if j != i and e & f:
            raise NotIsolated(f"edge {i} meets edge {j}")
    before = _E(H)
    after = _E(divide_edges(H, [spec]))
    gap = abs(before - after)
    bound = 2.0 * math.sqrt(len(left) * len(right))
    equals_bound = abs(gap - bound) <= EQ_TOL
    holds = abs(gap - 2.0) <= EQ_TOL and equals_bound == (len(e) == 2)
    return GapReport(before, after, gap, bound, holds)


def weak_cut_energy_check(H: Hypergraph, cut: WeakCutSpec,
                          budget: int = DEFAULT_WEAK_CUT_BUDGET) -> GapReport:
    """Dividing along a weak cut does not increase energy.

    ``gap`` is ``E(H divided) - E(H)`` with bound 0.  For the single-edge
    cut ``(e, e - {v}, {v})`` the decrease must be strict (more than 1e-9);
    ``strict`` records that and ``holds`` includes it.
    """
    verdict = is_weak_cut(H, cut, budget)
    if verdict is not Verdict.YES:
        raise NotAWeakCut(f"cut is not a weak cut (verdict: {verdict.value})")
    before = _E(H)
    after = _E(divide_edges(H, cut.divisions))
    gap = after - before
    holds = gap <= EQ_TOL
    strict = None
    if cut.is_vertex_split():
        strict = before - after > STRICT_TOL
        holds = holds and strict
    return GapReport(before, after, gap, 0.0, holds, strict)
