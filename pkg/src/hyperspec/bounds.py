"""Upper and lower energy bounds from degrees, Zagreb index, lambda_1 and det(A).

Every function here returns bound *values*; :func:`full_report` evaluates
all of them against the computed energy and records whether each holds.
Bound identifiers in reports (``cota-sup1``, ``cota-inf1``, ``lema-cota2``,
...) are the stable names used by the JSON interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._util import exact_cap
from .core import (
    Hypergraph,
    components,
    degree_stats,
    degrees,
    rank_corank,
    uniformity,
)
from .errors import NoEdges, NotRegularUniform, TheoremViolation, ValidationError
from .spectra import adjacency_matrix, det_exact, spectrum_numeric, trace_square

__all__ = [
    "BoundEntry",
    "BoundsReport",
    "ComparisonVerdict",
    "zagreb",
    "upper_zagreb",
    "upper_lambda1",
    "lambda1_degree_bounds",
    "upper_regular",
    "lower_bounds",
    "sum_squares_lower_bounds",
    "det_lower_bounds",
    "det_abs",
    "compare_b_B",
    "full_report",
    "reproduce_det_remark",
    "TOL",
]

TOL = 1e-6
CHAIN_TOL = 1e-9


def _require_edges(H: Hypergraph):
    if H.m == 0:
        raise NoEdges("bounds need at least one edge")


def _corank_factor(s: int) -> int:
    # size-0/1 multi-edges make (s - 1) non-positive; the bounds then degrade to 0
    return max(s - 1, 0)


def _sqrt(x) -> float:
    return math.sqrt(max(float(x), 0.0))


def zagreb(H: Hypergraph) -> int:
    """Sum of squared vertex degrees."""
    return sum(d * d for d in degrees(H))


def _spectrum(H):
    return spectrum_numeric(adjacency_matrix(H)).values


def _lambda1(H) -> float:
    return float(_spectrum(H)[0])


def upper_zagreb(H: Hypergraph) -> tuple[float, float]:
    """``(sqrt(n (r-1) Z), sqrt(n m (r^2 - r) Delta))``; the first never exceeds the second."""
    _require_edges(H)
    r, _ = rank_corank(H)
    Delta, _, _ = degree_stats(H)
    Z = zagreb(H)
    return _sqrt(H.n * (r - 1) * Z), _sqrt(H.n * H.m * (r * r - r) * Delta)


def upper_lambda1(H: Hypergraph, lambda1: float | None = None) -> float:
    _require_edges(H)
    r, _ = rank_corank(H)
    lam = _lambda1(H) if lambda1 is None else lambda1
    inner = (r - 1) * zagreb(H) - lam * lam
    if inner < -TOL * max(1.0, lam * lam):
        raise TheoremViolation(f"(r-1)Z - lambda1^2 = {inner} is negative")
    return lam + _sqrt((H.n - 1) * inner)


def lambda1_degree_bounds(H: Hypergraph) -> tuple[float, float]:
    """``((s-1) delta, (r-1) Delta)``, which bracket the largest eigenvalue.

    Uses global degree and edge-size extremes.  The same bracket holds on
    each connected component separately; see :func:`_lambda1_component_check`.
    """
    _require_edges(H)
    r, s = rank_corank(H)
    Delta, delta, _ = degree_stats(H)
    return float(_corank_factor(s) * delta), float((r - 1) * Delta)


def _lambda1_component_check(H: Hypergraph, A: np.ndarray) -> bool:
    ok = True
    for comp in components(H):
        idx = set(comp)
        sub_edges = [e for e in H.edges if e and e <= idx]
        if not sub_edges:
            continue
        sizes = [len(e) for e in sub_edges]
        deg = [sum(1 for e in H.edges if v in e) for v in comp]
        sub = A[np.ix_(comp, comp)]
        lam = float(spectrum_numeric(sub).values[0])
        lo = _corank_factor(min(sizes)) * min(deg)
        hi = (max(sizes) - 1) * max(deg)
        ok &= lo - TOL <= lam <= hi + TOL
    return ok


def upper_regular(H: Hypergraph) -> float:
    """Upper bound for r-uniform, d-regular hypergraphs."""
    _require_edges(H)
    r = uniformity(H)
    deg = degrees(H)
    if r is None or len(set(deg)) != 1:
        raise NotRegularUniform("bound needs a uniform, regular hypergraph")
    d, n = deg[0], H.n
    return (r - 1) * d + _sqrt((n - 1) * ((r - 1) * n * d * d - (r - 1) ** 2 * d * d))


def _avg(H) -> Fraction:
    return degree_stats(H)[2]


def sum_squares_lower_bounds(H: Hypergraph, lambda1: float | None = None) -> list[tuple[str, float]]:
    """Three lower bounds on the sum of squared eigenvalues."""
    _require_edges(H)
    _, s = rank_corank(H)
    c = _corank_factor(s)
    n = H.n
    out = [
        ("avg-degree", float(n * c * _avg(H))),
        ("zagreb", float(Fraction(c * c * zagreb(H), n))),
    ]
    if n >= 2:
        lam = _lambda1(H) if lambda1 is None else lambda1
        out.append(("lambda1", n / (n - 1) * lam * lam))
    return out


def lower_bounds(H: Hypergraph, lambda1: float | None = None) -> list[tuple[str, float]]:
    """Energy lower bounds that do not involve the determinant."""
    _require_edges(H)
    _, s = rank_corank(H)
    c = _corank_factor(s)
    n = H.n
    out = [
        ("lema-cota1", _sqrt(2 * trace_square(adjacency_matrix(H)))),
        ("cota-inf1", _sqrt(2 * n * c * _avg(H))),
        ("cota-inf2", _sqrt(Fraction(2 * c * c * zagreb(H), n))),
    ]
    if n >= 2:
        lam = _lambda1(H) if lambda1 is None else lambda1
        out.append(("cota-inf3", _sqrt(2 * n / (n - 1) * lam * lam)))
    return out


def det_abs(H: Hypergraph) -> tuple[int | float, bool]:
    """``(|det A|, exact)``; exact integer elimination up to the exact cap."""
    A = adjacency_matrix(H)
    if H.n <= exact_cap():
        return abs(det_exact(A)), True
    vals = np.abs(spectrum_numeric(A).values)
    if np.any(vals < 1e-9 * max(1.0, float(vals.max()))):
        return 0.0, False
    return float(np.exp(np.log(vals).sum())), False


def _det_term(n: int, det) -> float:
    """``n (n-1) |det|^(2/n)`` computed through logarithms."""
    if det == 0:
        return 0.0
    return n * (n - 1) * math.exp(2.0 / n * math.log(det))


def det_lower_bounds(H: Hypergraph, lambda1: float | None = None,
                     det: int | float | None = None) -> list[tuple[str, float]]:
    """Energy lower bounds that add ``n (n-1) |det A|^(2/n)``."""
    _require_edges(H)
    _, s = rank_corank(H)
    c = _corank_factor(s)
    n = H.n
    if det is None:
        det, _ = det_abs(H)
    term = _det_term(n, det)
    out = [
        ("lema-cota2", _sqrt(trace_square(adjacency_matrix(H)) + term)),
        ("cota-inf4", _sqrt(n * c * _avg(H) + term)),
        ("cota-inf5", _sqrt(Fraction(c * c * zagreb(H), n) + term)),
    ]
    if n >= 2:
        lam = _lambda1(H) if lambda1 is None else lambda1
        out.append(("cota-inf6", _sqrt(n / (n - 1) * lam * lam + term)))
    return out


# --------------------------------------------------------------------------
# b(H) versus B(H)

@dataclass(frozen=True)
class ComparisonVerdict:
    b_value: float
    B_value: float
    case: str

    def consistent(self, tol: float = CHAIN_TOL) -> bool:
        diff = self.B_value - self.b_value
        if self.case in ("b<=B (case 1)", "regular-b<B"):
            return diff >= -tol
        if self.case in ("B<=b (case 2)", "regular-b>B"):
            return diff <= tol
        if self.case == "regular-equal":
            return abs(diff) <= tol
        return True


def compare_b_B(H: Hypergraph) -> ComparisonVerdict:
    """Compare the average-degree and Zagreb lower bounds.

    ``b = sqrt(2 n (s-1) d_avg)`` and ``B = sqrt(2 (s-1)^2 Z / n)``.  For a
    d-regular input the order follows the sign of ``d - n/(s-1)``; otherwise
    the degree-extreme tests decide, or the case is indeterminate.
    """
    _require_edges(H)
    _, s = rank_corank(H)
    if s < 2:
        raise ValidationError("b/B comparison needs co-rank >= 2")
    n = H.n
    Delta, delta, avg = degree_stats(H)
    Z = zagreb(H)
    b = _sqrt(2 * n * (s - 1) * avg)
    B = _sqrt(Fraction(2 * (s - 1) ** 2 * Z, n))
    if Delta == delta:
        lhs, rhs = delta * (s - 1), n
        case = "regular-equal" if lhs == rhs else ("regular-b<B" if lhs > rhs else "regular-b>B")
    elif delta * delta * (s - 1) >= n * Delta:
        case = "b<=B (case 1)"
    elif Delta * Delta * (s - 1) <= n * delta:
        case = "B<=b (case 2)"
    else:
        case = "indeterminate"
    return ComparisonVerdict(b, B, case)


# --------------------------------------------------------------------------
# full report

@dataclass(frozen=True)
class BoundEntry:
    name: str
    side: str
    value: float
    holds: bool
    slack: float

    def to_json(self) -> dict:
        return {"name": self.name, "side": self.side, "value": self.value,
                "holds": self.holds, "slack": self.slack}


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: int
    r: int
    s: int
    max_degree: int
    min_degree: int
    avg_degree: Fraction
    zagreb: int
    lambda1: float
    energy: float
    sum_squares: int
    det_abs: int | float
    det_exact: bool
    entries: tuple[BoundEntry, ...]
    lambda1_bounds: dict = field(default_factory=dict)
    sum_squares_bounds: tuple = ()
    chains: dict = field(default_factory=dict)
    comparisons: dict = field(default_factory=dict)
    remarks: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return (all(e.holds for e in self.entries)
                and self.lambda1_bounds.get("holds", True)
                and all(b["holds"] for b in self.sum_squares_bounds)
                and all(self.chains.values())
                and all(v for v in self.remarks.values() if v is not None))

    def entry(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def failures(self) -> list[str]:
        bad = [e.name for e in self.entries if not e.holds]
        if not self.lambda1_bounds.get("holds", True):
            bad.append("lambda1-degree")
        bad += [b["name"] for b in self.sum_squares_bounds if not b["holds"]]
        bad += [k for k, v in self.chains.items() if not v]
        bad += [k for k, v in self.remarks.items() if v is False]
        return bad

    def to_json(self) -> dict:
        return {
            "parameters": {
                "n": self.n, "m": self.m, "r": self.r, "s": self.s,
                "max_degree": self.max_degree, "min_degree": self.min_degree,
                "avg_degree": float(self.avg_degree),
                "avg_degree_exact": str(self.avg_degree),
                "zagreb": self.zagreb, "lambda1": self.lambda1, "energy": self.energy,
                "sum_squares": self.sum_squares,
                "det_abs": self.det_abs if self.det_exact else float(self.det_abs),
                "det_exact": self.det_exact,
            },
            "bounds": [e.to_json() for e in self.entries],
            "lambda1_bounds": self.lambda1_bounds,
            "sum_squares_bounds": list(self.sum_squares_bounds),
            "chains": self.chains,
            "comparisons": self.comparisons,
            "remarks": self.remarks,
            "all_hold": self.all_hold,
        }


def _entry(name, side, value, E) -> BoundEntry:
    if side == "upper":
        holds = value >= E - TOL
    else:
        holds = value <= E + TOL
    return BoundEntry(name, side, value, holds, abs(value - E))


def full_report(H: Hypergraph) -> BoundsReport:
    """Evaluate every bound against the energy of ``H``."""
    _require_edges(H)
    A = adjacency_matrix(H)
    vals = spectrum_numeric(A).values
    E = float(np.abs(vals).sum())
    lam = float(vals[0])
    r, s = rank_corank(H)
    Delta, delta, avg = degree_stats(H)
    Z = zagreb(H)
    sq = trace_square(A)
    det, det_is_exact = det_abs(H)

    entries = []
    up1, up1b = upper_zagreb(H)
    entries.append(_entry("cota-sup1", "upper", up1, E))
    entries.append(_entry("cota-sup1-degree", "upper", up1b, E))
    entries.append(_entry("cota-sup2", "upper", upper_lambda1(H, lam), E))
    if uniformity(H) is not None and Delta == delta:
        entries.append(_entry("regular", "upper", upper_regular(H), E))
    lows = lower_bounds(H, lam)
    dets = det_lower_bounds(H, lam, det)
    for name, value in lows + dets:
        entries.append(_entry(name, "lower", value, E))

    lo, hi = lambda1_degree_bounds(H)
    lambda1_bounds = {
        "lower": lo, "upper": hi, "value": lam,
        "holds": bool(lo - TOL <= lam <= hi + TOL) and _lambda1_component_check(H, A),
    }
    ss_bounds = tuple(
        {"name": name, "value": value, "holds": value <= sq + TOL * max(1.0, sq)}
        for name, value in sum_squares_lower_bounds(H, lam))
    chains = {"cota-sup1<=cota-sup1-degree": up1 <= up1b + CHAIN_TOL,
              "sum_squares==trace": abs(float((vals ** 2).sum()) - sq) <= TOL * max(1.0, sq)}

    cota1_rhs = 2 * sq
    cota2_rhs = sq + _det_term(H.n, det)
    if abs(cota1_rhs - cota2_rhs) <= TOL * max(1.0, cota1_rhs):
        sharper = "equal"
    else:
        sharper = "lema-cota1" if cota1_rhs > cota2_rhs else "lema-cota2"
    comparisons = {"lema_cota1_vs_2": sharper,
                   "lema_cota1_rhs": cota1_rhs, "lema_cota2_rhs": cota2_rhs}
    if s >= 2:
        v = compare_b_B(H)
        comparisons.update({"b": v.b_value, "B": v.B_value, "case": v.case})
        chains["b-vs-B"] = v.consistent()

    # each remark is None when its hypothesis does not apply
    zero_eig = det == 0
    cota1_ok = sharper != "lema-cota2"
    cota2_ok = sharper != "lema-cota1"
    remarks = {
        "zero-eigenvalue=>lema-cota1": cota1_ok if zero_eig else None,
        "graph-det>=1=>lema-cota2": cota2_ok if (uniformity(H) == 2 and not H.multi
                                                 and det >= 1) else None,
        "n>=(r-1)Delta^2+1=>lema-cota2": cota2_ok if (det >= 1 and H.n >= (r - 1) * Delta ** 2 + 1)
        else None,
    }
    return BoundsReport(H.n, H.m, r, s, Delta, delta, avg, Z, lam, E, sq, det, det_is_exact,
                        tuple(entries), lambda1_bounds, ss_bounds, chains, comparisons, remarks)


# --------------------------------------------------------------------------
# determinant remark reproduction

REMARK_EDGES_PRINTED = ["1234", "1237", "1238", "1256", "126", "1278", "3456", "3478", "5678"]
REMARK_EDGES_VARIANT = ["1234", "1237", "1238", "1256", "1267", "1278", "3456", "3478", "5678"]


def _remark_case(edges) -> dict:
    H = Hypergraph([list(e) for e in edges], [str(i) for i in range(1, 9)])
    A = adjacency_matrix(H)
    det = abs(det_exact(A))
    sq = trace_square(A)
    term = _det_term(H.n, det)
    return {
        "edges": list(edges),
        "det_abs": det,
        "det_is_252": det == 252,
        "sum_squares": sq,
        "det_term": term,
        "chain_holds": sq > 253 > 224 > term,
        "lema_cota1_sharper": 2 * sq > sq + term,
    }


def reproduce_det_remark() -> dict:
    """Recompute the 8-vertex determinant example with exact arithmetic.

    The printed edge list is evaluated as is.  If it does not reproduce
    ``|det A| = 252`` together with ``sum lambda^2 > 253 > 224 > n(n-1)|det|^(2/n)``,
    the variant with edge ``1267`` in place of ``126`` is evaluated too.
    """
    printed = _remark_case(REMARK_EDGES_PRINTED)
    out = {"printed": printed, "reproduced": printed["det_is_252"] and printed["chain_holds"]}
    if not out["reproduced"]:
        out["variant"] = _remark_case(REMARK_EDGES_VARIANT)
    return out
