"""Seeded property suites behind ``hyperspec verify``.

Each suite draws instances deterministically from ``(seed, trial)`` and
checks one family of identities or inequalities.  Results are plain
counters plus a few counterexample payloads in ``.hg`` form.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import fixtures
from .bounds import compare_b_B, full_report, reproduce_det_remark
from .constructions import (
    complete_bipartite,
    complete_kgraph,
    cyclic_uniform,
    direct_sum,
    disjoint_union,
    hyperstar,
    hyperstar_energy_closed,
    hyperstar_extremal_bounds,
    hyperstar_spectrum_closed,
    perfect_matching,
    random_hypergraph,
    random_hypertree,
    random_uniform,
    tensor_product,
)
from .core import (
    DivisionSpec,
    Hypergraph,
    Verdict,
    WeakCutSpec,
    _edge_splits,
    degrees,
    is_weak_cut,
    rank_corank,
    to_hg,
)
from .errors import NotAWeakCut, TheoremViolation
from .spectra import adjacency_matrix, parity_certificate, spectrum_numeric
from .surgery import (
    division_check,
    edge_deletion_check,
    isolated_edge_division_check,
    vertex_deletion_check,
    weak_cut_energy_check,
)

THEOREMS = (
    "hyperstar-spectrum",
    "sum-spectrum",
    "product-spectrum",
    "parity",
    "vertex-deletion",
    "edge-deletion",
    "edge-division",
    "isolated-division",
    "weak-cut",
    "bounds-all",
    "b-vs-B",
    "det-bounds",
)

MAX_COUNTEREXAMPLES = 5


@dataclass
class VerifyConfig:
    theorems: tuple[str, ...] = THEOREMS
    trials: int = 100
    seed: int = 0
    n_max: int = 12
    m_max: int = 10
    size_range: tuple[int, int] = (2, 4)
    k: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = set(self.theorems) - set(THEOREMS)
        if unknown:
            raise ValueError(f"unknown theorem ids: {sorted(unknown)}")
        lo, hi = self.size_range
        if not 2 <= lo <= hi:
            raise ValueError(f"size range must satisfy 2 <= lo <= hi, got {self.size_range}")
        if self.n_max < max(3, lo):
            raise ValueError("n_max too small for the size range")
        if self.k is not None and self.k < 2:
            raise ValueError("k must be >= 2")


@dataclass
class SuiteResult:
    theorem: str
    checks: int = 0
    failures: int = 0
    reported_only: bool = False
    counterexamples: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    @property
    def status(self) -> str:
        if self.reported_only:
            return "reported"
        return "pass" if self.passed else "fail"

    def record(self, ok: bool, H: Hypergraph | None = None, why: str = ""):
        self.checks += 1
        if not ok:
            self.failures += 1
            if H is not None and len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(to_hg(H, [f"{self.theorem}: {why}"]))

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "checks": self.checks,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
            "notes": self.notes,
        }


def _rng(cfg: VerifyConfig, theorem: str, trial: int) -> random.Random:
    return random.Random(f"{cfg.seed}:{theorem}:{trial}")


def random_instance(cfg: VerifyConfig, rng: random.Random) -> Hypergraph:
    """Random strict hypergraph within the configured caps."""
    lo, hi = cfg.size_range
    n = rng.randint(max(3, lo), cfg.n_max)
    hi = min(hi, n)
    lo = min(lo, hi)
    avail = sum(math.comb(n, s) for s in range(lo, hi + 1))
    m = rng.randint(1, min(cfg.m_max, avail))
    return random_hypergraph(n, m, (lo, hi), rng.getrandbits(32))


def _sorted_desc(values) -> np.ndarray:
    return np.sort(np.asarray(values, dtype=float))[::-1]


def _spec(H: Hypergraph) -> np.ndarray:
    return spectrum_numeric(adjacency_matrix(H)).values


# --------------------------------------------------------------------------

def suite_hyperstar(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("hyperstar-spectrum")
    worst = 0.0
    for n in range(2, 9):
        for k in range(2, 9):
            H = hyperstar(n, k)
            numeric = _spec(H)
            closed = hyperstar_spectrum_closed(n, k).values
            dev = float(np.max(np.abs(numeric - closed)))
            dev_e = abs(float(np.abs(numeric).sum()) - hyperstar_energy_closed(n, k))
            worst = max(worst, dev, dev_e)
            res.record(dev <= 1e-9 and dev_e <= 1e-9, H, f"closed form off by {max(dev, dev_e):.3g}")
    for n in range(2, 13):
        for k in range(2, 13):
            t = (n - 1) * (k - 1) + 1
            lo, hi = hyperstar_extremal_bounds(t)
            E = hyperstar_energy_closed(n, k)
            inside = lo - 1e-9 <= E <= hi + 1e-9
            at_lo, at_hi = abs(E - lo) <= 1e-9, abs(E - hi) <= 1e-9
            ok = inside and at_lo == (k == 2) and at_hi == (n == 2)
            res.record(ok, hyperstar(n, k) if not ok else None, f"extremal interval (n={n}, k={k})")
    res.notes["max_deviation"] = worst
    return res


def _factor_pair(cfg, rng, k):
    """Two random k-graphs whose vertex-count product stays within 40."""
    n_h = rng.randint(k, max(k, min(40 // k, cfg.n_max)))
    n_g = rng.randint(k, max(k, 40 // n_h))
    mh = rng.randint(1, min(cfg.m_max, math.comb(n_h, k)))
    mg = rng.randint(1, min(cfg.m_max, math.comb(n_g, k)))
    if k >= 4:
        mh, mg = min(mh, 3), min(mg, 3)
    return (random_uniform(n_h, mh, k, rng.getrandbits(32)),
            random_uniform(n_g, mg, k, rng.getrandbits(32)))


def suite_sum(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("sum-spectrum")
    worst = 0.0
    for trial in range(cfg.trials):
        rng = _rng(cfg, res.theorem, trial)
        k = cfg.k or rng.choice((2, 3))
        H, G = _factor_pair(cfg, rng, k)
        got = _spec(direct_sum(H, G))
        want = _sorted_desc(np.add.outer(_spec(H), _spec(G)).ravel())
        dev = float(np.max(np.abs(got - want)))
        worst = max(worst, dev)
        res.record(dev <= 1e-6, disjoint_union(H, G), f"sum spectrum off by {dev:.3g}")
    res.notes["max_deviation"] = worst
    return res


def product_scaling(H: Hypergraph, G: Hypergraph) -> tuple[float, float]:
    """Least-squares factor c with spec(H x G) ~ c * {mu lambda}, and the residual."""
    got = _spec(tensor_product(H, G))
    outer = _sorted_desc(np.multiply.outer(_spec(H), _spec(G)).ravel())
    denom = float(outer @ outer)
    if denom == 0:
        return float("nan"), 0.0
    c = float(got @ outer) / denom
    return c, float(np.max(np.abs(got - c * outer)))


def suite_product(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("product-spectrum")
    k_fixed = cfg.k
    if k_fixed is not None and k_fixed >= 4:
        res.reported_only = True
        factors, residuals = [], []
        for trial in range(cfg.trials):
            rng = _rng(cfg, res.theorem, trial)
            c, resid = product_scaling(*_factor_pair(cfg, rng, k_fixed))
            if not math.isnan(c):
                factors.append(c)
                residuals.append(resid)
            res.checks += 1
        res.notes.update({
            "k": k_fixed,
            "measured_factor_mean": float(np.mean(factors)) if factors else None,
            "measured_factor_min": float(np.min(factors)) if factors else None,
            "measured_factor_max": float(np.max(factors)) if factors else None,
            "max_residual_after_scaling": float(np.max(residuals)) if residuals else None,
            "expected_factorial": math.factorial(k_fixed - 2),
        })
        return res
    worst = 0.0
    for trial in range(cfg.trials):
        rng = _rng(cfg, res.theorem, trial)
        k = k_fixed or rng.choice((2, 3))
        H, G = _factor_pair(cfg, rng, k)
        got = _spec(tensor_product(H, G))
        want = _sorted_desc(np.multiply.outer(_spec(H), _spec(G)).ravel())
        dev = float(np.max(np.abs(got - want)))
        worst = max(worst, dev)
        res.record(dev <= 1e-6, disjoint_union(H, G), f"product spectrum off by {dev:.3g}")
    res.notes["max_deviation"] = worst
    return res


_INTEGRAL_STARS = [(n, k) for n in range(2, 9) for k in range(2, 9)
                   if hyperstar_spectrum_closed(n, k).is_integral]
_SQUARE_BIPARTITE = [(a, b) for a in range(1, 9) for b in range(a, 13)
                     if math.isqrt(a * b) ** 2 == a * b]


def integral_instance(rng: random.Random) -> Hypergraph:
    """Draw from families whose adjacency spectrum is entirely integral."""
    kind = rng.randrange(6)
    if kind == 0:
        n = rng.randint(3, 9)
        return complete_kgraph(n, rng.randint(2, n))
    if kind == 1:
        parts = [complete_kgraph(s, s) for s in
                 (rng.randint(2, 6) for _ in range(rng.randint(1, 4)))]
        return disjoint_union(*parts)
    if kind == 2:
        return complete_bipartite(*rng.choice(_SQUARE_BIPARTITE))
    if kind == 3:
        return hyperstar(*rng.choice(_INTEGRAL_STARS))
    if kind == 4:
        k = rng.choice((2, 3))
        a, b = rng.randint(k, 5), rng.randint(k, 5)
        return direct_sum(complete_kgraph(a, k), complete_kgraph(b, k))
    k = rng.choice((2, 3))
    a, b = rng.randint(k, 5), rng.randint(k, 4)
    return tensor_product(complete_kgraph(a, k), complete_kgraph(b, k))


def suite_parity(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("parity")
    skipped = 0
    trial = 0
    while res.checks < cfg.trials:
        rng = _rng(cfg, res.theorem, trial)
        trial += 1
        H = integral_instance(rng)
        try:
            cert = parity_certificate(H)
        except TheoremViolation as exc:
            res.record(False, H, str(exc))
            continue
        if cert.status != "even":
            skipped += 1
            if skipped > 10 * cfg.trials:
                break
            continue
        numeric = float(np.abs(_spec(H)).sum())
        ok = cert.energy % 2 == 0 and abs(numeric - cert.energy) <= 1e-6 * max(1.0, numeric)
        res.record(ok, H, f"exact energy {cert.energy}, numeric {numeric}")
    res.notes["non_integral_skipped"] = skipped
    return res


def suite_vertex_deletion(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("vertex-deletion")
    for trial in range(cfg.trials):
        H = random_instance(cfg, _rng(cfg, res.theorem, trial))
        for v in H.vertices:
            rep = vertex_deletion_check(H, v)
            res.record(rep.holds, H, f"deleting {v} raised energy by {rep.gap:.3g}")
    return res


def suite_edge_deletion(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("edge-deletion")
    for trial in range(cfg.trials):
        H = random_instance(cfg, _rng(cfg, res.theorem, trial))
        for j in range(H.m):
            rep = edge_deletion_check(H, j)
            res.record(rep.holds, H, f"edge {j}: gap {rep.gap:.6g} > {rep.bound}")
    return res


def _all_divisions(H: Hypergraph, j: int):
    for left, right in _edge_splits(H.edges[j]):
        yield DivisionSpec(j, frozenset(H.label(i) for i in left),
                           frozenset(H.label(i) for i in right))


def suite_edge_division(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("edge-division")
    for trial in range(cfg.trials):
        H = random_instance(cfg, _rng(cfg, res.theorem, trial))
        for j in range(H.m):
            for spec in _all_divisions(H, j):
                rep = division_check(H, spec)
                res.record(rep.holds, H, f"division {sorted(spec.left)}|{sorted(spec.right)}")
    return res


def with_isolated_edge(H: Hypergraph, size: int) -> tuple[Hypergraph, int]:
    """``H`` plus one extra edge on ``size`` fresh vertices; returns its index."""
    extra = Hypergraph([[f"x{i}" for i in range(1, size + 1)]])
    return disjoint_union(H, extra), H.m


def suite_isolated_division(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("isolated-division")
    for trial in range(cfg.trials):
        rng = _rng(cfg, res.theorem, trial)
        H, j = with_isolated_edge(random_instance(cfg, rng), rng.randint(2, 5))
        for spec in _all_divisions(H, j):
            rep = isolated_edge_division_check(H, spec)
            res.record(rep.holds, H, f"isolated division gap {rep.gap:.9g}")
    return res


def suite_weak_cut(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("weak-cut")
    lo, hi = cfg.size_range
    for trial in range(cfg.trials):
        rng = _rng(cfg, res.theorem, trial)
        T = random_hypertree(rng.randint(1, 8), (lo, hi), rng.getrandbits(32))
        for j in range(T.m):
            for v in T.edge_labels(j):
                cut = WeakCutSpec.single(T, j, v)
                if is_weak_cut(T, cut) is not Verdict.YES:
                    res.record(False, T, f"({j}, e-{{{v}}}, {{{v}}}) not a weak cut")
                    continue
                try:
                    rep = weak_cut_energy_check(T, cut)
                except NotAWeakCut as exc:
                    res.record(False, T, str(exc))
                    continue
                res.record(rep.holds, T, f"edge {j}, vertex {v}: decrease {-rep.gap:.3g}")
    return res


def _witnesses() -> list[tuple[str, Hypergraph, str]]:
    K2 = complete_kgraph(2, 2)
    return [
        ("perfect-matching", perfect_matching(4), "cota-sup1"),
        ("K_2,3", complete_bipartite(2, 3), "cota-inf1"),
        ("K_1,4", complete_bipartite(1, 4), "cota-inf1"),
        ("K2", K2, "cota-inf3"),
        ("K2", K2, "lema-cota2"),
    ]


def suite_bounds(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("bounds-all")
    corpus = [fixtures.load(name) for name in fixtures.names()]
    corpus += [random_instance(cfg, _rng(cfg, res.theorem, t)) for t in range(cfg.trials)]
    for H in corpus:
        rep = full_report(H)
        res.record(rep.all_hold, H, f"failed: {rep.failures()}")
    tight = {}
    for label, H, name in _witnesses():
        entry = full_report(H).entry(name)
        ok = entry.slack <= 1e-9
        tight[f"{label}:{name}"] = entry.slack
        res.record(ok, H, f"{name} not tight on {label}")
    res.notes["equality_slack"] = tight
    return res


def regular_instances() -> list[Hypergraph]:
    out = [cyclic_uniform(n, k) for n in range(4, 13) for k in range(2, min(n, 6))]
    out += [complete_kgraph(n, k) for n in range(3, 8) for k in range(2, n)]
    out += [perfect_matching(p) for p in range(1, 6)]
    return out


def suite_b_vs_B(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("b-vs-B")
    cases = {}
    for H in regular_instances():
        v = compare_b_B(H)
        d = degrees(H)[0]
        _, s = rank_corank(H)
        sign = (d * (s - 1) > H.n) - (d * (s - 1) < H.n)
        want = {0: "regular-equal", 1: "regular-b<B", -1: "regular-b>B"}[sign]
        res.record(v.case == want and v.consistent(), H, f"case {v.case}, expected {want}")
        cases[want] = cases.get(want, 0) + 1
    for t in range(cfg.trials):
        H = random_instance(cfg, _rng(cfg, res.theorem, t))
        v = compare_b_B(H)
        res.record(v.consistent(), H, f"case {v.case} contradicts b={v.b_value}, B={v.B_value}")
        cases[v.case] = cases.get(v.case, 0) + 1
    res.notes["cases"] = dict(sorted(cases.items()))
    return res


def suite_det_bounds(cfg: VerifyConfig) -> SuiteResult:
    res = SuiteResult("det-bounds")
    names = ("lema-cota2", "cota-inf4", "cota-inf5", "cota-inf6")
    for t in range(cfg.trials):
        H = random_instance(cfg, _rng(cfg, res.theorem, t))
        rep = full_report(H)
        bad = [e.name for e in rep.entries if e.name in names and not e.holds]
        remarks_ok = all(v for v in rep.remarks.values() if v is not None)
        res.record(not bad and remarks_ok, H, f"failed: {bad or rep.remarks}")
    remark = reproduce_det_remark()
    res.notes["det_remark"] = remark
    res.record(remark["reproduced"] or "variant" in remark, None)
    return res


SUITES = {
    "hyperstar-spectrum": suite_hyperstar,
    "sum-spectrum": suite_sum,
    "product-spectrum": suite_product,
    "parity": suite_parity,
    "vertex-deletion": suite_vertex_deletion,
    "edge-deletion": suite_edge_deletion,
    "edge-division": suite_edge_division,
    "isolated-division": suite_isolated_division,
    "weak-cut": suite_weak_cut,
    "bounds-all": suite_bounds,
    "b-vs-B": suite_b_vs_B,
    "det-bounds": suite_det_bounds,
}


def run(cfg: VerifyConfig) -> list[SuiteResult]:
    return [SUITES[name](cfg) for name in cfg.theorems]
