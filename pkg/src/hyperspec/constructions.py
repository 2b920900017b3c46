"""Hypergraph families and binary operations.

Complete k-graphs, stars, power graphs and hyperstars (with their closed
form spectra), the sum and product of k-graphs, disjoint unions, and seeded
random generators used by the property suites.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, uniformity
from .errors import (
    BadParams,
    InfeasibleParams,
    MismatchedUniformity,
    NotAGraph,
    NotUniform,
    SizeCapExceeded,
)
from .spectra import CharPoly, Spectrum

__all__ = [
    "HyperstarParams",
    "complete_kgraph",
    "star",
    "path",
    "cycle",
    "complete_bipartite",
    "perfect_matching",
    "power_graph",
    "hyperstar",
    "hyperstar_spectrum_closed",
    "hyperstar_energy_closed",
    "hyperstar_extremal_bounds",
    "hyperstar_shapes",
    "direct_sum",
    "tensor_product",
    "disjoint_union",
    "cyclic_uniform",
    "random_hypergraph",
    "random_uniform",
    "random_hypertree",
    "PRODUCT_EDGE_CAP",
]

PRODUCT_EDGE_CAP = 10**6


def _labels(n, start=1):
    return [str(i) for i in range(start, start + n)]


def complete_kgraph(n: int, k: int) -> Hypergraph:
    """All k-subsets of ``{1..n}``."""
    if not 2 <= k <= n:
        raise BadParams(f"complete k-graph needs 2 <= k <= n, got n={n}, k={k}")
    return Hypergraph(itertools.combinations(_labels(n), k), _labels(n))


def star(n: int) -> Hypergraph:
    """The star S_n: centre ``1`` joined to leaves ``2..n``."""
    if n < 2:
        raise BadParams(f"a star needs n >= 2, got {n}")
    return Hypergraph([("1", str(i)) for i in range(2, n + 1)], _labels(n))


def path(n: int) -> Hypergraph:
    if n < 2:
        raise BadParams(f"a path needs n >= 2, got {n}")
    return Hypergraph([(str(i), str(i + 1)) for i in range(1, n)], _labels(n))


def cycle(n: int) -> Hypergraph:
    if n < 3:
        raise BadParams(f"a cycle needs n >= 3, got {n}")
    return cyclic_uniform(n, 2)


def complete_bipartite(a: int, b: int) -> Hypergraph:
    if a < 1 or b < 1:
        raise BadParams("complete bipartite parts must be non-empty")
    left, right = _labels(a), _labels(b, a + 1)
    return Hypergraph(itertools.product(left, right), left + right)


def perfect_matching(pairs: int) -> Hypergraph:
    if pairs < 1:
        raise BadParams("a matching needs at least one edge")
    return Hypergraph([(str(2 * i + 1), str(2 * i + 2)) for i in range(pairs)])


def cyclic_uniform(n: int, k: int) -> Hypergraph:
    """Edges ``{i, i+1, ..., i+k-1}`` mod n; k-uniform and k-regular for n > k."""
    if not 2 <= k < n:
        raise BadParams(f"cyclic k-graph needs 2 <= k < n, got n={n}, k={k}")
    labels = _labels(n)
    edges = [[labels[(i + j) % n] for j in range(k)] for i in range(n)]
    return Hypergraph(edges, labels)


def power_graph(G: Hypergraph, k: int) -> Hypergraph:
    """Pad every edge of the graph ``G`` with ``k - 2`` fresh vertices.

    The fresh vertices of edge ``i`` are labelled ``i_p1 .. i_p(k-2)``.
    """
    if k < 2:
        raise BadParams(f"power graph needs k >= 2, got {k}")
    if G.multi or any(len(e) != 2 for e in G.edges):
        raise NotAGraph("power graph is defined for simple 2-graphs")
    fresh = [[f"{i}_p{j}" for j in range(1, k - 1)] for i in range(G.m)]
    clash = set(itertools.chain.from_iterable(fresh)) & set(G.vertices)
    if clash:
        raise BadParams(f"fresh labels collide with existing vertices: {sorted(clash)}")
    vertices = list(G.vertices) + list(itertools.chain.from_iterable(fresh))
    edges = [list(G.edge_labels(i)) + fresh[i] for i in range(G.m)]
    return Hypergraph(edges, vertices)


@dataclass(frozen=True)
class HyperstarParams:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 2 or self.k < 2:
            raise BadParams(f"hyperstar needs n >= 2 and k >= 2, got n={self.n}, k={self.k}")

    @property
    def t(self) -> int:
        """Number of vertices of the hyperstar."""
        return (self.n - 1) * (self.k - 1) + 1


def _params(n, k=None) -> HyperstarParams:
    if isinstance(n, HyperstarParams):
        return n
    return HyperstarParams(n, k)


def hyperstar(n, k=None) -> Hypergraph:
    """The power graph ``(S_n)^k``.  Accepts ``HyperstarParams`` or ``(n, k)``."""
    p = _params(n, k)
    return power_graph(star(p.n), p.k)


def hyperstar_spectrum_closed(n, k=None) -> Spectrum:
    """Closed-form spectrum of ``(S_n)^k``.

    -1 with multiplicity (n-1)(k-2), k-2 with multiplicity n-2, and the two
    roots of x^2 - (k-2)x - (n-1)(k-1).  Integer roots are reported in
    ``exact_part``; an irreducible quadratic is kept as ``residual_poly``.
    """
    p = _params(n, k)
    n, k = p.n, p.k
    b, c = k - 2, (n - 1) * (k - 1)
    disc = b * b + 4 * c
    sq = math.sqrt(disc)
    r_plus, r_minus = (b + sq) / 2, (b - sq) / 2

    exact: Counter = Counter()
    exact[-1] += (n - 1) * (k - 2)
    exact[k - 2] += n - 2
    s = math.isqrt(disc)
    if s * s == disc and (b + s) % 2 == 0:
        exact[(b + s) // 2] += 1
        exact[(b - s) // 2] += 1
        residual = CharPoly((1,))
    else:
        residual = CharPoly((1, -b, -c))
    exact = Counter({v: m for v, m in exact.items() if m > 0})

    values = [-1.0] * ((n - 1) * (k - 2)) + [float(k - 2)] * (n - 2) + [r_plus, r_minus]
    values = np.sort(np.array(values))[::-1]
    return Spectrum(values, tuple(sorted(exact.items(), key=lambda t: -t[0])), residual)


def hyperstar_energy_closed(n, k=None) -> float:
    p = _params(n, k)
    n, k = p.n, p.k
    return (k - 2) * (2 * n - 3) + math.sqrt((k - 2) ** 2 + 4 * (n - 1) * (k - 1))


def hyperstar_extremal_bounds(t: int) -> tuple[float, float]:
    """Energy range ``(2 sqrt(t-1), 2(t-1))`` of hyperstars on t vertices."""
    if t < 2:
        raise BadParams(f"hyperstar vertex count must be >= 2, got {t}")
    return 2 * math.sqrt(t - 1), 2.0 * (t - 1)


def hyperstar_shapes(t: int) -> list[HyperstarParams]:
    """Every ``(n, k)`` whose hyperstar has exactly t vertices."""
    if t < 2:
        raise BadParams(f"hyperstar vertex count must be >= 2, got {t}")
    return [HyperstarParams((t - 1) // (k - 1) + 1, k)
            for k in range(2, t + 1) if (t - 1) % (k - 1) == 0]


# --------------------------------------------------------------------------
# binary operations on k-graphs

def _common_uniformity(H: Hypergraph, G: Hypergraph) -> int | None:
    for X in (H, G):
        if X.m and uniformity(X) is None:
            raise NotUniform("operation is defined for uniform hypergraphs only")
    kh, kg = uniformity(H), uniformity(G)
    if kh is not None and kg is not None and kh != kg:
        raise MismatchedUniformity(f"uniformities differ: {kh} vs {kg}")
    return kh if kh is not None else kg


def _pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def _product_vertices(H: Hypergraph, G: Hypergraph):
    labels = [_pair_label(v, u) for v in H.vertices for u in G.vertices]
    return labels, G.n


def direct_sum(H: Hypergraph, G: Hypergraph) -> Hypergraph:
    """Sum of two k-graphs on ``V(H) x V(G)``.

    Edges are ``{v} x e`` for every vertex v of H and edge e of G, then
    ``f x {u}`` for every edge f of H and vertex u of G.  Vertex ``(v, u)``
    gets index ``index(v) * |V(G)| + index(u)``, so the adjacency matrix is
    the Kronecker sum of the factors.
    """
    _common_uniformity(H, G)
    labels, ng = _product_vertices(H, G)
    edges = []
    for v in range(H.n):
        for e in G.edges:
            edges.append([v * ng + u for u in e])
    for f in H.edges:
        for u in range(G.n):
            edges.append([v * ng + u for v in f])
    return Hypergraph._from_indices(labels, edges, False)


def tensor_product(H: Hypergraph, G: Hypergraph, cap: int = PRODUCT_EDGE_CAP) -> Hypergraph:
    """Product of two k-graphs on ``V(H) x V(G)``.

    Each pair of ordered edges ``(v_1..v_k)``, ``(u_1..u_k)`` contributes the
    edge ``{(v_1,u_1), ..., (v_k,u_k)}``; equal outcomes collapse, so every
    pair of edges yields k! edges (one per bijection between them).
    """
    k = _common_uniformity(H, G)
    labels, ng = _product_vertices(H, G)
    if k is None:
        return Hypergraph._from_indices(labels, [], False)
    if math.factorial(k) * H.m * G.m > cap:
        raise SizeCapExceeded(
            f"product would have {math.factorial(k)}*{H.m}*{G.m} edges (cap {cap})")
    seen = set()
    edges = []
    for f in H.edges:
        fs = sorted(f)
        for e in G.edges:
            for perm in itertools.permutations(sorted(e)):
                edge = frozenset(v * ng + u for v, u in zip(fs, perm))
                if edge not in seen:
                    seen.add(edge)
                    edges.append(edge)
    return Hypergraph._from_indices(labels, edges, False)


def disjoint_union(*parts: Hypergraph) -> Hypergraph:
    """Disjoint union; labels are prefixed ``<part>.`` only when they clash."""
    all_labels = [v for P in parts for v in P.vertices]
    prefix = len(set(all_labels)) != len(all_labels)
    vertices, edges, offset = [], [], 0
    multi = any(P.multi for P in parts)
    for j, P in enumerate(parts):
        vertices.extend(f"{j}.{v}" if prefix else v for v in P.vertices)
        edges.extend([offset + i for i in e] for e in P.edges)
        offset += P.n
    return Hypergraph._from_indices(vertices, edges, multi)


# --------------------------------------------------------------------------
# random generators

def _count_available(n, s_min, s_max):
    return sum(math.comb(n, s) for s in range(s_min, s_max + 1))


def random_hypergraph(n: int, m: int, size_range: tuple[int, int], seed: int) -> Hypergraph:
    """``m`` distinct random edges on ``{1..n}`` with sizes uniform in range.

    Each draw picks a size uniformly among sizes that still have unused
    subsets, then a uniform subset of that size, rejecting repeats.
    Deterministic for a given seed.
    """
    s_min, s_max = size_range
    if not 2 <= s_min <= s_max <= n:
        raise InfeasibleParams(f"need 2 <= s_min <= s_max <= n, got {size_range} with n={n}")
    if m < 0 or m > _count_available(n, s_min, s_max):
        raise InfeasibleParams(f"cannot draw {m} distinct edges of sizes {size_range} on {n} vertices")
    rng = random.Random(seed)
    labels = _labels(n)
    remaining = {s: math.comb(n, s) for s in range(s_min, s_max + 1)}
    chosen: list[tuple[int, ...]] = []
    seen = set()
    while len(chosen) < m:
        sizes = [s for s, left in remaining.items() if left > 0]
        s = rng.choice(sizes)
        edge = tuple(sorted(rng.sample(range(n), s)))
        if edge in seen:
            continue
        seen.add(edge)
        remaining[s] -= 1
        chosen.append(edge)
    return Hypergraph([[labels[i] for i in e] for e in chosen], labels)


def random_uniform(n: int, m: int, k: int, seed: int) -> Hypergraph:
    return random_hypergraph(n, m, (k, k), seed)


def random_hypertree(m: int, size_range: tuple[int, int], seed: int) -> Hypergraph:
    """A random hypertree with ``m`` edges.

    Edges are attached one at a time, each sharing exactly one existing
    vertex, which produces every hypertree shape.
    """
    s_min, s_max = size_range
    if m < 1 or not 2 <= s_min <= s_max:
        raise InfeasibleParams(f"need m >= 1 and 2 <= s_min <= s_max, got m={m}, {size_range}")
    rng = random.Random(seed)
    count = 0
    edges = []

    def fresh(k):
        nonlocal count
        out = [str(count + i + 1) for i in range(k)]
        count += k
        return out

    edges.append(fresh(rng.randint(s_min, s_max)))
    for _ in range(m - 1):
        anchor = str(rng.randint(1, count))
        edges.append([anchor] + fresh(rng.randint(s_min, s_max) - 1))
    return Hypergraph(edges, _labels(count))
