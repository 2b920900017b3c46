"""Hypergraph data model, the ``.hg`` text format and structural queries.

A :class:`Hypergraph` stores an ordered vertex list (string labels) and an
ordered edge list.  Edges are kept as frozensets of dense vertex indices, so
edge ``i`` is addressed by position and vertex ``v`` by label.  In strict mode
the usual hypergraph rules apply (edges of size >= 2, no repeated edges);
multi mode admits repeated edges and edges with zero or one vertex, which is
what vertex deletion and edge division produce.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadIndex,
    DisconnectedInput,
    DuplicateIndex,
    EmptyHypergraph,
    EmptyQuery,
    MalformedCut,
    MalformedSpec,
    NoEdges,
    ParseError,
    UnknownVertex,
    ValidationError,
)

__all__ = [
    "Hypergraph",
    "DivisionSpec",
    "WeakCutSpec",
    "Verdict",
    "parse_hypergraph",
    "read_hypergraph",
    "to_hg",
    "degree",
    "degrees",
    "set_degree",
    "degree_stats",
    "rank_corank",
    "uniformity",
    "is_linear",
    "is_connected",
    "components",
    "is_hypertree",
    "is_weak_cut",
    "DEFAULT_WEAK_CUT_BUDGET",
]

DEFAULT_WEAK_CUT_BUDGET = 10**6

_LABEL_RE = re.compile(r"[^\s#]+")
_EMPTY_EDGE = "{}"
_DIRECTIVE = "vertices:"


def _check_label(label: str) -> str:
    if not _LABEL_RE.fullmatch(label) or label in (_EMPTY_EDGE, _DIRECTIVE):
        raise ValidationError(f"invalid vertex label {label!r}")
    return label


class Hypergraph:
    """An immutable (multi-)hypergraph.

    Parameters
    ----------
    edges : iterable of iterables
        Each edge is an iterable of vertex labels.  Non-string labels are
        converted with ``str``.
    vertices : iterable, optional
        The full ordered vertex set.  Needed for isolated vertices; when
        omitted, vertices are ordered by first appearance in ``edges``.
    multi : bool, default False
        Build a multi-hypergraph instead of a strict hypergraph.
    """

    __slots__ = ("_vertices", "_index", "_edges", "_multi")

    def __init__(self, edges: Iterable[Iterable] = (), vertices: Iterable | None = None,
                 *, multi: bool = False):
        raw_edges = [[str(v) for v in e] for e in edges]
        if vertices is None:
            order: dict[str, int] = {}
            for e in raw_edges:
                for v in e:
                    order.setdefault(v, len(order))
            labels = tuple(order)
        else:
            labels = tuple(str(v) for v in vertices)
        index: dict[str, int] = {}
        for v in labels:
            _check_label(v)
            if v in index:
                raise ValidationError(f"duplicate vertex label {v!r}")
            index[v] = len(index)

        packed = []
        for pos, e in enumerate(raw_edges):
            members = set(e)
            if len(members) != len(e):
                raise ValidationError(f"edge {pos} repeats a vertex")
            unknown = members - index.keys()
            if unknown:
                raise ValidationError(
                    f"edge {pos} uses undeclared vertices {sorted(unknown)}")
            packed.append(frozenset(index[v] for v in members))

        self._vertices = labels
        self._index = index
        self._edges = tuple(packed)
        self._multi = bool(multi)
        if not multi:
            self._validate_strict()

    @classmethod
    def _from_indices(cls, vertices: Sequence[str], edges: Iterable[Iterable[int]],
                      multi: bool) -> "Hypergraph":
        # trusted path for derived hypergraphs; labels are already valid
        self = object.__new__(cls)
        self._vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self._vertices)}
        self._edges = tuple(frozenset(e) for e in edges)
        self._multi = multi
        if not multi:
            self._validate_strict()
        return self

    def _validate_strict(self):
        seen = set()
        for pos, e in enumerate(self._edges):
            if len(e) < 2:
                raise ValidationError(f"edge {pos} has {len(e)} vertices; strict edges need >= 2")
            if e in seen:
                raise ValidationError(f"duplicate edge {self.edge_labels(pos)}")
            seen.add(e)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[frozenset[int], ...]:
        """Edges as frozensets of vertex indices."""
        return self._edges

    @property
    def multi(self) -> bool:
        return self._multi

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownVertex(str(label)) from None

    def label(self, i: int) -> str:
        return self._vertices[i]

    def edge(self, i: int) -> frozenset[int]:
        if not 0 <= i < len(self._edges):
            raise BadIndex(f"edge index {i} out of range for {len(self._edges)} edges")
        return self._edges[i]

    def edge_labels(self, i: int) -> tuple[str, ...]:
        return tuple(self._vertices[j] for j in sorted(self.edge(i)))

    def edge_list(self) -> list[tuple[str, ...]]:
        return [self.edge_labels(i) for i in range(self.m)]

    def as_multi(self) -> "Hypergraph":
        if self._multi:
            return self
        return Hypergraph._from_indices(self._vertices, self._edges, True)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self._vertices == other._vertices and self._edges == other._edges
                and self._multi == other._multi)

    def __hash__(self):
        return hash((self._vertices, self._edges, self._multi))

    def __repr__(self):
        kind = "multi" if self._multi else "strict"
        return f"<Hypergraph n={self.n} m={self.m} {kind}>"


# --------------------------------------------------------------------------
# .hg format

def parse_hypergraph(text: str, *, multi: bool = False) -> Hypergraph:
    """Parse ``.hg`` text.

    ``#`` starts a comment.  An optional first directive ``vertices: a b c``
    fixes the ordered vertex set; every other non-empty line is one edge of
    whitespace-separated labels, with ``{}`` standing for the empty edge.
    """
    vertices = None
    edges = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith(_DIRECTIVE):
            if seen_content:
                raise ParseError("'vertices:' directive must be the first line", lineno)
            vertices = line[len(_DIRECTIVE):].split()
            seen_content = True
            continue
        tokens = line.split()
        seen_content = True
        if tokens == [_EMPTY_EDGE]:
            edges.append(())
            continue
        for tok in tokens:
            if tok in (_EMPTY_EDGE, _DIRECTIVE):
                raise ParseError(f"unexpected token {tok!r}", lineno)
        if not multi and len(tokens) < 2:
            raise ValidationError(f"line {lineno}: strict edges need >= 2 vertices")
        edges.append(tokens)
    return Hypergraph(edges, vertices, multi=multi)


def read_hypergraph(path, *, multi: bool = False) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read(), multi=multi)


def to_hg(H: Hypergraph, header: Iterable[str] = ()) -> str:
    """Serialize to ``.hg`` text.  ``header`` lines become leading comments."""
    out = [f"# {line}" for line in header]
    out.append(" ".join([_DIRECTIVE] + list(H.vertices)))
    for i in range(H.m):
        labels = H.edge_labels(i)
        out.append(" ".join(labels) if labels else _EMPTY_EDGE)
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# degrees and sizes

def degrees(H: Hypergraph) -> list[int]:
    deg = [0] * H.n
    for e in H.edges:
        for v in e:
            deg[v] += 1
    return deg


def degree(H: Hypergraph, v) -> int:
    i = H.index(v)
    return sum(1 for e in H.edges if i in e)


def set_degree(H: Hypergraph, alpha: Iterable) -> int:
    """Number of edges (with multiplicity) containing every vertex of ``alpha``.

    For a pair ``{i, j}`` this is the codegree, the adjacency entry a_ij.
    """
    idx = frozenset(H.index(v) for v in alpha)
    if not idx:
        raise EmptyQuery("vertex set query must be non-empty")
    return sum(1 for e in H.edges if idx <= e)


def degree_stats(H: Hypergraph) -> tuple[int, int, Fraction]:
    """Return ``(max_degree, min_degree, average_degree)``; the average is exact."""
    if H.n == 0:
        raise EmptyHypergraph("degree statistics need at least one vertex")
    deg = degrees(H)
    return max(deg), min(deg), Fraction(sum(deg), H.n)


def rank_corank(H: Hypergraph) -> tuple[int, int]:
    if H.m == 0:
        raise NoEdges("rank is undefined for an edgeless hypergraph")
    sizes = [len(e) for e in H.edges]
    return max(sizes), min(sizes)


def uniformity(H: Hypergraph) -> int | None:
    """Common edge size, or None when edgeless or mixed."""
    sizes = {len(e) for e in H.edges}
    return sizes.pop() if len(sizes) == 1 else None


def is_linear(H: Hypergraph) -> bool:
    return all(len(a & b) <= 1 for a, b in itertools.combinations(H.edges, 2))


# --------------------------------------------------------------------------
# connectivity

class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def union_all(self, members):
        it = iter(members)
        first = next(it, None)
        if first is None:
            return
        for x in it:
            self.union(first, x)

    def count(self, n):
        return len({self.find(i) for i in range(n)})


def _vertex_dsu(n: int, edges: Iterable[Iterable[int]]) -> _DSU:
    dsu = _DSU(n)
    for e in edges:
        dsu.union_all(e)
    return dsu


def is_connected(H: Hypergraph) -> bool:
    """Walk connectivity: an isolated vertex disconnects H unless n == 1."""
    if H.n == 0:
        raise EmptyHypergraph("connectivity needs at least one vertex")
    return _vertex_dsu(H.n, H.edges).count(H.n) == 1


def components(H: Hypergraph) -> list[list[int]]:
    """Vertex index lists of the connected components, ordered by first vertex."""
    dsu = _vertex_dsu(H.n, H.edges)
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(dsu.find(v), []).append(v)
    return sorted(groups.values(), key=lambda g: g[0])


def is_hypertree(H: Hypergraph) -> bool:
    """Connected and free of Berge cycles.

    Checked on the vertex-edge incidence graph, which must be a tree:
    connected with exactly ``n + m - 1`` incidences.
    """
    if H.n == 0:
        return False
    incidences = sum(len(e) for e in H.edges)
    if incidences != H.n + H.m - 1:
        return False
    dsu = _DSU(H.n + H.m)
    for j, e in enumerate(H.edges):
        for v in e:
            dsu.union(v, H.n + j)
    return dsu.count(H.n + H.m) == 1


# --------------------------------------------------------------------------
# divisions and weak cuts

@dataclass(frozen=True)
class DivisionSpec:
    """Split of edge ``edge_index`` into two disjoint non-empty halves."""

    edge_index: int
    left: frozenset[str]
    right: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(str(v) for v in self.left))
        object.__setattr__(self, "right", frozenset(str(v) for v in self.right))

    @classmethod
    def from_left(cls, H: Hypergraph, edge_index: int, left: Iterable) -> "DivisionSpec":
        members = set(H.edge_labels(edge_index))
        left = {str(v) for v in left}
        return cls(edge_index, frozenset(left), frozenset(members - left))

    @classmethod
    def split_off(cls, H: Hypergraph, edge_index: int, v) -> "DivisionSpec":
        """The division ``(e, e - {v}, {v})``."""
        members = set(H.edge_labels(edge_index))
        return cls(edge_index, frozenset(members - {str(v)}), frozenset({str(v)}))

    def resolve(self, H: Hypergraph) -> tuple[int, frozenset[int], frozenset[int]]:
        try:
            e = H.edge(self.edge_index)
        except BadIndex as exc:
            raise MalformedSpec(str(exc)) from None
        try:
            left = frozenset(H.index(v) for v in self.left)
            right = frozenset(H.index(v) for v in self.right)
        except UnknownVertex as exc:
            raise MalformedSpec(f"division of edge {self.edge_index}: {exc}") from None
        if not left or not right:
            raise MalformedSpec(f"division of edge {self.edge_index} has an empty half")
        if left & right:
            raise MalformedSpec(f"division halves of edge {self.edge_index} overlap")
        if left | right != e:
            raise MalformedSpec(f"division halves do not cover edge {self.edge_index}")
        return self.edge_index, left, right


@dataclass(frozen=True)
class WeakCutSpec:
    """A candidate cut ``(F, F', F'')`` as one :class:`DivisionSpec` per edge."""

    divisions: tuple[DivisionSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "divisions", tuple(self.divisions))

    @classmethod
    def single(cls, H: Hypergraph, edge_index: int, v) -> "WeakCutSpec":
        return cls((DivisionSpec.split_off(H, edge_index, v),))

    @property
    def F(self) -> list[int]:
        return [d.edge_index for d in self.divisions]

    @property
    def F_left(self) -> list[frozenset[str]]:
        return [d.left for d in self.divisions]

    @property
    def F_right(self) -> list[frozenset[str]]:
        return [d.right for d in self.divisions]

    def is_vertex_split(self) -> bool:
        """True for the single-edge form ``(e, e - {v}, {v})`` (either side)."""
        if len(self.divisions) != 1:
            return False
        d = self.divisions[0]
        return len(d.left) == 1 or len(d.right) == 1


def _resolve_all(H: Hypergraph, specs: Sequence[DivisionSpec]):
    resolved = [s.resolve(H) for s in specs]
    idx = [r[0] for r in resolved]
    if len(set(idx)) != len(idx):
        raise DuplicateIndex(f"edge indices repeat in division list {idx}")
    return resolved


def _divided_edges(H: Hypergraph, resolved) -> list[frozenset[int]]:
    replace = {i: (left, right) for i, left, right in resolved}
    out = []
    for j, e in enumerate(H.edges):
        if j in replace:
            out.extend(replace[j])
        else:
            out.append(e)
    return out


def apply_divisions(H: Hypergraph, specs: Sequence[DivisionSpec]) -> Hypergraph:
    """Replace each selected edge by its two halves (in place in the edge order)."""
    resolved = _resolve_all(H, specs)
    return Hypergraph._from_indices(H.vertices, _divided_edges(H, resolved), True)


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget_exceeded"


def _edge_splits(e: frozenset[int]) -> list[tuple[frozenset[int], frozenset[int]]]:
    # unordered splits: the smallest member always lands in the left half
    members = sorted(e)
    head, rest = members[0], members[1:]
    splits = []
    for r in range(len(rest)):
        for extra in itertools.combinations(rest, r):
            left = frozenset((head,) + extra)
            splits.append((left, e - left))
    return splits


def _split_count(size: int) -> int:
    return 2 ** (size - 1) - 1


def is_weak_cut(H: Hypergraph, cut: WeakCutSpec,
                budget: int = DEFAULT_WEAK_CUT_BUDGET) -> Verdict:
    """Decide whether ``cut`` is a weak cut of the connected hypergraph ``H``.

    The divided hypergraph must be disconnected, and for every proper
    non-empty subset P of the cut edges, *every* way of dividing the edges of
    P must leave H connected.  The search is exhaustive; when the number of
    candidate divisions exceeds ``budget`` nothing is enumerated and
    ``Verdict.BUDGET_EXCEEDED`` is returned.
    """
    if not cut.divisions:
        raise MalformedCut("a cut needs at least one edge")
    try:
        resolved = _resolve_all(H, cut.divisions)
    except MalformedSpec as exc:
        raise MalformedCut(str(exc)) from None
    if H.n == 0 or not is_connected(H):
        raise DisconnectedInput("weak cuts are defined for connected hypergraphs")

    divided = _divided_edges(H, resolved)
    if _vertex_dsu(H.n, divided).count(H.n) == 1:
        return Verdict.NO

    F = [r[0] for r in resolved]
    subsets = [P for size in range(1, len(F)) for P in itertools.combinations(F, size)]
    total = sum(math.prod(_split_count(len(H.edges[i])) for i in P) for P in subsets)
    if total > budget:
        return Verdict.BUDGET_EXCEEDED

    for P in subsets:
        keep = [e for j, e in enumerate(H.edges) if j not in P]
        base = _vertex_dsu(H.n, keep)
        for choice in itertools.product(*(_edge_splits(H.edges[i]) for i in P)):
            dsu = _DSU(H.n)
            dsu.parent = list(base.parent)
            for left, right in choice:
                dsu.union_all(left)
                dsu.union_all(right)
            if dsu.count(H.n) > 1:
                return Verdict.NO
    return Verdict.YES


def iter_vertex_splits(H: Hypergraph) -> Iterator[tuple[int, str]]:
    """All ``(edge_index, vertex_label)`` incidence pairs."""
    for j in range(H.m):
        for v in H.edge_labels(j):
            yield j, v
