import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperspec.constructions import (
    complete_kgraph,
    hyperstar,
    random_hypertree,
)
from hyperspec.core import (
    DivisionSpec,
    Hypergraph,
    Verdict,
    WeakCutSpec,
    apply_divisions,
    components,
    degree,
    degree_stats,
    degrees,
    is_connected,
    is_hypertree,
    is_linear,
    is_weak_cut,
    iter_vertex_splits,
    parse_hypergraph,
    rank_corank,
    set_degree,
    to_hg,
    uniformity,
)
from hyperspec.errors import (
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
from strategies import hypergraphs


# ---------------------------------------------------------------- parsing

def test_parse_basic():
    H = parse_hypergraph("1 2 3\n2 3 4")
    assert (H.n, H.m) == (4, 2)
    assert H.vertices == ("1", "2", "3", "4")


def test_parse_comments_and_directive():
    H = parse_hypergraph("# header\nvertices: c b a z  # z isolated\n\na b\nb c # tail\n")
    assert H.vertices == ("c", "b", "a", "z")
    assert H.edge_list() == [("b", "a"), ("c", "b")]


def test_parse_strict_rejects_duplicate_edge():
    with pytest.raises(ValidationError):
        parse_hypergraph("a b\na b")


def test_parse_strict_rejects_small_edges():
    with pytest.raises(ValidationError):
        parse_hypergraph("a b\nc")
    with pytest.raises(ValidationError):
        parse_hypergraph("vertices: a b\n{}")


def test_parse_duplicate_member_invalid_in_both_modes():
    for multi in (False, True):
        with pytest.raises(ValidationError):
            parse_hypergraph("a b a", multi=multi)


def test_parse_multi_mode_allows_small_and_repeated_edges():
    H = parse_hypergraph("vertices: a b c\na b\na b\nc\n{}\n", multi=True)
    assert H.m == 4
    assert sorted(len(e) for e in H.edges) == [0, 1, 2, 2]


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_hypergraph("a b\nvertices: a b")
    with pytest.raises(ParseError):
        parse_hypergraph("a {} b", multi=True)
    with pytest.raises(ValidationError):
        parse_hypergraph("vertices: a b\na c")
    with pytest.raises(ValidationError):
        parse_hypergraph("vertices: a a\na b")


def test_parse_h6_list():
    H = parse_hypergraph("\n".join(" ".join(w) for w in
                                   "135 136 145 146 235 236 245 246".split()))
    assert (H.n, H.m) == (6, 8)


def test_constructor_and_accessors():
    H = Hypergraph([[1, 2], [2, 3, 4]], vertices=[1, 2, 3, 4, 5])
    assert H.index(3) == 2 and H.label(4) == "5"
    assert H.edge_labels(1) == ("2", "3", "4")
    with pytest.raises(UnknownVertex):
        H.index("9")
    with pytest.raises(BadIndex):
        H.edge(2)
    assert H == Hypergraph([["1", "2"], ["2", "3", "4"]], vertices="1 2 3 4 5".split())
    assert H != H.as_multi()
    assert hash(H) == hash(Hypergraph([[1, 2], [2, 3, 4]], vertices=[1, 2, 3, 4, 5]))
    assert "n=5 m=2" in repr(H)


@given(hypergraphs())
def test_serialization_round_trip(H):
    assert parse_hypergraph(to_hg(H, ["comment"])) == H


def test_multi_round_trip():
    H = parse_hypergraph("vertices: a b c\n{}\na\na b\na b", multi=True)
    assert parse_hypergraph(to_hg(H), multi=True) == H


# ---------------------------------------------------------------- degrees

def test_degrees_complete():
    K = complete_kgraph(5, 3)
    assert all(degree(K, v) == 6 for v in K.vertices)
    assert set_degree(K, ["1", "2"]) == 3
    assert degree_stats(K) == (6, 6, Fraction(6))


def test_degrees_examples():
    assert degree(Hypergraph([[1, 2, 3]]), 1) == 1
    S = hyperstar(4, 3)
    assert degree(S, "1") == 3
    assert degree_stats(S) == (3, 1, Fraction(9, 7))
    assert degree_stats(Hypergraph([[1, 2]], [1, 2, 3])) == (1, 0, Fraction(2, 3))


def test_set_degree_h6(load):
    H = load("h6")
    assert set_degree(H, ["1", "2"]) == 0
    assert set_degree(H, ["1", "3"]) == 2


def test_degree_errors():
    H = Hypergraph([[1, 2]])
    with pytest.raises(UnknownVertex):
        degree(H, 7)
    with pytest.raises(EmptyQuery):
        set_degree(H, [])
    with pytest.raises(EmptyHypergraph):
        degree_stats(Hypergraph())
    with pytest.raises(NoEdges):
        rank_corank(Hypergraph([], [1]))


@given(hypergraphs())
def test_handshake_and_set_degree(H):
    assert sum(degrees(H)) == sum(len(e) for e in H.edges)
    for u, v in itertools.combinations(H.vertices, 2):
        assert set_degree(H, [u, v]) == set_degree(H, [v, u])
    for v in H.vertices:
        assert set_degree(H, [v]) == degree(H, v)


def test_rank_corank():
    assert rank_corank(complete_kgraph(5, 3)) == (3, 3)
    H = parse_hypergraph("vertices: 0 1 2 3 4 5 6 7 8 9\n0 1 2\n2 3 4 5 6 7\n7 8 9")
    assert rank_corank(H) == (6, 3)
    M = parse_hypergraph("vertices: a b\na b\n{}", multi=True)
    assert rank_corank(M)[1] == 0
    assert uniformity(complete_kgraph(5, 4)) == 4
    assert uniformity(H) is None


def test_linearity():
    assert is_linear(hyperstar(4, 3))
    assert not is_linear(complete_kgraph(5, 3))
    assert is_linear(Hypergraph([], [1, 2]))


# ----------------------------------------------------------- connectivity

def test_connectivity(load):
    assert is_connected(hyperstar(4, 3))
    assert not is_connected(Hypergraph([[1, 2], [3, 4]]))
    assert is_connected(load("bridged"))
    assert not is_connected(Hypergraph([[1, 2]], [1, 2, 3]))
    assert is_connected(Hypergraph([], [1]))
    assert components(Hypergraph([[1, 2], [3, 4]], [1, 2, 3, 4, 5])) == [[0, 1], [2, 3], [4]]


def test_hypertree_examples():
    assert is_hypertree(hyperstar(4, 3))
    assert is_hypertree(Hypergraph([[1, 2, 3]]))
    assert not is_hypertree(Hypergraph([[1, 2, 3], [2, 3, 4]]))
    assert not is_hypertree(Hypergraph([[1, 2], [2, 3], [1, 3]]))
    assert not is_hypertree(Hypergraph([[1, 2], [3, 4]]))


def _has_berge_cycle(H):
    # brute force: look for a closed alternating vertex/edge sequence
    # with distinct edges and distinct vertices, length >= 2
    for length in range(2, H.m + 1):
        for edges in itertools.permutations(range(H.m), length):
            if edges[0] != min(edges):
                continue
            pools = [H.edges[edges[i]] & H.edges[edges[(i + 1) % length]] for i in range(length)]
            for picks in itertools.product(*pools):
                if len(set(picks)) == length:
                    return True
    return False


@given(st.integers(1, 5), st.integers(0, 10**6), st.booleans())
def test_hypertree_matches_brute_force(m, seed, perturb):
    T = random_hypertree(m, (2, 3), seed)
    if perturb and T.n >= 3:
        extra = [T.vertices[0], T.vertices[-1]]
        edges = T.edge_list()
        if tuple(sorted(extra)) not in [tuple(sorted(e)) for e in edges]:
            T = Hypergraph(edges + [extra], T.vertices)
    expected = is_connected(T) and not _has_berge_cycle(T)
    assert is_hypertree(T) == expected


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_hypertrees_are_linear(m, seed):
    T = random_hypertree(m, (2, 4), seed)
    assert is_hypertree(T) and is_linear(T)


# ---------------------------------------------------------- divisions/cuts

def test_division_spec_resolution():
    H = parse_hypergraph("vertices: 0 1 2 3 4 5 6 7 8 9\n0 1 2\n2 3 4 5 6 7\n7 8 9")
    spec = DivisionSpec.from_left(H, 1, ["2", "3", "4", "5"])
    assert spec.right == frozenset({"6", "7"})
    D = apply_divisions(H, [spec])
    assert D.multi and D.m == 4
    assert sorted(D.edge_list()) == sorted(
        [("0", "1", "2"), ("2", "3", "4", "5"), ("6", "7"), ("7", "8", "9")])


def test_division_spec_errors():
    H = Hypergraph([[1, 2, 3], [3, 4]])
    bad = [
        DivisionSpec(0, {"1"}, {"2"}),          # does not cover
        DivisionSpec(0, {"1", "2"}, {"2", "3"}),  # overlap
        DivisionSpec(0, set(), {"1", "2", "3"}),  # empty half
        DivisionSpec(5, {"1"}, {"2"}),          # bad index
        DivisionSpec(0, {"1", "9"}, {"2", "3"}),  # unknown label
    ]
    for spec in bad:
        with pytest.raises(MalformedSpec):
            spec.resolve(H)
    s = DivisionSpec(0, {"1"}, {"2", "3"})
    with pytest.raises(DuplicateIndex):
        apply_divisions(H, [s, s])


def test_weak_cut_single_edge():
    H = Hypergraph([[1, 2, 3]])
    cut = WeakCutSpec([DivisionSpec(0, {"1", "2"}, {"3"})])
    assert is_weak_cut(H, cut) is Verdict.YES


def test_weak_cut_negative_and_errors():
    K = complete_kgraph(5, 3)
    assert is_weak_cut(K, WeakCutSpec.single(K, 0, "1")) is Verdict.NO
    with pytest.raises(DisconnectedInput):
        is_weak_cut(Hypergraph([[1, 2], [3, 4]]), WeakCutSpec.single(Hypergraph([[1, 2], [3, 4]]), 0, "1"))
    with pytest.raises(MalformedCut):
        is_weak_cut(K, WeakCutSpec([]))
    with pytest.raises(MalformedCut):
        is_weak_cut(K, WeakCutSpec([DivisionSpec(0, {"1"}, {"2"})]))


def test_weak_cut_two_edges():
    # cycle 1-2-3-1: cutting two of its edges disconnects, and no single
    # divided edge does
    C = Hypergraph([[1, 2], [2, 3], [3, 1]])
    cut = WeakCutSpec([DivisionSpec(0, {"1"}, {"2"}), DivisionSpec(1, {"2"}, {"3"})])
    assert is_weak_cut(C, cut) is Verdict.YES
    assert is_weak_cut(C, WeakCutSpec([DivisionSpec(0, {"1"}, {"2"})])) is Verdict.NO


def test_weak_cut_budget():
    K = complete_kgraph(6, 4)
    cut = WeakCutSpec([DivisionSpec.split_off(K, j, K.edge_labels(j)[0]) for j in range(6)])
    assert is_weak_cut(K, cut, budget=10) in (Verdict.NO, Verdict.BUDGET_EXCEEDED)
    # the divided graph stays connected, so the answer is NO before any search
    assert is_weak_cut(K, cut, budget=0) is Verdict.NO
    T = Hypergraph([[1, 2, 3], [3, 4, 5]])
    two = WeakCutSpec([DivisionSpec(0, {"1", "2"}, {"3"}), DivisionSpec(1, {"3"}, {"4", "5"})])
    assert is_weak_cut(T, two, budget=1) is Verdict.BUDGET_EXCEEDED
    assert is_weak_cut(T, two) is Verdict.NO


def test_degree_one_vertex_split_is_weak_cut():
    H = Hypergraph([[1, 2, 3], [2, 3, 4], [3, 4, 5]])
    assert is_weak_cut(H, WeakCutSpec.single(H, 0, "1")) is Verdict.YES
    assert is_weak_cut(H, WeakCutSpec.single(H, 2, "5")) is Verdict.YES


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_hypertree_vertex_splits_are_weak_cuts(m, seed):
    T = random_hypertree(m, (2, 4), seed)
    for j, v in iter_vertex_splits(T):
        assert is_weak_cut(T, WeakCutSpec.single(T, j, v)) is Verdict.YES
