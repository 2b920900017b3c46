import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperspec.constructions import (
    HyperstarParams,
    complete_bipartite,
    complete_kgraph,
    cycle,
    cyclic_uniform,
    direct_sum,
    disjoint_union,
    hyperstar,
    hyperstar_energy_closed,
    hyperstar_extremal_bounds,
    hyperstar_shapes,
    hyperstar_spectrum_closed,
    path,
    perfect_matching,
    power_graph,
    random_hypergraph,
    random_hypertree,
    random_uniform,
    star,
    tensor_product,
)
from hyperspec.core import Hypergraph, degree, is_hypertree, uniformity
from hyperspec.errors import (
    BadParams,
    InfeasibleParams,
    MismatchedUniformity,
    NotAGraph,
    NotUniform,
    SizeCapExceeded,
)
from hyperspec.spectra import adjacency_matrix, energy, spectrum_numeric


def spec(H):
    return spectrum_numeric(adjacency_matrix(H)).values


def pair_edges(text):
    # "1a 1b 1c" -> {"(1,a)", "(1,b)", "(1,c)"}
    return frozenset(f"({t[0]},{t[1]})" for t in text.split())


# ------------------------------------------------------------ simple families

def test_complete_kgraph():
    K = complete_kgraph(5, 3)
    assert K.m == 10 and uniformity(K) == 3
    assert energy(K).exact_energy == 24
    assert complete_kgraph(5, 4).m == 5
    assert energy(complete_kgraph(5, 4)).exact_energy == 24
    assert energy(complete_kgraph(4, 4)).exact_energy == 6
    with pytest.raises(BadParams):
        complete_kgraph(3, 4)
    with pytest.raises(BadParams):
        complete_kgraph(3, 1)


def test_graph_families():
    assert star(4).m == 3 and degree(star(4), "1") == 3
    assert path(3).m == 2 and cycle(5).m == 5
    assert complete_bipartite(2, 3).m == 6
    assert perfect_matching(4).n == 8
    C = cyclic_uniform(6, 3)
    assert C.m == 6 and all(degree(C, v) == 3 for v in C.vertices)


def test_power_graph():
    S = power_graph(star(4), 3)
    assert (S.n, S.m) == (7, 3)
    G = path(3)
    assert power_graph(G, 2) == G
    P = power_graph(G, 3)
    assert (P.n, P.m, uniformity(P)) == (5, 2, 3)
    assert "0_p1" in P.vertices
    with pytest.raises(NotAGraph):
        power_graph(complete_kgraph(4, 3), 4)


# ---------------------------------------------------------------- hyperstars

def test_hyperstar_examples():
    S = hyperstar(4, 3)
    assert (S.n, degree(S, "1")) == (7, 3)
    assert hyperstar(HyperstarParams(4, 3)) == S
    assert hyperstar(2, 5).m == 1 and hyperstar(2, 5).n == 5
    assert hyperstar(5, 2) == star(5)
    assert HyperstarParams(4, 3).t == 7
    with pytest.raises(BadParams):
        HyperstarParams(1, 3)


def test_hyperstar_closed_spectrum_examples():
    sp = hyperstar_spectrum_closed(4, 3)
    assert np.allclose(sp.values, [3, 1, 1, -1, -1, -1, -2])
    assert sp.is_integral
    st2 = hyperstar_spectrum_closed(5, 2)
    assert np.allclose(st2.values, [2, 0, 0, 0, -2])
    st3 = hyperstar_spectrum_closed(4, 2)
    assert np.allclose(st3.values, [math.sqrt(3), 0, 0, -math.sqrt(3)])
    assert not st3.is_integral
    one = hyperstar_spectrum_closed(2, 5)
    assert np.allclose(one.values, [4, -1, -1, -1, -1])


def test_hyperstar_energy_examples():
    assert hyperstar_energy_closed(4, 3) == pytest.approx(10)
    for t in range(2, 10):
        assert hyperstar_energy_closed(t, 2) == pytest.approx(2 * math.sqrt(t - 1))
        assert hyperstar_energy_closed(2, t) == pytest.approx(2 * (t - 1))


def test_extremal_bounds():
    lo, hi = hyperstar_extremal_bounds(7)
    assert lo == pytest.approx(2 * math.sqrt(6)) and hi == 12
    assert hyperstar_extremal_bounds(2) == (2.0, 2.0)
    assert hyperstar_extremal_bounds(5) == (4.0, 8.0)
    assert {(p.n, p.k) for p in hyperstar_shapes(7)} == {(7, 2), (4, 3), (3, 4), (2, 7)}
    with pytest.raises(BadParams):
        hyperstar_extremal_bounds(1)


@pytest.mark.parametrize("n,k", list(itertools.product(range(2, 9), range(2, 9))))
def test_hyperstar_closed_form_vs_eigensolver(n, k):
    numeric = spec(hyperstar(n, k))
    closed = hyperstar_spectrum_closed(n, k).values
    assert len(numeric) == (n - 1) * (k - 1) + 1
    assert np.max(np.abs(numeric - closed)) <= 1e-9
    assert abs(np.abs(numeric).sum() - hyperstar_energy_closed(n, k)) <= 1e-9


# ------------------------------------------------------------ sum and product

def test_sum_example(load):
    H, G = load("sum_h"), load("sum_g")
    S = direct_sum(H, G)
    assert (S.n, S.m) == (12, 10)
    printed = ["1a 1b 1c", "1a 2a 3a", "2a 2b 2c", "1b 2b 3b", "3a 3b 3c",
               "1c 2c 3c", "4a 4b 4c", "2a 3a 4a", "2b 3b 4b", "2c 3c 4c"]
    got = {frozenset(S.edge_labels(i)) for i in range(S.m)}
    assert got == {pair_edges(t) for t in printed}


def test_product_example(load):
    H, G = load("sum_h"), load("sum_g")
    P = tensor_product(H, G)
    assert (P.n, P.m) == (12, 12)
    printed = ["1a 2b 3c", "2a 3b 4c", "1a 2c 3b", "2a 3c 4b", "1b 2a 3c", "2b 3a 4c",
               "1b 2c 3a", "2b 3c 4a", "1c 2a 3b", "2c 3a 4b", "1c 2b 3a", "2c 3b 4a"]
    got = {frozenset(P.edge_labels(i)) for i in range(P.m)}
    assert got == {pair_edges(t) for t in printed}


def test_k2_sum_and_product():
    K2 = Hypergraph([["1", "2"]])
    assert np.allclose(spec(direct_sum(K2, K2)), [2, 0, 0, -2])
    P = tensor_product(K2, Hypergraph([["a", "b"]]))
    assert P.m == 2
    assert {frozenset(P.edge_labels(i)) for i in range(2)} == {
        frozenset({"(1,a)", "(2,b)"}), frozenset({"(1,b)", "(2,a)"})}
    assert np.allclose(spec(P), [1, 1, -1, -1])


def test_sum_with_edgeless_factor():
    H = complete_kgraph(4, 3)
    G = Hypergraph([], ["x"])
    S = direct_sum(H, G)
    assert S.m == H.m * G.n


def test_operation_errors():
    with pytest.raises(NotUniform):
        direct_sum(Hypergraph([[1, 2], [2, 3, 4]]), complete_kgraph(3, 2))
    with pytest.raises(MismatchedUniformity):
        tensor_product(complete_kgraph(3, 2), complete_kgraph(3, 3))
    with pytest.raises(SizeCapExceeded):
        tensor_product(complete_kgraph(6, 4), complete_kgraph(6, 4), cap=1000)


def _kron_sum_oracle(H, G):
    AH, AG = adjacency_matrix(H), adjacency_matrix(G)
    return np.kron(AH, np.eye(G.n, dtype=np.int64)) + np.kron(np.eye(H.n, dtype=np.int64), AG)


@given(st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_sum_matrix_is_kronecker_sum(k, seed):
    H = random_uniform(4, 3, k, seed)
    G = random_uniform(3 + (k == 3), 2, k, seed + 1)
    assert (adjacency_matrix(direct_sum(H, G)) == _kron_sum_oracle(H, G)).all()


@given(st.sampled_from([2, 3, 4]), st.integers(0, 10**6))
def test_product_edge_count(k, seed):
    H = random_uniform(k + 1, 2, k, seed)
    G = random_uniform(k + 1, 2, k, seed + 1)
    assert tensor_product(H, G).m == math.factorial(k) * H.m * G.m


@given(st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_product_matrix_is_kronecker(k, seed):
    # k >= 4 is only measured (see the verify suite), never asserted
    H = random_uniform(k + 1, 2, k, seed)
    G = random_uniform(k + 1, 2, k, seed + 1)
    want = np.kron(adjacency_matrix(H), adjacency_matrix(G))
    assert (adjacency_matrix(tensor_product(H, G)) == want).all()


@given(st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_sum_and_product_spectra(k, seed):
    H = random_uniform(5, 3, k, seed)
    G = random_uniform(4, 2, k, seed + 7)
    mu, lam = spec(H), spec(G)
    want_sum = np.sort(np.add.outer(mu, lam).ravel())[::-1]
    want_prod = np.sort(np.multiply.outer(mu, lam).ravel())[::-1]
    assert np.max(np.abs(spec(direct_sum(H, G)) - want_sum)) <= 1e-6
    assert np.max(np.abs(spec(tensor_product(H, G)) - want_prod)) <= 1e-6


def test_disjoint_union_labels():
    U = disjoint_union(Hypergraph([[1, 2]]), Hypergraph([[1, 2, 3]]))
    assert U.vertices == ("0.1", "0.2", "1.1", "1.2", "1.3")
    V = disjoint_union(Hypergraph([[1, 2]]), Hypergraph([["a", "b"]]))
    assert V.vertices == ("1", "2", "a", "b")
    assert energy(U).energy == pytest.approx(2 + 4)


# ---------------------------------------------------------------- random

def test_random_hypergraph_determinism():
    a = random_hypergraph(6, 4, (2, 3), seed=1)
    assert a == random_hypergraph(6, 4, (2, 3), seed=1)
    assert a.m == 4
    b = random_hypergraph(8, 10, (3, 4), seed=7)
    assert b == random_hypergraph(8, 10, (3, 4), seed=7)
    assert all(3 <= len(e) <= 4 for e in b.edges)
    with pytest.raises(InfeasibleParams):
        random_hypergraph(4, 100, (2, 2), seed=0)
    with pytest.raises(InfeasibleParams):
        random_hypergraph(4, 2, (3, 5), seed=0)


def test_random_hypergraph_exhausts_small_pool():
    H = random_hypergraph(4, 6, (2, 2), seed=3)
    assert sorted(H.edge_list()) == sorted(complete_kgraph(4, 2).edge_list())


@given(st.integers(1, 8), st.integers(0, 10**6))
def test_random_hypertree(m, seed):
    T = random_hypertree(m, (2, 4), seed)
    assert T.m == m and is_hypertree(T)
    assert T == random_hypertree(m, (2, 4), seed)
