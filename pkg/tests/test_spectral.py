import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factorcrit.extremal import ExtremalParams, build_H, build_Hs, hs_parts, join_of_cliques
from factorcrit.graph import Graph, components, complete, copies, empty, join, remove_vertices
from factorcrit.spectral import (
    ORBIT_TOL,
    DisconnectedGraphError,
    PartitionError,
    SpectralError,
    adjacency_matrix,
    alpha_matrix,
    largest_eigenvalue,
    perron_vector,
    quotient_largest_eigenvalue,
    quotient_matrix,
    signless_laplacian,
    spectral_radius,
)
from oracles import dense_top_eigenvalue
from test_graph import graphs


def test_adjacency_matrix():
    assert adjacency_matrix(complete(2)).tolist() == [[0, 1], [1, 0]]
    assert adjacency_matrix(empty(2)).tolist() == [[0, 0], [0, 0]]
    g = build_H(ExtremalParams(8, 1, 0))
    assert adjacency_matrix(g).sum(axis=1).tolist() == list(g.degrees)


def test_signless_laplacian():
    assert signless_laplacian(complete(2)).tolist() == [[1, 1], [1, 1]]
    q = signless_laplacian(complete(3))
    assert np.diag(q).tolist() == [2, 2, 2]
    assert q[0, 1] == q[1, 2] == q[0, 2] == 1


@given(graphs())
def test_signless_laplacian_trace(g):
    assert np.trace(signless_laplacian(g)) == 2 * g.size


def test_alpha_matrix():
    k3 = complete(3)
    assert np.array_equal(alpha_matrix(k3, 0), adjacency_matrix(k3))
    assert np.array_equal(alpha_matrix(k3, 1), signless_laplacian(k3))
    assert not alpha_matrix(empty(2), 1).any()
    with pytest.raises(SpectralError):
        alpha_matrix(k3, 0.5)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 20])
def test_complete_graph_anchors(n):
    assert abs(spectral_radius(complete(n), 0) - (n - 1)) <= 1e-9
    assert abs(spectral_radius(complete(n), 1) - (2 * n - 2)) <= 1e-9


def test_zero_matrix():
    res = largest_eigenvalue(np.zeros((4, 4)))
    assert res.value == 0.0
    assert abs(np.linalg.norm(res.vector) - 1) < 1e-12


def test_rejects_bad_input():
    with pytest.raises(SpectralError):
        largest_eigenvalue(np.array([[0.0, np.nan], [np.nan, 0.0]]))
    with pytest.raises(SpectralError):
        largest_eigenvalue(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(SpectralError):
        largest_eigenvalue(np.zeros((2, 3)))


def test_general_symmetric_matrix_uses_jacobi():
    m = np.array([[-5.0, 1.0, 0.0], [1.0, 2.0, -1.0], [0.0, -1.0, 0.5]])
    res = largest_eigenvalue(m)
    assert res.method == "jacobi"
    assert abs(res.value - np.linalg.eigvalsh(m)[-1]) < 1e-12
    assert res.residual <= 1e-9 * 3


@settings(max_examples=200)
@given(graphs(max_n=12), st.sampled_from([0, 1]))
def test_largest_eigenvalue_matches_dense_oracle(g, alpha):
    res = largest_eigenvalue(alpha_matrix(g, alpha))
    assert abs(res.value - dense_top_eigenvalue(g, alpha)) <= 1e-9
    assert res.residual <= 1e-9 * g.order
    assert abs(np.linalg.norm(res.vector) - 1) <= 1e-12


@settings(max_examples=100)
@given(graphs(min_n=2, max_n=10), st.sampled_from([0, 1]))
def test_disconnected_radius_is_component_max(g, alpha):
    per = []
    for c in components(g):
        h = remove_vertices(g, [v for v in range(g.order) if v not in c])
        per.append(spectral_radius(h, alpha))
    assert abs(spectral_radius(g, alpha) - max(per)) <= 1e-9


def test_bipartite_path_converges():
    # P_3 = K_1 v 2K_1
    p3 = join(complete(1), empty(2))
    res = perron_vector(p3, 0)
    assert abs(res.value - math.sqrt(2)) <= 1e-12
    x = res.vector
    assert abs(x[0] - math.sqrt(2) * x[1]) <= 1e-9
    assert abs(x[1] - x[2]) <= ORBIT_TOL


def test_perron_vector_complete():
    for n in (1, 4, 9):
        x = perron_vector(complete(n), 0).vector
        assert np.allclose(x, 1 / math.sqrt(n), atol=1e-12)


def test_perron_vector_extremal_ordering():
    g = build_H(ExtremalParams(8, 1, 0))
    for alpha in (0, 1):
        res = perron_vector(g, alpha)
        x = res.vector
        assert np.all(x > 0)
        assert np.ptp(x[1:3]) <= ORBIT_TOL and np.ptp(x[3:]) <= ORBIT_TOL
        assert x[1] <= x[3]


def test_perron_vector_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        perron_vector(copies(2, complete(3)), 0)


@settings(max_examples=100)
@given(graphs(min_n=1, max_n=10), st.sampled_from([0, 1]))
def test_perron_vector_positive_when_connected(g, alpha):
    from factorcrit.graph import is_connected

    if not is_connected(g):
        return
    res = perron_vector(g, alpha)
    assert np.all(res.vector > 0)


@pytest.mark.parametrize("n,d,k", [(8, 1, 0), (12, 2, 0), (9, 3, 2), (15, 3, 1)])
def test_quotient_matrix_of_H(n, d, k):
    g = build_H(ExtremalParams(n, d, k))
    parts = hs_parts(n, d, k)
    qa = quotient_matrix(g, parts, 0)
    assert qa.equitable
    assert qa.entries.tolist() == [
        [d - 1, d - k + 1, n - 2 * d + k - 1],
        [d, 0, 0],
        [d, 0, n - 2 * d + k - 2],
    ]
    qq = quotient_matrix(g, parts, 1)
    assert qq.equitable
    assert qq.entries.tolist() == [
        [n + d - 2, d - k + 1, n - 2 * d + k - 1],
        [d, d, 0],
        [d, 0, 2 * n - 3 * d + 2 * k - 4],
    ]


@given(graphs(max_n=8), st.sampled_from([0, 1]))
def test_trivial_partition_gives_full_matrix(g, alpha):
    qm = quotient_matrix(g, [[v] for v in range(g.order)], alpha)
    assert qm.equitable
    assert np.array_equal(qm.entries, alpha_matrix(g, alpha))


def test_non_equitable_partition_flag():
    g = Graph.from_edges(3, [(0, 1)])
    assert not quotient_matrix(g, [[0, 2], [1]], 0).equitable


def test_partition_errors():
    g = complete(3)
    with pytest.raises(PartitionError):
        quotient_matrix(g, [[0, 1]], 0)
    with pytest.raises(PartitionError):
        quotient_matrix(g, [[0, 1], [1, 2]], 0)
    with pytest.raises(PartitionError):
        quotient_matrix(g, [[0, 1, 2], []], 0)


def _equitable_cases():
    yield build_H(ExtremalParams(8, 1, 0)), hs_parts(8, 1, 0)
    for n, s, k in [(10, 3, 0), (13, 4, 1), (20, 6, 2)]:
        yield build_Hs(n, s, k), hs_parts(n, s, k)
    g = join_of_cliques(2, [1, 3, 3, 5])
    yield g, [[0, 1], [2], [3, 4, 5], [6, 7, 8], [9, 10, 11, 12, 13]]
    # regular graphs: the whole vertex set is one equitable part
    c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    yield c6, [list(range(6))]
    yield c6, [[0, 2, 4], [1, 3, 5]]


@pytest.mark.parametrize("case", list(_equitable_cases()))
@pytest.mark.parametrize("alpha", [0, 1])
def test_equitable_quotient_shares_top_eigenvalue(case, alpha):
    g, parts = case
    qm = quotient_matrix(g, parts, alpha)
    assert qm.equitable
    full = largest_eigenvalue(alpha_matrix(g, alpha)).value
    assert abs(quotient_largest_eigenvalue(qm) - full) <= 1e-8
    # eigenvalues of the (non-symmetric) quotient are eigenvalues of the host
    host = np.linalg.eigvalsh(alpha_matrix(g, alpha))
    for lam in np.linalg.eigvals(qm.entries).real:
        assert np.min(np.abs(host - lam)) <= 1e-8
