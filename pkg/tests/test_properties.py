"""Randomized properties on small random binary matroids and graphs."""

from hypothesis import given, settings
from hypothesis import strategies as st

from tanglekit import catalog
from tanglekit.branch import branch_width
from tanglekit.connectivity import adheres, verify_axioms
from tanglekit.graph import SimpleGraph
from tanglekit.matroid import BinaryMatroid
from tanglekit.tangles import enumerate_tangles, max_tangle_order, split_free

from . import oracles


@st.composite
def gf2_matrices(draw, max_rows=3, max_cols=5):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    return [draw(st.lists(st.integers(0, 1), min_size=cols, max_size=cols)) for _ in range(rows)]


@st.composite
def graphs(draw, max_v=5):
    n = draw(st.integers(1, max_v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return SimpleGraph.from_edges(n, chosen)


def lam_dict(K):
    return {oracles.from_mask(m): v for m, v in enumerate(K.table())}


@settings(max_examples=60, deadline=None)
@given(gf2_matrices())
def test_binary_matroid_ranks_match_elimination(matrix):
    M = BinaryMatroid.from_rows(matrix)
    for m in range(M.full + 1):
        assert M.rank(m) == oracles.gf2_column_rank(matrix, oracles.from_mask(m))


@settings(max_examples=40, deadline=None)
@given(gf2_matrices(max_cols=5))
def test_binary_matroid_system_is_valid_and_dual_invariant(matrix):
    M = BinaryMatroid.from_rows(matrix)
    assert verify_axioms(M.system()) == []
    D = M.dual()
    assert D.system().table() == M.system().table()


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_cut_rank_matches_oracle(G):
    assert G.system().table() == [oracles.cut_rank(G.edges(), G.n, oracles.from_mask(m)) for m in range(G.vertices.full + 1)]


@settings(max_examples=40, deadline=None)
@given(graphs(), st.data())
def test_pivot_preserves_cut_rank(G, data):
    edges = G.edges()
    if not edges:
        return
    u, v = data.draw(st.sampled_from(edges))
    assert G.pivot(u, v).system().table() == G.system().table()
    assert G.pivot(u, v) == G.pivot(v, u)


@settings(max_examples=30, deadline=None)
@given(gf2_matrices(max_cols=5))
def test_tangles_match_brute_force(matrix):
    K = BinaryMatroid.from_rows(matrix).system()
    lam = lam_dict(K)
    for k in range(1, max_tangle_order(K) + 2):
        got = sorted(T.members for T in enumerate_tangles(K, k))
        want = sorted(tuple(sorted(oracles.to_mask(X) for X in T)) for T in oracles.tangles(lam, K.n, k))
        assert got == want


@settings(max_examples=30, deadline=None)
@given(graphs(max_v=5))
def test_branch_width_matches_recursion_and_duality(G):
    K = G.system()
    bw = branch_width(K)
    assert bw == oracles.branch_width(lam_dict(K), K.n)
    if K.n >= 2:
        assert enumerate_tangles(K, bw + 1) == []


@settings(max_examples=30, deadline=None)
@given(gf2_matrices(max_cols=6), st.data())
def test_adherence_implies_split_free(matrix, data):
    M = BinaryMatroid.from_rows(matrix)
    if M.n < 2:
        return
    e = data.draw(st.integers(0, M.n - 1))
    K = M.system()
    for N in (M.delete(e), M.contract(e)):
        if adheres(N.system(), K):
            assert split_free(K, N.system())


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_generators_are_deterministic(seed):
    assert catalog.random_graph(5, 0.5, seed).edges() == catalog.random_graph(5, 0.5, seed).edges()
    assert catalog.random_gf2(3, 5, seed).columns == catalog.random_gf2(3, 5, seed).columns
