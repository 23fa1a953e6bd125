from functools import reduce
from operator import or_

import pytest

from tanglekit import catalog
from tanglekit.errors import DomainError
from tanglekit.tangles import (
    Tangle,
    enumerate_tangles,
    enumerate_tangles_reference,
    extends_to_tangle,
    find_splits,
    induced_tangle,
    is_k_entangled,
    is_tangle,
    max_tangle_order,
    split_free,
)

from . import oracles

E4 = 0b1111
SINGLETONS4 = [1 << i for i in range(4)]


def u24():
    return catalog.uniform(2, 4).system()


def oracle_tangles(K, k):
    lam = {oracles.from_mask(m): v for m, v in enumerate(K.table())}
    return sorted(tuple(sorted(oracles.to_mask(X) for X in T)) for T in oracles.tangles(lam, K.n, k))


class TestIsTangle:
    def test_u24_order3(self):
        assert is_tangle(u24(), [0] + SINGLETONS4, 3)

    def test_size_axiom(self):
        chk = is_tangle(u24(), [0, 0b0001, 0b0010, 0b0100, 0b0111], 3)
        assert not chk
        assert chk.axiom in ("size", "cover")

    def test_orientation_axiom(self):
        chk = is_tangle(u24(), [0, 0b0001, E4 ^ 0b0001, 0b0010, 0b0100, 0b1000], 3)
        assert not chk and chk.axiom == "orientation"

    def test_membership_axiom(self):
        chk = is_tangle(u24(), [0b0011], 3)
        assert not chk and chk.axiom == "membership"


class TestEnumerate:
    def test_u24_counts(self):
        K = u24()
        assert [len(enumerate_tangles(K, k)) for k in (1, 2, 3, 4)] == [1, 1, 1, 0]
        assert enumerate_tangles(K, 1) == [Tangle(1, ())]
        assert enumerate_tangles(K, 3)[0].members == (0, 1, 2, 4, 8)

    def test_two_triangles_has_two_order2_tangles(self):
        K = catalog.graphic(catalog.two_triangles()).system()
        ts = enumerate_tangles(K, 2)
        assert len(ts) == 2
        assert oracle_tangles(K, 2) == sorted(T.members for T in ts)

    @pytest.mark.parametrize("M", catalog.matroid_catalog(5), ids=lambda M: M.name)
    def test_matroids_match_oracle(self, M):
        K = M.system()
        for k in range(1, max_tangle_order(K) + 2):
            assert sorted(T.members for T in enumerate_tangles(K, k)) == oracle_tangles(K, k)

    def test_graphs_on_four_vertices_match_oracle(self):
        for G in catalog.all_graphs(4):
            K = G.system()
            for k in range(1, 4):
                assert sorted(T.members for T in enumerate_tangles(K, k)) == oracle_tangles(K, k), (G.name, k)

    def test_reference_agrees_with_search(self):
        for M in catalog.matroid_catalog(5):
            K = M.system()
            for k in range(1, 5):
                assert enumerate_tangles_reference(K, k) == enumerate_tangles(K, k)

    def test_every_result_is_a_tangle(self):
        K = catalog.fano().system()
        for k in range(1, max_tangle_order(K) + 1):
            for T in enumerate_tangles(K, k):
                assert is_tangle(K, T.members, k)

    def test_json_round_trip(self):
        K = u24()
        T = enumerate_tangles(K, 3)[0]
        data = T.to_json(K.ground)
        assert data == {"order": 3, "members": ["0000", "1000", "0100", "0010", "0001"]}
        assert Tangle.from_json(data, K.ground) == T


class TestInduced:
    def test_identity(self):
        K = u24()
        for k in (1, 2, 3):
            for T in enumerate_tangles(K, k):
                assert induced_tangle(K, K, T) == T

    def test_deletion_minor(self):
        M = catalog.uniform(2, 4)
        K, K0 = M.system(), M.delete(3).system()
        # U(2,3) has no order-3 tangle: its three singletons would cover E
        assert enumerate_tangles(K0, 3) == [] and oracle_tangles(K0, 3) == []
        (T0,) = enumerate_tangles(K0, 2)
        assert induced_tangle(K, K0, T0) == enumerate_tangles(K, 2)[0]

    def test_always_a_tangle_over_minors(self):
        for M in catalog.matroid_catalog(7):
            K = M.system()
            for e in range(M.n):
                for K0 in (M.delete(e).system(), M.contract(e).system()):
                    for k in range(1, max_tangle_order(K0) + 1):
                        for T0 in enumerate_tangles(K0, k):
                            assert is_tangle(K, induced_tangle(K, K0, T0).members, k)

    def test_needs_domination(self):
        K = u24()
        other = catalog.cycle(3).system()
        with pytest.raises(DomainError):
            induced_tangle(other, K, enumerate_tangles(K, 1)[0])


class TestSplits:
    def test_identity_groups_are_singletons(self):
        K = u24()
        for k in (1, 2, 3):
            assert all(len(v) == 1 for v in find_splits(K, K, k).values())

    def test_two_triangles_deletion(self):
        M = catalog.graphic(catalog.two_triangles())
        K, K0 = M.system(), M.delete(0).system()
        groups = find_splits(K, K0, 2)
        assert sum(len(v) for v in groups.values()) == len(enumerate_tangles(K0, 2))
        for T, parts in groups.items():
            for T0 in parts:
                assert induced_tangle(K, K0, T0) == T

    def test_u24_contraction_does_not_split(self):
        M = catalog.uniform(2, 4)
        assert all(len(v) < 2 for v in find_splits(M.system(), M.contract(0).system(), 3).values())

    def test_split_free_identity(self):
        assert split_free(u24(), u24())

    def test_some_removal_is_split_free(self):
        for M in catalog.matroid_catalog(7):
            K = M.system()
            for e in range(M.n):
                assert split_free(K, M.delete(e).system()) or split_free(K, M.contract(e).system())


class TestEntangled:
    def test_u24(self):
        assert all(is_k_entangled(u24(), k) for k in range(1, 7))

    def test_two_triangles(self):
        assert not is_k_entangled(catalog.graphic(catalog.two_triangles()).system(), 2)

    def test_order_one_for_matroids(self):
        assert all(is_k_entangled(M.system(), 1) for M in catalog.matroid_catalog(8))


class TestExtends:
    def test_existing_tangle(self):
        K = catalog.fano().system()
        seen = 0
        for k in (2, 3, 4):
            for T in enumerate_tangles(K, k):
                if reduce(or_, T.members, 0) == K.full:
                    seen += 1
                    assert extends_to_tangle(K, list(T.members), k)
        assert seen

    def test_family_must_cover(self):
        with pytest.raises(DomainError):
            extends_to_tangle(u24(), [0], 2)

    def test_u24(self):
        assert not extends_to_tangle(u24(), SINGLETONS4, 4)
        assert extends_to_tangle(u24(), [0] + SINGLETONS4, 3)

    def test_high_set_rejected(self):
        with pytest.raises(DomainError):
            extends_to_tangle(u24(), [0b0011], 3)
