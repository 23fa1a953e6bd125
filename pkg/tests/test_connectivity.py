import pytest

from tanglekit import catalog
from tanglekit.connectivity import (
    GroundSet,
    SyntheticSystem,
    adheres,
    bit_indices,
    dominates,
    drop_bit,
    insert_bit,
    kappa,
    kappa_witness,
    low_sets,
    submasks,
    verify_axioms,
)
from tanglekit.errors import DomainError

from . import oracles


def u24():
    return catalog.uniform(2, 4).system()


def c4():
    return catalog.cycle(4).system()


def oracle_lambda_u24():
    return oracles.matroid_lambda(lambda X: min(len(X), 2), 4)


class TestBitHelpers:
    def test_submasks_cover_every_subset_once(self):
        subs = list(submasks(0b1011))
        assert sorted(subs) == subs
        assert sorted(subs) == sorted({m for m in range(16) if m & ~0b1011 == 0})

    def test_drop_and_insert_are_inverse(self):
        for m in range(64):
            for i in range(6):
                assert drop_bit(insert_bit(m & ((1 << 5) - 1), i), i) == m & ((1 << 5) - 1)

    def test_bit_indices(self):
        assert bit_indices(0b10110) == [1, 2, 4]

    def test_ground_set_bits_put_element_zero_first(self):
        g = GroundSet.of_size(4)
        assert g.to_bits(0b0001) == "1000"
        assert g.from_bits("0011") == 0b1100

    def test_ground_set_rejects_duplicates_and_oversize(self):
        with pytest.raises(DomainError):
            GroundSet(("a", "a"))
        with pytest.raises(DomainError):
            GroundSet.of_size(17)


class TestLambda:
    def test_u24_values(self):
        K = u24()
        assert K.lam(0) == 1
        assert K.lam(0b0011) == 3
        assert K.lam(0b0001) == 2

    def test_u24_matches_oracle_everywhere(self):
        K, lam = u24(), oracle_lambda_u24()
        for X, v in lam.items():
            assert K.lam(oracles.to_mask(X)) == v

    def test_c4_cut_rank(self):
        K = c4()
        assert K.lam(0b0011) == 2  # {a,b}
        assert K.lam(0b0101) == 1  # {a,c}

    def test_out_of_range_is_domain_error(self):
        with pytest.raises(DomainError):
            u24().lam(1 << 4)


class TestAxioms:
    @pytest.mark.parametrize("make", [u24, c4])
    def test_catalog_systems_pass(self, make):
        assert verify_axioms(make()) == []

    def test_perturbed_table_is_caught(self):
        table = list(u24().table())
        table[0b0001] += 1  # λ({0}) no longer equals λ({1,2,3})
        K = SyntheticSystem(4, table, validate=False)
        bad = verify_axioms(K)
        assert bad and bad[0].kind == "symmetry"

    def test_validating_constructor_rejects(self):
        table = list(u24().table())
        table[0b0001] += 1
        with pytest.raises(DomainError):
            SyntheticSystem(4, table)

    def test_submodularity_violation(self):
        # symmetric but λ({0})+λ({1}) < λ(∅)+λ({0,1}) on two elements
        K = SyntheticSystem(2, [5, 0, 0, 5], validate=False)
        assert any(v.kind == "submodularity" for v in verify_axioms(K))


class TestLowSets:
    def test_u24(self):
        K = u24()
        assert low_sets(K, 1) == []
        assert low_sets(K, 2) == [0, 0b1111]
        expected = {0, 0b1111} | {1 << i for i in range(4)} | {0b1111 ^ (1 << i) for i in range(4)}
        assert set(low_sets(K, 3)) == expected


class TestKappa:
    def test_complementary_pair_gives_lambda(self):
        K = u24()
        for X in range(16):
            assert kappa(K, X, 0b1111 ^ X) == K.lam(X)

    def test_u24_examples(self):
        K = u24()
        assert kappa(K, 0b0001, 0b0010) == 2
        assert kappa(K, 0, 0) == 1

    def test_matches_oracle(self):
        K, lam = c4(), oracles.cut_rank_table(catalog.cycle(4).edges(), 4)
        for X in range(16):
            for Y in submasks(0b1111 ^ X):
                assert kappa(K, X, Y) == oracles.kappa(lam, oracles.from_mask(X), oracles.from_mask(Y), 4)

    def test_witness_is_sandwiched(self):
        K = u24()
        v, Z = kappa_witness(K, 0b0001, 0b0010)
        assert Z & 0b0001 == 0b0001 and Z & 0b0010 == 0 and K.lam(Z) == v

    def test_overlap_is_domain_error(self):
        with pytest.raises(DomainError):
            kappa(u24(), 0b0011, 0b0010)


class TestDominates:
    def test_reflexive(self):
        assert dominates(u24(), u24())

    def test_matroid_dominates_minors(self):
        M = catalog.uniform(2, 4)
        for e in range(4):
            assert dominates(M.system(), M.delete(e).system())
            assert dominates(M.system(), M.contract(e).system())

    def test_graph_dominates_vertex_deletion(self):
        G = catalog.cycle(4)
        assert dominates(G.system(), G.delete_vertex(0).system())

    def test_larger_ground_is_not_dominated(self):
        assert not dominates(catalog.uniform(2, 3).system(), u24())


class TestAdheres:
    def test_self_adherence(self):
        for K in (u24(), c4()):
            assert adheres(K, K)

    def test_deletion_matches_definition(self):
        M = catalog.uniform(2, 4)
        K, K0 = M.system(), M.delete(3).system()
        assert adheres(K0, K)
        lam = oracle_lambda_u24()
        lam0 = {X: v for X, v in oracles.matroid_lambda(lambda X: min(len(X), 2), 3).items()}
        assert oracles.adheres(lam0, range(3), lam)

    def test_failure_with_witness(self):
        # E = {a,b,c}: λ(∅)=λ(E)=0, everything else 2; E0 = {a,b}: singletons 1
        K = SyntheticSystem(GroundSet(("a", "b", "c")), [0, 2, 2, 2, 2, 2, 2, 0])
        K0 = SyntheticSystem(GroundSet(("a", "b")), [0, 1, 1, 0])
        a = adheres(K0, K)
        assert not a
        assert set(a.witness) == {0b01, 0b10}

    def test_agrees_with_oracle_on_small_graph_removals(self):
        for G in catalog.all_graphs(4):
            K = G.system()
            lam = oracles.cut_rank_table(G.edges(), 4)
            H = G.delete_vertex(0)
            # vertices 1..3 of G become 0..2 of H
            lam0 = {frozenset(i + 1 for i in X): v for X, v in oracles.cut_rank_table(H.edges(), 3).items()}
            assert bool(adheres(H.system(), K)) == oracles.adheres(lam0, range(1, 4), lam), G.name
