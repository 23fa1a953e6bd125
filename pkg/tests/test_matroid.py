from itertools import product

import pytest

from tanglekit import catalog
from tanglekit.connectivity import verify_axioms
from tanglekit.errors import ConsistencyError, DomainError
from tanglekit.matroid import (
    BinaryMatroid,
    GraphicMatroid,
    MinorKind,
    UniformMatroid,
    Verdict,
    check_bc_inequality,
    rank_axiom_violations,
    rank_equal,
    removal_adherence,
    safe_removal,
)

from . import oracles

FANO_ROWS = [[(c >> i) & 1 for c in range(1, 8)] for i in range(3)]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


class TestRank:
    def test_uniform_is_min(self):
        M = UniformMatroid(2, 4)
        for m in range(16):
            assert M.rank(m) == min(bin(m).count("1"), 2)

    def test_fano_against_oracle(self):
        M = catalog.fano()
        assert M.rank_total == 3
        for m in range(1 << 7):
            assert M.rank(m) == oracles.gf2_column_rank(FANO_ROWS, oracles.from_mask(m))

    def test_graphic_k4_against_oracle(self):
        M = GraphicMatroid(4, K4_EDGES)
        assert M.rank_total == 3
        for m in range(1 << 6):
            assert M.rank(m) == oracles.graphic_rank(4, K4_EDGES, oracles.from_mask(m))

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            UniformMatroid(2, 4).rank(1 << 4)

    @pytest.mark.parametrize("M", catalog.matroid_catalog(8), ids=lambda M: M.name)
    def test_catalog_obeys_rank_axioms(self, M):
        assert rank_axiom_violations(M) == []


class TestConnectivity:
    def test_u24_values(self):
        M = UniformMatroid(2, 4)
        assert [M.connectivity(x) for x in (0, 0b1, 0b11)] == [1, 2, 3]

    @pytest.mark.parametrize("M", [catalog.uniform(2, 4), catalog.fano(), catalog.graphic(catalog.complete(4))],
                             ids=["U24", "Fano", "M(K4)"])
    def test_systems_pass_axioms(self, M):
        assert verify_axioms(M.system()) == []


class TestMinors:
    def test_uniform_delete_and_contract(self):
        M = UniformMatroid(2, 4)
        for e in range(4):
            assert rank_equal(M.delete(e), UniformMatroid(2, 3))
            assert rank_equal(M.contract(e), UniformMatroid(1, 3))

    def test_labels_survive(self):
        M = UniformMatroid(2, 4)
        assert M.delete(1).ground.labels == ("0", "2", "3")

    def test_contracting_a_loop_is_deleting_it(self):
        M = BinaryMatroid.from_rows([[1, 0, 0], [0, 1, 0]])
        assert M.is_loop(2)
        assert rank_equal(M.contract(2), M.delete(2))

    def test_minors_of_fano_match_oracle(self):
        M = catalog.fano()
        for e in range(7):
            D, C = M.delete(e), M.contract(e)
            keep = [i for i in range(7) if i != e]
            for m in range(1 << 6):
                X = {keep[i] for i in oracles.from_mask(m)}
                assert D.rank(m) == oracles.gf2_column_rank(FANO_ROWS, X)
                assert C.rank(m) == oracles.gf2_column_rank(FANO_ROWS, X | {e}) - oracles.gf2_column_rank(FANO_ROWS, {e})

    def test_last_element(self):
        with pytest.raises(DomainError):
            UniformMatroid(1, 1).delete(0)

    def test_ragged_matrix(self):
        with pytest.raises(DomainError):
            BinaryMatroid.from_rows([[1, 0], [1]])


class TestDual:
    def test_u24_self_dual(self):
        assert rank_equal(UniformMatroid(2, 4).dual(), UniformMatroid(2, 4))

    @pytest.mark.parametrize("M", catalog.matroid_catalog(8), ids=lambda M: M.name)
    def test_involution_and_connectivity(self, M):
        D = M.dual()
        assert rank_equal(D.dual(), M)
        assert all(D.connectivity(x) == M.connectivity(x) for x in range(M.full + 1))


class TestBCInequality:
    def test_empty_sets(self):
        for M in catalog.matroid_catalog(6):
            for e in range(M.n):
                assert check_bc_inequality(M, 0, 0, e)

    def test_u24_example(self):
        assert check_bc_inequality(UniformMatroid(2, 4), 0b0001, 0b0011, 3)

    def test_exhaustive_small(self):
        for M in catalog.matroid_catalog(5):
            for e in range(M.n):
                rest = M.full ^ (1 << e)
                for A, B in product(range(M.full + 1), repeat=2):
                    if (A | B) & ~rest:
                        continue
                    assert check_bc_inequality(M, A, B, e)

    def test_element_inside_a_set(self):
        with pytest.raises(DomainError):
            check_bc_inequality(UniformMatroid(2, 4), 0b1000, 0, 3)


class TestSafeRemoval:
    def test_u24_both(self):
        for e in range(4):
            assert safe_removal(UniformMatroid(2, 4), e) is Verdict.BOTH

    def test_triangle_contract_only(self):
        # deleting an edge leaves two coloops with λ0 = 1 on singletons, but a
        # singleton has connectivity 2 in the triangle, so deletion cannot adhere
        M = catalog.graphic(catalog.complete(3))
        lam = oracles.matroid_lambda(lambda X: min(len(X), 2), 3)
        for e in range(3):
            rest = [i for i in range(3) if i != e]
            lam_del = {X: 1 for X in oracles.subsets(rest)}
            lam_con = {X: 2 if len(X) == 1 else 1 for X in oracles.subsets(rest)}
            assert not oracles.adheres(lam_del, rest, lam)
            assert oracles.adheres(lam_con, rest, lam)
            assert safe_removal(M, e) is Verdict.CONTRACT_ONLY

    @pytest.mark.parametrize("M", catalog.matroid_catalog(8), ids=lambda M: M.name)
    def test_never_empty(self, M):
        for e in range(M.n):
            res = removal_adherence(M, e)
            assert res[MinorKind.DELETE] or res[MinorKind.CONTRACT]

    def test_consistency_error_is_raised_when_neither_adheres(self, monkeypatch):
        import tanglekit.matroid as mod

        monkeypatch.setattr(mod, "removal_adherence", lambda M, e: {MinorKind.DELETE: False, MinorKind.CONTRACT: False})
        with pytest.raises(ConsistencyError):
            mod.safe_removal(UniformMatroid(2, 4), 0)
