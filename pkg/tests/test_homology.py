import random
from fractions import Fraction

import pytest

from tropmoduli import (
    ResourceBoundExceeded,
    build_chain_complex,
    euler_characteristic,
    link_cells,
    reduced_homology,
    top_weight_cohomology,
)
from tropmoduli.homology import sparse_integer_rank


def dense_rank_over_q(columns, nrows):
    """Plain Gaussian elimination over Q, as an independent rank oracle."""
    matrix = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, value in col:
            matrix[i][j] = Fraction(value)
    rank = 0
    row = 0
    for col in range(len(columns)):
        pivot = next((r for r in range(row, nrows) if matrix[r][col] != 0), None)
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        inv = matrix[row][col]
        for r in range(nrows):
            if r != row and matrix[r][col] != 0:
                factor = matrix[r][col] / inv
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[row])]
        row += 1
        rank += 1
    return rank


class TestSparseRank:
    def test_identity(self):
        cols = [((i, 1),) for i in range(5)]
        assert sparse_integer_rank(cols) == 5

    def test_zero(self):
        assert sparse_integer_rank([(), (), ()]) == 0

    def test_dependent_columns(self):
        cols = [((0, 1), (1, 2)), ((0, 2), (1, 4)), ((0, 1), (1, 1))]
        assert sparse_integer_rank(cols) == 2

    def test_against_dense_oracle(self):
        rng = random.Random(99)
        for _ in range(200):
            nrows = rng.randint(1, 8)
            ncols = rng.randint(1, 8)
            cols = []
            for _ in range(ncols):
                entries = {}
                for _ in range(rng.randint(0, nrows)):
                    entries[rng.randrange(nrows)] = rng.randint(-3, 3)
                cols.append(tuple(sorted((r, v) for r, v in entries.items() if v)))
            assert sparse_integer_rank(cols) == dense_rank_over_q(cols, nrows)


class TestChainComplex:
    def test_single_zero_cell_for_one_marked_genus_one(self):
        chain = build_chain_complex(link_cells(1, 1))
        assert chain.rank_of_chain_group(0) == 1
        assert chain.rank_of_chain_group(1) == 0
        assert chain.rank_of_chain_group(-1) == 1

    def test_theta_cell_is_killed(self, theta):
        link = link_cells(2, 0)
        chain = build_chain_complex(link)
        killed_keys = {
            link.cells[i].graph.canonical_key()
            for i in range(len(link.cells))
            if link.cells[i].edge_group.has_odd_element
        }
        assert theta.canonical_key() in killed_keys
        # both 3-edge cells carry odd symmetries, so the top chain group dies
        assert chain.rank_of_chain_group(2) == 0
        assert chain.rank_of_chain_group(1) == 1
        assert chain.rank_of_chain_group(0) == 2

    def test_boundary_squares_to_zero_explicitly(self):
        chain = build_chain_complex(link_cells(1, 4))
        for p in range(1, chain.top_degree() + 1):
            lower = chain.boundaries[p - 1]
            for col in chain.boundaries[p]:
                acc = {}
                for mid, c1 in col:
                    for row, c2 in lower[mid]:
                        acc[row] = acc.get(row, 0) + c1 * c2
                assert all(v == 0 for v in acc.values())

    def test_augmentation_hits_every_zero_cell(self):
        chain = build_chain_complex(link_cells(2, 0))
        for col in chain.boundaries[0]:
            assert col == ((0, 1),)


class TestPublishedRanks:
    @pytest.mark.parametrize("n", [1, 2])
    def test_genus_one_contractible_cases(self, n):
        profile = reduced_homology(1, n)
        assert all(b == 0 for b in profile.reduced_betti)

    @pytest.mark.parametrize("n,rank", [(3, 1), (4, 3)])
    def test_genus_one_top_sphere_ranks(self, n, rank):
        profile = reduced_homology(1, n)
        expected = {n - 1: rank}
        assert {p: b for p, b in profile.betti_map().items() if b} == expected

    def test_genus_two_two_marks(self):
        profile = reduced_homology(2, 2)
        assert {p: b for p, b in profile.betti_map().items() if b} == {4: 1}

    def test_genus_two_unmarked_vanishes(self):
        profile = reduced_homology(2, 0)
        assert all(b == 0 for b in profile.reduced_betti)


class TestEuler:
    def test_examples(self):
        assert euler_characteristic(1, 3) == 1
        assert euler_characteristic(1, 2) == 0
        assert euler_characteristic(2, 2) == 1

    def test_alternating_sum_audit(self):
        for g, n in [(1, 3), (1, 4), (2, 1), (2, 2)]:
            profile = reduced_homology(g, n)
            from_betti = sum(
                (1 if (i - 1) % 2 == 0 else -1) * b
                for i, b in enumerate(profile.reduced_betti)
            )
            from_ranks = sum(
                (1 if (i - 1) % 2 == 0 else -1) * c
                for i, c in enumerate(profile.chain_ranks)
            )
            assert from_betti == from_ranks == profile.euler_reduced


class TestTopWeight:
    def test_genus_one_four_marks(self):
        ranks = top_weight_cohomology(1, 4)
        assert ranks[4] == 3
        assert all(r == 0 for k, r in ranks.items() if k != 4)

    def test_genus_two_four_marks(self):
        ranks = top_weight_cohomology(2, 4)
        assert ranks[7] == 3
        assert ranks[8] == 1
        assert all(r == 0 for k, r in ranks.items() if k not in (7, 8))

    def test_genus_two_unmarked_all_zero(self):
        assert all(r == 0 for r in top_weight_cohomology(2, 0).values())

    def test_degree_window(self):
        # weight 2d lives in cohomological degrees d .. 2d
        ranks = top_weight_cohomology(1, 3)
        d = 3
        assert sorted(ranks) == list(range(d, 2 * d + 1))


class TestResourceBound:
    def test_cap_aborts_with_partial_report(self):
        with pytest.raises(ResourceBoundExceeded) as err:
            reduced_homology(1, 5, max_generators=10)
        assert err.value.chain_ranks is not None
        assert sum(err.value.chain_ranks) > 10

    def test_cap_allows_small_cases(self):
        profile = reduced_homology(1, 3, max_generators=10_000)
        assert profile.betti(2) == 1


class TestDeterminism:
    def test_thread_count_invariance(self):
        single = reduced_homology(1, 4, threads=1)
        threaded = reduced_homology(1, 4, threads=4)
        assert single == threaded
