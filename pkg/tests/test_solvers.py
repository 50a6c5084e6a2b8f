"""Tests for solvers.py module."""

import itertools

import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from clubplex.errors import ContractError
from clubplex.generators import generate_planted_graph, generate_random_graph
from clubplex.graph import Graph
from clubplex.ordering import x_degeneracy_ordering
from clubplex.solution import SolutionStatus
from clubplex.solvers import (
    Variant,
    VariantConfig,
    brute_force_maximum,
    small_plex_fallback,
    turing_kernel_solve,
)
from clubplex.verify import CandidateKind, satisfies

# (kind, kernel radius) pairs covered by the oracle tests; the last one is 3plex-2
CONFIGURATIONS = [
    (CandidateKind.clique(), 1),
    (CandidateKind.club(2), 2),
    (CandidateKind.club(3), 3),
    (CandidateKind.plex(2), 2),
    (CandidateKind.plex(3), 3),
    (CandidateKind.plex(3), 2),
]


def solve(g, kind, variant, x=None, **kwargs):
    return turing_kernel_solve(g, kind, VariantConfig.for_kind(kind, variant, x=x, **kwargs))


class TestVariantConfig:
    """Tests for VariantConfig validation."""

    def test_hint_requires_value(self):
        """Test that the hint variant needs hint_value."""
        with pytest.raises(ContractError):
            VariantConfig(Variant.HINT, x=2)

    def test_hint_value_only_for_hint(self):
        """Test that other variants reject hint_value."""
        with pytest.raises(ContractError):
            VariantConfig(Variant.FULL, x=2, hint_value=3)

    def test_parallel_only_for_full(self):
        """Test that jobs > 1 is refused for the default variant."""
        with pytest.raises(ContractError):
            VariantConfig(Variant.DEFAULT, x=2, jobs=2)

    def test_radius_defaults_to_s(self):
        """Test that for_kind uses s as the kernel radius."""
        assert VariantConfig.for_kind(CandidateKind.club(3), Variant.FULL).x == 3

    def test_club_kernel_below_s(self, p4):
        """Test that an s-club kernel with x < s is refused."""
        with pytest.raises(ContractError):
            solve(p4, CandidateKind.club(3), Variant.FULL, x=2)


class TestBruteForce:
    """Tests for brute_force_maximum."""

    def test_star_is_two_club(self):
        """Test that K_{1,4} is a 2-club."""
        star = Graph.from_edges(5, [(0, leaf) for leaf in range(1, 5)])

        assert brute_force_maximum(star, CandidateKind.club(2)).size == 5

    def test_path_two_club(self, p4):
        """Test that P4's largest 2-club has 3 vertices, smallest ids first."""
        solution = brute_force_maximum(p4, CandidateKind.club(2))

        assert solution.size == 3
        assert solution.members == {0, 1, 2}

    def test_cycle_two_plex(self, c5):
        """Test that C5's largest 2-plex has 3 vertices."""
        assert brute_force_maximum(c5, CandidateKind.plex(2)).size == 3

    def test_refuses_large_graphs(self):
        """Test the size guard."""
        g = Graph.from_edges(26, [])

        with pytest.raises(ContractError):
            brute_force_maximum(g, CandidateKind.clique())


class TestSmallPlexFallback:
    """Tests for small_plex_fallback."""

    def test_edge_is_two_plex(self, p5):
        """Test that any edge gives size 2 for s = 2."""
        assert small_plex_fallback(p5, 2).size == 2

    def test_path_is_three_plex(self, p4):
        """Test that P4 itself is found for s = 3."""
        assert small_plex_fallback(p4, 3).members == {0, 1, 2, 3}

    def test_s_one_is_vacuous(self, k4):
        """Test that s = 1 enumerates nothing."""
        assert small_plex_fallback(k4, 1).size == 0

    def test_unsupported_s(self, k4):
        """Test that s > 3 is refused."""
        with pytest.raises(ContractError):
            small_plex_fallback(k4, 4)

    def test_matches_brute_force_below_threshold(self, graph_sample):
        """Test against the best plex of at most 2s - 2 vertices."""
        for g in graph_sample(30, n_max=8, seed=3):
            expected = 0
            for size in range(1, min(4, g.n) + 1):
                for members in itertools.combinations(range(g.n), size):
                    if satisfies(g, members, CandidateKind.plex(3)):
                        expected = size
            assert small_plex_fallback(g, 3).size == expected


class TestTuringKernelSolve:
    """Tests for turing_kernel_solve."""

    def test_path_full(self, p4):
        """Test P4 with the 2-club full variant."""
        solution = solve(p4, CandidateKind.club(2), Variant.FULL)

        assert solution.size == 3
        assert solution.stats.max_core_size <= 3
        assert solution.stats.d_x == 2

    def test_clique_component_as_plex(self, k5_k3):
        """Test that K5 + K3 has a 2-plex of size 5 in every variant."""
        kind = CandidateKind.plex(2)
        for variant in (Variant.NOTK, Variant.FULL, Variant.DEFAULT):
            assert solve(k5_k3, kind, variant).size == 5
        assert solve(k5_k3, kind, Variant.HINT, hint_value=5).size == 5

    def test_random_graph_all_variants(self):
        """Test G(10, 0.4) with every variant against brute force."""
        g = generate_random_graph(10, 0.4, seed=1)
        kind = CandidateKind.club(2)
        expected = brute_force_maximum(g, kind).size

        for variant in (Variant.NOTK, Variant.FULL, Variant.DEFAULT):
            assert solve(g, kind, variant).size == expected
        assert solve(g, kind, Variant.HINT, hint_value=expected).size == expected

    def test_hint_above_optimum(self, p4):
        """Test that an untruthful hint reports below-bound instead of a wrong answer."""
        solution = solve(p4, CandidateKind.club(2), Variant.HINT, hint_value=4)

        assert solution.status is SolutionStatus.BELOW_BOUND
        assert solution.size < 4

    def test_timeout_is_flagged(self, graph_sample):
        """Test that a zero deadline marks the result as timed out."""
        g = graph_sample(1, n_min=10, n_max=10)[0]

        solution = solve(g, CandidateKind.club(2), Variant.FULL, deadline=0.0)

        assert solution.status is SolutionStatus.TIMEOUT
        assert solution.stats.timed_out

    def test_empty_graph(self):
        """Test every variant on the empty graph."""
        g = Graph.from_edges(0, [])
        for variant in (Variant.NOTK, Variant.FULL, Variant.DEFAULT):
            assert solve(g, CandidateKind.club(2), variant).size == 0

    def test_oracle_equivalence(self, graph_sample):
        """Test every variant against brute force on 200 random graphs with 4 to 12 vertices."""
        for g in graph_sample(200, n_min=4, n_max=12, seed=17):
            for kind, x in CONFIGURATIONS:
                expected = brute_force_maximum(g, kind).size
                for variant in (Variant.NOTK, Variant.FULL, Variant.DEFAULT):
                    solution = solve(g, kind, variant, x=x)
                    assert solution.size == expected, (kind.label, x, variant)
                    assert solution.certified
                hinted = solve(g, kind, Variant.HINT, x=x, hint_value=expected)
                assert hinted.size == expected
                assert hinted.status is SolutionStatus.OPTIMAL

    def test_kernel_bound(self, graph_sample):
        """Test max_core_size <= d_x + 1 in every kernel run."""
        for g in graph_sample(20, n_min=6, n_max=12, seed=31):
            for kind, x in CONFIGURATIONS:
                d_x = x_degeneracy_ordering(g, x).d_x
                for variant in (Variant.FULL, Variant.DEFAULT):
                    assert solve(g, kind, variant, x=x).stats.max_core_size <= d_x + 1

    def test_planted_instance(self):
        """Test the full variant on a large sparse graph with a planted block."""
        g = generate_planted_graph(500, 12, cores=1, density=0.9, seed=3)
        d_2 = x_degeneracy_ordering(g, 2).d_x
        assert d_2 <= 15

        solution = solve(g, CandidateKind.club(2), Variant.FULL, deadline=60.0)

        assert solution.status is SolutionStatus.OPTIMAL
        assert solution.stats.max_core_size <= d_2 + 1
        assert solution.certified
        assert solution.size >= 3

    def test_parallel_full_matches_sequential(self, graph_sample):
        """Test that worker processes give the same sizes."""
        for g in graph_sample(3, n_min=8, n_max=10, seed=2):
            kind = CandidateKind.club(2)
            sequential = solve(g, kind, Variant.FULL)
            parallel = solve(g, kind, Variant.FULL, jobs=2)
            assert parallel.size == sequential.size
            assert parallel.stats.oracle_calls == sequential.stats.oracle_calls

    def test_parallel_full_respects_deadline(self):
        """Test that queued cores share the caller's deadline instead of restarting it."""
        g = generate_random_graph(60, 0.15, seed=5)
        deadline = 0.5

        solution = solve(g, CandidateKind.club(2), Variant.FULL, deadline=deadline, jobs=2)

        assert solution.status is SolutionStatus.TIMEOUT
        assert solution.stats.elapsed < deadline + 2.0
        assert solution.stats.oracle_calls < g.n
        assert solution.certified
