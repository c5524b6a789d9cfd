import itertools

import pytest
from hypothesis import given, settings, strategies as st

from synchro.diagonal import (
    Coloring,
    DiagonalError,
    DiagonalGraph,
    canonical_cliques,
    diagonal_coloring_even,
    diagonal_coloring_odd,
    diagonal_group_generators,
    hamming_graph_adjacent,
    hamming_witness,
    verify_proper_coloring,
)
from synchro.groups import cyclic_group, group_closure, make_group
from synchro.mapping import CompleteMapping, find_complete_mapping


@pytest.fixture(scope="module")
def z3_3():
    return DiagonalGraph(cyclic_group(3), 3)


@pytest.fixture(scope="module")
def s3_4():
    return DiagonalGraph(make_group("s3"), 4)


class TestGraph:
    def test_sizes(self, z3_3, s3_4):
        assert z3_3.num_vertices == 9
        assert s3_4.num_vertices == 216
        assert z3_3.degree_of_vertex() == 6
        assert s3_4.degree_of_vertex() == 20

    def test_rejects_small_n(self):
        with pytest.raises(DiagonalError):
            DiagonalGraph(cyclic_group(3), 1)

    def test_single_coordinate_rule(self, z3_3):
        tag = z3_3.adjacency((0, 0), (1, 0))
        assert tag == ("A1", 2)
        tag = z3_3.adjacency((0, 0), (0, 2))
        assert tag == ("A1", 3)

    def test_translate_rule(self, z3_3):
        tag = z3_3.adjacency((0, 0), (1, 1))
        assert tag == ("A2", 1)
        assert z3_3.adjacency((0, 0), (2, 2)) == ("A2", 2)

    def test_non_adjacent(self, z3_3):
        assert z3_3.adjacency((0, 0), (1, 2)) is None
        assert z3_3.adjacency((0, 0), (0, 0)) is None

    def test_neighbour_iterator_matches_predicate(self, z3_3):
        for u in z3_3.vertices():
            nbs = set(z3_3.neighbours(u))
            assert len(nbs) == 6
            for v in z3_3.vertices():
                assert (v in nbs) == z3_3.adjacent(u, v)

    def test_degree_matches_neighbour_count(self, s3_4):
        u = (1, 2, 3)
        assert len(set(s3_4.neighbours(u))) == s3_4.degree_of_vertex()

    @given(st.integers(min_value=0, max_value=215))
    def test_rank_unrank_roundtrip(self, r):
        spec = DiagonalGraph(make_group("s3"), 4)
        assert spec.rank(spec.unrank(r)) == r


class TestCliques:
    def test_z3_cliques_through_origin(self, z3_3):
        cliques = [set(c) for c in canonical_cliques(z3_3, (0, 0))]
        assert {(0, 0), (1, 0), (2, 0)} in cliques
        assert {(0, 0), (0, 1), (0, 2)} in cliques
        assert {(0, 0), (1, 1), (2, 2)} in cliques

    def test_count_and_size(self, s3_4):
        cliques = canonical_cliques(s3_4, (0, 0, 0))
        assert len(cliques) == s3_4.n
        assert all(len(c) == 6 for c in cliques)

    def test_neighbourhood_splits_into_cliques(self, s3_4):
        u = (2, 4, 1)
        cliques = canonical_cliques(s3_4, u)
        union = set()
        for c in cliques:
            others = set(c) - {u}
            assert not (union & others)
            union |= others
        assert union == set(s3_4.neighbours(u))


class TestColorings:
    def test_even_identity_vertex(self, s3_4):
        c = diagonal_coloring_even(s3_4)
        e = s3_4.T.identity
        assert c.color_of[s3_4.rank((e, e, e))] == e

    def test_even_s3_proper_with_six_equal_fibers(self, s3_4):
        c = diagonal_coloring_even(s3_4)
        assert verify_proper_coloring(s3_4, c) is None
        assert c.num_colors() == 6
        assert set(c.fiber_sizes().values()) == {36}

    def test_even_rejects_odd_n(self, z3_3):
        with pytest.raises(DiagonalError):
            diagonal_coloring_even(z3_3)

    def test_odd_z3_identity_phi(self, z3_3):
        phi = CompleteMapping(z3_3.T, (0, 1, 2))
        c = diagonal_coloring_odd(z3_3, phi)
        assert c.color_of[z3_3.rank((0, 0))] == 0
        assert verify_proper_coloring(z3_3, c) is None
        assert c.num_colors() == 3

    def test_odd_rejects_bad_phi(self, z3_3):
        with pytest.raises(DiagonalError):
            diagonal_coloring_odd(z3_3, CompleteMapping(z3_3.T, (1, 0, 2)))

    def test_constant_coloring_rejected(self, z3_3):
        bad = Coloring(z3_3, (0,) * 9)
        violation = verify_proper_coloring(z3_3, bad)
        assert violation is not None

    def test_corrupted_vertex_detected(self, z3_3):
        phi = CompleteMapping(z3_3.T, (0, 1, 2))
        good = diagonal_coloring_odd(z3_3, phi)
        colors = list(good.color_of)
        colors[4] = (colors[4] + 1) % 3
        violation = verify_proper_coloring(z3_3, Coloring(z3_3, tuple(colors)))
        assert violation is not None
        assert 4 in (z3_3.rank(violation[0]), z3_3.rank(violation[1]))

    def test_odd_klein_n3(self):
        spec = DiagonalGraph(make_group("klein"), 3)
        phi = find_complete_mapping(spec.T).mapping
        c = diagonal_coloring_odd(spec, phi)
        assert verify_proper_coloring(spec, c) is None
        assert c.num_colors() == 4

    def test_odd_z5_n5(self):
        spec = DiagonalGraph(cyclic_group(5), 5)
        phi = find_complete_mapping(spec.T).mapping
        c = diagonal_coloring_odd(spec, phi)
        assert verify_proper_coloring(spec, c) is None
        assert c.num_colors() == 5


class TestGroupAction:
    def test_generators_preserve_adjacency(self, z3_3):
        pg = diagonal_group_generators(z3_3.T, 3)
        verts = list(z3_3.vertices())
        for gen in pg.generators:
            for u, v in itertools.combinations(verts, 2):
                gu = z3_3.unrank(gen(z3_3.rank(u)))
                gv = z3_3.unrank(gen(z3_3.rank(v)))
                assert z3_3.adjacent(u, v) == z3_3.adjacent(gu, gv)

    def test_action_is_transitive(self, z3_3):
        pg = diagonal_group_generators(z3_3.T, 3)
        g = group_closure(pg, cap=10**5)
        orbit = {p(0) for p in g.perms}
        assert len(orbit) == z3_3.num_vertices


class TestHamming:
    def test_dropping_translate_rule_gives_hamming(self, s3_4):
        for u in itertools.islice(s3_4.vertices(), 30):
            for v in s3_4.neighbours(u):
                tag = s3_4.adjacency(u, v)
                assert (tag[0] == "A1") == hamming_graph_adjacent(u, v)

    def test_hamming_witness_z3(self):
        clique, coloring = hamming_witness(2, cyclic_group(3))
        assert len(clique) == 3
        nbs = [v for v in coloring if hamming_graph_adjacent((0, 0), v)]
        assert len(nbs) == 4

    def test_hamming_needs_abelian(self):
        with pytest.raises(DiagonalError):
            hamming_witness(2, make_group("s3"))
