import itertools
import json
from pathlib import Path

import pytest

from synchro.groups import (
    PermGroup,
    Permutation,
    make_group,
    pair_action,
    parse_permutation,
    regular_perm_group,
)
from synchro.orbitals import (
    CollapsedAdjacency,
    OrbitalError,
    collapsed_adjacency,
    intersection_algebra_expand,
    orbital_decomposition,
    rank_and_selfpaired,
    wilcox_check,
)

DATA = Path(__file__).parent.parent / "src" / "synchro" / "data"


def a5_natural() -> PermGroup:
    return PermGroup(
        5,
        (
            parse_permutation("(0 1 2)", 5),
            parse_permutation("(0 1 2 3 4)", 5),
        ),
    )


@pytest.fixture(scope="module")
def a5_pairs():
    action, pairs = pair_action(a5_natural())
    return action, pairs


@pytest.fixture(scope="module")
def a5_pairs_decomposition(a5_pairs):
    action, _ = a5_pairs
    return action, orbital_decomposition(action, 0)


class TestDecomposition:
    def test_subdegrees(self, a5_pairs_decomposition):
        _, dec = a5_pairs_decomposition
        assert dec.subdegrees == (1, 3, 6)
        assert dec.rank == 3

    def test_pairing_is_identity(self, a5_pairs_decomposition):
        _, dec = a5_pairs_decomposition
        assert dec.pairing == (0, 1, 2)

    def test_base_suborbit_first(self, a5_pairs_decomposition):
        _, dec = a5_pairs_decomposition
        assert dec.suborbits[0] == (0,)

    def test_transversal_reaches_suborbits(self, a5_pairs_decomposition):
        _, dec = a5_pairs_decomposition
        for i, rep in enumerate(dec.transversal):
            assert rep(0) in dec.suborbits[i]

    def test_intransitive_rejected(self):
        g = PermGroup(4, (Permutation((1, 0, 2, 3)),))
        with pytest.raises(OrbitalError):
            orbital_decomposition(g, 0)


def petersen_oracle(action, pairs, dec):
    """Brute-force path counting on the 10-vertex disjointness graph,
    independent of the collapsed-adjacency code path."""
    edges = {
        (u, v)
        for u in range(10)
        for v in range(10)
        if not (set(pairs[u]) & set(pairs[v]))
    }
    suborbit_of = {}
    for i, orb in enumerate(dec.suborbits):
        for x in orb:
            suborbit_of[x] = i
    matrix = []
    for j in range(3):
        w = dec.suborbits[j][0]
        row = [0, 0, 0]
        for z in range(10):
            if (w, z) in edges:
                row[suborbit_of[z]] += 1
        matrix.append(tuple(row))
    return tuple(matrix)


class TestCollapsedAdjacency:
    def test_first_matrix_is_identity(self, a5_pairs_decomposition):
        action, dec = a5_pairs_decomposition
        a1 = collapsed_adjacency(action, dec, 0)
        assert a1.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_valency_three_matrix(self, a5_pairs_decomposition):
        action, dec = a5_pairs_decomposition
        a2 = collapsed_adjacency(action, dec, 1)
        assert a2.matrix == ((0, 3, 0), (1, 0, 2), (0, 1, 2))

    def test_against_path_counting_oracle(self, a5_pairs, a5_pairs_decomposition):
        action, pairs = a5_pairs
        _, dec = a5_pairs_decomposition
        a2 = collapsed_adjacency(action, dec, 1)
        oracle = petersen_oracle(action, pairs, dec)
        # the oracle counts neighbours of a suborbit representative;
        # both describe the disjointness orbital
        assert a2.matrix == oracle

    def test_row_sums_equal_subdegree(self, a5_pairs_decomposition):
        action, dec = a5_pairs_decomposition
        for i in range(dec.rank):
            m = collapsed_adjacency(action, dec, i)
            for row in m.matrix:
                assert sum(row) == dec.subdegrees[i]


FIXTURE_ACTIONS = [
    ("z5 regular", lambda: regular_perm_group(make_group("z5"))),
    ("z6 regular", lambda: regular_perm_group(make_group("z6"))),
    ("s3 regular", lambda: regular_perm_group(make_group("s3"))),
    ("d8 regular", lambda: regular_perm_group(make_group("d8"))),
    ("q8 regular", lambda: regular_perm_group(make_group("q8"))),
    ("a4 regular", lambda: regular_perm_group(make_group("a4"))),
    (
        "s4 natural",
        lambda: PermGroup(
            4,
            (
                parse_permutation("(0 1)", 4),
                parse_permutation("(0 1 2 3)", 4),
            ),
        ),
    ),
    ("s4 pairs", lambda: pair_action(
        PermGroup(
            4,
            (
                parse_permutation("(0 1)", 4),
                parse_permutation("(0 1 2 3)", 4),
            ),
        )
    )[0]),
    ("a5 natural", a5_natural),
    ("a5 pairs", lambda: pair_action(a5_natural())[0]),
]


@pytest.mark.parametrize("name,build", FIXTURE_ACTIONS)
def test_invariants_across_fixture_actions(name, build):
    action = build()
    dec = orbital_decomposition(action, 0)
    assert sum(dec.subdegrees) == action.degree
    # pairing is an involution and pairs equal-sized suborbits
    for i, j in enumerate(dec.pairing):
        assert dec.pairing[j] == i
        assert dec.subdegrees[i] == dec.subdegrees[j]
    for i in range(dec.rank):
        m = collapsed_adjacency(action, dec, i)
        for row in m.matrix:
            assert sum(row) == dec.subdegrees[i]


class TestIntersectionAlgebra:
    def test_recovers_all_matrices_for_petersen_action(
        self, a5_pairs_decomposition
    ):
        action, dec = a5_pairs_decomposition
        mats = [collapsed_adjacency(action, dec, i) for i in range(3)]
        recovered = intersection_algebra_expand(mats[1], mats[1], 3)
        for want, got in zip(mats, recovered):
            assert got.matrix == want.matrix

    def test_wrong_rank_rejected(self, a5_pairs_decomposition):
        action, dec = a5_pairs_decomposition
        mats = [collapsed_adjacency(action, dec, i) for i in range(3)]
        with pytest.raises(OrbitalError):
            intersection_algebra_expand(mats[1], mats[2], 4)

    def test_degenerate_input_rejected(self):
        ident = tuple(
            tuple(1 if i == j else 0 for j in range(3)) for i in range(3)
        )
        with pytest.raises(OrbitalError):
            intersection_algebra_expand(ident, ident, 3)


def load_expected(name):
    lines = (DATA / name).read_text().splitlines()
    return tuple(tuple(map(int, row.split())) for row in lines[1:])


@pytest.fixture(scope="module")
def rank20_fixture():
    a2 = load_expected("j4_a2_expected.txt")
    a4 = load_expected("j4_a4_expected.txt")
    meta = json.loads((DATA / "j4_orbitals.json").read_text())
    return a2, a4, meta


@pytest.fixture(scope="module")
def expansion(rank20_fixture):
    a2, a4, meta = rank20_fixture
    return intersection_algebra_expand(a2, a4, 20), rank20_fixture


class TestRank20Expansion:
    """The two bundled valency-1386 and valency-18480 matrices generate
    a 20-dimensional intersection algebra; expanding it must return the
    generators unchanged and reproduce the known double-coset entries."""

    def test_generators_recovered_bit_identically(self, expansion):
        basis, (a2, a4, meta) = expansion
        assert basis[1].matrix == a2
        assert basis[3].matrix == a4
        assert basis[0].matrix == tuple(
            tuple(int(i == j) for j in range(20)) for i in range(20)
        )

    def test_row_sums_match_suborbit_sizes(self, expansion):
        basis, (a2, a4, meta) = expansion
        sizes = [o["s1"] for o in meta["orbitals"]]
        for k, ca in enumerate(basis):
            for row in ca.matrix:
                assert sum(row) == sizes[k]

    def test_double_coset_entries(self, expansion):
        basis, (a2, a4, meta) = expansion
        pairing = [o["pair"] - 1 for o in meta["orbitals"]]
        expected = json.loads(
            (DATA / "j4_square_entries_expected.json").read_text()
        )
        report = wilcox_check(basis, pairing)
        assert [r["inverse_entry"] for r in report] == expected[
            "inverse_in_square"
        ]
        assert [r["self_entry"] for r in report] == expected["self_in_square"]
        assert all(r["inverse_in_square"] and r["self_in_square"] for r in report)


class TestWilcoxSemantics:
    def test_zero_entries_reported(self):
        mats = [
            CollapsedAdjacency(0, ((1, 0), (0, 1))),
            CollapsedAdjacency(1, ((0, 1), (1, 0))),
        ]
        report = wilcox_check(mats, [0, 1])
        assert report[0]["inverse_in_square"] is True
        assert report[1]["inverse_in_square"] is False
        assert report[1]["self_in_square"] is False


class TestPermutationCharacterArithmetic:
    def test_all_multiplicity_one(self):
        assert rank_and_selfpaired([1, 1, 1], [1, 1, 1]) == (3, 3)

    def test_multiplicity_two_constituent(self):
        mult = [1] * 16 + [2]
        ind = [1] * 16 + [0]
        assert rank_and_selfpaired(mult, ind) == (20, 16)

    def test_length_mismatch(self):
        with pytest.raises(OrbitalError):
            rank_and_selfpaired([1, 2], [1])
