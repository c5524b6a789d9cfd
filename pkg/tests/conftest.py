import pytest

from synchro import groups, mapping


def catalog_small():
    """Catalog instances of order <= 24 exercised by the search/criterion
    cross-check."""
    specs = (
        [f"z{n}" for n in range(2, 25)]
        + [f"d{n}" for n in range(6, 25, 2)]
        + [
            "klein",
            "q8",
            "a4",
            "s4",
            "s3",
            "elementary 2 3",
            "elementary 2 4",
            "elementary 3 2",
            "z2 x z6",
            "z2 x z10",
            "z3 x s3",
            "z2 x d6",
        ]
    )
    return [(s, groups.make_group(s)) for s in specs]


@pytest.fixture(scope="session")
def small_catalog():
    return catalog_small()


@pytest.fixture(scope="session")
def a5():
    return groups.alternating_group(5)


@pytest.fixture(scope="session")
def a5_mapping(a5):
    """Complete mapping of A5 (odd-order shortcut does not apply; this
    runs the full search once per session)."""
    result = mapping.find_complete_mapping(a5)
    assert result.status is mapping.SearchStatus.FOUND
    return result.mapping
