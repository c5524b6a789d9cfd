"""Complete mappings of finite groups.

A complete mapping of G is a bijection phi with g -> g*phi(g) also a
bijection; equivalently the Cayley table of G, viewed as a Latin square,
has an orthogonal mate.  Existence is decided by the Hall-Paige
criterion (Sylow 2-subgroups trivial or non-cyclic); the search here is
independent of the criterion so the two can be checked against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .groups import FiniteGroup, abelianization, sylow2_is_cyclic

DEFAULT_BUDGET = 10**9


class SearchStatus(Enum):
    FOUND = "found"
    NOT_FOUND = "not-found"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class CompleteMapping:
    group: FiniteGroup
    phi: tuple[int, ...]


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    mapping: CompleteMapping | None = None
    nodes: int = 0


def verify_complete_mapping(g: FiniteGroup, phi) -> bool:
    """True iff phi and psi(x) = x*phi(x) are both bijections on g."""
    phi = list(phi)
    if len(phi) != g.order or sorted(phi) != list(range(g.order)):
        return False
    psi = sorted(g.mul(x, phi[x]) for x in range(g.order))
    return psi == list(range(g.order))


def hall_paige_predicate(g: FiniteGroup) -> bool:
    """The (proved) Hall-Paige criterion for existence of a complete
    mapping: Sylow 2-subgroups are trivial or non-cyclic."""
    return not sylow2_is_cyclic(g)


def find_complete_mapping(
    g: FiniteGroup, budget: int = DEFAULT_BUDGET
) -> SearchResult:
    """Depth-first search for the lexicographically first complete mapping.

    phi is assigned on elements in table order; two bitmask 'used' sets
    (phi-images and psi-images) prune the tree.  A necessary condition
    in the abelianization (any completion must balance the coset sums of
    the unassigned rows, free phi-values and free psi-values) prunes
    dead branches, and in particular refutes groups whose product of
    all elements falls outside the derived subgroup at the root.  Budget
    exhaustion is a distinct outcome, never conflated with a completed
    refutation.
    """
    n = g.order
    if n % 2 == 1:
        # identity always works in odd order: psi(g) = g^2 is a bijection
        ident = tuple(range(n))
        assert verify_complete_mapping(g, ident)
        return SearchResult(
            SearchStatus.FOUND, CompleteMapping(g, ident), nodes=0
        )
    phi = [0] * n
    nodes = 0
    table = g.table
    full = (1 << n) - 1
    quot, coset = abelianization(g)
    qadd = quot.table
    qinv = quot.inverses if quot.order > 1 else None
    # per-row watched column: the last value known feasible for that row,
    # rechecked first so the forward check is usually O(1) per future row
    watch = [0] * n

    def extend(
        x: int, used_phi: int, used_psi: int, sr: int, sp: int, ss: int
    ) -> SearchStatus | None:
        nonlocal nodes
        if x == n:
            return SearchStatus.FOUND
        # coset-sum balance: remaining psi values must sum (in G/G') to
        # the sum of the remaining rows plus the sum of the free values
        if qinv is not None and ss != qadd[sr][sp]:
            return None
        row = table[x]
        nsr = qadd[sr][qinv[coset[x]]] if qinv is not None else 0
        for v in range(n):
            bit_v = 1 << v
            if used_phi & bit_v:
                continue
            w = row[v]
            bit_w = 1 << w
            if used_psi & bit_w:
                continue
            nodes += 1
            if nodes > budget:
                return SearchStatus.BUDGET_EXHAUSTED
            up = used_phi | bit_v
            us = used_psi | bit_w
            free_phi = full & ~up
            free_psi = full & ~us
            # forward check: every unassigned row must retain a feasible
            # (phi-value, psi-value) pair
            feasible = True
            for y in range(x + 1, n):
                ry = table[y]
                wv = watch[y]
                if (free_phi >> wv & 1) and (free_psi >> ry[wv] & 1):
                    continue
                m = free_phi
                found = False
                while m:
                    low = m & -m
                    vv = low.bit_length() - 1
                    if free_psi >> ry[vv] & 1:
                        watch[y] = vv
                        found = True
                        break
                    m ^= low
                if not found:
                    feasible = False
                    break
            if feasible:
                phi[x] = v
                if qinv is not None:
                    res = extend(
                        x + 1,
                        up,
                        us,
                        nsr,
                        qadd[sp][qinv[coset[v]]],
                        qadd[ss][qinv[coset[w]]],
                    )
                else:
                    res = extend(x + 1, up, us, 0, 0, 0)
                if res is not None:
                    return res
        return None

    sigma = 0
    for x in range(n):
        sigma = qadd[sigma][coset[x]]
    res = extend(0, 0, 0, sigma, sigma, sigma)
    if res is SearchStatus.FOUND:
        mapping = CompleteMapping(g, tuple(phi))
        assert verify_complete_mapping(g, mapping.phi)
        return SearchResult(SearchStatus.FOUND, mapping, nodes)
    if res is SearchStatus.BUDGET_EXHAUSTED:
        return SearchResult(SearchStatus.BUDGET_EXHAUSTED, None, nodes)
    return SearchResult(SearchStatus.NOT_FOUND, None, nodes)
