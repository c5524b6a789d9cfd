"""Diagonal groups D(T,n), their graph, and proper colourings.

Vertices are (n-1)-tuples over a finite group T.  Two vertices are
adjacent when they differ in exactly one coordinate (rule A1) or when
one is a common left translate of the other (rule A2).  The graph is
kept implicit (adjacency predicate + neighbour iterator) so that large
vertex sets stay checkable by streaming edges.

For n > 2 the graph carries a proper colouring with |T| colours, built
from coordinate quotients when n is even and additionally from a
complete mapping of T when n is odd; together with the canonical
cliques of size |T| this certifies clique number = chromatic number,
which is the non-synchronization certificate for any group of
automorphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .groups import FiniteGroup, PermGroup, Permutation
from .mapping import CompleteMapping, verify_complete_mapping


class DiagonalError(Exception):
    pass


@dataclass(frozen=True)
class DiagonalGraph:
    T: FiniteGroup
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DiagonalError("need n >= 2")

    @property
    def num_vertices(self) -> int:
        return self.T.order ** (self.n - 1)

    def rank(self, coords) -> int:
        # mixed radix, first coordinate most significant
        r = 0
        for t in coords:
            r = r * self.T.order + t
        return r

    def unrank(self, r: int) -> tuple[int, ...]:
        coords = []
        for _ in range(self.n - 1):
            r, t = divmod(r, self.T.order)
            coords.append(t)
        return tuple(reversed(coords))

    def vertices(self):
        return itertools.product(range(self.T.order), repeat=self.n - 1)

    def adjacency(self, u, v):
        """Rule tag for the pair: ('A1', coordinate index i in 2..n),
        ('A2', witness x) or None."""
        T = self.T
        diff = [k for k in range(self.n - 1) if u[k] != v[k]]
        if len(diff) == 1:
            return ("A1", diff[0] + 2)
        if not diff:
            return None
        x = T.mul(v[0], T.inv(u[0]))
        if x != T.identity and all(
            v[k] == T.mul(x, u[k]) for k in range(1, self.n - 1)
        ):
            return ("A2", x)
        return None

    def adjacent(self, u, v) -> bool:
        return self.adjacency(u, v) is not None

    def neighbours(self, u):
        """All neighbours of u, in deterministic order: A1 cliques by
        coordinate, then the A2 (left translate) clique."""
        T = self.T
        for k in range(self.n - 1):
            for t in range(T.order):
                if t != u[k]:
                    yield u[:k] + (t,) + u[k + 1 :]
        for x in range(T.order):
            if x != T.identity:
                yield tuple(T.mul(x, t) for t in u)

    def degree_of_vertex(self) -> int:
        return self.n * (self.T.order - 1)


def canonical_cliques(spec: DiagonalGraph, vertex) -> list[list[tuple]]:
    """The n cliques of size |T| through the vertex: n-1 from varying a
    single coordinate, one from left translation."""
    T = spec.T
    cliques = []
    for k in range(spec.n - 1):
        cliques.append(
            [vertex[:k] + (t,) + vertex[k + 1 :] for t in range(T.order)]
        )
    cliques.append(
        [tuple(T.mul(x, t) for t in vertex) for x in range(T.order)]
    )
    for cl in cliques:
        for a, b in itertools.combinations(cl, 2):
            if not spec.adjacent(a, b):
                raise DiagonalError(f"canonical clique broken at {a},{b}")
    return cliques


def diagonal_group_generators(
    T: FiniteGroup, n: int, automorphisms=()
) -> PermGroup:
    """Generators of D(T,n) acting on the |T|^(n-1) ranked vertices.

    Emitted, in order: one generator per (generator of T, slot) pair for
    the translation part; the supplied outer automorphisms of T (inner
    ones are already covered); adjacent coordinate transpositions; and
    the map folding the first coordinate through, which extends the
    coordinate permutations to the full symmetric group on n slots.
    """
    spec = DiagonalGraph(T, n)
    if spec.num_vertices > 10**7:
        raise DiagonalError("vertex count too large to index")

    def as_perm(f) -> Permutation:
        images = [0] * spec.num_vertices
        for coords in spec.vertices():
            images[spec.rank(coords)] = spec.rank(f(coords))
        return Permutation(tuple(images))

    gens = []
    for s in T.generating_set():
        s_inv = T.inv(s)
        # slot 1: every coordinate is left-divided by s
        gens.append(as_perm(lambda c, si=s_inv: tuple(T.mul(si, t) for t in c)))
        for k in range(n - 1):
            gens.append(
                as_perm(
                    lambda c, s=s, k=k: c[:k] + (T.mul(c[k], s),) + c[k + 1 :]
                )
            )
    for alpha in automorphisms:
        gens.append(as_perm(lambda c, a=alpha: tuple(a[t] for t in c)))
    for k in range(n - 2):
        gens.append(
            as_perm(
                lambda c, k=k: c[:k] + (c[k + 1], c[k]) + c[k + 2 :]
            )
        )
    gens.append(
        as_perm(
            lambda c: (T.inv(c[0]),)
            + tuple(T.mul(T.inv(c[0]), t) for t in c[1:])
        )
    )
    return PermGroup(spec.num_vertices, tuple(gens))


@dataclass(frozen=True)
class Coloring:
    spec: DiagonalGraph
    color_of: tuple[int, ...]  # vertex rank -> element of T

    def num_colors(self) -> int:
        return len(set(self.color_of))

    def fiber_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for c in self.color_of:
            sizes[c] = sizes.get(c, 0) + 1
        return sizes


def diagonal_coloring_even(spec: DiagonalGraph) -> Coloring:
    """Colour (t2,...,tn) by (t2^-1 t3)(t4^-1 t5)...(t_{n-2}^-1 t_{n-1}) tn^-1."""
    if spec.n % 2 or spec.n <= 2:
        raise DiagonalError("even colouring needs even n > 2")
    T = spec.T
    colors = [0] * spec.num_vertices
    for coords in spec.vertices():
        c = T.identity
        for k in range(0, spec.n - 3, 2):
            c = T.mul(c, T.mul(T.inv(coords[k]), coords[k + 1]))
        c = T.mul(c, T.inv(coords[-1]))
        colors[spec.rank(coords)] = c
    return Coloring(spec, tuple(colors))


def diagonal_coloring_odd(
    spec: DiagonalGraph, phi: CompleteMapping
) -> Coloring:
    """Colour (t2,...,tn) by
    (t2^-1 t3)...(t_{n-3}^-1 t_{n-2})(t_{n-1}^-1 psi(tn)) where
    psi(g) = g*phi(g) for a complete mapping phi of T."""
    if spec.n % 2 == 0 or spec.n < 3:
        raise DiagonalError("odd colouring needs odd n >= 3")
    T = spec.T
    if phi.group.order != T.order or not verify_complete_mapping(T, phi.phi):
        raise DiagonalError("phi is not a complete mapping of T")
    psi = [T.mul(g, phi.phi[g]) for g in range(T.order)]
    colors = [0] * spec.num_vertices
    for coords in spec.vertices():
        c = T.identity
        for k in range(0, spec.n - 4, 2):
            c = T.mul(c, T.mul(T.inv(coords[k]), coords[k + 1]))
        c = T.mul(c, T.mul(T.inv(coords[-2]), psi[coords[-1]]))
        colors[spec.rank(coords)] = c
    return Coloring(spec, tuple(colors))


def verify_proper_coloring(spec: DiagonalGraph, coloring: Coloring):
    """None when proper; otherwise the first monochromatic edge in
    vertex-rank order."""
    color = coloring.color_of
    for coords in spec.vertices():
        u = spec.rank(coords)
        for nb in spec.neighbours(coords):
            v = spec.rank(nb)
            if v > u and color[u] == color[v]:
                return (coords, nb)
    return None


def hamming_graph_adjacent(u, v) -> bool:
    return sum(a != b for a, b in zip(u, v)) == 1


def hamming_witness(n: int, A: FiniteGroup):
    """A clique and a proper sum-colouring of the Hamming graph H(n,|A|)
    over the abelian group A; both are verified before returning."""
    if not A.is_abelian():
        raise DiagonalError("Hamming colouring needs an abelian group")
    q = A.order
    clique = [(0,) * (n - 1) + (t,) for t in range(q)]
    for u, v in itertools.combinations(clique, 2):
        if not hamming_graph_adjacent(u, v):
            raise DiagonalError("clique construction broken")

    def color(u):
        c = A.identity
        for t in u:
            c = A.mul(c, t)
        return c

    coloring = {
        u: color(u) for u in itertools.product(range(q), repeat=n)
    }
    for u, c in coloring.items():
        for k in range(n):
            for t in range(q):
                if t != u[k]:
                    v = u[:k] + (t,) + u[k + 1 :]
                    if coloring[v] == c:
                        raise DiagonalError(
                            f"sum colouring not proper at {u},{v}"
                        )
    return clique, coloring
