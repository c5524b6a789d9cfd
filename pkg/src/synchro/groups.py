"""Permutations and small finite groups as explicit multiplication tables.

Everything downstream acts on these two carriers: a Permutation is an
image list on 0-based points, a FiniteGroup is an order x order table of
element indices.  Groups are kept at desk scale (tables up to ~10^5
elements); anything bigger stays a generator-only PermGroup.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path


class SizeOverflowError(Exception):
    """Closure exceeded the requested element cap."""


class GroupFormatError(Exception):
    """Malformed group descriptor, table file or permutation literal."""


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupFormatError(f"not a bijection: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # left-to-right: (p*q)(x) = q(p(x)), matching right actions x^(pq)
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @staticmethod
    def from_cycles(cycles, degree: int) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                nxt = cyc[(i + 1) % len(cyc)]
                if pt >= degree or nxt >= degree:
                    raise GroupFormatError(f"point out of range in cycle {cyc}")
                images[pt] = nxt
        return Permutation(tuple(images))


def perm_order(p: Permutation) -> int:
    order = 1
    for cyc in p.cycles():
        order = order * len(cyc) // gcd(order, len(cyc))
    return order


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse '[1,0,2]' image-list or '(0 1)(2 3)' cycle literals."""
    text = text.strip()
    if text.startswith("["):
        try:
            images = [int(t) for t in re.findall(r"-?\d+", text)]
        except ValueError as exc:
            raise GroupFormatError(str(exc)) from exc
        if degree is not None and len(images) != degree:
            raise GroupFormatError(f"expected degree {degree}, got {len(images)}")
        return Permutation(tuple(images))
    if text.startswith("(") or text == "" or text == "()":
        cycles = [
            tuple(int(t) for t in re.split(r"[,\s]+", body.strip()) if t)
            for body in re.findall(r"\(([^()]*)\)", text)
        ]
        cycles = [c for c in cycles if c]
        if degree is None:
            degree = max((max(c) for c in cycles), default=-1) + 1
        return Permutation.from_cycles(cycles, degree)
    raise GroupFormatError(f"unrecognized permutation literal: {text!r}")


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise GroupFormatError("generator degree mismatch")

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)


# ---------------------------------------------------------------------------
# explicit-table groups


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    labels: tuple[str, ...] | None = None
    # a generating set (element indices), kept when known; used by callers
    # that need to act by generators rather than by all elements
    generators: tuple[int, ...] | None = None
    # the permutations realizing each element, when the group was built as
    # a closure of a PermGroup
    perms: tuple[Permutation, ...] | None = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        e = self.identity
        for b in range(self.order):
            if self.table[a][b] == e:
                return b
        raise GroupFormatError(f"element {a} has no inverse")

    @property
    def inverses(self) -> tuple[int, ...]:
        return tuple(self.inv(a) for a in range(self.order))

    def element_order(self, a: int) -> int:
        e, x, k = self.identity, a, 1
        while x != e:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def conjugate(self, a: int, g: int) -> int:
        """a^g = g^-1 a g."""
        return self.mul(self.mul(self.inv(g), a), g)

    def generating_set(self) -> tuple[int, ...]:
        if self.generators is not None:
            return self.generators
        return tuple(i for i in range(self.order) if i != self.identity)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def check_axioms(self) -> None:
        """Identity/inverse laws always; associativity on all triples
        (meant for order <= ~10^3)."""
        e = self.identity
        for a in range(self.order):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise GroupFormatError(f"identity law fails at {a}")
        self.inverses  # raises if some element lacks an inverse
        for a in range(self.order):
            for b in range(self.order):
                ab = self.table[a][b]
                for c in range(self.order):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise GroupFormatError(
                            f"associativity fails at ({a},{b},{c})"
                        )


def group_closure(g: PermGroup, cap: int = 100_000) -> FiniteGroup:
    """Materialize <generators> as an explicit table.

    Element 0 is the identity; the rest come in breadth-first order,
    applying generators in their listed order, so indices are reproducible.
    """
    ident = g.identity()
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new_frontier = []
        for x in frontier:
            for gen in g.generators:
                y = x * gen
                if y not in index:
                    if len(elements) >= cap:
                        raise SizeOverflowError(
                            f"closure exceeds cap {cap}"
                        )
                    index[y] = len(elements)
                    elements.append(y)
                    new_frontier.append(y)
        frontier = new_frontier
    n = len(elements)
    table = tuple(
        tuple(index[elements[a] * elements[b]] for b in range(n))
        for a in range(n)
    )
    gens = tuple(
        sorted({index[p] for p in g.generators if not p.is_identity()})
    )
    return FiniteGroup(
        order=n,
        table=table,
        identity=0,
        labels=tuple(str(p) for p in elements),
        generators=gens or None,
        perms=tuple(elements),
    )


@dataclass(frozen=True)
class ConjugacyClassing:
    class_of: tuple[int, ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]
    centralizer_orders: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(self.representatives)


def conjugacy_classes(g: FiniteGroup) -> ConjugacyClassing:
    """Classes ordered by (element order, class size, least element index)."""
    n = g.order
    unseen = set(range(n))
    raw = []
    while unseen:
        a = min(unseen)
        cls = {g.conjugate(a, x) for x in range(n)}
        unseen -= cls
        raw.append(sorted(cls))
    raw.sort(key=lambda cls: (g.element_order(cls[0]), len(cls), cls[0]))
    class_of = [0] * n
    reps, sizes, cents = [], [], []
    for k, cls in enumerate(raw):
        for a in cls:
            class_of[a] = k
        reps.append(cls[0])
        sizes.append(len(cls))
        cents.append(n // len(cls))
    return ConjugacyClassing(
        tuple(class_of), tuple(reps), tuple(sizes), tuple(cents)
    )


def orbit_and_stabilizer(
    g: PermGroup, point: int
) -> tuple[list[int], PermGroup]:
    """Orbit of the point plus Schreier generators of its stabilizer."""
    if point >= g.degree:
        raise GroupFormatError(f"point {point} out of range")
    transversal = {point: g.identity()}
    orbit = [point]
    i = 0
    while i < len(orbit):
        u = orbit[i]
        i += 1
        for gen in g.generators:
            v = gen(u)
            if v not in transversal:
                transversal[v] = transversal[u] * gen
                orbit.append(v)
    stab_gens = []
    seen = set()
    for u in orbit:
        for gen in g.generators:
            s = transversal[u] * gen * transversal[gen(u)].inverse()
            if not s.is_identity() and s not in seen:
                seen.add(s)
                stab_gens.append(s)
    return orbit, PermGroup(g.degree, tuple(stab_gens))


def commutator_subgroup(g: FiniteGroup) -> frozenset[int]:
    """The subgroup generated by all commutators [a,b]."""
    gens = {
        g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b))
        for a in range(g.order)
        for b in range(a)
    }
    gens.discard(g.identity)
    closed = {g.identity}
    frontier = [g.identity]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = g.mul(x, s)
            if y not in closed:
                closed.add(y)
                frontier.append(y)
    return frozenset(closed)


def abelianization(g: FiniteGroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The quotient G/G' together with the map element -> coset index.

    Cosets are indexed by their least element, identity coset first.
    """
    derived = commutator_subgroup(g)
    coset_of = [-1] * g.order
    reps = []
    for x in (g.identity, *range(g.order)):
        if coset_of[x] == -1:
            idx = len(reps)
            reps.append(x)
            for d in derived:
                coset_of[g.mul(x, d)] = idx
    table = tuple(
        tuple(coset_of[g.mul(a, b)] for b in reps) for a in reps
    )
    quotient = FiniteGroup(len(reps), table)
    return quotient, tuple(coset_of)


def two_part(n: int) -> int:
    m = 1
    while n % 2 == 0:
        n //= 2
        m *= 2
    return m


def sylow2_is_cyclic(g: FiniteGroup) -> bool:
    """True iff the Sylow 2-subgroup is nontrivial and cyclic.

    A 2-group is cyclic iff it has an element of full order, and Sylow
    subgroups are conjugate, so one witness element settles it.  The
    trivial Sylow subgroup (odd order) deliberately counts as non-cyclic
    here: odd-order groups always admit a complete mapping.
    """
    m = two_part(g.order)
    if m == 1:
        return False
    return any(g.element_order(a) == m for a in range(g.order))


# ---------------------------------------------------------------------------
# catalog constructors


def _from_elements(elements, mul, label, gens) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = tuple(
        tuple(index[mul(elements[a], elements[b])] for b in range(n))
        for a in range(n)
    )
    return FiniteGroup(
        order=n,
        table=table,
        identity=0,
        labels=tuple(label(e) for e in elements),
        generators=tuple(sorted(index[e] for e in gens)) or None,
    )


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupFormatError("cyclic order must be >= 1")
    return _from_elements(
        list(range(n)),
        lambda a, b: (a + b) % n,
        str,
        [1 % n] if n > 1 else [],
    )


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given order (order = 2n, n >= 1)."""
    if order < 2 or order % 2:
        raise GroupFormatError("dihedral order must be even and >= 2")
    n = order // 2

    def mul(a, b):
        (i, s), (j, t) = a, b
        # s marks a reflection; r^i s * r^j t = r^(i-j) s t when s flips
        return ((i - j) % n if s else (i + j) % n, s ^ t)

    # rotations and reflections interleaved; an all-rotations prefix
    # makes the complete-mapping search degenerate
    elements = [(i, s) for i in range(n) for s in (0, 1)]
    return _from_elements(
        elements,
        mul,
        lambda e: f"r{e[0]}" + ("s" if e[1] else ""),
        [(1 % n, 0), (0, 1)],
    )


def symmetric_group(n: int) -> FiniteGroup:
    elements = [Permutation(p) for p in itertools.permutations(range(n))]
    gens = []
    if n >= 2:
        gens.append(parse_permutation("(0 1)", n))
    if n >= 3:
        gens.append(Permutation(tuple(list(range(1, n)) + [0])))
    return _from_elements(elements, lambda a, b: a * b, str, gens)


def alternating_group(n: int) -> FiniteGroup:
    def sign(p: Permutation) -> int:
        return (-1) ** sum(len(c) - 1 for c in p.cycles())

    elements = [
        Permutation(p)
        for p in itertools.permutations(range(n))
        if sign(Permutation(p)) == 1
    ]
    gens = []
    if n >= 3:
        gens.append(parse_permutation("(0 1 2)", n))
    if n >= 4:
        if n % 2:
            gens.append(Permutation(tuple(list(range(1, n)) + [0])))
        else:
            gens.append(Permutation(tuple([0] + list(range(2, n)) + [1])))
    return _from_elements(elements, lambda a, b: a * b, str, gens)


def elementary_abelian_group(p: int, k: int) -> FiniteGroup:
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise GroupFormatError(f"{p} is not prime")
    elements = list(itertools.product(range(p), repeat=k))
    gens = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
    return _from_elements(
        elements,
        lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
        lambda e: "".join(map(str, e)) if k else "e",
        gens,
    )


_Q8_TABLE = {
    # units 1,-1,i,-i,j,-j,k,-k by index
    "names": ["1", "-1", "i", "-i", "j", "-j", "k", "-k"],
}


def quaternion_group() -> FiniteGroup:
    # quaternion units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    mul_axis = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(a, b):
        (sa, xa), (sb, xb) = a, b
        s, x = mul_axis[(xa, xb)]
        return (sa * sb * s, x)

    elements = [(1, 0), (-1, 0), (1, 1), (-1, 1),
                (1, 2), (-1, 2), (1, 3), (-1, 3)]
    names = dict(zip(elements, _Q8_TABLE["names"]))
    return _from_elements(elements, mul, names.__getitem__, [(1, 1), (1, 2)])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    # diagonal traversal keeps either factor from forming a long prefix,
    # which would degrade the complete-mapping search
    elements = sorted(
        ((a, b) for a in range(g.order) for b in range(h.order)),
        key=lambda e: (e != (g.identity, h.identity), e[0] + e[1], e[0]),
    )

    def mul(x, y):
        return (g.mul(x[0], y[0]), h.mul(x[1], y[1]))

    gens = [(a, h.identity) for a in g.generating_set()] + [
        (g.identity, b) for b in h.generating_set()
    ]
    return _from_elements(
        elements,
        mul,
        lambda e: f"({g.label(e[0])},{h.label(e[1])})",
        gens,
    )


def read_group_file(path) -> FiniteGroup:
    """Text format: 'order n', then the n x n table, then optionally a
    'labels' line followed by n whitespace-separated labels."""
    lines = Path(path).read_text().split("\n")
    pos = 0

    def next_line():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1
        if pos >= len(lines):
            return None
        pos += 1
        return lines[pos - 1].strip()

    head = next_line()
    if head is None or not head.startswith("order"):
        raise GroupFormatError(f"{path}: expected 'order n' header")
    try:
        n = int(head.split()[1])
    except (IndexError, ValueError) as exc:
        raise GroupFormatError(f"{path}: bad order line {head!r}") from exc
    entries = []
    while len(entries) < n * n:
        line = next_line()
        if line is None:
            raise GroupFormatError(f"{path}: truncated table")
        entries.extend(int(t) for t in line.split())
    if len(entries) > n * n:
        raise GroupFormatError(f"{path}: too many table entries")
    if any(e < 0 or e >= n for e in entries):
        raise GroupFormatError(f"{path}: table entry out of range")
    table = tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
    labels = None
    line = next_line()
    if line is not None:
        if line != "labels":
            raise GroupFormatError(f"{path}: unexpected trailer {line!r}")
        toks = []
        while (line := next_line()) is not None:
            toks.extend(line.split())
        if len(toks) != n:
            raise GroupFormatError(f"{path}: expected {n} labels")
        labels = tuple(toks)
    ident = None
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            ident = e
            break
    if ident is None:
        raise GroupFormatError(f"{path}: table has no identity")
    g = FiniteGroup(order=n, table=table, identity=ident, labels=labels)
    if n <= 1000:
        g.check_axioms()
    return g


def write_group_file(g: FiniteGroup, path) -> None:
    out = [f"order {g.order}"]
    out += [" ".join(map(str, row)) for row in g.table]
    if g.labels:
        out.append("labels")
        out.append(" ".join(g.labels))
    Path(path).write_text("\n".join(out) + "\n")


_NAME_RE = re.compile(r"^([a-z]+)(\d+)$")


def make_group(spec: str) -> FiniteGroup:
    """Build a catalog group from a descriptor.

    Accepted: 'cyclic N' / 'zN' / 'cN', 'dihedral N' / 'dN' (N = order),
    'symmetric N' / 'sN', 'alternating N' / 'aN', 'elementary P K',
    'klein' / 'v4', 'quaternion8' / 'q8', direct products 'A x B', or a
    path to a table file.
    """
    spec = spec.strip()
    if " x " in spec:
        parts = [make_group(p) for p in spec.split(" x ")]
        g = parts[0]
        for h in parts[1:]:
            g = direct_product(g, h)
        return g
    low = spec.lower()
    words = low.split()
    if words[0] in ("cyclic",) and len(words) == 2:
        return cyclic_group(int(words[1]))
    if words[0] == "dihedral" and len(words) == 2:
        return dihedral_group(int(words[1]))
    if words[0] == "symmetric" and len(words) == 2:
        return symmetric_group(int(words[1]))
    if words[0] == "alternating" and len(words) == 2:
        return alternating_group(int(words[1]))
    if words[0] == "elementary" and len(words) == 3:
        return elementary_abelian_group(int(words[1]), int(words[2]))
    if low in ("quaternion8", "q8"):
        return quaternion_group()
    if low in ("klein", "v4"):
        return elementary_abelian_group(2, 2)
    m = _NAME_RE.match(low)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind in ("z", "c"):
            return cyclic_group(n)
        if kind == "d":
            return dihedral_group(n)
        if kind == "s":
            return symmetric_group(n)
        if kind == "a":
            return alternating_group(n)
    if Path(spec).is_file():
        return read_group_file(spec)
    raise GroupFormatError(f"unknown group descriptor: {spec!r}")


def regular_perm_group(g: FiniteGroup) -> PermGroup:
    """Right-regular action of g on its own elements."""
    gens = tuple(
        Permutation(tuple(g.mul(a, s) for a in range(g.order)))
        for s in g.generating_set()
    )
    return PermGroup(g.order, gens)


def pair_action(g: PermGroup) -> tuple[PermGroup, list[tuple[int, int]]]:
    """Induced action on unordered point pairs; returns the pair list in
    lexicographic order alongside the group."""
    pairs = [
        (i, j) for i in range(g.degree) for j in range(i + 1, g.degree)
    ]
    index = {p: k for k, p in enumerate(pairs)}
    gens = []
    for gen in g.generators:
        images = []
        for (i, j) in pairs:
            a, b = gen(i), gen(j)
            images.append(index[(min(a, b), max(a, b))])
        gens.append(Permutation(tuple(images)))
    return PermGroup(len(pairs), tuple(gens)), pairs
