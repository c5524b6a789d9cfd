"""Prime-field matrix representations and conjugation-orbit machinery.

Matrices over F_2 are bit-packed: a row is a Python int with bit j for
column j, so row reduction and multiplication are word-parallel XORs.
Odd characteristic is supported generically (tuple-of-ints rows) but is
not optimized; nothing here needs it beyond format completeness.

The fingerprint of a pair of involutions (x, y) is the 4-tuple of
subspace dimensions obtained from the recursion
V_{i+1} = V_i(1-x) + V_i(1-y) (two steps) together with
dim(V(1-x) + V(1-yxy)) and dim(V(1-y) + V(1-xyx)).  These are
conjugation invariants of the pair, and for a suitable action they
separate the orbitals, which lets collapsed adjacency matrices be
computed without ever enumerating the (possibly astronomical) point
set.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path


class MatrixError(Exception):
    pass


class WordError(Exception):
    pass


class UnknownOrbitalError(Exception):
    """A computed fingerprint is absent from the classification table;
    usually means wrong generators or the wrong representation."""


class BitMatrix:
    """Square matrix over F_p; bit-packed rows for p = 2."""

    __slots__ = ("p", "dim", "rows", "_digest")

    def __init__(self, p: int, dim: int, rows):
        if dim > 4096:
            raise MatrixError("dimension above supported bound 4096")
        self.p = p
        self.dim = dim
        if p == 2:
            mask = (1 << dim) - 1
            self.rows = tuple(r & mask for r in rows)
        else:
            self.rows = tuple(tuple(x % p for x in row) for row in rows)
        if len(self.rows) != dim:
            raise MatrixError("row count != dim")
        self._digest = None

    # -- construction ------------------------------------------------

    @staticmethod
    def identity(p: int, dim: int) -> "BitMatrix":
        if p == 2:
            return BitMatrix(p, dim, [1 << i for i in range(dim)])
        return BitMatrix(
            p, dim, [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        )

    @staticmethod
    def from_entries(p: int, entries) -> "BitMatrix":
        dim = len(entries)
        if p == 2:
            rows = [
                sum((row[j] & 1) << j for j in range(dim)) for row in entries
            ]
            return BitMatrix(p, dim, rows)
        return BitMatrix(p, dim, entries)

    def entry(self, i: int, j: int) -> int:
        if self.p == 2:
            return (self.rows[i] >> j) & 1
        return self.rows[i][j]

    # -- arithmetic --------------------------------------------------

    def __mul__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.p, self.dim) != (other.p, other.dim):
            raise MatrixError("shape/field mismatch")
        if self.p == 2:
            brows = other.rows
            out = []
            for r in self.rows:
                acc = 0
                m = r
                while m:
                    low = m & -m
                    acc ^= brows[low.bit_length() - 1]
                    m ^= low
                out.append(acc)
            return BitMatrix(2, self.dim, out)
        p, n = self.p, self.dim
        bt = list(zip(*other.rows))
        return BitMatrix(
            p,
            n,
            [
                [sum(x * y for x, y in zip(row, col)) % p for col in bt]
                for row in self.rows
            ],
        )

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.p, self.dim) != (other.p, other.dim):
            raise MatrixError("shape/field mismatch")
        if self.p == 2:
            return BitMatrix(2, self.dim, [a ^ b for a, b in zip(self.rows, other.rows)])
        return BitMatrix(
            self.p,
            self.dim,
            [
                [(x + y) % self.p for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "BitMatrix") -> "BitMatrix":
        if self.p == 2:
            return self + other
        return BitMatrix(
            self.p,
            self.dim,
            [
                [(x - y) % self.p for x, y in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def inverse(self) -> "BitMatrix":
        n = self.dim
        if self.p == 2:
            work = list(self.rows)
            aug = [1 << i for i in range(n)]
            for col in range(n):
                piv = next(
                    (i for i in range(col, n) if work[i] >> col & 1), None
                )
                if piv is None:
                    raise MatrixError("matrix is singular")
                work[col], work[piv] = work[piv], work[col]
                aug[col], aug[piv] = aug[piv], aug[col]
                for i in range(n):
                    if i != col and work[i] >> col & 1:
                        work[i] ^= work[col]
                        aug[i] ^= aug[col]
            return BitMatrix(2, n, aug)
        p = self.p
        work = [list(r) for r in self.rows]
        aug = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if work[i][col] % p), None)
            if piv is None:
                raise MatrixError("matrix is singular")
            work[col], work[piv] = work[piv], work[col]
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = pow(work[col][col], -1, p)
            work[col] = [x * inv % p for x in work[col]]
            aug[col] = [x * inv % p for x in aug[col]]
            for i in range(n):
                if i != col and work[i][col]:
                    c = work[i][col]
                    work[i] = [
                        (a - c * b) % p for a, b in zip(work[i], work[col])
                    ]
                    aug[i] = [
                        (a - c * b) % p for a, b in zip(aug[i], aug[col])
                    ]
        return BitMatrix(p, n, aug)

    def power(self, k: int) -> "BitMatrix":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = BitMatrix.identity(self.p, self.dim)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate_by(self, g: "BitMatrix") -> "BitMatrix":
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return self == BitMatrix.identity(self.p, self.dim)

    def order(self, cutoff: int = 10_000) -> int:
        ident = BitMatrix.identity(self.p, self.dim)
        x = self
        for k in range(1, cutoff + 1):
            if x == ident:
                return k
            x = x * self
        raise MatrixError(f"order exceeds cutoff {cutoff}")

    # -- identity and hashing ---------------------------------------

    def digest(self) -> bytes:
        # 128-bit digest of canonical row bytes; equality still compares
        # rows in full, so a digest collision cannot corrupt a set
        if self._digest is None:
            h = hashlib.blake2b(digest_size=16)
            nbytes = (self.dim + 7) // 8
            if self.p == 2:
                for r in self.rows:
                    h.update(r.to_bytes(nbytes, "little"))
            else:
                for row in self.rows:
                    h.update(bytes(x % 256 for x in row))
            self._digest = h.digest()
        return self._digest

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.p == other.p
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return int.from_bytes(self.digest()[:8], "little")

    def __repr__(self) -> str:
        return f"BitMatrix(p={self.p}, dim={self.dim})"


# ---------------------------------------------------------------------------
# matrix file I/O


def parse_matrix_file(path) -> list[BitMatrix]:
    """Header 'p nmats dim dim', then each matrix as dim lines of dim
    digits (whitespace-separated entries for p > 9)."""
    lines = Path(path).read_text().split("\n")
    rows_iter = iter(
        (lineno + 1, line.strip())
        for lineno, line in enumerate(lines)
        if line.strip()
    )
    try:
        _, head = next(rows_iter)
    except StopIteration:
        raise MatrixError(f"{path}: empty file") from None
    try:
        p, nmats, dim, dim2 = map(int, head.split())
    except ValueError as exc:
        raise MatrixError(f"{path}: bad header {head!r}") from exc
    if dim != dim2:
        raise MatrixError(f"{path}: matrices must be square")
    mats = []
    for _ in range(nmats):
        entries = []
        for _ in range(dim):
            try:
                lineno, line = next(rows_iter)
            except StopIteration:
                raise MatrixError(f"{path}: truncated matrix data") from None
            if p <= 9 and " " not in line:
                row = [int(ch) for ch in line]
            else:
                row = [int(t) for t in line.split()]
            if len(row) != dim:
                raise MatrixError(
                    f"{path}:{lineno}: expected {dim} entries, got {len(row)}"
                )
            if any(x < 0 or x >= p for x in row):
                raise MatrixError(f"{path}:{lineno}: entry out of field range")
            entries.append(row)
        mats.append(BitMatrix.from_entries(p, entries))
    if next(rows_iter, None) is not None:
        raise MatrixError(f"{path}: trailing data after {nmats} matrices")
    return mats


def write_matrix_file(mats, path) -> None:
    if not mats:
        raise MatrixError("nothing to write")
    p, dim = mats[0].p, mats[0].dim
    out = [f"{p} {len(mats)} {dim} {dim}"]
    for m in mats:
        for i in range(dim):
            row = [str(m.entry(i, j)) for j in range(dim)]
            out.append("".join(row) if p <= 9 else " ".join(row))
    Path(path).write_text("\n".join(out) + "\n")


# ---------------------------------------------------------------------------
# words in the generators


def _tokenize(text: str):
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isalpha():
            yield ("sym", ch)
            i += 1
        elif ch in "([{)]},^":
            yield (ch, ch)
            i += 1
        elif ch.isdigit() or ch == "-":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            yield ("int", int(text[i:j]))
            i = j
        else:
            raise WordError(f"bad character {ch!r} at position {i}")
    yield ("end", None)


class _WordParser:
    """word   := term*
    term    := atom ('^' (int | atom))*
    atom    := symbol | '(' word ')' | '{' word '}' | '[' word ',' word ']'

    '^' with an integer is a power, with an atom it is conjugation
    (x^y = y^-1 x y); '[x,y]' is the commutator x^-1 y^-1 x y.  Powers
    bind tighter than juxtaposition, so ab^2 is a(b^2).
    """

    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        word = self.word()
        if self.peek()[0] != "end":
            raise WordError(f"unexpected token {self.peek()!r}")
        return word

    def word(self):
        factors = []
        while self.peek()[0] in ("sym", "(", "{", "["):
            factors.append(self.term())
        return ("prod", factors)

    def term(self):
        node = self.atom()
        while self.peek()[0] == "^":
            self.take()
            kind, val = self.peek()
            if kind == "int":
                self.take()
                node = ("pow", node, val)
            else:
                node = ("conj", node, self.atom())
        return node

    def atom(self):
        kind, val = self.take()
        if kind == "sym":
            return ("sym", val)
        if kind in ("(", "{"):
            close = ")" if kind == "(" else "}"
            node = self.word()
            if self.take()[0] != close:
                raise WordError(f"expected {close!r}")
            return node
        if kind == "[":
            left = self.word()
            if self.take()[0] != ",":
                raise WordError("expected ',' in commutator")
            right = self.word()
            if self.take()[0] != "]":
                raise WordError("expected ']'")
            return ("comm", left, right)
        raise WordError(f"unexpected token {kind!r}")


def parse_word(text: str):
    return _WordParser(text).parse()


def eval_word(env: dict, word):
    """Evaluate a word (string or parsed tree) over named elements.

    Elements need only '*', .inverse() and equality; both BitMatrix and
    Permutation qualify.  The empty word is the identity, derived from
    any element of the environment.
    """
    if isinstance(word, str):
        word = parse_word(word)
    if not env:
        raise WordError("empty environment")

    def ev(node):
        tag = node[0]
        if tag == "sym":
            try:
                return env[node[1]]
            except KeyError:
                raise WordError(f"unknown symbol {node[1]!r}") from None
        if tag == "prod":
            if not node[1]:
                some = next(iter(env.values()))
                return some * some.inverse()
            out = ev(node[1][0])
            for factor in node[1][1:]:
                out = out * ev(factor)
            return out
        if tag == "pow":
            base = ev(node[1])
            k = node[2]
            if k < 0:
                base, k = base.inverse(), -k
            some = next(iter(env.values()))
            out = some * some.inverse()
            while k:
                if k & 1:
                    out = out * base
                base = base * base
                k >>= 1
            return out
        if tag == "conj":
            x, y = ev(node[1]), ev(node[2])
            return y.inverse() * x * y
        if tag == "comm":
            x, y = ev(node[1]), ev(node[2])
            return x.inverse() * y.inverse() * x * y
        raise WordError(f"bad node {tag!r}")

    return ev(word)


def standard_environment(a: BitMatrix, b: BitMatrix) -> dict:
    """The working alphabet: generators a, b plus the derived elements
    t = (ab^2)^4, c = ab and d = ba."""
    env = {"a": a, "b": b}
    env["t"] = eval_word(env, "(ab^2)^4")
    env["c"] = eval_word(env, "ab")
    env["d"] = eval_word(env, "ba")
    return env


# ---------------------------------------------------------------------------
# standard generator verification


@dataclass(frozen=True)
class StandardGeneratorReport:
    checks: tuple[tuple[str, int, int], ...]  # (what, expected, actual)

    @property
    def passed(self) -> bool:
        return all(exp == act for _, exp, act in self.checks)

    def failures(self):
        return [c for c in self.checks if c[1] != c[2]]


def verify_standard_generators(
    a: BitMatrix, b: BitMatrix
) -> StandardGeneratorReport:
    """Order conditions pinning the generating pair up to conjugacy:
    o(a)=2, o(b)=4, o(ab)=37, o(abab^2)=10.  Conjugacy-class membership
    beyond element order is not (and cannot be) checked here."""
    env = {"a": a, "b": b}
    checks = []
    for word, expected in (("a", 2), ("b", 4), ("ab", 37), ("abab^2", 10)):
        try:
            actual = eval_word(env, word).order(cutoff=200)
        except MatrixError:
            actual = -1
        checks.append((f"order({word})", expected, actual))
    return StandardGeneratorReport(tuple(checks))


# ---------------------------------------------------------------------------
# subspace fingerprints


@dataclass(frozen=True)
class Fingerprint:
    d1: int
    d2: int
    d1p: int
    d2p: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.d1, self.d2, self.d1p, self.d2p)


class _RowSpace2:
    """Reduced row span over F_2, rows as bit ints."""

    def __init__(self):
        self.pivots: dict[int, int] = {}  # pivot column -> row

    def add(self, vec: int) -> bool:
        while vec:
            col = vec.bit_length() - 1
            row = self.pivots.get(col)
            if row is None:
                self.pivots[col] = vec
                return True
            vec ^= row
        return False

    def add_rows_times(self, rows, m: BitMatrix):
        for r in rows:
            acc = 0
            v = r
            while v:
                low = v & -v
                acc ^= m.rows[low.bit_length() - 1]
                v ^= low
            self.add(acc)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self):
        return list(self.pivots.values())


def _one_minus(x: BitMatrix) -> BitMatrix:
    return BitMatrix.identity(x.p, x.dim) - x


def _rowspace_dim_of_images(mats) -> int:
    """dim of the sum of the full row spaces of the given matrices (F_2)."""
    sp = _RowSpace2()
    for m in mats:
        for r in m.rows:
            sp.add(r)
    return sp.dim


def fingerprint(x: BitMatrix, y: BitMatrix, depth: int = 2) -> Fingerprint:
    """Conjugacy invariants of an involution pair; see module docstring."""
    if x.p != 2:
        raise MatrixError("fingerprints are implemented for p = 2 only")
    if not (x * x).is_identity() or not (y * y).is_identity():
        raise MatrixError("fingerprint needs involutions (x^2 = y^2 = 1)")
    ox = _one_minus(x)
    oy = _one_minus(y)
    dims = []
    basis = BitMatrix.identity(2, x.dim).rows  # V_0 = full space
    for _ in range(depth):
        sp = _RowSpace2()
        sp.add_rows_times(basis, ox)
        sp.add_rows_times(basis, oy)
        dims.append(sp.dim)
        basis = sp.basis()
    d1p = _rowspace_dim_of_images([ox, _one_minus(y * x * y)])
    d2p = _rowspace_dim_of_images([oy, _one_minus(x * y * x)])
    return Fingerprint(dims[0], dims[1], d1p, d2p)


# ---------------------------------------------------------------------------
# centralizer generators and orbit closure


def centralizer_generators(
    a: BitMatrix, b: BitMatrix
) -> tuple[BitMatrix, BitMatrix]:
    """The two-generator words for the centralizer of a, evaluated and
    checked to commute with a.  That they generate the *full*
    centralizer is an external fact about the intended representation,
    not re-proved here."""
    env = {"a": a, "b": b}
    h1 = eval_word(env, "[a,b]^5(ab^2)^6")
    h2 = eval_word(env, "bab^2ab[a,bab^2ab]^5ababab[a,ababab]^5")
    if a.is_identity():
        raise MatrixError("degenerate input: a is the identity")
    for i, h in enumerate((h1, h2), start=1):
        if h * a != a * h:
            raise MatrixError(f"h{i} does not commute with a")
    return h1, h2


def orbit_closure(seed: BitMatrix, conjugators) -> list[BitMatrix]:
    """Close {seed} under m -> h^-1 m h for each conjugator.  Breadth
    first with conjugators applied in listed order, so the element
    order (and hence any serialized output) is reproducible."""
    pairs = [(h, h.inverse()) for h in conjugators]
    seen = {seed}
    order = [seed]
    frontier = [seed]
    while frontier:
        new = []
        for m in frontier:
            for h, hinv in pairs:
                c = hinv * m * h
                if c not in seen:
                    seen.add(c)
                    order.append(c)
                    new.append(c)
        frontier = new
    return order


# ---------------------------------------------------------------------------
# collapsed adjacency via fingerprints


def load_fingerprint_table(path) -> dict[tuple[int, int, int, int], int]:
    """Fingerprint -> orbital index (0-based) classification table.
    File rows: 'orbital d1 d2 d1p d2p' with 1-based orbital numbers;
    '#' starts a comment."""
    table: dict[tuple[int, int, int, int], int] = {}
    for lineno, line in enumerate(Path(path).read_text().split("\n"), 1):
        line = line.split("#")[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 5:
            raise MatrixError(f"{path}:{lineno}: expected 5 fields")
        nr, d1, d2, d1p, d2p = map(int, toks)
        key = (d1, d2, d1p, d2p)
        if key in table:
            raise MatrixError(f"{path}:{lineno}: duplicate fingerprint {key}")
        table[key] = nr - 1
    return table


def collapsed_adjacency_matrep(
    a: BitMatrix,
    b: BitMatrix,
    rep_words,
    fingerprint_table: dict[tuple[int, int, int, int], int],
    i: int,
    conjugators=None,
):
    """Collapsed adjacency matrix A_i for the conjugation action on the
    class of a, computed entirely inside the matrix representation.

    rep_words[j] conjugates a into orbital j (index 0 = the identity
    word); the fingerprint table assigns each conjugate pair to its
    orbital.  Unknown fingerprints raise UnknownOrbitalError.
    """
    from .orbitals import CollapsedAdjacency

    env = standard_environment(a, b)
    reps = [
        w if isinstance(w, BitMatrix) else eval_word(env, w)
        for w in rep_words
    ]
    if conjugators is None:
        conjugators = centralizer_generators(a, b)
    orbit = orbit_closure(a.conjugate_by(reps[i]), conjugators)
    rank = len(rep_words)
    matrix = []
    for j in range(rank):
        tj = reps[j]
        tj_inv = tj.inverse()
        row = [0] * rank
        for m in orbit:
            z = tj_inv * m * tj
            fp = fingerprint(a, z).as_tuple()
            try:
                row[fingerprint_table[fp]] += 1
            except KeyError:
                raise UnknownOrbitalError(
                    f"fingerprint {fp} not in classification table"
                ) from None
        matrix.append(tuple(row))
    return CollapsedAdjacency(i, tuple(matrix))
