"""Character-table ingestion and class-algebra structure constants.

Tables are data files (JSON): class data plus character rows whose
values may be numbers, [re, im] pairs, or strings evaluated
symbolically (e.g. "(1+sqrt(5))/2").  Values are carried as
high-precision complex floats; the structure-constant formulas return
exact integers/rationals by reconstruction, with an explicit stability
check rather than silent rounding.

A brute-force counter over an explicit group serves as the independent
oracle for the formulas at small order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from .groups import ConjugacyClassing, FiniteGroup, conjugacy_classes

PRECISION_BITS = 240


class CharacterTableError(Exception):
    pass


@dataclass(frozen=True)
class ClassInfo:
    name: str
    size: int
    centralizer_order: int
    element_order: int


@dataclass(frozen=True)
class CharacterTable:
    group_order: int
    classes: tuple[ClassInfo, ...]
    characters: tuple[tuple[mpmath.mpc, ...], ...]
    indicators: tuple[int, ...] | None = None

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise CharacterTableError(f"no class named {name!r}")


def _parse_value(v) -> mpmath.mpc:
    if isinstance(v, (int, float)):
        return mpmath.mpc(v)
    if isinstance(v, list) and len(v) == 2:
        return mpmath.mpc(_parse_value(v[0]).real, _parse_value(v[1]).real)
    if isinstance(v, str):
        import sympy

        try:
            expr = sympy.sympify(v)
            val = sympy.N(expr, 60)
            re, im = val.as_real_imag()
            return mpmath.mpc(str(re), str(im))
        except (sympy.SympifyError, TypeError, ValueError) as exc:
            raise CharacterTableError(f"bad character value {v!r}") from exc
    raise CharacterTableError(f"bad character value {v!r}")


def load_character_table(path) -> CharacterTable:
    """Load and validate a table: size laws and row orthonormality."""
    with mpmath.workprec(PRECISION_BITS):
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CharacterTableError(f"{path}: invalid JSON: {exc}") from exc
        order = data["group_order"]
        classes = tuple(
            ClassInfo(
                c["name"], c["size"], c["centralizer_order"], c["element_order"]
            )
            for c in data["classes"]
        )
        if sum(c.size for c in classes) != order:
            raise CharacterTableError(
                f"{path}: class sizes sum to "
                f"{sum(c.size for c in classes)}, not {order}"
            )
        for c in classes:
            if c.size * c.centralizer_order != order:
                raise CharacterTableError(
                    f"{path}: class {c.name}: size*centralizer != order"
                )
        if classes[0].size != 1 or classes[0].element_order != 1:
            raise CharacterTableError(
                f"{path}: first class must be the identity class"
            )
        characters = tuple(
            tuple(_parse_value(v) for v in row) for row in data["characters"]
        )
        for ri, row in enumerate(characters):
            if len(row) != len(classes):
                raise CharacterTableError(
                    f"{path}: character row {ri} has wrong length"
                )
            norm = sum(
                c.size * (v * mpmath.conj(v)).real
                for c, v in zip(classes, row)
            )
            if abs(norm / order - 1) > 1e-6:
                raise CharacterTableError(
                    f"{path}: character row {ri} fails <chi,chi> = 1 "
                    f"(got {mpmath.nstr(norm / order, 10)})"
                )
        indicators = (
            tuple(data["indicators"]) if "indicators" in data else None
        )
        if indicators is not None and len(indicators) != len(characters):
            raise CharacterTableError(f"{path}: indicator list length")
        return CharacterTable(order, classes, characters, indicators)


def structure_constant_hat(t: CharacterTable, *class_names: str) -> int:
    """Number of tuples (x_1,...,x_n), x_i in the i-th class, with
    product 1: |G|^(n-1) / prod |C(g_i)| * sum_chi prod chi(g_i) /
    chi(1)^(n-2), rounded with an integrality guard."""
    n = len(class_names)
    if n < 2:
        raise CharacterTableError("need at least two classes")
    with mpmath.workprec(PRECISION_BITS):
        idxs = [t.class_index(name) for name in class_names]
        total = mpmath.mpc(0)
        for row in t.characters:
            num = mpmath.mpc(1)
            for i in idxs:
                num *= row[i]
            total += num / row[0] ** (n - 2)
        cent_prod = 1
        for i in idxs:
            cent_prod *= t.classes[i].centralizer_order
        value = (
            mpmath.mpf(t.group_order) ** (n - 1) / cent_prod * total
        )
        if abs(value.imag) > 1e-3:
            raise CharacterTableError(
                f"non-real structure constant {value}"
            )
        nearest = int(mpmath.nint(value.real))
        if abs(value.real - nearest) > 1e-3:
            raise CharacterTableError(
                f"value {mpmath.nstr(value.real, 20)} is not near an integer"
            )
        return nearest


def structure_constant_xi(
    t: CharacterTable, c1: str, c2: str, c3: str, scale: int | None = None
):
    """Class-representative-weighted triple constant
    |G| / (|C(g_1)||C(g_2)||C(g_3)|) * sum_chi chi(g_1)chi(g_2)chi(g_3)
    / chi(1), reconstructed as an exact rational (denominator bounded by
    |G|).  Returns (xi, scale*xi as an integer) when a scale is given."""
    with mpmath.workprec(PRECISION_BITS):
        idxs = [t.class_index(n) for n in (c1, c2, c3)]
        total = mpmath.mpc(0)
        for row in t.characters:
            total += row[idxs[0]] * row[idxs[1]] * row[idxs[2]] / row[0]
        cent_prod = 1
        for i in idxs:
            cent_prod *= t.classes[i].centralizer_order
        value = mpmath.mpf(t.group_order) / cent_prod * total
        if abs(value.imag) > mpmath.mpf(2) ** (-PRECISION_BITS // 2):
            raise CharacterTableError(f"non-real value {value}")
        xi = Fraction(
            str(mpmath.nstr(value.real, 50))
        ).limit_denominator(t.group_order)
        residual = abs(value.real - mpmath.mpf(xi.numerator) / xi.denominator)
        if residual > mpmath.mpf(2) ** (-PRECISION_BITS // 3):
            raise CharacterTableError(
                f"rational reconstruction unstable for "
                f"{mpmath.nstr(value.real, 30)}"
            )
    if scale is None:
        return xi
    scaled = xi * scale
    if scaled.denominator != 1:
        raise CharacterTableError(
            f"scale {scale} * xi {xi} is not an integer"
        )
    return xi, int(scaled)


def brute_force_structure_constants(g: FiniteGroup):
    """Exhaustive triple counts: table[(i,j,k)] = #{(x,y,z) in
    C_i x C_j x C_k : xyz = 1}.  The oracle for the character formula;
    classes are those of conjugacy_classes(g) in its canonical order."""
    if g.order > 2000:
        raise CharacterTableError("brute force capped at order 2000")
    classing = conjugacy_classes(g)
    k = classing.num_classes
    counts = {}
    cls = classing.class_of
    inv = g.inverses
    for x in range(g.order):
        cx = cls[x]
        row = g.table[x]
        for y in range(g.order):
            key = (cx, cls[y], cls[inv[row[y]]])
            counts[key] = counts.get(key, 0) + 1
    table = {}
    for i in range(k):
        for j in range(k):
            for m in range(k):
                table[(i, j, m)] = counts.get((i, j, m), 0)
    return table, classing


def match_classes(
    t: CharacterTable, classing: ConjugacyClassing, g: FiniteGroup
) -> list[int]:
    """Match table classes to computed classes by (element order, size),
    in order.  Classes sharing both invariants are matched in listed
    order; for the bundled fixtures any such matching is related by a
    group automorphism, so structure constants are unaffected."""
    used = set()
    out = []
    for c in t.classes:
        pick = None
        for i in range(classing.num_classes):
            if i in used:
                continue
            rep = classing.representatives[i]
            if (
                classing.sizes[i] == c.size
                and g.element_order(rep) == c.element_order
            ):
                pick = i
                break
        if pick is None:
            raise CharacterTableError(
                f"no computed class matches {c.name} "
                f"(order {c.element_order}, size {c.size})"
            )
        used.add(pick)
        out.append(pick)
    return out


def bundled_table_path(name: str) -> Path:
    path = Path(__file__).parent / "data" / f"{name.lower()}_characters.json"
    if not path.is_file():
        raise CharacterTableError(f"no bundled character table {name!r}")
    return path
