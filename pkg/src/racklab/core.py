"""Validated finite racks, left translations and the standard rack families.

Elements of a rack of order ``n`` are the integers ``0..n-1``; the operation
table stores ``table[a][b] = a |> b``.  Every constructor goes through
:func:`validate_rack`, so a :class:`Rack` instance always satisfies both
rack axioms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Mapping, Sequence

import numpy as np

Perm = tuple[int, ...]
Rows = tuple[tuple[int, ...], ...]


class RackError(ValueError):
    """Base class for invalid rack input."""


class MalformedTable(RackError):
    pass


class RowNotBijective(RackError):
    def __init__(self, a: int):
        self.a = a
        super().__init__(f"row {a} is not a permutation (left division by {a} not unique)")


class NotSelfDistributive(RackError):
    def __init__(self, a: int, b: int, c: int):
        self.witness = (a, b, c)
        super().__init__(
            f"self-distributivity fails at a={a}, b={b}, c={c}: "
            "a|>(b|>c) != (a|>b)|>(a|>c)"
        )


class ParameterViolation(RackError):
    pass


@dataclass(frozen=True)
class MagmaTable:
    n: int
    table: Rows

    @classmethod
    def from_rows(cls, rows) -> "MagmaTable":
        try:
            rows = [[int(x) for x in row] for row in rows]
        except (TypeError, ValueError) as exc:
            raise MalformedTable(f"table entries must be integers: {exc}") from None
        n = len(rows)
        for a, row in enumerate(rows):
            if len(row) != n:
                raise MalformedTable(f"row {a} has length {len(row)}, expected {n}")
            for b, x in enumerate(row):
                if not 0 <= x < n:
                    raise MalformedTable(f"entry [{a}][{b}] = {x} is outside 0..{n - 1}")
        return cls(n, tuple(tuple(row) for row in rows))

    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.n, self.n)


@dataclass(frozen=True)
class Rack:
    """A finite rack.  Build through :func:`validate_rack` or a constructor."""

    base: MagmaTable
    is_quandle: bool
    inverse_table: Rows = field(repr=False)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def table(self) -> Rows:
        return self.base.table

    def op(self, a: int, b: int) -> int:
        return self.base.table[a][b]

    def ldiv(self, a: int, b: int) -> int:
        """The unique c with a |> c = b."""
        return self.inverse_table[a][b]

    def array(self) -> np.ndarray:
        return self.base.array()

    def to_json(self) -> dict:
        return {"n": self.n, "table": [list(row) for row in self.table]}

    def __str__(self):
        kind = "quandle" if self.is_quandle else "rack"
        return f"{kind} of order {self.n}"


def validate_rack(m) -> Rack:
    """Check both rack axioms on ``m`` and return the validated :class:`Rack`.

    ``m`` is a :class:`MagmaTable` or anything :meth:`MagmaTable.from_rows`
    accepts.  Raises :class:`RowNotBijective` or :class:`NotSelfDistributive`
    with the first witness found.
    """
    if not isinstance(m, MagmaTable):
        m = MagmaTable.from_rows(m)
    n = m.n
    inverse = []
    for a, row in enumerate(m.table):
        inv = [-1] * n
        for b, x in enumerate(row):
            if inv[x] != -1:
                raise RowNotBijective(a)
            inv[x] = b
        inverse.append(tuple(inv))

    if n:
        t = m.array()
        lhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        rhs = t[t[:, :, None], t[:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b, c = (int(x) for x in bad[0])
            raise NotSelfDistributive(a, b, c)

    is_quandle = all(m.table[a][a] == a for a in range(n))
    return Rack(m, is_quandle, tuple(inverse))


def _check_element(r: Rack, a: int) -> int:
    if not 0 <= a < r.n:
        raise IndexError(f"element {a} outside carrier 0..{r.n - 1}")
    return a


def translation(r: Rack, a: int) -> Perm:
    """The left translation f_a : b -> a |> b as a permutation tuple."""
    return r.table[_check_element(r, a)]


def inverse_translation(r: Rack, a: int) -> Perm:
    return r.inverse_table[_check_element(r, a)]


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    witness: tuple | None = None


def conjugation_identity_check(r: Rack) -> IdentityReport:
    """Check f_{a|>b} = f_a f_b f_a^-1 and f_{a\\b} = f_a^-1 f_b f_a for all a, b.

    The witness on failure is ``(identity, a, b)`` with identity 1 or 2.
    """
    for a in range(r.n):
        fa, fa_inv = r.table[a], r.inverse_table[a]
        for b in range(r.n):
            fb = r.table[b]
            if r.table[fa[b]] != compose(fa, compose(fb, fa_inv)):
                return IdentityReport(False, (1, a, b))
            if r.table[fa_inv[b]] != compose(fa_inv, compose(fb, fa)):
                return IdentityReport(False, (2, a, b))
    return IdentityReport(True)


def is_homomorphism(phi: Sequence[int] | Mapping[int, int], r: Rack, s: Rack) -> bool:
    """True iff phi(a |> b) = phi(a) |> phi(b) for all a, b in r."""
    images = [phi[a] for a in range(r.n)]
    for a, x in enumerate(images):
        if not 0 <= x < s.n:
            raise ValueError(f"phi({a}) = {x} is outside the target carrier 0..{s.n - 1}")
    return all(
        images[r.table[a][b]] == s.table[images[a]][images[b]]
        for a in range(r.n)
        for b in range(r.n)
    )


# constructors


def _positive(n: int, name: str = "n") -> int:
    if n < 1:
        raise ParameterViolation(f"{name} must be >= 1 (got {n}); the empty rack is not constructible")
    return n


def _as_perm(perm: Sequence[int], n: int | None = None) -> Perm:
    perm = tuple(int(x) for x in perm)
    size = len(perm) if n is None else n
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise ParameterViolation(f"{list(perm)} is not a permutation of 0..{size - 1}")
    return perm


def build_trivial(n: int) -> Rack:
    n = _positive(n)
    return validate_rack([list(range(n)) for _ in range(n)])


def build_permutation_rack(perm: Sequence[int]) -> Rack:
    perm = _as_perm(perm)
    _positive(len(perm), "len(perm)")
    return validate_rack([list(perm) for _ in perm])


def build_dihedral(n: int) -> Rack:
    n = _positive(n)
    return validate_rack([[(2 * a - b) % n for b in range(n)] for a in range(n)])


def build_core(group_table: Sequence[Sequence[int]], inverses: Sequence[int] | None = None) -> Rack:
    """Core quandle a |> b = a b^-1 a of a group given by its multiplication table."""
    g = MagmaTable.from_rows(group_table)
    n = _positive(g.n)
    mul = g.table
    identity = next((e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n))), None)
    if identity is None:
        raise ParameterViolation("group table has no identity element")
    if inverses is None:
        inverses = []
        for x in range(n):
            inv = [y for y in range(n) if mul[x][y] == identity]
            if len(inv) != 1:
                raise ParameterViolation(f"element {x} has no unique inverse")
            inverses.append(inv[0])
    inverses = [int(x) for x in inverses]
    for x in range(n):
        if mul[x][inverses[x]] != identity or mul[inverses[x]][x] != identity:
            raise ParameterViolation(f"inverse column is wrong at {x}")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                    raise ParameterViolation(f"group table is not associative at ({x}, {y}, {z})")
    return validate_rack(
        [[mul[mul[a][inverses[b]]][a] for b in range(n)] for a in range(n)]
    )


def build_alexander(n: int, t: int) -> Rack:
    n = _positive(n)
    if gcd(t, n) != 1:
        raise ParameterViolation(f"gcd(t, n) = gcd({t}, {n}) != 1")
    return validate_rack([[((1 - t) * a + t * b) % n for b in range(n)] for a in range(n)])


def build_st_rack(n: int, s: int, t: int) -> Rack:
    """The (s,t)-rack a |> b = s a + t b on Z_n."""
    n = _positive(n)
    if gcd(t, n) != 1:
        raise ParameterViolation(f"gcd(t, n) = gcd({t}, {n}) != 1")
    if (s * s - s * (1 - t)) % n:
        raise ParameterViolation(
            f"s^2 != s(1-t) mod n: {s * s % n} != {s * (1 - t) % n} (n={n}, s={s}, t={t})"
        )
    return validate_rack([[(s * a + t * b) % n for b in range(n)] for a in range(n)])


def build_parity_shift(n: int) -> Rack:
    """a |> b = b for even b and b + 2 (mod n) for odd b, on Z_n with n even."""
    n = _positive(n)
    if n % 2:
        raise ParameterViolation(f"parity-shift rack needs an even modulus (got {n})")
    row = [b if b % 2 == 0 else (b + 2) % n for b in range(n)]
    return validate_rack([row for _ in range(n)])


def build_partition_rack(blocks: Sequence[Sequence[int]], bijections: Sequence[Sequence[int]]) -> Rack:
    """a |> b = f_i(b) for a in block i.

    The bijections must preserve every block and commute pairwise.
    """
    blocks = [sorted(int(x) for x in blk) for blk in blocks]
    n = sum(len(blk) for blk in blocks)
    _positive(n)
    if sorted(x for blk in blocks for x in blk) != list(range(n)) or any(not blk for blk in blocks):
        raise ParameterViolation("blocks must be nonempty and partition 0..n-1")
    if len(bijections) != len(blocks):
        raise ParameterViolation(f"need one bijection per block ({len(blocks)}), got {len(bijections)}")
    perms = [_as_perm(f, n) for f in bijections]
    for i, f in enumerate(perms):
        for j, blk in enumerate(blocks):
            if sorted(f[x] for x in blk) != blk:
                raise ParameterViolation(f"bijection {i} does not preserve block {j}")
    for i, f in enumerate(perms):
        for j in range(i + 1, len(perms)):
            if compose(f, perms[j]) != compose(perms[j], f):
                raise ParameterViolation(f"bijections {i} and {j} do not commute")
    owner = {x: i for i, blk in enumerate(blocks) for x in blk}
    return validate_rack([list(perms[owner[a]]) for a in range(n)])


FAMILIES = {
    "trivial": (build_trivial, ("n",)),
    "permutation": (build_permutation_rack, ("perm",)),
    "dihedral": (build_dihedral, ("n",)),
    "core": (build_core, ("group_table",)),
    "alexander": (build_alexander, ("n", "t")),
    "st_rack": (build_st_rack, ("n", "s", "t")),
    "parity_shift": (build_parity_shift, ("n",)),
    "partition": (build_partition_rack, ("blocks", "bijections")),
}


def rack_from_json(obj: dict) -> Rack:
    """Build a rack from ``{"n", "table"}`` or a family spec such as
    ``{"family": "st_rack", "n": 20, "s": 2, "t": 9}``."""
    if not isinstance(obj, dict):
        raise MalformedTable("rack JSON must be an object")
    if "family" in obj:
        family = obj["family"]
        if family not in FAMILIES:
            raise MalformedTable(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
        builder, params = FAMILIES[family]
        missing = [p for p in params if p not in obj]
        if missing:
            raise MalformedTable(f"family {family!r} needs {', '.join(missing)}")
        kwargs = {p: obj[p] for p in params}
        if family == "core" and "inverses" in obj:
            kwargs["inverses"] = obj["inverses"]
        return builder(**kwargs)
    if "table" not in obj:
        raise MalformedTable("rack JSON needs a 'table' or a 'family'")
    m = MagmaTable.from_rows(obj["table"])
    if "n" in obj and obj["n"] != m.n:
        raise MalformedTable(f"'n' is {obj['n']} but the table has {m.n} rows")
    return validate_rack(m)
