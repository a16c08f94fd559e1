"""The corresponding quandle of a rack and the iota-twisted quandle.

The corresponding quandle collapses each atom of a rack to a point; its
operation is the class of a |> b for representatives a, b.  The iota
quandle keeps the carrier and twists the operation by
iota(a) = f_a^-1(a).
"""

from __future__ import annotations

from dataclasses import dataclass

from racklab.core import Rack, RackError, is_homomorphism, validate_rack
from racklab.lattice import DEFAULT_CAP, atoms, enumerate_subracks


class WellDefinednessViolation(RackError):
    pass


@dataclass(frozen=True)
class CorrespondingQuandle:
    rack: Rack
    classes: list[tuple[int, ...]]
    quandle: Rack
    projection: tuple[int, ...]

    @property
    def table(self):
        return self.quandle.table

    def class_of(self, x: int) -> tuple[int, ...]:
        return self.classes[self.projection[x]]

    def to_json(self) -> dict:
        return {
            "classes": [list(c) for c in self.classes],
            "table": [list(row) for row in self.quandle.table],
            "trivial": is_trivial_quandle(self.quandle),
        }


def corresponding_quandle(r: Rack) -> CorrespondingQuandle:
    """Quotient of ``r`` by its atoms, with class indices ordered by least member.

    The class operation is checked against every pair of representatives.
    """
    classes = [a.members for a in atoms(r)]
    projection = [0] * r.n
    for i, cls in enumerate(classes):
        for x in cls:
            projection[x] = i
    k = len(classes)
    table = [[None] * k for _ in range(k)]
    for a in range(r.n):
        pa = projection[a]
        row = r.table[a]
        for b in range(r.n):
            value = projection[row[b]]
            slot = table[pa][projection[b]]
            if slot is None:
                table[pa][projection[b]] = value
            elif slot != value:
                raise WellDefinednessViolation(
                    f"class of {a}|>{b} is {value}, but another representative pair gave {slot}"
                )
    q = validate_rack(table)
    if not q.is_quandle:
        raise WellDefinednessViolation("class operation is not idempotent")
    return CorrespondingQuandle(r, classes, q, tuple(projection))


def is_trivial_quandle(q: Rack) -> bool:
    return all(row == tuple(range(q.n)) for row in q.table)


def distributive_via_quandle(r: Rack) -> bool:
    """Distributivity of the subrack lattice, decided by triviality of the
    corresponding quandle (no lattice enumeration)."""
    return is_trivial_quandle(corresponding_quandle(r).quandle)


def iota(r: Rack) -> tuple[int, ...]:
    """The automorphism a -> f_a^-1(a)."""
    phi = tuple(r.inverse_table[a][a] for a in range(r.n))
    if sorted(phi) != list(range(r.n)) or not is_homomorphism(phi, r, r):
        raise RackError("iota is not an automorphism; the input is not a rack")
    return phi


def iota_quandle(r: Rack) -> Rack:
    """The quandle a |>' b = a |> iota(b) on the same carrier."""
    phi = iota(r)
    q = validate_rack([[r.table[a][phi[b]] for b in range(r.n)] for a in range(r.n)])
    if not q.is_quandle:
        raise RackError("iota twist did not produce a quandle")
    return q


@dataclass(frozen=True)
class InclusionReport:
    included: bool
    strict: bool
    rack_subracks: int
    iota_subracks: int
    missing: list[tuple[int, ...]]
    extra: list[tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "included": self.included,
            "strict": self.strict,
            "rack_subracks": self.rack_subracks,
            "iota_subracks": self.iota_subracks,
            "missing": [list(x) for x in self.missing],
            "extra": [list(x) for x in self.extra],
        }


def subrack_inclusion_report(r: Rack, cap: int = DEFAULT_CAP) -> InclusionReport:
    """Compare the subracks of (R, |>) with those of (R, |>').

    ``missing`` lists subracks of R that fail in the iota quandle (should be
    empty); ``extra`` lists iota-quandle subracks that are not subracks of R.
    """
    ours = {q.members for q in enumerate_subracks(r, cap).subracks}
    twisted = {q.members for q in enumerate_subracks(iota_quandle(r), cap).subracks}
    key = lambda m: (len(m), m)
    missing = sorted(ours - twisted, key=key)
    extra = sorted(twisted - ours, key=key)
    return InclusionReport(not missing, not missing and bool(extra), len(ours), len(twisted), missing, extra)
