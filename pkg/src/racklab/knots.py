"""Oriented knot diagrams and exact counts of their quandle colorings.

A crossing relates three arcs: the colour leaving the crossing on the
under-strand is ``f_x^sign`` of the colour entering it, where ``x`` is the
colour of the over-arc.  Positive crossings use ``x |> y``, negative ones
left division.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from racklab.core import Rack


class DiagramError(ValueError):
    pass


class MalformedInput(DiagramError):
    pass


class ArcConsistencyViolation(DiagramError):
    def __init__(self, arc: int, message: str):
        self.arc = arc
        super().__init__(f"arc {arc}: {message}")


class NotAQuandle(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    sign: int
    over: int
    under_in: int
    under_out: int

    def to_json(self) -> dict:
        return {"sign": self.sign, "over": self.over, "under_in": self.under_in, "under_out": self.under_out}

    def reversed(self) -> "Crossing":
        return Crossing(-self.sign, self.over, self.under_out, self.under_in)


@dataclass(frozen=True)
class KnotDiagram:
    arcs: int
    crossings: tuple[Crossing, ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        _validate(self)

    @classmethod
    def from_tuples(cls, arcs: int, rows) -> "KnotDiagram":
        """Build from ``(sign, over, under_in, under_out)`` tuples."""
        return cls(arcs, tuple(Crossing(*row) for row in rows))

    def to_json(self) -> dict:
        return {"arcs": self.arcs, "crossings": [c.to_json() for c in self.crossings]}

    def reversed(self) -> "KnotDiagram":
        """Flip every sign and swap the under-strand ends."""
        return KnotDiagram(self.arcs, tuple(c.reversed() for c in self.crossings))


def _validate(d: KnotDiagram):
    if not isinstance(d.arcs, int) or d.arcs < 1:
        raise MalformedInput(f"arc count must be a positive integer (got {d.arcs!r})")
    if not d.crossings:
        if d.arcs != 1:
            raise MalformedInput(f"a diagram without crossings has exactly one arc (got {d.arcs})")
        return
    if d.arcs != len(d.crossings):
        raise MalformedInput(f"{d.arcs} arcs but {len(d.crossings)} crossings; a knot diagram has equally many")
    ins = [0] * d.arcs
    outs = [0] * d.arcs
    following = {}
    for k, c in enumerate(d.crossings):
        if c.sign not in (1, -1):
            raise MalformedInput(f"crossing {k}: sign must be 1 or -1 (got {c.sign!r})")
        for role in ("over", "under_in", "under_out"):
            arc = getattr(c, role)
            if not isinstance(arc, int) or not 0 <= arc < d.arcs:
                raise MalformedInput(f"crossing {k}: {role} arc {arc!r} outside 0..{d.arcs - 1}")
        ins[c.under_in] += 1
        outs[c.under_out] += 1
        following[c.under_in] = c.under_out
    for arc in range(d.arcs):
        if ins[arc] != 1:
            raise ArcConsistencyViolation(arc, f"ends at {ins[arc]} under-passes, expected exactly 1")
        if outs[arc] != 1:
            raise ArcConsistencyViolation(arc, f"starts at {outs[arc]} under-passes, expected exactly 1")
    # one component: walking under-passes from arc 0 visits every arc
    seen = {0}
    arc = following[0]
    while arc != 0:
        seen.add(arc)
        arc = following[arc]
    if len(seen) != d.arcs:
        missing = min(set(range(d.arcs)) - seen)
        raise ArcConsistencyViolation(missing, "not on the component through arc 0; links are unsupported")


def parse_diagram(text) -> KnotDiagram:
    """Parse ``{"arcs": int, "crossings": [{"sign", "over", "under_in", "under_out"}]}``.

    Accepts a JSON string or an already-decoded dict.
    """
    if isinstance(text, (str, bytes)):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
    else:
        obj = text
    if not isinstance(obj, dict) or "arcs" not in obj or "crossings" not in obj:
        raise MalformedInput("diagram JSON needs 'arcs' and 'crossings'")
    if not isinstance(obj["crossings"], list):
        raise MalformedInput("'crossings' must be a list")
    crossings = []
    for k, c in enumerate(obj["crossings"]):
        try:
            crossings.append(Crossing(c["sign"], c["over"], c["under_in"], c["under_out"]))
        except (KeyError, TypeError):
            raise MalformedInput(f"crossing {k} needs sign, over, under_in and under_out") from None
    return KnotDiagram(obj["arcs"], tuple(crossings))


def _require_quandle(q: Rack):
    if not q.is_quandle:
        raise NotAQuandle("colorings are only invariant for quandles (a |> a = a fails)")


def count_colorings(d: KnotDiagram, q: Rack) -> int:
    """Exact number of colorings of ``d`` by ``q``.

    The colour of arc 0 is fixed first, forced colours are propagated
    through crossings with two known ends, and the search branches on a
    remaining arc only when propagation stalls.
    """
    _require_quandle(q)
    if not d.crossings:
        return q.n
    return sum(_count_with_seed(d, q, color) for color in range(q.n))


def _count_with_seed(d: KnotDiagram, q: Rack, seed: int) -> int:
    table, inv = q.table, q.inverse_table
    crossings = d.crossings
    touching = [[] for _ in range(d.arcs)]
    for k, c in enumerate(crossings):
        for arc in {c.over, c.under_in, c.under_out}:
            touching[arc].append(k)
    colors = [-1] * d.arcs

    def assign(arc, color, trail):
        colors[arc] = color
        trail.append(arc)
        pending = list(touching[arc])
        while pending:
            c = crossings[pending.pop()]
            x, y, z = colors[c.over], colors[c.under_in], colors[c.under_out]
            if x < 0:
                continue
            if y >= 0:
                want = table[x][y] if c.sign > 0 else inv[x][y]
                if z < 0:
                    colors[c.under_out] = want
                    trail.append(c.under_out)
                    pending.extend(touching[c.under_out])
                elif z != want:
                    return False
            elif z >= 0:
                colors[c.under_in] = inv[x][z] if c.sign > 0 else table[x][z]
                trail.append(c.under_in)
                pending.extend(touching[c.under_in])
        return True

    def undo(trail):
        for arc in trail:
            colors[arc] = -1

    def search() -> int:
        free = [a for a in range(d.arcs) if colors[a] < 0]
        if not free:
            return 1
        # branch on the arc that would unblock the most crossings
        arc = max(free, key=lambda a: sum(
            1 for k in touching[a]
            if crossings[k].over == a and (colors[crossings[k].under_in] >= 0 or colors[crossings[k].under_out] >= 0)
        ))
        total = 0
        for color in range(q.n):
            trail = []
            if assign(arc, color, trail):
                total += search()
            undo(trail)
        return total

    trail = []
    if not assign(0, seed, trail):
        return 0
    return search()


def brute_force_count(d: KnotDiagram, q: Rack, grid_limit: int = 1 << 21) -> int:
    """Check all |q|^arcs assignments; reference path.

    The trailing arcs are enumerated as a numpy grid of at most
    ``grid_limit`` rows, the leading arcs by a Python loop.
    """
    _require_quandle(q)
    if not d.crossings:
        return q.n
    n, arcs = q.n, d.arcs
    table = q.array()
    inv = np.array(q.inverse_table, dtype=np.int64).reshape(n, n)
    vector_arcs = 1
    while vector_arcs < arcs and n ** (vector_arcs + 1) <= grid_limit:
        vector_arcs += 1
    lead = arcs - vector_arcs
    grid = np.indices((n,) * vector_arcs).reshape(vector_arcs, -1)
    count = 0
    for prefix in product(range(n), repeat=lead):
        cols = list(prefix) + list(grid)
        ok = np.ones(grid.shape[1], dtype=bool)
        for c in d.crossings:
            op = table if c.sign > 0 else inv
            ok &= op[cols[c.over], cols[c.under_in]] == cols[c.under_out]
        count += int(ok.sum())
    return count


def is_coloring(d: KnotDiagram, q: Rack, assignment) -> bool:
    for c in d.crossings:
        x, y = assignment[c.over], assignment[c.under_in]
        want = q.table[x][y] if c.sign > 0 else q.inverse_table[x][y]
        if assignment[c.under_out] != want:
            return False
    return True


def naive_count(d: KnotDiagram, q: Rack) -> int:
    """Pure-Python enumeration, for tiny cases."""
    _require_quandle(q)
    return sum(1 for a in product(range(q.n), repeat=d.arcs) if is_coloring(d, q, a))


def has_nontrivial_coloring(d: KnotDiagram, q: Rack) -> bool:
    """Some coloring uses two or more colours; constant colorings number |q|."""
    return count_colorings(d, q) > q.n


@dataclass(frozen=True)
class Verdict:
    verdict: str
    count1: int
    count2: int

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "count1": self.count1, "count2": self.count2}


def distinguish(d1: KnotDiagram, d2: KnotDiagram, q: Rack) -> Verdict:
    """"distinguished" when the coloring counts differ, else "inconclusive"."""
    c1, c2 = count_colorings(d1, q), count_colorings(d2, q)
    return Verdict("distinguished" if c1 != c2 else "inconclusive", c1, c2)


def coloring_report(d: KnotDiagram, q: Rack) -> dict:
    count = count_colorings(d, q)
    return {"count": count, "constant": q.n, "nontrivial": count > q.n}


# Fixture diagrams.  Crossing tuples are (sign, over, under_in, under_out).
# The torus knots and 5_2 are closures of the braids s1^3, s1^5 and
# s1^3 s2 s1^-1 s2; the 5_2 closure carries one extra R1 kink on arc 5.

UNKNOT = KnotDiagram(1, ())

TREFOIL = KnotDiagram.from_tuples(3, [(1, 0, 1, 2), (1, 1, 2, 0), (1, 2, 0, 1)])

TREFOIL_R1 = KnotDiagram.from_tuples(4, [(1, 0, 1, 2), (1, 1, 2, 0), (1, 2, 3, 1), (1, 3, 0, 3)])

TREFOIL_R2 = KnotDiagram.from_tuples(
    5, [(1, 0, 4, 2), (1, 1, 2, 0), (1, 2, 0, 1), (1, 0, 1, 3), (-1, 0, 3, 4)]
)

KNOT_5_1 = KnotDiagram.from_tuples(
    5, [(1, 0, 1, 2), (1, 2, 0, 3), (1, 3, 2, 4), (1, 4, 3, 1), (1, 1, 4, 0)]
)

KNOT_5_2_BRAID = KnotDiagram.from_tuples(
    6, [(1, 0, 1, 3), (1, 3, 0, 4), (1, 4, 3, 5), (1, 4, 2, 0), (-1, 0, 5, 2), (1, 2, 4, 1)]
)

KNOT_5_2 = KnotDiagram.from_tuples(
    7,
    [(1, 0, 1, 3), (1, 3, 0, 4), (1, 4, 3, 5), (1, 4, 2, 0), (-1, 0, 6, 2), (1, 2, 4, 1), (-1, 6, 5, 6)],
)

FIXTURES = {
    "unknot": UNKNOT,
    "trefoil": TREFOIL,
    "trefoil_r1": TREFOIL_R1,
    "trefoil_r2": TREFOIL_R2,
    "5_1": KNOT_5_1,
    "5_2": KNOT_5_2,
    "5_2_braid": KNOT_5_2_BRAID,
}
