"""Atoms, orbits, generated subracks and the lattice of all subracks.

Subsets of the carrier are handled internally as integer bitmasks
(bit ``x`` set iff ``x`` is a member); :class:`Subrack` is the public face.
The empty set is a subrack and is the bottom of every lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from racklab.core import Rack

DEFAULT_CAP = 100_000


class CapExceeded(RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"more than {cap} subracks; raise the cap to enumerate this lattice")


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class Subrack:
    parent: Rack = field(compare=False, repr=False)
    members: tuple[int, ...]

    @classmethod
    def of(cls, parent: Rack, elements: Iterable[int]) -> "Subrack":
        return cls(parent, tuple(sorted(set(elements))))

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members

    def issubset(self, other: "Subrack") -> bool:
        return set(self.members) <= set(other.members)

    def sort_key(self):
        return (len(self.members), self.members)


def is_subrack(r: Rack, elements: Iterable[int]) -> bool:
    """Closed under |> and left division."""
    s = set(elements)
    return all(r.table[a][b] in s and r.inverse_table[a][b] in s for a in s for b in s)


def _close(r: Rack, seeds: Iterable[int], base: Iterable[int] = ()) -> set[int]:
    """Least subrack containing ``base`` and ``seeds``; ``base`` must already be closed.

    Every new element y is paired once with every member g (itself
    included) and the four products g|>y, g\\y, y|>g, y\\g are queued.
    """
    table, inv = r.table, r.inverse_table
    members = set(base)
    order = list(members)
    queue = [x for x in seeds if x not in members]
    while queue:
        y = queue.pop()
        if y in members:
            continue
        members.add(y)
        order.append(y)
        fy, fy_inv = table[y], inv[y]
        for g in order:
            for z in (table[g][y], inv[g][y], fy[g], fy_inv[g]):
                if z not in members:
                    queue.append(z)
    return members


def naive_closure(r: Rack, elements: Iterable[int]) -> set[int]:
    """Fixed-point closure under |> and left division; slow reference path."""
    s = set(elements)
    while True:
        new = {r.table[a][b] for a in s for b in s} | {r.inverse_table[a][b] for a in s for b in s}
        if new <= s:
            return s
        s |= new


def atom_of(r: Rack, a: int) -> Subrack:
    """The atom <<a>> = {f_a^k(a)}: iterate f_a from a until it returns."""
    row = r.table[a]
    orbit = [a]
    x = row[a]
    while x != a:
        orbit.append(x)
        x = row[x]
    return Subrack.of(r, orbit)


def atoms(r: Rack) -> list[Subrack]:
    """All atoms, ordered by least element; they partition the carrier."""
    seen = set()
    out = []
    for a in range(r.n):
        if a not in seen:
            atom = atom_of(r, a)
            seen.update(atom.members)
            out.append(atom)
    return out


def orbits(r: Rack) -> list[Subrack]:
    """Orbits of the inner group generated by all f_a."""
    seen = set()
    out = []
    for a in range(r.n):
        if a in seen:
            continue
        orbit = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for g in range(r.n):
                for y in (r.table[g][x], r.inverse_table[g][x]):
                    if y not in orbit:
                        orbit.add(y)
                        stack.append(y)
        seen |= orbit
        out.append(Subrack.of(r, orbit))
    return out


def generate_subrack(r: Rack, elements: Iterable[int]) -> Subrack:
    elements = list(elements)
    for x in elements:
        if not 0 <= x < r.n:
            raise IndexError(f"element {x} outside carrier 0..{r.n - 1}")
    return Subrack.of(r, _close(r, elements))


def _same_parent(q1: Subrack, q2: Subrack) -> Rack:
    if q1.parent is not q2.parent and q1.parent != q2.parent:
        raise ValueError("subracks belong to different racks")
    return q1.parent


def join(q1: Subrack, q2: Subrack) -> Subrack:
    r = _same_parent(q1, q2)
    return Subrack.of(r, _close(r, q2.members, base=q1.members))


def meet(q1: Subrack, q2: Subrack) -> Subrack:
    r = _same_parent(q1, q2)
    return Subrack.of(r, set(q1.members) & set(q2.members))


@dataclass
class SubrackLattice:
    """All subracks of ``parent``, sorted by size and then lexicographically."""

    parent: Rack
    subracks: list[Subrack]
    atoms: list[int]
    _index: dict[int, int] = field(default_factory=dict, repr=False)
    _joins: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.masks = [q.mask for q in self.subracks]
        self._index = {m: i for i, m in enumerate(self.masks)}

    def __len__(self):
        return len(self.subracks)

    def index(self, q: Subrack | Iterable[int]) -> int:
        return self._index[to_mask(q)]

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def meet_index(self, i: int, j: int) -> int:
        return self._index[self.masks[i] & self.masks[j]]

    def join_index(self, i: int, j: int) -> int:
        union = self.masks[i] | self.masks[j]
        hit = self._index.get(union)
        if hit is not None:
            return hit
        hit = self._joins.get(union)
        if hit is None:
            closed = _close(self.parent, from_mask(self.masks[j]), base=from_mask(self.masks[i]))
            hit = self._joins[union] = self._index[to_mask(closed)]
        return hit

    def order_pairs(self) -> list[tuple[int, int]]:
        """The inclusion relation as index pairs (i, j) with Q_i <= Q_j."""
        return [(i, j) for i in range(len(self)) for j in range(len(self)) if self.leq(i, j)]

    def to_json(self) -> dict:
        return {
            "atoms": [list(self.subracks[i].members) for i in self.atoms],
            "subracks": [list(q.members) for q in self.subracks],
        }


def enumerate_subracks(r: Rack, cap: int = DEFAULT_CAP) -> SubrackLattice:
    """Every subrack of ``r``.

    Starting from the empty set and the atoms, each known subrack Q is
    extended by every atom it misses, Q -> <<Q u A>>, until nothing new
    appears.  Joins of known subracks are reached by successive
    extensions and meets are unions of atoms already reachable, so the
    sweep is complete.
    """
    atom_list = atoms(r)
    atom_masks = [a.mask for a in atom_list]
    known = {0: ()}
    frontier = [0]
    for a in atom_list:
        if a.mask not in known:
            known[a.mask] = a.members
            frontier.append(a.mask)
    while frontier:
        next_frontier = []
        for q in frontier:
            members = known[q]
            for a, am in zip(atom_list, atom_masks):
                if am & q:
                    continue
                if q | am in known:
                    continue
                closed = _close(r, (a.members[0],), base=members)
                m = to_mask(closed)
                if m not in known:
                    known[m] = tuple(sorted(closed))
                    next_frontier.append(m)
                    if len(known) > cap:
                        raise CapExceeded(cap)
        frontier = next_frontier
    if len(known) > cap:
        raise CapExceeded(cap)
    subracks = sorted((Subrack(r, members) for members in known.values()), key=Subrack.sort_key)
    lattice = SubrackLattice(r, subracks, [])
    lattice.atoms = sorted(lattice.index(a) for a in atom_list)
    return lattice


def brute_force_subracks(r: Rack) -> list[Subrack]:
    """Filter all 2^n subsets; reference path for small racks."""
    out = []
    for k in range(r.n + 1):
        for subset in combinations(range(r.n), k):
            if is_subrack(r, subset):
                out.append(Subrack(r, subset))
    return sorted(out, key=Subrack.sort_key)


@dataclass(frozen=True)
class AtomicityReport:
    atomic: bool
    violations: list[tuple[int, ...]]
    decomposition: list[list[int]]


def lattice_atoms(lat: SubrackLattice) -> list[int]:
    """Minimal nonempty elements, read off the enumerated lattice itself."""
    nonempty = [i for i, m in enumerate(lat.masks) if m]
    return [
        i for i in nonempty
        if not any(j != i and lat.leq(j, i) for j in nonempty)
    ]


def is_atomic(lat: SubrackLattice) -> AtomicityReport:
    """Every subrack must be the union of the lattice atoms it contains.

    ``decomposition[i]`` lists the atom indices below subrack ``i``.
    """
    atom_idx = lattice_atoms(lat)
    violations = []
    decomposition = []
    for i, m in enumerate(lat.masks):
        below = [a for a in atom_idx if lat.leq(a, i)]
        union = 0
        for a in below:
            union |= lat.masks[a]
        decomposition.append(below)
        if union != m:
            violations.append(lat.subracks[i].members)
    return AtomicityReport(not violations, violations, decomposition)


@dataclass(frozen=True)
class DistributivityReport:
    distributive: bool
    witness: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None = None


def _triples_witness(lat: SubrackLattice):
    size = len(lat)
    for a in range(size):
        for b in range(size):
            for c in range(size):
                lhs = lat.meet_index(a, lat.join_index(b, c))
                rhs = lat.join_index(lat.meet_index(a, b), lat.meet_index(a, c))
                if lhs != rhs:
                    return a, b, c
    return None


def _join_prime_witness(lat: SubrackLattice, atom_idx: list[int]):
    # In an atomic lattice the join-irreducibles are exactly the atoms, and a
    # finite lattice is distributive iff every join-irreducible is join-prime.
    # A failing pair (b, c) can always be enlarged to maximal elements avoiding A.
    for a in atom_idx:
        am = lat.masks[a]
        avoiding = [i for i, m in enumerate(lat.masks) if am & ~m]
        maximal = [
            x for x in avoiding
            if all(lat.masks[lat.join_index(x, b)] & am == am for b in atom_idx if not lat.leq(b, x))
        ]
        for i, b in enumerate(maximal):
            for c in maximal[i:]:
                if lat.masks[lat.join_index(b, c)] & am == am:
                    return a, b, c
    return None


def is_distributive(lat: SubrackLattice, method: str = "auto") -> DistributivityReport:
    """Check a & (b | c) == (a & b) | (a & c) over the lattice.

    ``method="triples"`` runs every triple; ``"join_prime"`` tests each atom
    for join-primality (valid once the lattice is atomic); ``"auto"`` uses
    triples for lattices of at most 64 elements.
    """
    if method not in ("auto", "triples", "join_prime"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "triples" if len(lat) <= 64 else "join_prime"
    if method == "join_prime":
        report = is_atomic(lat)
        if not report.atomic:
            witness = _triples_witness(lat)
        else:
            witness = _join_prime_witness(lat, lattice_atoms(lat))
    else:
        witness = _triples_witness(lat)
    if witness is None:
        return DistributivityReport(True)
    return DistributivityReport(False, tuple(lat.subracks[i].members for i in witness))


@dataclass(frozen=True)
class IsomorphismReport:
    holds: bool
    rack_lattice_size: int
    quandle_lattice_size: int
    problem: str | None = None


def lattice_isomorphism_check(r: Rack, cap: int = DEFAULT_CAP) -> IsomorphismReport:
    """Check that Q -> image of Q under the projection onto the corresponding
    quandle is an order isomorphism between the two subrack lattices."""
    from racklab.quandles import corresponding_quandle

    cq = corresponding_quandle(r)
    lat_r = enumerate_subracks(r, cap)
    lat_q = enumerate_subracks(cq.quandle, cap)
    sizes = (len(lat_r), len(lat_q))

    images = [to_mask(cq.projection[x] for x in q.members) for q in lat_r.subracks]
    if len(set(images)) != len(images):
        return IsomorphismReport(False, *sizes, "projection is not injective on subracks")
    if set(images) != set(lat_q.masks):
        return IsomorphismReport(False, *sizes, "projected subracks differ from the quandle's subracks")
    for i, mi in enumerate(lat_r.masks):
        for j, mj in enumerate(lat_r.masks):
            if (mi & ~mj == 0) != (images[i] & ~images[j] == 0):
                return IsomorphismReport(
                    False, *sizes,
                    f"order not preserved between {lat_r.subracks[i].members} and {lat_r.subracks[j].members}",
                )
    return IsomorphismReport(True, *sizes)
