"""A corpus of small racks: every constructor family plus searched tables."""

from __future__ import annotations

import random
from itertools import permutations
from math import gcd
from typing import Iterator

from racklab.core import (
    Rack,
    build_alexander,
    build_core,
    build_dihedral,
    build_parity_shift,
    build_partition_rack,
    build_permutation_rack,
    build_st_rack,
    build_trivial,
    compose,
    validate_rack,
)


def cyclic_group(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group_3() -> list[list[int]]:
    elems = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(elems)}
    return [[index[compose(p, q)] for q in elems] for p in elems]


def klein_four() -> list[list[int]]:
    return [[a ^ b for b in range(4)] for a in range(4)]


def _cycle_type_perms(n: int) -> Iterator[tuple[int, ...]]:
    """One permutation per partition of n (cycles on consecutive blocks)."""
    def partitions(m, largest):
        if m == 0:
            yield []
            return
        for k in range(min(m, largest), 0, -1):
            for rest in partitions(m - k, k):
                yield [k] + rest

    for parts in partitions(n, n):
        perm = []
        start = 0
        for k in parts:
            perm.extend(start + (i + 1) % k for i in range(k))
            start += k
        yield tuple(perm)


def family_racks(max_n: int = 10) -> list[tuple[str, Rack]]:
    """Named instances of every constructor family with carrier size <= max_n."""
    out = []
    for n in range(1, max_n + 1):
        out.append((f"trivial({n})", build_trivial(n)))
        out.append((f"dihedral({n})", build_dihedral(n)))
        for perm in _cycle_type_perms(n):
            out.append((f"permutation({list(perm)})", build_permutation_rack(perm)))
        for t in range(n):
            if gcd(t, n) == 1:
                out.append((f"alexander({n},{t})", build_alexander(n, t)))
                for s in range(n):
                    if (s * s - s * (1 - t)) % n == 0:
                        out.append((f"st_rack({n},{s},{t})", build_st_rack(n, s, t)))
        if n % 2 == 0:
            out.append((f"parity_shift({n})", build_parity_shift(n)))
        if n >= 2:
            out.append((f"core(Z{n})", build_core(cyclic_group(n))))
    out.append(("core(S3)", build_core(symmetric_group_3())))
    out.append(("core(V4)", build_core(klein_four())))
    # f_i = f^i for a permutation f preserving the blocks
    out.append(("partition(6, f and f^2)", build_partition_rack(
        [[0, 1, 2], [3, 4, 5]], [[1, 2, 0, 4, 5, 3], [2, 0, 1, 5, 3, 4]])))
    out.append(("partition(Z6, 3 blocks)", build_partition_rack(
        [[0, 1, 2], [3, 4], [5]], [[1, 2, 0, 3, 4, 5], [0, 1, 2, 4, 3, 5], [2, 0, 1, 4, 3, 5]])))
    return [(name, r) for name, r in out if r.n <= max_n]


def _search(n: int, rng: random.Random | None) -> Iterator[Rack]:
    """Depth-first search over rows f_0..f_{n-1}, pruning on
    f_a f_b = f_{f_a(b)} f_a whenever all three rows are fixed."""
    perms = list(permutations(range(n)))
    rows: list[tuple[int, ...] | None] = [None] * n

    def consistent(k):
        for a in range(k + 1):
            fa = rows[a]
            for b in range(k + 1):
                c = fa[b]
                if c > k or (a != k and b != k and c != k):
                    continue
                if compose(fa, rows[b]) != compose(rows[c], fa):
                    return False
        return True

    def dfs(k):
        if k == n:
            yield validate_rack([list(r) for r in rows])
            return
        candidates = perms[:] if rng is None else rng.sample(perms, len(perms))
        for p in candidates:
            rows[k] = p
            if consistent(k):
                yield from dfs(k + 1)
            rows[k] = None

    yield from dfs(0)


def all_racks(n: int) -> list[Rack]:
    """Every rack table on 0..n-1 (labelled, not up to isomorphism)."""
    return list(_search(n, None))


def random_racks(n: int, count: int, seed: int = 0, attempts: int | None = None) -> list[Rack]:
    """Distinct rack tables found by randomised depth-first search."""
    rng = random.Random(seed)
    found = {}
    attempts = attempts or count * 20
    for _ in range(attempts):
        if len(found) >= count:
            break
        r = next(_search(n, rng))
        found.setdefault(r.table, r)
    return list(found.values())


def searched_racks(seed: int = 0) -> list[tuple[str, Rack]]:
    """All racks of order <= 3, plus randomly sampled racks of orders 4 and 5."""
    out = []
    for n in (1, 2, 3):
        out.extend((f"searched({n})#{i}", r) for i, r in enumerate(all_racks(n)))
    for n, count in ((4, 60), (5, 60)):
        out.extend((f"random({n})#{i}", r) for i, r in enumerate(random_racks(n, count, seed + n)))
    return out


def rack_corpus(max_n: int = 10, seed: int = 0) -> list[tuple[str, Rack]]:
    return family_racks(max_n) + searched_racks(seed)
