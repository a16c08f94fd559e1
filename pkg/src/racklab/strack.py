"""Closed-form arithmetic for (s,t)-racks a |> b = s a + t b on Z_n.

Valid parameters have t a unit mod n and s^2 = s(1 - t) mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from racklab.core import ParameterViolation


@dataclass(frozen=True)
class STParams:
    n: int
    s: int
    t: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterViolation(f"modulus must be >= 1 (got {self.n})")
        object.__setattr__(self, "s", self.s % self.n)
        object.__setattr__(self, "t", self.t % self.n)
        if gcd(self.t, self.n) != 1:
            raise ParameterViolation(f"gcd(t, n) = gcd({self.t}, {self.n}) != 1")
        if (self.s * self.s - self.s * (1 - self.t)) % self.n:
            raise ParameterViolation(
                f"s^2 != s(1-t) mod n for n={self.n}, s={self.s}, t={self.t}"
            )

    def op(self, a: int, b: int) -> int:
        return (self.s * a + self.t * b) % self.n


def valid_params(n: int) -> Iterator[STParams]:
    """All valid (s, t) pairs for modulus n, in increasing (t, s) order."""
    for t in range(n):
        if gcd(t, n) != 1:
            continue
        for s in range(n):
            if (s * s - s * (1 - t)) % n == 0:
                yield STParams(n, s, t)


def _eval(coeffs: Sequence[int], x: int, n: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % n
    return acc


def laurent_identity_check(p: STParams, h: Sequence[int], g: Sequence[int]) -> bool:
    """Evaluate h(t) g(s) and h(1-s)(g(s) - g_0) + g_0 h(t) mod n and compare.

    ``h`` and ``g`` are coefficient lists, lowest degree first.
    """
    n = p.n
    g0 = g[0] if len(g) else 0
    gs = _eval(g, p.s, n)
    ht = _eval(h, p.t, n)
    lhs = ht * gs % n
    rhs = (_eval(h, 1 - p.s, n) * (gs - g0) + g0 * ht) % n
    return lhs == rhs


def _inverse(x: int, n: int) -> int:
    return 0 if n == 1 else pow(x, -1, n)


def power_coefficient(p: STParams, k: int) -> int:
    """The c with f_a^k(a) = c a for every a."""
    n = p.n
    if k >= 0:
        return (pow(p.t, k, n) + 1 - pow(1 - p.s, k, n)) % n
    m = -k
    return pow(1 - p.s, m, n) * pow(_inverse(p.t, n), m, n) % n


def st_power(p: STParams, a, k: int):
    """f_a^k(a) by closed form; ``a`` may be an int or an integer numpy array."""
    return power_coefficient(p, k) * a % p.n


def _orbit_of_coefficients(start: tuple[int, int], step, value) -> set[int]:
    seen_states = set()
    values = set()
    state = start
    while state not in seen_states:
        seen_states.add(state)
        values.add(value(state))
        state = step(state)
    return values


def atom_coefficients(p: STParams) -> set[int]:
    """{t^k + 1 - (1-s)^k : k >= 0} mod n."""
    n, s, t = p.n, p.s, p.t
    return _orbit_of_coefficients(
        (1 % n, 1 % n),
        lambda st: (st[0] * t % n, st[1] * (1 - s) % n),
        lambda st: (st[0] + 1 - st[1]) % n,
    )


def inverse_atom_coefficients(p: STParams) -> set[int]:
    """{(1-s)^k t^-k : k >= 0} mod n."""
    n, s = p.n, p.s
    t_inv = _inverse(p.t, n)
    return _orbit_of_coefficients(
        1 % n,
        lambda x: x * (1 - s) * t_inv % n,
        lambda x: x,
    )


def st_atom(p: STParams, a: int) -> frozenset[int]:
    return frozenset(c * a % p.n for c in atom_coefficients(p))


def st_atom_inverse_form(p: STParams, a: int) -> frozenset[int]:
    return frozenset(c * a % p.n for c in inverse_atom_coefficients(p))


def multiplicative_order(x: int, n: int) -> int:
    if n == 1:
        return 1
    k, y = 1, x % n
    while y != 1:
        y = y * x % n
        k += 1
    return k


def zero_class_identity(p: STParams) -> tuple[bool, int | None]:
    """Decide whether the class of 0 acts trivially in the corresponding quandle.

    Holds iff s^2 = 0 and t^(k+1) = 1 - k s for some k.  Both sides of the
    congruence are periodic in k, so one full period starting at k = 1
    decides it; the least such positive k is returned as certificate.
    """
    n, s, t = p.n, p.s, p.t
    if s * s % n:
        return False, None
    period = multiplicative_order(t, n)
    additive = n // gcd(s, n)
    period = period * additive // gcd(period, additive)
    power = t * t % n
    for k in range(1, period + 1):
        if power == (1 - k * s) % n:
            return True, k
        power = power * t % n
    return False, None


def non_alexander_certificate(p: STParams) -> bool:
    """True when s^2 = 0, s != 0 and the zero-class condition holds, so the
    corresponding quandle has both identity and non-identity translations."""
    return p.s != 0 and zero_class_identity(p)[0]


def class_op_closed_form(p: STParams, x: int, y: int) -> frozenset[int]:
    """The class of s x + (1 - s) y."""
    return st_atom(p, (p.s * x + (1 - p.s) * y) % p.n)


def analyze(n: int, s: int, t: int) -> dict:
    try:
        p = STParams(n, s, t)
    except ParameterViolation as exc:
        return {"valid": False, "s2_zero": None, "k_certificate": None, "non_alexander": False,
                "error": str(exc)}
    holds, k = zero_class_identity(p)
    return {
        "valid": True,
        "s2_zero": p.s * p.s % p.n == 0,
        "k_certificate": k if holds else None,
        "non_alexander": non_alexander_certificate(p),
    }
