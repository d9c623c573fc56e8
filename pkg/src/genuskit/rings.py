"""Exact arithmetic in Z/m: residues, units, gcd, Euler totient."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cosets import FiniteGroup


def gcd(a: int, b: int) -> int:
    """Nonnegative greatest common divisor; gcd(0, 0) == 0."""
    return math.gcd(a, b)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y == g == gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        return -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def totient(m: int) -> int:
    """Euler totient by brute count of 1 <= k <= m coprime to m."""
    if m < 1:
        raise ValueError(f"totient is defined for m >= 1, got {m}")
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def inverse_mod(a: int, m: int) -> int | None:
    """Multiplicative inverse of a mod m via extended Euclid, or None.

    For m == 1 the ring is the zero ring and 0 is its own inverse.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    g, x, _ = ext_gcd(a % m, m)
    if g != 1:
        return None
    return x % m


@dataclass(frozen=True)
class Residue:
    """An element of Z/m, stored in the canonical range 0..m-1."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _same_ring(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError(
                f"cannot combine residues mod {self.modulus} and mod {other.modulus}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._same_ring(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._same_ring(other)
        return Residue(self.value - other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._same_ring(other)
        return Residue(self.value * other.value, self.modulus)

    def is_unit(self) -> bool:
        return inverse_mod(self.value, self.modulus) is not None

    def inverse(self) -> "Residue":
        inv = inverse_mod(self.value, self.modulus)
        if inv is None:
            raise ValueError(f"{self.value} is not a unit mod {self.modulus}")
        return Residue(inv, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.modulus})"


def units(m: int) -> set[Residue]:
    """The set of invertible residues of Z/m.

    For m == 1 this is the singleton {0}: in the zero ring 0 acts as the
    identity.  Cardinality always equals totient(m).
    """
    if m < 1:
        raise ValueError(f"units are defined for m >= 1, got {m}")
    return {Residue(k, m) for k in range(m) if inverse_mod(k, m) is not None}


def unit_group(m: int) -> FiniteGroup:
    """The unit group of Z/m as a FiniteGroup over plain int residues."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    carrier = frozenset(k for k in range(m) if math.gcd(k, m) == 1)

    def op(a: int, b: int) -> int:
        return (a * b) % m

    return FiniteGroup(carrier, op, 1 % m, name=f"(Z/{m})^x")
