"""Square matrices over Z/m: products, determinants, GL(r, Z/m) and the
subgroup generated by elementary matrices (the mod-m image of the global
unit group of the integer matrix ring).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .cosets import FiniteGroup
from .errors import ResourceLimitError
from .rings import Residue

# Enumerations refuse to scan more than this many candidate elements.
DEFAULT_CAP = 2_000_000

# Determinants use cofactor expansion, which is exact over Z/m for composite
# m (no division) but exponential in the size; larger matrices are rejected.
MAX_DET_SIZE = 4


@dataclass(frozen=True)
class MatModM:
    """An r x r matrix over Z/m with row-major, canonically reduced entries."""

    modulus: int
    size: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        if self.size < 1:
            raise ValueError(f"matrix size must be >= 1, got {self.size}")
        entries = tuple(int(e) % self.modulus for e in self.entries)
        if len(entries) != self.size * self.size:
            raise ValueError(
                f"expected {self.size * self.size} entries for a "
                f"{self.size}x{self.size} matrix, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows, modulus: int) -> "MatModM":
        rows = [list(row) for row in rows]
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix rows must form a square array")
        flat = tuple(e for row in rows for e in row)
        return cls(modulus, size, flat)

    @classmethod
    def identity(cls, size: int, modulus: int) -> "MatModM":
        flat = tuple(1 if i == j else 0 for i in range(size) for j in range(size))
        return cls(modulus, size, flat)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        r = self.size
        return tuple(self.entries[i * r : (i + 1) * r] for i in range(r))

    def __mul__(self, other: "MatModM") -> "MatModM":
        return mat_mul(self, other)

    def det(self) -> Residue:
        return det(self)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in row) for row in self.rows)
        return f"MatModM([{body}] mod {self.modulus})"


def mat_mul(a: MatModM, b: MatModM) -> MatModM:
    """Entrywise-reduced matrix product; operands must share size and modulus."""
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    r, m = a.size, a.modulus
    x, y = a.entries, b.entries
    out = tuple(
        sum(x[i * r + t] * y[t * r + j] for t in range(r)) % m
        for i in range(r)
        for j in range(r)
    )
    return MatModM(m, r, out)


def _det_flat(entries, r: int, m: int) -> int:
    # cofactor expansion along the first row; valid over any commutative ring
    if r == 1:
        return entries[0] % m
    if r == 2:
        return (entries[0] * entries[3] - entries[1] * entries[2]) % m
    total = 0
    sign = 1
    for j in range(r):
        minor = [
            entries[i * r + c] for i in range(1, r) for c in range(r) if c != j
        ]
        total += sign * entries[j] * _det_flat(minor, r - 1, m)
        sign = -sign
    return total % m


def det(a: MatModM) -> Residue:
    """Determinant by cofactor expansion; sizes above 4 are rejected."""
    if a.size > MAX_DET_SIZE:
        raise ValueError(
            f"unsupported size {a.size}: determinants are limited to "
            f"{MAX_DET_SIZE}x{MAX_DET_SIZE}"
        )
    return Residue(_det_flat(a.entries, a.size, a.modulus), a.modulus)


def elementary_generators(r: int, m: int) -> list[MatModM]:
    """Transvections E_ij(1) for i != j plus diag(-1, 1, ..., 1).

    These generate the image of the global integer unit group inside
    GL(r, Z/m).  For r == 1 there are no transvections and the list is the
    single scalar -1 mod m.
    """
    if r < 1:
        raise ValueError(f"matrix size must be >= 1, got {r}")
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if r == 1:
        return [MatModM(m, 1, ((m - 1) % m,))]
    gens = []
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            flat = [1 if p == q else 0 for p in range(r) for q in range(r)]
            flat[i * r + j] = 1
            gens.append(MatModM(m, r, tuple(flat)))
    diag = [1 if p == q else 0 for p in range(r) for q in range(r)]
    diag[0] = m - 1
    gens.append(MatModM(m, r, tuple(diag)))
    return gens


def _flat_mul_fn(r: int, m: int):
    """Specialized multiplier for flat row-major tuples of one fixed shape."""
    pairs = [
        tuple((i * r + t, t * r + j) for t in range(r))
        for i in range(r)
        for j in range(r)
    ]

    def mul(x, y):
        return tuple(sum(x[a] * y[b] for a, b in pos) % m for pos in pairs)

    return mul


@lru_cache(maxsize=None)
def _unit_values(m: int) -> frozenset:
    return frozenset(k for k in range(m) if math.gcd(k, m) == 1)


@lru_cache(maxsize=16)
def _gl_flat(r: int, m: int) -> tuple[tuple[int, ...], ...]:
    """All invertible flat matrices mod m, sorted row-major."""
    invertible = _unit_values(m)
    return tuple(
        sorted(
            t
            for t in itertools.product(range(m), repeat=r * r)
            if _det_flat(t, r, m) in invertible
        )
    )


@lru_cache(maxsize=16)
def _elementary_flat(r: int, m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(g.entries for g in elementary_generators(r, m))


@lru_cache(maxsize=16)
def _stable_flat(r: int, m: int) -> frozenset:
    """Closure of the elementary generators under flat multiplication."""
    mul = _flat_mul_fn(r, m)
    gens = _elementary_flat(r, m)
    identity = MatModM.identity(r, m).entries
    closed = {identity}
    stack = [identity]
    while stack:
        x = stack.pop()
        for g in gens:
            y = mul(x, g)
            if y not in closed:
                closed.add(y)
                stack.append(y)
    return frozenset(closed)


def _check_scan_cap(r: int, m: int, cap: int) -> None:
    if r < 1:
        raise ValueError(f"matrix size must be >= 1, got {r}")
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    scan = m ** (r * r)
    if scan > cap:
        raise ResourceLimitError(
            f"enumerating {r}x{r} matrices mod {m} needs a scan of {scan} "
            f"candidates, above the cap of {cap}"
        )


def enumerate_gl(r: int, m: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """The group GL(r, Z/m) of matrices with invertible determinant."""
    _check_scan_cap(r, m, cap)
    carrier = frozenset(MatModM(m, r, t) for t in _gl_flat(r, m))
    return FiniteGroup(
        carrier, mat_mul, MatModM.identity(r, m), name=f"GL({r}, Z/{m})"
    )


def stable_image(r: int, m: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Subgroup of GL(r, Z/m) generated by the elementary generators.

    This is the image of the global unit group of Mat(r, Z) in GL(r, Z/m);
    it always contains SL(r, Z/m) and the determinant-(-1) coset.
    """
    _check_scan_cap(r, m, cap)
    carrier = frozenset(MatModM(m, r, t) for t in _stable_flat(r, m))
    return FiniteGroup(
        carrier, mat_mul, MatModM.identity(r, m), name=f"E({r}, Z/{m})"
    )
