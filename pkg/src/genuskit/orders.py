"""Genus counts for orders inside products of integer matrix rings.

An order L with m*G <= L <= G = prod_i Mat(r_i, Z) is described by its
finite image at the conductor level m: the subring of prod_i Mat(r_i, Z/m)
generated by the identity tuple together with explicit generator tuples.
Its genus is g(G) * (number of double cosets  H \\ U / K)  where U is the
unit group of the quotient ring, H the image of the global units (generated
blockwise by elementary matrices) and K the unit group of the subring; for
products of matrix rings g(G) = 1, so the double-coset count is the genus.

Two computation routes share that definition.  Small unit groups go through
the generic element-level engine in :mod:`genuskit.cosets`.  Large ones use
an equivalent reduction: double cosets H\\U/K correspond to orbits of K
acting on the right-coset space H\\U, which stays tiny because H has index
prod_i phi(m)/|{+-1}| in U.  Both routes return the same count and the test
suite cross-checks them.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .cosets import FiniteGroup, double_coset_count, subgroup_closure
from .errors import InternalInconsistencyError, ResourceLimitError
from .matrices import (
    DEFAULT_CAP,
    MatModM,
    _det_flat,
    _elementary_flat,
    _gl_flat,
    mat_mul,
)
from .rings import totient

# Unit groups up to this order are handled by the generic coset engine;
# larger ones switch to the coset-space reduction.
_GENERIC_GROUP_LIMIT = 10_000


@dataclass(frozen=True)
class OrderSpec:
    """An order given by conductor level, block sizes and subring generators.

    ``generators`` holds tuples of matrices, one entry per block; the
    subring they generate together with the identity tuple is the image of
    the order in the quotient of the maximal order at level m.
    """

    m: int
    blocks: tuple[int, ...]
    generators: tuple[tuple[MatModM, ...], ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"conductor level must be >= 1, got {self.m}")
        blocks = tuple(int(r) for r in self.blocks)
        if not blocks:
            raise ValueError("an order needs at least one matrix block")
        if any(r < 1 for r in blocks):
            raise ValueError(f"block sizes must be >= 1, got {blocks}")
        object.__setattr__(self, "blocks", blocks)
        gens = tuple(tuple(t) for t in self.generators)
        for idx, tup in enumerate(gens):
            if len(tup) != len(blocks):
                raise ValueError(
                    f"generator {idx} has {len(tup)} components, "
                    f"expected {len(blocks)}"
                )
            for mat, r in zip(tup, blocks):
                if not isinstance(mat, MatModM):
                    raise ValueError(f"generator {idx} contains {mat!r}")
                if mat.modulus != self.m or mat.size != r:
                    raise ValueError(
                        f"generator {idx} has a {mat.size}x{mat.size} matrix "
                        f"mod {mat.modulus}; expected {r}x{r} mod {self.m}"
                    )
        object.__setattr__(self, "generators", gens)

    def identity_tuple(self) -> tuple[MatModM, ...]:
        return tuple(MatModM.identity(r, self.m) for r in self.blocks)


@dataclass(frozen=True)
class GenusResult:
    """Genus of an order, split into the factors that build it."""

    relative_count: int
    maximal_count: int
    total: int
    bound: int


def genus_pullback_formula(m: int) -> int:
    """Closed form for the genus of the congruence pullback of Z x Z at m."""
    if m < 1:
        raise ValueError(f"level must be >= 1, got {m}")
    if m <= 2:
        return 1
    return totient(m) // 2  # totient(m) is even for m > 2


def pullback_spec(m: int) -> OrderSpec:
    """The order of integer pairs congruent mod m, at level m.

    Blocks (1, 1) and the single generator (1, 1); its quotient image is
    the diagonal copy of Z/m inside Z/m x Z/m.
    """
    if m < 1:
        raise ValueError(f"level must be >= 1, got {m}")
    one = MatModM(m, 1, (1,))
    return OrderSpec(m=m, blocks=(1, 1), generators=((one, one),))


# ---------------------------------------------------------------------------
# JSON order-spec format:
#   {"m": <int>, "blocks": [r1, ...], "generators": [[mat1, mat2, ...], ...]}
# where each mat is a row-major flat integer array of length r_i^2; entries
# may be arbitrary integers and are reduced mod m on load.
# ---------------------------------------------------------------------------


def order_spec_to_dict(spec: OrderSpec) -> dict:
    return {
        "m": spec.m,
        "blocks": list(spec.blocks),
        "generators": [
            [list(mat.entries) for mat in tup] for tup in spec.generators
        ],
    }


def order_spec_from_dict(data) -> OrderSpec:
    if not isinstance(data, dict):
        raise ValueError("order spec must be a JSON object")
    for key in ("m", "blocks", "generators"):
        if key not in data:
            raise ValueError(f"order spec is missing the {key!r} field")
    m = data["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise ValueError(f"field 'm' must be an integer, got {m!r}")
    blocks = data["blocks"]
    if not isinstance(blocks, list) or not all(
        isinstance(r, int) and not isinstance(r, bool) for r in blocks
    ):
        raise ValueError("field 'blocks' must be an array of integers")
    raw_gens = data["generators"]
    if not isinstance(raw_gens, list):
        raise ValueError("field 'generators' must be an array of tuples")
    generators = []
    for gi, tup in enumerate(raw_gens):
        if not isinstance(tup, list) or len(tup) != len(blocks):
            raise ValueError(
                f"generator {gi} must be an array of {len(blocks)} matrices"
            )
        mats = []
        for bi, (mat, r) in enumerate(zip(tup, blocks)):
            if not isinstance(mat, list) or not all(
                isinstance(e, int) and not isinstance(e, bool) for e in mat
            ):
                raise ValueError(
                    f"generator {gi}, block {bi}: expected a flat integer array"
                )
            if r < 1 or m < 1:
                raise ValueError("blocks and m must be positive")
            if len(mat) != r * r:
                raise ValueError(
                    f"generator {gi}, block {bi}: expected {r * r} entries "
                    f"for a {r}x{r} matrix, got {len(mat)}"
                )
            mats.append(MatModM(m, r, tuple(mat)))
        generators.append(tuple(mats))
    return OrderSpec(m=m, blocks=tuple(blocks), generators=tuple(generators))


def load_order_spec(path) -> OrderSpec:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: not valid JSON ({exc})") from exc
    return order_spec_from_dict(data)


# ---------------------------------------------------------------------------
# Internal flat representation: a tuple element of prod_i Mat(r_i, Z/m) is a
# single concatenated row-major tuple of ints; numpy rows use the same layout.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Shape:
    m: int
    blocks: tuple[int, ...]
    offsets: tuple[int, ...]
    width: int
    ambient: int
    encodable: bool
    weights: tuple[int, ...]


@lru_cache(maxsize=64)
def _shape(m: int, blocks: tuple[int, ...]) -> _Shape:
    offsets = []
    off = 0
    for r in blocks:
        offsets.append(off)
        off += r * r
    ambient = m**off
    return _Shape(
        m=m,
        blocks=blocks,
        offsets=tuple(offsets),
        width=off,
        ambient=ambient,
        encodable=ambient < 2**62,
        weights=tuple(m**i for i in range(off)),
    )


@lru_cache(maxsize=64)
def _mult_fn(m: int, blocks: tuple[int, ...]):
    """Blockwise matrix multiplier over concatenated flat tuples."""
    pairs = []
    off = 0
    for r in blocks:
        for i in range(r):
            for j in range(r):
                pairs.append(
                    tuple((off + i * r + t, off + t * r + j) for t in range(r))
                )
        off += r * r
    def mult(x, y):
        return tuple(sum(x[a] * y[b] for a, b in pos) % m for pos in pairs)

    return mult


def _identity_row(m: int, blocks: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for r in blocks:
        out.extend(MatModM.identity(r, m).entries)
    return tuple(out)


@lru_cache(maxsize=64)
def _embedded_elementary(m: int, blocks: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Per-block elementary generators embedded into the product ring."""
    ident_parts = [MatModM.identity(r, m).entries for r in blocks]
    gens = []
    for bi, r in enumerate(blocks):
        for g in _elementary_flat(r, m):
            parts = list(ident_parts)
            parts[bi] = g
            gens.append(tuple(itertools.chain.from_iterable(parts)))
    return tuple(gens)


def _encode(shape: _Shape, row) -> int:
    total = 0
    for v, w in zip(row, shape.weights):
        total += v * w
    return total


def _row_to_mats(shape: _Shape, row) -> tuple[MatModM, ...]:
    return tuple(
        MatModM(shape.m, r, tuple(row[off : off + r * r]))
        for r, off in zip(shape.blocks, shape.offsets)
    )


def _mats_to_row(tup) -> tuple[int, ...]:
    return tuple(itertools.chain.from_iterable(mat.entries for mat in tup))


# -- subring closure --------------------------------------------------------
#
# The subring generated by the identity and the generator tuples is an
# additive subgroup closed under multiplication.  It equals the Z-span of a
# short list of "module generators" whose pairwise products all lie in the
# span (bilinearity closes the rest), so the closure alternates additive
# span extensions with a worklist over module-generator pairs.  Every span
# extension at least doubles the set, so the worklist stays logarithmic.


def _closure_arrays(shape: _Shape, gen_rows, cap: int) -> np.ndarray:
    m = shape.m
    weights = np.array(shape.weights, dtype=np.int64)
    mult = _mult_fn(m, shape.blocks)
    rows = np.zeros((1, shape.width), dtype=np.int64)
    encs = {0}

    def extend(vec) -> None:
        nonlocal rows
        base = rows
        v = np.array(vec, dtype=np.int64) % m
        shift = v.copy()
        while int(shift @ weights) not in encs:
            coset = (base + shift) % m
            rows = np.vstack((rows, coset))
            encs.update((coset @ weights).tolist())
            if len(encs) > cap:
                raise ResourceLimitError(
                    f"subring closure exceeded the cap of {cap} elements"
                )
            shift = (shift + v) % m

    mod_gens: list[tuple[int, ...]] = []
    for seed in (_identity_row(m, shape.blocks), *gen_rows):
        seed = tuple(v % m for v in seed)
        if _encode(shape, seed) not in encs:
            extend(seed)
            mod_gens.append(seed)
    i = 0
    while i < len(mod_gens):
        x = mod_gens[i]
        for j in range(i + 1):
            y = mod_gens[j]
            products = (mult(x, y),) if i == j else (mult(x, y), mult(y, x))
            for p in products:
                if _encode(shape, p) not in encs:
                    extend(p)
                    mod_gens.append(p)
        i += 1
    return rows


def _closure_tuples(shape: _Shape, gen_rows, cap: int) -> set:
    m = shape.m
    mult = _mult_fn(m, shape.blocks)
    zero = (0,) * shape.width
    span = {zero}

    def vec_add(a, b):
        return tuple((x + y) % m for x, y in zip(a, b))

    def extend(v) -> None:
        base = list(span)
        shift = v
        while shift not in span:
            for b in base:
                span.add(vec_add(b, shift))
            if len(span) > cap:
                raise ResourceLimitError(
                    f"subring closure exceeded the cap of {cap} elements"
                )
            shift = vec_add(shift, v)

    mod_gens: list[tuple[int, ...]] = []
    for seed in (_identity_row(m, shape.blocks), *gen_rows):
        seed = tuple(v % m for v in seed)
        if seed not in span:
            extend(seed)
            mod_gens.append(seed)
    i = 0
    while i < len(mod_gens):
        x = mod_gens[i]
        for j in range(i + 1):
            y = mod_gens[j]
            products = (mult(x, y),) if i == j else (mult(x, y), mult(y, x))
            for p in products:
                if p not in span:
                    extend(p)
                    mod_gens.append(p)
        i += 1
    return span


@lru_cache(maxsize=None)
def _unit_lut(m: int) -> np.ndarray:
    return np.array([math.gcd(v, m) == 1 for v in range(m)], dtype=bool)


def _units_mask(shape: _Shape, rows: np.ndarray) -> np.ndarray:
    """Tuples whose every block has invertible determinant.

    In a finite ring an element invertible in the ambient matrix ring has
    its inverse inside the subring already (some positive power of the
    element), so this determinant test is exactly the subring unit test.
    """
    m = shape.m
    lut = _unit_lut(m)
    mask = np.ones(len(rows), dtype=bool)
    for r, off in zip(shape.blocks, shape.offsets):
        if r == 1:
            d = rows[:, off] % m
        elif r == 2:
            d = (rows[:, off] * rows[:, off + 3]
                 - rows[:, off + 1] * rows[:, off + 2]) % m
        elif r == 3:
            a, b, c, dd, e, f, g, h, i = (rows[:, off + t] for t in range(9))
            d = (a * (e * i - f * h) - b * (dd * i - f * g)
                 + c * (dd * h - e * g)) % m
        else:
            d = np.array(
                [_det_flat(row[off : off + r * r], r, m) for row in rows.tolist()],
                dtype=np.int64,
            )
        mask &= lut[d]
    return mask


def _unit_row(shape: _Shape, row) -> bool:
    for r, off in zip(shape.blocks, shape.offsets):
        d = _det_flat(row[off : off + r * r], r, shape.m)
        if not bool(_unit_lut(shape.m)[d]):
            return False
    return True


# -- the two counting routes -------------------------------------------------


def _small_generating_set(elements, mult, identity) -> list:
    """Greedy generating set for a subgroup given as an element set."""
    gens: list = []
    closed = {identity}
    for x in elements:
        if x in closed:
            continue
        gens.append(x)
        closed = {identity}
        stack = [identity]
        while stack:
            y = stack.pop()
            for g in gens:
                z = mult(y, g)
                if z not in closed:
                    closed.add(z)
                    stack.append(z)
    return gens


@lru_cache(maxsize=8)
def _generic_group_data(m: int, blocks: tuple[int, ...]):
    """Carrier of prod GL(r_i, Z/m) plus the stable subgroup H, flat form."""
    mult = _mult_fn(m, blocks)
    carrier = frozenset(
        tuple(itertools.chain.from_iterable(combo))
        for combo in itertools.product(*[_gl_flat(r, m) for r in blocks])
    )
    group = FiniteGroup(carrier, mult, _identity_row(m, blocks),
                        name=f"prod GL{blocks} mod {m}")
    h_gens = _embedded_elementary(m, blocks)
    h = subgroup_closure(group, h_gens)
    return group, h, h_gens


def _count_generic(shape: _Shape, unit_rows: frozenset) -> int:
    group, h, h_gens = _generic_group_data(shape.m, shape.blocks)
    mult = _mult_fn(shape.m, shape.blocks)
    k_gens = _small_generating_set(unit_rows, mult, _identity_row(shape.m, shape.blocks))
    return double_coset_count(
        group, h, unit_rows, h_gens=h_gens, k_gens=k_gens, trusted=True
    )


@lru_cache(maxsize=8)
def _h_coset_labels(m: int, blocks: tuple[int, ...]):
    """Label every element of prod GL(r_i, Z/m) with its right H-coset.

    Returns (labels, reps) where labels maps the integer encoding of an
    element to its coset index and reps holds one representative per coset.
    """
    shape = _shape(m, blocks)
    mult = _mult_fn(m, blocks)
    h_gens = _embedded_elementary(m, blocks)
    labels: dict[int, int] = {}
    reps: list[np.ndarray] = []
    for combo in itertools.product(*[_gl_flat(r, m) for r in blocks]):
        g = tuple(itertools.chain.from_iterable(combo))
        enc = _encode(shape, g)
        if enc in labels:
            continue
        lbl = len(reps)
        reps.append(np.array(g, dtype=np.int64))
        labels[enc] = lbl
        stack = [g]
        while stack:
            x = stack.pop()
            for hg in h_gens:
                y = mult(hg, x)
                ey = _encode(shape, y)
                if ey not in labels:
                    labels[ey] = lbl
                    stack.append(y)
    return labels, tuple(reps)


def _left_mul_rows(shape: _Shape, g: np.ndarray, rows: np.ndarray) -> np.ndarray:
    out = []
    for r, off in zip(shape.blocks, shape.offsets):
        gb = g[off : off + r * r].reshape(r, r)
        kb = rows[:, off : off + r * r].reshape(-1, r, r)
        prod = (gb @ kb) % shape.m
        out.append(prod.reshape(len(rows), r * r))
    return np.hstack(out)


def _count_by_coset_action(shape: _Shape, unit_rows: np.ndarray) -> int:
    labels, reps = _h_coset_labels(shape.m, shape.blocks)
    n_labels = len(reps)
    if n_labels == 1:
        return 1
    weights = np.array(shape.weights, dtype=np.int64)
    visited = bytearray(n_labels)
    count = 0
    for lbl in range(n_labels):
        if visited[lbl]:
            continue
        count += 1
        # K is a full group, so one sweep of rep * K is the whole orbit
        reached = _left_mul_rows(shape, reps[lbl], unit_rows) @ weights
        for enc in reached.tolist():
            visited[labels[enc]] = 1
    return count


# -- public operations -------------------------------------------------------


def subring_closure(spec: OrderSpec, cap: int = DEFAULT_CAP) -> set:
    """The subring of the quotient ring generated by the spec's generators.

    Smallest set containing the generators and the identity tuple, closed
    under tuplewise addition and multiplication; always contains the zero
    tuple.  Returned as a set of matrix tuples.
    """
    shape = _shape(spec.m, spec.blocks)
    gen_rows = [_mats_to_row(t) for t in spec.generators]
    if shape.encodable:
        rows = _closure_arrays(shape, gen_rows, cap)
        flat = map(tuple, rows.tolist())
    else:
        flat = _closure_tuples(shape, gen_rows, cap)
    return {_row_to_mats(shape, row) for row in flat}


def subring_units(S, m: int, blocks) -> FiniteGroup:
    """Unit group of a subring closure: elements with a two-sided inverse
    inside the subring, under tuplewise product."""
    blocks = tuple(int(r) for r in blocks)
    shape = _shape(m, blocks)
    identity = tuple(MatModM.identity(r, m) for r in blocks)
    S = set(S)
    if identity not in S:
        raise ValueError("a subring closure must contain the identity tuple")
    units = set()
    for tup in S:
        tup = tuple(tup)
        if len(tup) != len(blocks) or not all(
            isinstance(mat, MatModM) and mat.modulus == m and mat.size == r
            for mat, r in zip(tup, blocks)
        ):
            raise ValueError(f"tuple {tup!r} does not match blocks {blocks} mod {m}")
        if _unit_row(shape, _mats_to_row(tup)):
            units.add(tup)

    def op(a, b):
        return tuple(mat_mul(x, y) for x, y in zip(a, b))

    return FiniteGroup(
        frozenset(units), op, identity, name=f"units of subring mod {m}"
    )


def genus_relative(spec: OrderSpec, cap: int = DEFAULT_CAP) -> int:
    """Number of double cosets H \\ U / K for the spec's order.

    U is the unit group of the quotient of the maximal order, H the image
    of the global units, K the unit group of the subring.
    """
    shape = _shape(spec.m, spec.blocks)
    for r in spec.blocks:
        scan = spec.m ** (r * r)
        if scan > cap:
            raise ResourceLimitError(
                f"block of size {r} mod {spec.m} needs a scan of {scan} "
                f"matrices, above the cap of {cap}"
            )
    g_order = 1
    for r in spec.blocks:
        g_order *= len(_gl_flat(r, spec.m))
    if g_order > cap:
        raise ResourceLimitError(
            f"the ambient unit group has {g_order} elements, above the cap of {cap}"
        )
    gen_rows = [_mats_to_row(t) for t in spec.generators]
    if shape.encodable:
        rows = _closure_arrays(shape, gen_rows, cap)
        mask = _units_mask(shape, rows)
        if g_order > _GENERIC_GROUP_LIMIT:
            return _count_by_coset_action(shape, rows[mask])
        unit_rows = frozenset(map(tuple, rows[mask].tolist()))
    else:
        span = _closure_tuples(shape, gen_rows, cap)
        unit_rows = frozenset(row for row in span if _unit_row(shape, row))
    return _count_generic(shape, unit_rows)


def genus(spec: OrderSpec, cap: int = DEFAULT_CAP) -> GenusResult:
    """Full genus of the order: ambient factor (always 1 here) times the
    double-coset count, checked against the totient bound."""
    relative = genus_relative(spec, cap)
    k = len(spec.blocks)
    bound = 1 if spec.m <= 2 else (totient(spec.m) // 2) ** k
    total = 1 * relative
    if total > bound:
        raise InternalInconsistencyError(
            f"genus {total} exceeds the bound {bound} for m={spec.m}, k={k}; "
            "this indicates a bug in the enumeration"
        )
    return GenusResult(relative_count=relative, maximal_count=1, total=total, bound=bound)
