"""Catalog of stable polyhedral atoms: spheres, Moore and Chang spaces and
the A(v) family, with their rational sphere wedges, reduced endomorphism
orders and genus counts.

Genus values for the pullback cases are computed by the order engine, not
read from a table; the closed totient formula is kept as a cross-check in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .matrices import DEFAULT_CAP
from .orders import genus, pullback_spec
from .rings import gcd


class AtomKind(Enum):
    SPHERE = "sphere"
    MOORE = "moore"
    CHANG_FULL = "chang-full"          # C(2^r.eta.2^s)
    CHANG_R_ETA = "chang-r-eta"        # C(2^r.eta)
    CHANG_ETA_S = "chang-eta-s"        # C(eta.2^s)
    CHANG_ETA = "chang-eta"            # C(eta)
    CHANG_ETA_SQ = "chang-eta-sq"      # C(eta2)
    ATOM_A = "atom-a"                  # A(v)


# attaching maps eta^2 and v*nu reach three cells down, so these kinds need
# a higher minimal top dimension to keep all cell dimensions positive
_MIN_TOP_DIM = {AtomKind.ATOM_A: 4, AtomKind.CHANG_ETA_SQ: 4}

_PARAM_FIELDS = {
    AtomKind.SPHERE: (),
    AtomKind.MOORE: ("a",),
    AtomKind.CHANG_FULL: ("r", "s"),
    AtomKind.CHANG_R_ETA: ("r",),
    AtomKind.CHANG_ETA_S: ("s",),
    AtomKind.CHANG_ETA: (),
    AtomKind.CHANG_ETA_SQ: (),
    AtomKind.ATOM_A: ("v",),
}


@dataclass(frozen=True)
class Atom:
    """One catalog atom; ``top_dim`` is the suspension index n."""

    kind: AtomKind
    top_dim: int
    a: int | None = None
    r: int | None = None
    s: int | None = None
    v: int | None = None

    def __post_init__(self):
        wanted = _PARAM_FIELDS[self.kind]
        for field in ("a", "r", "s", "v"):
            value = getattr(self, field)
            if field in wanted:
                if value is None:
                    raise ValueError(f"{self.kind.value} atom needs parameter {field}")
            elif value is not None:
                raise ValueError(
                    f"{self.kind.value} atom does not take parameter {field}"
                )
        min_dim = _MIN_TOP_DIM.get(self.kind, 2)
        if self.top_dim < min_dim:
            raise ValueError(
                f"{self.kind.value} atom needs top_dim >= {min_dim}, "
                f"got {self.top_dim}"
            )
        if self.kind is AtomKind.MOORE and self.a < 2:
            raise ValueError(f"Moore parameter must be >= 2, got {self.a}")
        if self.kind is AtomKind.CHANG_FULL and (self.r < 1 or self.s < 1):
            raise ValueError(
                f"Chang parameters must be >= 1, got r={self.r}, s={self.s}"
            )
        if self.kind is AtomKind.CHANG_R_ETA and self.r < 1:
            raise ValueError(f"Chang parameter r must be >= 1, got {self.r}")
        if self.kind is AtomKind.CHANG_ETA_S and self.s < 1:
            raise ValueError(f"Chang parameter s must be >= 1, got {self.s}")
        if self.kind is AtomKind.ATOM_A and not 0 < self.v <= 12:
            # out-of-range v is rejected, not reduced mod 24
            raise ValueError(f"A(v) needs 0 < v <= 12, got {self.v}")


def _dim(kind: AtomKind, top_dim: int | None) -> int:
    return _MIN_TOP_DIM.get(kind, 2) if top_dim is None else top_dim


def sphere(n: int) -> Atom:
    return Atom(AtomKind.SPHERE, n)


def moore(a: int, top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.MOORE, _dim(AtomKind.MOORE, top_dim), a=a)


def chang_full(r: int, s: int, top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.CHANG_FULL, _dim(AtomKind.CHANG_FULL, top_dim), r=r, s=s)


def chang_r_eta(r: int, top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.CHANG_R_ETA, _dim(AtomKind.CHANG_R_ETA, top_dim), r=r)


def chang_eta_s(s: int, top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.CHANG_ETA_S, _dim(AtomKind.CHANG_ETA_S, top_dim), s=s)


def chang_eta(top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.CHANG_ETA, _dim(AtomKind.CHANG_ETA, top_dim))


def chang_eta_sq(top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.CHANG_ETA_SQ, _dim(AtomKind.CHANG_ETA_SQ, top_dim))


def atom_a(v: int, top_dim: int | None = None) -> Atom:
    return Atom(AtomKind.ATOM_A, _dim(AtomKind.ATOM_A, top_dim), v=v)


@dataclass(frozen=True)
class EndoDescription:
    """Shape of the reduced endomorphism ring of an atom.

    ``kind`` is one of "torsion", "integers", "pullback"; a pullback carries
    the congruence level of the pair ring it identifies with.
    """

    kind: str
    level: int | None = None

    def __post_init__(self):
        if self.kind not in ("torsion", "integers", "pullback"):
            raise ValueError(f"unknown endomorphism kind {self.kind!r}")
        if self.kind == "pullback":
            if self.level is None or self.level < 2:
                raise ValueError(f"pullback level must be >= 2, got {self.level}")
        elif self.level is not None:
            raise ValueError(f"{self.kind} takes no level")


TORSION = EndoDescription("torsion")
INTEGERS = EndoDescription("integers")


def pullback(level: int) -> EndoDescription:
    return EndoDescription("pullback", level)


def rational_wedge(atom: Atom) -> tuple[int, ...]:
    """Dimensions of the spheres in the rationalization, as a sorted multiset.

    Derived from each atom's defining cofibration: attaching maps of finite
    order vanish rationally, degree maps do not.
    """
    n = atom.top_dim
    if atom.kind is AtomKind.SPHERE:
        return (n,)
    if atom.kind in (AtomKind.MOORE, AtomKind.CHANG_FULL):
        return ()
    if atom.kind is AtomKind.CHANG_R_ETA:
        return (n + 1,)
    if atom.kind is AtomKind.CHANG_ETA_S:
        return (n - 1,)
    if atom.kind is AtomKind.CHANG_ETA:
        return (n - 1, n + 1)
    if atom.kind is AtomKind.CHANG_ETA_SQ:
        return (n - 2, n + 1)
    return (n - 3, n + 1)  # ATOM_A


def is_torsion(atom: Atom) -> bool:
    """Whether the endomorphism ring is torsion (rationally trivial atom)."""
    return atom.kind in (AtomKind.MOORE, AtomKind.CHANG_FULL)


def endo_order(atom: Atom) -> EndoDescription:
    """Reduced endomorphism order of each catalog atom."""
    if atom.kind in (AtomKind.MOORE, AtomKind.CHANG_FULL):
        return TORSION
    if atom.kind in (AtomKind.SPHERE, AtomKind.CHANG_R_ETA, AtomKind.CHANG_ETA_S):
        return INTEGERS
    if atom.kind in (AtomKind.CHANG_ETA, AtomKind.CHANG_ETA_SQ):
        return pullback(2)
    return pullback(24 // gcd(atom.v, 24))  # ATOM_A


def genus_of_atom(atom: Atom, cap: int = DEFAULT_CAP) -> int:
    """Genus of an atom, computed through the order engine.

    Torsion atoms and atoms with endomorphism ring Z have a single class;
    pullback cases run the full double-coset computation.
    """
    endo = endo_order(atom)
    if endo.kind in ("torsion", "integers"):
        return 1
    return genus(pullback_spec(endo.level), cap).total


def same_genus(a: Atom, b: Atom) -> bool:
    """Whether two catalog atoms lie in the same genus.

    Equal atoms always do; distinct A(v) atoms do exactly when they share
    the top dimension and gcd(v, 24).  All other distinct pairs are in
    different genera (torsion atoms in one genus are isomorphic).
    """
    if a == b:
        return True
    if a.kind is AtomKind.ATOM_A and b.kind is AtomKind.ATOM_A:
        return a.top_dim == b.top_dim and gcd(a.v, 24) == gcd(b.v, 24)
    return False


def torsion_split(atoms) -> tuple[list[Atom], list[Atom]]:
    """Stable partition into (torsion part, torsion-reduced part)."""
    torsion = [a for a in atoms if is_torsion(a)]
    reduced = [a for a in atoms if not is_torsion(a)]
    return torsion, reduced


def b0_of_wedge(atoms) -> tuple[int, ...]:
    """Multiset union of the rational wedges of a list of atoms."""
    dims: list[int] = []
    for atom in atoms:
        dims.extend(rational_wedge(atom))
    return tuple(sorted(dims))


# ---------------------------------------------------------------------------
# Naming grammar:  S<n> | M(<a>)@<n> | C(2^r.eta.2^s)@<n> | C(2^r.eta)@<n>
#                | C(eta.2^s)@<n> | C(eta)@<n> | C(eta2)@<n> | A(<v>)@<n>
# ---------------------------------------------------------------------------


class AtomParseError(ValueError):
    """Malformed atom name; carries the offending token and its position."""

    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} at position {position}: {token!r}")
        self.position = position
        self.token = token


def _parse_int(text: str, start: int, end: int, what: str) -> int:
    token = text[start:end]
    if not token or not token.isdigit():
        raise AtomParseError(f"expected {what}", start, token or "<end>")
    return int(token)


def _split_call(text: str, head: str) -> tuple[str, int, int]:
    """Split '<head>(<inner>)@<n>' into (inner, inner offset, n)."""
    if len(text) < 2 or text[1] != "(":
        raise AtomParseError(
            f"expected '(' after {head!r}", 1, text[1:2] or "<end>"
        )
    close = text.find(")", 2)
    if close < 0:
        raise AtomParseError("missing ')'", len(text), "<end>")
    if close + 1 >= len(text) or text[close + 1] != "@":
        raise AtomParseError(
            "expected '@' after ')'", close + 1, text[close + 1 : close + 2] or "<end>"
        )
    n = _parse_int(text, close + 2, len(text), "a top dimension")
    return text[2:close], 2, n


def _parse_power(text: str, token: str, offset: int) -> int:
    if not token.startswith("2^"):
        raise AtomParseError("expected a power token '2^<k>'", offset, token)
    exponent = token[2:]
    if not exponent.isdigit():
        raise AtomParseError("expected digits after '2^'", offset + 2, exponent or "<end>")
    return int(exponent)


def parse_atom(text: str) -> Atom:
    """Parse an atom name; raises AtomParseError naming token and position."""
    s = text.strip()
    if not s:
        raise AtomParseError("empty atom name", 0, "<end>")
    head = s[0]
    if head == "S":
        n = _parse_int(s, 1, len(s), "digits after 'S'")
        return sphere(n)
    if head == "M":
        inner, off, n = _split_call(s, "M")
        a = _parse_int(s, off, off + len(inner), "an integer multiplicity")
        return moore(a, top_dim=n)
    if head == "A":
        inner, off, n = _split_call(s, "A")
        v = _parse_int(s, off, off + len(inner), "an integer parameter v")
        return atom_a(v, top_dim=n)
    if head == "C":
        inner, off, n = _split_call(s, "C")
        tokens = inner.split(".")
        offsets = []
        pos = off
        for tok in tokens:
            offsets.append(pos)
            pos += len(tok) + 1
        if tokens == ["eta"]:
            return chang_eta(top_dim=n)
        if tokens == ["eta2"]:
            return chang_eta_sq(top_dim=n)
        if len(tokens) == 2 and tokens[1] == "eta":
            return chang_r_eta(_parse_power(s, tokens[0], offsets[0]), top_dim=n)
        if len(tokens) == 2 and tokens[0] == "eta":
            return chang_eta_s(_parse_power(s, tokens[1], offsets[1]), top_dim=n)
        if len(tokens) == 3 and tokens[1] == "eta":
            r = _parse_power(s, tokens[0], offsets[0])
            sp = _parse_power(s, tokens[2], offsets[2])
            return chang_full(r, sp, top_dim=n)
        for tok, tok_off in zip(tokens, offsets):
            if tok != "eta" and not (tok.startswith("2^") and tok[2:].isdigit()):
                raise AtomParseError("unrecognized token in Chang atom body", tok_off, tok)
        raise AtomParseError("unrecognized Chang atom body", off, inner)
    raise AtomParseError("unknown atom kind", 0, head)


def format_atom(atom: Atom) -> str:
    """Canonical grammar name of an atom; inverse of parse_atom."""
    n = atom.top_dim
    if atom.kind is AtomKind.SPHERE:
        return f"S{n}"
    if atom.kind is AtomKind.MOORE:
        return f"M({atom.a})@{n}"
    if atom.kind is AtomKind.CHANG_FULL:
        return f"C(2^{atom.r}.eta.2^{atom.s})@{n}"
    if atom.kind is AtomKind.CHANG_R_ETA:
        return f"C(2^{atom.r}.eta)@{n}"
    if atom.kind is AtomKind.CHANG_ETA_S:
        return f"C(eta.2^{atom.s})@{n}"
    if atom.kind is AtomKind.CHANG_ETA:
        return f"C(eta)@{n}"
    if atom.kind is AtomKind.CHANG_ETA_SQ:
        return f"C(eta2)@{n}"
    return f"A({atom.v})@{n}"
