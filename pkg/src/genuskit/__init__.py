"""Genus counts of orders in products of integer matrix rings, computed by
finite double-coset enumeration, with a catalog of stable polyhedral atoms
on top and a CLI front end."""

from .atoms import (
    Atom,
    AtomKind,
    AtomParseError,
    EndoDescription,
    atom_a,
    b0_of_wedge,
    chang_eta,
    chang_eta_s,
    chang_eta_sq,
    chang_full,
    chang_r_eta,
    endo_order,
    format_atom,
    genus_of_atom,
    is_torsion,
    moore,
    parse_atom,
    rational_wedge,
    same_genus,
    sphere,
    torsion_split,
)
from .cosets import (
    FiniteGroup,
    direct_product,
    double_coset_count,
    double_coset_partition,
    subgroup_closure,
)
from .errors import InternalInconsistencyError, ResourceLimitError
from .matrices import (
    DEFAULT_CAP,
    MatModM,
    det,
    elementary_generators,
    enumerate_gl,
    mat_mul,
    stable_image,
)
from .orders import (
    GenusResult,
    OrderSpec,
    genus,
    genus_pullback_formula,
    genus_relative,
    load_order_spec,
    order_spec_from_dict,
    order_spec_to_dict,
    pullback_spec,
    subring_closure,
    subring_units,
)
from .rings import Residue, ext_gcd, gcd, totient, unit_group, units

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "AtomKind",
    "AtomParseError",
    "DEFAULT_CAP",
    "EndoDescription",
    "FiniteGroup",
    "GenusResult",
    "InternalInconsistencyError",
    "MatModM",
    "OrderSpec",
    "Residue",
    "ResourceLimitError",
    "atom_a",
    "b0_of_wedge",
    "chang_eta",
    "chang_eta_s",
    "chang_eta_sq",
    "chang_full",
    "chang_r_eta",
    "det",
    "direct_product",
    "double_coset_count",
    "double_coset_partition",
    "elementary_generators",
    "endo_order",
    "enumerate_gl",
    "ext_gcd",
    "format_atom",
    "gcd",
    "genus",
    "genus_of_atom",
    "genus_pullback_formula",
    "genus_relative",
    "is_torsion",
    "load_order_spec",
    "mat_mul",
    "moore",
    "order_spec_from_dict",
    "order_spec_to_dict",
    "parse_atom",
    "pullback_spec",
    "rational_wedge",
    "same_genus",
    "sphere",
    "stable_image",
    "subgroup_closure",
    "subring_closure",
    "subring_units",
    "torsion_split",
    "totient",
    "unit_group",
    "units",
]
