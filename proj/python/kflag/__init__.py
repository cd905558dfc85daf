"""K-rings of flag Bott towers: Python bindings for the kflag C++ core."""

import json

from ._kflag import KflagError, Tower, canonical_expr, load_tower, parse_tower
from . import _kflag

__all__ = [
    "KflagError",
    "Tower",
    "canonical_expr",
    "load_tower",
    "parse_tower",
    "presentation",
    "verify_rank",
    "normal_form",
    "weyl",
]


def presentation(tower, equivariant=False):
    """Presentation as {"mode", "generators", "relations"} with canonical strings."""
    return json.loads(_kflag.presentation_json(tower, equivariant))


def verify_rank(tower):
    """Rank report from the Groebner oracle."""
    return json.loads(_kflag.verify_rank_json(tower))


def normal_form(tower, expr, equivariant=False):
    """Coordinates of expr in the standard-monomial basis (type-A full flags)."""
    return json.loads(_kflag.normal_form_json(tower, expr, equivariant))


def weyl(family, vars, blocks=()):
    return json.loads(_kflag.weyl_json(family, vars, list(blocks)))
