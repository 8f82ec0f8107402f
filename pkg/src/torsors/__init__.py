"""Twisting of finite Galois sets and torsors by nonabelian cocycles."""

from .gammagroup import GammaGroup, trivial_action
from .gammasets import GammaSet, GObject
from .groups import FiniteGroup, GroupError, GroupHom, Subgroup
from .torsors import Cocycle, Torsor, h1
from .twisting import twist, twist_torsor

__all__ = [
    "Cocycle",
    "FiniteGroup",
    "GObject",
    "GammaGroup",
    "GammaSet",
    "GroupError",
    "GroupHom",
    "Subgroup",
    "Torsor",
    "h1",
    "trivial_action",
    "twist",
    "twist_torsor",
]

__version__ = "0.1.0"
