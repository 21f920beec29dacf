"""Engel graphs of finite groups.

The Engel graph of G has the non-hypercentral elements as vertices and an
edge ``x -> y`` whenever ``[x,_n y] = 1`` for some ``n >= 1``.  This package
builds the graphs (and the variants with a fixed n, on all of G, or on
``G - {1}``), computes the subgroups they depend on and decides their
connectivity.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .catalog import (  # noqa: E402
    make,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_frobenius_metacyclic,
    make_linear,
    make_suzuki,
    make_symmetric,
)
from .engel import DELTA, GAMMA, LAMBDA, EngelTrace, GraphMode, edge, eng, gamma_n  # noqa: E402
from .group import CapExceeded, Group, Subgroup  # noqa: E402

__all__ = [
    "CapExceeded", "DELTA", "EngelTrace", "GAMMA", "GraphMode", "Group", "LAMBDA", "Subgroup",
    "edge", "eng", "gamma_n", "make", "make_alternating", "make_cyclic", "make_dicyclic",
    "make_dihedral", "make_frobenius_metacyclic", "make_linear", "make_suzuki", "make_symmetric",
]
