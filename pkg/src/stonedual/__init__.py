"""Finite models of spectral spaces, distributive lattices and commutative rings.

The modules build from the bottom up:

* ``order``: preorders, lattices, ideals and homomorphisms;
* ``topology``: finite spaces, their predicates and continuous maps;
* ``duality``: lattice spectra, fundamental sets and the adjunction;
* ``rings``: finite commutative rings and Zariski spectra;
* ``symbolic``: block templates for tame infinite Alexandroff spaces.
"""
from .duality import spec_lattice
from .order import FiniteLattice, FinitePoset, FinitePreorder, chain, lattice_from_pairs
from .rings import FiniteCommRing, cyclic, spec_ring
from .symbolic import ChainTemplate, classify_template, preset
from .topology import FiniteSpace, PredicateProfile, classify

__version__ = "0.1.0"

__all__ = [
    "FiniteLattice",
    "FinitePoset",
    "FinitePreorder",
    "chain",
    "lattice_from_pairs",
    "FiniteSpace",
    "PredicateProfile",
    "classify",
    "spec_lattice",
    "FiniteCommRing",
    "cyclic",
    "spec_ring",
    "ChainTemplate",
    "classify_template",
    "preset",
]
