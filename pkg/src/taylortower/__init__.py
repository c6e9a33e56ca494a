"""Polynomial approximation towers for functors of chain complexes over ℤ.

The subpackages build on each other: ``fincat`` (finite categories),
``groth`` (Grothendieck constructions and the shapes built from them),
``reedy`` (Reedy structures), ``simp`` (finite simplicial sets), ``chain``
(chain complexes), ``diagrams`` (homotopy limits and colimits), ``star``,
``tower``, ``cubes`` and ``cocartesian``.
"""
from .chain import ChainComplex, ChainMap, is_quasi_iso, random_complex
from .cocartesian import cube_classify, latching_map, rezk_objects
from .cubes import cartesian_replacement, is_homotopy_cartesian
from .diagrams import Diagram, hocolim, holim
from .fincat import FinCat, GuardError, find_isomorphism
from .functors import FunctorSpec
from .groth import int_pb, int_po, jn, plus, powerset
from .reedy import ReedyStructure, check_reedy
from .simp import FinSimpSet, nerve, normalized_chains
from .tower import Tower, aux_tower, p_n, t_n, tower_map

__version__ = "0.1.0"

__all__ = [
    "ChainComplex", "ChainMap", "Diagram", "FinCat", "FinSimpSet", "FunctorSpec",
    "GuardError", "ReedyStructure", "Tower", "aux_tower", "cartesian_replacement",
    "check_reedy", "cube_classify", "find_isomorphism", "hocolim", "holim",
    "int_pb", "int_po", "is_homotopy_cartesian", "is_quasi_iso", "jn", "latching_map",
    "nerve", "normalized_chains", "p_n", "plus", "powerset", "random_complex",
    "rezk_objects", "t_n", "tower_map",
]
