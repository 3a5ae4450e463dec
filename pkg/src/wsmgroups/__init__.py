"""Computational checks of second maximal subgroup results for finite permutation groups."""

from .characters import CharacterTable, character_table, nonvanishing_classes, nonvanishing_elements
from .corpus import agl1, alt, cyclic, default_corpus, dihedral, direct, elem_abelian, parse_corpus, quaternion, sym
from .groups import PermGroup
from .lattice import ChainPosition, SubgroupLattice
from .modular import GModule, is_quasi_primitive, is_strongly_irreducible
from .perm import Permutation
from .verify import (
    build_nonsolvable_counterexample,
    is_wsm,
    verify_key_lemma,
    verify_theorem_A,
    verify_theorem_B,
    verify_theorem_C,
)

__all__ = [
    "CharacterTable", "character_table", "nonvanishing_classes", "nonvanishing_elements",
    "agl1", "alt", "cyclic", "default_corpus", "dihedral", "direct", "elem_abelian", "parse_corpus",
    "quaternion", "sym", "PermGroup", "ChainPosition", "SubgroupLattice", "GModule",
    "is_quasi_primitive", "is_strongly_irreducible", "Permutation", "build_nonsolvable_counterexample",
    "is_wsm", "verify_key_lemma", "verify_theorem_A", "verify_theorem_B", "verify_theorem_C",
]

__version__ = "0.1.0"
