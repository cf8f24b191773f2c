"""Exact desk-scale computations for GL(3) Hecke combinatorics, mod-p
representation data, modular-symbol eigensystems, and boundary eigenvalue
transfer identities."""

__version__ = "0.1.0"

from .ffield import FiniteField
from .characters import DirichletCharacter, niveau2_normal_form

__all__ = ["FiniteField", "DirichletCharacter", "niveau2_normal_form", "__version__"]
