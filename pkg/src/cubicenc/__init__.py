"""Compile bounded provability in a toy additive proof system into cubic Diophantine systems."""

from .encoder import Constraint, ConstraintSystem, Kind, build_system
from .errors import CubicEncError
from .poly import Polynomial, Registry, Role, Var
from .reducer import extend_witness, merge, reduce_degree
from .theory import Line, Proof, TheorySpec, check_proof, search_proof
from .witness import build_witness, extract_proof, pipeline_witness, verify

__version__ = "0.1.0"

__all__ = [
    "Constraint", "ConstraintSystem", "CubicEncError", "Kind", "Line", "Polynomial", "Proof",
    "Registry", "Role", "TheorySpec", "Var", "build_system", "build_witness", "check_proof",
    "extend_witness", "extract_proof", "merge", "pipeline_witness", "reduce_degree",
    "search_proof", "verify",
]
