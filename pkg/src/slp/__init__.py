"""Stable model engine for function-free logic programs with negation."""

__version__ = "0.1.0"

from slp.errors import SlpError
from slp.ground import GroundProgram, ground, herbrand, simplify
from slp.semantics import (
    ThreeValuedModel,
    is_minimal_model,
    is_model,
    is_stable,
    is_supported,
    least_model,
    reduct,
    well_founded,
)
from slp.solve import SolverConfig, exists, project, query, solve
from slp.syntax import Atom, Clause, Literal, Program, Term, parse, print_program

__all__ = [
    "Atom",
    "Clause",
    "GroundProgram",
    "Literal",
    "Program",
    "SlpError",
    "SolverConfig",
    "Term",
    "ThreeValuedModel",
    "exists",
    "ground",
    "herbrand",
    "is_minimal_model",
    "is_model",
    "is_stable",
    "is_supported",
    "least_model",
    "parse",
    "print_program",
    "project",
    "query",
    "reduct",
    "simplify",
    "solve",
    "well_founded",
]
