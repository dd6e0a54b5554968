"""Bicriteria approximation algorithms for k-edge-connected spanning subgraphs."""
from .bicriteria import Solution, run_algorithm1, run_algorithm2
from .cutting_plane import FracSolution, cutting_plane_extreme_point
from .ecsm import MultiSolution, solve_ecsm
from .instances import Instance, ParseError, generate, parse_instance, parse_instance_text
from .kernels import BACKEND
from .mincut import find_cores, global_min_cut, max_flow, separate
from .multigraph import MultiGraph, contract
from .simplex import LinearProgram, LPInfeasible, simplex_solve
from .state import InfeasibleInstance, InvariantViolation, KecssError
from .verify import (Certificate, brute_force_ecsm, brute_force_opt, certify,
                     lp_by_enumeration, sandwich_check)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Certificate", "FracSolution", "InfeasibleInstance", "Instance",
    "InvariantViolation", "KecssError", "LPInfeasible", "LinearProgram", "MultiGraph",
    "MultiSolution", "ParseError", "Solution", "brute_force_ecsm", "brute_force_opt",
    "certify", "contract", "cutting_plane_extreme_point", "find_cores", "generate",
    "global_min_cut", "lp_by_enumeration", "max_flow", "parse_instance",
    "parse_instance_text", "run_algorithm1", "run_algorithm2", "sandwich_check",
    "separate", "simplex_solve", "solve_ecsm",
]
