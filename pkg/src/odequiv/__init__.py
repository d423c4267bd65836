"""Exact differential invariants of second-order ODEs of the form
y'' = a3 y'^3 + a2 y'^2 + a1 y' + a0 under point transformations.

The package computes relative and scalar invariants, isotropy algebras,
orbit classification (including the linearizability test), lifted
actions of point maps on coefficient jets, and necessary conditions for
pairwise equivalence.  All arithmetic is exact rational.
"""

from .rat import Q, rat
from .expr import (parse_coeff, parse_expr, parse_equation_file, taylor,
                   section_jet, TaylorJet2, ExprError, EvalError)
from .jetpoly import SectionJet
from .invariants import (f_invariants, psi_invariants, omega2, omega3,
                         derived2, derived3, frame, scalar_invariants,
                         lie_derivatives, DegenerateJetError)
from .isotropy import (isotropy_algebra, a_space, classify_orbit,
                       OrbitLabel)
from .transform import (PointMap, MapJet, map_jet, invert_map_jet,
                        compose_map_jets, pushforward_equation,
                        lift_section_jet, SingularMapError)
from .equivalence import (ExprEquation, PushforwardEquation, Grid,
                          classify_regular_case, check_equivalence,
                          InvariantSignature, EquivalenceReport,
                          NonRegularPointError)

__version__ = "0.1.0"

__all__ = [
    "Q", "rat",
    "parse_coeff", "parse_expr", "parse_equation_file", "taylor",
    "section_jet", "TaylorJet2", "ExprError", "EvalError",
    "SectionJet",
    "f_invariants", "psi_invariants", "omega2", "omega3", "derived2",
    "derived3", "frame", "scalar_invariants", "lie_derivatives",
    "DegenerateJetError",
    "isotropy_algebra", "a_space", "classify_orbit", "OrbitLabel",
    "PointMap", "MapJet", "map_jet", "invert_map_jet",
    "compose_map_jets", "pushforward_equation", "lift_section_jet",
    "SingularMapError",
    "ExprEquation", "PushforwardEquation", "Grid",
    "classify_regular_case", "check_equivalence", "InvariantSignature",
    "EquivalenceReport", "NonRegularPointError",
]
