"""
discdeg: homogeneity degrees of discriminants of complete intersections.
"""
from discdeg.character import CharacterVector, degrees_from_xi, stabilized_xi_oracle, xi_closed, xi_lattice_oracle
from discdeg.errors import (
    CapacityError,
    DiscdegError,
    DomainError,
    FaceDuplication,
    InvariantViolation,
    TheoremFalsified,
)
from discdeg.formulas import deg_i_closed, deg_var_closed, degree_report, is_defective, mod_p_report, mu, symbolic_degrees
from discdeg.polytope import Face, LatticeVector, Profile
from discdeg.schemas import DegreeReport

__all__ = [
    'CapacityError', 'CharacterVector', 'DegreeReport', 'DiscdegError', 'DomainError', 'Face',
    'FaceDuplication', 'InvariantViolation', 'LatticeVector', 'Profile', 'TheoremFalsified',
    'deg_i_closed', 'deg_var_closed', 'degree_report', 'degrees_from_xi', 'is_defective',
    'mod_p_report', 'mu', 'stabilized_xi_oracle', 'symbolic_degrees', 'xi_closed', 'xi_lattice_oracle',
]
