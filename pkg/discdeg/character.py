"""
The torus character Xi_A of the discriminant, computed two ways.

``xi_closed`` sums (-1)^codim (dim+1) * moment over all faces of Q.
``xi_lattice_oracle`` evaluates the alternating lattice sum

    sum_{i >= 0} sum_{u at level l+i} (-1)^{i+c+N} C(dim Gamma(u) + 1, i) u

from which the face sum is derived; for large l both agree. Degrees are read
off the character: deg_i = alpha_i, deg_var = beta_j, deg = sum alpha_i.
"""
import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from discdeg.errors import DomainError, InvariantViolation, TheoremFalsified
from discdeg.formulas import mod_p_report, mu
from discdeg.polytope import (
    Profile,
    check_face_distinctness,
    enumerate_faces,
    full_face,
    interior_weighted_sum,
    lattice_points,
    moment,
    smallest_containing_face,
)
from discdeg.schemas import DegreeReport

logger = logging.getLogger(__name__)

DEFAULT_MAX_LEVEL = 64


@dataclass(frozen=True)
class CharacterVector:
    """Xi_A in the ambient coordinates (alpha_1..alpha_c; beta_0..beta_N)."""
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    @classmethod
    def from_vector(cls, vector, c: int) -> 'CharacterVector':
        """
        Split a flat vector, insisting every entry is an integer.

        Raises:
            InvariantViolation: if some entry has a nontrivial denominator.
        """
        values = []
        for slot, value in enumerate(vector):
            value = Fraction(value)
            if value.denominator != 1:
                raise InvariantViolation(f"Character coordinate {slot} is not an integer: {value}")
            values.append(int(value))
        return cls(tuple(values[:c]), tuple(values[c:]))

    def as_tuple(self) -> tuple[int, ...]:
        return self.alpha + self.beta

    def satisfies_lattice_relation(self, degrees) -> bool:
        return sum(d * a for d, a in zip(degrees, self.alpha)) == sum(self.beta)

    def is_zero(self) -> bool:
        return not any(self.as_tuple())


def xi_closed(profile: Profile) -> CharacterVector:
    """
    Face-sum formula for Xi_A.

    Raises:
        InvariantViolation: if the rational sum fails to be integral.
        FaceDuplication: if two supports give the same face.
    """
    check_face_distinctness(profile)
    total = [Fraction(0)] * profile.width
    for face in enumerate_faces(profile):
        weight = (-1) ** face.codim(profile) * (face.dim + 1)
        for slot, value in enumerate(moment(face, profile)):
            if value:
                total[slot] += weight * value
    return CharacterVector.from_vector(total, profile.c)


def _oracle_sign(profile: Profile, i: int) -> int:
    # the exponent counts the rank c+N of the lattice, one more than dim Q
    return (-1) ** (i + profile.c + profile.N)


def xi_lattice_oracle(profile: Profile, l0: int, exhaustive: bool = False) -> CharacterVector:
    """
    Alternating lattice sum at base level ``l0``.

    By default the lattice points of each face interior are aggregated with
    ``interior_weighted_sum``; with ``exhaustive`` every lattice point of the
    cone is enumerated and attributed to its smallest containing face.

    Args:
        profile: Profile whose character is summed.
        l0: Base level; levels l0..l0+c+N are visited.
        exhaustive: Enumerate every point instead of aggregating per face.

    Returns:
        CharacterVector: the alternating sum, which equals Xi_A once stable.

    Raises:
        DomainError: if ``l0`` < 1.
        InvariantViolation: if the sum has a fractional coordinate.
    """
    if l0 < 1:
        raise DomainError(f"l0 must be >= 1, got {l0}")
    total = [0] * profile.width
    if exhaustive:
        cone = full_face(profile)
        for level in range(l0, l0 + profile.c + profile.N + 1):
            i = level - l0
            for u in lattice_points(cone, profile, level):
                span = smallest_containing_face(u).dim + 1
                if i > span:
                    continue
                weight = _oracle_sign(profile, i) * comb(span, i)
                for slot, value in enumerate(u.as_tuple()):
                    total[slot] += weight * value
    else:
        for face in enumerate_faces(profile):
            span = face.dim + 1
            for i in range(span + 1):
                weight = _oracle_sign(profile, i) * comb(span, i)
                _, sums = interior_weighted_sum(face, profile, l0 + i)
                for slot, value in enumerate(sums):
                    total[slot] += weight * value
    return CharacterVector.from_vector(total, profile.c)


def stabilized_xi_oracle(profile: Profile, l0: int = None, max_level: int = None) -> CharacterVector:
    """
    Run the oracle at l0, l0+1, l0+2 and accept on three-way agreement.

    Starts at l0 = k+1 and doubles l0 until agreement or ``max_level``
    (default ``DISCDEG_ORACLE_MAX_LEVEL`` or 64).

    Raises:
        InvariantViolation: if no stable window is found below the cap.
    """
    if max_level is None:
        raw = os.environ.get('DISCDEG_ORACLE_MAX_LEVEL', DEFAULT_MAX_LEVEL)
        try:
            max_level = int(raw)
        except ValueError:
            raise DomainError(f"DISCDEG_ORACLE_MAX_LEVEL must be an integer, got {raw!r}")
    level = l0 if l0 is not None else profile.k + 1
    level = max(level, 1)
    while level <= max_level:
        window = [xi_lattice_oracle(profile, level + t) for t in range(3)]
        if window[0] == window[1] == window[2]:
            return window[0]
        logger.info(f"Oracle not stable at l0={level} for {profile.describe()}, escalating")
        level *= 2
    raise InvariantViolation(
        f"Lattice oracle did not stabilize below l0={max_level} for {profile.describe()}"
    )


def degrees_from_xi(xi: CharacterVector, profile: Profile) -> DegreeReport:
    """
    Read the degrees off a character and divide by mu.

    Args:
        xi: Character from ``xi_closed`` or the lattice oracle.
        profile: Profile the character belongs to.

    Returns:
        DegreeReport: deg_i = alpha_i / mu, deg_var = beta_j / mu; 'unit' when xi is zero.

    Raises:
        InvariantViolation: if the beta components differ.
        TheoremFalsified: if mu does not divide a degree.
    """
    if len(set(xi.beta)) > 1:
        raise InvariantViolation(f"Character beta components differ: {xi.beta}")
    m = mu(profile)
    raw = list(xi.alpha) + [xi.beta[0] if xi.beta else 0]
    if any(value % m for value in raw):
        logger.critical(f"mu={m} does not divide character {xi.as_tuple()} of {profile.describe()}")
        raise TheoremFalsified(f"mu={m} does not divide character {xi.as_tuple()}")
    deg_i = [value // m for value in xi.alpha]
    deg_var = raw[-1] // m
    defective = xi.is_zero()
    return DegreeReport(
        N=profile.N,
        degrees=list(profile.degrees),
        p=profile.p,
        mu=m,
        defective=defective,
        deg=sum(deg_i),
        deg_i=deg_i,
        deg_var=deg_var,
        mod_p_verdict='unit' if defective else mod_p_report(profile, profile.p),
    )
