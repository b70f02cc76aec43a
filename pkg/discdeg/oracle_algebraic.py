"""
Classical resultants and binary discriminants, expanded over the integers.

Used as ground truth for the N = 1 cases of the closed forms: the partial
degrees of a Sylvester resultant are (deg_1, deg_2) for c = N+1 = 2, and
the discriminant of a binary form has total degree 2(d-1) and is a square
modulo 2.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from discdeg.errors import CapacityError, DomainError
from discdeg.exact import MPoly

logger = logging.getLogger(__name__)

MAX_FORM_DEGREE = 4


@dataclass(frozen=True)
class SymbolicForm:
    """
    A generic binary form sum_i c_i X0^{d-i} X1^i whose coefficients are
    independent variables named ``{prefix}0..{prefix}d``.
    """
    degree: int
    prefix: str

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError(f"Form degree must be >= 1, got {self.degree}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f'{self.prefix}{i}' for i in range(self.degree + 1))

    def coefficients(self, variables: Sequence[str]) -> list[MPoly]:
        """Coefficient polynomials inside the ring over ``variables``."""
        gens = dict(zip(variables, MPoly.gens(variables)))
        try:
            return [gens[name] for name in self.names]
        except KeyError as e:
            raise DomainError(f"Variable {e} is missing from the ring {tuple(variables)}") from e


def _check_capacity(*degrees: int) -> None:
    for d in degrees:
        if d > MAX_FORM_DEGREE:
            raise CapacityError(
                f"Form degree {d} exceeds the symbolic cap of {MAX_FORM_DEGREE}"
            )


def sylvester_matrix(f: Sequence[MPoly], g: Sequence[MPoly]) -> list[list]:
    """
    Sylvester matrix of two binary forms given by coefficient lists
    (highest X0 power first). Empty cells hold the integer 0.
    """
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise DomainError("Forms need at least one coefficient")
    size = m + n
    rows = []
    for shift in range(n):
        row = [0] * size
        row[shift:shift + m + 1] = f
        rows.append(row)
    for shift in range(m):
        row = [0] * size
        row[shift:shift + n + 1] = g
        rows.append(row)
    return rows


def determinant(matrix: Sequence[Sequence]) -> Union[MPoly, int]:
    """
    Laplace expansion along the rows, memoized on the set of used columns.

    Zero cells are skipped, which keeps banded matrices like Sylvester's cheap.
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DomainError("Determinant needs a square matrix")
    if size == 0:
        return 1

    @lru_cache(maxsize=None)
    def expand(row: int, used: int):
        if row == size:
            return 1
        total = 0
        free_seen = 0
        for col in range(size):
            if used >> col & 1:
                continue
            entry = matrix[row][col]
            if not (isinstance(entry, int) and entry == 0):
                minor = expand(row + 1, used | 1 << col)
                term = entry * minor
                total = total - term if free_seen % 2 else total + term
            free_seen += 1
        return total

    return expand(0, 0)


def resultant(f: Sequence[MPoly], g: Sequence[MPoly]) -> MPoly:
    """Res(f, g) as the determinant of their Sylvester matrix."""
    result = determinant(sylvester_matrix(f, g))
    if isinstance(result, MPoly):
        return result
    ring = next(x for x in list(f) + list(g) if isinstance(x, MPoly))
    return MPoly.constant(ring.variables, result)


def sylvester_resultant(d1: int, d2: int) -> MPoly:
    """
    Resultant of two generic binary forms of degrees d1 and d2.

    Args:
        d1: Degree of the first form, coefficients a0..a_{d1}.
        d2: Degree of the second form, coefficients b0..b_{d2}.

    Returns:
        MPoly: the expanded determinant of the Sylvester matrix over a0..b_{d2}.

    Raises:
        DomainError: if a degree is below 1.
        CapacityError: if a degree exceeds 4.
    """
    first, second = SymbolicForm(d1, 'a'), SymbolicForm(d2, 'b')
    _check_capacity(d1, d2)
    ring = first.names + second.names
    result = resultant(first.coefficients(ring), second.coefficients(ring))
    logger.debug(f"Res({d1},{d2}) has {len(result.terms)} terms")
    return result


def binary_discriminant(d: int) -> MPoly:
    """
    Discriminant of the generic binary form of degree d in c0..cd, computed
    as the primitive part of Res(dF/dX0, dF/dX1).

    Raises:
        DomainError: if d < 2.
        CapacityError: if d > 4.
    """
    if d < 2:
        raise DomainError(f"Binary discriminant needs d >= 2, got {d}")
    _check_capacity(d)
    form = SymbolicForm(d, 'c')
    ring = form.names
    coeffs = form.coefficients(ring)
    d_x0 = [coeffs[i].scale(d - i) for i in range(d)]
    d_x1 = [coeffs[i].scale(i) for i in range(1, d + 1)]
    return resultant(d_x0, d_x1).primitive_part()


def partial_degrees(poly: MPoly, groups: Sequence[Sequence[str]]) -> list[int]:
    """
    Largest combined exponent of each variable group over the monomials of ``poly``.

    Args:
        poly: Nonzero polynomial.
        groups: Variable names, one tuple per coefficient group.

    Returns:
        list[int]: one degree per group, in order.

    Raises:
        DomainError: for the zero polynomial or an unknown variable name.
    """
    if poly.is_zero():
        raise DomainError("Partial degrees of the zero polynomial are undefined")
    slots = {name: index for index, name in enumerate(poly.variables)}
    degrees = []
    for group in groups:
        try:
            indices = [slots[name] for name in group]
        except KeyError as e:
            raise DomainError(f"Unknown variable {e} in group {list(group)}") from e
        degrees.append(poly.degree_in(indices))
    return degrees


def reduce_mod(poly: MPoly, p: int) -> MPoly:
    """Reduce integer coefficients into 0..p-1, dropping the ones that vanish."""
    if p < 2:
        raise DomainError(f"Modulus must be >= 2, got {p}")
    if not poly.has_integer_coefficients():
        raise DomainError("reduce_mod requires integer coefficients")
    return poly.map_coefficients(lambda coeff: int(coeff) % p)


def is_perfect_square_mod2(poly: MPoly) -> bool:
    """
    Whether ``poly`` mod 2 is a square in F_2[vars].

    Squaring is additive over F_2, so a reduced polynomial is a square
    exactly when every exponent of every surviving monomial is even.
    """
    reduced = reduce_mod(poly, 2)
    return all(e % 2 == 0 for exponent in reduced.terms for e in exponent)


def sqrt_mod2(poly: MPoly) -> MPoly:
    """
    The square root over F_2 of ``poly`` mod 2.

    Raises:
        DomainError: if the reduction is not a square.
    """
    if not is_perfect_square_mod2(poly):
        raise DomainError(f"{poly.to_string()} is not a square modulo 2")
    reduced = reduce_mod(poly, 2)
    return MPoly(
        poly.variables,
        {tuple(e // 2 for e in exponent): 1 for exponent in reduced.terms},
    )
