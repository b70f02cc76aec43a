"""
Exact arithmetic kernels.

Rationals are ``fractions.Fraction``; ``MPoly`` is a sparse multivariate
polynomial over the rationals with a fixed variable order, ``UPoly`` a dense
univariate one. The symmetric-function helpers evaluate divided differences
through complete homogeneous symmetric polynomials so that repeated nodes
never divide by zero.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from discdeg.errors import DomainError

logger = logging.getLogger(__name__)

Rat = Fraction
Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]


def as_rat(value) -> Fraction:
    """Convert an int or rational to a reduced ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise DomainError(f"Not an exact rational: {value!r}")


def _is_scalar(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


class MPoly:
    """
    Sparse multivariate polynomial over Q.

    Terms are stored as ``{exponent tuple: Fraction}`` with no zero
    coefficients. The variable list is fixed at construction; combining two
    polynomials over different variable lists is a ``DomainError``.
    """

    __slots__ = ('_variables', '_terms')

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] = None):
        self._variables = tuple(variables)
        width = len(self._variables)
        clean: dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(exponent)
            if len(exponent) != width:
                raise DomainError(
                    f"Exponent {exponent} does not match {width} variables"
                )
            if any(e < 0 for e in exponent):
                raise DomainError(f"Negative exponent in {exponent}")
            coeff = as_rat(coeff)
            if coeff:
                clean[exponent] = clean.get(exponent, Fraction(0)) + coeff
                if not clean[exponent]:
                    del clean[exponent]
        self._terms = clean

    # --- construction helpers ---

    @classmethod
    def gens(cls, names: Sequence[str]) -> tuple['MPoly', ...]:
        """Return one generator polynomial per name, sharing the variable list."""
        width = len(names)
        return tuple(
            cls(names, {tuple(int(i == j) for j in range(width)): 1})
            for i in range(width)
        )

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar) -> 'MPoly':
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def zero(cls, variables: Sequence[str]) -> 'MPoly':
        return cls(variables)

    # --- accessors ---

    @property
    def variables(self) -> tuple[str, ...]:
        return self._variables

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Largest total degree of a monomial; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> int:
        """Largest combined exponent of the given variable slots."""
        indices = tuple(indices)
        return max((sum(e[i] for i in indices) for e in self._terms), default=-1)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    # --- arithmetic ---

    def _coerce(self, other) -> 'MPoly':
        if isinstance(other, MPoly):
            if other._variables != self._variables:
                raise DomainError(
                    f"Variable order mismatch: {self._variables} vs {other._variables}"
                )
            return other
        if _is_scalar(other):
            return MPoly.constant(self._variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            terms[exponent] = terms.get(exponent, Fraction(0)) + coeff
        return MPoly(self._variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self._variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                product[exponent] = product.get(exponent, Fraction(0)) + c1 * c2
        return MPoly(self._variables, product)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise DomainError(f"Exponent must be a nonnegative integer, got {power!r}")
        result = MPoly.constant(self._variables, 1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def scale(self, factor: Scalar) -> 'MPoly':
        factor = as_rat(factor)
        return MPoly(self._variables, {e: c * factor for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._variables == other._variables and self._terms == other._terms
        if _is_scalar(other):
            return self == MPoly.constant(self._variables, other)
        return NotImplemented

    def __hash__(self):
        return hash((self._variables, frozenset(self._terms.items())))

    # --- evaluation and transforms ---

    def evaluate(self, values: Union[Mapping[str, Scalar], Sequence[Scalar]]) -> Fraction:
        """Evaluate at a point given by name mapping or positional sequence."""
        if isinstance(values, Mapping):
            try:
                point = [as_rat(values[name]) for name in self._variables]
            except KeyError as e:
                raise DomainError(f"No value supplied for variable {e}") from e
        else:
            point = [as_rat(v) for v in values]
            if len(point) != len(self._variables):
                raise DomainError(
                    f"Expected {len(self._variables)} values, got {len(point)}"
                )
        total = Fraction(0)
        for exponent, coeff in self._terms.items():
            term = coeff
            for x, e in zip(point, exponent):
                if e:
                    term *= x ** e
            total += term
        return total

    def map_coefficients(self, fn) -> 'MPoly':
        return MPoly(self._variables, {e: fn(c) for e, c in self._terms.items()})

    def content(self) -> int:
        """Gcd of the (integer) coefficients, 0 for the zero polynomial."""
        if not self.has_integer_coefficients():
            raise DomainError("content() requires integer coefficients")
        g = 0
        for coeff in self._terms.values():
            g = gcd(g, int(coeff))
        return g

    def primitive_part(self) -> 'MPoly':
        """Divide out the content and make the leading coefficient positive."""
        if self.is_zero():
            return self
        g = self.content()
        lead = self.sorted_terms()[0][1]
        if lead < 0:
            g = -g
        return self.scale(Fraction(1, g))

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(
            self._terms.items(),
            key=lambda item: (sum(item[0]), item[0]),
            reverse=True,
        )

    def to_string(self) -> str:
        if not self._terms:
            return '0'
        parts = []
        for index, (exponent, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(self._variables, exponent):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f'{name}^{e}')
            monomial = '*'.join(factors)
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f'{magnitude}*{monomial}'
            if index == 0:
                parts.append(f'-{body}' if coeff < 0 else body)
            else:
                parts.append(f' - {body}' if coeff < 0 else f' + {body}')
        return ''.join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f'MPoly({self.to_string()!r}, variables={self._variables})'


@dataclass(frozen=True)
class UPoly:
    """Dense univariate polynomial over Q, lowest degree first."""
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [as_rat(c) for c in self.coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> 'UPoly':
        if degree < 0:
            raise DomainError(f"Negative monomial degree {degree}")
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, value: Scalar) -> 'UPoly':
        return cls((value,))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for zero."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, degree: int) -> Fraction:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        x = as_rat(x)
        result = Fraction(0)
        for coeff in reversed(self.coeffs):
            result = result * x + coeff
        return result

    def __add__(self, other: 'UPoly') -> 'UPoly':
        width = max(len(self.coeffs), len(other.coeffs))
        return UPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(width)))

    def __mul__(self, other: 'UPoly') -> 'UPoly':
        if not self.coeffs or not other.coeffs:
            return UPoly()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return UPoly(tuple(product))

    def scale(self, factor: Scalar) -> 'UPoly':
        factor = as_rat(factor)
        return UPoly(tuple(c * factor for c in self.coeffs))


def hk(k: int, vals: Sequence):
    """
    Complete homogeneous symmetric polynomial h_k of ``vals``.

    Works for rationals and for ``MPoly`` values alike. Returns 0 for k < 0
    and 1 for k = 0.

    Raises:
        DomainError: if ``vals`` is empty.
    """
    vals = list(vals)
    if not vals:
        raise DomainError("hk needs at least one value")
    if k < 0:
        return Fraction(0)
    # row[j] holds h_j of the values folded in so far
    row = [1] + [0] * k
    for x in vals:
        for j in range(1, k + 1):
            row[j] = row[j] + x * row[j - 1]
    result = row[k]
    return as_rat(result) if _is_scalar(result) else result


def divided_difference_sum(P: UPoly, vals: Sequence[Scalar]) -> Fraction:
    """
    Sum of P(d_l) / prod_{l' != l} (d_l - d_l') over the nodes ``vals``.

    Evaluated as sum_m a_m * h_{m-(c-1)}(vals), so repeated nodes are allowed.
    """
    vals = [as_rat(v) for v in vals]
    if not vals:
        raise DomainError("divided_difference_sum needs at least one node")
    shift = len(vals) - 1
    total = Fraction(0)
    for m, a in enumerate(P.coeffs):
        if a:
            total += a * hk(m - shift, vals)
    return total


def literal_divided_difference_sum(P: UPoly, vals: Sequence[Scalar]) -> Fraction:
    """Direct evaluation of the divided-difference sum; nodes must be distinct."""
    vals = [as_rat(v) for v in vals]
    if len(set(vals)) != len(vals):
        raise DomainError(f"Nodes must be pairwise distinct, got {vals}")
    total = Fraction(0)
    for l, x in enumerate(vals):
        denom = Fraction(1)
        for m, y in enumerate(vals):
            if m != l:
                denom *= x - y
        total += P(x) / denom
    return total


def alternating_binomial_sum(P: UPoly, N: int, X0: Scalar) -> Fraction:
    """sum_{i=0..N} (-1)^i C(N, i) P(X0 + i)."""
    if N < 0:
        raise DomainError(f"N must be nonnegative, got {N}")
    X0 = as_rat(X0)
    return sum(
        ((-1) ** i * comb(N, i) * P(X0 + i) for i in range(N + 1)),
        Fraction(0),
    )


def interpolate(points: Sequence[tuple]) -> Union[UPoly, tuple[UPoly, ...]]:
    """
    Lagrange interpolation through ``points``.

    Args:
        points: Pairs ``(x, y)`` with distinct x; y is a rational or a
            sequence of rationals of a common length.

    Returns:
        UPoly of degree < len(points), or one UPoly per component when y is a vector.

    Raises:
        DomainError: on an empty point list, repeated abscissae or ragged vectors.
    """
    if not points:
        raise DomainError("interpolate needs at least one point")
    xs = [as_rat(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DomainError(f"Repeated abscissae in {xs}")

    vector = not _is_scalar(points[0][1])
    if vector:
        ys = [tuple(as_rat(v) for v in y) for _, y in points]
        width = len(ys[0])
        if any(len(y) != width for y in ys):
            raise DomainError("Vector values must all have the same length")
    else:
        ys = [(as_rat(y),) for _, y in points]
        width = 1

    basis = []
    for j, xj in enumerate(xs):
        numer = UPoly.constant(1)
        denom = Fraction(1)
        for m, xm in enumerate(xs):
            if m != j:
                numer = numer * UPoly((-xm, 1))
                denom *= xj - xm
        basis.append(numer.scale(1 / denom))

    components = []
    for slot in range(width):
        poly = UPoly()
        for y, b in zip(ys, basis):
            if y[slot]:
                poly = poly + b.scale(y[slot])
        components.append(poly)
    return tuple(components) if vector else components[0]
