"""
The Cayley polytope Q(c, N, (d_i)) and its faces.

Points live in Z^{c+N+1} with coordinates (alpha_1..alpha_c; beta_0..beta_N)
and satisfy sum_i d_i alpha_i = sum_j beta_j. The polytope is the level-1
slice (sum_i alpha_i = 1) of the nonnegative cone; its faces are exactly the
Gamma_{I,J} cut out by alpha_i = 0 (i not in I) and beta_j = 0 (j not in J).

Volumes and moments use the normalization in which the unit lattice simplex
has measure 1.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Iterator, Sequence

from sympy import isprime

from discdeg.errors import DomainError, FaceDuplication, InvariantViolation
from discdeg.exact import UPoly, divided_difference_sum, hk, interpolate

logger = logging.getLogger(__name__)

MAX_CHARACTERISTIC = 2 ** 31


@dataclass(frozen=True)
class Profile:
    """
    A problem instance: c equations of degrees d_1..d_c in P^N over a field
    of characteristic p.
    """
    N: int
    degrees: tuple[int, ...]
    p: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'degrees', tuple(int(d) for d in self.degrees))
        if self.N < 0:
            raise DomainError(f"N must be >= 0, got {self.N}")
        if not 1 <= self.c <= self.N + 1:
            raise DomainError(
                f"Codimension must satisfy 1 <= c <= N+1, got c={self.c}, N={self.N}"
            )
        if any(d < 1 for d in self.degrees):
            raise DomainError(f"All degrees must be >= 1, got {list(self.degrees)}")
        if self.p != 0 and not (0 < self.p < MAX_CHARACTERISTIC and isprime(self.p)):
            raise DomainError(
                f"Characteristic must be 0 or a prime < 2^31, got {self.p}"
            )

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def n(self) -> int:
        """Dimension of the complete intersection, N - c."""
        return self.N - self.c

    @property
    def k(self) -> int:
        """Dimension of the polytope, c + N - 1."""
        return self.c + self.N - 1

    @property
    def e(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    @property
    def width(self) -> int:
        """Number of ambient coordinates, c + N + 1."""
        return self.c + self.N + 1

    def permuted(self, order: Sequence[int]) -> 'Profile':
        """Profile whose i-th degree is the ``order[i]``-th (0-based) of this one."""
        if sorted(order) != list(range(self.c)):
            raise DomainError(f"{list(order)} is not a permutation of range({self.c})")
        return Profile(self.N, tuple(self.degrees[i] for i in order), self.p)

    def describe(self) -> str:
        return f"N={self.N} d={','.join(map(str, self.degrees))} p={self.p}"


@dataclass(frozen=True, order=True)
class Face:
    """
    The face Gamma_{I,J}. ``I`` holds 1-based equation indices, ``J`` 0-based
    variable indices, both sorted and nonempty.
    """
    I: tuple[int, ...]
    J: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'I', tuple(sorted(self.I)))
        object.__setattr__(self, 'J', tuple(sorted(self.J)))
        if not self.I or not self.J:
            raise DomainError(f"Face supports must be nonempty, got I={self.I}, J={self.J}")

    @property
    def dim(self) -> int:
        return len(self.I) + len(self.J) - 2

    def codim(self, profile: Profile) -> int:
        return profile.k - self.dim

    def sub_degrees(self, profile: Profile) -> tuple[int, ...]:
        return tuple(profile.degrees[i - 1] for i in self.I)

    def vertices(self, profile: Profile) -> frozenset['LatticeVector']:
        return frozenset(
            LatticeVector.vertex(profile, i, j) for i in self.I for j in self.J
        )

    def is_full(self, profile: Profile) -> bool:
        return len(self.I) == profile.c and len(self.J) == profile.N + 1


@dataclass(frozen=True, order=True)
class LatticeVector:
    """An integer point (alpha; beta) of the character lattice."""
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    @classmethod
    def vertex(cls, profile: Profile, i: int, j: int) -> 'LatticeVector':
        """The monomial Y_i X_j^{d_i}, a vertex of Q."""
        alpha = tuple(int(t == i) for t in range(1, profile.c + 1))
        beta = tuple(profile.degrees[i - 1] if t == j else 0 for t in range(profile.N + 1))
        return cls(alpha, beta)

    @property
    def level(self) -> int:
        return sum(self.alpha)

    def in_lattice(self, degrees: Sequence[int]) -> bool:
        return sum(d * a for d, a in zip(degrees, self.alpha)) == sum(self.beta)

    def as_tuple(self) -> tuple[int, ...]:
        return self.alpha + self.beta


def _subsets(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for size in range(1, len(items) + 1):
        yield from combinations(items, size)


def enumerate_faces(profile: Profile) -> list[Face]:
    """All faces Gamma_{I,J}, ordered by (|I|, I) then (|J|, J)."""
    return [
        Face(I, J)
        for I in _subsets(range(1, profile.c + 1))
        for J in _subsets(range(profile.N + 1))
    ]


def check_face_distinctness(profile: Profile) -> None:
    """
    Check that distinct supports give distinct vertex sets.

    Raises:
        FaceDuplication: if two faces share a vertex set.
    """
    seen: dict[frozenset, Face] = {}
    for face in enumerate_faces(profile):
        vertices = face.vertices(profile)
        if vertices in seen:
            logger.error(
                f"Faces {seen[vertices]} and {face} share a vertex set for {profile.describe()}"
            )
            raise FaceDuplication(f"{seen[vertices]} and {face} coincide")
        seen[vertices] = face


def compositions(total: int, parts: int, positive: bool = False) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` nonnegative (or positive) integers summing to ``total``, lexicographic."""
    low = 1 if positive else 0
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= low:
            yield (total,)
        return
    for head in range(low, total - low * (parts - 1) + 1):
        for tail in compositions(total - head, parts - 1, positive):
            yield (head,) + tail


def _embed(values: Sequence[int], support: Sequence[int], offset: int, width: int) -> tuple[int, ...]:
    full = [0] * width
    for slot, value in zip(support, values):
        full[slot - offset] = value
    return tuple(full)


def lattice_points(face: Face, profile: Profile, level: int, interior: bool = False) -> list[LatticeVector]:
    """
    Lattice points of the level-``level`` slice of the cone over ``face``.

    With ``interior`` every coordinate indexed by I and J must be positive.
    Points come out in lexicographic order on (alpha, beta).

    Args:
        face: Face whose cone is sliced.
        profile: Profile fixing c, N and the degrees.
        level: Sum of the alpha coordinates, l >= 0.
        interior: Keep only points of the relative interior.

    Returns:
        list[LatticeVector]: the points, alpha and beta embedded in the full coordinates.

    Raises:
        DomainError: if ``level`` is negative.
    """
    if level < 0:
        raise DomainError(f"Level must be >= 0, got {level}")
    degrees = face.sub_degrees(profile)
    points = []
    for alpha in compositions(level, len(face.I), interior):
        weight = sum(d * a for d, a in zip(degrees, alpha))
        full_alpha = _embed(alpha, face.I, 1, profile.c)
        for beta in compositions(weight, len(face.J), interior):
            points.append(LatticeVector(full_alpha, _embed(beta, face.J, 0, profile.N + 1)))
    return points


def smallest_containing_face(u: LatticeVector) -> Face:
    """The face whose relative interior cone contains ``u``: the supports of alpha and beta."""
    if any(x < 0 for x in u.as_tuple()):
        raise DomainError(f"{u} has a negative coordinate and is outside the cone")
    I = tuple(i + 1 for i, a in enumerate(u.alpha) if a)
    J = tuple(j for j, b in enumerate(u.beta) if b)
    if not I and not J:
        raise DomainError("The zero vector lies in no proper face")
    if not I or not J:
        raise DomainError(f"{u} is not a point of the cone over Q")
    return Face(I, J)


def normalized_volume(face: Face, profile: Profile) -> Fraction:
    """Normalized volume of ``face``: h_{|J|-1} of the degrees indexed by I."""
    top = UPoly.monomial(face.dim)
    return divided_difference_sum(top, face.sub_degrees(profile))


def _alpha_moment(d_i: int, degrees: Sequence[int], span: int) -> Fraction:
    # (d_i^M - X^M)/(d_i - X) = sum_{a+b=M-1} d_i^a X^b, M = span
    P = UPoly(tuple(Fraction(d_i) ** (span - 1 - b) for b in range(span)))
    return divided_difference_sum(P, degrees) / span


def moment(face: Face, profile: Profile) -> tuple[Fraction, ...]:
    """
    Integral of u over ``face`` against the normalized measure.

    The beta coordinates inside J share the value (1/|J|) sum_i d_i int(alpha_i).

    Args:
        face: Face to integrate over.
        profile: Profile fixing c, N and the degrees.

    Returns:
        tuple[Fraction, ...]: length c+N+1, zero outside the support of ``face``.
    """
    degrees = face.sub_degrees(profile)
    span = face.dim + 1
    result = [Fraction(0)] * profile.width
    weighted = Fraction(0)
    for i, d_i in zip(face.I, degrees):
        value = _alpha_moment(d_i, degrees, span)
        result[i - 1] = value
        weighted += d_i * value
    share = weighted / len(face.J)
    for j in face.J:
        result[profile.c + j] = share
    return tuple(result)


def interior_weighted_sum(face: Face, profile: Profile, level: int) -> tuple[int, tuple[int, ...]]:
    """
    Count and vector sum of the interior lattice points at ``level``.

    Alpha compositions are enumerated; the beta compositions of each weight s
    into |J| positive parts are counted in closed form: C(s-1, |J|-1) of them,
    each beta_j summing to C(s, |J|) over that set.
    """
    if level < 0:
        raise DomainError(f"Level must be >= 0, got {level}")
    degrees = face.sub_degrees(profile)
    width_j = len(face.J)
    count = 0
    sums = [0] * profile.width
    for alpha in compositions(level, len(face.I), positive=True):
        s = sum(d * a for d, a in zip(degrees, alpha))
        n_beta = comb(s - 1, width_j - 1)
        if not n_beta:
            continue
        count += n_beta
        for i, a in zip(face.I, alpha):
            sums[i - 1] += a * n_beta
        per_beta = comb(s, width_j)
        for j in face.J:
            sums[profile.c + j] += per_beta
    return count, tuple(sums)


def ehrhart_count(face: Face, profile: Profile, level: int, interior: bool = False) -> int:
    """Number of lattice points in the level-``level`` slice of the cone over ``face``."""
    if interior:
        return interior_weighted_sum(face, profile, level)[0]
    if level < 0:
        raise DomainError(f"Level must be >= 0, got {level}")
    degrees = face.sub_degrees(profile)
    width_j = len(face.J)
    return sum(
        comb(sum(d * a for d, a in zip(degrees, alpha)) + width_j - 1, width_j - 1)
        for alpha in compositions(level, len(face.I))
    )


def ehrhart_fit(face: Face, profile: Profile) -> UPoly:
    """
    Ehrhart polynomial of ``face`` fitted at levels 0..dim+1.

    Raises:
        InvariantViolation: if the fit exceeds degree dim.
    """
    points = [(l, ehrhart_count(face, profile, l)) for l in range(face.dim + 2)]
    poly = interpolate(points)
    if poly.degree > face.dim:
        raise InvariantViolation(f"Ehrhart fit of {face} has degree {poly.degree} > {face.dim}")
    return poly


def weighted_sum_fit(face: Face, profile: Profile) -> tuple[UPoly, ...]:
    """
    Fit l -> sum of interior lattice points at level l, one polynomial per coordinate.

    Nodes are l = 0..dim+2, one more than the degree bound dim+1 requires.

    Raises:
        InvariantViolation: if some component exceeds degree dim+1.
    """
    points = [
        (l, interior_weighted_sum(face, profile, l)[1]) for l in range(face.dim + 3)
    ]
    fit = interpolate(points)
    for slot, poly in enumerate(fit):
        if poly.degree > face.dim + 1:
            raise InvariantViolation(
                f"Weighted sum of {face} coordinate {slot} has degree {poly.degree} > {face.dim + 1}"
            )
    return fit


def fitted_moment(face: Face, profile: Profile) -> tuple[Fraction, ...]:
    """dim! times the l^{dim+1} coefficients of ``weighted_sum_fit``."""
    scale = factorial(face.dim)
    return tuple(poly.coefficient(face.dim + 1) * scale for poly in weighted_sum_fit(face, profile))


def full_face(profile: Profile) -> Face:
    return Face(tuple(range(1, profile.c + 1)), tuple(range(profile.N + 1)))


def volume_from_points(face: Face, profile: Profile) -> Fraction:
    """dim! times the leading Ehrhart coefficient."""
    return ehrhart_fit(face, profile).coefficient(face.dim) * factorial(face.dim)


def symmetric_volume(degrees: Sequence[int], N: int) -> Fraction:
    """Volume of Q(c, N, degrees) written as h_N(degrees)."""
    return hk(N, [Fraction(d) for d in degrees])
