"""
Closed-form homogeneity degrees of the discriminant.

For a profile (N; d_1..d_c; p) with e_i = d_i - 1:

    deg_i   = (1/mu) * prod_{j != i} d_j * sum_{a=0..N} e_i^a * h_{N-a-c+1}(e)
    deg_var = (1/mu) * d_1...d_c * h_{N-c+1}(e)
    deg     = sum_i deg_i

These are the divided-difference formulas rewritten through complete
homogeneous symmetric polynomials, which makes repeated degrees exact.
mu is 2 when p = 2 and n = N - c is even, else 1.
"""
import logging
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from discdeg.errors import DomainError, TheoremFalsified
from discdeg.exact import MPoly, Rat, UPoly, hk, literal_divided_difference_sum
from discdeg.polytope import Profile
from discdeg.schemas import DegreeReport, Verdict

logger = logging.getLogger(__name__)


def mu(profile: Profile) -> int:
    """Generic degree of the contact map: 2 iff p = 2 and n is even."""
    return 2 if profile.p == 2 and profile.n % 2 == 0 else 1


def is_defective(profile: Profile) -> bool:
    """True iff every d_i = 1 and c < N+1; then Delta = 1."""
    return all(d == 1 for d in profile.degrees) and profile.c < profile.N + 1


def _divide_by_mu(value: int, profile: Profile, label: str) -> int:
    m = mu(profile)
    if value % m:
        logger.critical(f"{label}={value} is not divisible by mu={m} for {profile.describe()}")
        raise TheoremFalsified(f"{label}={value} is not divisible by mu={m} for {profile.describe()}")
    return value // m


def _as_int(value: Fraction, label: str) -> int:
    if value.denominator != 1:
        raise TheoremFalsified(f"{label} evaluated to the non-integer {value}")
    return int(value)


def raw_deg_i(profile: Profile, i: int) -> int:
    """deg_i before division by mu (i is 1-based)."""
    if not 1 <= i <= profile.c:
        raise DomainError(f"Equation index {i} outside 1..{profile.c}")
    e = [Fraction(x) for x in profile.e]
    e_i = e[i - 1]
    others = prod(d for j, d in enumerate(profile.degrees, start=1) if j != i)
    total = sum(
        (e_i ** a * hk(profile.N - a - profile.c + 1, e) for a in range(profile.N + 1)),
        Fraction(0),
    )
    return _as_int(others * total, f"deg_{i}")


def raw_deg_var(profile: Profile) -> int:
    """deg_var before division by mu."""
    e = [Fraction(x) for x in profile.e]
    return _as_int(prod(profile.degrees) * hk(profile.N - profile.c + 1, e), "deg_var")


def deg_i_closed(profile: Profile, i: int) -> int:
    """
    Partial degree of Delta in the coefficients of the i-th equation.

    Args:
        profile: Profile to evaluate.
        i: 1-based index of the equation.

    Returns:
        int: the closed form divided by mu, 0 for a defective profile.

    Raises:
        DomainError: if i is outside 1..c.
        TheoremFalsified: if mu does not divide the raw value.
    """
    if is_defective(profile):
        return 0
    return _divide_by_mu(raw_deg_i(profile, i), profile, f"deg_{i}")


def deg_var_closed(profile: Profile) -> int:
    """Weight of Delta under the action of GL_{N+1} through det."""
    if is_defective(profile):
        return 0
    return _divide_by_mu(raw_deg_var(profile), profile, "deg_var")


def total_degree_closed(profile: Profile) -> int:
    return sum(deg_i_closed(profile, i) for i in range(1, profile.c + 1))


def mod_p_report(profile: Profile, p: int) -> Verdict:
    """
    Shape of Delta reduced modulo p.

    p = 0 stands for Delta itself over Q. The verdict restates the theorem;
    no factorization is performed.

    Args:
        profile: Profile whose discriminant is reduced.
        p: 0 or a prime.

    Returns:
        Verdict: 'unit', 'square_of_irreducible' or 'irreducible'.
    """
    if is_defective(profile):
        return 'unit'
    if p == 2 and profile.n % 2 == 0:
        return 'square_of_irreducible'
    return 'irreducible'


def degree_report(profile: Profile) -> DegreeReport:
    """Full closed-form report for ``profile``."""
    deg_i = [deg_i_closed(profile, i) for i in range(1, profile.c + 1)]
    return DegreeReport(
        N=profile.N,
        degrees=list(profile.degrees),
        p=profile.p,
        mu=mu(profile),
        defective=is_defective(profile),
        deg=sum(deg_i),
        deg_i=deg_i,
        deg_var=deg_var_closed(profile),
        mod_p_verdict=mod_p_report(profile, profile.p),
    )


def degree_variables(c: int) -> tuple[str, ...]:
    return tuple(f'd{i}' for i in range(1, c + 1))


def symbolic_degrees(c: int, N: int) -> tuple[list[MPoly], MPoly]:
    """
    deg_1..deg_c and deg_var as integer polynomials in d1..dc (mu = 1).

    Args:
        c: Number of equations.
        N: Dimension of the projective space.

    Returns:
        tuple: the list of deg_i polynomials and the deg_var polynomial, over d1..dc.

    Raises:
        DomainError: unless 1 <= c <= N+1.
    """
    if not 1 <= c <= N + 1:
        raise DomainError(f"Codimension must satisfy 1 <= c <= N+1, got c={c}, N={N}")
    names = degree_variables(c)
    d = MPoly.gens(names)
    e = [x - 1 for x in d]
    one = MPoly.constant(names, 1)

    def _poly(value) -> MPoly:
        return value if isinstance(value, MPoly) else one.scale(value)

    deg_i = []
    for i in range(c):
        others = one
        for j in range(c):
            if j != i:
                others = others * d[j]
        total = MPoly.zero(names)
        for a in range(N + 1):
            total = total + e[i] ** a * _poly(hk(N - a - c + 1, e))
        deg_i.append(others * total)
    product = one
    for x in d:
        product = product * x
    deg_var = product * _poly(hk(N - c + 1, e))
    return deg_i, deg_var


def petitcalcul_identity(c: int, N: int, sample: Sequence[Rat]) -> Fraction:
    """
    sum_l sum_{i != l} (e_i^{N+1} - e_l^{N+1}) / ((e_i - e_l) prod_{l' != l}(d_l - d_l'))
    evaluated literally at distinct degrees ``sample``; the identity says it is 0.
    """
    sample = [Fraction(x) for x in sample]
    if len(sample) != c:
        raise DomainError(f"Expected {c} sample values, got {len(sample)}")
    if len(set(sample)) != c:
        raise DomainError(f"Sample values must be pairwise distinct, got {sample}")
    e = [x - 1 for x in sample]
    total = Fraction(0)
    for l in range(c):
        denom = prod((sample[l] - sample[m] for m in range(c) if m != l), start=Fraction(1))
        for i in range(c):
            if i != l:
                total += (e[i] ** (N + 1) - e[l] ** (N + 1)) / (e[i] - e[l]) / denom
    return total


def literal_deg_var(profile: Profile) -> Fraction:
    """deg_var evaluated with the raw divided-difference sum (distinct degrees only, mu = 1)."""
    nodes = [Fraction(x) for x in profile.e]
    return prod(profile.degrees) * literal_divided_difference_sum(UPoly.monomial(profile.N), nodes)


# --- classical special cases (mu = 1) ---

def boole_degrees(N: int, d: int) -> tuple[int, int]:
    """Hypersurfaces: (deg_1, deg_var) = ((N+1)(d-1)^N, d(d-1)^N)."""
    return (N + 1) * (d - 1) ** N, d * (d - 1) ** N


def resultant_degrees(degrees: Sequence[int]) -> tuple[list[int], int]:
    """c = N+1: deg_i = prod_{j != i} d_j, deg_var = prod d_j."""
    total = prod(degrees)
    return [total // d for d in degrees], total


def equal_degree_degrees(c: int, N: int, d: int) -> tuple[int, int]:
    """d_1 = ... = d_c = d: (deg_i, deg_var)."""
    tail = (d - 1) ** (N - c + 1)
    return comb(N + 1, c) * d ** (c - 1) * tail, comb(N, c - 1) * d ** c * tail


def codim2_degrees(N: int, d1: int, d2: int) -> tuple[int, int, int]:
    """
    c = 2: deg_1 = d2 * sum_{s<N} (s+1) e1^s e2^{N-1-s}, symmetrically deg_2,
    and deg_var = d1 d2 * sum_{s<N} e1^s e2^{N-1-s}.
    """
    e1, e2 = d1 - 1, d2 - 1
    deg_1 = d2 * sum((s + 1) * e1 ** s * e2 ** (N - 1 - s) for s in range(N))
    deg_2 = d1 * sum((s + 1) * e2 ** s * e1 ** (N - 1 - s) for s in range(N))
    deg_var = d1 * d2 * sum(e1 ** s * e2 ** (N - 1 - s) for s in range(N))
    return deg_1, deg_2, deg_var
