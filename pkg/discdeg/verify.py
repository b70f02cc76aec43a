"""
Cross-verification battery behind ``discdeg verify``.

Every profile with k = c+N-1 <= max_k, sorted degrees <= max_degree and
p in {0, 2, 3} is run through the closed forms, the face-sum character and
the stabilized lattice oracle; the classical special cases, the algebraic
identities and (optionally) the Sylvester oracle are checked once per run.
Results come out as ``CheckResult`` records in a fixed order.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial
from typing import Callable, Iterator

from discdeg.character import degrees_from_xi, stabilized_xi_oracle, xi_closed
from discdeg.errors import DiscdegError
from discdeg.exact import UPoly, alternating_binomial_sum, literal_divided_difference_sum
from discdeg.formulas import (
    boole_degrees,
    codim2_degrees,
    deg_i_closed,
    degree_report,
    equal_degree_degrees,
    mu,
    petitcalcul_identity,
    resultant_degrees,
)
from discdeg.oracle_algebraic import (
    MAX_FORM_DEGREE,
    SymbolicForm,
    binary_discriminant,
    is_perfect_square_mod2,
    partial_degrees,
    resultant,
    sylvester_resultant,
)
from discdeg.polytope import (
    Profile,
    enumerate_faces,
    fitted_moment,
    full_face,
    moment,
    normalized_volume,
    symmetric_volume,
    volume_from_points,
)
from discdeg.schemas import CheckResult, VerifyRequest

logger = logging.getLogger(__name__)

CHARACTERISTICS = (0, 2, 3)
RANDOM_SAMPLES = 100


def _check(name: str, profile, expected, actual) -> CheckResult:
    return CheckResult(
        check=name,
        profile=profile.describe() if isinstance(profile, Profile) else profile,
        passed=expected == actual,
        expected=str(expected),
        actual=str(actual),
    )


def iter_profiles(max_k: int, max_degree: int) -> Iterator[Profile]:
    """Profiles in (k, c, degrees, p) order; degrees are nondecreasing."""
    for k in range(max_k + 1):
        for c in range(1, k + 2):
            N = k - c + 1
            if c > N + 1:
                break
            for degrees in combinations_with_replacement(range(1, max_degree + 1), c):
                for p in CHARACTERISTICS:
                    yield Profile(N, degrees, p)


def _orders(c: int) -> list[tuple[int, ...]]:
    if c <= 3:
        return [order for order in permutations(range(c)) if order != tuple(range(c))]
    return [tuple(reversed(range(c))), tuple(range(1, c)) + (0,)]


def check_profile(profile: Profile) -> list[CheckResult]:
    """All per-profile checks; a raised library error becomes a failed check."""
    try:
        return _profile_checks(profile)
    except (DiscdegError, ValueError) as e:
        logger.error(f"Check aborted for {profile.describe()}: {e}")
        return [_check('profile_error', profile, 'no error', f'{type(e).__name__}: {e}')]


def _profile_checks(profile: Profile) -> list[CheckResult]:
    results = []
    report = degree_report(profile)
    xi = xi_closed(profile)
    from_xi = degrees_from_xi(xi, profile)
    results.append(_check('closed_vs_xi', profile, report.to_dict(), from_xi.to_dict()))

    oracle = stabilized_xi_oracle(profile)
    results.append(_check('xi_vs_oracle', profile, xi.as_tuple(), oracle.as_tuple()))

    # (N+1) beta = sum d_i alpha_i, before and after division by mu
    raw_beta = xi.beta[0]
    weighted_raw = sum(d * a for d, a in zip(profile.degrees, xi.alpha))
    results.append(_check('degvar_raw', profile, (profile.N + 1) * raw_beta, weighted_raw))
    weighted = sum(d * g for d, g in zip(profile.degrees, report.deg_i))
    results.append(_check('degvar', profile, (profile.N + 1) * report.deg_var, weighted))
    results.append(_check('deg', profile, sum(report.deg_i), report.deg))

    if profile.p == 2 and profile.n % 2 == 0:
        odd = [value for value in xi.as_tuple() if value % 2]
        results.append(_check('char2_even', profile, [], odd))
        results.append(_check('char2_mu', profile, 2, mu(profile)))

    for order in _orders(profile.c):
        permuted = profile.permuted(order)
        label = ''.join(map(str, order))
        expected = [deg_i_closed(profile, order[i] + 1) for i in range(profile.c)]
        actual = [deg_i_closed(permuted, i + 1) for i in range(profile.c)]
        results.append(_check(f'permutation_{label}', profile, expected, actual))
        permuted_xi = xi_closed(permuted)
        expected_xi = (tuple(xi.alpha[i] for i in order), xi.beta)
        actual_xi = (permuted_xi.alpha, permuted_xi.beta)
        results.append(_check(f'xi_permutation_{label}', profile, expected_xi, actual_xi))

    if profile.p == 0:
        results.extend(_geometry_checks(profile))
    return results


def _geometry_checks(profile: Profile) -> list[CheckResult]:
    results = []
    for face in enumerate_faces(profile):
        label = f'{profile.describe()} I={face.I} J={face.J}'
        results.append(_check('moment_fit', label, moment(face, profile), fitted_moment(face, profile)))
    cone = full_face(profile)
    volume = normalized_volume(cone, profile)
    results.append(_check('volume_points', profile, volume, volume_from_points(cone, profile)))
    results.append(_check('volume_symmetric', profile, volume, symmetric_volume(profile.degrees, profile.N)))
    alpha_total = sum(moment(cone, profile)[:profile.c], Fraction(0))
    results.append(_check('moment_alpha_sum', profile, volume, alpha_total))
    return results


def special_case_checks(max_k: int, max_degree: int) -> list[CheckResult]:
    """Boole, resultant, equal-degree and codimension-2 closed forms against the general one."""
    results = []
    for N in range(1, max_k + 1):
        for d in range(2, max_degree + 1):
            profile = Profile(N, (d,))
            report = degree_report(profile)
            results.append(_check('boole', profile, boole_degrees(N, d), (report.deg, report.deg_var)))
            xi = xi_closed(profile)
            results.append(_check('boole_xi', profile, boole_degrees(N, d), (xi.alpha[0], xi.beta[0])))
    for N in range(0, max_k // 2 + 1):
        for degrees in combinations_with_replacement(range(1, min(3, max_degree) + 1), N + 1):
            profile = Profile(N, degrees)
            report = degree_report(profile)
            results.append(_check('resultant', profile, resultant_degrees(degrees), (report.deg_i, report.deg_var)))
    for k in range(max_k + 1):
        for c in range(1, k + 2):
            N = k - c + 1
            if c > N + 1:
                break
            for d in range(1, max_degree + 1):
                profile = Profile(N, (d,) * c)
                report = degree_report(profile)
                results.append(_check(
                    'equal_degrees', profile,
                    equal_degree_degrees(c, N, d), (report.deg_i[0], report.deg_var),
                ))
    for N in range(1, max_k):
        for d1 in range(1, max_degree + 1):
            for d2 in range(1, max_degree + 1):
                profile = Profile(N, (d1, d2))
                report = degree_report(profile)
                results.append(_check(
                    'codim2', profile,
                    codim2_degrees(N, d1, d2), (report.deg_i[0], report.deg_i[1], report.deg_var),
                ))
    char2 = Profile(1, (2,), 2)
    report = degree_report(char2)
    results.append(_check('char2_binary', char2, (1, 'square_of_irreducible'), (report.deg, report.mod_p_verdict)))
    return results


def _random_poly(rng: random.Random, degree: int) -> UPoly:
    return UPoly(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1)))


def _distinct_values(rng: random.Random, count: int) -> list[Fraction]:
    values: list[Fraction] = []
    while len(values) < count:
        value = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
        if value not in values:
            values.append(value)
    return values


def identity_checks(seed: int) -> list[CheckResult]:
    """Seeded random instances of the alternating-sum, vanishing and partial-fraction identities."""
    rng = random.Random(seed)
    results = []
    for trial in range(RANDOM_SAMPLES):
        N = rng.randint(0, 8)
        P = _random_poly(rng, rng.randint(0, N))
        expected = (-1) ** N * factorial(N) * P.coefficient(N)
        values = {alternating_binomial_sum(P, N, x0) for x0 in _distinct_values(rng, 3)}
        results.append(_check('alternating_sum', f'trial={trial} N={N}', {expected}, values))
    for c in range(2, 6):
        for trial in range(RANDOM_SAMPLES // 10):
            P = _random_poly(rng, c - 2)
            R = literal_divided_difference_sum(P, _distinct_values(rng, c))
            results.append(_check('divided_difference_vanishes', f'c={c} trial={trial}', 0, R))
    for trial in range(RANDOM_SAMPLES):
        c, N = rng.randint(1, 4), rng.randint(0, 6)
        sample = _distinct_values(rng, c)
        results.append(_check('partial_fractions', f'c={c} N={N} trial={trial}', 0, petitcalcul_identity(c, N, sample)))
    return results


def algebraic_checks(max_degree: int) -> list[CheckResult]:
    """Sylvester resultants and binary discriminants up to the symbolic cap."""
    results = []
    top = min(max_degree, MAX_FORM_DEGREE)
    for d1 in range(1, top + 1):
        for d2 in range(1, top + 1):
            res = sylvester_resultant(d1, d2)
            groups = [SymbolicForm(d1, 'a').names, SymbolicForm(d2, 'b').names]
            expected, _ = resultant_degrees((d1, d2))
            results.append(_check('sylvester_degrees', f'd1={d1} d2={d2}', expected, partial_degrees(res, groups)))
            if d1 <= 3 and d2 <= 3:
                first, second = SymbolicForm(d1, 'a'), SymbolicForm(d2, 'b')
                ring = first.names + second.names
                swapped = resultant(second.coefficients(ring), first.coefficients(ring))
                sign = (-1) ** (d1 * d2)
                results.append(_check('sylvester_swap', f'd1={d1} d2={d2}', res.scale(sign), swapped))
    for d in range(2, top + 1):
        disc = binary_discriminant(d)
        profile = Profile(1, (d,), 2)
        results.append(_check('discriminant_degree', profile, boole_degrees(1, d)[0], disc.total_degree()))
        results.append(_check('discriminant_square_mod2', profile, True, is_perfect_square_mod2(disc)))
    return results


class VerificationRunner:
    """
    Runs the whole battery for one ``VerifyRequest``.

    Per-profile checks fan out over a process pool when ``workers > 1``;
    ``map`` keeps the profile order, so the output is identical either way.
    """

    def __init__(self, request: VerifyRequest):
        """
        Initialize the runner.

        Args:
            request: Validated bounds, worker count and seed.
        """
        self.request = request
        self.passed_count = 0
        self.failed_count = 0

    def _profile_results(self) -> Iterator[list[CheckResult]]:
        profiles = list(iter_profiles(self.request.max_k, self.request.max_degree))
        logger.info(f"Checking {len(profiles)} profiles with {self.request.workers} worker(s)")
        if self.request.workers > 1:
            with ProcessPoolExecutor(max_workers=self.request.workers) as pool:
                yield from pool.map(check_profile, profiles)
        else:
            yield from map(check_profile, profiles)

    def _suites(self) -> Iterator[Callable[[], list[CheckResult]]]:
        yield lambda: special_case_checks(self.request.max_k, self.request.max_degree)
        yield lambda: identity_checks(self.request.seed)
        if self.request.with_algebraic_oracle:
            yield lambda: algebraic_checks(self.request.max_degree)

    def results(self) -> Iterator[CheckResult]:
        """Yield every check result in deterministic order, updating the counters."""
        for batch in self._profile_results():
            yield from self._count(batch)
        for suite in self._suites():
            yield from self._count(suite())
        logger.info(f"✓ Verification finished: {self.passed_count} passed, {self.failed_count} failed")

    def _count(self, batch: list[CheckResult]) -> Iterator[CheckResult]:
        for result in batch:
            if result.passed:
                self.passed_count += 1
            else:
                self.failed_count += 1
                logger.warning(f"Check {result.check} failed for {result.profile}")
            yield result
