"""
Tests for the closed-form degree formulas.

Covers mu, defectivity, the classical special cases, the symbolic
polynomials and the report schema.
"""
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from discdeg.errors import DomainError
from discdeg.formulas import (
    boole_degrees,
    codim2_degrees,
    deg_i_closed,
    deg_var_closed,
    degree_report,
    equal_degree_degrees,
    is_defective,
    literal_deg_var,
    mod_p_report,
    mu,
    petitcalcul_identity,
    raw_deg_i,
    raw_deg_var,
    resultant_degrees,
    symbolic_degrees,
    total_degree_closed,
)
from discdeg.polytope import Profile
from discdeg.schemas import DegreeReport


class TestMu:
    """Tests for the contact-map degree."""

    @pytest.mark.parametrize("N,c,p,expected", [
        (3, 1, 0, 1),
        (3, 1, 2, 2),
        (2, 1, 2, 1),
        (3, 2, 3, 1),
        (1, 1, 2, 2),
        (1, 2, 2, 1),
    ])
    def test_values(self, N, c, p, expected):
        """Test mu = 2 exactly when p = 2 and N - c is even."""
        assert mu(Profile(N, (2,) * c, p)) == expected


class TestDefectivity:
    """Tests for the defectivity criterion."""

    def test_hyperplanes(self, defective_pair):
        """Test that linear equations with c < N+1 are defective."""
        assert is_defective(defective_pair)

    def test_determinant_is_not_defective(self, two_lines):
        """Test the determinant case c = N+1."""
        assert not is_defective(two_lines)

    def test_any_higher_degree(self):
        """Test that one equation of degree >= 2 suffices."""
        assert not is_defective(Profile(3, (1, 2)))

    def test_defective_degrees_vanish(self, defective_pair):
        """Test the short-circuit to zero."""
        assert deg_i_closed(defective_pair, 1) == 0
        assert deg_var_closed(defective_pair) == 0


class TestClosedForms:
    """Tests for deg_i and deg_var against hand-checked values."""

    def test_cubic_in_p4(self):
        """Test a cubic hypersurface in P^4."""
        profile = Profile(4, (3,))
        assert deg_i_closed(profile, 1) == 80
        assert deg_var_closed(profile) == 48

    def test_quadric_and_cubic(self, mixed_pair):
        """Test deg_var = d1 d2 (e2^3 - e1^3)/(e2 - e1) = 42."""
        assert deg_var_closed(mixed_pair) == 42
        assert literal_deg_var(mixed_pair) == 42

    def test_binary_quadric_in_characteristic_two(self, conic_char2):
        """Test that mod 2 the discriminant b^2 - 4ac has degree one."""
        assert deg_var_closed(conic_char2) == 1
        assert total_degree_closed(conic_char2) == 1

    def test_index_out_of_range(self, conic):
        """Test that equation indices are 1-based and bounded."""
        with pytest.raises(DomainError):
            deg_i_closed(conic, 2)

    @pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_boole(self, N, d):
        """Test hypersurfaces against (N+1)(d-1)^N and d(d-1)^N."""
        profile = Profile(N, (d,))
        assert (deg_i_closed(profile, 1), deg_var_closed(profile)) == boole_degrees(N, d)

    @pytest.mark.parametrize("degrees", [(2,), (1, 3), (2, 2, 3), (3, 1, 2, 2), (2, 3, 1, 1, 2)])
    def test_resultant(self, degrees):
        """Test c = N+1 against prod_{j != i} d_j and prod d_j."""
        profile = Profile(len(degrees) - 1, degrees)
        deg_i, deg_var = resultant_degrees(degrees)
        assert [deg_i_closed(profile, i) for i in range(1, profile.c + 1)] == deg_i
        assert deg_var_closed(profile) == deg_var

    @pytest.mark.parametrize("c,N", [(1, 1), (2, 2), (2, 3), (3, 3), (3, 4), (5, 4)])
    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_equal_degrees(self, c, N, d):
        """Test d_1 = ... = d_c against the binomial formulas."""
        profile = Profile(N, (d,) * c)
        deg_i, deg_var = equal_degree_degrees(c, N, d)
        assert all(deg_i_closed(profile, i) == deg_i for i in range(1, c + 1))
        assert deg_var_closed(profile) == deg_var

    @pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
    def test_codimension_two(self, N):
        """Test c = 2 against the explicit sums for all d1, d2 <= 5."""
        for d1 in range(1, 6):
            for d2 in range(1, 6):
                profile = Profile(N, (d1, d2))
                expected = codim2_degrees(N, d1, d2)
                actual = (deg_i_closed(profile, 1), deg_i_closed(profile, 2), deg_var_closed(profile))
                assert actual == expected

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 5).flatmap(
        lambda N: st.tuples(st.just(N), st.lists(st.integers(1, 5), min_size=1, max_size=min(N + 1, 4)), st.sampled_from([0, 2, 3]))
    ))
    def test_relations(self, case):
        """Test (deg) and (degvar) after division by mu."""
        N, degrees, p = case
        profile = Profile(N, tuple(degrees), p)
        deg_i = [deg_i_closed(profile, i) for i in range(1, profile.c + 1)]
        assert total_degree_closed(profile) == sum(deg_i)
        assert (N + 1) * deg_var_closed(profile) == sum(d * g for d, g in zip(degrees, deg_i))

    @pytest.mark.parametrize("degrees", [(2, 3, 4), (1, 2, 4), (3, 3, 1)])
    def test_permutation_equivariance(self, degrees):
        """Test that deg_i follows its equation under reordering."""
        profile = Profile(4, degrees)
        for order in permutations(range(3)):
            permuted = profile.permuted(order)
            for i in range(3):
                assert deg_i_closed(permuted, i + 1) == deg_i_closed(profile, order[i] + 1)

    def test_even_raw_components_in_characteristic_two(self):
        """Test that raw degrees are even when n is even and p = 2."""
        for N, degrees in [(2, (2, 3)), (4, (3, 3)), (3, (3,)), (5, (2, 2, 3))]:
            profile = Profile(N, degrees, 2)
            assert profile.n % 2 == 0
            assert raw_deg_var(profile) % 2 == 0
            assert all(raw_deg_i(profile, i) % 2 == 0 for i in range(1, profile.c + 1))


class TestModPReport:
    """Tests for the mod-p verdict."""

    @pytest.mark.parametrize("N,degrees,p,expected", [
        (1, (2,), 2, 'square_of_irreducible'),
        (2, (3,), 5, 'irreducible'),
        (3, (1, 1), 7, 'unit'),
        (2, (3,), 2, 'irreducible'),
        (3, (2, 3), 0, 'irreducible'),
    ])
    def test_verdicts(self, N, degrees, p, expected):
        """Test each verdict."""
        assert mod_p_report(Profile(N, degrees), p) == expected


class TestSymbolic:
    """Tests for the symbolic degree polynomials."""

    def test_boole_polynomial(self):
        """Test c = 1, N = 2: deg_1 = 3(d1-1)^2."""
        deg_i, deg_var = symbolic_degrees(1, 2)
        assert deg_i[0].to_string() == '3*d1^2 - 6*d1 + 3'
        assert deg_var.to_string() == 'd1^3 - 2*d1^2 + d1'

    def test_resultant_polynomial(self):
        """Test c = 2, N = 1: deg_var = d1 d2."""
        deg_i, deg_var = symbolic_degrees(2, 1)
        assert deg_var.to_string() == 'd1*d2'
        assert [p.to_string() for p in deg_i] == ['d2', 'd1']

    def test_codimension_two_plane(self):
        """Test c = 2, N = 2: deg_var = d1 d2 (d1 + d2 - 2)."""
        _, deg_var = symbolic_degrees(2, 2)
        assert deg_var.to_string() == 'd1^2*d2 + d1*d2^2 - 2*d1*d2'

    @pytest.mark.parametrize("c,N", [(1, 3), (2, 3), (3, 3), (3, 4)])
    def test_specializations_match(self, c, N):
        """Test that every integer specialization reproduces the closed forms."""
        deg_i, deg_var = symbolic_degrees(c, N)
        assert all(p.has_integer_coefficients() for p in deg_i + [deg_var])
        for degrees in [(2,) * c, tuple(range(2, c + 2)), (1,) * (c - 1) + (3,)]:
            profile = Profile(N, degrees)
            if is_defective(profile):
                continue
            assert deg_var.evaluate(degrees) == deg_var_closed(profile)
            for i, poly in enumerate(deg_i, start=1):
                assert poly.evaluate(degrees) == deg_i_closed(profile, i)

    def test_invalid_codimension(self):
        """Test that c > N+1 is rejected."""
        with pytest.raises(DomainError):
            symbolic_degrees(3, 1)


class TestPartialFractions:
    """Tests for the partial-fraction identity behind deg_var."""

    @pytest.mark.parametrize("c,N,sample", [
        (2, 3, (2, 3)),
        (3, 4, (2, 3, 5)),
        (1, 2, (4,)),
    ])
    def test_vanishes(self, c, N, sample):
        """Test the identity on fixed samples."""
        assert petitcalcul_identity(c, N, sample) == 0

    @settings(max_examples=100, deadline=None)
    @given(
        st.integers(1, 4).flatmap(lambda c: st.lists(
            st.fractions(min_value=-10, max_value=10, max_denominator=5), min_size=c, max_size=c, unique=True,
        )),
        st.integers(0, 6),
    )
    def test_vanishes_on_random_samples(self, sample, N):
        """Test the identity on random distinct rationals."""
        assert petitcalcul_identity(len(sample), N, sample) == 0

    def test_repeated_sample_raises(self):
        """Test that samples must be distinct."""
        with pytest.raises(DomainError):
            petitcalcul_identity(2, 3, (Fraction(2), Fraction(2)))


class TestDegreeReport:
    """Tests for the report schema and its serialization."""

    def test_report_fields(self, mixed_pair):
        """Test the assembled report."""
        report = degree_report(mixed_pair)
        assert report.deg_i == [33, 34]
        assert report.deg == 67
        assert report.c == 2
        assert not report.defective

    def test_integers_serialize_as_strings(self, mixed_pair):
        """Test the fixed key order and decimal strings."""
        payload = degree_report(mixed_pair).to_dict()
        assert list(payload) == [
            'N', 'c', 'degrees', 'p', 'mu', 'defective', 'deg', 'deg_i', 'deg_var', 'mod_p_verdict',
        ]
        assert payload['deg_var'] == '42'
        assert payload['deg_i'] == ['33', '34']
        assert payload['defective'] is False

    def test_relation_violation_rejected(self):
        """Test that the schema enforces (N+1) deg_var = sum d_i deg_i."""
        with pytest.raises(ValidationError):
            DegreeReport(
                N=1, degrees=[2], p=0, mu=1, defective=False,
                deg=2, deg_i=[2], deg_var=3, mod_p_verdict='irreducible',
            )

    def test_defective_requires_unit(self):
        """Test that a defective report must have verdict unit."""
        with pytest.raises(ValidationError):
            DegreeReport(
                N=3, degrees=[1, 1], p=0, mu=1, defective=True,
                deg=0, deg_i=[0, 0], deg_var=0, mod_p_verdict='irreducible',
            )
