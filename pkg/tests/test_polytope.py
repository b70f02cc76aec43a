"""
Tests for the Cayley polytope model.

Verifies profile validation, face enumeration, lattice-point enumeration
and the volume and moment integrals against point counts.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from discdeg import polytope
from discdeg.errors import DomainError, FaceDuplication
from discdeg.polytope import (
    Face,
    LatticeVector,
    Profile,
    check_face_distinctness,
    compositions,
    ehrhart_count,
    enumerate_faces,
    fitted_moment,
    full_face,
    interior_weighted_sum,
    lattice_points,
    moment,
    normalized_volume,
    smallest_containing_face,
    symmetric_volume,
    volume_from_points,
)

small_profiles = st.integers(min_value=0, max_value=3).flatmap(
    lambda N: st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=min(N + 1, 3)).map(
        lambda degrees: Profile(N, tuple(degrees))
    )
)


class TestProfile:
    """Tests for Profile validation and derived quantities."""

    def test_derived_dimensions(self, mixed_pair):
        """Test c, n, k and e for a quadric and a cubic in P^3."""
        assert mixed_pair.c == 2
        assert mixed_pair.n == 1
        assert mixed_pair.k == 4
        assert mixed_pair.e == (1, 2)
        assert mixed_pair.width == 6

    @pytest.mark.parametrize("N,degrees,p", [
        (-1, (2,), 0),
        (1, (2, 2, 2), 0),
        (2, (0,), 0),
        (2, (2,), 4),
        (2, (2,), 1),
    ])
    def test_invalid_profiles_raise(self, N, degrees, p):
        """Test that every constraint violation is a domain error."""
        with pytest.raises(DomainError):
            Profile(N, degrees, p)

    def test_large_prime_accepted(self):
        """Test that a large prime characteristic is valid."""
        assert Profile(2, (3,), 2147483647).p == 2147483647

    def test_permuted(self, mixed_pair):
        """Test reordering the degrees."""
        assert mixed_pair.permuted((1, 0)).degrees == (3, 2)
        with pytest.raises(DomainError):
            mixed_pair.permuted((0, 0))


class TestFaces:
    """Tests for face enumeration."""

    @pytest.mark.parametrize("N,degrees", [(1, (2,)), (3, (2, 3)), (2, (1, 2, 3))])
    def test_face_count(self, N, degrees):
        """Test that there is one face per pair of nonempty supports."""
        profile = Profile(N, degrees)
        faces = enumerate_faces(profile)
        assert len(faces) == (2 ** profile.c - 1) * (2 ** (N + 1) - 1)
        assert len(set(faces)) == len(faces)

    def test_full_face_dimension(self, mixed_pair):
        """Test that the full face is Q itself."""
        face = full_face(mixed_pair)
        assert face.dim == mixed_pair.k
        assert face.codim(mixed_pair) == 0
        assert face.is_full(mixed_pair)

    def test_vertex_face(self, mixed_pair):
        """Test a single vertex Y_2 X_0^3."""
        face = Face((2,), (0,))
        assert face.dim == 0
        assert face.vertices(mixed_pair) == {LatticeVector((0, 1), (3, 0, 0, 0))}

    def test_empty_support_raises(self):
        """Test that supports must be nonempty."""
        with pytest.raises(DomainError):
            Face((), (0,))

    def test_distinctness_holds(self, mixed_pair):
        """Test the diagnostic on a real profile."""
        check_face_distinctness(mixed_pair)

    def test_distinctness_detects_duplicates(self, conic, monkeypatch):
        """Test that a repeated vertex set raises FaceDuplication."""
        face = Face((1,), (0, 1))
        monkeypatch.setattr(polytope, 'enumerate_faces', lambda profile: [face, face])
        with pytest.raises(FaceDuplication):
            check_face_distinctness(conic)


class TestLatticePoints:
    """Tests for lattice-point enumeration."""

    def test_compositions(self):
        """Test nonnegative and positive compositions."""
        assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
        assert list(compositions(3, 2, positive=True)) == [(1, 2), (2, 1)]
        assert list(compositions(0, 0)) == [()]

    def test_points_satisfy_lattice_relation(self, mixed_pair):
        """Test that every enumerated point lies in the character lattice."""
        points = lattice_points(full_face(mixed_pair), mixed_pair, 2)
        assert points
        assert all(u.in_lattice(mixed_pair.degrees) and u.level == 2 for u in points)
        assert points == sorted(points)

    def test_negative_level_raises(self, conic):
        """Test that levels are nonnegative."""
        with pytest.raises(DomainError):
            lattice_points(full_face(conic), conic, -1)

    def test_smallest_containing_face(self):
        """Test that supports of alpha and beta pick the face."""
        u = LatticeVector((1, 0), (0, 2, 0))
        assert smallest_containing_face(u) == Face((1,), (1,))

    def test_smallest_containing_face_rejects_zero(self):
        """Test that the zero vector lies in no face."""
        with pytest.raises(DomainError):
            smallest_containing_face(LatticeVector((0, 0), (0, 0)))

    @pytest.mark.parametrize("level", [0, 1, 2, 3])
    def test_interior_sum_matches_enumeration(self, mixed_pair, level):
        """Test the closed-form beta counting against brute force on every face."""
        for face in enumerate_faces(mixed_pair):
            points = lattice_points(face, mixed_pair, level, interior=True)
            count, sums = interior_weighted_sum(face, mixed_pair, level)
            assert count == len(points)
            expected = tuple(sum(column) for column in zip(*(u.as_tuple() for u in points))) or (0,) * mixed_pair.width
            assert sums == expected

    @pytest.mark.parametrize("level", [0, 1, 2, 3])
    def test_closed_count_matches_enumeration(self, mixed_pair, level):
        """Test the Ehrhart point count against brute force."""
        face = full_face(mixed_pair)
        assert ehrhart_count(face, mixed_pair, level) == len(lattice_points(face, mixed_pair, level))


class TestVolumesAndMoments:
    """Tests for normalized volumes and moment integrals."""

    def test_moment_small_example(self):
        """Test the moments of Q for a line and a conic on P^1."""
        profile = Profile(1, (1, 2))
        values = moment(full_face(profile), profile)
        assert values[0] == Fraction(4, 3)
        assert values[1] == Fraction(5, 3)
        assert normalized_volume(full_face(profile), profile) == 3

    def test_moment_zero_outside_support(self, mixed_pair):
        """Test that coordinates outside I and J integrate to zero."""
        face = Face((1,), (0, 2))
        values = moment(face, mixed_pair)
        assert values[1] == 0
        assert values[mixed_pair.c + 1] == 0
        assert values[mixed_pair.c + 3] == 0

    def test_volume_is_symmetric_function(self, mixed_pair):
        """Test that vol(Q) = h_N(d_1..d_c)."""
        face = full_face(mixed_pair)
        assert normalized_volume(face, mixed_pair) == symmetric_volume(mixed_pair.degrees, mixed_pair.N)

    @settings(max_examples=20, deadline=None)
    @given(small_profiles)
    def test_volume_from_point_counts(self, profile):
        """Test that dim! times the leading Ehrhart coefficient is the volume."""
        face = full_face(profile)
        assert volume_from_points(face, profile) == normalized_volume(face, profile)

    @settings(max_examples=20, deadline=None)
    @given(small_profiles)
    def test_alpha_moments_sum_to_volume(self, profile):
        """Test that alpha_1 + ... + alpha_c = 1 on Q integrates to the volume."""
        face = full_face(profile)
        assert sum(moment(face, profile)[:profile.c]) == normalized_volume(face, profile)

    def test_fitted_moment_matches_on_every_face(self, mixed_pair):
        """Test the leading coefficient of the weighted point sum against the moment."""
        for face in enumerate_faces(mixed_pair):
            assert fitted_moment(face, mixed_pair) == moment(face, mixed_pair)
