import random

import pytest

from cdvdiv.newton import (
    DEGENERATE,
    NONDEGENERATE_CERTIFIED,
    build_diagram,
    check_nondegeneracy,
    face_polynomial,
    singular_torus_search,
    support_value,
)
from cdvdiv.poly import Polynomial, parse_polynomial

EXAMPLE_CD4 = parse_polynomial("x^2 + y^2*z + z^3 + t^3")
EXAMPLE_CE8 = parse_polynomial("x^2 + y^3 + z^5 + t^15")


def random_support_polynomial(rng, max_points=8, max_exp=6):
    terms = {}
    for _ in range(rng.randint(1, max_points)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(4))
        terms[exps] = 1
    return Polynomial(terms)


class TestBuildDiagram:
    def test_example_all_support_points_are_vertices(self):
        d = build_diagram(EXAMPLE_CD4)
        assert set(d.vertices) == {
            (2, 0, 0, 0),
            (0, 2, 1, 0),
            (0, 0, 3, 0),
            (0, 0, 0, 3),
        }
        two_faces = [f.lattice_points for f in d.faces if f.dimension == 2]
        assert ((0, 2, 1, 0), (0, 0, 3, 0), (0, 0, 0, 3)) in [
            tuple(sorted(pts)) for pts in two_faces
        ] or ((0, 0, 3, 0), (0, 0, 0, 3), (0, 2, 1, 0)) in two_faces or any(
            set(pts) == {(0, 2, 1, 0), (0, 0, 3, 0), (0, 0, 0, 3)} for pts in two_faces
        )

    def test_single_monomial(self):
        d = build_diagram(parse_polynomial("x^2"))
        assert d.vertices == ((2, 0, 0, 0),)
        assert len(d.faces) == 1
        assert d.faces[0].dimension == 0

    def test_interior_support_point_is_not_a_vertex(self):
        d = build_diagram(parse_polynomial("x^2 + x^2*y"))
        assert d.vertices == ((2, 0, 0, 0),)
        assert len(d.faces) == 1

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            build_diagram(Polynomial.zero())

    def test_witnesses_cut_out_their_faces(self):
        d = build_diagram(EXAMPLE_CD4)
        support = EXAMPLE_CD4.support()
        for face in d.faces:
            w = face.witness
            m = min(sum(a * b for a, b in zip(w, v)) for v in support)
            tight = {v for v in support if sum(a * b for a, b in zip(w, v)) == m}
            assert tight == set(face.lattice_points)

    def test_face_point_counts(self):
        # A compact face of dimension k needs at least k + 1 support points.
        rng = random.Random(5)
        for _ in range(20):
            f = random_support_polynomial(rng)
            d = build_diagram(f)
            for face in d.faces:
                assert len(face.lattice_points) >= face.dimension + 1

    def test_quasihomogeneous_support_is_one_facet(self):
        d = build_diagram(EXAMPLE_CE8)
        top = [f for f in d.faces if f.dimension == 3]
        assert len(top) == 1
        assert set(top[0].lattice_points) == set(EXAMPLE_CE8.support())


class TestSupportValue:
    def test_known_support_values(self):
        d = build_diagram(EXAMPLE_CD4)
        assert support_value(d, (2, 1, 1, 1)) == 3
        assert support_value(d, (1, 1, 1, 1)) == 2
        d8 = build_diagram(EXAMPLE_CE8)
        assert support_value(d8, (8, 5, 3, 1)) == 15

    def test_vertices_suffice_oracle(self):
        rng = random.Random(23)
        for _ in range(200):
            f = random_support_polynomial(rng)
            d = build_diagram(f)
            w = tuple(rng.randint(1, 9) for _ in range(4))
            brute = min(
                sum(a * b for a, b in zip(w, v)) for v in f.support()
            )
            assert support_value(d, w) == brute

    def test_rejects_nonpositive_weight(self):
        d = build_diagram(EXAMPLE_CD4)
        with pytest.raises(ValueError):
            support_value(d, (1, 0, 1, 1))


class TestFacePolynomial:
    def test_worked_example_faces(self):
        assert face_polynomial(EXAMPLE_CD4, (2, 1, 1, 1)) == parse_polynomial(
            "y^2*z + z^3 + t^3"
        )
        assert face_polynomial(EXAMPLE_CD4, (1, 1, 1, 1)) == parse_polynomial("x^2")
        assert face_polynomial(EXAMPLE_CE8, (8, 5, 3, 1)) == parse_polynomial(
            "y^3 + z^5 + t^15"
        )

    def test_invariant_under_weight_scaling(self):
        rng = random.Random(4)
        for _ in range(50):
            f = random_support_polynomial(rng)
            w = tuple(rng.randint(1, 7) for _ in range(4))
            k = rng.randint(2, 5)
            scaled = tuple(k * c for c in w)
            assert face_polynomial(f, w) == face_polynomial(f, scaled)

    def test_support_value_is_tight(self):
        rng = random.Random(9)
        for _ in range(50):
            f = random_support_polynomial(rng)
            d = build_diagram(f)
            w = tuple(rng.randint(1, 7) for _ in range(4))
            m = support_value(d, w)
            fp = face_polynomial(f, w)
            for v in f.support():
                value = sum(a * b for a, b in zip(w, v))
                assert value >= m
                assert (value == m) == (v in fp.support())


class TestNondegeneracy:
    def test_single_monomial_derivative_rule(self):
        verdict = singular_torus_search(parse_polynomial("y^2*z + z^3 + t^3"), seed=0)
        assert verdict.status == NONDEGENERATE_CERTIFIED

    def test_monomial_certified(self):
        verdict = singular_torus_search(parse_polynomial("x^2"), seed=0)
        assert verdict.status == NONDEGENERATE_CERTIFIED

    def test_degenerate_square_with_witness(self):
        verdict = singular_torus_search(parse_polynomial("z^2 - 2*z*t + t^2"), seed=0)
        assert verdict.status == DEGENERATE
        assert verdict.witness is not None
        assert verdict.witness.point == (1, 1)
        assert verdict.witness.exact_over_rationals

    def test_diagram_checker_runs_per_face(self):
        d = build_diagram(EXAMPLE_CD4)
        results = check_nondegeneracy(d, seed=0, samples_per_face=1000)
        assert len(results) == len(d.faces)
        for _face, verdict in results:
            assert verdict.status in (
                NONDEGENERATE_CERTIFIED,
                "nondegenerate_probable",
            )

    def test_deterministic_given_seed(self):
        f = parse_polynomial("x^2 + y^2 + z^2 + t^2 + x*y + z*t")
        a = singular_torus_search(f, seed=42, samples=2000)
        b = singular_torus_search(f, seed=42, samples=2000)
        assert a == b
