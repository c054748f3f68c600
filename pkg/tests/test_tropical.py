import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from motivol.errors import DegenerateSupportError, NonSimpleCurveError, SchemaError, SchoenError
from motivol.motivic_ring import LaurentY, MotivicClass, chi_y, euler, lefschetz
from motivol.polyhedral import lattice_counts, LatticePolygon
from motivol.tropical import (
    CONDITIONAL,
    FAIL,
    PASS,
    UNKNOWN,
    CellRef,
    PuiseuxPoly,
    bg_from_multiplicities,
    bg_multiplicity,
    cell_form_smooth,
    edge_form_squarefree,
    initial_class,
    mikhalkin_multiplicity,
    motivic_volume_curve,
    quantum_number,
    schoen_sanity,
    stratum_class,
    tropicalize,
    vertex_multiplicity,
    vf_class_of_curve,
)
from motivol.vf_classes import vol

from polygons import POLYGONS, lattice_points, random_lift, schoen_lifts

L = lefschetz()


def line():
    return PuiseuxPoly.from_terms([((1, 0), 0), ((0, 1), 0), ((0, 0), 0)])


def honeycomb():
    return PuiseuxPoly.from_terms(
        [((i, j), i * i + i * j + j * j) for i in range(4) for j in range(4) if i + j <= 3]
    )


def cube_on_bottom_edge():
    # (1 + x)^3 along the edge from (0, 0) to (3, 0); other coefficients 1
    binom = {(0, 0): 1, (1, 0): 3, (2, 0): 3, (3, 0): 1}
    pts = [(i, j) for i in range(4) for j in range(4) if i + j <= 3]
    return [(binom.get(m, 1), 0) for m in pts]


def trivial_cubic(leads=None):
    pts = [(i, j) for i in range(4) for j in range(4) if i + j <= 3]
    if leads is None:
        return PuiseuxPoly.from_terms([(m, 0) for m in pts])
    return PuiseuxPoly.from_terms([(m, 0, c) for m, c in zip(pts, leads)])


# structure -------------------------------------------------------------------------

def test_line_has_three_rays_in_min_convention():
    curve, _ = tropicalize(line())
    assert len(curve.vertices) == 1
    assert curve.vertices[0].position == (0, 0)
    assert sorted(e.direction for e in curve.edges) == [(-1, -1), (0, 1), (1, 0)]
    assert all(e.kind == "ray" and e.weight == 1 for e in curve.edges)


def test_line_vertex_moves_with_valuations():
    # min(a + x, b + y, c) has its vertex at (c - a, c - b)
    f = PuiseuxPoly.from_terms([((1, 0), 2), ((0, 1), 5), ((0, 0), 1)])
    curve, _ = tropicalize(f)
    assert curve.vertices[0].position == (-1, -4)


def test_honeycomb_counts():
    curve, sub = tropicalize(honeycomb())
    assert len(curve.vertices) == 9
    assert sum(e.bounded for e in curve.edges) == 9
    assert sum(e.kind == "ray" for e in curve.edges) == 9
    assert curve.betti_number == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(POLYGONS)), st.integers(0, 10**6))
def test_duality_and_balancing(name, seed):
    pts = lattice_points(POLYGONS[name])
    f = random_lift(pts, random.Random(seed))
    curve, sub = tropicalize(f)
    assert len(curve.vertices) == len(sub.cells)
    assert sum(e.bounded for e in curve.edges) == len(sub.interior_edges())
    assert sum(e.kind == "ray" for e in curve.edges) == len(sub.boundary_edges())
    for v in range(len(curve.vertices)):
        total = [0, 0]
        for w, d in curve.incident(v):
            total[0] += w * d[0]
            total[1] += w * d[1]
        assert total == [0, 0]
    # each edge is orthogonal to its dual edge; bounded edges join their endpoints
    for e in curve.edges:
        a, b = sub.edges[e.dual_edge].endpoints
        assert e.direction[0] * (b[0] - a[0]) + e.direction[1] * (b[1] - a[1]) == 0
        if e.bounded:
            p, q = curve.vertices[e.start].position, curve.vertices[e.end].position
            assert (q[0] - p[0], q[1] - p[1]) == (e.length * e.direction[0], e.length * e.direction[1])
    # genus of the tropical curve equals interior points used by the subdivision
    used = {sub.points[k].m for c in sub.cells for k in c.support}
    interior_used = sum(1 for m in used if sub.polygon.locate(m) == 1)
    if all(len(c.vertices) == 3 and c.polygon.area() == Fraction(1, 2) for c in sub.cells):
        assert curve.betti_number == interior_used


def test_single_monomial_rejected():
    with pytest.raises(DegenerateSupportError):
        tropicalize(PuiseuxPoly.from_terms([((1, 1), 0)]))


def test_binomial_gives_a_line():
    f = PuiseuxPoly.from_terms([((1, 1), 0), ((0, 0), 1)])
    curve, _ = tropicalize(f)
    assert curve.degenerate
    (e,) = curve.edges
    assert e.kind == "line" and e.weight == 1
    # the line is {x + y = 1}
    assert e.anchor[0] + e.anchor[1] == 1
    assert motivic_volume_curve(f) == L - 1
    assert vol(vf_class_of_curve(f)) == L - 1


# classes ---------------------------------------------------------------------------

def test_initial_classes_of_honeycomb():
    curve, _ = tropicalize(honeycomb())
    for k in range(len(curve.vertices)):
        assert initial_class(curve, CellRef("vertex", k)) == L - 2
    for k, e in enumerate(curve.edges):
        assert initial_class(curve, CellRef("edge", k)) == L - 1
        assert stratum_class(curve, CellRef("edge", k)) == 1


def test_volumes_of_line_and_honeycomb():
    assert motivic_volume_curve(line()) == L - 2
    assert vol(vf_class_of_curve(line())) == L - 2
    assert motivic_volume_curve(honeycomb()) == -9
    assert vol(vf_class_of_curve(honeycomb())) == -9


def euler_oracle(vertices):
    i, b, _ = lattice_counts(LatticePolygon.from_points(vertices))
    return i, b


@pytest.mark.parametrize("name", sorted(POLYGONS))
def test_euler_identity_on_schoen_lifts(name):
    pts = lattice_points(POLYGONS[name])
    i, b = euler_oracle(POLYGONS[name])
    y = LaurentY({2: 1})
    for f in schoen_lifts(pts, 5, random.Random(name)):
        V = motivic_volume_curve(f)
        assert euler(V) == 2 - 2 * i - b
        assert chi_y(V) == (1 - b) - i * (y + 1) + y
        assert vol(vf_class_of_curve(f)) == V


def test_threads_do_not_change_the_result():
    f = honeycomb()
    assert motivic_volume_curve(f, threads=1) == motivic_volume_curve(f, threads=4)


# schön checks ----------------------------------------------------------------------

def test_schoen_statuses():
    assert schoen_sanity(line()).status == PASS
    assert schoen_sanity(honeycomb()).status == PASS
    assert schoen_sanity(trivial_cubic()).status == UNKNOWN
    rng = random.Random(4)
    generic = [(rng.randint(1, 50), rng.randint(1, 50)) for _ in range(10)]
    assert schoen_sanity(trivial_cubic(generic)).status == CONDITIONAL
    report = schoen_sanity(trivial_cubic(cube_on_bottom_edge()))
    assert report.status == FAIL
    assert any("not squarefree" in msg for msg in report.messages)


def test_gating():
    with pytest.raises(SchoenError):
        motivic_volume_curve(trivial_cubic())
    bad = trivial_cubic(cube_on_bottom_edge())
    with pytest.raises(SchoenError):
        vf_class_of_curve(bad)
    assert motivic_volume_curve(bad, assume_schoen=True) == motivic_volume_curve(
        trivial_cubic(), assume_schoen=True
    )


def test_trivial_valuation_cubic_agrees_with_honeycomb_after_chi_y():
    one_cell = motivic_volume_curve(trivial_cubic(), assume_schoen=True)
    assert one_cell == L - MotivicClass({(1, 0): 1}) - MotivicClass({(0, 1): 1}) - 8
    assert chi_y(one_cell) == chi_y(motivic_volume_curve(honeycomb())) == -9


def test_initial_form_checks():
    assert not edge_form_squarefree([0, 1, 2], [(1, 0), (2, 0), (1, 0)])
    assert edge_form_squarefree([0, 1, 2], [(1, 0), (3, 0), (1, 0)])
    assert edge_form_squarefree([0, 2], [(1, 0), (0, 1)])
    # (1 + x)(1 + y) is singular at (-1, -1)
    one = (Fraction(1), Fraction(0))
    assert not cell_form_smooth([(0, 0), (1, 0), (0, 1), (1, 1)], [one] * 4)
    assert cell_form_smooth([(0, 0), (1, 0), (0, 1)], [one] * 3)


# multiplicities --------------------------------------------------------------------

def quantum_oracle(m):
    s = sympy.Symbol("s")
    q = sympy.cancel((s**m - s**-m) / (s - 1 / s))
    poly = sympy.Poly(sympy.expand(q * s ** (m - 1)), s)
    return LaurentY({k - (m - 1): int(c) for (k,), c in poly.terms()})


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 7])
def test_quantum_numbers_match_direct_expansion(m):
    assert quantum_number(m) == quantum_oracle(m)
    assert quantum_number(m).at_one() == m


def test_quantum_three():
    assert quantum_number(3) == LaurentY({-2: 1, 0: 1, 2: 1})
    assert bg_from_multiplicities([2, 2]) == LaurentY({-2: 1, 0: 2, 2: 1})


SIMPLE_CURVES = {
    "m1": [((0, 0), 0), ((1, 0), 0), ((0, 1), 0)],
    "m2": [((0, 0), 0), ((2, 0), 0), ((0, 1), 0)],
    "m3": [((0, 0), 0), ((2, 1), 0), ((1, 2), 0)],
    "m4": [((0, 0), 0), ((2, 0), 0), ((0, 2), 0)],
    "m3x3": [((0, 0), 0), ((3, 0), 0), ((0, 1), 0), ((3, 1), 1)],
    "m4x4": [((0, 0), 0), ((2, 0), 0), ((0, 2), 0), ((2, 2), 1)],
    "honeycomb": [((i, j), i * i + i * j + j * j) for i in range(4) for j in range(4) if i + j <= 3],
}


@pytest.mark.parametrize("name", sorted(SIMPLE_CURVES))
def test_multiplicity_specialization(name):
    curve, sub = tropicalize(PuiseuxPoly.from_terms(SIMPLE_CURVES[name]))
    n = mikhalkin_multiplicity(curve)
    # oracle: twice the area of each dual triangle
    assert n == eval_product(int(2 * c.polygon.area()) for c in sub.cells)
    N = bg_multiplicity(curve)
    assert N.at_one() == n
    expected = LaurentY({0: 1})
    for v in range(len(curve.vertices)):
        expected = expected * quantum_oracle(vertex_multiplicity(curve, v))
    assert N == expected


def eval_product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def test_multiplicity_values_cover_one_to_four():
    seen = set()
    for name in ("m1", "m2", "m3", "m4"):
        curve, _ = tropicalize(PuiseuxPoly.from_terms(SIMPLE_CURVES[name]))
        seen.add(mikhalkin_multiplicity(curve))
    assert seen == {1, 2, 3, 4}


def test_non_simple_curves_rejected():
    # one trivalent vertex with three weight-3 rays is fine
    curve, _ = tropicalize(trivial_cubic())
    assert mikhalkin_multiplicity(curve) == 9
    # a quadrilateral cell gives a four-valent vertex
    square = PuiseuxPoly.from_terms([((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 0)])
    curve, _ = tropicalize(square)
    with pytest.raises(NonSimpleCurveError):
        mikhalkin_multiplicity(curve)
    curve, _ = tropicalize(PuiseuxPoly.from_terms([((1, 1), 0), ((0, 0), 1)]))
    with pytest.raises(NonSimpleCurveError):
        bg_multiplicity(curve)


# input -----------------------------------------------------------------------------

def test_puiseux_json_roundtrip_and_errors():
    f = trivial_cubic([(1, 2)] * 10)
    assert PuiseuxPoly.from_json(f.to_json()) == f
    with pytest.raises(SchemaError) as err:
        PuiseuxPoly.from_json({"terms": [{"m": [0, 0], "w": "1/0"}]})
    assert err.value.field == "terms[0].w"
    with pytest.raises(SchemaError) as err:
        PuiseuxPoly.from_json({"terms": [{"m": [0, 0], "w": "0"}, {"m": [0, 0], "w": "1"}]})
    assert err.value.field == "terms[1].m"
    with pytest.raises(SchemaError) as err:
        PuiseuxPoly.from_json({"terms": [{"m": [0, 0], "w": "0", "lead": ["0", "0"]}]})
    assert err.value.field == "terms[0].lead"
