"""Hand-checkable worked examples.

Each check raises ``AssertionError`` on failure.  Frozen literals were
obtained from the brute-force oracles in ``oracles.py``; where an oracle is
cheap it is re-run here as well.
"""
from __future__ import annotations

import math
import warnings
from fractions import Fraction as F

from tropkit import (HeightedConfiguration, NotRegularPointError, Polyhedron, PolyhedralComplex,
                     TropicalPolynomial, ValuedScalar, WeightedComplex, add, admissible_conditions,
                     check_conditions, check_realization, chow_complex_of_hypersurface,
                     chow_skeleton_from_cycle, coefficient_configuration, common_refinement,
                     contains, degree_of_subtorus, expected_boundary_degree, groebner_complex,
                     initial_form, is_balanced, min_support, mul, multiplicity_at, neg,
                     rescale_value_group, residue, sample_points, skeleton, stable_minkowski_sum,
                     standard_linear_space, support_equal, t, tropical_degree, tropicalize,
                     upper_hull, val, weight_complex, weight_subdivision)
from tropkit.chow import oracle_agrees, same_cells

import oracles

EXAMPLES: dict[str, callable] = {}


def example(fn):
    EXAMPLES[fn.__name__] = fn
    return fn


def P(*coords):
    return tuple(F(c) for c in coords)


def ray_cell(apex, direction):
    return Polyhedron.from_v(len(apex), [apex], [direction])


def cycle(n, d, cells):
    return WeightedComplex.from_cells(n, cells, dim=d)


def tropical_line(apex=(0, 0), weight=1):
    return cycle(2, 1, [(ray_cell(apex, r), weight) for r in [(1, 0), (0, 1), (-1, -1)]])


def top_summary(c):
    """Sorted (vertices, rays, lineality, weight) of the top cells."""
    return sorted((p.vertices, p.rays, p.lineality, c.weight(p)) for p in c.top_cells)


def poly(n, terms):
    return TropicalPolynomial(n, terms)


XY1 = poly(2, {(1, 0): 1, (0, 1): 1, (0, 0): 1})
XYT = poly(2, {(1, 0): 1, (0, 1): 1, (0, 0): t(1)})
X2XT = poly(1, {(2,): 1, (1,): 1, (0,): t(1)})
ONE_TX_X2 = poly(1, {(0,): 1, (1,): t(1), (2,): 1})
ONE_X_X2 = poly(1, {(0,): 1, (1,): 1, (2,): 1})
ONE_TINV_X_X2 = poly(1, {(0,): 1, (1,): t(-1), (2,): 1})

LINE_AT_11 = [(P(1, 1), (-1, -1)), (P(1, 1), (0, 1)), (P(1, 1), (1, 0))]


# ---------------------------------------------------------------------------
# valued scalars

@example
def valued_val():
    assert val(ValuedScalar({F(3, 2): 1, 2: 2})) == F(3, 2)
    assert val(ValuedScalar()) == math.inf
    assert val(ValuedScalar.constant(5)) == 0


@example
def valued_residue():
    assert residue(ValuedScalar({F(3, 2): 1, 2: 2})) == 1
    assert residue(ValuedScalar({0: -7, 1: 1})) == -7
    assert residue(ValuedScalar({-1: 4})) == 4


@example
def valued_ring_ops():
    assert add(t(1), neg(t(1))).is_zero()
    assert mul(t(F(1, 2)), t(F(1, 2))) == t(1)
    assert val(mul(t(1, 2), t(2, 3))) == 3


@example
def valued_rescale():
    for s, k in [(t(1), 2), (t(F(1, 2)), 3), (ValuedScalar(), 5)]:
        r = rescale_value_group(s, k)
        assert r == s and val(r) == val(s)
        assert r.denominator_bound % k == 0


# ---------------------------------------------------------------------------
# polyhedra

@example
def polyhedron_dim():
    assert Polyhedron.from_v(2, [(0, 0), (1, 0)]).dim == 1
    assert Polyhedron.from_h(2, eqs=[((1, -1), 0)]).dim == 1
    assert Polyhedron.point((3, 4)).dim == 0


@example
def polyhedron_relint():
    assert Polyhedron.from_v(2, [(0, 0), (1, 0)]).relative_interior_point() == P(F(1, 2), 0)
    assert ray_cell((1, 1), (0, 1)).relative_interior_point() == P(1, 2)
    half = Polyhedron.from_h(2, [((1, 0), 0)])
    w = half.relative_interior_point()
    assert w == P(1, 0)
    assert all(sum(a * x for a, x in zip(n, w)) > b for n, b in half.facets)


@example
def refinement_of_half_lines():
    c1 = PolyhedralComplex(1, [Polyhedron.from_h(1, [((-1,), 0)]), Polyhedron.from_h(1, [((1,), 0)])])
    c2 = PolyhedralComplex(1, [Polyhedron.from_h(1, [((-1,), -1)]), Polyhedron.from_h(1, [((1,), 1)])])
    r = common_refinement(c1, c2)
    tops = sorted((p.vertices, p.rays) for p in r.cells_of_dim(1))
    assert tops == [((P(0),), ((-1,),)), ((P(0), P(1)), ()), ((P(1),), ((1,),))]
    assert sorted(p.vertices for p in r.cells_of_dim(0)) == [(P(0),), (P(1),)]
    assert set(common_refinement(c1, c1).keys) == set(c1.keys)


@example
def refinement_of_two_lines():
    l1 = PolyhedralComplex(2, [Polyhedron.from_h(2, eqs=[((1, 0), 0)])])
    l2 = PolyhedralComplex(2, [Polyhedron.from_h(2, eqs=[((0, 1), 0)])])
    r = common_refinement(l1, l2)
    assert [p.vertices for p in r] == [(P(0, 0),)]


@example
def support_and_skeleton():
    line = tropical_line()
    split = [(Polyhedron.from_v(2, [(0, 0), (2, 2)]), 1), (ray_cell((2, 2), (1, 1)), 1),
             (ray_cell((0, 0), (-1, -1)), 1)]
    assert not support_equal(line.complex, cycle(2, 1, split).complex)
    resub = [(ray_cell((0, 0), (1, 0)), 1), (ray_cell((0, 0), (0, 1)), 1),
             (Polyhedron.from_v(2, [(0, 0), (-2, -2)]), 1), (ray_cell((-2, -2), (-1, -1)), 1)]
    assert support_equal(line.complex, cycle(2, 1, resub).complex)
    fan = weight_complex(HeightedConfiguration(((0, 0), (1, 0), (0, 1)), (0, 0, 0))).complex
    sk = skeleton(fan, 1)
    assert sorted(p.rays for p in sk) == [(), ((-1, -1),), ((0, 1),), ((1, 0),)]
    cell = contains(line.complex, (5, 0))
    assert cell.rays == ((1, 0),) and cell.vertices == (P(0, 0),)


# ---------------------------------------------------------------------------
# tropical cycles

@example
def balancing():
    assert is_balanced(tropical_line())
    r = is_balanced(cycle(2, 1, [(ray_cell((0, 0), (1, 0)), 1), (ray_cell((0, 0), (0, 1)), 1)]))
    assert not r and r.residual == (1, 1)
    assert is_balanced(cycle(2, 1, [(ray_cell((0, 0), (1, 0)), 2), (ray_cell((0, 0), (-1, 0)), 2)]))


@example
def multiplicities():
    assert multiplicity_at(tropical_line(), (5, 0)) == 1
    assert multiplicity_at(cycle(2, 1, [(ray_cell((0, 0), (1, 0)), 3)]), (2, 0)) == 3
    try:
        multiplicity_at(tropical_line(), (0, 0))
    except NotRegularPointError:
        pass
    else:
        raise AssertionError("origin must not be regular")


@example
def minkowski_points():
    a = cycle(1, 0, [(Polyhedron.point((F(1, 3),)), 1)])
    b = cycle(1, 0, [(Polyhedron.point((F(5, 2),)), 1)])
    s = stable_minkowski_sum(a, b)
    assert top_summary(s) == [((P(F(17, 6)),), (), (), 1)]


@example
def minkowski_segments():
    a = cycle(2, 1, [(Polyhedron.from_v(2, [(0, 0), (1, 0)]), 1)])
    b = cycle(2, 1, [(Polyhedron.from_v(2, [(0, 0), (0, 1)]), 1)])
    s = stable_minkowski_sum(a, b)
    assert top_summary(s) == [((P(0, 0), P(0, 1), P(1, 0), P(1, 1)), (), (), 1)]
    c = cycle(2, 1, [(Polyhedron.from_v(2, [(0, 0), (2, 0)]), 1)])
    assert len(stable_minkowski_sum(a, c).complex) == 0


@example
def subtorus_degrees():
    simplex = [(0, 0), (1, 0), (0, 1)]
    assert degree_of_subtorus([(1, 0), (0, 1)], simplex) == 1
    assert degree_of_subtorus([(1, 2)], simplex) == 2 == oracles.implicit_degree_of_monomial_curve([0, 1, 2])
    assert degree_of_subtorus([(1, 0)], simplex) == 1


@example
def tropical_degrees():
    assert tropical_degree(tropical_line()) == 1
    assert tropical_degree(tropical_line(weight=2)) == 2
    conic = poly(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 0): 1, (1, 1): t(-1), (0, 2): 1})
    assert tropical_degree(tropicalize(conic)) == 2


# ---------------------------------------------------------------------------
# weight machinery

def cfg1(heights):
    return HeightedConfiguration(((0,), (1,), (2,)), tuple(heights))


TRIANGLE = HeightedConfiguration(((0, 0), (1, 0), (0, 1)), (0, 0, 0))


def hull_edges(h):
    return sorted(tuple(sorted((h.lifted[i] for i in f.extremal))) for f in h.facets)


@example
def upper_hulls():
    h = upper_hull(cfg1([0, 0, 0]))
    assert hull_edges(h) == [(P(0, 0), P(2, 0))]
    assert [sorted(f.characters) for f in h.facets] == [[0, 1, 2]]
    h = upper_hull(cfg1([0, 1, 0]))
    assert hull_edges(h) == [(P(0, 0), P(2, 0))] == oracles.lower_hull_segments_1d([(0, 0), (1, 1), (2, 0)])
    assert [sorted(f.characters) for f in h.facets] == [[0, 2]]
    h = upper_hull(cfg1([0, -1, 0]))
    expect = [(P(0, 0), P(1, -1)), (P(1, -1), P(2, 0))]
    assert hull_edges(h) == expect == oracles.lower_hull_segments_1d([(0, 0), (1, -1), (2, 0)])


@example
def subdivisions():
    s = weight_subdivision(upper_hull(cfg1([0, 0, 0])))
    assert [(sorted(f.extremal), sorted(f.characters)) for f in s.maximal_faces] == \
        [([(0,), (2,)], [(0,), (1,), (2,)])]
    s = weight_subdivision(upper_hull(cfg1([0, -1, 0])))
    assert sorted(sorted(f.extremal) for f in s.maximal_faces) == [[(0,), (1,)], [(1,), (2,)]]
    s = weight_subdivision(upper_hull(TRIANGLE))
    assert [sorted(f.extremal) for f in s.maximal_faces] == [[(0, 0), (0, 1), (1, 0)]]


@example
def weight_complexes():
    wc = weight_complex(cfg1([0, 0, 0]))
    cells = {(p.vertices, p.rays): sorted(wc.dual_characters(p)) for p in wc.complex}
    assert cells == {((P(0),), ()): [(0,), (1,), (2,)], ((P(0),), ((1,),)): [(0,)],
                     ((P(0),), ((-1,),)): [(2,)]}
    # breakpoints of min(0, w - 1, 2w)
    wc = weight_complex(cfg1([0, -1, 0]))
    verts = sorted(p.vertices[0][0] for p in wc.complex.cells_of_dim(0))
    assert verts == [-1, 1] == oracles.argmin_breakpoints_1d([0, 1, 2], [0, -1, 0])
    assert len(wc.complex.maximal_cells) == 3
    wc = weight_complex(TRIANGLE)
    assert [len(wc.complex.cells_of_dim(k)) for k in range(3)] == [1, 3, 3]
    assert sorted(p.rays for p in wc.complex.cells_of_dim(1)) == [((-1, -1),), ((0, 1),), ((1, 0),)]


@example
def min_supports():
    assert min_support(TRIANGLE, (0, 5)) == {(0, 0), (1, 0)}
    assert min_support(TRIANGLE, (0, 0)) == set(TRIANGLE.characters)
    assert min_support(cfg1([0, 1, 0]), (0,)) == {(0,), (2,)}


def conditions_summary(s):
    return (sorted((e.character, e.value) for e in s.equalities),
            sorted((q.character, q.slot, q.bound) for q in s.inequalities))


@example
def admissible_systems():
    s = admissible_conditions(weight_complex(cfg1([0, 0, 0])), cfg1([0, 0, 0]))
    assert conditions_summary(s) == ([((0,), 0), ((2,), 0)], [((1,), 0, 0)])
    # dependency 2*1 = 1*0 + 1*2 gives bound (0 + 0)/2
    assert F(0 + 0, 2) == 0
    s = admissible_conditions(weight_complex(cfg1([0, -1, 0])), cfg1([0, -1, 0]))
    assert conditions_summary(s) == ([((0,), 0), ((1,), -1), ((2,), 0)], [])
    s = admissible_conditions(weight_complex(TRIANGLE), TRIANGLE)
    assert conditions_summary(s) == ([((0, 0), 0), ((0, 1), 0), ((1, 0), 0)], [])


def valuations(f):
    return {u: [val(c)] for u, c in f.terms.items()}


@example
def condition_checks():
    own = coefficient_configuration(ONE_X_X2)
    sys_ = admissible_conditions(weight_complex(own), own)
    assert check_conditions(valuations(ONE_X_X2), sys_)
    assert check_conditions(valuations(ONE_TX_X2), sys_)
    r = check_conditions(valuations(ONE_TINV_X_X2), sys_)
    assert not r and r.witness.character == (1,) and r.witness.bound == -1


# ---------------------------------------------------------------------------
# hypersurfaces

@example
def coefficient_configurations():
    c = coefficient_configuration(XY1)
    assert dict(zip(c.characters, c.heights)) == {(0, 0): 0, (0, 1): 0, (1, 0): 0}
    c = coefficient_configuration(XYT)
    assert dict(zip(c.characters, c.heights)) == {(0, 0): 1, (0, 1): 0, (1, 0): 0}
    c = coefficient_configuration(X2XT)
    assert dict(zip(c.characters, c.heights)) == {(0,): 1, (1,): 0, (2,): 0}


@example
def initial_forms():
    assert initial_form(XY1, (0, 0)).terms == {(0, 0): 1, (0, 1): 1, (1, 0): 1}
    assert initial_form(XYT, (1, 1)).terms == {(0, 0): 1, (0, 1): 1, (1, 0): 1}
    inf = initial_form(XY1, (1, 2))
    assert inf.terms == {(0, 0): 1} and inf.is_monomial


@example
def tropicalizations():
    line = [((P(0, 0),), r, (), 1) for r in [((-1, -1),), ((0, 1),), ((1, 0),)]]
    assert top_summary(tropicalize(XY1)) == line
    assert top_summary(tropicalize(XYT)) == [((P(1, 1),), r, (), 1) for r in [((-1, -1),), ((0, 1),), ((1, 0),)]]
    assert top_summary(tropicalize(X2XT)) == [((P(0),), (), (), 1), ((P(1),), (), (), 1)]
    assert top_summary(tropicalize(ONE_TX_X2)) == [((P(0),), (), (), 2)]
    # corner locus oracle at the cell points
    for f in (XY1, XYT, X2XT, ONE_TX_X2):
        heights = {u: val(c) for u, c in f.terms.items()}
        for p in tropicalize(f).complex:
            assert oracles.corner_locus_contains(heights, p.relative_interior_point())
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        empty = tropicalize(poly(2, {(1, 1): 3}))
    assert len(empty.complex) == 0 and caught


@example
def groebner_complexes():
    fan = groebner_complex(XY1).complex
    assert set(fan.keys) == set(weight_complex(TRIANGLE).complex.keys)
    g = groebner_complex(X2XT).complex
    assert sorted(p.vertices[0] for p in g.cells_of_dim(0)) == [P(0), P(1)]
    assert len(g.cells_of_dim(1)) == 3
    scaled = XY1 * ValuedScalar({0: 5, 2: 1})
    assert set(groebner_complex(scaled).complex.keys) == set(fan.keys)


# ---------------------------------------------------------------------------
# Chow complexes and realization

@example
def chow_oracles():
    for f, vertex in [(XY1, P(0, 0)), (XYT, P(1, 1))]:
        cc = chow_complex_of_hypersurface(f)
        assert [p.vertices[0] for p in cc.complex.cells_of_dim(0)] == [vertex]
        assert len(cc.complex.cells_of_dim(2)) == 3
    cc = chow_complex_of_hypersurface(X2XT)
    assert sorted(p.vertices[0] for p in cc.complex.cells_of_dim(0)) == [P(0), P(1)]


@example
def chow_from_cycles():
    for f in (XY1, XYT):
        a = chow_skeleton_from_cycle(tropicalize(f))
        b = chow_complex_of_hypersurface(f)
        assert oracle_agrees(a, b) and same_cells(a, b)
    q = F(3, 7)
    pt = cycle(1, 0, [(Polyhedron.point((q,)), 1)])
    a = chow_skeleton_from_cycle(pt)
    b = chow_complex_of_hypersurface(poly(1, {(1,): 1, (0,): -t(q)}))
    assert oracle_agrees(a, b) and same_cells(a, b)
    assert [p.vertices[0] for p in a.complex.cells_of_dim(0)] == [(q,)]


@example
def sampling():
    cc = chow_complex_of_hypersurface(X2XT)
    pts = sorted(sample_points(cc).values())
    assert pts == [P(-1), P(0), P(F(1, 2)), P(1), P(2)]
    cc = chow_complex_of_hypersurface(XY1)
    by_dim = {}
    for p in cc.complex:
        by_dim.setdefault(p.dim, []).append(p.relative_interior_point())
    assert by_dim[0] == [P(0, 0)]
    assert sorted(by_dim[1]) == [P(-1, -1), P(0, 1), P(1, 0)]
    assert sorted(by_dim[2]) == [P(-1, 0), P(0, -1), P(1, 1)]
    whole = weight_complex(HeightedConfiguration(((0, 0),), (0,)))
    assert [p.relative_interior_point() for p in whole.complex] == [P(0, 0)]


@example
def realization_verdicts():
    target = cycle(2, 1, [(ray_cell(a, r), 1) for a, r in LINE_AT_11])
    cert = check_realization(XYT, target, "both")
    assert cert.verdict == "accept" and cert.modes_agree
    heavy = cycle(2, 1, [(ray_cell(a, r), 2 if r == (1, 0) else 1) for a, r in LINE_AT_11])
    cert = check_realization(XYT, heavy, "both")
    assert cert.verdict == "reject" and cert.modes_agree
    assert [(s.observed, s.expected) for s in cert.samples if not s.cond2] == [(1, 2)]
    cert = check_realization(XYT, tropical_line(), "both")
    assert cert.verdict == "reject" and cert.modes_agree
    bad = [s for s in cert.samples if not s.cond1]
    # a sample on the target but off the tropicalization
    assert any(contains(tropical_line().complex, s.w) is not None for s in bad)


@example
def boundary_degrees():
    simplex = [(0, 0), (1, 0), (0, 1)]
    assert expected_boundary_degree(ray_cell((0, 0), (1, 2)), 1, simplex) == 2
    assert expected_boundary_degree(ray_cell((0, 0), (1, 0)), 3, simplex) == 3
    assert expected_boundary_degree(Polyhedron.whole_space(2), 1, simplex) == 1


@example
def negated_plane_recipe():
    neg_line = standard_linear_space(2, 1, negated=True)
    assert sorted(p.rays for p in neg_line.top_cells) == [((-1, 0),), ((0, -1),), ((1, 1),)]
