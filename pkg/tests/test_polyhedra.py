import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropkit import EmptyPolyhedronError, Polyhedron, PolyhedralComplex, common_refinement, support_equal
from tropkit.polyhedra import contains, skeleton, subdivide


def random_polyhedron(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    ineqs = [([rng.randint(-3, 3) for _ in range(n)], rng.randint(-4, 4)) for _ in range(rng.randint(0, 6))]
    eqs = [([rng.randint(-2, 2) for _ in range(n)], rng.randint(-2, 2)) for _ in range(rng.randint(0, 1))]
    return Polyhedron.from_h(n, ineqs, eqs)


seeds = st.integers(0, 10 ** 9)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_h_to_v_to_h_round_trip(seed):
    p = random_polyhedron(seed)
    if p.is_empty:
        return
    q = Polyhedron.from_v(p.ambient_dim, p.vertices, p.rays, p.lineality)
    assert q.key == p.key
    for v in p.vertices:
        assert all(sum(a * x for a, x in zip(n, v)) >= b for n, b in p._ineqs)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_relative_interior_point_is_strict(seed):
    p = random_polyhedron(seed)
    if p.is_empty:
        with pytest.raises(EmptyPolyhedronError):
            p.relative_interior_point()
        return
    w = p.relative_interior_point()
    assert p.relint_contains(w)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_faces_are_closed_and_graded(seed):
    p = random_polyhedron(seed)
    if p.is_empty:
        return
    faces = p.faces()
    keys = {f.key for f in faces}
    assert p.key in keys
    for f in faces:
        for g in f.faces():
            assert g.key in keys
    assert sum(1 for f in faces if f.dim == p.dim) == 1


def test_dim_of_empty_raises():
    e = Polyhedron.from_h(1, [((1,), 1), ((-1,), 1)])
    assert e.is_empty
    with pytest.raises(EmptyPolyhedronError):
        e.dim


def test_redundant_vertex_is_pruned():
    sq = Polyhedron.from_v(2, [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])
    assert len(sq.vertices) == 4 and len(sq.facets) == 4


def _chamber_complex(seed, n):
    rng = random.Random(seed)
    hyps = [([rng.randint(-2, 2) for _ in range(n)], rng.randint(-2, 2)) for _ in range(rng.randint(1, 3))]
    hyps = [(a, b) for a, b in hyps if any(a)]
    box = Polyhedron.from_h(n, [([1 if j == i else 0 for j in range(n)], -3) for i in range(n)]
                            + [([-1 if j == i else 0 for j in range(n)], -3) for i in range(n)])
    return PolyhedralComplex(n, subdivide(box, hyps))


@settings(max_examples=30, deadline=None)
@given(seeds, seeds)
def test_common_refinement_refines_both(s1, s2):
    c1, c2 = _chamber_complex(s1, 2), _chamber_complex(s2, 2)
    r = common_refinement(c1, c2)
    # both are subdivisions of the same box, so all three have one support
    assert support_equal(r, c1) and support_equal(r, c2) and support_equal(c1, c2)
    for p in r.maximal_cells:
        w = p.relative_interior_point()
        a, b = contains(c1, w), contains(c2, w)
        assert a is not None and b is not None
        assert a.contains(p) and b.contains(p)


def test_support_equal_distinguishes():
    seg = PolyhedralComplex(1, [Polyhedron.from_v(1, [(0,), (2,)])])
    split = PolyhedralComplex(1, [Polyhedron.from_v(1, [(0,), (1,)]), Polyhedron.from_v(1, [(1,), (2,)])])
    short = PolyhedralComplex(1, [Polyhedron.from_v(1, [(0,), (1,)])])
    assert support_equal(seg, split)
    assert not support_equal(seg, short)
    assert len(skeleton(split, 0)) == 3


def test_face_relation_is_reflexive_and_transitive():
    c = _chamber_complex(7, 2)
    rel = set(c.face_relation)
    for k in c.keys:
        assert (k, k) in rel
    for a, b in rel:
        for b2, d in rel:
            if b2 == b:
                assert (a, d) in rel
