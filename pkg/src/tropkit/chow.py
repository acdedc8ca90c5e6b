"""Chow complexes of tropical cycles and realization checks for hypersurfaces.

The Chow complex of a ``d``-cycle ``C`` in ``R^n`` is a complete complex
whose codimension-1 skeleton is the support of the stable sum of ``C`` with
the negated standard tropical ``(n-d-1)``-plane.  That sum is a balanced
``(n-1)``-cycle, hence the corner locus of a piecewise-linear concave function
``min_chi(<chi, w> + a(chi))``.  The function is recovered by integrating its
gradient, which jumps by ``-m * nu`` across a wall of weight ``m`` with
primitive normal ``nu``; the completion is the weight complex of the recovered
configuration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cycles import (MAX_GENERIC_ATTEMPTS, NonGenericError, NotRegularPointError, WeightedComplex,
                     _generic_vector, compare_cycles, degree_of_subtorus, direction_lattice,
                     is_balanced, multiplicity_at, refine, stable_minkowski_sum,
                     standard_linear_space)
from .hypersurface import TropicalPolynomial, groebner_complex, initial_form, tropicalize
from .linalg import dot
from .polyhedra import Polyhedron, PolyhedralComplex, contains, skeleton, support_equal
from .weights import HeightedConfiguration, weight_complex

HYPERSURFACE_ORACLE = "hypersurface-oracle"
STABLE_SUM = "stable-sum"


@dataclass
class ChowComplexData:
    complex: PolyhedralComplex
    source: str
    config: HeightedConfiguration | None = None

    @property
    def ambient_dim(self) -> int:
        return self.complex.ambient_dim

    def dual_polytope(self) -> Polyhedron | None:
        """Polytope spanned by the gradients of the defining function, if known."""
        if self.config is None:
            return None
        return self.config.weight_polytope()


def chow_complex_of_hypersurface(f: TropicalPolynomial) -> ChowComplexData:
    if len(f.terms) < 2:
        raise ValueError("need at least two terms")
    wc = groebner_complex(f)
    return ChowComplexData(wc.complex, HYPERSURFACE_ORACLE, wc.config)


# ---------------------------------------------------------------------------
# recovering a concave function from a balanced (n-1)-cycle

def _line_interval(p: Polyhedron, q: Sequence, v: Sequence):
    """Parameters ``s`` with ``q + s v`` in ``p``: ``None`` or ``(lo, hi, interior)``.

    ``lo``/``hi`` are ``None`` when unbounded.  ``interior`` tells whether the
    open parameter range meets the relative interior, for a single point
    whether that point is in the relative interior.
    """
    lo, hi = None, None
    for a, b in p.equalities:
        av, aq = dot(a, v), dot(a, q)
        if av == 0:
            if aq != b:
                return None
            continue
        s = (b - aq) / av
        if lo is not None and s < lo or hi is not None and s > hi:
            return None
        lo = hi = s
    for a, b in p.facets:
        av, aq = dot(a, v), dot(a, q)
        if av == 0:
            if aq < b:
                return None
            continue
        s = (b - aq) / av
        if av > 0:
            lo = s if lo is None else max(lo, s)
        else:
            hi = s if hi is None else min(hi, s)
    if lo is not None and hi is not None and lo > hi:
        return None
    if lo is not None and lo == hi:
        w = [x + lo * y for x, y in zip(q, v)]
        return lo, hi, p.relint_contains(w)
    return lo, hi, True


class _Walls:
    def __init__(self, cycle: WeightedComplex):
        self.n = cycle.ambient_dim
        self.walls = []
        for s in cycle.top_cells:
            (nu, b), = s.equalities
            self.walls.append((s, tuple(int(x) for x in nu), b, cycle.weight(s)))

    def on_support(self, w) -> bool:
        return any(s.contains_point(w) for s, *_ in self.walls)

    def first_hit(self, q, v, skip=None):
        """Smallest positive parameter at which ``q + s v`` meets a wall other than ``skip``."""
        best = None
        for s, *_ in self.walls:
            if s is skip:
                continue
            iv = _line_interval(s, q, v)
            if iv is None:
                continue
            lo, hi, _ = iv
            if hi is not None and hi <= 0:
                continue
            t = lo if lo is not None and lo > 0 else Fraction(0)
            if best is None or t < best:
                best = t
        return best

    def walk(self, p0, p1, g0):
        """Integrate the gradient from ``p0`` (gradient ``g0``) to ``p1``.

        Returns ``(gradient at p1, increment of the function)`` or ``None`` if
        the segment is not transverse to the cycle.
        """
        v = [y - x for x, y in zip(p0, p1)]
        hits = []
        for s, nu, b, m in self.walls:
            iv = _line_interval(s, p0, v)
            if iv is None:
                continue
            lo, hi, interior = iv
            if lo is None or hi is None or lo != hi:
                if (hi is None or hi > 0) and (lo is None or lo < 1):
                    return None  # segment runs inside a wall
                continue
            if not 0 < lo < 1:
                if 0 <= lo <= 1:
                    return None
                continue
            if not interior:
                return None
            hits.append((lo, nu, m, dot(nu, v)))
        hits.sort(key=lambda h: h[0])
        g = list(g0)
        value = Fraction(0)
        prev = Fraction(0)
        for i, (s, nu, m, sign) in enumerate(hits):
            if i and hits[i - 1][0] == s:
                return None
            value += (s - prev) * dot(g, v)
            prev = s
            step = m if sign > 0 else -m
            g = [x - step * y for x, y in zip(g, nu)]
        value += (1 - prev) * dot(g, v)
        return g, value


def _recover_configuration(cycle: WeightedComplex, seed: int) -> HeightedConfiguration:
    n = cycle.ambient_dim
    zero = tuple(0 for _ in range(n))
    if len(cycle.complex) == 0:
        return HeightedConfiguration((zero,), (Fraction(0),))
    walls = _Walls(cycle)
    targets = []
    for s, nu, b, m in walls.walls:
        q = s.relative_interior_point()
        for sgn in (1, -1):
            v = [sgn * x for x in nu]
            t = walls.first_hit(q, v, skip=s)
            eps = Fraction(1) if t is None else t / 2
            targets.append(tuple(x + eps * y for x, y in zip(q, v)))
    for attempt in range(MAX_GENERIC_ATTEMPTS):
        p0 = _generic_vector(n, seed, attempt + 1)
        if walls.on_support(p0):
            continue
        found: dict[tuple, Fraction] = {}
        ok = True
        for t in targets:
            r = walls.walk(p0, t, zero)
            if r is None:
                ok = False
                break
            g, value = r
            g = tuple(int(x) for x in g)
            height = value - dot(g, t)
            if found.setdefault(g, height) != height:
                raise ValueError("cycle is not the corner locus of a concave function (not balanced?)")
        if ok:
            # shifting every gradient by one vector leaves all argmin regions unchanged
            base = min(found)
            chars = [tuple(x - y for x, y in zip(c, base)) for c in sorted(found)]
            return HeightedConfiguration(tuple(chars), tuple(found[c] for c in sorted(found)))
    raise NonGenericError("no transverse base point found")


def chow_skeleton_from_cycle(c: WeightedComplex, seed: int = 0) -> ChowComplexData:
    """Complete complex whose codimension-1 skeleton carries the Chow hypersurface of ``c``."""
    n, d = c.ambient_dim, c.dim
    if d >= n:
        raise ValueError("cycle must have positive codimension")
    if not is_balanced(c):
        raise ValueError("cycle is not balanced")
    k = n - d - 1
    if len(c.complex) == 0:
        s = c
    elif k == 0:
        s = c
    else:
        s = stable_minkowski_sum(c, standard_linear_space(n, k, negated=True), seed)
    cfg = _recover_configuration(s, seed)
    wc = weight_complex(cfg)
    cx = wc.complex
    if len(s.complex):
        codim1 = skeleton(cx, n - 1)
        if not support_equal(codim1, s.complex):
            raise AssertionError("completion does not reproduce the stable sum support")
    return ChowComplexData(cx, STABLE_SUM, cfg)


def oracle_agrees(a: ChowComplexData, b: ChowComplexData) -> bool:
    """Whether the codimension-1 skeleta have the same support.

    Both complexes are complete, so comparing full supports says nothing.
    """
    n = a.ambient_dim
    if n != b.ambient_dim:
        return False
    return support_equal(skeleton(a.complex, n - 1), skeleton(b.complex, n - 1))


def same_cells(a: ChowComplexData, b: ChowComplexData) -> bool:
    return set(a.complex.keys) == set(b.complex.keys)


def sample_points(cc: ChowComplexData) -> dict[str, tuple[Fraction, ...]]:
    ids = cc.complex.ids
    return {ids[p.key]: p.relative_interior_point() for p in cc.complex}


def expected_boundary_degree(sigma: Polyhedron, m: int, polytope_vertices: Sequence[Sequence[int]],
                             d: int | None = None) -> int:
    if d is None:
        d = sigma.dim
    lat = direction_lattice(sigma)
    if sigma.dim != d or len(lat) != d or d == 0:
        raise ValueError("cell direction lattice is rank deficient")
    return m * degree_of_subtorus(lat, polytope_vertices)


# ---------------------------------------------------------------------------
# realization certificates

@dataclass
class SampleRecord:
    cell: str
    w: tuple
    cond1: bool
    observed: int | None
    expected: int | None

    @property
    def cond2(self) -> bool:
        return self.observed == self.expected

    @property
    def passed(self) -> bool:
        return self.cond1 and self.cond2


@dataclass
class DirectRecord:
    support_equal: bool
    weight_mismatches: list

    @property
    def passed(self) -> bool:
        return self.support_equal and not self.weight_mismatches


@dataclass
class DegreeRecord:
    observed: tuple
    expected: tuple

    @property
    def passed(self) -> bool:
        return self.observed == self.expected


@dataclass
class RealizationCertificate:
    mode: str
    samples: list[SampleRecord] = field(default_factory=list)
    direct: DirectRecord | None = None
    degree: DegreeRecord | None = None
    balanced: bool = True
    sampled_verdict: bool | None = None
    direct_verdict: bool | None = None

    @property
    def accept(self) -> bool:
        return all(v for v in (self.sampled_verdict, self.direct_verdict) if v is not None)

    @property
    def verdict(self) -> str:
        return "accept" if self.accept else "reject"

    @property
    def modes_agree(self) -> bool:
        if self.sampled_verdict is None or self.direct_verdict is None:
            return True
        return self.sampled_verdict == self.direct_verdict

    def __bool__(self) -> bool:
        return self.accept


def _lattice_length(support) -> int | None:
    """Lattice length of a collinear exponent set, ``None`` if not a segment."""
    pts = sorted(support)
    if len(pts) < 2:
        return None
    a, b = pts[0], pts[-1]
    d = [y - x for x, y in zip(a, b)]
    for p in pts[1:-1]:
        e = [y - x for x, y in zip(a, p)]
        if any(d[i] * e[j] != d[j] * e[i] for i in range(len(d)) for j in range(i)):
            return None
    g = 0
    for x in d:
        g = gcd(g, x)
    return g


def _normal_form(vertices) -> tuple:
    """Vertex list translated so the lexicographically least vertex is the origin."""
    vs = sorted(tuple(Fraction(x) for x in v) for v in vertices)
    base = vs[0]
    return tuple(tuple(x - y for x, y in zip(v, base)) for v in vs)


def _sampled(f: TropicalPolynomial, target: WeightedComplex, seed: int, cert: RealizationCertificate):
    n = f.num_vars
    cert.balanced = bool(is_balanced(target))
    if cert.balanced:
        chow = chow_skeleton_from_cycle(target, seed)
        expected = _normal_form(chow.dual_polytope().vertices)
        observed = _normal_form(Polyhedron.from_v(n, list(f.terms)).vertices)
        cert.degree = DegreeRecord(observed, expected)
        cells = chow.complex
        if all(k in cells for k in map(target.complex.cell, target.weights)):
            refined = target
        else:
            refined = refine(target, cells)
    else:
        # not a valid target: sample its own cells so mismatches are reported
        cells = target.complex
        refined = target
    ids = cells.ids
    for p in cells:
        w = p.relative_interior_point()
        inf = initial_form(f, w)
        on = contains(refined.complex, w) is not None
        observed = expected = None
        if p.dim == n - 1:
            observed = _lattice_length(inf.support)
            if on:
                try:
                    expected = multiplicity_at(refined, w)
                except NotRegularPointError:
                    expected = None
        cert.samples.append(SampleRecord(ids[p.key], w, on == (not inf.is_monomial), observed, expected))
    ok = cert.balanced and all(r.passed for r in cert.samples)
    if cert.degree is not None:
        ok = ok and cert.degree.passed
    cert.sampled_verdict = ok


def _direct(f: TropicalPolynomial, target: WeightedComplex, cert: RealizationCertificate):
    cmp = compare_cycles(tropicalize(f), target)
    cert.direct = DirectRecord(cmp.support_equal, list(cmp.mismatches))
    cert.direct_verdict = cmp.equal


def check_realization(f: TropicalPolynomial, target: WeightedComplex, mode: str = "both",
                      seed: int = 0) -> RealizationCertificate:
    """Decide whether ``V(f)`` tropicalizes to the weighted complex ``target``."""
    if mode not in ("direct", "sampled", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if target.ambient_dim != f.num_vars:
        raise ValueError("target and polynomial live in different ambient spaces")
    if target.dim != f.num_vars - 1:
        raise ValueError("target must have codimension 1")
    if len(f.terms) < 2:
        raise ValueError("need at least two terms")
    cert = RealizationCertificate(mode)
    if mode in ("sampled", "both"):
        _sampled(f, target, seed, cert)
    if mode in ("direct", "both"):
        _direct(f, target, cert)
    return cert
