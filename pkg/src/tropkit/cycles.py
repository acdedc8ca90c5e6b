"""Weighted balanced polyhedral complexes (tropical cycles)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .lattice import extend_to_unit, lattice_index, saturated_basis
from .linalg import OrthogonalProjector, det, dot, primitive, rank
from .polyhedra import (Polyhedron, PolyhedralComplex, common_refinement, contains,
                        dedupe_hyperplanes, hyperplanes_of, subdivide, support_equal)

MAX_GENERIC_ATTEMPTS = 32


class NotRegularPointError(ValueError):
    """The point does not lie in the relative interior of a top-dimensional cell."""


class NonGenericError(RuntimeError):
    """No generic perturbation found within the attempt budget."""


class WeightedComplex:
    """A purely ``d``-dimensional polyhedral complex with positive integer weights.

    ``weights`` maps the canonical key of each ``d``-cell to its weight.
    """

    def __init__(self, complex: PolyhedralComplex, weights: dict, dim: int | None = None):
        self.complex = complex
        self.ambient_dim = complex.ambient_dim
        d = complex.dim if dim is None else dim
        self.dim = d
        if len(complex):
            if complex.dim != d or not complex.is_pure:
                raise ValueError("weighted complex must be pure of the stated dimension")
        top = {c.key for c in complex.cells_of_dim(d)}
        if set(weights) != top:
            raise ValueError("weights must be given on exactly the top-dimensional cells")
        for k, m in weights.items():
            if int(m) != m or m < 1:
                raise ValueError("weights must be positive integers")
        self.weights = {k: int(weights[k]) for k in complex.keys if k in weights}

    @classmethod
    def from_cells(cls, ambient_dim: int, cells: Iterable[tuple[Polyhedron, int]],
                   dim: int | None = None) -> WeightedComplex:
        cells = list(cells)
        weights: dict = {}
        for p, m in cells:
            if p.key in weights:
                raise ValueError("duplicate top cell")
            weights[p.key] = m
        cx = PolyhedralComplex(ambient_dim, [p for p, _ in cells])
        if dim is None:
            dim = cx.dim if len(cx) else 0
        return cls(cx, weights, dim)

    @classmethod
    def empty(cls, ambient_dim: int, dim: int) -> WeightedComplex:
        return cls(PolyhedralComplex(ambient_dim), {}, dim)

    @property
    def top_cells(self) -> list[Polyhedron]:
        return self.complex.cells_of_dim(self.dim)

    def weight(self, cell: Polyhedron) -> int:
        return self.weights[cell.key]

    def scaled(self, k: int) -> WeightedComplex:
        return WeightedComplex(self.complex, {c: m * k for c, m in self.weights.items()}, self.dim)

    def __len__(self) -> int:
        return len(self.complex)

    def __repr__(self) -> str:
        return (f"WeightedComplex(dim={self.dim}, ambient_dim={self.ambient_dim}, "
                f"top_cells={len(self.weights)})")


# ---------------------------------------------------------------------------
# lattice data

def direction_lattice(p: Polyhedron) -> list[tuple[int, ...]]:
    """Z-basis of the saturated lattice parallel to ``p``."""
    return saturated_basis(p.direction_space, p.ambient_dim)


def primitive_normal_vector(sigma: Polyhedron, tau: Polyhedron) -> tuple[int, ...]:
    """Lattice vector generating ``N_sigma / N_tau``, pointing from ``tau`` into ``sigma``.

    ``tau`` must be a facet of ``sigma``.  The representative is defined
    modulo ``N_tau``; a deterministic one is returned.
    """
    n = sigma.ambient_dim
    basis = direction_lattice(sigma)
    tau_dirs = list(tau.direction_space)
    proj = OrthogonalProjector(tau_dirs, n)
    into = tuple(x - y for x, y in zip(sigma.relative_interior_point(), tau.relative_interior_point()))
    phi = proj(into)
    if not any(phi):
        raise ValueError("tau is not a facet of sigma")
    g = primitive([dot(phi, b) for b in basis])
    y = extend_to_unit(g)
    u = [sum(c * b[i] for c, b in zip(y, basis)) for i in range(n)]
    if dot(phi, u) < 0:
        u = [-x for x in u]
    return tuple(int(x) for x in u)


@dataclass
class BalanceReport:
    balanced: bool
    cell: Polyhedron | None = None
    residual: tuple[int, ...] | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.balanced


def is_balanced(c: WeightedComplex) -> BalanceReport:
    """Check the balancing condition at every codimension-one cell.

    At each ``(d-1)``-cell ``tau`` the weighted sum of primitive generators
    ``u_{sigma/tau}`` over the ``d``-cells ``sigma`` containing it must lie in
    the linear span of ``tau``.  On failure the report carries ``tau`` and
    the residual vector.
    """
    d = c.dim
    if d <= 0 or len(c.complex) == 0:
        return BalanceReport(True)
    n = c.ambient_dim
    tops = c.top_cells
    checked = 0
    for tau in c.complex.cells_of_dim(d - 1):
        star = [s for s in tops if s.contains(tau)]
        if not star:
            raise ValueError("complex is missing face data")
        total = [0] * n
        for s in star:
            u = primitive_normal_vector(s, tau)
            m = c.weights[s.key]
            total = [x + m * y for x, y in zip(total, u)]
        checked += 1
        tau_dirs = list(tau.direction_space)
        if rank(tau_dirs + [total], n) != len(tau_dirs):
            return BalanceReport(False, tau, tuple(total), checked)
    return BalanceReport(True, checked=checked)


def _is_regular_star(c: WeightedComplex, cell: Polyhedron) -> list[Polyhedron] | None:
    """Top cells around ``cell`` if they form a neighbourhood inside one affine space."""
    star = [s for s in c.top_cells if s.contains(cell)]
    if not star:
        return None
    span = star[0].direction_space
    if any(s.direction_space != span for s in star):
        return None
    count: dict = {}
    for s in star:
        for f in s.facet_polyhedra():
            if f.contains(cell):
                count[f.key] = count.get(f.key, 0) + 1
    if any(v != 2 for v in count.values()):
        return None
    return star


def multiplicity_at(c: WeightedComplex, w: Sequence) -> int:
    """Weight of the top cell around the regular point ``w``."""
    cell = contains(c.complex, w)
    if cell is None:
        raise NotRegularPointError(f"{tuple(map(str, w))} is not in the support")
    if cell.dim == c.dim:
        return c.weights[cell.key]
    star = _is_regular_star(c, cell)
    if star is None:
        raise NotRegularPointError(f"{tuple(map(str, w))} is not a regular point")
    ws = {c.weights[s.key] for s in star}
    if len(ws) != 1:
        raise NotRegularPointError("multiplicity is not locally constant at this point")
    return ws.pop()


def pushforward_weights(c: WeightedComplex, refinement: PolyhedralComplex) -> WeightedComplex:
    """Weights on a refinement of ``c`` (its top cells inherit the weight of their carrier)."""
    weights = {}
    cells = []
    for p in refinement.cells_of_dim(c.dim):
        carrier = contains(c.complex, p.relative_interior_point())
        if carrier is None or carrier.dim != c.dim:
            continue
        weights[p.key] = c.weights[carrier.key]
        cells.append(p)
    return WeightedComplex(PolyhedralComplex(c.ambient_dim, cells), weights, c.dim)


def refine(c: WeightedComplex, other: PolyhedralComplex) -> WeightedComplex:
    """Refine ``c`` along the cells of ``other`` (support of ``c`` is kept)."""
    pieces = []
    for s in c.top_cells:
        parts = [s]
        for t in other.maximal_cells:
            hs = hyperplanes_of(t)
            parts = [q for p in parts for q in subdivide(p, hs)]
        pieces.extend(parts)
    weights = {}
    for p in pieces:
        carrier = contains(c.complex, p.relative_interior_point())
        weights[p.key] = c.weights[carrier.key]
    return WeightedComplex(PolyhedralComplex(c.ambient_dim, pieces), weights, c.dim)


@dataclass
class CycleComparison:
    equal: bool
    support_equal: bool
    mismatches: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.equal


def compare_cycles(a: WeightedComplex, b: WeightedComplex) -> CycleComparison:
    """Equality of supports and of weights on the common refinement."""
    if a.ambient_dim != b.ambient_dim:
        return CycleComparison(False, False)
    if not support_equal(a.complex, b.complex):
        return CycleComparison(False, False)
    if len(a.complex) == 0:
        return CycleComparison(True, True)
    r = common_refinement(a.complex, b.complex)
    mism = []
    for p in r.cells_of_dim(a.dim):
        w = p.relative_interior_point()
        ca, cb = contains(a.complex, w), contains(b.complex, w)
        ma = a.weights.get(ca.key) if ca is not None else None
        mb = b.weights.get(cb.key) if cb is not None else None
        if ma != mb:
            mism.append((w, ma, mb))
    return CycleComparison(not mism, True, mism)


def cycle_equal(a: WeightedComplex, b: WeightedComplex) -> bool:
    return compare_cycles(a, b).equal


# ---------------------------------------------------------------------------
# overlays and Minkowski sums

def overlay(ambient_dim: int, dim: int, pieces: Sequence[tuple[Polyhedron, int]]) -> WeightedComplex:
    """Weighted sum of possibly overlapping ``dim``-polyhedra as a cycle.

    Every piece is cut by the hyperplane arrangement of all pieces, so the
    fragments are closed faces of one arrangement; weights of coinciding
    fragments add.
    """
    if not pieces:
        return WeightedComplex.empty(ambient_dim, dim)
    hs = dedupe_hyperplanes(h for p, _ in pieces for h in hyperplanes_of(p))
    weights: dict = {}
    cells: dict = {}
    for p, m in pieces:
        for q in subdivide(p, hs):
            if q.dim != dim:
                continue
            cells.setdefault(q.key, q)
            weights[q.key] = weights.get(q.key, 0) + m
    cx = PolyhedralComplex(ambient_dim, cells.values())
    return WeightedComplex(cx, weights, dim)


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    verts = [tuple(x + y for x, y in zip(a, b)) for a in p.vertices for b in q.vertices]
    return Polyhedron.from_v(p.ambient_dim, verts, p.rays + q.rays, p.lineality + q.lineality)


def stable_minkowski_sum(c: WeightedComplex, d: WeightedComplex, seed: int = 0) -> WeightedComplex:
    """Stable Minkowski sum of two cycles.

    Pairs of top cells whose direction spaces meet only in zero contribute
    ``sigma + tau`` with weight ``m(sigma) m(tau) [N_{sigma+tau} : N_sigma + N_tau]``;
    all other pairs vanish in the limit of generic translates.  Minkowski sums
    are translation-equivariant, so ``seed`` does not influence the result.
    """
    n = c.ambient_dim
    if d.ambient_dim != n:
        raise ValueError("ambient dimensions differ")
    k = c.dim + d.dim
    if k > n:
        raise ValueError("dimensions add up to more than the ambient dimension")
    pieces = []
    for s in c.top_cells:
        ls = direction_lattice(s)
        for t in d.top_cells:
            lt = direction_lattice(t)
            if rank(list(ls) + list(lt), n) != k:
                continue
            idx = lattice_index(list(ls) + list(lt), n)
            pieces.append((minkowski_sum(s, t), c.weights[s.key] * d.weights[t.key] * idx))
    return overlay(n, k, pieces)


# ---------------------------------------------------------------------------
# standard tropical linear spaces

def standard_linear_space(n: int, k: int, *, negated: bool = False,
                          apex: Sequence | None = None) -> WeightedComplex:
    """Fan of cones spanned by ``k``-subsets of ``{e_0, ..., e_n}``, ``e_0 = -sum e_i``.

    All weights are 1.  ``negated`` flips every generator.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    gens = [tuple(-1 for _ in range(n))] + [tuple(1 if i == j else 0 for j in range(n))
                                             for i in range(n)]
    if negated:
        gens = [tuple(-x for x in g) for g in gens]
    origin = tuple(Fraction(0) for _ in range(n)) if apex is None else tuple(Fraction(x) for x in apex)
    if k == 0:
        return WeightedComplex.from_cells(n, [(Polyhedron.point(origin), 1)], dim=0)
    cones = [(Polyhedron.from_v(n, [origin], list(sub)), 1) for sub in combinations(gens, k)]
    return WeightedComplex.from_cells(n, cones, dim=k)


# ---------------------------------------------------------------------------
# degrees

def lattice_volume(p: Polyhedron) -> int:
    """Normalized volume (``r!`` times Euclidean volume) of a full-dimensional lattice polytope."""
    if not p.is_bounded:
        raise ValueError("polytope must be bounded")
    r = p.ambient_dim
    if p.dim < r:
        return 0
    total = Fraction(0)
    for simplex in _pulling_triangulation(p):
        v0 = simplex[0]
        m = [[x - y for x, y in zip(v, v0)] for v in simplex[1:]]
        total += abs(det(m))
    if total.denominator != 1:
        raise ValueError("vertices are not lattice points")
    return int(total)


def _pulling_triangulation(p: Polyhedron) -> list[tuple]:
    verts = p.vertices
    if p.dim == 0:
        return [(verts[0],)]
    v0 = verts[0]
    out = []
    for f in p.facet_polyhedra():
        if v0 in f.vertices:
            continue
        for s in _pulling_triangulation(f):
            out.append(s + (v0,))
    return out


def degree_of_subtorus(sublattice: Sequence[Sequence[int]], polytope_vertices: Sequence[Sequence[int]]) -> int:
    """Degree of the closure of a subtorus orbit in the toric embedding given by a lattice polytope.

    The polytope is mapped by ``chi -> (<chi, b_1>, ..., <chi, b_r>)`` for a
    basis ``b`` of the saturation of ``sublattice``; the degree is the
    normalized volume of the image, multiplied by the index of
    ``sublattice`` in its saturation.
    """
    vecs = [tuple(int(x) for x in v) for v in sublattice if any(v)]
    if not vecs:
        return 1
    n = len(vecs[0])
    sat = saturated_basis(vecs, n)
    r = len(sat)
    index = lattice_index(vecs, n)
    image = sorted({tuple(dot(v, b) for b in sat) for v in polytope_vertices})
    poly = Polyhedron.from_v(r, image)
    vol = lattice_volume(poly)
    if vol == 0:
        raise ValueError("subtorus orbit is contracted by the embedding")
    return index * vol


def _generic_vector(n: int, seed: int, attempt: int) -> tuple[Fraction, ...]:
    rng = np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), attempt]))
    den = 7919 * 104729
    nums = rng.integers(-den, den, size=n)
    return tuple(Fraction(int(x), den) + Fraction(1, 3 + i) for i, x in enumerate(nums))


def _transverse_count(c: WeightedComplex, lin: WeightedComplex, v) -> int | None:
    n = c.ambient_dim
    total = 0
    for s in c.top_cells:
        ls = direction_lattice(s)
        for t in lin.top_cells:
            tt = t.translate(v)
            inter = s.intersection(tt)
            if inter.is_empty:
                continue
            lt = direction_lattice(t)
            if rank(list(ls) + list(lt), n) != n or inter.dim != 0:
                return None
            pt = inter.vertices[0]
            if not (s.relint_contains(pt) and tt.relint_contains(pt)):
                return None
            total += c.weights[s.key] * lin.weights[t.key] * lattice_index(list(ls) + list(lt), n)
    return total


def tropical_degree(c: WeightedComplex, seed: int = 0) -> int:
    """Degree of a cycle: stable intersection number with a complementary tropical linear space."""
    n, d = c.ambient_dim, c.dim
    lin = standard_linear_space(n, n - d)
    for attempt in range(MAX_GENERIC_ATTEMPTS):
        v = _generic_vector(n, seed + attempt, 0)
        count = _transverse_count(c, lin, v)
        if count is not None:
            return count
    raise NonGenericError("no generic translate found")
