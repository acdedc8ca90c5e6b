"""Exact rational polyhedra and polyhedral complexes.

A :class:`Polyhedron` is given by inequalities ``<normal, w> >= rhs`` and
equalities ``<normal, w> = rhs``; its vertices, rays and lineality space are
computed on demand with the double description method.  Both descriptions
are brought to a canonical form, and the canonical H-description is the
identity key of a cell.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Sequence

from .dd import cone_generators
from .linalg import OrthogonalProjector, dot, nullspace, primitive, rank, rref, scale_row

Point = tuple[Fraction, ...]
Halfspace = tuple[tuple[Fraction, ...], Fraction]


class EmptyPolyhedronError(ValueError):
    pass


def _frac_vec(v) -> Point:
    return tuple(x if type(x) is Fraction else Fraction(x) for x in v)


def _int_homogenized(normal, rhs) -> tuple[int, ...]:
    """Integer row for ``(normal, -rhs) . (x, s) >= 0``."""
    row = [Fraction(x) for x in normal] + [-Fraction(rhs)]
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    return tuple(int(x * den) for x in row)


class Polyhedron:
    """A rational polyhedron in ``Q^n``.

    Instances are treated as immutable values.  Use :meth:`from_h` or
    :meth:`from_v` to construct.
    """

    __slots__ = ("ambient_dim", "_ineqs", "_eqs", "_vdata", "__dict__")

    def __init__(self, ambient_dim: int, ineqs: Iterable = (), eqs: Iterable = (),
                 *, _vdata=None):
        self.ambient_dim = ambient_dim
        self._ineqs: tuple[Halfspace, ...] = tuple(
            (_frac_vec(a), b if type(b) is Fraction else Fraction(b)) for a, b in ineqs)
        self._eqs: tuple[Halfspace, ...] = tuple(
            (_frac_vec(a), b if type(b) is Fraction else Fraction(b)) for a, b in eqs)
        for a, _ in self._ineqs + self._eqs:
            if len(a) != ambient_dim:
                raise ValueError("normal vector has wrong length")
        self._vdata = _vdata

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_h(cls, ambient_dim: int, ineqs: Iterable = (), eqs: Iterable = ()) -> Polyhedron:
        return cls(ambient_dim, ineqs, eqs)

    @classmethod
    def from_v(cls, ambient_dim: int, vertices: Iterable, rays: Iterable = (),
               lineality: Iterable = ()) -> Polyhedron:
        """Polyhedron ``conv(vertices) + cone(rays) + span(lineality)``."""
        verts = [_frac_vec(v) for v in vertices]
        if not verts:
            raise EmptyPolyhedronError("a V-polyhedron needs at least one vertex")
        rays = [_frac_vec(r) for r in rays if any(r)]
        lins = [_frac_vec(l) for l in lineality if any(l)]
        # valid inequalities (a, b) <-> y = (a, -b) with y.(v,1) >= 0, y.(r,0) >= 0
        rows = [_int_homogenized(v, -1) for v in verts]
        rows += [_int_homogenized(r, 0) for r in rays]
        eq_rows = [_int_homogenized(l, 0) for l in lins]
        gens, lin = cone_generators(rows, eq_rows, ambient_dim + 1)
        ineqs = [(g[:-1], -Fraction(g[-1])) for g in gens if any(g[:-1])]
        eqs = [(g[:-1], -Fraction(g[-1])) for g in lin]
        return cls(ambient_dim, ineqs, eqs)

    @classmethod
    def whole_space(cls, ambient_dim: int) -> Polyhedron:
        return cls(ambient_dim)

    @classmethod
    def point(cls, p: Sequence) -> Polyhedron:
        return cls.from_v(len(p), [p])

    # -- V-description ------------------------------------------------------
    @cached_property
    def _v(self) -> tuple[tuple[Point, ...], tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
        n = self.ambient_dim
        if self._vdata is not None:
            verts, rays, lins = self._vdata
        else:
            rows = [_int_homogenized(a, b) for a, b in self._ineqs]
            rows.append(tuple([0] * n + [1]))
            eq_rows = [_int_homogenized(a, b) for a, b in self._eqs]
            gens, lin = cone_generators(rows, eq_rows, n + 1)
            verts = [tuple(Fraction(x, g[-1]) for x in g[:-1]) for g in gens if g[-1] > 0]
            rays = [g[:-1] for g in gens if g[-1] == 0]
            lins = [l[:-1] for l in lin]
        if not verts:
            return (), (), ()
        lin_red, _ = rref(lins, n)
        lin_basis = tuple(sorted(primitive(r) for r in lin_red))
        proj = OrthogonalProjector(lin_basis, n)
        vset = sorted(set(proj(v) for v in verts))
        rset = set()
        for r in rays:
            pr = proj(r)
            if any(pr):
                rset.add(primitive(pr))
        return tuple(vset), tuple(sorted(rset)), lin_basis

    @property
    def vertices(self) -> tuple[Point, ...]:
        """Vertices of the pointed part (projected orthogonally to the lineality space)."""
        return self._v[0]

    @property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        """Primitive extreme ray generators, orthogonal to the lineality space."""
        return self._v[1]

    @property
    def lineality(self) -> tuple[tuple[int, ...], ...]:
        return self._v[2]

    @property
    def is_empty(self) -> bool:
        return not self._v[0]

    @cached_property
    def direction_space(self) -> tuple[tuple[Fraction, ...], ...]:
        """Row-reduced basis of the linear space parallel to the affine hull."""
        verts, rays, lins = self._v
        gens = [tuple(x - y for x, y in zip(v, verts[0])) for v in verts[1:]]
        gens += [_frac_vec(r) for r in rays] + [_frac_vec(l) for l in lins]
        red, _ = rref(gens, self.ambient_dim)
        return tuple(tuple(r) for r in red)

    @property
    def dim(self) -> int:
        if self.is_empty:
            raise EmptyPolyhedronError("the empty polyhedron has no dimension")
        return len(self.direction_space)

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    # -- canonical H-description -------------------------------------------
    @cached_property
    def _h(self) -> tuple[tuple[Halfspace, ...], tuple[Halfspace, ...]]:
        if self.is_empty:
            return (), ()
        n = self.ambient_dim
        verts, rays, lins = self._v
        v0 = verts[0]
        eq_rows, eq_piv = rref(nullspace(self.direction_space, n), n)
        eqs = []
        for row in eq_rows:
            a, _ = scale_row(row, 0)
            eqs.append((_frac_vec(a), Fraction(dot(a, v0))))
        # every facet appears among the rows; facets are the rows whose tight
        # generator sets are inclusion-maximal among proper ones
        den = 1
        for v in verts:
            for x in v:
                den = lcm(den, x.denominator)
        iverts = [tuple(int(x * den) for x in v) for v in verts]
        cands = []
        for a, b in self._ineqs:
            red = list(a)
            for row, p in zip(eq_rows, eq_piv):
                if red[p]:
                    c = red[p]
                    red = [x - c * y for x, y in zip(red, row)]
            if not any(red):
                continue
            # integer arithmetic from here on; positive rescaling keeps the facet
            pr = primitive(red)
            vals = [sum(x * y for x, y in zip(pr, v)) for v in iverts]
            m = min(vals)
            tight = frozenset([i for i, x in enumerate(vals) if x == m]
                              + [-1 - j for j, r in enumerate(rays) if sum(x * y for x, y in zip(pr, r)) == 0])
            if len(tight) == len(verts) + len(rays):
                continue
            cands.append((tight, pr, m))
        facets = set()
        for tight, pr, m in cands:
            if any(tight < other for other, _, _ in cands):
                continue
            facets.add((_frac_vec(pr), Fraction(m, den)))
        return tuple(sorted(eqs)), tuple(sorted(facets))

    @property
    def equalities(self) -> tuple[Halfspace, ...]:
        return self._h[0]

    @property
    def facets(self) -> tuple[Halfspace, ...]:
        """Facet-defining inequalities ``<a, w> >= b``, canonical and irredundant."""
        return self._h[1]

    @cached_property
    def key(self) -> tuple:
        if self.is_empty:
            return (self.ambient_dim, "empty")
        return (self.ambient_dim, self._h[0], self._h[1])

    def __eq__(self, other) -> bool:
        return isinstance(other, Polyhedron) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Polyhedron(empty in Q^{self.ambient_dim})"
        return (f"Polyhedron(dim={self.dim}, vertices={[tuple(map(str, v)) for v in self.vertices]}, "
                f"rays={list(self.rays)}, lineality={list(self.lineality)})")

    # -- queries ------------------------------------------------------------
    def relative_interior_point(self) -> Point:
        """Centroid of the vertices plus the sum of the primitive rays."""
        if self.is_empty:
            raise EmptyPolyhedronError("empty polyhedron has no interior point")
        verts = self.vertices
        k = len(verts)
        p = [sum(v[i] for v in verts) / k for i in range(self.ambient_dim)]
        for r in self.rays:
            p = [x + y for x, y in zip(p, r)]
        return tuple(p)

    def contains_point(self, w: Sequence) -> bool:
        if self.is_empty:
            return False
        w = _frac_vec(w)
        return (all(dot(a, w) == b for a, b in self.equalities)
                and all(dot(a, w) >= b for a, b in self.facets))

    def relint_contains(self, w: Sequence) -> bool:
        if self.is_empty:
            return False
        w = _frac_vec(w)
        return (all(dot(a, w) == b for a, b in self.equalities)
                and all(dot(a, w) > b for a, b in self.facets))

    def contains(self, other: Polyhedron) -> bool:
        """Whether ``other`` is a subset of ``self``."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        for a, b in self.equalities:
            if any(dot(a, v) != b for v in other.vertices):
                return False
            if any(dot(a, r) != 0 for r in other.rays + other.lineality):
                return False
        for a, b in self.facets:
            if any(dot(a, v) < b for v in other.vertices):
                return False
            if any(dot(a, r) < 0 for r in other.rays):
                return False
            if any(dot(a, l) != 0 for l in other.lineality):
                return False
        return True

    def intersection(self, other: Polyhedron) -> Polyhedron:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Polyhedron(self.ambient_dim, self.facets + other.facets,
                          self.equalities + other.equalities)

    def with_constraints(self, ineqs: Iterable = (), eqs: Iterable = ()) -> Polyhedron:
        return Polyhedron(self.ambient_dim, self.facets + tuple(ineqs),
                          self.equalities + tuple(eqs))

    @cached_property
    def _int_vertices(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        den = 1
        for v in self.vertices:
            for x in v:
                den = lcm(den, x.denominator)
        return den, tuple(tuple(int(x * den) for x in v) for v in self.vertices)

    def side(self, a: Sequence, b) -> int:
        """+1/-1 if the polyhedron lies weakly on one side of ``<a,w> = b`` and
        meets the open side; 0 if contained in the hyperplane; 2 if it is cut."""
        ia, fb = scale_row(a, b)
        if not any(ia):
            fb = Fraction(b)
            return 0 if fb == 0 else (1 if fb < 0 else -1)
        if any(sum(x * y for x, y in zip(ia, l)) for l in self.lineality):
            return 2
        den, iverts = self._int_vertices
        # compare den * <a, v> against den * b in integers
        rhs = fb * den
        hi = lo = False
        for v in iverts:
            x = sum(p * q for p, q in zip(ia, v))
            if x > rhs:
                hi = True
            elif x < rhs:
                lo = True
        for r in self.rays:
            x = sum(p * q for p, q in zip(ia, r))
            if x > 0:
                hi = True
            elif x < 0:
                lo = True
        if hi and lo:
            return 2
        if hi:
            return 1
        if lo:
            return -1
        return 0

    def translate(self, v: Sequence) -> Polyhedron:
        v = _frac_vec(v)
        return Polyhedron.from_v(self.ambient_dim,
                                 [tuple(x + y for x, y in zip(p, v)) for p in self.vertices],
                                 self.rays, self.lineality)

    def negate(self) -> Polyhedron:
        return Polyhedron.from_v(self.ambient_dim,
                                 [tuple(-x for x in p) for p in self.vertices],
                                 [tuple(-x for x in r) for r in self.rays], self.lineality)

    # -- faces --------------------------------------------------------------
    def faces(self) -> list[Polyhedron]:
        """All nonempty faces, including the polyhedron itself."""
        if self.is_empty:
            return []
        verts, rays, lins = self._v
        gens = list(range(len(verts) + len(rays)))
        nv = len(verts)
        incid = []
        for a, b in self.facets:
            s = frozenset([i for i, v in enumerate(verts) if dot(a, v) == b]
                          + [nv + j for j, r in enumerate(rays) if dot(a, r) == 0])
            incid.append(s)
        top = frozenset(gens)
        seen = {top}
        stack = [top]
        while stack:
            s = stack.pop()
            for t in incid:
                u = s & t
                if u != s and u not in seen and any(i < nv for i in u):
                    seen.add(u)
                    stack.append(u)
        out = []
        for s in seen:
            if s == top:
                out.append(self)
                continue
            tight_eqs = [f for f, t in zip(self.facets, incid) if s <= t]
            fv = [verts[i] for i in sorted(s) if i < nv]
            fr = [rays[i - nv] for i in sorted(s) if i >= nv]
            face = Polyhedron(self.ambient_dim, self.facets, self.equalities + tuple(tight_eqs),
                              _vdata=(fv, fr, list(lins)))
            out.append(face)
        return out

    def facet_polyhedra(self) -> list[Polyhedron]:
        d = self.dim
        return [f for f in self.faces() if f.dim == d - 1]


# ---------------------------------------------------------------------------
# polyhedral complexes

class PolyhedralComplex:
    """A finite polyhedral complex, closed under taking faces.

    Cells are stored by canonical key.  The complex never claims to be the
    coarsest structure on its support; comparisons of supports go through
    :func:`common_refinement`.
    """

    def __init__(self, ambient_dim: int, cells: Iterable[Polyhedron] = (), *, close: bool = True):
        self.ambient_dim = ambient_dim
        self._closed = close
        store: dict[tuple, Polyhedron] = {}
        seen: set = set()
        for c in cells:
            if c.ambient_dim != ambient_dim:
                raise ValueError("cell has the wrong ambient dimension")
            if c.is_empty:
                continue
            if close:
                for f in c.faces():
                    # V-data is canonical too and far cheaper than the H-key
                    if f._v in seen:
                        continue
                    seen.add(f._v)
                    store.setdefault(f.key, f)
            else:
                store.setdefault(c.key, c)
        self._cells = dict(sorted(store.items(), key=lambda kv: (kv[1].dim, kv[0])))

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Polyhedron]:
        return iter(self._cells.values())

    def __contains__(self, cell: Polyhedron) -> bool:
        return cell.key in self._cells

    @property
    def cells(self) -> list[Polyhedron]:
        return list(self._cells.values())

    @property
    def keys(self) -> list[tuple]:
        return list(self._cells)

    def cell(self, key) -> Polyhedron:
        return self._cells[key]

    @property
    def dim(self) -> int:
        return max((c.dim for c in self), default=-1)

    def cells_of_dim(self, k: int) -> list[Polyhedron]:
        return [c for c in self if c.dim == k]

    @cached_property
    def maximal_cells(self) -> list[Polyhedron]:
        cells = self.cells
        if self._closed:
            # in a face-closed complex the maximal cells are those that are no proper face
            proper = set()
            for c in cells:
                for f in c.faces():
                    if f is not c:
                        proper.add(f._v)
            return [c for c in cells if c._v not in proper]
        return [c for c in cells
                if not any(d.dim > c.dim and d.contains(c) for d in cells)]

    @cached_property
    def ids(self) -> dict[tuple, str]:
        """Deterministic string ids, ordered by (dimension, canonical key)."""
        return {k: f"c{i}" for i, k in enumerate(self._cells)}

    @cached_property
    def face_relation(self) -> list[tuple[tuple, tuple]]:
        """Pairs ``(cell key, face key)``, reflexive and transitive."""
        cells = self.cells
        out = []
        for c in cells:
            for f in cells:
                if f.dim <= c.dim and (f is c or c.contains(f)):
                    out.append((c.key, f.key))
        return out

    def faces_of(self, cell: Polyhedron, dim: int | None = None) -> list[Polyhedron]:
        return [f for f in self if (dim is None or f.dim == dim) and cell.contains(f)]

    def cofaces_of(self, cell: Polyhedron, dim: int | None = None) -> list[Polyhedron]:
        return [c for c in self if (dim is None or c.dim == dim) and c.contains(cell)]

    @property
    def is_pure(self) -> bool:
        d = self.dim
        return all(c.dim == d for c in self.maximal_cells)

    def __repr__(self) -> str:
        return f"PolyhedralComplex(ambient_dim={self.ambient_dim}, cells={len(self)}, dim={self.dim})"


def skeleton(c: PolyhedralComplex, k: int) -> PolyhedralComplex:
    """Subcomplex of cells of dimension at most ``k``."""
    return PolyhedralComplex(c.ambient_dim, [p for p in c if p.dim <= k], close=False)


def contains(c: PolyhedralComplex, w: Sequence) -> Polyhedron | None:
    """The cell whose relative interior contains ``w``, if any."""
    for p in c:
        if p.relint_contains(w):
            return p
    return None


def common_refinement(c1: PolyhedralComplex, c2: PolyhedralComplex) -> PolyhedralComplex:
    """All nonempty intersections of cells of ``c1`` and ``c2``."""
    if c1.ambient_dim != c2.ambient_dim:
        raise ValueError("ambient dimensions differ")
    pieces = []
    for s in c1.maximal_cells:
        for t in c2.maximal_cells:
            p = s.intersection(t)
            if not p.is_empty:
                pieces.append(p)
    return PolyhedralComplex(c1.ambient_dim, pieces)


def _covered_by(c1: PolyhedralComplex, refinement: PolyhedralComplex) -> bool:
    """Whether every cell of ``c1`` is the union of the refinement cells inside it."""
    for s in c1.maximal_cells:
        k = s.dim
        pieces = [p for p in refinement.cells_of_dim(k) if s.contains(p)]
        if not pieces:
            return False
        if k == 0:
            continue
        count: dict[tuple, int] = {}
        interior: dict[tuple, bool] = {}
        for p in pieces:
            for f in p.facet_polyhedra():
                count[f.key] = count.get(f.key, 0) + 1
                if f.key not in interior:
                    interior[f.key] = s.relint_contains(f.relative_interior_point())
        for key, n in count.items():
            if interior[key] and n != 2:
                return False
    return True


def support_equal(c1: PolyhedralComplex, c2: PolyhedralComplex) -> bool:
    """Decide ``|c1| == |c2|``."""
    if c1.ambient_dim != c2.ambient_dim:
        return False
    if len(c1) == 0 or len(c2) == 0:
        return len(c1) == len(c2)
    if c1.dim != c2.dim:
        return False
    r = common_refinement(c1, c2)
    return _covered_by(c1, r) and _covered_by(c2, r)


def support_contains(big: PolyhedralComplex, small: PolyhedralComplex) -> bool:
    """Decide ``|small| <= |big|``."""
    if len(small) == 0:
        return True
    r = common_refinement(small, big)
    return _covered_by(small, r)


def subdivide(p: Polyhedron, hyperplanes: Sequence[Halfspace]) -> list[Polyhedron]:
    """Cut ``p`` by every hyperplane ``<a,w> = b`` crossing its relative interior."""
    pieces = [p]
    # only hyperplanes cutting p can cut any of its pieces
    hyperplanes = [(a, b) for a, b in hyperplanes if p.side(a, b) == 2]
    for a, b in hyperplanes:
        nxt = []
        for q in pieces:
            if q.side(a, b) == 2:
                neg_a = tuple(-x for x in a)
                for half in (q.with_constraints([(a, b)]), q.with_constraints([(neg_a, -b)])):
                    if not half.is_empty:
                        nxt.append(half)
            else:
                nxt.append(q)
        pieces = nxt
    return pieces


def hyperplanes_of(p: Polyhedron) -> list[Halfspace]:
    """Facet hyperplanes and affine-hull hyperplanes of a polyhedron."""
    return list(p.equalities) + list(p.facets)


def dedupe_hyperplanes(hs: Iterable[Halfspace]) -> list[Halfspace]:
    out = {}
    for a, b in hs:
        na, nb = scale_row(a, b)
        # orientation-free representative
        first = next(x for x in na if x)
        if first < 0:
            na, nb = tuple(-x for x in na), -nb
        out[(na, nb)] = None
    return [(_frac_vec(a), b) for a, b in sorted(out)]
