"""Heighted character configurations, upper hulls, weight subdivisions and
weight complexes.

For characters ``A`` in ``Z^n`` with heights ``a``, the piecewise-linear
function ``F(w) = min_chi(<chi, w> + a(chi))`` has a linearity complex (the
weight complex) dual to the subdivision of ``conv(A)`` induced by the lower
boundary of the lifted configuration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import dot, rank
from .polyhedra import Polyhedron, PolyhedralComplex

INF = math.inf
Character = tuple[int, ...]


@dataclass(frozen=True)
class HeightedConfiguration:
    """Characters with heights and, optionally, per-slot coordinate valuations."""

    characters: tuple[Character, ...]
    heights: tuple[Fraction, ...]
    slots: tuple[tuple, ...] | None = None

    def __post_init__(self):
        chars = tuple(tuple(int(x) for x in c) for c in self.characters)
        object.__setattr__(self, "characters", chars)
        object.__setattr__(self, "heights", tuple(Fraction(h) for h in self.heights))
        if not chars:
            raise ValueError("configuration needs at least one character")
        if len(set(chars)) != len(chars):
            raise ValueError("characters must be distinct")
        if len({len(c) for c in chars}) != 1:
            raise ValueError("characters must share one dimension")
        if len(self.heights) != len(chars):
            raise ValueError("one height per character")
        if self.slots is not None:
            slots = tuple(tuple(_valuation(v) for v in s) for s in self.slots)
            object.__setattr__(self, "slots", slots)
            if len(slots) != len(chars):
                raise ValueError("one slot list per character")
            for h, s in zip(self.heights, slots):
                if not s or min(s) != h:
                    raise ValueError("height must be the minimum slot valuation")

    @classmethod
    def from_slots(cls, characters: Sequence[Sequence[int]], slots: Sequence[Sequence]) -> HeightedConfiguration:
        """Heights from slot valuations; characters whose slots are all infinite are dropped."""
        keep_c, keep_s = [], []
        for c, s in zip(characters, slots):
            s = tuple(_valuation(v) for v in s)
            if s and min(s) != INF:
                keep_c.append(tuple(c))
                keep_s.append(s)
        return cls(tuple(keep_c), tuple(min(s) for s in keep_s), tuple(keep_s))

    @property
    def ambient_dim(self) -> int:
        return len(self.characters[0])

    @property
    def slot_counts(self) -> tuple[int, ...]:
        if self.slots is None:
            return tuple(1 for _ in self.characters)
        return tuple(len(s) for s in self.slots)

    def slot_valuations(self) -> dict[Character, tuple]:
        """Valuation assignment ``character -> slot valuations`` (heights if no slots)."""
        if self.slots is None:
            return {c: (h,) for c, h in zip(self.characters, self.heights)}
        return dict(zip(self.characters, self.slots))

    def value(self, i: int, w: Sequence) -> Fraction:
        return dot(self.characters[i], w) + self.heights[i]

    def weight_polytope(self) -> Polyhedron:
        return Polyhedron.from_v(self.ambient_dim, self.characters)


def _valuation(v):
    if v == INF or (isinstance(v, str) and v.strip().lower() in ("inf", "infinity")):
        return INF
    return Fraction(v)


def tropical_value(cfg: HeightedConfiguration, w: Sequence) -> Fraction:
    """``F(w) = min_chi(<chi, w> + a(chi))``."""
    return min(cfg.value(i, w) for i in range(len(cfg.characters)))


def argmin_indices(cfg: HeightedConfiguration, w: Sequence) -> frozenset[int]:
    vals = [cfg.value(i, w) for i in range(len(cfg.characters))]
    m = min(vals)
    return frozenset(i for i, v in enumerate(vals) if v == m)


def min_support(cfg: HeightedConfiguration, w: Sequence) -> frozenset[Character]:
    """Characters attaining the minimum of ``<chi, w> + a(chi)``."""
    return frozenset(cfg.characters[i] for i in argmin_indices(cfg, w))


# ---------------------------------------------------------------------------
# upper hull and subdivision

@dataclass(frozen=True)
class HullFace:
    characters: frozenset[int]      # indices of all characters lifted onto the face
    extremal: frozenset[int]        # indices of lifted points that are vertices of the face
    dim: int


@dataclass
class UpperHull:
    config: HeightedConfiguration
    offset: Fraction                # minimum height
    lifted: tuple[tuple[Fraction, ...], ...]
    faces: list[HullFace]

    @property
    def normalized_lifted(self) -> tuple[tuple[Fraction, ...], ...]:
        """Lifted points translated vertically so the minimum height is 0."""
        return tuple(p[:-1] + (p[-1] - self.offset,) for p in self.lifted)

    @property
    def facets(self) -> list[HullFace]:
        top = max(f.dim for f in self.faces)
        return [f for f in self.faces if f.dim == top]

    @property
    def vertices(self) -> frozenset[int]:
        """Indices of characters whose lifts are vertices of the hull."""
        return frozenset(i for f in self.faces if f.dim == 0 for i in f.extremal)

    def facet_segments(self) -> list[tuple[tuple[Fraction, ...], ...]]:
        return [tuple(self.lifted[i] for i in sorted(f.extremal, key=lambda i: self.lifted[i]))
                for f in self.facets]


def upper_hull(cfg: HeightedConfiguration) -> UpperHull:
    """Bounded faces of ``conv{(chi, a(chi))} + R_{>=0} e_{n+1}``."""
    n = cfg.ambient_dim
    offset = min(cfg.heights)
    lifted = tuple(tuple(Fraction(x) for x in c) + (h,)
                   for c, h in zip(cfg.characters, cfg.heights))
    up = tuple(0 for _ in range(n)) + (1,)
    # the hull is computed on normalized heights; faces do not depend on the shift
    norm = [p[:-1] + (p[-1] - offset,) for p in lifted]
    hull = Polyhedron.from_v(n + 1, norm, [up])
    verts = set(hull.vertices)
    extremal_pts = frozenset(i for i, p in enumerate(norm) if p in verts)
    # incidence of every lifted point (and of the vertical ray, as -1) with each facet
    on_facet, gens = [], []
    for a, b in hull.facets:
        pts = frozenset(i for i, p in enumerate(norm) if dot(a, p) == b)
        on_facet.append(pts)
        g = pts & extremal_pts
        gens.append(g | {-1} if dot(a, up) == 0 else g)
    top = extremal_pts | {-1}
    seen, stack = {top}, [top]
    while stack:
        s = stack.pop()
        for g in gens:
            u = s & g
            if u != s and u not in seen and u - {-1}:
                seen.add(u)
                stack.append(u)
    faces = []
    for s in seen:
        if -1 in s:
            continue
        chars = frozenset(range(len(norm)))
        for pts, g in zip(on_facet, gens):
            if s <= g:
                chars &= pts
        ext = sorted(s)
        base = norm[ext[0]]
        d = rank([[x - y for x, y in zip(norm[i], base)] for i in ext[1:]], n + 1)
        faces.append(HullFace(chars, frozenset(s), d))
    faces.sort(key=lambda f: (f.dim, sorted(f.characters)))
    return UpperHull(cfg, offset, lifted, faces)


@dataclass(frozen=True)
class SubdivisionFace:
    characters: frozenset[Character]    # all on-face characters
    extremal: frozenset[Character]
    polytope: Polyhedron

    @property
    def dim(self) -> int:
        return self.polytope.dim


@dataclass
class WeightSubdivision:
    faces: list[SubdivisionFace]

    @property
    def maximal_faces(self) -> list[SubdivisionFace]:
        top = max(f.dim for f in self.faces)
        return [f for f in self.faces if f.dim == top]


def weight_subdivision(h: UpperHull) -> WeightSubdivision:
    chars = h.config.characters
    faces = []
    for f in h.faces:
        ext = [chars[i] for i in sorted(f.extremal)]
        faces.append(SubdivisionFace(frozenset(chars[i] for i in f.characters), frozenset(ext),
                                     Polyhedron.from_v(h.config.ambient_dim, ext)))
    return WeightSubdivision(faces)


# ---------------------------------------------------------------------------
# weight complex

@dataclass
class WeightComplexStructure:
    config: HeightedConfiguration
    hull: UpperHull
    complex: PolyhedralComplex
    duality: dict            # cell key -> HullFace

    def dual_face(self, cell: Polyhedron) -> HullFace:
        return self.duality[cell.key]

    def dual_characters(self, cell: Polyhedron) -> frozenset[Character]:
        chars = self.config.characters
        return frozenset(chars[i] for i in self.duality[cell.key].characters)

    def cell_of_face(self, face: HullFace) -> Polyhedron:
        for k, f in self.duality.items():
            if f == face:
                return self.complex.cell(k)
        raise KeyError(face)

    @property
    def ambient_dim(self) -> int:
        return self.complex.ambient_dim


def region_of(cfg: HeightedConfiguration, i: int, others: Sequence[int] | None = None) -> Polyhedron:
    """Closed region where character ``i`` attains the minimum."""
    chi, a = cfg.characters[i], cfg.heights[i]
    idx = range(len(cfg.characters)) if others is None else others
    ineqs = []
    for j in idx:
        if j == i:
            continue
        normal = tuple(x - y for x, y in zip(cfg.characters[j], chi))
        ineqs.append((normal, a - cfg.heights[j]))
    return Polyhedron.from_h(cfg.ambient_dim, ineqs)


def weight_complex(cfg: HeightedConfiguration) -> WeightComplexStructure:
    """Linearity complex of ``F`` with its duality to the weight subdivision."""
    hull = upper_hull(cfg)
    maximal = [region_of(cfg, i) for i in sorted(hull.vertices)]
    cx = PolyhedralComplex(cfg.ambient_dim, maximal)
    by_chars = {f.characters: f for f in hull.faces}
    duality = {}
    for cell in cx:
        s = argmin_indices(cfg, cell.relative_interior_point())
        if s not in by_chars:
            raise AssertionError("weight complex cell without a dual hull face")
        duality[cell.key] = by_chars[s]
    return WeightComplexStructure(cfg, hull, cx, duality)


# ---------------------------------------------------------------------------
# admissible condition systems

@dataclass(frozen=True)
class Equality:
    """``min_l v(c_{chi,l}) == value``."""
    character: Character
    value: Fraction


@dataclass(frozen=True)
class Inequality:
    """``v(c_{chi,slot}) >= bound``."""
    character: Character
    slot: int
    bound: Fraction


@dataclass
class AdmissibleConditionSystem:
    """Min-plus constraints on slot valuations reproducing a fixed weight complex.

    Valuations are compared after the global shift that moves the minimum
    slot valuation of ``normalization[0]`` onto ``normalization[1]``.
    """
    normalization: tuple[Character, Fraction]
    equalities: list[Equality]
    inequalities: list[Inequality]
    slot_counts: dict[Character, int] = field(default_factory=dict)


def _lower_hull_value(wc: WeightComplexStructure, chi: Sequence[int]) -> Fraction:
    """Height of the lower hull of the lifted configuration above ``chi``."""
    cfg = wc.config
    cells = list(wc.complex)
    lowest = min(c.dim for c in cells)
    best = None
    for c in cells:
        if c.dim != lowest:
            continue
        w = c.relative_interior_point()
        v = tropical_value(cfg, w) - dot(chi, w)
        if best is None or v > best:
            best = v
    return best


def admissible_conditions(wc: WeightComplexStructure, cfg: HeightedConfiguration | None = None
                          ) -> AdmissibleConditionSystem:
    """Conditions on the coefficient valuations of ``cfg`` that fix the weight complex ``wc``.

    Hull vertices get an equality on the minimum over their slots; every
    other character gets a lower bound on each slot, namely the height of the
    hull above it, i.e. ``(sum m_i a(chi_i)) / m`` for an integer convex
    dependency ``m chi = sum m_i chi_i`` on the face containing it.
    """
    if cfg is None:
        cfg = wc.config
    target = wc.config
    if cfg.weight_polytope().key != target.weight_polytope().key:
        raise ValueError("configuration and weight complex have different weight polytopes")
    heights = dict(zip(target.characters, target.heights))
    hull_vertices = {target.characters[i] for i in wc.hull.vertices}
    lowest = min(heights[c] for c in hull_vertices)
    chi_min = min(c for c in hull_vertices if heights[c] == lowest)
    eqs, ineqs = [], []
    for chi, r in zip(cfg.characters, cfg.slot_counts):
        if chi in hull_vertices:
            eqs.append(Equality(chi, heights[chi]))
        else:
            b = _lower_hull_value(wc, chi)
            ineqs.extend(Inequality(chi, l, b) for l in range(r))
    missing = hull_vertices - set(cfg.characters)
    for chi in sorted(missing):
        eqs.append(Equality(chi, heights[chi]))
    return AdmissibleConditionSystem((chi_min, heights[chi_min]), eqs, ineqs,
                                     dict(zip(cfg.characters, cfg.slot_counts)))


@dataclass
class ConditionCheck:
    ok: bool
    witness: object = None
    shift: Fraction | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_conditions(vals: Mapping[Character, Sequence], system: AdmissibleConditionSystem) -> ConditionCheck:
    """Evaluate a condition system on a slot-valuation assignment.

    ``vals`` maps each character to its slot valuations (``INF`` for a zero
    coordinate).  Characters not listed count as all-infinite.
    """
    vals = {tuple(k): tuple(_valuation(x) for x in v) for k, v in vals.items()}
    for chi, r in system.slot_counts.items():
        if chi in vals and len(vals[chi]) != r:
            raise ValueError(f"assignment for {chi} has {len(vals[chi])} slots, expected {r}")
    chi_min, target = system.normalization
    base = min(vals.get(chi_min, (INF,)))
    if base == INF:
        return ConditionCheck(False, Equality(chi_min, INF))
    shift = target - base
    for e in system.equalities:
        got = min(vals.get(e.character, (INF,)))
        got = got + shift if got != INF else INF
        if got != e.value:
            return ConditionCheck(False, Equality(e.character, got), shift)
    for q in system.inequalities:
        slots = vals.get(q.character)
        got = INF if slots is None else slots[q.slot]
        got = got + shift if got != INF else INF
        if got < q.bound:
            return ConditionCheck(False, Inequality(q.character, q.slot, got), shift)
    return ConditionCheck(True, None, shift)
