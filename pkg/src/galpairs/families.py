"""Weighted orthogonal sets over a restricted root fan and their calculus.

An orthogonal set assigns a point Y_P to every chamber P so that points of
wall-adjacent chambers differ by a rational multiple of the wall's coroot.
This module implements the indicator functions tau / tau-hat / delta, the two
alternating-sum kernels built from them, the resulting partition of unity,
exact convex-hull volumes (computed two independent ways), and lattice-point
counting with exponential-polynomial extrapolation.

All boundary values are canonical: an indicator kernel evaluated on a wall is
whatever the alternating sum says, which may differ from closed-hull
membership on that measure-zero set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from . import linalg
from .linalg import Mat, Vec
from .root_data import Cone, RestrictedRootSystem, _parse_vec


# -- orthogonal sets ----------------------------------------------------------


class OrthogonalSet:
    """A chamber-indexed family of points with coroot-directed wall jumps.

    ``points`` maps chamber index -> ambient point.  Validation checks every
    wall-adjacent pair (P, P'): Y_P - Y_P' must be r * (wall coroot oriented
    into P), and records the rational wall coefficients r.  The set is
    *positive* when all coefficients are nonnegative.
    """

    def __init__(self, system: RestrictedRootSystem, points: dict[int, Sequence]):
        self.system = system
        if sorted(points) != sorted(system.chambers):
            raise ValueError("points must be indexed by exactly the chambers")
        self.points: dict[int, Vec] = {p: _parse_vec(v) for p, v in points.items()}
        self.wall_coefficients: dict[tuple[int, int], Fraction] = {}
        self._proj_cache: dict[int, Vec] = {}
        self._validate()

    def _validate(self) -> None:
        sys = self.system
        for p, q in combinations(sys.chambers, 2):
            wall = sys.adjacent_chambers(p, q)
            if wall is None:
                continue
            hyp = sys.hyperplanes[wall]
            coroot = None
            for a, av in sys.chamber_simple_pairs(p):
                c = _proportional_coefficient(a, hyp)
                if c is not None:
                    coroot = av
                    break
            if coroot is None:
                raise ValueError("no simple root along the shared wall")
            diff = linalg.vsub(self.points[p], self.points[q])
            r = _proportional_coefficient(diff, coroot)
            if r is None:
                raise ValueError(
                    f"chambers {p}, {q}: point difference {diff} is not a multiple "
                    f"of the wall coroot {coroot}"
                )
            self.wall_coefficients[(p, q)] = r
            self.wall_coefficients[(q, p)] = r

    @property
    def is_positive(self) -> bool:
        return all(r >= 0 for r in self.wall_coefficients.values())

    def projected(self, cone: int) -> Vec:
        """Y projected onto the span of the cone (independent of the chamber)."""
        if cone not in self._proj_cache:
            sys = self.system
            chamber = min(c for c in sys.chambers if sys.parabolic_leq(c, cone))
            proj = sys.levi_projection(cone)
            self._proj_cache[cone] = linalg.matvec(proj, self.points[chamber])
        return self._proj_cache[cone]

    def verify_projection_coherence(self) -> bool:
        """Check that every chamber below a cone projects to the same point."""
        sys = self.system
        for cone in range(len(sys.cones)):
            proj = sys.levi_projection(cone)
            values = {
                linalg.matvec(proj, self.points[c])
                for c in sys.chambers
                if sys.parabolic_leq(c, cone)
            }
            if len(values) != 1:
                return False
        return True

    # -- constructors and arithmetic -----------------------------------------

    @classmethod
    def special(cls, system: RestrictedRootSystem, x: Sequence) -> "OrthogonalSet":
        """The set Y_P = w_P(x) obtained by sweeping one point around the fan."""
        xv = _parse_vec(x)
        pts = {
            c: linalg.matvec(system.chamber_weyl(c), xv) for c in system.chambers
        }
        return cls(system, pts)

    @classmethod
    def zero(cls, system: RestrictedRootSystem) -> "OrthogonalSet":
        return cls(system, {c: linalg.zero_vec(system.ambient_dim) for c in system.chambers})

    def add(self, other: "OrthogonalSet") -> "OrthogonalSet":
        if other.system is not self.system:
            raise ValueError("orthogonal sets live on different systems")
        return OrthogonalSet(
            self.system,
            {c: linalg.vadd(self.points[c], other.points[c]) for c in self.points},
        )

    def translate(self, v: Sequence) -> "OrthogonalSet":
        vv = _parse_vec(v)
        return OrthogonalSet(self.system, {c: linalg.vadd(p, vv) for c, p in self.points.items()})

    def scale(self, t) -> "OrthogonalSet":
        return OrthogonalSet(self.system, {c: linalg.vscale(t, p) for c, p in self.points.items()})


def _proportional_coefficient(a: Vec, b: Vec) -> Optional[Fraction]:
    """c with a = c * b (None if not proportional).  a = 0 gives c = 0."""
    if linalg.is_zero_vec(a):
        return Fraction(0)
    c = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return None
        else:
            ratio = Fraction(x) / Fraction(y)
            if c is None:
                c = ratio
            elif ratio != c:
                return None
    return c


# -- indicator functions ------------------------------------------------------


def _vanishing_indices(sys: RestrictedRootSystem, p: int, q: int) -> list[int]:
    """Indices into the simple pairs of cone p of roots vanishing on span(q)."""
    key = ("vanish", p, q)
    if key not in sys._cache:
        span = sys.cones[q].span_basis
        pairs = sys.cone_simple_pairs(p)
        sys._cache[key] = [
            i
            for i, (a, _) in enumerate(pairs)
            if all(linalg.dot(a, b) == 0 for b in span)
        ]
    return sys._cache[key]


def tau(sys: RestrictedRootSystem, p: int, q: int, h: Sequence) -> int:
    """1 when every simple root of p that lies in the Levi of q is positive at h."""
    if not sys.parabolic_leq(p, q):
        raise ValueError("tau requires p <= q in the parabolic order")
    hv = _parse_vec(h)
    pairs = sys.cone_simple_pairs(p)
    for i in _vanishing_indices(sys, p, q):
        if linalg.dot(pairs[i][0], hv) <= 0:
            return 0
    return 1


def _dual_basis(sys: RestrictedRootSystem, p: int, q: int) -> list[Vec]:
    """Covectors dual to the coroots of the simple roots of p inside q.

    Each covector pairs to delta with those coroots and vanishes both on the
    span of q and on the coroots of roots vanishing on the span of p.
    """
    key = ("dual", p, q)
    if key not in sys._cache:
        pairs = sys.cone_simple_pairs(p)
        idx = _vanishing_indices(sys, p, q)
        coroots = [pairs[i][1] for i in idx]
        rows = list(coroots)
        rows += list(sys.cones[q].span_basis)
        rows += linalg.independent_subset(
            [sys._coroot_of[a] for a in sys.zero_roots(p)]
        )
        if len(rows) != sys.ambient_dim:
            raise ValueError("degenerate cone pair in dual basis computation")
        duals = []
        for i in range(len(coroots)):
            rhs = [Fraction(1 if j == i else 0) for j in range(len(rows))]
            sol = linalg.solve(rows, rhs)
            if sol is None:
                raise ValueError("dual basis system is singular")
            duals.append(sol)
        sys._cache[key] = duals
    return sys._cache[key]


def tau_hat(sys: RestrictedRootSystem, p: int, q: int, h: Sequence) -> int:
    """1 when every dual-basis covector of (p, q) is positive at h."""
    if not sys.parabolic_leq(p, q):
        raise ValueError("tau_hat requires p <= q in the parabolic order")
    hv = _parse_vec(h)
    for w in _dual_basis(sys, p, q):
        if linalg.dot(w, hv) <= 0:
            return 0
    return 1


def delta(sys: RestrictedRootSystem, r: int, h: Sequence) -> int:
    """1 exactly when h lies in the linear span of the cone r."""
    hv = _parse_vec(h)
    for a in sys.zero_roots(r):
        if linalg.dot(a, hv) != 0:
            return 0
    return 1


def gamma_cone_pair(sys: RestrictedRootSystem, p: int, q: int, h: Sequence, x: Sequence) -> int:
    """Alternating sum over p <= R <= q of tau^R_p(h) * tau_hat^q_R(h - x)."""
    if not sys.parabolic_leq(p, q):
        raise ValueError("gamma requires p <= q in the parabolic order")
    hv = _parse_vec(h)
    xv = _parse_vec(x)
    hmx = linalg.vsub(hv, xv)
    total = 0
    dim_q = sys.cones[q].dim
    for r in sys.interval(p, q):
        t = tau(sys, p, r, hv)
        if t == 0:
            continue
        th = tau_hat(sys, r, q, hmx)
        if th == 0:
            continue
        total += (-1) ** ((sys.cones[r].dim - dim_q) % 2)
    return total


def gamma_family(sys: RestrictedRootSystem, q: int, h: Sequence, y: OrthogonalSet) -> int:
    """Sum over cones R <= q whose span contains h of the kernel at Y's projection."""
    hv = _parse_vec(h)
    total = 0
    for r in sys.cones_below(q):
        if delta(sys, r, hv) == 0:
            continue
        total += gamma_cone_pair(sys, r, q, hv, y.projected(r))
    return total


def partition_of_unity_value(sys: RestrictedRootSystem, h: Sequence, y: OrthogonalSet) -> int:
    """Sum over all cones Q of gamma_family * tau^G_Q(h - Y_Q); must be 1."""
    hv = _parse_vec(h)
    g = sys.full_cone().index
    total = 0
    for cone in range(len(sys.cones)):
        arg = linalg.vsub(hv, y.projected(cone))
        if tau(sys, cone, g, arg) == 0:
            continue
        total += gamma_family(sys, cone, hv, y)
    return total


def partition_of_unity_check(
    sys: RestrictedRootSystem, y: OrthogonalSet, points: Sequence[Sequence]
) -> list[tuple[Vec, int]]:
    """Evaluate the partition of unity at each point; return the violations."""
    bad = []
    for h in points:
        v = partition_of_unity_value(sys, h, y)
        if v != 1:
            bad.append((_parse_vec(h), v))
    return bad


def verify_levi_coherence(sys: RestrictedRootSystem, y: OrthogonalSet) -> bool:
    """The projected family on each Levi span is again an orthogonal set.

    For every linear span V arising as the span of a cone, the cones with span
    exactly V are the chambers of the induced fan on V.  Two of them are
    wall-adjacent when their sign vectors differ on exactly one class of
    hyperplanes restricting to the same wall of V; the projected points must
    then differ by a rational multiple of the restricted coroot of that wall.
    """
    by_span: dict[tuple, list[int]] = {}
    for c in sys.cones:
        key = tuple(i for i, s in enumerate(c.signs) if s == 0)
        by_span.setdefault(key, []).append(c.index)
    for zero_set, cone_ids in by_span.items():
        if len(cone_ids) < 2:
            continue
        span = sys.cones[cone_ids[0]].span_basis
        # group the active hyperplanes by their restriction direction on V
        active = [i for i in range(len(sys.hyperplanes)) if i not in zero_set]
        classes: list[list[int]] = []
        for i in active:
            ri = tuple(linalg.dot(sys.hyperplanes[i], b) for b in span)
            placed = False
            for cls in classes:
                rj = tuple(linalg.dot(sys.hyperplanes[cls[0]], b) for b in span)
                if _proportional_coefficient(ri, rj) is not None:
                    cls.append(i)
                    placed = True
                    break
            if not placed:
                classes.append([i])
        for qa, qb in combinations(cone_ids, 2):
            sa = sys.cones[qa].signs
            sb = sys.cones[qb].signs
            diff_classes = [
                ci for ci, cls in enumerate(classes) if any(sa[i] != sb[i] for i in cls)
            ]
            if len(diff_classes) != 1:
                continue
            wall = sys.hyperplanes[classes[diff_classes[0]][0]]
            wall_restr = tuple(linalg.dot(wall, b) for b in span)
            coroot = None
            for a, av in sys.cone_simple_pairs(qa):
                a_restr = tuple(linalg.dot(a, b) for b in span)
                if _proportional_coefficient(a_restr, wall_restr) is not None:
                    if sys.restricted_coroot(qa, a) != av:
                        return False
                    coroot = av
                    break
            if coroot is None:
                return False
            d = linalg.vsub(y.projected(qa), y.projected(qb))
            if _proportional_coefficient(d, coroot) is None:
                return False
    return True


def enumerate_cones(sys: RestrictedRootSystem) -> list[Cone]:
    """All cones of the fan (one per realizable sign vector)."""
    return list(sys.cones)


# -- lattice coordinates ------------------------------------------------------


def lattice_coords(sys: RestrictedRootSystem, v: Vec) -> Vec:
    basis = [linalg.vec(b) for b in sys.lattice.basis]
    coords = linalg.coordinates_in_basis(basis, v)
    if coords is None:
        raise ValueError("point is outside the span of the normalization lattice")
    return coords


def _sup_norm(v: Vec) -> Fraction:
    return max((abs(x) for x in v), default=Fraction(0))


# -- exact convex hulls -------------------------------------------------------


class Hull:
    """Exact convex hull of rational points in dimension <= 3.

    Facet inequalities are found by brute force over point subsets; points are
    rescaled to integers first so all subsequent tests are integer-only.
    ``classify`` returns +1 (interior), 0 (boundary) or -1 (outside), where a
    hull of less than full dimension has no interior.
    """

    def __init__(self, points: Sequence[Sequence]):
        pts = [_parse_vec(p) for p in points]
        if not pts:
            raise ValueError("hull of no points")
        self.dim = len(pts[0])
        denoms = [x.denominator for p in pts for x in p]
        self.scale = math.lcm(*denoms) if denoms else 1
        scaled = sorted({tuple(int(x * self.scale) for x in p) for p in pts})
        self.vertices: list[tuple[int, ...]] = scaled
        diffs = [tuple(p[i] - scaled[0][i] for i in range(self.dim)) for p in scaled[1:]]
        self.affine_dim = linalg.rank([linalg.vec(d) for d in diffs]) if diffs else 0
        self.full_dim = self.affine_dim == self.dim
        # linear constraints cutting out the affine span (for degenerate hulls)
        self.span_equations: list[tuple[tuple[int, ...], int]] = []
        if not self.full_dim:
            for nrm in linalg.nullspace([linalg.vec(d) for d in diffs] or [linalg.zero_vec(self.dim)], ncols=self.dim):
                nint = linalg.scale_to_integers(nrm)
                rhs = sum(a * b for a, b in zip(nint, scaled[0]))
                self.span_equations.append((nint, rhs))
        self.facets: list[tuple[tuple[int, ...], int]] = []
        if self.full_dim:
            self.facets = self._find_facets()

    def _find_facets(self) -> list[tuple[tuple[int, ...], int]]:
        pts = self.vertices
        d = self.dim
        facets = set()
        if d == 1:
            lo = min(p[0] for p in pts)
            hi = max(p[0] for p in pts)
            return [((-1,), -lo), ((1,), hi)]
        for subset in combinations(range(len(pts)), d):
            base = pts[subset[0]]
            rows = [tuple(pts[i][j] - base[j] for j in range(d)) for i in subset[1:]]
            normal = _integer_normal(rows, d)
            if normal is None:
                continue
            rhs = sum(a * b for a, b in zip(normal, base))
            vals = [sum(a * b for a, b in zip(normal, p)) - rhs for p in pts]
            if all(v <= 0 for v in vals):
                facets.add((normal, rhs))
            elif all(v >= 0 for v in vals):
                facets.add((tuple(-x for x in normal), -rhs))
        return sorted(facets)

    def classify(self, point: Sequence) -> int:
        p = _parse_vec(point)
        sp = tuple(x * self.scale for x in p)
        for nrm, rhs in self.span_equations:
            if sum(a * b for a, b in zip(nrm, sp)) != rhs:
                return -1
        if not self.full_dim:
            # membership in a lower-dimensional hull counts as boundary
            sub = _project_to_affine_basis(self.vertices, sp)
            if sub is None:
                return -1
            verts2, p2 = sub
            if len(verts2[0]) == 0:
                return 0
            return 0 if Hull(verts2).classify(p2) >= 0 else -1
        on_boundary = False
        for nrm, rhs in self.facets:
            v = sum(a * b for a, b in zip(nrm, sp))
            if v > rhs:
                return -1
            if v == rhs:
                on_boundary = True
        return 0 if on_boundary else 1

    def lattice_classifier(self, basis: Sequence[Vec]) -> Callable[[tuple[int, ...]], int]:
        """Classifier for points given by integer coordinates in a rational basis.

        All facet tests are reduced to integer comparisons up front.
        """
        if not self.full_dim:
            basis_v = list(basis)

            def classify_coords_degenerate(m: tuple[int, ...]) -> int:
                pt = linalg.zero_vec(self.dim)
                for c, b in zip(m, basis_v):
                    pt = linalg.vadd(pt, linalg.vscale(c, b))
                return self.classify(pt)

            return classify_coords_degenerate

        rows = []
        for nrm, rhs in self.facets:
            # condition: sum_i nrm . (scale * basis_i) * m_i <= rhs * scale... the
            # vertices are already scaled, so the test point must be scaled too.
            coeffs = [
                sum(Fraction(nrm[j]) * b[j] for j in range(self.dim)) * self.scale
                for b in basis
            ]
            den = math.lcm(*[c.denominator for c in coeffs] or [1])
            rows.append((
                tuple(int(c * den) for c in coeffs),
                int(Fraction(rhs) * den),
            ))

        def classify_coords(m: tuple[int, ...]) -> int:
            boundary = False
            for coeffs, rhs in rows:
                v = sum(a * b for a, b in zip(coeffs, m))
                if v > rhs:
                    return -1
                if v == rhs:
                    boundary = True
            return 0 if boundary else 1

        return classify_coords

    def volume(self) -> Fraction:
        """Euclidean volume in the coordinates the points were given in."""
        if not self.full_dim:
            return Fraction(0)
        d = self.dim
        pts = self.vertices
        raw: Fraction
        if d == 1:
            raw = Fraction(pts[-1][0] - pts[0][0])
        elif d == 2:
            ordered = _convex_polygon_order(pts)
            raw = _shoelace(ordered)
        elif d == 3:
            centroid = tuple(Fraction(sum(p[i] for p in pts), len(pts)) for i in range(3))
            total = Fraction(0)
            for nrm, rhs in self.facets:
                on_facet = [p for p in pts if sum(a * b for a, b in zip(nrm, p)) == rhs]
                ordered = _order_coplanar_polygon(on_facet, nrm)
                v0 = linalg.vsub(linalg.vec(ordered[0]), centroid)
                for i in range(1, len(ordered) - 1):
                    v1 = linalg.vsub(linalg.vec(ordered[i]), centroid)
                    v2 = linalg.vsub(linalg.vec(ordered[i + 1]), centroid)
                    total += abs(_det3(v0, v1, v2))
            raw = total / 6
        else:
            raise ValueError("volume implemented for dimension <= 3")
        return raw / Fraction(self.scale) ** d


def _integer_normal(rows: list[tuple[int, ...]], d: int) -> Optional[tuple[int, ...]]:
    """Primitive integer normal to d-1 integer vectors, or None if degenerate."""
    if d == 2:
        (dx, dy) = rows[0]
        if dx == 0 and dy == 0:
            return None
        g = math.gcd(dx, dy)
        return (-dy // g, dx // g)
    if d == 3:
        a, b = rows
        n = (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )
        if n == (0, 0, 0):
            return None
        g = math.gcd(*n)
        return tuple(x // g for x in n)
    raise ValueError("normals implemented for dimension 2 and 3")


def _convex_polygon_order(pts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Order the vertices of a convex polygon counterclockwise (monotone chain)."""
    pts = sorted(set(pts))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _shoelace(ordered: list[tuple[int, ...]]) -> Fraction:
    s = 0
    for i in range(len(ordered)):
        x1, y1 = ordered[i]
        x2, y2 = ordered[(i + 1) % len(ordered)]
        s += x1 * y2 - x2 * y1
    return Fraction(abs(s), 2)


def _order_coplanar_polygon(pts: list, normal: tuple[int, ...]) -> list:
    """Boundary-ordered extreme points of a coplanar 3D point set.

    Points interior to the facet polygon (or interior to its edges) are
    dropped by running a 2D convex hull in planar coordinates.
    """
    pts = sorted(set(pts))
    # planar coordinates: drop the axis with the largest |normal| component,
    # which makes the projection injective on the facet plane
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    flat_to_solid = {(p[keep[0]], p[keep[1]]): p for p in pts}
    ordered_flat = _convex_polygon_order(list(flat_to_solid))
    return [flat_to_solid[f] for f in ordered_flat]


def _det3(a: Vec, b: Vec, c: Vec) -> Fraction:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _project_to_affine_basis(vertices, sp):
    """Coordinates of scaled vertices and point in their affine span, or None."""
    base = linalg.vec(vertices[0])
    diffs = [linalg.vsub(linalg.vec(v), base) for v in vertices[1:]]
    basis = linalg.independent_subset(diffs)
    offset = linalg.vsub(linalg.vec(sp), base)
    coords_p = linalg.coordinates_in_basis(basis, offset) if basis else (() if linalg.is_zero_vec(offset) else None)
    if coords_p is None:
        return None
    verts2 = [tuple()] if not basis else []
    if basis:
        verts2 = []
        for v in vertices:
            c = linalg.coordinates_in_basis(basis, linalg.vsub(linalg.vec(v), base))
            verts2.append(tuple(c))
    else:
        verts2 = [tuple() for _ in vertices]
    return verts2, tuple(coords_p)


# -- hull membership and volumes ----------------------------------------------


def hull_membership(points: Sequence[Sequence], h: Sequence) -> bool:
    """Exact rational test: is h in the convex hull of the points?"""
    return Hull(points).classify(h) >= 0


def hull_position(points: Sequence[Sequence], h: Sequence) -> int:
    """+1 interior, 0 boundary, -1 outside (interior requires a full-dim hull)."""
    return Hull(points).classify(h)


def volume_polytope(y: OrthogonalSet) -> Fraction:
    """Volume of the convex hull of the vertices, in normalization-lattice units."""
    if not y.is_positive:
        raise ValueError("polytope volume requires a positive orthogonal set")
    sys = y.system
    pts = [lattice_coords(sys, p) for p in y.points.values()]
    return Hull(pts).volume()


def _generic_directions(sys: RestrictedRootSystem, count: int) -> list[Vec]:
    """Deterministic covector sequence (1, j, j^2, ...), j = 1, 2, ...,
    skipping directions vanishing on some chamber coroot."""
    out: list[Vec] = []
    j = 1
    coroots = [av for c in sys.chambers for (_, av) in sys.chamber_simple_pairs(c)]
    while len(out) < count:
        mu = linalg.vec([j**i for i in range(sys.ambient_dim)])
        if all(linalg.dot(mu, av) != 0 for av in coroots):
            out.append(mu)
        j += 1
        if j > 1000:
            raise ValueError("could not find generic directions")
    return out


def volume_analytic(y: OrthogonalSet, directions: Optional[Sequence[Sequence]] = None) -> Fraction:
    """Volume as the leading coefficient of the chamber exponential sum.

    For each generic covector mu the value is
    sum_P covol(Z[coroots_P]) * <mu, Y_P>^r / (r! * prod <mu, coroot>), which
    is independent of mu; at least three directions are evaluated and must
    agree exactly.
    """
    sys = y.system
    r = sys.ambient_dim
    if linalg.rank(sys.roots) != r:
        raise ValueError("analytic volume requires roots of full rank")
    basis = [linalg.vec(b) for b in sys.lattice.basis]
    if directions is None:
        mus = _generic_directions(sys, 3)
    else:
        mus = [_parse_vec(m) for m in directions]
        if len(mus) < 3:
            raise ValueError("at least three directions are required")
    values = []
    rfact = math.factorial(r)
    for mu in mus:
        total = Fraction(0)
        for c in sys.chambers:
            pairs = sys.chamber_simple_pairs(c)
            coords = [linalg.coordinates_in_basis(basis, av) for (_, av) in pairs]
            meas = abs(linalg.det(coords))
            num = linalg.dot(mu, y.points[c]) ** r
            den = Fraction(rfact)
            for _, av in pairs:
                d = linalg.dot(mu, av)
                if d == 0:
                    raise ValueError("direction is not generic")
                den *= d
            total += meas * num / den
        values.append(total)
    if any(v != values[0] for v in values[1:]):
        raise ArithmeticError(f"analytic volume differs across directions: {values}")
    return values[0]


# -- support bound -------------------------------------------------------------


@dataclass
class SupportBoundReport:
    samples: int
    nonzero: int
    c_empirical: Fraction
    c_bound: Fraction
    ok: bool


def support_bound_certificate(sys: RestrictedRootSystem) -> Fraction:
    """A Y-independent constant bounding support points of the hull kernel.

    Derived from the dual bases: any supported point decomposes over some
    chamber's coroots with coefficients read off by the dual covectors.
    """
    g = sys.full_cone().index
    best = Fraction(0)
    basis = [linalg.vec(b) for b in sys.lattice.basis]
    for c in sys.chambers:
        pairs = sys.cone_simple_pairs(c)
        duals = _dual_basis(sys, c, g)
        total = Fraction(0)
        for (a, av), w in zip(
            [pairs[i] for i in _vanishing_indices(sys, c, g)], duals
        ):
            av_c = linalg.coordinates_in_basis(basis, av)
            w_norm = sum(abs(x) for x in w)
            total += _sup_norm(av_c) * w_norm * max(
                _sup_norm(linalg.vec(b)) for b in sys.lattice.basis
            )
        best = max(best, total)
    return best * sys.ambient_dim


def support_bound_check(
    sys: RestrictedRootSystem,
    y: OrthogonalSet,
    points: Sequence[Sequence],
) -> SupportBoundReport:
    """Empirically bound |H| / sup|Y_P| over sampled points with nonzero kernel."""
    g = sys.full_cone().index
    sup_y = max((_sup_norm(lattice_coords(sys, p)) for p in y.points.values()), default=Fraction(0))
    c_emp = Fraction(0)
    nonzero = 0
    ok = True
    for h in points:
        if gamma_family(sys, g, h, y) == 0:
            continue
        nonzero += 1
        hn = _sup_norm(lattice_coords(sys, _parse_vec(h)))
        if sup_y == 0:
            if hn != 0:
                ok = False
            continue
        c_emp = max(c_emp, hn / sup_y)
    c_bound = support_bound_certificate(sys)
    if c_emp > c_bound:
        ok = False
    return SupportBoundReport(len(points), nonzero, c_emp, c_bound, ok)


# -- lattice counting and exponential-polynomial extrapolation -----------------


def v_tilde_lattice(
    y: OrthogonalSet,
    lattice_basis: Sequence[Sequence],
    k: int,
    x0: Sequence,
    exact: bool = False,
) -> int:
    """Count lattice points H with gamma_family(G, H, Y + Y[k*x0]) == 1.

    The counting lattice is spanned by ``lattice_basis`` (rational vectors).
    With ``exact`` the kernel is evaluated at every candidate point; otherwise
    interior/exterior points are classified by the hull facets and only
    boundary points fall back to the exact kernel.
    """
    if k < 0:
        raise ValueError("dilation must be nonnegative")
    sys = y.system
    shifted = y.add(OrthogonalSet.special(sys, _parse_vec(x0)).scale(k))
    if not shifted.is_positive:
        raise ValueError("lattice counting requires a positive orthogonal set")
    basis = [_parse_vec(b) for b in lattice_basis]
    return _count_kernel_points(shifted, basis, exact=exact)


def _count_kernel_points(shifted: OrthogonalSet, basis: list[Vec], exact: bool) -> int:
    sys = shifted.system
    g = sys.full_cone().index
    verts = list(shifted.points.values())
    hull = Hull(verts)
    # bounding box of the vertices in lattice coordinates
    coords = [linalg.coordinates_in_basis(basis, v) for v in verts]
    if any(c is None for c in coords):
        raise ValueError("a vertex lies outside the span of the counting lattice")
    dim = len(basis)
    lo = [min(math.floor(c[i]) for c in coords) for i in range(dim)]
    hi = [max(math.ceil(c[i]) for c in coords) for i in range(dim)]
    classify = hull.lattice_classifier(basis)
    count = 0
    from itertools import product

    for m in product(*[range(lo[i], hi[i] + 1) for i in range(dim)]):
        side = classify(m)
        if not exact:
            if side > 0:
                count += 1
                continue
            if side < 0:
                continue
        point = linalg.zero_vec(sys.ambient_dim)
        for c, b in zip(m, basis):
            point = linalg.vadd(point, linalg.vscale(c, b))
        if gamma_family(sys, g, point, shifted) == 1:
            count += 1
    return count


@dataclass
class ExpPolyFit:
    """A quasi-polynomial fit f(k) = p_{k mod T}(k) to integer samples."""

    period: int
    class_polys: list[tuple[Fraction, ...]]  # coefficient tuples, low degree first

    def evaluate(self, k: int) -> Fraction:
        coeffs = self.class_polys[k % self.period]
        out = Fraction(0)
        for c in reversed(coeffs):
            out = out * k + c
        return out

    @property
    def polynomial_part_constant(self) -> Fraction:
        """Constant term of the purely polynomial component of the fit.

        Writing the quasi-polynomial as a sum of root-of-unity exponentials
        times polynomials, the polynomial attached to the trivial exponential
        is the average of the per-class polynomials.
        """
        total = Fraction(0)
        for coeffs in self.class_polys:
            total += coeffs[0] if coeffs else Fraction(0)
        return total / self.period


def fit_exp_polynomial(
    samples: Sequence, max_period: int = 4, max_degree: int = 3
) -> ExpPolyFit:
    """Fit the minimal-period quasi-polynomial reproducing all samples exactly."""
    vals = [Fraction(v) for v in samples]
    n = len(vals)
    for period in range(1, max_period + 1):
        fits: list[Optional[tuple[Fraction, ...]]] = []
        good = True
        for cls in range(period):
            ks = [k for k in range(n) if k % period == cls]
            if len(ks) < max_degree + 2:
                good = False
                break
            coeffs = None
            for d in range(0, max_degree + 1):
                support = ks[: d + 1]
                rows = [[Fraction(k) ** j for j in range(d + 1)] for k in support]
                sol = linalg.solve(rows, [vals[k] for k in support])
                if sol is None:
                    continue
                if all(
                    sum(sol[j] * Fraction(k) ** j for j in range(d + 1)) == vals[k]
                    for k in ks
                ):
                    coeffs = tuple(sol)
                    break
            if coeffs is None:
                good = False
                break
            fits.append(coeffs)
        if good:
            return ExpPolyFit(period, [f for f in fits if f is not None])
    raise ValueError(
        f"no quasi-polynomial of period <= {max_period}, degree <= {max_degree} "
        f"fits the {n} samples"
    )


def exp_poly_constant_term(samples: Sequence, max_period: int = 4, max_degree: int = 3) -> Fraction:
    """Constant term of the polynomial part of the fitted quasi-polynomial."""
    return fit_exp_polynomial(samples, max_period, max_degree).polynomial_part_constant


def refinement_constant_term(
    y: OrthogonalSet,
    x0: Sequence,
    k: int,
    num_samples: Optional[int] = None,
    max_period: int = 4,
) -> Fraction:
    """Normalized constant term of the lattice-count family at refinement 1/k.

    Counts points of (1/k) times the normalization lattice inside the shifted
    hulls Y + Y[j*x0] for j = 0, 1, ..., fits an exponential polynomial in j,
    and returns its polynomial-part constant scaled by the refined covolume.
    """
    sys = y.system
    r = sys.ambient_dim
    basis = [linalg.vscale(Fraction(1, k), linalg.vec(b)) for b in sys.lattice.basis]
    if num_samples is None:
        num_samples = max_period * (r + 2) + 2
    counts = []
    x0v = _parse_vec(x0)
    for j in range(num_samples):
        shifted = y.add(OrthogonalSet.special(sys, x0v).scale(j))
        counts.append(_count_kernel_points(shifted, basis, exact=False))
    fit = fit_exp_polynomial(counts, max_period=max_period, max_degree=r)
    return fit.polynomial_part_constant * Fraction(1, k**r)
