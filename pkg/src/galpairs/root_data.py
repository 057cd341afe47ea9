"""Possibly non-reduced restricted root systems and their cone fans.

A system is given by root covectors on an ambient rational vector space,
together with a coroot for each root and a choice of simple roots.  The full
hyperplane-arrangement fan (faces of all dimensions, indexed by sign vectors
over the root hyperplanes) is computed once at construction; chambers carry
the Weyl group element mapping the base chamber onto them.

Conventions:
  * roots are covectors (pairings ``<alpha, x>`` with ambient vectors x),
  * ``<alpha, alpha_covector_dual>`` = 2 for every root,
  * if both a and 2a are roots, the coroot of 2a is half the coroot of a,
  * the span of a cone is the intersection of the hyperplanes vanishing on it;
    cones of full dimension are the chambers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import linalg
from .exact_linalg import IntLattice
from .linalg import Mat, Vec

_MAX_WEYL = 10000


def _parse_rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _parse_vec(xs) -> Vec:
    return tuple(_parse_rational(x) for x in xs)


@dataclass(frozen=True)
class Cone:
    """One face of the root hyperplane arrangement."""

    index: int
    signs: tuple[int, ...]  # entry per hyperplane, values -1/0/+1
    dim: int
    span_basis: tuple[Vec, ...]


class RestrictedRootSystem:
    """A finite (possibly non-reduced) root datum with its complete fan."""

    def __init__(
        self,
        ambient_dim: int,
        roots: Sequence[Vec],
        coroots: Sequence[Vec],
        simple_indices: Sequence[int],
        lattice: Optional[IntLattice] = None,
        name: str = "",
    ):
        self.ambient_dim = ambient_dim
        self.name = name
        order = sorted(range(len(roots)), key=lambda i: tuple(roots[i]))
        self.roots: list[Vec] = [linalg.vec(roots[i]) for i in order]
        self.coroots: list[Vec] = [linalg.vec(coroots[i]) for i in order]
        old_to_new = {order[k]: k for k in range(len(order))}
        simple_new = sorted(old_to_new[i] for i in simple_indices)
        self.simple_indices = simple_new
        self.lattice = lattice if lattice is not None else IntLattice.standard(ambient_dim)
        if self.lattice.ambient_dim != ambient_dim:
            raise ValueError("normalization lattice has wrong ambient dimension")
        self._coroot_of = {self.roots[i]: self.coroots[i] for i in range(len(self.roots))}
        self._root_set = set(self.roots)
        self._validate()
        self._build_fan()
        self._cache: dict = {}

    # -- validation ----------------------------------------------------------

    def _validate(self) -> None:
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots differ in length")
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("duplicate roots")
        for a, av in zip(self.roots, self.coroots):
            if linalg.dot(a, av) != 2:
                raise ValueError(f"<a, a_coroot> != 2 for root {a}")
            neg = tuple(-x for x in a)
            if neg not in self._root_set:
                raise ValueError(f"root set is not symmetric: missing {neg}")
            double = tuple(2 * x for x in a)
            if double in self._root_set:
                expected = linalg.vscale(Fraction(1, 2), av)
                if self._coroot_of[double] != expected:
                    raise ValueError(f"coroot of {double} must be half the coroot of {a}")
        simple = [self.roots[i] for i in self.simple_indices]
        # every root must be a one-signed rational combination of the simples
        for a in self.roots:
            coeffs = linalg.coordinates_in_basis(simple, a)
            if coeffs is None:
                raise ValueError(f"root {a} is outside the span of the simple roots")
            if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
                raise ValueError(f"root {a} is not one-signed over the simple roots")
        # closure under the simple reflections (acting on covectors)
        for i in self.simple_indices:
            av = self.coroots[i]
            alpha = self.roots[i]
            for b in self.roots:
                img = linalg.vsub(b, linalg.vscale(linalg.dot(b, av), alpha))
                if img not in self._root_set:
                    raise ValueError(
                        f"roots are not closed under the reflection in {alpha}: {b} -> {img}"
                    )

    # -- fan construction ----------------------------------------------------

    def _reflection(self, root_index: int) -> Mat:
        """Reflection on ambient vectors: x -> x - <a, x> a_coroot."""
        a = self.roots[root_index]
        av = self.coroots[root_index]
        n = self.ambient_dim
        return tuple(
            tuple((1 if i == j else 0) - av[i] * a[j] for j in range(n)) for i in range(n)
        )

    def _build_fan(self) -> None:
        n = self.ambient_dim
        simple = [self.roots[i] for i in self.simple_indices]
        simple_coroots = [self.coroots[i] for i in self.simple_indices]

        # reduced roots and their hyperplanes, positivity over the simples
        self.positive_roots: list[Vec] = []
        for a in self.roots:
            coeffs = linalg.coordinates_in_basis(simple, a)
            if all(c >= 0 for c in coeffs):
                self.positive_roots.append(a)
        reduced_pos = [
            a for a in self.positive_roots if linalg.vscale(Fraction(1, 2), a) not in self._root_set
        ]
        self.hyperplanes: list[Vec] = sorted(reduced_pos)

        # Weyl group: close the simple reflections under multiplication
        gens = [self._reflection(i) for i in self.simple_indices]
        ident = linalg.identity(n)
        elements = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    wg = linalg.matmul(g, w)
                    if wg not in elements:
                        elements.add(wg)
                        nxt.append(wg)
            frontier = nxt
            if len(elements) > _MAX_WEYL:
                raise ValueError("reflection group is too large or not finite")
        self.weyl_elements: list[Mat] = sorted(elements)

        # relative-interior points of the faces of the closed base chamber
        r = len(simple)
        face_points: list[tuple[frozenset, Vec]] = []
        for bits in range(1 << r):
            zero = frozenset(i for i in range(r) if bits >> i & 1)
            target = [Fraction(0) if i in zero else Fraction(1) for i in range(r)]
            point = linalg.solve(simple, target)
            if point is None:
                raise ValueError("simple roots are dependent")
            face_points.append((zero, point))

        def sign_vector(p: Vec) -> tuple[int, ...]:
            out = []
            for h in self.hyperplanes:
                v = linalg.dot(h, p)
                out.append(0 if v == 0 else (1 if v > 0 else -1))
            return tuple(out)

        seen: dict[tuple[int, ...], int] = {}
        cones: list[Cone] = []
        chamber_w: dict[int, Mat] = {}
        base_interior = face_points[0][1]
        for w in self.weyl_elements:
            for zero, p in face_points:
                img = linalg.matvec(w, p)
                sv = sign_vector(img)
                if sv not in seen:
                    zero_rows = [self.hyperplanes[i] for i in range(len(sv)) if sv[i] == 0]
                    span = (
                        linalg.nullspace(zero_rows, ncols=n)
                        if zero_rows
                        else [tuple(row) for row in linalg.identity(n)]
                    )
                    cone = Cone(len(cones), sv, len(span), tuple(span))
                    seen[sv] = cone.index
                    cones.append(cone)
                if not zero and seen[sv] not in chamber_w:
                    chamber_w[seen[sv]] = w
        self.cones: list[Cone] = cones
        self._sign_index = seen
        self.chambers: list[int] = sorted(
            c.index for c in cones if all(s != 0 for s in c.signs)
        )
        self._chamber_w = chamber_w

        # simple root/coroot pairs per chamber, transported from the base
        self._chamber_simples: dict[int, list[tuple[Vec, Vec]]] = {}
        for ci in self.chambers:
            w = chamber_w[ci]
            w_inv = linalg.invert(w)
            pairs = []
            for a, av in zip(simple, simple_coroots):
                pairs.append((linalg.vecmat(a, w_inv), linalg.matvec(w, av)))
            self._chamber_simples[ci] = pairs

        self.base_chamber: int = self._sign_index[sign_vector(base_interior)]

    # -- basic fan queries -----------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.simple_indices)

    def cone_by_signs(self, signs: tuple[int, ...]) -> Cone:
        return self.cones[self._sign_index[signs]]

    def facet_of(self, point: Sequence) -> Cone:
        """The unique cone whose relative interior contains the point."""
        p = _parse_vec(point)
        sv = []
        for h in self.hyperplanes:
            v = linalg.dot(h, p)
            sv.append(0 if v == 0 else (1 if v > 0 else -1))
        return self.cone_by_signs(tuple(sv))

    def parabolic_leq(self, p: int, q: int) -> bool:
        """True when the cone q is a face of the closure of the cone p.

        In the parabolic dictionary this is containment P <= Q: smaller cones
        correspond to larger parabolic subgroups.
        """
        sp = self.cones[p].signs
        sq = self.cones[q].signs
        for a, b in zip(sp, sq):
            if a == 0 and b != 0:
                return False
            if b != 0 and b != a:
                return False
        return True

    def cones_below(self, q: int) -> list[int]:
        """All cones R with R <= Q in the parabolic order (q a face of cl R)."""
        key = ("below", q)
        if key not in self._cache:
            self._cache[key] = [c.index for c in self.cones if self.parabolic_leq(c.index, q)]
        return self._cache[key]

    def interval(self, p: int, q: int) -> list[int]:
        key = ("interval", p, q)
        if key not in self._cache:
            self._cache[key] = [
                c.index
                for c in self.cones
                if self.parabolic_leq(p, c.index) and self.parabolic_leq(c.index, q)
            ]
        return self._cache[key]

    def chamber_weyl(self, chamber: int) -> Mat:
        return self._chamber_w[chamber]

    def chamber_simple_pairs(self, chamber: int) -> list[tuple[Vec, Vec]]:
        """(root covector, coroot vector) pairs of the chamber's simple roots."""
        return self._chamber_simples[chamber]

    def full_cone(self) -> Cone:
        """The minimal cone of the fan (all signs zero)."""
        return self.cone_by_signs((0,) * len(self.hyperplanes))

    # -- per-cone structure ----------------------------------------------------

    def zero_roots(self, cone: int) -> list[Vec]:
        """Reduced positive roots vanishing on the span of the cone."""
        c = self.cones[cone]
        return [self.hyperplanes[i] for i in range(len(c.signs)) if c.signs[i] == 0]

    def levi_projection(self, cone: int) -> Mat:
        """Projection onto the span of the cone along the vanishing coroots."""
        key = ("proj", cone)
        if key not in self._cache:
            c = self.cones[cone]
            if c.dim == self.ambient_dim:
                self._cache[key] = linalg.identity(self.ambient_dim)
            else:
                complement = linalg.independent_subset(
                    [self._coroot_of[a] for a in self.zero_roots(cone)]
                )
                self._cache[key] = linalg.projection_matrix(c.span_basis, complement)
        return self._cache[key]

    def cone_simple_pairs(self, cone: int) -> list[tuple[Vec, Vec]]:
        """Simple (root, coroot) pairs of the cone, as canonical extensions.

        Covectors are precomposed with the Levi projection and coroots are
        projected to the span of the cone; the result does not depend on the
        chamber used to compute it.
        """
        key = ("simples", cone)
        if key not in self._cache:
            c = self.cones[cone]
            chamber = min(ch for ch in self.chambers if self.parabolic_leq(ch, cone))
            proj = self.levi_projection(cone)
            pairs = []
            for a, av in self._chamber_simples[chamber]:
                restricted = all(linalg.dot(a, b) == 0 for b in c.span_basis)
                if restricted:
                    continue
                pairs.append((linalg.vecmat(a, proj), linalg.matvec(proj, av)))
            self._cache[key] = pairs
        return self._cache[key]

    def adjacent_chambers(self, p: int, q: int) -> Optional[int]:
        """If the chambers share a wall, return its hyperplane index, else None."""
        sp = self.cones[p].signs
        sq = self.cones[q].signs
        diff = [i for i in range(len(sp)) if sp[i] != sq[i]]
        return diff[0] if len(diff) == 1 else None

    # -- restricted coroots -----------------------------------------------------

    def restricted_coroot(self, cone: int, alpha: Sequence) -> Vec:
        """Coroot of a restricted root of the Levi attached to the cone.

        ``alpha`` is an ambient covector, read through its restriction to the
        span of the cone.  The computation lifts alpha to a simple root of a
        compatible chamber of the corank-one sub-datum where alpha vanishes,
        projects that root's coroot to the span of the cone, and checks that
        every valid chamber choice gives the same answer.
        """
        a = _parse_vec(alpha)
        c = self.cones[cone]
        span = list(c.span_basis)
        restr = tuple(linalg.dot(a, b) for b in span)
        if all(x == 0 for x in restr):
            raise ValueError("alpha vanishes on the cone span")

        def same_restriction(b: Vec, lam: Vec) -> bool:
            return all(linalg.dot(b, s) == linalg.dot(lam, s) for s in span)

        if not any(same_restriction(b, a) for b in self.roots):
            raise ValueError("alpha is not a restricted root on this cone span")
        half = linalg.vscale(Fraction(1, 2), a)
        if any(same_restriction(b, half) for b in self.roots):
            # non-reduced restricted root: coroot is half the reduced one
            return linalg.vscale(Fraction(1, 2), self.restricted_coroot(cone, half))

        proj = self.levi_projection(cone)
        # sub-datum: all roots vanishing on (cone span) intersect ker(alpha)
        vprime = _intersect_spans(span, linalg.nullspace([a], ncols=self.ambient_dim))
        sub_roots = [b for b in self.roots if all(linalg.dot(b, v) == 0 for v in vprime)]
        sub_set = set(sub_roots)
        sub_reduced = [b for b in sub_roots if linalg.vscale(Fraction(1, 2), b) not in sub_set]
        sub_hyps = sorted({max(b, tuple(-x for x in b)) for b in sub_reduced})

        # chamber patterns of the sub-arrangement, read off the big chambers
        patterns = set()
        for ch in self.chambers:
            w = self._chamber_w[ch]
            interior = linalg.matvec(w, self._base_interior_point())
            patterns.add(tuple(_sign(linalg.dot(h, interior)) for h in sub_hyps))

        # signs of the sub-roots on the half-space {x in cone span : alpha > 0}
        y = self._generic_halfspace_point(span, a, sub_hyps)
        target = tuple(_sign(linalg.dot(h, y)) for h in sub_hyps)

        results = []
        for pat in sorted(patterns):
            if any(t != 0 and s != t for s, t in zip(pat, target)):
                continue
            positives = {b for b in sub_roots if _pattern_sign(b, sub_hyps, pat) > 0}
            simple = [
                b
                for b in sorted(positives)
                if b in sub_reduced
                and not any(
                    linalg.vsub(b, g) in positives for g in positives if g != b
                )
            ]
            lifts = [b for b in simple if same_restriction(b, a)]
            if len(lifts) != 1:
                raise ValueError("restricted root does not lift to a unique simple root")
            results.append(linalg.matvec(proj, self._coroot_of[lifts[0]]))
        if not results:
            raise ValueError("no compatible chamber found for the restricted coroot")
        first = results[0]
        for other in results[1:]:
            if other != first:
                raise ValueError("restricted coroot depends on the chamber choice")
        return first

    def _base_interior_point(self) -> Vec:
        simple = [self.roots[i] for i in self.simple_indices]
        p = linalg.solve(simple, [Fraction(1)] * len(simple))
        assert p is not None
        return p

    def _generic_halfspace_point(self, span: list[Vec], a: Vec, hyps: list[Vec]) -> Vec:
        """A point of the cone span with alpha > 0, off every sub-hyperplane
        that does not contain the whole span."""
        base = None
        for s in span:
            if linalg.dot(a, s) != 0:
                base = s if linalg.dot(a, s) > 0 else linalg.vscale(-1, s)
                break
        assert base is not None
        relevant = [h for h in hyps if any(linalg.dot(h, s) != 0 for s in span)]
        k = 1
        while True:
            pert = base
            t = Fraction(1, 100 * k)
            for j, s in enumerate(span):
                pert = linalg.vadd(pert, linalg.vscale(t ** (j + 1), s))
            if linalg.dot(a, pert) > 0 and all(linalg.dot(h, pert) != 0 for h in relevant):
                return pert
            k += 1

    # -- descent support ---------------------------------------------------------

    def descent_support(
        self, theta_fixed_basis: Sequence[Sequence], levi_basis: Sequence[Sequence]
    ) -> bool:
        """True when the ambient space splits as the direct sum of the two spans."""
        s1 = [_parse_vec(v) for v in theta_fixed_basis]
        s2 = [_parse_vec(v) for v in levi_basis]
        r1 = linalg.rank(s1) if s1 else 0
        r2 = linalg.rank(s2) if s2 else 0
        combined = linalg.rank(s1 + s2) if (s1 or s2) else 0
        return r1 + r2 == combined == self.ambient_dim


def _sign(x: Fraction) -> int:
    return 0 if x == 0 else (1 if x > 0 else -1)


def _pattern_sign(root: Vec, hyps: list[Vec], pattern: tuple[int, ...]) -> int:
    """Sign of a sub-root on a sub-chamber, given the chamber's hyperplane signs."""
    for h, s in zip(hyps, pattern):
        coeff = _proportionality(root, h)
        if coeff is not None:
            return s if coeff > 0 else -s
    raise ValueError("root is not proportional to any sub-hyperplane")


def _proportionality(a: Vec, b: Vec) -> Optional[Fraction]:
    """c with a = c*b, or None."""
    c = None
    for x, y in zip(a, b):
        if y == 0:
            if x != 0:
                return None
        else:
            ratio = Fraction(x, 1) / y
            if c is None:
                c = ratio
            elif c != ratio:
                return None
    return c


def _intersect_spans(span1: list[Vec], span2: list[Vec]) -> list[Vec]:
    """Basis of the intersection of two spans."""
    if not span1 or not span2:
        return []
    n = len(span1[0])
    # x in both spans: x = A u = B v; solve [A | -B] (u,v)^T = 0
    cols = [list(v) for v in span1] + [[-x for x in v] for v in span2]
    m = [[Fraction(cols[j][i]) for j in range(len(cols))] for i in range(n)]
    out = []
    for sol in linalg.nullspace(m, ncols=len(cols)):
        u = sol[: len(span1)]
        x = linalg.zero_vec(n)
        for c, v in zip(u, span1):
            x = linalg.vadd(x, linalg.vscale(c, v))
        out.append(x)
    return linalg.independent_subset(out)


# -- built-in systems -------------------------------------------------------------


def _from_cartan(cartan: list[list[int]], name: str) -> RestrictedRootSystem:
    """Build a reduced system in simple-coroot coordinates from a Cartan matrix.

    The i-th simple coroot is the i-th standard basis vector and the i-th
    simple root is the i-th row of the Cartan matrix, so <a_i, a_j^vee> is the
    Cartan entry.  Roots are generated by closing under simple reflections.
    """
    n = len(cartan)
    simple_roots = [linalg.vec(row) for row in cartan]
    simple_coroots = [linalg.vec([1 if j == i else 0 for j in range(n)]) for i in range(n)]
    roots: dict[Vec, Vec] = {}
    frontier = list(zip(simple_roots, simple_coroots))
    for a, av in frontier:
        roots[a] = av
        roots[tuple(-x for x in a)] = tuple(-x for x in av)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            alpha, alpha_v = simple_roots[i], simple_coroots[i]
            for b, bv in list(roots.items()):
                img = linalg.vsub(b, linalg.vscale(linalg.dot(b, alpha_v), alpha))
                img_v = linalg.vsub(bv, linalg.vscale(linalg.dot(alpha, bv), alpha_v))
                if img not in roots:
                    roots[img] = img_v
                    changed = True
    ordered = sorted(roots)
    simple_idx = [ordered.index(a) for a in simple_roots]
    return RestrictedRootSystem(
        n, ordered, [roots[a] for a in ordered], simple_idx, name=name
    )


def _bc_system(n: int, name: str) -> RestrictedRootSystem:
    """Non-reduced system of rank n: short, long and doubled-short roots."""
    e = lambda i: tuple(Fraction(1 if j == i else 0) for j in range(n))
    roots: dict[Vec, Vec] = {}

    def put(a: Vec, av: Vec):
        roots[a] = av
        roots[tuple(-x for x in a)] = tuple(-x for x in av)

    for i in range(n):
        ei = e(i)
        put(ei, linalg.vscale(2, ei))  # short root e_i, coroot 2e_i
        put(linalg.vscale(2, ei), ei)  # doubled root 2e_i, coroot e_i
        for j in range(i + 1, n):
            ej = e(j)
            put(linalg.vadd(ei, ej), linalg.vadd(ei, ej))
            put(linalg.vsub(ei, ej), linalg.vsub(ei, ej))
    ordered = sorted(roots)
    if n == 1:
        simple = [e(0)]
    else:
        simple = [linalg.vsub(e(i), e(i + 1)) for i in range(n - 1)] + [e(n - 1)]
    simple_idx = [ordered.index(a) for a in simple]
    return RestrictedRootSystem(n, ordered, [roots[a] for a in ordered], simple_idx, name=name)


_CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "C2": [[2, -2], [-1, 2]],
    "G2": [[2, -1], [-3, 2]],
}

_BUILTIN_CACHE: dict[str, RestrictedRootSystem] = {}


def builtin_system(name: str) -> RestrictedRootSystem:
    """Built-in systems: A1, A2, A3, B2, C2, G2, BC1, BC2."""
    if name not in _BUILTIN_CACHE:
        if name in _CARTAN:
            _BUILTIN_CACHE[name] = _from_cartan(_CARTAN[name], name)
        elif name == "BC1":
            _BUILTIN_CACHE[name] = _bc_system(1, name)
        elif name == "BC2":
            _BUILTIN_CACHE[name] = _bc_system(2, name)
        else:
            raise ValueError(f"unknown built-in system {name!r}")
    return _BUILTIN_CACHE[name]


BUILTIN_NAMES = ("A1", "A2", "A3", "B2", "C2", "G2", "BC1", "BC2")


def system_from_dict(data: dict) -> RestrictedRootSystem:
    """Fixture schema: ambient_dim, roots, coroots, simple_indices, lattice_basis.

    Rational entries may be integers or "p/q" strings.
    """
    n = int(data["ambient_dim"])
    roots = [_parse_vec(r) for r in data["roots"]]
    coroots = [_parse_vec(r) for r in data["coroots"]]
    simple = [int(i) for i in data["simple_indices"]]
    lattice = None
    if "lattice_basis" in data:
        lattice = IntLattice(n, tuple(tuple(int(x) for x in row) for row in data["lattice_basis"]))
    return RestrictedRootSystem(n, roots, coroots, simple, lattice, name=str(data.get("name", "")))


def system_from_json(path: str) -> RestrictedRootSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return system_from_dict(json.load(fh))


def resolve_system(spec: str) -> RestrictedRootSystem:
    """Accept a built-in name or a path to a JSON fixture."""
    if spec in BUILTIN_NAMES:
        return builtin_system(spec)
    return system_from_json(spec)
