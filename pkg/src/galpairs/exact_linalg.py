"""Integer lattices, Smith normal form and Tate-style cohomology of lattices.

The central computation is ``tate_h_minus1``: given a lattice with an action
of a finite integer matrix group, return the finite abelian group
ker(norm map) / (augmentation sublattice), presented by invariant factors.
For cocharacter lattices of tori this group classifies the first Galois
cohomology of the torus, which is what ``torus_h1`` exposes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg

IntMat = list[list[int]]


def _as_int_matrix(m: Sequence[Sequence[int]]) -> IntMat:
    out = []
    for row in m:
        r = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                x = x.numerator
            if not isinstance(x, int):
                raise ValueError(f"non-integer entry {x!r}")
            r.append(x)
        out.append(r)
    return out


def _identity(n: int) -> IntMat:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _int_matmul(a: IntMat, b: IntMat) -> IntMat:
    nb = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(nb)] for i in range(len(a))]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Return (U, D, V) with U @ m @ V = D, U and V unimodular.

    D is diagonal with nonnegative entries forming a divisibility chain
    d_1 | d_2 | ... .  The pivot choice is deterministic: at each step the
    remaining entry of smallest absolute value is selected, ties broken by
    smallest row index then smallest column index, so identical inputs give
    identical (U, D, V).
    """
    a = _as_int_matrix(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = _identity(nrows)
    v = _identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nrows, ncols):
        # deterministic pivot: smallest |value|, then uppermost, then leftmost
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0:
                    key = abs(a[i][j])
                    if best is None or key < best:
                        best = key
                        pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)

        dirty = False
        for i in range(t + 1, nrows):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                add_row(t, i, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, ncols):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                add_col(t, j, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # row and column are clear; enforce divisibility of the remaining block
        bad = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % a[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1

    return u, a, v


def diagonal_of(d: IntMat) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group given by invariant factors d_1 | d_2 | ... (each >= 2)."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        if any(f < 2 for f in fs):
            raise ValueError(f"invariant factors must be >= 2, got {fs}")
        for x, y in zip(fs, fs[1:]):
            if y % x != 0:
                raise ValueError(f"not a divisibility chain: {fs}")

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def direct_sum(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return from_elementary_divisors(self.invariant_factors + other.invariant_factors)

    def __str__(self) -> str:
        if self.is_trivial:
            return "1"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


TRIVIAL_GROUP = FiniteAbelianGroup(())


def from_elementary_divisors(divisors: Iterable[int]) -> FiniteAbelianGroup:
    """Normalize an arbitrary list of cyclic orders into invariant factors."""
    from math import gcd

    primary: dict[int, list[int]] = {}
    for d in divisors:
        if d < 1:
            raise ValueError(f"cyclic order must be positive, got {d}")
        n = d
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                primary.setdefault(p, []).append(p**e)
            p += 1
        if n > 1:
            primary.setdefault(n, []).append(n)
    for p in primary:
        primary[p].sort(reverse=True)
    depth = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(depth):
        f = 1
        for p in primary:
            if i < len(primary[p]):
                f *= primary[p][i]
        factors.append(f)
    factors.reverse()
    return FiniteAbelianGroup(tuple(factors))


def cokernel_structure(m: Sequence[Sequence[int]], ambient_rank: int) -> FiniteAbelianGroup:
    """Structure of Z^ambient_rank / (integer column span of m).

    Raises ValueError if the quotient is infinite.
    """
    if ambient_rank == 0:
        return TRIVIAL_GROUP
    if not m or not m[0]:
        if ambient_rank > 0:
            raise ValueError("quotient is infinite (zero map onto positive rank)")
        return TRIVIAL_GROUP
    _, d, _ = smith_normal_form(m)
    diag = diagonal_of(d)
    nonzero = [x for x in diag if x != 0]
    if len(nonzero) < ambient_rank:
        raise ValueError("quotient is infinite (sublattice has smaller rank)")
    return FiniteAbelianGroup(tuple(x for x in nonzero if x >= 2))


@dataclass(frozen=True)
class IntLattice:
    """Full sublattice data: an integer basis inside Z^ambient_dim."""

    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for b in self.basis:
            if len(b) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")
        if self.basis and linalg.rank([linalg.vec(b) for b in self.basis]) != len(self.basis):
            raise ValueError("basis vectors are dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @staticmethod
    def standard(n: int) -> "IntLattice":
        return IntLattice(n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def quotient_group(sup: IntLattice, sub: IntLattice) -> FiniteAbelianGroup:
    """Invariant factors of sup/sub; errors if sub is not finite-index in sup."""
    if sup.ambient_dim != sub.ambient_dim:
        raise ValueError("lattices live in different ambient spaces")
    if sub.rank != sup.rank:
        raise ValueError("quotient is infinite: ranks differ")
    cols = []
    sup_basis = [linalg.vec(b) for b in sup.basis]
    for b in sub.basis:
        coords = linalg.coordinates_in_basis(sup_basis, linalg.vec(b))
        if coords is None:
            raise ValueError("sub is not contained in the span of sup")
        if any(c.denominator != 1 for c in coords):
            raise ValueError("sub is not a sublattice of sup")
        cols.append([int(c) for c in coords])
    m = [[cols[j][i] for j in range(len(cols))] for i in range(sup.rank)]
    return cokernel_structure(m, sup.rank)


@dataclass(frozen=True)
class LatticeWithAction:
    """A lattice together with a finite group of integer matrices acting on it.

    ``actions`` must be closed under multiplication and contain the identity;
    this is verified eagerly, as is preservation of the lattice.  Matrices act
    on ambient column vectors.
    """

    lattice: IntLattice
    actions: tuple[tuple[tuple[int, ...], ...], ...]
    label: str = ""

    def __post_init__(self):
        n = self.lattice.ambient_dim
        seen = {a for a in self.actions}
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        if ident not in seen:
            raise ValueError("action set does not contain the identity")
        for a in self.actions:
            for b in self.actions:
                prod = tuple(
                    tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                    for i in range(n)
                )
                if prod not in seen:
                    raise ValueError("action set is not closed under multiplication")
        # each matrix must map the lattice bijectively to itself
        basis = [linalg.vec(b) for b in self.lattice.basis]
        for a in self.actions:
            am = linalg.mat(a)
            for b in basis:
                img = linalg.matvec(am, b)
                coords = linalg.coordinates_in_basis(basis, img)
                if coords is None or any(c.denominator != 1 for c in coords):
                    raise ValueError("a group element does not preserve the lattice")

    @property
    def order(self) -> int:
        return len(self.actions)

    def in_basis_matrices(self) -> list[IntMat]:
        """The action matrices rewritten in lattice-basis coordinates."""
        basis = [linalg.vec(b) for b in self.lattice.basis]
        out = []
        for a in self.actions:
            am = linalg.mat(a)
            cols = []
            for b in basis:
                coords = linalg.coordinates_in_basis(basis, linalg.matvec(am, b))
                cols.append([int(c) for c in coords])
            out.append([[cols[j][i] for j in range(len(cols))] for i in range(len(basis))])
        return out


def tate_h_minus1(x: LatticeWithAction) -> FiniteAbelianGroup:
    """ker(sum of group elements) modulo the span of all (g - 1) images.

    Both are computed inside lattice-basis coordinates; the numerator kernel
    is taken saturated, so the quotient is finite (it is killed by the group
    order) and is returned by invariant factors.
    """
    mats = x.in_basis_matrices()
    r = x.lattice.rank
    if r == 0:
        return TRIVIAL_GROUP
    norm = [[sum(g[i][j] for g in mats) for j in range(r)] for i in range(r)]
    _, d, v = smith_normal_form(norm)
    diag = diagonal_of(d)
    kernel_basis = []
    for j in range(r):
        if j >= len(diag) or diag[j] == 0:
            kernel_basis.append(linalg.vec([v[i][j] for i in range(r)]))
    k = len(kernel_basis)
    if k == 0:
        return TRIVIAL_GROUP
    # augmentation sublattice: integer span of (g - 1) columns, expressed in
    # the kernel basis (they land in the kernel since the norm kills them)
    cols = []
    for g in mats:
        for j in range(r):
            col = linalg.vec([g[i][j] - (1 if i == j else 0) for i in range(r)])
            coords = linalg.coordinates_in_basis(kernel_basis, col)
            if coords is None:
                raise ValueError("augmentation image escapes the norm kernel")
            if any(c.denominator != 1 for c in coords):
                raise ValueError("augmentation image is not integral in the kernel")
            cols.append([int(c) for c in coords])
    m = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    return cokernel_structure(m, k)


def torus_h1(x: LatticeWithAction) -> FiniteAbelianGroup:
    """First cohomology of a torus with the given cocharacter lattice action.

    For an induced Galois action on cocharacters this agrees with
    ``tate_h_minus1`` of the lattice, which is how it is computed.
    """
    return tate_h_minus1(x)


def direct_sum_action(a: LatticeWithAction, b: LatticeWithAction) -> LatticeWithAction:
    """Block direct sum; requires the two action groups to be identified
    elementwise (same ordering), modelling one group acting on both factors."""
    if a.order != b.order:
        raise ValueError("direct sum needs matching group element lists")
    na, nb = a.lattice.ambient_dim, b.lattice.ambient_dim
    basis = tuple(tuple(v) + (0,) * nb for v in a.lattice.basis) + tuple(
        (0,) * na + tuple(v) for v in b.lattice.basis
    )
    acts = []
    for ga, gb in zip(a.actions, b.actions):
        top = tuple(tuple(row) + (0,) * nb for row in ga)
        bot = tuple((0,) * na + tuple(row) for row in gb)
        acts.append(top + bot)
    return LatticeWithAction(IntLattice(na + nb, basis), tuple(acts))


def lattice_with_action_from_dict(data: dict) -> LatticeWithAction:
    """Fixture schema: {"ambient_rank": n, "basis": [[...]], "actions": [[[...]]]}.

    ``basis`` may be omitted, in which case the standard lattice Z^n is used.
    """
    n = int(data["ambient_rank"])
    if "basis" in data:
        basis = tuple(tuple(int(x) for x in row) for row in data["basis"])
        lattice = IntLattice(n, basis)
    else:
        lattice = IntLattice.standard(n)
    actions = tuple(
        tuple(tuple(int(x) for x in row) for row in g) for g in data["actions"]
    )
    return LatticeWithAction(lattice, actions, label=str(data.get("label", "")))


def lattice_with_action_from_json(path: str) -> LatticeWithAction:
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_with_action_from_dict(json.load(fh))


# -- common constructions used by fixtures and tests -------------------------


def split_torus(rank: int, group_order: int = 1) -> LatticeWithAction:
    """Split torus of the given rank: every group element acts as the identity.

    ``group_order`` repeats the identity so the element list can be paired
    with another action of the same group in ``direct_sum_action``.
    """
    n = rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return LatticeWithAction(
        IntLattice.standard(n), tuple(ident for _ in range(group_order)), label=f"split^{rank}"
    )


def norm_one_torus(k: int = 1) -> LatticeWithAction:
    """Product of k norm-one tori of a quadratic extension: Z^k with {1, -1}."""
    n = k
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    minus = tuple(tuple(-1 if i == j else 0 for j in range(n)) for i in range(n))
    return LatticeWithAction(IntLattice.standard(n), (ident, minus), label=f"norm-one^{k}")


def regular_representation(group_table: Sequence[Sequence[int]]) -> LatticeWithAction:
    """Permutation action of a group on Z[group] from its multiplication table.

    ``group_table[i][j]`` is the index of g_i * g_j; index 0 must be the identity.
    """
    n = len(group_table)
    acts = []
    for i in range(n):
        # g_i sends basis vector e_j to e_{g_i g_j}
        m = [[0] * n for _ in range(n)]
        for j in range(n):
            m[group_table[i][j]][j] = 1
        acts.append(tuple(tuple(row) for row in m))
    return LatticeWithAction(IntLattice.standard(n), tuple(acts), label="regular")
