"""Restricted-variable ideal and variety operators over finite point sets.

Implements the variety map V_X, the ideal of a finite point set over a field
(cylindrical hull generators plus an exact-elimination kernel basis), exact
membership certificates for f in J + I(X), Zariski closure over finite
rings, and the surjectivity/injectivity classification of the evaluation
map from polynomials to functions on a point set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CapExceededError,
    DegenerateGridError,
    FieldRequiredError,
    HypothesisError,
    NotEnumerableError,
    RingMismatchError,
)
from .grid import Grid, delta_poly
from .poly import Poly, cylindrical_reduce, grlex_key
from .rings import Ring, RingElement


@dataclass(frozen=True)
class IdealPresentation:
    """A finite generator list for an ideal of R[t1..tn]."""

    ring: Ring
    nvars: int
    generators: tuple[Poly, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring or g.nvars != self.nvars:
                raise RingMismatchError("ring mismatch")

    @classmethod
    def from_polys(cls, ring: Ring, nvars: int, gens: Iterable[Poly]):
        return cls(ring, nvars, tuple(gens))


def _point_iter(points_or_grid):
    if isinstance(points_or_grid, Grid):
        return points_or_grid.points()
    return iter(points_or_grid)


def variety(points_or_grid, ideal: IdealPresentation) -> tuple:
    """The points of X where every generator vanishes.

    Sound and complete for the generated ideal because a point kills every
    combination of generators iff it kills each generator.
    """
    out = []
    for pt in _point_iter(points_or_grid):
        pt = tuple(ideal.ring.element(x) for x in pt)
        if all(g.eval(pt).is_zero() for g in ideal.generators):
            out.append(pt)
    return tuple(out)


def _nullspace_basis(rows: list[list[RingElement]], ncols: int, ring: Ring):
    """Basis of the right null space of a matrix over a field, via exact RREF."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    free: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for rr in range(r, len(mat)):
            if not mat[rr][c].is_zero():
                pivot_row = rr
                break
        if pivot_row is None:
            free.append(c)
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [v * inv for v in mat[r]]
        for rr in range(len(mat)):
            if rr != r and not mat[rr][c].is_zero():
                factor = mat[rr][c]
                mat[rr] = [v - factor * w for v, w in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in free:
        vec = [ring.zero] * ncols
        vec[fc] = ring.one
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fc]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class PointsIdeal:
    """Generators for the ideal of all polynomials vanishing on a point set."""

    hull: Grid
    phi_generators: tuple[Poly, ...]
    kernel_basis: tuple[Poly, ...]

    @property
    def generators(self) -> tuple[Poly, ...]:
        return self.phi_generators + self.kernel_basis

    def presentation(self) -> IdealPresentation:
        return IdealPresentation(self.hull.ring, self.hull.nvars, self.generators)


def ideal_of_points(points, ring: Ring, nvars: int) -> PointsIdeal:
    """I(A) for a finite A in F^n over a field F.

    Generators: the vanishing polynomials of the cylindrical hull of A, plus
    a basis (by exact Gaussian elimination) of the hull-reduced polynomials
    vanishing on A.  When A is itself cylindrical the kernel basis is empty.
    """
    if not ring.is_field:
        raise FieldRequiredError("field required")
    pts = []
    for pt in points:
        pt = tuple(ring.element(x) for x in pt)
        if len(pt) != nvars:
            raise ValueError(f"point {pt!r} has wrong dimension")
        if pt not in pts:
            pts.append(pt)
    if not pts:
        raise ValueError("ideal_of_points needs a nonempty point set")
    axes = []
    for i in range(nvars):
        seen = sorted({pt[i] for pt in pts}, key=lambda e: ring.sort_key(e.value))
        axes.append(seen)
    hull = Grid(ring, axes)
    sizes = hull.sizes
    monomials = sorted(
        itertools.product(*(range(d) for d in sizes)), key=grlex_key
    )
    rows = []
    for pt in pts:
        powers = []
        for i in range(nvars):
            row = [ring.one]
            for _ in range(sizes[i] - 1):
                row.append(row[-1] * pt[i])
            powers.append(row)
        rows.append(
            [
                _prod(ring, (powers[i][e[i]] for i in range(nvars)))
                for e in monomials
            ]
        )
    basis_vectors = _nullspace_basis(rows, len(monomials), ring)
    kernel = tuple(
        Poly(ring, nvars, dict(zip(monomials, vec))) for vec in basis_vectors
    )
    return PointsIdeal(hull, hull.phis(), kernel)


def _prod(ring: Ring, items) -> RingElement:
    out = ring.one
    for x in items:
        out = out * x
    return out


@dataclass(frozen=True)
class Certificate:
    """A witnessed identity f = sum(q_i * phi_i) + sum(h_j * g_j).

    `verify` re-expands the right side exactly.  `degree_bounds_ok` checks
    deg q_i <= deg(residual) - deg phi_i where residual = f - sum(h_j g_j);
    for pure reduction certificates (no generators) the residual is f itself.
    """

    target: Poly
    phis: tuple[Poly, ...]
    generators: tuple[Poly, ...]
    q: tuple[Poly, ...]
    h: tuple[Poly, ...]

    def expansion(self) -> Poly:
        out = Poly.zero(self.target.ring, self.target.nvars)
        for qi, phi in zip(self.q, self.phis):
            out = out + qi * phi
        for hj, gj in zip(self.h, self.generators):
            out = out + hj * gj
        return out

    def verify(self) -> bool:
        return self.expansion() == self.target

    def residual(self) -> Poly:
        out = self.target
        for hj, gj in zip(self.h, self.generators):
            out = out - hj * gj
        return out

    def degree_bounds_ok(self) -> bool:
        bound = self.residual().degree()
        return all(
            qi.degree() <= bound - phi.degree() for qi, phi in zip(self.q, self.phis)
        )


def cni_certificate(f: Poly, grid: Grid) -> Certificate:
    """Certify f in <phi_1, ..., phi_n> for f vanishing on a Condition (D) grid.

    The quotients come from cylindrical reduction; the remainder must vanish
    (a nonzero remainder under Condition (D) signals a bug), the quotient
    degree bounds deg q_i <= deg f - deg phi_i hold, and the certificate
    re-expands to f exactly.
    """
    grid._check_poly(f)
    for pt in grid.points():
        if not f.eval(pt).is_zero():
            raise HypothesisError(f"f does not vanish on the grid: witness {pt!r}")
    if not grid.satisfies_d:
        raise DegenerateGridError("grid does not satisfy Condition (D)")
    qs, r = cylindrical_reduce(f, grid.phis())
    assert r.is_zero(), "nonzero remainder under Condition (D); this is a bug"
    deg_f = f.degree()
    for qi, phi in zip(qs, grid.phis()):
        assert qi.degree() <= deg_f - phi.degree()
    cert = Certificate(f, grid.phis(), (), tuple(qs), ())
    assert cert.verify()
    return cert


@dataclass(frozen=True)
class MembershipResult:
    """Verdict of the membership test for f in J + I(X) over a field.

    "member" carries a verified certificate; "non_member" carries a point of
    V_X(J) where f does not vanish (members vanish on all of V_X(J), so the
    witness proves non-membership).
    """

    verdict: str
    certificate: Certificate | None
    witness: tuple | None
    variety_points: tuple


def finitesatz_membership(
    f: Poly, grid: Grid, ideal: IdealPresentation
) -> MembershipResult:
    if not grid.ring.is_field:
        raise FieldRequiredError("field required")
    grid._check_poly(f)
    if ideal.ring != grid.ring or ideal.nvars != grid.nvars:
        raise RingMismatchError("ring mismatch")
    v_points = variety(grid, ideal)
    v_set = set(v_points)
    for pt in v_points:
        if not f.eval(pt).is_zero():
            return MembershipResult("non_member", None, pt, v_points)
    hs = [Poly.zero(grid.ring, grid.nvars) for _ in ideal.generators]
    for pt in grid.points():
        if pt in v_set:
            continue
        value = f.eval(pt)
        if value.is_zero():
            continue
        j = next(
            idx
            for idx, g in enumerate(ideal.generators)
            if not g.eval(pt).is_zero()
        )
        scale = value * ideal.generators[j].eval(pt).inverse()
        hs[j] = hs[j] + delta_poly(grid, pt).poly.scale(scale)
    residual = f
    for hj, gj in zip(hs, ideal.generators):
        residual = residual - hj * gj
    assert all(residual.eval(pt).is_zero() for pt in grid.points())
    qs, r = cylindrical_reduce(residual, grid.phis())
    assert r.is_zero()
    cert = Certificate(f, grid.phis(), ideal.generators, tuple(qs), tuple(hs))
    assert cert.verify()
    return MembershipResult("member", cert, None, v_points)


class FunctionTable:
    """A function on a fixed finite point list, with pointwise operations."""

    __slots__ = ("points", "values")

    def __init__(self, points: tuple, values: tuple):
        if len(points) != len(values):
            raise ValueError("one value per point")
        self.points = points
        self.values = values

    def _check(self, other: "FunctionTable"):
        if self.points is not other.points and self.points != other.points:
            raise ValueError("function tables over different point sets")

    def __add__(self, other):
        self._check(other)
        return FunctionTable(
            self.points, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __mul__(self, other):
        self._check(other)
        return FunctionTable(
            self.points, tuple(a * b for a, b in zip(self.values, other.values))
        )

    def __eq__(self, other):
        return (
            isinstance(other, FunctionTable)
            and self.points == other.points
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)


def polynomial_function_tables(
    ring: Ring, nvars: int, *, points_cap: int = 1024, fixpoint_cap: int = 200_000
) -> tuple[tuple, list[FunctionTable]]:
    """All evaluation vectors of polynomials on R^n, by saturating the set
    {constants, coordinate projections} under pointwise + and *.

    Returns (space, tables) where space lists R^n in canonical order.
    """
    if not ring.is_finite:
        raise NotEnumerableError("not enumerable: the ring is infinite")
    total = ring.order() ** nvars
    if total > points_cap:
        raise CapExceededError(
            f"|R|^n = {total} points; required points cap {total} exceeds {points_cap}"
        )
    space = tuple(itertools.product(*(tuple(ring.elements()) for _ in range(nvars))))
    seeds = [FunctionTable(space, tuple(c for _ in space)) for c in ring.elements()]
    seeds += [
        FunctionTable(space, tuple(pt[i] for pt in space)) for i in range(nvars)
    ]
    members: list[FunctionTable] = []
    seen = set()
    for t in seeds:
        if t not in seen:
            seen.add(t)
            members.append(t)
    i = 0
    while i < len(members):
        g = members[i]
        for j in range(i + 1):
            h = members[j]
            for combo in (g + h, g * h):
                if combo not in seen:
                    seen.add(combo)
                    members.append(combo)
                    if len(members) > fixpoint_cap:
                        raise CapExceededError(
                            f"function fixpoint exceeded cap {fixpoint_cap}; rerun with a larger cap"
                        )
        i += 1
    return space, members


def zariski_closure(
    points,
    ring: Ring,
    nvars: int,
    *,
    points_cap: int = 1024,
    fixpoint_cap: int = 200_000,
) -> tuple:
    """V(I(A)): every point where all polynomials vanishing on A must vanish.

    Computed over a finite ring by enumerating all polynomial functions on
    R^n (a finite fixpoint), keeping those vanishing on A, and intersecting
    their zero sets.  Satisfies the closure laws: A is contained in the
    result, the operator is idempotent and monotone.
    """
    space, tables = polynomial_function_tables(
        ring, nvars, points_cap=points_cap, fixpoint_cap=fixpoint_cap
    )
    index = {pt: k for k, pt in enumerate(space)}
    a_idx = set()
    for pt in points:
        pt = tuple(ring.element(x) for x in pt)
        if pt not in index:
            raise ValueError(f"point {pt!r} has wrong dimension")
        a_idx.add(index[pt])
    vanishing = [
        t for t in tables if all(t.values[k].is_zero() for k in a_idx)
    ]
    return tuple(
        pt
        for k, pt in enumerate(space)
        if all(t.values[k].is_zero() for t in vanishing)
    )


@dataclass(frozen=True)
class EvalMapReport:
    """Classification of the evaluation map R[t] -> R^X."""

    surjectivity: str  # "surjective" | "not_surjective" | "undetermined"
    surjectivity_reason: str
    injectivity: str  # "injective" | "not_injective" | "undetermined"
    injectivity_reason: str
    fail_coordinate: int | None = None
    fail_pair: tuple | None = None
    kernel_witness: Poly | None = None


def _ring_is_boolean(ring: Ring) -> bool:
    if ring.is_finite:
        return all((x * x) == x for x in ring.elements())
    # The only infinite rings here are Z and Q, and neither is Boolean.
    return False


def evalmap_classify(points, ring: Ring, nvars: int) -> EvalMapReport:
    """Decide existence/uniqueness of interpolation polynomials on X.

    `points` is an explicit finite point set, or "*" for all of R^n (the
    only way to present an infinite X, over Z or Q).
    """
    boolean = _ring_is_boolean(ring)
    witness = (
        Poly(ring, nvars, {_unit_exps(nvars, 0, 2): ring.one, _unit_exps(nvars, 0, 1): -ring.one})
        if boolean
        else None
    )
    if isinstance(points, str):
        if points != "*":
            raise ValueError(f"unknown point-set marker {points!r}")
        if not ring.is_finite:
            inj = (
                ("not_injective", "Boolean ring: t1^2 - t1 vanishes everywhere")
                if boolean
                else (
                    "injective",
                    "infinite domain: the full affine space is infinite and Zariski-dense",
                )
            )
            return EvalMapReport(
                "not_surjective",
                "X is infinite, so the function space is not countably generated",
                inj[0],
                inj[1],
                kernel_witness=witness,
            )
        points = list(itertools.product(*(tuple(ring.elements()) for _ in range(nvars))))
    pts = []
    for pt in points:
        pt = tuple(ring.element(x) for x in pt)
        if len(pt) != nvars:
            raise ValueError(f"point {pt!r} has wrong dimension")
        if pt not in pts:
            pts.append(pt)
    if not pts:
        raise ValueError("evalmap_classify needs a nonempty point set")
    axes = [
        sorted({pt[i] for pt in pts}, key=lambda e: ring.sort_key(e.value))
        for i in range(nvars)
    ]
    hull = Grid(ring, axes)
    if hull.condition() == "F":
        surj = ("surjective", "the cylindrical hull satisfies Condition (F)")
        coord = pair = None
    else:
        coord = pair = None
        for x, y in itertools.combinations(pts, 2):
            diffs = [i for i in range(nvars) if x[i] != y[i]]
            if len(diffs) == 1 and not (x[diffs[0]] - y[diffs[0]]).is_unit():
                coord, pair = diffs[0], (x, y)
                break
        if pair is not None:
            surj = (
                "not_surjective",
                f"points differing only in coordinate {coord + 1} by a non-unit "
                "span a cylinder inside X that fails Condition (F)",
            )
        else:
            surj = (
                "undetermined",
                "the hull fails Condition (F) but no realized pair does; existence "
                "of interpolation polynomials is open here",
            )
    if boolean:
        inj = ("not_injective", "Boolean ring: t1^2 - t1 vanishes everywhere")
    else:
        inj = (
            "not_injective",
            "X is finite: polynomials form a free module of infinite rank, "
            "functions on X of finite rank",
        )
    return EvalMapReport(
        surj[0], surj[1], inj[0], inj[1], coord, pair, witness
    )


def _unit_exps(nvars: int, i: int, e: int) -> tuple:
    return tuple(e if j == i else 0 for j in range(nvars))
