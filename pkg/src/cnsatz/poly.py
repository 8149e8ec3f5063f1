"""Sparse multivariate polynomials, monic division, and cylindrical reduction.

Polynomials are maps from exponent tuples to nonzero coefficients; the zero
polynomial stores no terms and has degree `NEG_INF`.  Variables are t1..tn
(index 0..n-1 internally).  All arithmetic is exact in the coefficient ring.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import NonMonicDivisorError, RingMismatchError
from .rings import Ring, RingElement

NEG_INF = float("-inf")


def grlex_key(exps: Sequence[int]):
    """Graded-lexicographic sort key (total degree, then lex)."""
    return (sum(exps), tuple(exps))


class Poly:
    """A sparse polynomial over an exact ring.  Treat instances as immutable."""

    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring: Ring, nvars: int, terms: Mapping | None = None):
        if nvars < 1:
            raise ValueError("nvars must be >= 1")
        canonical: dict[tuple, RingElement] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = ring.element(coeff)
            if not coeff.is_zero():
                canonical[exps] = coeff
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, val):
        raise AttributeError("polynomials are immutable")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring, nvars: int) -> "Poly":
        return cls(ring, nvars)

    @classmethod
    def constant(cls, ring: Ring, nvars: int, value) -> "Poly":
        return cls(ring, nvars, {(0,) * nvars: ring.element(value)})

    @classmethod
    def one(cls, ring: Ring, nvars: int) -> "Poly":
        return cls.constant(ring, nvars, ring.one)

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int) -> "Poly":
        """The polynomial t_{i+1} (0-based index i)."""
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(ring, nvars, {exps: ring.one})

    @classmethod
    def monomial(cls, ring: Ring, nvars: int, exps, coeff=1) -> "Poly":
        return cls(ring, nvars, {tuple(exps): ring.element(coeff)})

    # -- structure ------------------------------------------------------------
    def _check_compat(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"expected a polynomial, got {type(other).__name__}")
        if self.ring != other.ring or self.nvars != other.nvars:
            raise RingMismatchError("ring mismatch")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def degree(self):
        """Total degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int):
        """Degree in variable i; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def coefficient(self, exps) -> RingElement:
        return self.terms.get(tuple(exps), self.ring.zero)

    def sorted_terms(self):
        """Terms in descending graded-lex order (the canonical print order)."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        self._check_compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.ring, self.nvars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(
            self.ring, self.nvars, {e: -c for e, c in self.terms.items()}
        )

    def __mul__(self, other):
        self._check_compat(other)
        out: dict[tuple, RingElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = out.get(e)
                s = c if cur is None else cur + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.ring, self.nvars, out)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.one(self.ring, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.ring.element(c)
        return Poly(self.ring, self.nvars, {e: k * c for e, k in self.terms.items()})

    # -- evaluation and calculus --------------------------------------------
    def eval(self, point: Sequence[RingElement]) -> RingElement:
        """Exact value at a point of R^n; a ring homomorphism in f."""
        point = tuple(self.ring.element(x) for x in point)
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        if not self.terms:
            return self.ring.zero
        maxes = [0] * self.nvars
        for e in self.terms:
            for i, v in enumerate(e):
                if v > maxes[i]:
                    maxes[i] = v
        powers = []
        for i in range(self.nvars):
            row = [self.ring.one]
            for _ in range(maxes[i]):
                row.append(row[-1] * point[i])
            powers.append(row)
        total = self.ring.zero
        for e, c in self.terms.items():
            term = c
            for i, v in enumerate(e):
                if v:
                    term = term * powers[i][v]
            total = total + term
        return total

    def derivative(self, i: int) -> "Poly":
        """Formal partial derivative in variable i."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = e[:i] + (e[i] - 1,) + e[i + 1 :]
            out[d] = c * self.ring.from_int(e[i])
        return Poly(self.ring, self.nvars, out)

    # -- shape predicates -----------------------------------------------------
    def is_univariate_in(self, i: int) -> bool:
        return all(
            all(v == 0 for j, v in enumerate(e) if j != i) for e in self.terms
        )

    def is_reduced(self, bounds: Sequence[int]) -> bool:
        """True iff deg_{t_i} f < bounds[i] for every i."""
        if len(bounds) != self.nvars:
            raise ValueError("bounds length mismatch")
        return all(all(v < b for v, b in zip(e, bounds)) for e in self.terms)

    def is_topped(self, bounds: Sequence[int]) -> bool:
        """True iff no monomial dominates `bounds` coordinatewise with a
        strictly larger exponent sum."""
        if len(bounds) != self.nvars:
            raise ValueError("bounds length mismatch")
        cap = sum(bounds)
        for e in self.terms:
            if sum(e) > cap and all(v >= b for v, b in zip(e, bounds)):
                return False
        return True

    def __repr__(self):
        if not self.terms:
            return "<Poly 0>"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"t{i + 1}" + (f"^{v}" if v > 1 else "")
                for i, v in enumerate(e)
                if v
            )
            if mono:
                bits.append(f"({c!r})*{mono}" if not (c == self.ring.one) else mono)
            else:
                bits.append(f"({c!r})")
        return "<Poly " + " + ".join(bits) + ">"


def monic_divide(a: Poly, b: Poly, i: int) -> tuple[Poly, Poly]:
    """Divide a by b in variable t_{i+1}, where b is monic univariate in that
    variable with constant coefficients.

    Returns the unique (q, r) with a = q*b + r and deg_{t_i} r < deg b.
    Works over any ring because b is monic.
    """
    a._check_compat(b)
    if not 0 <= i < a.nvars:
        raise ValueError(f"variable index {i} out of range")
    if b.is_zero() or not b.is_univariate_in(i):
        raise NonMonicDivisorError("non-monic divisor: not univariate in the dividing variable")
    d = b.degree_in(i)
    lead_exps = tuple(d if j == i else 0 for j in range(a.nvars))
    if not (b.coefficient(lead_exps) == a.ring.one):
        raise NonMonicDivisorError("non-monic divisor")
    bterms = {e[i]: c for e, c in b.terms.items()}
    r = dict(a.terms)
    q: dict[tuple, RingElement] = {}
    while r:
        m = max(e[i] for e in r)
        if m < d:
            break
        level = [(e, c) for e, c in r.items() if e[i] == m]
        for e, c in level:
            qe = e[:i] + (m - d,) + e[i + 1 :]
            q[qe] = c
            del r[e]
            # Subtract c * t^qe * (b - t_i^d); the t_i^d part cancelled above.
            for j, bc in bterms.items():
                if j == d:
                    continue
                re = e[:i] + (m - d + j,) + e[i + 1 :]
                cur = r.get(re)
                s = -(c * bc) if cur is None else cur - c * bc
                if s.is_zero():
                    r.pop(re, None)
                else:
                    r[re] = s
    return Poly(a.ring, a.nvars, q), Poly(a.ring, a.nvars, r)


def cylindrical_reduce(f: Poly, phis: Iterable[Poly]) -> tuple[list[Poly], Poly]:
    """Divide f by phi_1 in t1, the remainder by phi_2 in t2, and so on.

    Returns (quotients, remainder) with f = sum(q_i * phi_i) + r exactly, r
    d-reduced for d = (deg phi_1, ..., deg phi_n), and deg q_i <= deg f -
    deg phi_i.  The remainder is the unique d-reduced representative of f
    modulo the phi ideal; the quotients depend on the fixed division order
    and are documented as order-dependent canonical output.
    """
    phis = list(phis)
    if len(phis) != f.nvars:
        raise ValueError(f"expected {f.nvars} divisor polynomials, got {len(phis)}")
    for i, phi in enumerate(phis):
        f._check_compat(phi)
        if phi.degree_in(i) is NEG_INF or phi.degree_in(i) < 1:
            raise ValueError(f"divisor for t{i + 1} must have degree >= 1")
    quotients = []
    r = f
    for i, phi in enumerate(phis):
        qi, r = monic_divide(r, phi, i)
        quotients.append(qi)
    return quotients, r
