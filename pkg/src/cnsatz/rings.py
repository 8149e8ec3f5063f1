"""Exact commutative-ring arithmetic: Z, Q, Z/n, GF(p), GF(p^k), finite products.

A ring is a context object doing arithmetic on raw canonical values; elements
are immutable `RingElement` wrappers so that mixing rings fails loudly.
Canonical forms: plain int (Z), reduced `Fraction` (Q), residue in [0, n)
(Z/n and GF(p)), coefficient tuple of length k (GF(p^k)), tuple of component
values (products).  Equality of elements is equality of representations.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator

from .errors import NotAUnitError, NotEnumerableError, RingMismatchError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RingElement:
    """An element of a `Ring`, stored in canonical form.  Immutable."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: "Ring", value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("ring elements are immutable")

    def _coerce(self, other) -> "RingElement":
        if not isinstance(other, RingElement):
            raise TypeError(f"expected a ring element, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError("ring mismatch")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring._raw_add(self.value, other.value))

    def __sub__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring._raw_sub(self.value, other.value))

    def __mul__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring._raw_mul(self.value, other.value))

    def __neg__(self):
        return RingElement(self.ring, self.ring._raw_neg(self.value))

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.value == self.ring.zero.value

    def is_unit(self) -> bool:
        return self.ring._raw_is_unit(self.value)

    def inverse(self) -> "RingElement":
        if not self.is_unit():
            raise NotAUnitError(f"not a unit: {self!r}")
        return RingElement(self.ring, self.ring._raw_inverse(self.value))

    def is_zero_divisor(self) -> bool:
        """Strict sense: there is z != 0 with a*z = 0 (so 0 qualifies)."""
        return self.ring._raw_is_zero_divisor(self.value)

    def __repr__(self):
        return self.ring.element_str(self.value)


class Ring:
    """Base class for exactly-represented commutative rings."""

    is_finite = False
    is_field = False

    def _init_constants(self):
        self.zero = RingElement(self, self._raw_from_int(0))
        self.one = RingElement(self, self._raw_from_int(1))
        self._hash = hash(self._key())

    # -- raw-value interface, implemented by subclasses --------------------
    def _raw_from_int(self, k: int):
        raise NotImplementedError

    def _raw_add(self, a, b):
        raise NotImplementedError

    def _raw_sub(self, a, b):
        raise NotImplementedError

    def _raw_mul(self, a, b):
        raise NotImplementedError

    def _raw_neg(self, a):
        raise NotImplementedError

    def _raw_is_unit(self, a) -> bool:
        raise NotImplementedError

    def _raw_inverse(self, a):
        raise NotImplementedError

    def _raw_is_zero_divisor(self, a) -> bool:
        raise NotImplementedError

    def _canon(self, value):
        """Canonicalize an acceptable raw value; raise ValueError otherwise."""
        raise NotImplementedError

    def _key(self) -> tuple:
        raise NotImplementedError

    # -- public -------------------------------------------------------------
    def element(self, value) -> RingElement:
        """Wrap a raw value (or pass a compatible element through)."""
        if isinstance(value, RingElement):
            if value.ring != self:
                raise RingMismatchError("ring mismatch")
            return value
        return RingElement(self, self._canon(value))

    def from_int(self, k: int) -> RingElement:
        return RingElement(self, self._raw_from_int(int(k)))

    def order(self) -> int:
        raise NotEnumerableError(f"not enumerable: {self.spec_string()} is infinite")

    def elements(self) -> Iterator[RingElement]:
        """All elements, exactly once, in the canonical order."""
        raise NotEnumerableError(f"not enumerable: {self.spec_string()} is infinite")

    def characteristic(self) -> int:
        raise NotImplementedError

    def element_str(self, raw) -> str:
        raise NotImplementedError

    def sort_key(self, raw):
        """Key inducing the canonical enumeration order."""
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.spec_string()


class IntegerRing(Ring):
    """The ring of integers with arbitrary precision."""

    def __init__(self):
        self._init_constants()

    def _raw_from_int(self, k):
        return k

    def _raw_add(self, a, b):
        return a + b

    def _raw_sub(self, a, b):
        return a - b

    def _raw_mul(self, a, b):
        return a * b

    def _raw_neg(self, a):
        return -a

    def _raw_is_unit(self, a):
        return a in (1, -1)

    def _raw_inverse(self, a):
        return a

    def _raw_is_zero_divisor(self, a):
        return a == 0

    def _canon(self, value):
        if isinstance(value, int):
            return value
        raise ValueError(f"not an integer: {value!r}")

    def characteristic(self):
        return 0

    def element_str(self, raw):
        return str(raw)

    def sort_key(self, raw):
        return raw

    def spec_string(self):
        return "Z"

    def _key(self):
        return ("Z",)


class RationalRing(Ring):
    """The field of rationals; values are reduced `Fraction`s."""

    is_field = True

    def __init__(self):
        self._init_constants()

    def _raw_from_int(self, k):
        return Fraction(k)

    def _raw_add(self, a, b):
        return a + b

    def _raw_sub(self, a, b):
        return a - b

    def _raw_mul(self, a, b):
        return a * b

    def _raw_neg(self, a):
        return -a

    def _raw_is_unit(self, a):
        return a != 0

    def _raw_inverse(self, a):
        return 1 / a

    def _raw_is_zero_divisor(self, a):
        return a == 0

    def _canon(self, value):
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise ValueError(f"not a rational: {value!r}")

    def characteristic(self):
        return 0

    def element_str(self, raw):
        return str(raw)

    def sort_key(self, raw):
        return raw

    def spec_string(self):
        return "Q"

    def _key(self):
        return ("Q",)


class IntegersMod(Ring):
    """Z/n with residues in [0, n)."""

    is_finite = True

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {n!r}")
        self.n = n
        self._init_constants()

    def _raw_from_int(self, k):
        return k % self.n

    def _raw_add(self, a, b):
        return (a + b) % self.n

    def _raw_sub(self, a, b):
        return (a - b) % self.n

    def _raw_mul(self, a, b):
        return (a * b) % self.n

    def _raw_neg(self, a):
        return (-a) % self.n

    def _raw_is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def _raw_inverse(self, a):
        return pow(a, -1, self.n)

    def _raw_is_zero_divisor(self, a):
        # gcd(0, n) = n > 1, so zero is reported as a zero-divisor.
        return math.gcd(a, self.n) > 1

    def _canon(self, value):
        if isinstance(value, int):
            return value % self.n
        raise ValueError(f"not an integer residue: {value!r}")

    def order(self):
        return self.n

    def elements(self):
        for a in range(self.n):
            yield RingElement(self, a)

    def characteristic(self):
        return self.n

    def element_str(self, raw):
        return str(raw)

    def sort_key(self, raw):
        return raw

    def spec_string(self):
        return f"Z/{self.n}"

    def _key(self):
        return ("Z/n", self.n)


class PrimeField(IntegersMod):
    """GF(p) for a prime p."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)

    @property
    def p(self):
        return self.n

    def _raw_is_unit(self, a):
        return a != 0

    def _raw_is_zero_divisor(self, a):
        return a == 0

    def spec_string(self):
        return f"GF({self.n})"

    def _key(self):
        return ("GF", self.n)


def _gfp_trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _gfp_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    """Division with remainder in GF(p)[u]; b nonzero.  Lists are ascending."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and _gfp_trim(a):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _gfp_trim(a)
    return _gfp_trim(q), a


def _gfp_mul(a: list, b: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                out[i + j] = (out[i + j] + ac * bc) % p
    return _gfp_trim(out)


def _gfp_sub(a: list, b: list, p: int) -> list:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _gfp_trim(out)


class ExtensionField(Ring):
    """GF(p^k) = GF(p)[u]/(m(u)) for a monic irreducible m of degree k in [2, 4].

    Elements are coefficient tuples (c0, ..., c_{k-1}) for c0 + c1*u + ...,
    each coefficient a residue mod p.
    """

    is_finite = True
    is_field = True

    def __init__(self, p: int, modulus):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        mod = [int(c) % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        k = len(mod) - 1
        if k < 2:
            raise ValueError("modulus must have degree >= 2")
        if k > 4:
            raise ValueError(
                f"modulus degree {k} exceeds 4; larger extensions are not supported"
            )
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(mod)
        if not self._modulus_irreducible():
            raise ValueError(f"reducible modulus: {self._upoly_str(mod[:-1])}")
        self._init_constants()

    def _modulus_irreducible(self) -> bool:
        # Brute force: trial division by every monic polynomial of degree
        # 1..k//2 (degree <= 4 keeps this a desk-scale search).
        p, mod = self.p, list(self.modulus)
        for d in range(1, self.k // 2 + 1):
            for lower in itertools.product(range(p), repeat=d):
                div = list(lower) + [1]
                _, rem = _gfp_divmod(mod, div, p)
                if not rem:
                    return False
        return True

    def _raw_from_int(self, k):
        return (k % self.p,) + (0,) * (self.k - 1)

    def _raw_add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _raw_sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _raw_neg(self, a):
        return tuple((-x) % self.p for x in a)

    def _raw_mul(self, a, b):
        prod = _gfp_mul(list(a), list(b), self.p)
        _, rem = _gfp_divmod(prod, list(self.modulus), self.p)
        rem += [0] * (self.k - len(rem))
        return tuple(rem)

    def _raw_is_unit(self, a):
        return any(a)

    def _raw_inverse(self, a):
        # Extended Euclid in GF(p)[u].
        p = self.p
        r0, r1 = list(self.modulus), _gfp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _gfp_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _gfp_sub(s0, _gfp_mul(q, s1, p), p)
        # r0 is a nonzero constant gcd; normalize.
        c = pow(r0[0], -1, p)
        inv = [x * c % p for x in s0]
        inv += [0] * (self.k - len(inv))
        return tuple(inv[: self.k])

    def _raw_is_zero_divisor(self, a):
        return not any(a)

    def _canon(self, value):
        if isinstance(value, int):
            return self._raw_from_int(value)
        if isinstance(value, (tuple, list)):
            coeffs = [int(c) % self.p for c in value]
            if len(coeffs) > self.k:
                raise ValueError(f"coefficient tuple longer than degree {self.k}")
            coeffs += [0] * (self.k - len(coeffs))
            return tuple(coeffs)
        raise ValueError(f"not an extension-field value: {value!r}")

    def generator(self) -> RingElement:
        """The residue of u."""
        return RingElement(self, (0, 1) + (0,) * (self.k - 2))

    def order(self):
        return self.q

    def elements(self):
        for m in range(self.q):
            coeffs = []
            v = m
            for _ in range(self.k):
                coeffs.append(v % self.p)
                v //= self.p
            yield RingElement(self, tuple(coeffs))

    def characteristic(self):
        return self.p

    @staticmethod
    def _upoly_str(coeffs) -> str:
        parts = []
        for j in range(len(coeffs) - 1, -1, -1):
            c = coeffs[j]
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                parts.append(f"{head}u" + (f"^{j}" if j > 1 else ""))
        return "+".join(parts) if parts else "0"

    def element_str(self, raw):
        return self._upoly_str(raw)

    def modulus_str(self) -> str:
        return self._upoly_str(self.modulus)

    def sort_key(self, raw):
        return tuple(reversed(raw))

    def spec_string(self):
        return f"GF({self.q};{self.modulus_str()})"

    def _key(self):
        return ("GF^k", self.p, self.modulus)


class ProductRing(Ring):
    """A finite product of finite rings, with componentwise arithmetic."""

    is_finite = True

    def __init__(self, factors):
        factors = tuple(factors)
        if len(factors) < 2:
            raise ValueError("a product needs at least two factors")
        for f in factors:
            if not isinstance(f, Ring):
                raise ValueError(f"not a ring: {f!r}")
            if not f.is_finite:
                raise ValueError(f"product factors must be finite rings: {f.spec_string()}")
        self.factors = factors
        self._init_constants()

    def _raw_from_int(self, k):
        return tuple(f._raw_from_int(k) for f in self.factors)

    def _raw_add(self, a, b):
        return tuple(f._raw_add(x, y) for f, x, y in zip(self.factors, a, b))

    def _raw_sub(self, a, b):
        return tuple(f._raw_sub(x, y) for f, x, y in zip(self.factors, a, b))

    def _raw_mul(self, a, b):
        return tuple(f._raw_mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _raw_neg(self, a):
        return tuple(f._raw_neg(x) for f, x in zip(self.factors, a))

    def _raw_is_unit(self, a):
        return all(f._raw_is_unit(x) for f, x in zip(self.factors, a))

    def _raw_inverse(self, a):
        return tuple(f._raw_inverse(x) for f, x in zip(self.factors, a))

    def _raw_is_zero_divisor(self, a):
        return any(f._raw_is_zero_divisor(x) for f, x in zip(self.factors, a))

    def _canon(self, value):
        if isinstance(value, int):
            return self._raw_from_int(value)
        if isinstance(value, (tuple, list)):
            if len(value) != len(self.factors):
                raise ValueError(
                    f"expected {len(self.factors)} components, got {len(value)}"
                )
            comps = []
            for f, v in zip(self.factors, value):
                if isinstance(v, RingElement):
                    if v.ring != f:
                        raise RingMismatchError("ring mismatch")
                    comps.append(v.value)
                else:
                    comps.append(f._canon(v))
            return tuple(comps)
        raise ValueError(f"not a product value: {value!r}")

    def order(self):
        n = 1
        for f in self.factors:
            n *= f.order()
        return n

    def elements(self):
        for combo in itertools.product(*(f.elements() for f in self.factors)):
            yield RingElement(self, tuple(e.value for e in combo))

    def characteristic(self):
        return math.lcm(*(f.characteristic() for f in self.factors))

    def element_str(self, raw):
        inner = ",".join(f.element_str(v) for f, v in zip(self.factors, raw))
        return f"({inner})"

    def sort_key(self, raw):
        return tuple(f.sort_key(v) for f, v in zip(self.factors, raw))

    def spec_string(self):
        return "*".join(f.spec_string() for f in self.factors)

    def _key(self):
        return ("product", tuple(f._key() for f in self.factors))


ZZ = IntegerRing()
QQ = RationalRing()


def condition_check(elements) -> str:
    """Classify a finite set by its pairwise differences.

    Returns "F" when every difference of distinct elements is a unit,
    "D_only" when all are non-zero-divisors but some is a non-unit, and
    "neither" otherwise.  Duplicates are collapsed; only differences of
    distinct elements are tested.
    """
    elts = list(elements)
    if not elts:
        raise ValueError("condition_check needs a nonempty set")
    ring = elts[0].ring
    for e in elts[1:]:
        if e.ring != ring:
            raise RingMismatchError("ring mismatch")
    distinct = list(dict.fromkeys(elts))
    saw_non_unit = False
    for i in range(len(distinct)):
        for j in range(i + 1, len(distinct)):
            d = distinct[i] - distinct[j]
            if d.is_zero_divisor():
                return "neither"
            if not d.is_unit():
                saw_non_unit = True
    return "D_only" if saw_non_unit else "F"
