"""Arithmetic in the finite fields GF(p^n).

Elements are polynomials over GF(p) reduced modulo a fixed monic irreducible
of degree n.  A polynomial c_0 + c_1 x + ... + c_{n-1} x^{n-1} is stored as the
coefficient tuple (c_0, ..., c_{n-1}), low degree first, and is also
identified with the integer *code* c_0 + c_1 p + ... + c_{n-1} p^{n-1}.
Codes are what the vectorised routines (Zorn tables, loop algebras) work on.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BadDegree, DivisionByZero, FieldTooLarge, MixedFields, NotPrime

MAX_FIELD_ORDER = 2**16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# --- polynomials over GF(p): tuples low degree first, no trailing zeros -----

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_mod(a, m, p):
    """Remainder of a modulo the nonzero polynomial m."""
    a = list(_trim(a))
    m = _trim(m)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = list(_trim(a))
    return tuple(a)


def monic_polys(p: int, degree: int):
    """All monic polynomials of the given degree, lexicographic low degree first."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in monic_polys(p, d):
            if not poly_mod(poly, cand, p):
                return False
    return True


def lowest_irreducible(p: int, n: int):
    for cand in monic_polys(p, n):
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {n} over GF({p})")


# --- fields ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    n: int
    modulus: tuple

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.q

    @property
    def characteristic(self) -> int:
        return self.p

    def _key(self):
        return (self.p, self.n, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    @property
    def spec(self) -> str:
        return f"{self.p}^{self.n}"

    # construction of elements
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._check(value)
            return value
        if isinstance(value, (int, np.integer)):
            c = [0] * self.n
            c[0] = int(value) % self.p
            return FieldElement(self, tuple(c))
        return self.element(value)

    def element(self, coeffs) -> "FieldElement":
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.n:
            coeffs = list(poly_mod(coeffs, self.modulus, self.p))
        coeffs += [0] * (self.n - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def from_code(self, code: int) -> "FieldElement":
        code = int(code)
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} out of range for {self!r}")
        c = []
        for _ in range(self.n):
            code, r = divmod(code, self.p)
            c.append(r)
        return FieldElement(self, tuple(c))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.n)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def elements(self) -> list["FieldElement"]:
        return [self.from_code(c) for c in range(self.q)]

    def nonzero(self) -> list["FieldElement"]:
        return [self.from_code(c) for c in range(1, self.q)]

    def _check(self, a):
        if a.field != self:
            raise MixedFields(f"{a.field!r} element used in {self!r}")

    # vectorised support
    @cached_property
    def primitive(self) -> "FieldElement":
        """Smallest-code generator of the multiplicative group."""
        m = self.q - 1
        factors = prime_factors(m)
        for code in range(1, self.q):
            g = self.from_code(code)
            if all(g ** (m // r) != self.one for r in factors):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    @cached_property
    def _log_exp(self):
        m = self.q - 1
        exp = np.zeros(max(m, 1), dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = self.one
        g = self.primitive
        for i in range(m):
            exp[i] = x.code
            log[x.code] = i
            x = x * g
        return log, exp

    @cached_property
    def digits(self) -> np.ndarray:
        """Coefficient table: digits[code] is the coefficient row of that element."""
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.n)], axis=1)

    @cached_property
    def vec(self) -> "VectorOps":
        return VectorOps(self)


class VectorOps:
    """Element-wise field arithmetic on integer arrays of codes."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.p = field.p
        self.q = field.q
        self.prime = field.n == 1
        if not self.prime:
            self._log, self._exp = field._log_exp
            self._weights = field.p ** np.arange(field.n, dtype=np.int64)

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.prime:
            return a[..., None]
        return self.field.digits[a]

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64) % self.p
        if self.prime:
            return d[..., 0]
        return d @ self._weights

    def add(self, a, b):
        if self.prime:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a):
        if self.prime:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.from_digits(-self.digits(a))

    def sub(self, a, b):
        if self.prime:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self.from_digits(self.digits(a) - self.digits(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.prime:
            return (a * b) % self.p
        m = self.q - 1
        prod = self._exp[(self._log[a] + self._log[b]) % m]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if self.prime:
            return np.asarray(pow_mod_array(a, self.p - 2, self.p))
        m = self.q - 1
        return self._exp[(-self._log[a]) % m]

    def sum(self, a, axis=None):
        """Field sum along an axis (all entries when axis is None)."""
        a = np.asarray(a, dtype=np.int64)
        d = self.digits(a)
        if axis is None:
            return self.from_digits(d.reshape(-1, d.shape[-1]).sum(axis=0))
        return self.from_digits(d.sum(axis=axis % a.ndim))


def pow_mod_array(a, e, p):
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FiniteField:
    """GF(p^n) modulo the lexicographically smallest monic irreducible of degree n."""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(p)
    if n < 1:
        raise BadDegree(n)
    if p**n > MAX_FIELD_ORDER:
        raise FieldTooLarge(f"{p}^{n} exceeds {MAX_FIELD_ORDER}")
    return FiniteField(int(p), int(n), lowest_irreducible(int(p), int(n)))


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field_spec(text: str) -> FiniteField:
    """Parse ``"p^n"`` (or bare ``"p"``) into a field."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"bad field spec {text!r}; expected p^n")
    return make_field(int(m.group(1)), int(m.group(2) or 1))


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: FiniteField
    coeffs: tuple

    @property
    def code(self) -> int:
        c = 0
        for x in reversed(self.coeffs):
            c = c * self.field.p + x
        return c

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __lt__(self, other):
        return self.code < other.code

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"{self.field!r}({format_element(self)})"

    def __str__(self):
        return format_element(self)

    def _other(self, other):
        if isinstance(other, FieldElement):
            self.field._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        f = self.field
        prod = poly_mod(poly_mul(_trim(self.coeffs), _trim(other.coeffs), f.p), f.modulus, f.p)
        return f.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise DivisionByZero(f"inverse of zero in {self.field!r}")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


def format_element(a: FieldElement) -> str:
    return ",".join(str(c) for c in a.coeffs)


def parse_element(field: FiniteField, text: str) -> FieldElement:
    parts = [t for t in text.replace(" ", "").split(",") if t]
    return field.element(int(t) for t in parts)


# --- squares -------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _square_roots(field: FiniteField) -> dict:
    roots: dict[int, int] = {}
    for x in field.elements():
        roots.setdefault((x * x).code, x.code)
    return roots


def is_square(a: FieldElement) -> bool:
    return a.code in _square_roots(a.field)


def sqrt(a: FieldElement) -> FieldElement | None:
    """A square root of a (the one of least code), or None."""
    r = _square_roots(a.field).get(a.code)
    return None if r is None else a.field.from_code(r)


def euler_criterion(a: FieldElement) -> bool:
    """a is a square iff a = 0 or a^((q-1)/2) = 1; odd q only."""
    f = a.field
    if f.p == 2:
        raise ValueError("Euler's criterion needs odd characteristic")
    return not a or a ** ((f.q - 1) // 2) == f.one


def is_closed_under_sqrt(field: FiniteField) -> bool:
    """Whether x^2 = a is solvable for every nonzero a, by enumeration."""
    roots = _square_roots(field)
    return all(c in roots for c in range(1, field.q))


def parity_claim(field: FiniteField) -> bool | None:
    """The n-is-even criterion asserted for odd characteristic; None when p = 2."""
    if field.p == 2:
        return None
    return field.n % 2 == 0
