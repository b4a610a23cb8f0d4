"""Arithmetic in GF(2^m).

Elements are integers in ``[0, 2^m)`` whose bits are the coefficients of a
polynomial over GF(2) (bit ``i`` is the coefficient of ``x^i``).  Addition is
XOR.  A :class:`Field` is built once with log/antilog tables keyed by the
smallest primitive element and is never mutated afterwards, so a single
instance can be shared freely between threads.

Scalar methods (``mul``, ``pow``, ``trace``, ...) take and return Python
ints; the ``*_many`` variants operate elementwise on integer numpy arrays
and are what the enumeration code uses.
"""

from __future__ import annotations

import functools
import re
from math import gcd

import numpy as np

from .errors import ConstructionError, DomainError, ParameterError

MIN_DEGREE = 2
MAX_DEGREE = 24
# above this degree no 2^m-sized tables are built
TABLE_DEGREE = 20


# -- polynomials over GF(2), bit-encoded ------------------------------------

def poly_degree(f: int) -> int:
    return f.bit_length() - 1


def poly_mod(a: int, f: int) -> int:
    df = poly_degree(f)
    while a and poly_degree(a) >= df:
        a ^= f << (poly_degree(a) - df)
    return a


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two bit-encoded polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mulmod(a: int, b: int, f: int) -> int:
    m = poly_degree(f)
    top = 1 << m
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= f
    return r


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: int) -> bool:
    """Rabin's test: f of degree m is irreducible iff x^(2^m) = x mod f and
    gcd(x^(2^(m/p)) - x, f) = 1 for every prime p dividing m."""
    m = poly_degree(f)
    if m < 1:
        return False
    if m == 1:
        return True
    # x^(2^i) mod f for i = 0..m
    powers = [2]
    for _ in range(m):
        powers.append(poly_mulmod(powers[-1], powers[-1], f))
    if powers[m] != 2:
        return False
    for p in _prime_factors(m):
        if poly_gcd(f, powers[m // p] ^ 2) != 1:
            return False
    return True


def irreducible_polynomials(m: int):
    """Yield the irreducible polynomials of degree m in ascending order."""
    for f in range(1 << m, 1 << (m + 1)):
        if f & 1 and is_irreducible(f):
            yield f


def smallest_irreducible(m: int) -> int:
    return next(irreducible_polynomials(m))


def poly_to_str(f: int) -> str:
    terms = []
    for i in range(poly_degree(f), -1, -1):
        if f >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms) or "0"


_TERM = re.compile(r"^(?:1|x(?:\^(\d+))?)$")


def parse_polynomial(text: str) -> int:
    """Parse ``0x13``, ``0b10011``, ``10011`` (binary digits) or ``x^4+x+1``."""
    s = text.strip().replace(" ", "").lower()
    if not s:
        raise ParameterError("empty polynomial")
    try:
        if s.startswith("0x"):
            return int(s[2:], 16)
        if s.startswith("0b"):
            return int(s[2:], 2)
        if set(s) <= {"0", "1"}:
            return int(s, 2)
    except ValueError:
        raise ParameterError(f"cannot parse polynomial {text!r}") from None
    f = 0
    for term in s.split("+"):
        mt = _TERM.match(term)
        if not mt:
            raise ParameterError(f"cannot parse polynomial {text!r}")
        if term == "1":
            e = 0
        else:
            e = int(mt.group(1)) if mt.group(1) else 1
        f ^= 1 << e
    return f


# -- vectorized helpers for the table-free path -----------------------------

def _clmul_many(xs: np.ndarray, ys: np.ndarray, m: int, f: int) -> np.ndarray:
    top = 1 << m
    a = xs.astype(np.int64, copy=True)
    b = ys.astype(np.int64, copy=True)
    r = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for _ in range(m):
        r ^= np.where(b & 1, a, 0)
        b >>= 1
        a <<= 1
        a = np.where(a & top, a ^ f, a)
    return r


# -- the field --------------------------------------------------------------

class Field:
    """GF(2^m) defined by an irreducible ``modulus`` of degree m.

    Use :func:`build_field` rather than calling this directly; it applies the
    default modulus and caches instances.

    Attributes are read-only by convention and the table arrays are flagged
    non-writeable.
    """

    def __init__(self, m: int, modulus: int):
        if not MIN_DEGREE <= m <= MAX_DEGREE:
            raise ParameterError(f"m={m} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
        if poly_degree(modulus) != m:
            raise ParameterError(
                f"modulus {poly_to_str(modulus)} does not have degree {m}"
            )
        if not is_irreducible(modulus):
            raise ConstructionError(f"modulus {poly_to_str(modulus)} is reducible")
        self.m = m
        self.modulus = modulus
        self.q = 1 << m
        self.order = self.q - 1
        self.has_tables = m <= TABLE_DEGREE
        self._exp = self._log = self.trace_table = None

        self.generator = find_generator(self)
        # bit i of the mask is Tr(x^i); Tr is then a parity of masked bits
        mask = 0
        for i in range(m):
            if self._trace_direct(1 << i):
                mask |= 1 << i
        self.trace_mask = mask
        if self.has_tables:
            self._build_tables()

    def __repr__(self):
        return f"Field(m={self.m}, modulus={poly_to_str(self.modulus)})"

    def _build_tables(self):
        n = self.order
        exp = np.empty(2 * n, dtype=np.int64)
        exp[0] = 1
        filled = 1
        step = self.generator  # g^filled
        while filled < n:
            take = min(filled, n - filled)
            exp[filled:filled + take] = _clmul_many(
                exp[:take], np.int64(step), self.m, self.modulus
            )
            filled += take
            step = self._mul_slow(step, step)
        exp[n:] = exp[:n]
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp[:n]] = np.arange(n, dtype=np.int64)
        if np.count_nonzero(log[1:] < 0):
            raise ConstructionError("generator does not span the multiplicative group")
        trace = (np.bitwise_count(np.arange(self.q, dtype=np.int64) & self.trace_mask) & 1)
        trace = trace.astype(np.uint8)
        for arr in (exp, log, trace):
            arr.flags.writeable = False
        self._exp, self._log, self.trace_table = exp, log, trace

    # -- scalar arithmetic --

    def _mul_slow(self, x: int, y: int) -> int:
        return poly_mulmod(x, y, self.modulus)

    def _pow_slow(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, x)
            x = self._mul_slow(x, x)
            e >>= 1
        return r

    def _trace_direct(self, x: int) -> int:
        s, y = 0, x
        for _ in range(self.m):
            s ^= y
            y = self._mul_slow(y, y)
        return s

    def _check(self, x: int):
        if not 0 <= x < self.q:
            raise ParameterError(f"{x} is not an element of GF(2^{self.m})")

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._log is None:
            return self._mul_slow(x, y)
        return int(self._exp[self._log[x] + self._log[y]])

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ParameterError("negative exponent; use inv")
        if x == 0:
            return 0 if e else 1
        if self._log is None:
            return self._pow_slow(x, e % self.order)
        return int(self._exp[(int(self._log[x]) * e) % self.order])

    def inv(self, x: int) -> int:
        if x == 0:
            raise DomainError("0 has no inverse")
        if self._log is None:
            return self._pow_slow(x, self.order - 1)
        return int(self._exp[(self.order - self._log[x]) % self.order])

    def log(self, x: int) -> int:
        """Discrete log to base ``self.generator``; undefined at 0."""
        if x == 0:
            raise DomainError("log of 0")
        if self._log is None:
            # baby-step giant-step would do, but nothing here needs it at m > 20
            raise ParameterError(f"no log table for m={self.m} > {TABLE_DEGREE}")
        return int(self._log[x])

    def antilog(self, k: int) -> int:
        if self._exp is None:
            return self._pow_slow(self.generator, k % self.order)
        return int(self._exp[k % self.order])

    def frobenius(self, x: int, k: int = 1) -> int:
        """x^(2^k)."""
        for _ in range(k % self.m):
            x = self.mul(x, x)
        return x

    def trace(self, x: int) -> int:
        """Absolute trace Tr_1^m(x) as a bit."""
        return (x & self.trace_mask).bit_count() & 1

    def rel_trace(self, x: int, b: int) -> int:
        """Tr_b^m(x) = x + x^(2^b) + ... + x^(2^(b(l-1))), l = m/b."""
        if b < 1 or self.m % b:
            raise ParameterError(f"{b} does not divide m={self.m}")
        s, y = 0, x
        for _ in range(self.m // b):
            s ^= y
            y = self.frobenius(y, b)
        return s

    def is_d_power(self, a: int, h: int) -> bool:
        """Whether a is a (2^h+1)-th power in the multiplicative group."""
        if a == 0:
            raise DomainError("a must be nonzero")
        _check_proper_divisor(self.m, h)
        d = gcd((1 << h) + 1, self.order)
        return self.pow(a, self.order // d) == 1

    # -- vectorized arithmetic --

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def mul_many(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        if self._log is None:
            return _clmul_many(xs, ys, self.m, self.modulus)
        zero = (xs == 0) | (ys == 0)
        r = self._exp[self._log[xs] + self._log[ys]]
        return np.where(zero, 0, r)

    def pow_many(self, xs, e: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        if e == 0:
            return np.ones_like(xs)
        if self._log is None:
            r = np.ones_like(xs)
            base = xs.copy()
            while e:
                if e & 1:
                    r = _clmul_many(r, base, self.m, self.modulus)
                base = _clmul_many(base, base, self.m, self.modulus)
                e >>= 1
            return r
        r = self._exp[(self._log[xs] * (e % self.order)) % self.order]
        return np.where(xs == 0, 0, r)

    def frobenius_many(self, xs, k: int = 1) -> np.ndarray:
        return self.pow_many(xs, pow(2, k % self.m))

    def trace_many(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return (np.bitwise_count(xs & self.trace_mask) & 1).astype(np.uint8)

    def rel_trace_many(self, xs, b: int) -> np.ndarray:
        if b < 1 or self.m % b:
            raise ParameterError(f"{b} does not divide m={self.m}")
        xs = np.asarray(xs, dtype=np.int64)
        s = np.zeros_like(xs)
        y = xs
        for _ in range(self.m // b):
            s ^= y
            y = self.frobenius_many(y, b)
        return s


def _check_proper_divisor(m: int, h: int):
    if h < 1 or h >= m or m % h:
        raise ParameterError(f"h={h} is not a proper divisor of m={m}")


def find_generator(field: Field) -> int:
    """Smallest element (by integer encoding) of multiplicative order 2^m - 1."""
    n = field.order
    cofactors = [n // p for p in _prime_factors(n)]
    for g in range(2, field.q):
        if all(field._pow_slow(g, c) != 1 for c in cofactors):
            return g
    raise ConstructionError("no generator found")  # unreachable for a field


@functools.lru_cache(maxsize=None)
def build_field(m: int, modulus: int | None = None) -> Field:
    """Build (or fetch the cached) GF(2^m); default modulus is the smallest
    irreducible polynomial of degree m."""
    if not MIN_DEGREE <= m <= MAX_DEGREE:
        raise ParameterError(f"m={m} outside [{MIN_DEGREE}, {MAX_DEGREE}]")
    if modulus is None:
        modulus = smallest_irreducible(m)
    return Field(m, modulus)


def element_order(field: Field, x: int) -> int:
    if x == 0:
        raise DomainError("0 has no multiplicative order")
    n = field.order
    for p in _prime_factors(n):
        while n % p == 0 and field.pow(x, n // p) == 1:
            n //= p
    return n
