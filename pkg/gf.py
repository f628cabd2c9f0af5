"""Finite field arithmetic over F_q = F_p[Y]/(mu(Y)).

Elements are handled internally as integer codes: the coefficient vector
``(c0, c1, ..., c_{m-1})`` read as base-``radix`` digits, so code 0 is the
zero element and code 1 is the identity. ``FieldElement`` wraps a code and
exposes the vector form at the interface.

Three interchangeable back ends install the arithmetic callables on each
field instance (``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``pow``):

- prime fields (m = 1): direct modular integer arithmetic;
- small fields (``q <= Config.TABLE_LIMIT``): exp/log tables over a
  primitive element with Zech logarithms for addition (XOR in
  characteristic 2);
- everything else: vector arithmetic reducing modulo ``mu``.

All back ends return identical codes. ``GaloisField`` is the shared core;
``FieldSpec`` is F_{p^m} and ``oracle.ExtensionCtx`` reuses the same core
for F_{q^n} over a base ``FieldSpec``.

Fields are immutable after construction and safe to share across threads.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from base_arith import factorize, is_prime, order_from_exponent, prime_power_root
from config import Config
from exceptions import (
    FieldMismatchError,
    FieldZeroDivisionError,
    PreconditionError,
)

logger = logging.getLogger(__name__)


class GaloisField:
    """Shared arithmetic core for finite fields with integer element codes.

    Subclasses set ``p`` (characteristic), ``q`` (order), ``degree`` and
    ``radix`` (``q == radix ** degree``) and implement the slow primitives
    ``_digit_add``, ``_digit_neg`` and ``_slow_mul``, then call
    ``_install_backend``.
    """

    p: int
    q: int
    degree: int
    radix: int

    zero = 0
    one = 1

    def _digit_add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _digit_neg(self, a: int) -> int:
        raise NotImplementedError

    def _slow_mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    # ------------------------------------------------------------------ #
    # Digits
    # ------------------------------------------------------------------ #

    def to_digits(self, code: int) -> Tuple[int, ...]:
        radix = self.radix
        digits = []
        for _ in range(self.degree):
            code, d = divmod(code, radix)
            digits.append(d)
        return tuple(digits)

    def from_digits(self, digits: Sequence[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.radix + d
        return code

    def _slow_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self.to_digits(a), self.to_digits(b)
        return self.from_digits([self._digit_add(x, y) for x, y in zip(da, db)])

    def _slow_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits([self._digit_neg(x) for x in self.to_digits(a)])

    def _slow_pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self._slow_inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            e >>= 1
            if e:
                a = self._slow_mul(a, a)
        return result

    def _slow_inv(self, a: int) -> int:
        if a == 0:
            raise FieldZeroDivisionError(f"inverse of zero in {self}")
        return self._slow_pow(a, self.q - 2)

    # ------------------------------------------------------------------ #
    # Back end selection
    # ------------------------------------------------------------------ #

    def _install_backend(self, table_limit: int) -> None:
        self.exp_table: Optional[List[int]] = None
        self.log_table: Optional[List[int]] = None
        self._roots: Dict[int, List[int]] = {}
        self._generator: Optional[int] = None
        if self.q <= table_limit:
            self._install_tables()
        else:
            self._install_slow()

    def _install_slow(self) -> None:
        self.add = self._slow_add
        self.neg = self._slow_neg
        self.mul = self._slow_mul
        self.inv = self._slow_inv
        self.pow = self._slow_pow

        slow_add, slow_neg = self._slow_add, self._slow_neg

        def sub(a: int, b: int) -> int:
            return slow_add(a, slow_neg(b))

        self.sub = sub

    def _install_tables(self) -> None:
        n = self.q - 1
        g = self._find_generator(self._slow_pow)
        self._generator = g
        exp = [0] * (2 * n + 1)
        log = [0] * self.q
        x = 1
        slow_mul = self._slow_mul
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = slow_mul(x, g)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self.exp_table = exp
        self.log_table = log

        q = self.q
        char2 = self.p == 2
        half = n // 2

        def mul(a: int, b: int) -> int:
            if a and b:
                return exp[log[a] + log[b]]
            return 0

        def inv(a: int) -> int:
            if not a:
                raise FieldZeroDivisionError(f"inverse of zero in {self}")
            return exp[n - log[a]]

        def power(a: int, e: int) -> int:
            if not a:
                if e > 0:
                    return 0
                if e == 0:
                    return 1
                raise FieldZeroDivisionError(f"negative power of zero in {self}")
            return exp[log[a] * e % n]

        if char2:
            def add(a: int, b: int) -> int:
                return a ^ b

            def neg(a: int) -> int:
                return a

            sub = add
        else:
            # zech[d] = log(1 + g^d), -1 where 1 + g^d = 0.
            zech = [-1] * n
            slow_add = self._slow_add
            for d in range(n):
                s = slow_add(1, exp[d])
                zech[d] = log[s] if s else -1
            self.zech_table = zech

            def add(a: int, b: int) -> int:
                if not a:
                    return b
                if not b:
                    return a
                la = log[a]
                z = zech[(log[b] - la) % n]
                if z < 0:
                    return 0
                return exp[la + z]

            def neg(a: int) -> int:
                if not a:
                    return 0
                return exp[log[a] + half]

            def sub(a: int, b: int) -> int:
                if not b:
                    return a
                return add(a, exp[log[b] + half])

        self.add = add
        self.sub = sub
        self.neg = neg
        self.mul = mul
        self.inv = inv
        self.pow = power
        logger.debug(f"[gf] tables built for {self} (q={q})")

    # ------------------------------------------------------------------ #
    # Group structure
    # ------------------------------------------------------------------ #

    def lex_codes(self):
        """All element codes in lexicographic order of the coefficient vector
        (degree-0 entry compared first)."""
        for digits in itertools.product(range(self.radix), repeat=self.degree):
            yield self.from_digits(digits)

    def lex_key(self, code: int) -> Tuple[int, ...]:
        return self.to_digits(code)

    def _find_generator(self, power) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        cofactors = [n // prime for prime, _ in factorize(n)]
        for code in self.lex_codes():
            if code and all(power(code, c) != 1 for c in cofactors):
                return code
        raise PreconditionError(f"no primitive element found in {self}")  # unreachable for a field

    def generator(self) -> int:
        """Lexicographically first primitive element (code)."""
        if self._generator is None:
            self._generator = self._find_generator(self.pow)
        return self._generator

    def element_order_code(self, a: int) -> int:
        if a == 0:
            raise PreconditionError("element_order of zero")
        power = self.pow
        return order_from_exponent(lambda e: power(a, e) == 1, self.q - 1)

    def roots_of_unity_codes(self, k: int) -> List[int]:
        """Codes of all elements of order exactly k, lexicographically sorted."""
        if k < 1 or (self.q - 1) % k:
            raise PreconditionError(f"k={k} does not divide q-1={self.q - 1}")
        cached = self._roots.get(k)
        if cached is None:
            g = self.generator()
            step = self.pow(g, (self.q - 1) // k)
            cached = sorted(
                (self.pow(step, j) for j in range(1, k + 1) if math.gcd(j, k) == 1),
                key=self.lex_key,
            )
            self._roots[k] = cached
        return list(cached)

    def root_of_unity(self, k: int) -> int:
        """Deterministic primitive k-th root of unity: the lex-least one."""
        return self.roots_of_unity_codes(k)[0]

    def frobenius(self, a: int, power: int = 1) -> int:
        return self.pow(a, self.p ** power)

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(self, code) for code in range(self.q)]

    def __call__(self, value) -> "FieldElement":
        """Build an element from a code, a coefficient vector or an element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value} belongs to {value.field}, not {self}")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise PreconditionError(f"element code {value} out of range for {self}")
            return FieldElement(self, value)
        digits = list(value)
        if len(digits) > self.degree or any(not 0 <= d < self.radix for d in digits):
            raise PreconditionError(f"coefficient vector {digits} invalid for {self}")
        digits += [0] * (self.degree - len(digits))
        return FieldElement(self, self.from_digits(digits))


# --------------------------------------------------------------------------- #
# F_{p^m}
# --------------------------------------------------------------------------- #


class FieldSpec(GaloisField):
    """F_q = F_p[Y]/(mu(Y)) with ``modulus`` given degree-0 first.

    Use :func:`field_new` to build one; it validates the arguments and
    reuses instances so identity comparison is the common fast path.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int], table_limit: Optional[int] = None):
        self.p = p
        self.m = m
        self.degree = m
        self.radix = p
        self.q = p ** m
        self.modulus: Tuple[int, ...] = tuple(modulus)
        self._key = (p, m, self.modulus)
        # Y^m = -(mu_0 + ... + mu_{m-1} Y^{m-1}); kept as the reduction row.
        self._reduction = [(-c) % p for c in self.modulus[:m]]
        self._modulus_bits = 0
        if p == 2:
            for i, c in enumerate(self.modulus):
                if c:
                    self._modulus_bits |= 1 << i
        limit = Config.TABLE_LIMIT if table_limit is None else table_limit
        if m == 1:
            self._install_prime()
        else:
            self._install_backend(limit)

    def _install_prime(self) -> None:
        p = self.p
        self.exp_table = None
        self.log_table = None
        self._roots = {}
        self._generator = None

        def add(a: int, b: int) -> int:
            return (a + b) % p

        def sub(a: int, b: int) -> int:
            return (a - b) % p

        def neg(a: int) -> int:
            return -a % p

        def mul(a: int, b: int) -> int:
            return a * b % p

        def inv(a: int) -> int:
            if not a % p:
                raise FieldZeroDivisionError(f"inverse of zero in {self}")
            return pow(a, -1, p)

        def power(a: int, e: int) -> int:
            if a == 0:
                if e < 0:
                    raise FieldZeroDivisionError(f"negative power of zero in {self}")
                return 0 if e else 1
            return pow(a, e, p)

        self.add, self.sub, self.neg = add, sub, neg
        self.mul, self.inv, self.pow = mul, inv, power

    def _digit_add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _digit_neg(self, a: int) -> int:
        return -a % self.p

    def _slow_mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        m = self.m
        if self.p == 2:
            # Carry-less product, then reduce by mu.
            r = 0
            x = a
            while b:
                if b & 1:
                    r ^= x
                b >>= 1
                x <<= 1
            mod = self._modulus_bits
            for i in range(r.bit_length() - 1, m - 1, -1):
                if r >> i & 1:
                    r ^= mod << (i - m)
            return r
        p = self.p
        da, db = self.to_digits(a), self.to_digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] += x * y
        red = self._reduction
        for i in range(2 * m - 2, m - 1, -1):
            c = prod[i] % p
            if c:
                base = i - m
                for j in range(m):
                    prod[base + j] += c * red[j]
        return self.from_digits([c % p for c in prod[:m]])

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __reduce__(self):
        return field_new, (self.p, self.m, self.modulus)

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __str__(self) -> str:
        from notation import format_field
        return f"F_{self.q}[{format_field(self)}]"


@dataclass(frozen=True)
class FieldElement:
    """Element of a finite field: canonical integer code plus its field."""
    field: GaloisField
    code: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.to_digits(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"operands from {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            # Integers act through the prime subfield; n * 1 has code n mod p.
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.sub(self.code, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __str__(self) -> str:
        from notation import format_element
        return format_element(self)


# --------------------------------------------------------------------------- #
# Constructors and queries
# --------------------------------------------------------------------------- #


@lru_cache(maxsize=None)
def _field_cached(p: int, m: int, modulus: Tuple[int, ...]) -> FieldSpec:
    if not is_prime(p):
        raise PreconditionError(f"p={p} is not prime")
    if m < 1:
        raise PreconditionError(f"m={m} must be >= 1")
    if len(modulus) != m + 1 or modulus[m] != 1:
        raise PreconditionError(f"modulus must be monic of degree {m}, got {list(modulus)}")
    if any(not 0 <= c < p for c in modulus):
        raise PreconditionError(f"modulus coefficients must lie in [0, {p}), got {list(modulus)}")
    if p ** m > Config.MAX_FIELD_ORDER:
        raise PreconditionError(f"q={p}^{m} exceeds the supported field order 2^32")
    if m > 1:
        from polyring import Poly, is_irreducible
        if not is_irreducible(Poly(prime_field(p), modulus)):
            raise PreconditionError(f"modulus {list(modulus)} is reducible over F_{p}")
    return FieldSpec(p, m, modulus)


def field_new(p: int, m: int, modulus: Sequence[int]) -> FieldSpec:
    """Validated F_{p^m}; equal arguments return the same instance.

    For m = 1 any monic degree-1 modulus is accepted and the field is
    stored with the canonical modulus Y, so every F_p is a single instance.
    """
    modulus = tuple(modulus)
    if m == 1 and len(modulus) == 2 and modulus[1] == 1 and 0 <= modulus[0] < p:
        modulus = (0, 1)
    return _field_cached(p, m, modulus)


def prime_field(p: int) -> FieldSpec:
    return field_new(p, 1, (0, 1))


@lru_cache(maxsize=None)
def field_from_q(q: int) -> FieldSpec:
    """Built-in F_q using the first irreducible modulus in scan order.

    Gives Y^3+Y+1 for F_8 and Y^4+Y+1 for F_16.
    """
    p, m = prime_power_root(q)
    if m == 1:
        return prime_field(p)
    from polyring import Poly, is_irreducible
    base = prime_field(p)
    for tail in itertools.product(range(p), repeat=m):
        # Constant term varies fastest.
        modulus = tuple(reversed(tail)) + (1,)
        if modulus[0] and is_irreducible(Poly(base, modulus)):
            return field_new(p, m, modulus)
    raise PreconditionError(f"no irreducible modulus of degree {m} over F_{p}")  # unreachable


def element_order(x: FieldElement) -> int:
    return x.field.element_order_code(x.code)


def primitive_element(field: GaloisField) -> FieldElement:
    return FieldElement(field, field.generator())


def roots_of_unity(field: GaloisField, k: int) -> List[FieldElement]:
    return [FieldElement(field, c) for c in field.roots_of_unity_codes(k)]


def kth_root_of_unity(field: GaloisField, k: int) -> FieldElement:
    return FieldElement(field, field.root_of_unity(k))
