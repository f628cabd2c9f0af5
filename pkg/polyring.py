"""Dense univariate polynomials over a finite field.

A ``Poly`` stores its coefficients as element codes of its field, degree-0
first, with no trailing zeros (the zero polynomial is the empty tuple and
has ``degree is None``). Polynomials are immutable and hashable.

Besides ring arithmetic this module holds the structural operations the
constructions are built from: twisting ``c^{-n} f(cX)``, composition degree
and extraction of ``g`` from ``g(X^k)``, shifts ``f(X + a)``, the Rabin
irreducibility test and the order of an irreducible polynomial.

Inner loops work on raw code lists; fields with exp/log tables take a
log-domain path (plain XOR accumulation in characteristic 2).
"""

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from base_arith import factorize, order_from_exponent
from exceptions import (
    FieldMismatchError,
    FieldZeroDivisionError,
    InvariantError,
    PreconditionError,
)
from gf import FieldElement, GaloisField

Codes = Tuple[int, ...]


def _strip(coeffs: List[int]) -> Tuple[int, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True, slots=True, eq=False)
class Poly:
    field: GaloisField
    coeffs: Codes

    def __post_init__(self) -> None:
        coeffs = self.coeffs
        if not isinstance(coeffs, tuple) or (coeffs and not coeffs[-1]):
            object.__setattr__(self, "coeffs", _strip(list(coeffs)))

    # ---- constructors ---- #

    @classmethod
    def x(cls, field: GaloisField) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: GaloisField, code: int) -> "Poly":
        return cls(field, (code,))

    # ---- queries ---- #

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def coefficients(self) -> List[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # ---- dunders ---- #

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.field is other.field or self.field == other.field)

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        return add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return sub(self, other)

    def __neg__(self) -> "Poly":
        neg = self.field.neg
        return Poly(self.field, tuple(neg(c) for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        return mul(self, other)

    def __mod__(self, other: "Poly") -> "Poly":
        return rem(self, other)

    def __divmod__(self, other: "Poly"):
        return divmod_poly(self, other)

    def __call__(self, x: FieldElement) -> FieldElement:
        return eval_poly(self, x)

    def __str__(self) -> str:
        from notation import format_poly
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self})"


def _check_same(f: Poly, g: Poly) -> GaloisField:
    if f.field is not g.field and f.field != g.field:
        raise FieldMismatchError(f"polynomials over {f.field} and {g.field}")
    return f.field


# --------------------------------------------------------------------------- #
# Code-level kernels
# --------------------------------------------------------------------------- #


def _add_codes(field: GaloisField, a: Codes, b: Codes) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if field.p == 2:
        for i, y in enumerate(b):
            out[i] ^= y
    else:
        fadd = field.add
        for i, y in enumerate(b):
            if y:
                out[i] = fadd(out[i], y)
    return out


def _mul_codes(field: GaloisField, a: Codes, b: Codes) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    log = field.log_table
    if log is not None:
        exp = field.exp_table
        la = [(i, log[x]) for i, x in enumerate(a) if x]
        lb = [(j, log[y]) for j, y in enumerate(b) if y]
        if field.p == 2:
            for i, x in la:
                for j, y in lb:
                    out[i + j] ^= exp[x + y]
        else:
            fadd = field.add
            for i, x in la:
                for j, y in lb:
                    out[i + j] = fadd(out[i + j], exp[x + y])
        return out
    fadd, fmul = field.add, field.mul
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = fadd(out[i + j], fmul(x, y))
    return out


def _rem_monic_codes(field: GaloisField, a: Sequence[int], m: Codes) -> List[int]:
    """Remainder of *a* modulo the monic code vector *m*."""
    d = len(m) - 1
    r = list(a)
    if len(r) <= d:
        return r
    tail = [(j, c) for j, c in enumerate(m[:d]) if c]
    log = field.log_table
    if log is not None:
        exp = field.exp_table
        ltail = [(j, log[c]) for j, c in tail]
        if field.p == 2:
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    lc = log[c]
                    base = i - d
                    for j, lm in ltail:
                        r[base + j] ^= exp[lc + lm]
                    r[i] = 0
        else:
            fsub = field.sub
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    lc = log[c]
                    base = i - d
                    for j, lm in ltail:
                        r[base + j] = fsub(r[base + j], exp[lc + lm])
                    r[i] = 0
    else:
        fsub, fmul = field.sub, field.mul
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c:
                base = i - d
                for j, mc in tail:
                    r[base + j] = fsub(r[base + j], fmul(c, mc))
                r[i] = 0
    return r[:d]


def _monic_codes(field: GaloisField, a: Codes) -> Codes:
    if not a or a[-1] == 1:
        return a
    inv = field.inv(a[-1])
    fmul = field.mul
    return tuple(fmul(c, inv) for c in a)


# --------------------------------------------------------------------------- #
# Ring arithmetic
# --------------------------------------------------------------------------- #


def add(f: Poly, g: Poly) -> Poly:
    field = _check_same(f, g)
    return Poly(field, _add_codes(field, f.coeffs, g.coeffs))


def sub(f: Poly, g: Poly) -> Poly:
    field = _check_same(f, g)
    return add(f, -g) if g.coeffs else f


def mul(f: Poly, g: Poly) -> Poly:
    field = _check_same(f, g)
    return Poly(field, _mul_codes(field, f.coeffs, g.coeffs))


def monic(f: Poly) -> Poly:
    if f.is_zero():
        return f
    return Poly(f.field, _monic_codes(f.field, f.coeffs))


def divmod_poly(f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    field = _check_same(f, g)
    if g.is_zero():
        raise FieldZeroDivisionError("polynomial division by zero")
    d = g.degree
    if f.is_zero() or f.degree < d:
        return Poly(field, ()), f
    inv_lead = field.inv(g.lead)
    fmul, fsub = field.mul, field.sub
    r = list(f.coeffs)
    quotient = [0] * (len(r) - d)
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i]
        if c:
            t = fmul(c, inv_lead)
            quotient[i - d] = t
            base = i - d
            for j, gc in enumerate(g.coeffs):
                if gc:
                    r[base + j] = fsub(r[base + j], fmul(t, gc))
    return Poly(field, quotient), Poly(field, r[:d])


def rem(f: Poly, g: Poly) -> Poly:
    field = _check_same(f, g)
    if g.is_zero():
        raise FieldZeroDivisionError("polynomial remainder by zero")
    return Poly(field, _rem_monic_codes(field, f.coeffs, _monic_codes(field, g.coeffs)))


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is the zero polynomial."""
    field = _check_same(f, g)
    a, b = f.coeffs, g.coeffs
    while b:
        mb = _monic_codes(field, b)
        a, b = mb, _strip(_rem_monic_codes(field, a, mb))
    return Poly(field, _monic_codes(field, a))


def powmod(f: Poly, e: int, modulus: Poly) -> Poly:
    """``f^e mod modulus`` by square-and-multiply on residues."""
    field = _check_same(f, modulus)
    if modulus.is_zero():
        raise FieldZeroDivisionError("powmod with zero modulus")
    if e < 0:
        raise PreconditionError(f"powmod needs e >= 0, got {e}")
    m = _monic_codes(field, modulus.coeffs)
    base = _strip(_rem_monic_codes(field, f.coeffs, m))
    result: Codes = _strip(_rem_monic_codes(field, (1,), m))
    while e:
        if e & 1:
            result = _strip(_rem_monic_codes(field, _mul_codes(field, result, base), m))
        e >>= 1
        if e:
            base = _strip(_rem_monic_codes(field, _mul_codes(field, base, base), m))
    return Poly(field, result)


def poly_pow(f: Poly, e: int) -> Poly:
    if e < 0:
        raise PreconditionError(f"poly_pow needs e >= 0, got {e}")
    field = f.field
    result: Codes = (1,)
    base = f.coeffs
    while e:
        if e & 1:
            result = tuple(_mul_codes(field, result, base))
        e >>= 1
        if e:
            base = tuple(_mul_codes(field, base, base))
    return Poly(field, result)


def eval_poly(f: Poly, x: FieldElement) -> FieldElement:
    field = f.field
    code = field(x).code
    fadd, fmul = field.add, field.mul
    acc = 0
    for c in reversed(f.coeffs):
        acc = fadd(fmul(acc, code), c)
    return FieldElement(field, acc)


def derivative(f: Poly) -> Poly:
    field = f.field
    p = field.p
    fmul = field.mul
    return Poly(field, [fmul(c, i % p) for i, c in enumerate(f.coeffs)][1:])


def compose_power(g: Poly, k: int) -> Poly:
    """g(X^k)."""
    if k < 1:
        raise PreconditionError(f"compose_power needs k >= 1, got {k}")
    if k == 1 or g.is_zero():
        return g
    out = [0] * ((len(g.coeffs) - 1) * k + 1)
    out[::k] = g.coeffs
    return Poly(g.field, out)


def map_coefficients(f: Poly, fn: Callable[[int], int]) -> Poly:
    return Poly(f.field, [fn(c) for c in f.coeffs])


def pth_root(f: Poly) -> Poly:
    """h with h^p = f, for f whose support lies in pZ."""
    field = f.field
    p = field.p
    if any(c for i, c in enumerate(f.coeffs) if i % p):
        raise PreconditionError("pth_root needs every exponent divisible by p")
    root_exp = field.q // p
    fpow = field.pow
    return Poly(field, [fpow(c, root_exp) for c in f.coeffs[::p]])


def is_squarefree(f: Poly) -> bool:
    if f.is_zero():
        return False
    if f.degree == 0:
        return True
    d = derivative(f)
    if d.is_zero():
        return False
    return gcd(f, d).degree == 0


def weight(f: Poly) -> int:
    """Number of nonzero coefficients, leading one included."""
    return sum(1 for c in f.coeffs if c)


def iter_monic(field: GaloisField, n: int) -> Iterator[Poly]:
    """Monic degree-n polynomials, constant term varying fastest."""
    for tail in itertools.product(range(field.q), repeat=n):
        yield Poly(field, tuple(reversed(tail)) + (1,))


# --------------------------------------------------------------------------- #
# Irreducibility and order
# --------------------------------------------------------------------------- #


def _frobenius_powers(f: Poly, count: int) -> List[Poly]:
    """[X^{q^1}, ..., X^{q^count}] reduced mod f."""
    q = f.field.q
    h = Poly.x(f.field) % f
    out = []
    for _ in range(count):
        h = powmod(h, q, f)
        out.append(h)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("is_irreducible needs deg f >= 1")
    n = f.degree
    if n == 1:
        return True
    f = monic(f)
    if not f.coeffs[0]:
        return False
    x = Poly.x(f.field)
    powers = _frobenius_powers(f, n)
    if powers[-1] != x:
        return False
    for t, _ in factorize(n):
        h = powers[n // t - 1]
        if gcd(h - x, f).degree != 0:
            return False
    return True


def poly_order(f: Poly, check: bool = True) -> int:
    """Least e with f | X^e - 1, for monic irreducible f with f(0) != 0."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("poly_order needs deg f >= 1")
    if not f.coeffs[0]:
        raise PreconditionError("poly_order needs f(0) != 0")
    if check and not is_irreducible(f):
        raise PreconditionError(f"poly_order needs an irreducible polynomial, got {f}")
    field = f.field
    n = f.degree
    if n == 1:
        return field.element_order_code(field.neg(_monic_codes(field, f.coeffs)[0]))
    x = Poly.x(field)
    one = Poly.constant(field, 1)
    return order_from_exponent(lambda e: powmod(x, e, f) == one, field.q ** n - 1)


# --------------------------------------------------------------------------- #
# Twists, composition structure and shifts
# --------------------------------------------------------------------------- #


def twist_codes(field: GaloisField, coeffs: Codes, c: int) -> List[int]:
    """Coefficient i becomes ``a_i * c^(i - n)``; *c* must be nonzero."""
    n = len(coeffs) - 1
    log = field.log_table
    if log is not None:
        exp = field.exp_table
        order = field.q - 1
        lc = log[c]
        return [exp[(log[a] + (i - n) * lc) % order] if a else 0 for i, a in enumerate(coeffs)]
    fmul = field.mul
    step = field.inv(c)
    out = [0] * (n + 1)
    scale = 1
    for i in range(n, -1, -1):
        a = coeffs[i]
        if a:
            out[i] = fmul(a, scale)
        scale = fmul(scale, step)
    return out


def scale_twist(f: Poly, c: FieldElement) -> Poly:
    """The monic twist ``c^{-n} f(cX)`` of monic f of degree n."""
    field = f.field
    code = field(c).code
    if not code:
        raise FieldZeroDivisionError("scale_twist needs c != 0")
    if not f.is_monic():
        raise PreconditionError("scale_twist needs a monic polynomial")
    return Poly(field, twist_codes(field, f.coeffs, code))


def composition_degree(f: Poly, k: int) -> int:
    """gcd(k, gcd of the exponents in the support of f)."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("composition_degree needs deg f >= 1")
    if not f.coeffs[0]:
        raise PreconditionError("composition_degree needs f(0) != 0")
    support = 0
    for i, c in enumerate(f.coeffs):
        if c:
            support = math.gcd(support, i)
    return math.gcd(k, support)


def extract_composition(h: Poly, k: int) -> Poly:
    """g with g(X^k) = h."""
    if k < 1:
        raise PreconditionError(f"extract_composition needs k >= 1, got {k}")
    if k == 1:
        return h
    coeffs = h.coeffs
    for i, c in enumerate(coeffs):
        if c and i % k:
            raise InvariantError(f"coefficient at X^{i} is off the X^{k} grid")
    return Poly(h.field, coeffs[::k])


def substitute_shift(f: Poly, a: FieldElement) -> Poly:
    """f(X + a) by Horner's rule."""
    field = f.field
    code = field(a).code
    if not code:
        raise PreconditionError("substitute_shift needs a != 0")
    fadd, fmul = field.add, field.mul
    acc: List[int] = []
    for c in reversed(f.coeffs):
        # acc * (X + a) + c
        shifted = [0] + acc
        for i, v in enumerate(acc):
            shifted[i] = fadd(shifted[i], fmul(v, code))
        shifted[0] = fadd(shifted[0], c)
        acc = shifted
    return Poly(field, acc)
