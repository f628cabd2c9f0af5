"""Brute-force reference implementations.

Everything here works inside an explicit extension F_{q^n} = F_q[X]/(f)
and is deliberately independent of the F_q-only constructions it is used
to check: minimal and characteristic polynomials come from conjugate
products, the Daykin product is evaluated in F_{q^s} where the needed roots
of unity live, and k-normality is read off the literal gcd definition.

Descent back to F_q is checked coefficient by coefficient (an element of
the extension lies in F_q iff its code is below q); a failure raises
``InvariantError``.
"""

import logging
import math
import random
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from base_arith import factorize, mult_order
from config import Config
from exceptions import InvariantError, PreconditionError
from gf import GaloisField, field_from_q
from polyring import (
    Poly,
    _mul_codes,
    _rem_monic_codes,
    gcd,
    is_irreducible,
    iter_monic,
    rem,
)

logger = logging.getLogger(__name__)


class ExtensionCtx(GaloisField):
    """F_{q^n} as residues modulo a monic irreducible f over a base field.

    Element codes are base-q digits of the residue coefficients, so base
    field elements keep their own codes.
    """

    def __init__(self, modulus: Poly, table_limit: Optional[int] = None):
        base = modulus.field
        self.base = base
        self.modulus = modulus
        self.p = base.p
        self.degree = modulus.degree
        self.radix = base.q
        self.q = base.q ** self.degree
        self._key = (base, modulus.coeffs)
        limit = Config.EXTENSION_TABLE_LIMIT if table_limit is None else table_limit
        self._install_backend(limit)
        self.alpha = self.from_residue(rem(Poly.x(base), modulus))

    def _digit_add(self, a: int, b: int) -> int:
        return self.base.add(a, b)

    def _digit_neg(self, a: int) -> int:
        return self.base.neg(a)

    def _slow_mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        base = self.base
        prod = _mul_codes(base, self.to_digits(a), self.to_digits(b))
        residue = _rem_monic_codes(base, prod, self.modulus.coeffs)
        return self.from_digits(residue + [0] * (self.degree - len(residue)))

    def from_residue(self, r: Poly) -> int:
        digits = list(r.coeffs) + [0] * (self.degree - len(r.coeffs))
        return self.from_digits(digits)

    def to_residue(self, code: int) -> Poly:
        return Poly(self.base, self.to_digits(code))

    def in_base(self, code: int) -> bool:
        return code < self.radix

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, ExtensionCtx) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __reduce__(self):
        return build_extension, (self.modulus,)

    def __repr__(self) -> str:
        return f"ExtensionCtx({self.base!r}, {self.modulus})"

    __str__ = __repr__


@lru_cache(maxsize=256)
def _build_cached(modulus: Poly) -> ExtensionCtx:
    if modulus.is_zero() or modulus.degree < 1 or not modulus.is_monic():
        raise PreconditionError("build_extension needs a monic polynomial of degree >= 1")
    if not is_irreducible(modulus):
        raise PreconditionError(f"build_extension needs an irreducible modulus, got {modulus}")
    return ExtensionCtx(modulus)


def build_extension(f: Poly) -> ExtensionCtx:
    """F_{q^n} = F_q[X]/(f) with ``alpha`` the class of X."""
    return _build_cached(f)


def _lift(ctx: GaloisField, f: Poly) -> Poly:
    # Base codes are extension codes.
    return Poly(ctx, f.coeffs)


def _descend(base: GaloisField, f: Poly, what: str) -> Poly:
    for i, c in enumerate(f.coeffs):
        if c >= base.q:
            raise InvariantError(f"{what}: coefficient of X^{i} does not lie in F_{base.q}")
    return Poly(base, f.coeffs)


def _linear_product(ctx: GaloisField, roots: Sequence[int]) -> Poly:
    """prod (X - r) over *ctx*."""
    coeffs: List[int] = [1]
    fadd, fmul, fneg = ctx.add, ctx.mul, ctx.neg
    for r in roots:
        nr = fneg(r)
        nxt = [0] + coeffs
        for i, c in enumerate(coeffs):
            nxt[i] = fadd(nxt[i], fmul(c, nr))
        coeffs = nxt
    return Poly(ctx, coeffs)


def conjugates(ctx: ExtensionCtx, code: int) -> List[int]:
    """Distinct conjugates ``g, g^q, g^{q^2}, ...`` up to the first repeat."""
    q = ctx.base.q
    out = [code]
    c = ctx.pow(code, q)
    while c != code:
        out.append(c)
        c = ctx.pow(c, q)
    return out


def _check_input(f: Poly, k: int) -> None:
    if f.is_zero() or f.degree < 1 or not f.is_monic():
        raise PreconditionError("expected a monic polynomial of degree >= 1")
    if not f.coeffs[0]:
        raise PreconditionError("f = X is excluded (f(0) must be nonzero)")
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")


def min_poly_power(f: Poly, k: int) -> Poly:
    """m_{beta^k} as the product over the distinct conjugates of alpha^k."""
    _check_input(f, k)
    ctx = build_extension(f)
    gamma = ctx.pow(ctx.alpha, k)
    return _descend(f.field, _linear_product(ctx, conjugates(ctx, gamma)), "min_poly_power")


def char_poly_power(f: Poly, k: int) -> Poly:
    """chi_{beta^k} = prod_{i<n} (X - beta^{k q^i})."""
    _check_input(f, k)
    ctx = build_extension(f)
    q = f.field.q
    gamma = ctx.pow(ctx.alpha, k)
    roots = []
    for _ in range(f.degree):
        roots.append(gamma)
        gamma = ctx.pow(gamma, q)
    return _descend(f.field, _linear_product(ctx, roots), "char_poly_power")


def daykin_product(f: Poly, k: int) -> Poly:
    """chi_{beta^k}(X^k) as ``(-1)^{n(k+1)} prod_{j=1..k} f(zeta^j X)``.

    zeta generates the group of k'-th roots of unity, k' = k / gcd(q, k).
    When p still divides k' that group equals the one of its p-free part
    k0, so zeta has order k0 and lives in F_{q^s} with s = ord_{k0}(q).
    """
    _check_input(f, k)
    base = f.field
    q, p, n = base.q, base.p, f.degree
    k_prime = k // math.gcd(q, k)
    k0 = k_prime
    while k0 % p == 0:
        k0 //= p
    s = mult_order(q, k0) if k0 > 1 else 1
    if s == 1:
        ctx: GaloisField = base
    else:
        ctx = build_extension(find_irreducible(base, s))
    logger.debug(f"[oracle] daykin k={k} k'={k_prime} k0={k0} s={s}")
    zeta = ctx.root_of_unity(k0) if k0 > 1 else 1
    fmul, fpow = ctx.mul, ctx.pow
    product: List[int] = [1]
    for j in range(1, k + 1):
        c = fpow(zeta, j)
        twisted = [fmul(a, fpow(c, i)) for i, a in enumerate(f.coeffs)]
        product = _mul_codes(ctx, product, twisted)
    if n * (k + 1) % 2:
        neg = ctx.neg
        product = [neg(c) for c in product]
    result = Poly(ctx, product)
    if not result.is_monic():
        raise InvariantError(f"daykin product for k={k} is not monic")
    return _descend(base, result, "daykin_product")


def find_irreducible(field: GaloisField, s: int) -> Poly:
    """First monic irreducible of degree s, constant term varying fastest."""
    if s < 1:
        raise PreconditionError(f"find_irreducible needs s >= 1, got {s}")
    for f in iter_monic(field, s):
        if is_irreducible(f):
            return f
    raise InvariantError(f"no irreducible polynomial of degree {s} over {field}")  # unreachable


# --------------------------------------------------------------------------- #
# Independent checks
# --------------------------------------------------------------------------- #


def is_irreducible_by_trial_division(f: Poly) -> bool:
    """Exhaustive trial division by every monic polynomial up to degree n/2."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("deg f >= 1 required")
    for d in range(1, f.degree // 2 + 1):
        for g in iter_monic(f.field, d):
            if rem(f, g).is_zero():
                return False
    return True


def k_normality_by_gcd(f: Poly) -> int:
    """deg gcd(g_alpha, X^n - 1), g_alpha = sum_i alpha^{q^i} X^{n-1-i}."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("deg f >= 1 required")
    ctx = build_extension(f)
    n = f.degree
    q = f.field.q
    coeffs = [0] * n
    c = ctx.alpha
    for i in range(n):
        coeffs[n - 1 - i] = c
        c = ctx.pow(c, q)
    g_alpha = Poly(ctx, coeffs)
    x_n_minus_1 = Poly(ctx, [ctx.neg(1)] + [0] * (n - 1) + [1])
    return gcd(g_alpha, x_n_minus_1).degree


# --------------------------------------------------------------------------- #
# Seeded random cases
# --------------------------------------------------------------------------- #

SWEEP_FIELD_ORDERS = (3, 4, 5, 7, 8, 9, 11, 13, 16)


def random_irreducible(field: GaloisField, n: int, rng: random.Random) -> Poly:
    """Uniform monic irreducible of degree n with f(0) != 0."""
    if n < 1:
        raise PreconditionError(f"degree must be >= 1, got {n}")
    while True:
        coeffs = [rng.randrange(field.q) for _ in range(n)] + [1]
        if not coeffs[0]:
            continue
        f = Poly(field, coeffs)
        if is_irreducible(f):
            return f


def allowed_primes(q: int) -> List[int]:
    """Primes dividing q(q-1): the exponents constructions accept."""
    return sorted(set(factorize(q).primes) | set(factorize(q - 1).primes))


def random_exponent(q: int, rng: random.Random, max_k: int) -> int:
    primes = allowed_primes(q)
    k = 1
    while True:
        prime = rng.choice(primes)
        if k * prime > max_k or rng.random() < 0.25:
            return k
        k *= prime


def random_case(
    rng: random.Random,
    field_orders: Sequence[int] = SWEEP_FIELD_ORDERS,
    max_degree: int = 6,
    max_k: int = 200,
) -> Tuple[Poly, int]:
    """(f, k) with f irreducible over a sweep field and k built from primes of q(q-1)."""
    q = rng.choice(list(field_orders))
    field = field_from_q(q)
    n = rng.randint(1, max_degree)
    f = random_irreducible(field, n, rng)
    return f, random_exponent(q, rng, max_k)
