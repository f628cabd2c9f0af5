"""Constructions of m_{beta^k} from m_beta using only F_q arithmetic.

For a monic irreducible f = m_beta of degree n over F_q and k | q - 1 the
minimal polynomial of beta^k satisfies

    m_{beta^k}(X^k) = prod_{j=1}^{k/t} zeta_k^{-jn} f(zeta_k^j X)

where t is the composition degree of f with respect to k. Each factor is
the monic *twist* of f by zeta_k^j (``polyring.scale_twist``). Exponents
whose primes divide q - 1 are handled one prime at a time; the power of the
characteristic is absorbed by raising every coefficient to that power.

``ad_construct`` is the older route through characteristic polynomials. It
needs roots of unity outside F_q in general and is kept as an independent
cross-check of ``construct_general``.
"""

import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from base_arith import factorize, is_prime, mult_order, nu_p
from exceptions import InvariantError, PreconditionError
from gf import FieldElement, GaloisField
from polyring import (
    Codes,
    Poly,
    _mul_codes,
    _strip,
    composition_degree,
    derivative,
    divmod_poly,
    extract_composition,
    gcd,
    is_irreducible,
    map_coefficients,
    poly_order,
    poly_pow,
    pth_root,
    substitute_shift,
    twist_codes,
)

logger = logging.getLogger(__name__)


@dataclass
class ConstructionResult:
    output: Poly
    input_k: int
    # (prime, shortcut_used) per stage; characteristic stages never shortcut.
    steps: List[Tuple[int, bool]] = dc_field(default_factory=list)
    # p^v absorbed by the Frobenius descent.
    descent: int = 1

    @property
    def step_product(self) -> int:
        return math.prod(prime for prime, _ in self.steps)


# --------------------------------------------------------------------------- #
# Input checks
# --------------------------------------------------------------------------- #


def validate_input(f: Poly) -> None:
    """f must be monic irreducible with f(0) != 0."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("input polynomial must have degree >= 1")
    if not f.is_monic():
        raise PreconditionError(f"input polynomial must be monic, got {f}")
    if not f.coeffs[0]:
        raise PreconditionError("input polynomial must not be X (f(0) = 0)")
    if not is_irreducible(f):
        raise PreconditionError(f"input polynomial is reducible: {f}")


def _check_divides(field: GaloisField, k: int) -> None:
    if k < 1 or (field.q - 1) % k:
        raise PreconditionError(f"k={k} does not divide q-1={field.q - 1}")


def _zeta_code(field: GaloisField, k: int, zeta: Optional[FieldElement]) -> int:
    if zeta is None:
        return field.root_of_unity(k)
    code = field(zeta).code
    if not code or field.element_order_code(code) != k:
        raise PreconditionError(f"zeta={zeta} is not a primitive {k}-th root of unity")
    return code


# --------------------------------------------------------------------------- #
# Kernels
# --------------------------------------------------------------------------- #


def twisted_product(field: GaloisField, coeffs: Codes, zeta: int, count: int) -> List[int]:
    """prod_{j=1}^{count} twist(f, zeta^j) on code vectors."""
    fmul = field.mul
    product: List[int] = [1]
    c = 1
    for _ in range(count):
        c = fmul(c, zeta)
        twist = coeffs if c == 1 else twist_codes(field, coeffs, c)
        product = _mul_codes(field, product, twist)
    return product


def _extract_codes(coeffs: List[int], k: int) -> Codes:
    coeffs = _strip(coeffs)
    for i, c in enumerate(coeffs):
        if c and i % k:
            raise InvariantError(f"twisted product has a coefficient at X^{i}, off the X^{k} grid")
    return coeffs[::k]


def prime_step_codes(field: GaloisField, coeffs: Codes, k: int, zeta: int) -> Tuple[Codes, bool]:
    """Unchecked prime step on codes; returns (m_{beta^k}, shortcut_used)."""
    if all(not c for i, c in enumerate(coeffs) if i % k):
        return coeffs[::k], True
    return _extract_codes(twisted_product(field, coeffs, zeta, k), k), False


def _prime_step(f: Poly, k: int, zeta: int) -> Tuple[Poly, bool]:
    codes, shortcut = prime_step_codes(f.field, f.coeffs, k, zeta)
    return Poly(f.field, codes), shortcut


# --------------------------------------------------------------------------- #
# Public steps
# --------------------------------------------------------------------------- #


def kk_step(f: Poly) -> Poly:
    """C with C(X^2) = (-1)^n f(X) f(-X), for odd q."""
    field = f.field
    if field.q % 2 == 0:
        raise PreconditionError(f"kk_step needs odd q, got q={field.q}")
    validate_input(f)
    if composition_degree(f, 2) == 2:
        raise PreconditionError(f"kk_step needs f not of the form D(X^2), got {f}")
    minus_one = field.neg(1)
    product = _mul_codes(field, f.coeffs, twist_codes(field, f.coeffs, minus_one))
    return Poly(field, _extract_codes(product, 2))


def prime_step(f: Poly, k: int, zeta: Optional[FieldElement] = None) -> Poly:
    """m_{beta^k} for a prime k dividing q - 1."""
    if not is_prime(k):
        raise PreconditionError(f"k={k} is not prime")
    _check_divides(f.field, k)
    validate_input(f)
    return _prime_step(f, k, _zeta_code(f.field, k, zeta))[0]


def cor8_step(f: Poly, k: int, zeta: Optional[FieldElement] = None, direct: bool = False) -> Poly:
    """m_{beta^k} for any k dividing q - 1 in a single product.

    The default path first extracts g with f = g(X^t) and multiplies the
    k/t twists of g by zeta^t; ``direct=True`` multiplies k/t twists of f by
    zeta and extracts from X^k. Both give the same polynomial.
    """
    field = f.field
    _check_divides(field, k)
    validate_input(f)
    if k == 1:
        return f
    z = _zeta_code(field, k, zeta)
    t = composition_degree(f, k)
    count = k // t
    if direct:
        return Poly(field, _extract_codes(twisted_product(field, f.coeffs, z, count), k))
    g = extract_composition(f, t)
    if count == 1:
        return g
    zt = field.pow(z, t)
    return Poly(field, _extract_codes(twisted_product(field, g.coeffs, zt, count), count))


def frobenius_descent(f: Poly, d: int) -> Poly:
    """sum a_i^d X^i for a power d of the characteristic."""
    p = f.field.p
    if d < 1 or p ** nu_p(p, d) != d:
        raise PreconditionError(f"d={d} is not a power of the characteristic {p}")
    if d == 1:
        return f
    fpow = f.field.pow
    return map_coefficients(f, lambda c: fpow(c, d))


def split_exponent(p: int, k: int) -> Tuple[int, int]:
    """k = p^v * k' with p not dividing k'; returns (p^v, k')."""
    v = nu_p(p, k)
    return p ** v, k // p ** v


def construct_general(
    f: Poly,
    k: int,
    zeta_map: Optional[Dict[int, FieldElement]] = None,
) -> ConstructionResult:
    """m_{beta^k} for k whose primes divide q(q - 1), one prime at a time.

    Primes of q - 1 are applied in ascending order with multiplicity; the
    power of the characteristic is applied last. *zeta_map* overrides the
    root of unity used for a prime.
    """
    field = f.field
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    validate_input(f)
    d, rest = split_exponent(field.p, k)
    primes = [] if rest == 1 else [(r, e) for r, e in factorize(rest)]
    if not is_constructible(field, k):
        bad = next(r for r, _ in primes if (field.q - 1) % r)
        raise PreconditionError(f"prime {bad} divides neither q nor q-1")
    result = ConstructionResult(output=f, input_k=k, descent=d)
    current = f
    for r, e in primes:
        zeta = _zeta_code(field, r, (zeta_map or {}).get(r))
        for _ in range(e):
            current, shortcut = _prime_step(current, r, zeta)
            result.steps.append((r, shortcut))
    if d > 1:
        current = frobenius_descent(current, d)
        result.steps.extend((field.p, False) for _ in range(nu_p(field.p, d)))
    result.output = current
    logger.debug(f"[construct] k={k} steps={result.steps} degree={current.degree}")
    return result


def _radical_of_power(chi: Poly) -> Poly:
    """The monic irreducible m with chi = m^r, using derivative/gcd and p-th roots."""
    h = chi
    while True:
        if h.degree == 0:
            raise InvariantError("characteristic polynomial collapsed to a constant")
        dh = derivative(h)
        if dh.is_zero():
            h = pth_root(h)
            continue
        g = gcd(h, dh)
        if g.degree == 0:
            return h
        h, r = divmod_poly(h, g)
        if not r.is_zero():
            raise InvariantError("gcd(h, h') does not divide h")


def ad_construct(f: Poly, k: int) -> Poly:
    """m_{beta^k} through chi_{beta^k}(X^k) and the root chi = m^{n/m}."""
    from oracle import daykin_product

    validate_input(f)
    field = f.field
    n = f.degree
    e = poly_order(f, check=False)
    if k < 1 or k > e:
        raise PreconditionError(f"ad_construct needs 1 <= k <= ord(f)={e}, got k={k}")
    if k == 1:
        return f
    chi = extract_composition(daykin_product(f, k), k)
    e_k = e // math.gcd(e, k)
    m = mult_order(field.q, e_k) if e_k > 1 else 1
    if n % m:
        raise InvariantError(f"degree {m} of m_(beta^k) does not divide n={n}")
    result = chi if m == n else _radical_of_power(chi)
    if result.degree != m or poly_pow(result, n // m) != chi:
        raise InvariantError(f"chi is not the {n // m}-th power of a degree-{m} polynomial")
    return result


def shift_to_escape_composition(f: Poly) -> Tuple[Poly, FieldElement]:
    """First f(X + a), a != 0 in lex order, whose support exponents have gcd 1."""
    field = f.field
    for code in field.lex_codes():
        if not code:
            continue
        g = substitute_shift(f, FieldElement(field, code))
        support = 0
        for i, c in enumerate(g.coeffs):
            if c and i:
                support = math.gcd(support, i)
        if support == 1:
            return g, FieldElement(field, code)
    raise PreconditionError(f"no shift of {f} escapes composition form")


def is_constructible(field: GaloisField, k: int) -> bool:
    """True when every prime of k divides q or q - 1."""
    _, rest = split_exponent(field.p, k)
    return all((field.q - 1) % r == 0 for r in factorize(rest).primes) if rest > 1 else True


def check_output(f: Poly) -> None:
    """Postcondition used by tests and ``cli verify``."""
    if not f.is_monic() or not is_irreducible(f):
        raise InvariantError(f"construction output is not monic irreducible: {f}")
