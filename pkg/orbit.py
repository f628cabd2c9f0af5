"""Iterated prime steps: tail/orbit detection and order inference.

Repeatedly applying the prime-k step to f = f_0 gives f_1, f_2, ... with
f_{i+1} = m_{beta^{k^{i+1}}}. The sequence is eventually periodic: the
first l polynomials (the tail) have orders e/k^i, after which the orders
stay at the k-free part r of e and the polynomials cycle with period s
(the orbit). l equals the k-adic valuation of e, which bounds the tail by
w = nu_k(q^n - 1).

From (l, s, deg f_l) alone the order of f is narrowed to the values
k^l * r where r | (q^n - 1)/k^w passes the divisibility checks in
``infer_order``.
"""

import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Tuple

from base_arith import divisors, factorize, is_prime, mult_order, nu_p
from constructions import prime_step_codes, validate_input
from exceptions import InvariantError, PreconditionError
from polyring import Codes, Poly

logger = logging.getLogger(__name__)


@dataclass
class IterationTrace:
    prime: int
    polys: List[Poly]
    tail_length: int
    orbit_length: int
    # nu_k(q^n - 1)
    w: int

    @property
    def tail(self) -> List[Poly]:
        return self.polys[:self.tail_length]

    @property
    def orbit(self) -> List[Poly]:
        return self.polys[self.tail_length:]

    @property
    def base(self) -> Poly:
        return self.polys[0]


@dataclass
class OrderCandidates:
    prime: int
    k_adic_valuation: int
    # (order, d, j): order = k^l * r with ord_r(q^j) = d, k^s = q^j mod r.
    candidates: List[Tuple[int, int, int]] = dc_field(default_factory=list)

    @property
    def orders(self) -> List[int]:
        return [order for order, _, _ in self.candidates]

    def contains(self, e: int) -> bool:
        return any(order == e for order, _, _ in self.candidates)


def _check_prime(field, k: int) -> None:
    if not is_prime(k):
        raise PreconditionError(f"k={k} is not prime")
    if (field.q - 1) % k:
        raise PreconditionError(f"prime {k} does not divide q-1={field.q - 1}")


def iterate_prime(f: Poly, k: int) -> IterationTrace:
    """Apply the prime-k step until a polynomial repeats."""
    field = f.field
    _check_prime(field, k)
    validate_input(f)
    n = f.degree
    cap = field.q ** n
    w = nu_p(k, cap - 1)
    zeta = field.root_of_unity(k)

    seen: Dict[Codes, int] = {}
    sequence: List[Codes] = []
    current = f.coeffs
    while current not in seen:
        if len(sequence) >= cap:
            raise InvariantError(f"iteration with k={k} exceeded the q^n={cap} safety cap")
        seen[current] = len(sequence)
        sequence.append(current)
        current, _ = prime_step_codes(field, current, k, zeta)

    tail_length = seen[current]
    orbit_length = len(sequence) - tail_length
    if tail_length > w:
        raise InvariantError(f"tail length {tail_length} exceeds nu_{k}(q^n-1)={w}")
    logger.debug(f"[orbit] k={k} tail={tail_length} orbit={orbit_length}",
                 extra={"prime": k, "degree": n})
    return IterationTrace(
        prime=k,
        polys=[Poly(field, c) for c in sequence],
        tail_length=tail_length,
        orbit_length=orbit_length,
        w=w,
    )


def candidate_witness(q: int, k: int, s: int, r: int, degree: int):
    """(d, j) making r admissible for orbit length s, or None.

    Checks gcd(k, r) = 1 and, for some 0 <= j < degree, k^s = q^j mod r,
    d = ord_r(q^j) divides *degree* and s * d = ord_r(k).
    """
    if math.gcd(k, r) != 1 or math.gcd(q, r) != 1:
        return None
    ord_k = mult_order(k, r)
    ks = pow(k, s, r)
    for j in range(degree):
        qj = pow(q, j, r)
        if ks != qj % r:
            continue
        d = mult_order(qj, r)
        if degree % d == 0 and s * d == ord_k:
            return d, j
    return None


def infer_order(trace: IterationTrace) -> OrderCandidates:
    """All orders compatible with the trace, ascending."""
    base = trace.base
    q = base.field.q
    k = trace.prime
    big = q ** base.degree - 1
    k_free = big // k ** nu_p(k, big)
    degree = trace.polys[trace.tail_length].degree
    prefix = k ** trace.tail_length
    result = OrderCandidates(prime=k, k_adic_valuation=trace.tail_length)
    for r in divisors(factorize(k_free)):
        witness = candidate_witness(q, k, trace.orbit_length, r, degree)
        if witness is not None:
            result.candidates.append((prefix * r, witness[0], witness[1]))
    result.candidates.sort()
    return result


def combine_valuations(f: Poly, primes: List[int]) -> Dict[int, int]:
    """{p_i: nu_{p_i}(ord f)} read off the tail lengths."""
    return {prime: iterate_prime(f, prime).tail_length for prime in primes}
