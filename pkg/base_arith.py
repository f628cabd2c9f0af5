"""Exact integer utilities: primality, factorization, multiplicative order,
p-adic valuation and divisor enumeration.

Every integer handled here fits in 64 unsigned bits (the largest value the
family computations need is 16^9 - 1 = 68 719 476 735). Inputs beyond that
are rejected with :class:`IntegerRangeError` instead of silently running a
multiprecision factorization.

Factorization strips primes below ``2**10`` by trial division and
splits what remains with Brent's variant of Pollard rho; every reported
prime is certified by a Miller-Rabin test whose base set is deterministic
for 64-bit inputs.

All functions are pure; ``factorize`` is memoised.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from exceptions import IntegerRangeError, PreconditionError

MAX_INT = 1 << 64

# Deterministic Miller-Rabin witnesses for every n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _check_range(n: int, name: str = "n") -> None:
    if n > MAX_INT:
        raise IntegerRangeError(f"{name}={n} exceeds the 64-bit cap 2^64")


def _small_primes(bound: int) -> List[int]:
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound, i)))
    return [i for i in range(bound) if sieve[i]]


# Trial division only needs primes up to 2^10 to clear factors below 2^20
# from the cofactor test; larger factors below the bound are found by rho.
_TRIAL_PRIMES = _small_primes(1 << 10)


# --------------------------------------------------------------------------- #
# Factorization value type
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending ``(prime, exponent)`` pairs.

    ``Factorization(())`` is the factorization of 1.
    """
    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for prime, exponent in self.pairs:
            if prime <= last or exponent < 1:
                raise PreconditionError(f"malformed factorization pairs {self.pairs}")
            last = prime

    @classmethod
    def from_dict(cls, factors: Dict[int, int]) -> "Factorization":
        return cls(tuple(sorted((p, e) for p, e in factors.items() if e > 0)))

    @property
    def value(self) -> int:
        result = 1
        for prime, exponent in self.pairs:
            result *= prime ** exponent
        return result

    @property
    def primes(self) -> List[int]:
        return [prime for prime, _ in self.pairs]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.pairs)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


# --------------------------------------------------------------------------- #
# Primality and factoring
# --------------------------------------------------------------------------- #


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < 2^64`` (Miller-Rabin)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of the odd composite *n*.

    Deterministic: the polynomial constant runs through 1, 2, 3, ... until
    a cycle yields a proper divisor.
    """
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        batch = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += batch
            r *= 2
        if g == n:
            # Batched gcd overshot; retrace one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise PreconditionError(f"rho failed to split {n}")  # unreachable for composite n


def _split(n: int, found: Dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        found[n] = found.get(n, 0) + 1
        return
    root = math.isqrt(n)
    if root * root == n:
        _split(root, found)
        _split(root, found)
        return
    d = _brent_rho(n)
    _split(d, found)
    _split(n // d, found)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Factor ``1 <= n <= 2^64`` into ascending prime powers."""
    if n < 1:
        raise PreconditionError(f"factorize needs n >= 1, got {n}")
    _check_range(n)
    found: Dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    # Remaining cofactor has no prime factor below 2^10.
    if n > 1:
        _split(n, found)
    return Factorization.from_dict(found)


# --------------------------------------------------------------------------- #
# Derived arithmetic
# --------------------------------------------------------------------------- #


def nu_p(p: int, n: int) -> int:
    """p-adic valuation: the largest v with ``p^v | n``."""
    if p < 2:
        raise PreconditionError(f"nu_p needs a prime p, got {p}")
    if n < 1:
        raise PreconditionError(f"nu_p needs n >= 1, got {n}")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisors(fact: Factorization) -> List[int]:
    """All divisors of ``fact.value`` in ascending order."""
    result = [1]
    for prime, exponent in fact:
        result = [d * prime ** i for d in result for i in range(exponent + 1)]
    return sorted(result)


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def euler_phi(fact: Factorization) -> int:
    result = 1
    for prime, exponent in fact:
        result *= (prime - 1) * prime ** (exponent - 1)
    return result


def carmichael_lambda(fact: Factorization) -> int:
    """Exponent of the unit group of Z/nZ."""
    result = 1
    for prime, exponent in fact:
        if prime == 2 and exponent >= 3:
            part = 1 << (exponent - 2)
        else:
            part = (prime - 1) * prime ** (exponent - 1)
        result = lcm(result, part)
    return result


def order_from_exponent(is_identity, exponent: int) -> int:
    """Least divisor e of *exponent* with ``is_identity(e)``.

    *is_identity* must be true at *exponent* itself; the group-order
    reduction strips one prime at a time while the power stays trivial.
    """
    order = exponent
    for prime, _ in factorize(exponent):
        while order % prime == 0 and is_identity(order // prime):
            order //= prime
    return order


def mult_order(a: int, r: int) -> int:
    """Multiplicative order of *a* modulo *r* (``gcd(a, r) == 1``)."""
    if r < 1:
        raise PreconditionError(f"mult_order needs r >= 1, got {r}")
    _check_range(r, "r")
    if math.gcd(a, r) != 1:
        raise PreconditionError(f"mult_order needs gcd(a, r) = 1, got a={a}, r={r}")
    if r == 1:
        return 1
    a %= r
    lam = carmichael_lambda(factorize(r))
    return order_from_exponent(lambda e: pow(a, e, r) == 1, lam)


def prime_power_root(n: int) -> Tuple[int, int]:
    """Return ``(p, m)`` with ``n == p**m`` for a prime p, else raise."""
    fact = factorize(n) if n > 1 else Factorization(())
    if len(fact) != 1:
        raise PreconditionError(f"{n} is not a prime power")
    return fact.pairs[0]
