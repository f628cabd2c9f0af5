"""Enumeration of the constructible family M and its statistics.

For f = m_beta over F_q with q - 1 = p_1^* ... p_m^* (p_1 < ... < p_m) the
family is M = {m_{beta^k} : k a product of the p_i}. It is enumerated the
way it is built: every exponent tuple (i_1, ..., i_{m-1}) within the caps
gives a *base* m_{beta^{p_1^{i_1} ... p_{m-1}^{i_{m-1}}}} and from each base
the prime-p_m step is iterated, collecting a tail and an orbit.

Duplicate avoidance
-------------------
A global map from polynomial to orbit id is kept. A branch whose base is
already known is skipped; a branch stops at the first known polynomial
and joins that polynomial's orbit; a branch whose chain closes on itself
opens a new orbit. Every known polynomial has all its p_m-successors known,
so stopping early never loses a member.

Parallel runs split the branches into contiguous chunks. Each worker walks
its chunk with a local map and the aggregator replays the chains in tuple
order under the rule above, so the report is identical for any worker
count.

Polynomials are stored packed as integers (base-q digits of the
coefficient codes); monic polynomials of different degrees never collide.
"""

import itertools
import logging
import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import pandas as pd

from base_arith import factorize
from constructions import construct_general, prime_step_codes, validate_input
from exceptions import PreconditionError
from gf import FieldSpec, field_new
from linalg import rank
from oracle import min_poly_power
from orbit import iterate_prime
from polyring import Codes, Poly, _monic_codes, is_irreducible, poly_order, powmod

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 10_000


def pack(coeffs: Codes, q: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * q + c
    return value


def unpack(value: int, q: int) -> Codes:
    digits = []
    while value:
        value, d = divmod(value, q)
        digits.append(d)
    return tuple(digits)


@dataclass
class Orbit:
    orbit_id: int
    # Exponent tuple (i_1, ..., i_m) of the first cycle member.
    start: Tuple[int, ...]
    members: List[int]
    order: int

    @property
    def length(self) -> int:
        return len(self.members)


@dataclass
class FamilyReport:
    base_poly: Poly
    field: FieldSpec
    order: int
    primes: List[int]
    caps: List[int]
    # packed polynomial -> id of the orbit its chain ends in
    members: Dict[int, int] = dc_field(default_factory=dict)
    orbits: List[Orbit] = dc_field(default_factory=list)
    # packed polynomial -> exponent tuple, filled when requested
    exponents: Dict[int, Tuple[int, ...]] = dc_field(default_factory=dict)
    weight_hist: Dict[int, int] = dc_field(default_factory=dict)
    normality_hist: Dict[Tuple[int, int], int] = dc_field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def tail_count(self) -> int:
        return len(self.members) - sum(o.length for o in self.orbits)

    def member_polys(self) -> List[Poly]:
        q = self.field.q
        return [Poly(self.field, unpack(v, q)) for v in sorted(self.members)]

    def orbit_polys(self, orbit: Orbit) -> List[Poly]:
        q = self.field.q
        return [Poly(self.field, unpack(v, q)) for v in orbit.members]

    def __contains__(self, f: Poly) -> bool:
        return pack(f.coeffs, self.field.q) in self.members


# --------------------------------------------------------------------------- #
# Branch walking
# --------------------------------------------------------------------------- #


@dataclass
class _Chain:
    index: Tuple[int, ...]
    packed: List[int]
    # polynomial following the last chain entry
    end: int


def _walk(field: FieldSpec, prime: int, zeta: int, base: Codes,
          known: Set[int]) -> Tuple[List[int], int]:
    """Follow prime steps from *base* until a known or repeated polynomial."""
    q = field.q
    chain: List[int] = []
    local: Set[int] = set()
    codes = base
    packed = pack(codes, q)
    while packed not in known and packed not in local:
        chain.append(packed)
        local.add(packed)
        codes, _ = prime_step_codes(field, codes, prime, zeta)
        packed = pack(codes, q)
    return chain, packed


_WORKER: Dict[str, object] = {}


def _init_worker(p: int, m: int, modulus: Tuple[int, ...], prime: int, zeta: int) -> None:
    _WORKER["field"] = field_new(p, m, modulus)
    _WORKER["prime"] = prime
    _WORKER["zeta"] = zeta


def _walk_chunk(branches: List[Tuple[Tuple[int, ...], Codes]]) -> List[_Chain]:
    field = _WORKER["field"]
    prime = _WORKER["prime"]
    zeta = _WORKER["zeta"]
    q = field.q
    known: Set[int] = set()
    out = []
    for index, base in branches:
        if pack(base, q) in known:
            out.append(_Chain(index, [], pack(base, q)))
            continue
        chain, end = _walk(field, prime, zeta, base, known)
        known.update(chain)
        out.append(_Chain(index, chain, end))
    return out


def _chunks(items: List, count: int) -> List[List]:
    size = max(1, math.ceil(len(items) / count))
    return [items[i:i + size] for i in range(0, len(items), size)]


# --------------------------------------------------------------------------- #
# Enumeration
# --------------------------------------------------------------------------- #


def family_primes(field: FieldSpec) -> List[int]:
    return factorize(field.q - 1).primes if field.q > 2 else []


def default_caps(f: Poly, primes: Sequence[int]) -> List[int]:
    """v_j + s_j from single-prime traces for all but the last prime."""
    caps = []
    for prime in primes[:-1]:
        trace = iterate_prime(f, prime)
        caps.append(trace.tail_length + trace.orbit_length)
    return caps


def _bases(f: Poly, primes: Sequence[int], caps: Sequence[int]) -> List[Tuple[Tuple[int, ...], Codes]]:
    """Base polynomials in tuple order, built incrementally by prime steps."""
    field = f.field
    zetas = [field.root_of_unity(prime) for prime in primes]
    built: Dict[Tuple[int, ...], Codes] = {(0,) * len(caps): f.coeffs}
    out = []
    for index in itertools.product(*(range(cap + 1) for cap in caps)):
        if index not in built:
            # Step the last nonzero coordinate down to a known tuple.
            pos = max(i for i, v in enumerate(index) if v)
            prev = index[:pos] + (index[pos] - 1,) + index[pos + 1:]
            built[index], _ = prime_step_codes(field, built[prev], primes[pos], zetas[pos])
        out.append((index, built[index]))
    return out


def enumerate_family(
    f: Poly,
    caps: Optional[Sequence[int]] = None,
    threads: int = 1,
    record_exponents: bool = False,
) -> FamilyReport:
    """Enumerate M for the monic irreducible f (see module docstring)."""
    validate_input(f)
    field = f.field
    if not isinstance(field, FieldSpec):
        raise PreconditionError("enumerate_family works over a FieldSpec")
    q = field.q
    primes = family_primes(field)
    e = poly_order(f, check=False)
    if caps is None:
        caps = default_caps(f, primes)
    caps = list(caps)
    if primes and len(caps) != len(primes) - 1:
        raise PreconditionError(f"expected {len(primes) - 1} caps for primes {primes}, got {caps}")
    if any(c < 0 for c in caps):
        raise PreconditionError(f"caps must be >= 0, got {caps}")

    report = FamilyReport(base_poly=f, field=field, order=e, primes=list(primes), caps=caps)
    if not primes:
        report.members[pack(f.coeffs, q)] = 0
        report.orbits.append(Orbit(0, (), [pack(f.coeffs, q)], e))
        return report

    last = primes[-1]
    zeta = field.root_of_unity(last)
    bases = _bases(f, primes, caps)
    logger.info(f"[family] {len(bases)} branches over primes {primes} with caps {caps}",
                extra={"field": str(field), "branch": len(bases)})

    if threads > 1 and len(bases) > 1:
        with ProcessPoolExecutor(
            max_workers=threads,
            initializer=_init_worker,
            initargs=(field.p, field.m, field.modulus, last, zeta),
        ) as pool:
            chains = [c for chunk in pool.map(_walk_chunk, _chunks(bases, threads)) for c in chunk]
    else:
        chains = None

    members = report.members
    next_report = PROGRESS_EVERY
    for n_branch, (index, base) in enumerate(bases):
        base_packed = pack(base, q)
        if base_packed in members:
            continue
        if chains is None:
            chain, end = _walk(field, last, zeta, base, members.keys())
        else:
            chain, end = chains[n_branch].packed, chains[n_branch].end
            # Stop where the serial walk would have stopped.
            for cut, value in enumerate(chain):
                if value in members:
                    chain, end = chain[:cut], value
                    break
        if end in members:
            orbit_id = members[end]
        else:
            start = chain.index(end)
            orbit_id = len(report.orbits)
            cycle = chain[start:]
            order = poly_order(Poly(field, unpack(cycle[0], q)), check=False)
            report.orbits.append(Orbit(orbit_id, index + (start,), cycle, order))
            logger.debug(f"[family] orbit {orbit_id}: length {len(cycle)} order {order}",
                         extra={"branch": n_branch})
        for j, value in enumerate(chain):
            members[value] = orbit_id
            if record_exponents:
                report.exponents[value] = index + (j,)
        if len(members) >= next_report:
            logger.info(f"[family] {len(members)} members", extra={"members": len(members)})
            next_report += PROGRESS_EVERY

    logger.info(f"[family] members={len(members)} orbits={len(report.orbits)}",
                extra={"members": len(members)})
    return report


# --------------------------------------------------------------------------- #
# Statistics
# --------------------------------------------------------------------------- #


def _k_normality_codes(field, coeffs: Codes) -> int:
    n = len(coeffs) - 1
    if n == 1:
        return 0
    f = Poly(field, coeffs)
    fadd, fmul = field.add, field.mul
    # Columns X^{qj} mod f of the (linear) Frobenius map.
    xq = powmod(Poly.x(field), field.q, f)
    cols: List[List[int]] = [[1] + [0] * (n - 1)]
    col = Poly.constant(field, 1)
    for _ in range(1, n):
        col = (col * xq) % f
        cols.append(list(col.coeffs) + [0] * (n - len(col.coeffs)))
    v = [0, 1] + [0] * (n - 2)
    rows = [v]
    for _ in range(1, n):
        nxt = [0] * n
        for j, c in enumerate(v):
            if c:
                for i, x in enumerate(cols[j]):
                    if x:
                        nxt[i] = fadd(nxt[i], fmul(c, x))
        v = nxt
        rows.append(v)
    return n - rank(field, rows)


def k_normality(f: Poly) -> int:
    """n minus the F_q-dimension spanned by alpha, alpha^q, ..., alpha^{q^{n-1}}."""
    if f.is_zero() or f.degree < 1:
        raise PreconditionError("k_normality needs deg f >= 1")
    if not is_irreducible(f):
        raise PreconditionError(f"k_normality needs an irreducible polynomial, got {f}")
    return _k_normality_codes(f.field, _monic_codes(f.field, f.coeffs))


def weight_distribution(report: FamilyReport) -> Dict[int, int]:
    q = report.field.q
    hist = Counter(sum(1 for c in unpack(v, q) if c) for v in report.members)
    report.weight_hist = dict(sorted(hist.items()))
    return report.weight_hist


def degree_distribution(report: FamilyReport) -> Dict[int, int]:
    q = report.field.q
    hist = Counter(len(unpack(v, q)) - 1 for v in report.members)
    return dict(sorted(hist.items()))


_STATS: Dict[str, object] = {}


def _init_stats(p: int, m: int, modulus: Tuple[int, ...]) -> None:
    _STATS["field"] = field_new(p, m, modulus)


def _normality_chunk(values: List[int]) -> Counter:
    field = _STATS["field"]
    return _normality_counts(field, values)


def _normality_counts(field, values: Iterable[int]) -> Counter:
    q = field.q
    hist: Counter = Counter()
    for value in values:
        codes = unpack(value, q)
        w = sum(1 for c in codes if c)
        hist[(w, _k_normality_codes(field, codes))] += 1
    return hist


def _normality_hist(field: FieldSpec, values: List[int], threads: int) -> Dict[Tuple[int, int], int]:
    if threads > 1 and len(values) > 1:
        hist: Counter = Counter()
        with ProcessPoolExecutor(
            max_workers=threads,
            initializer=_init_stats,
            initargs=(field.p, field.m, field.modulus),
        ) as pool:
            for part in pool.map(_normality_chunk, _chunks(values, threads * 4)):
                hist.update(part)
    else:
        hist = _normality_counts(field, values)
    return dict(sorted(hist.items()))


def normality_distribution(report: FamilyReport, threads: int = 1) -> Dict[Tuple[int, int], int]:
    """Joint (weight, k-normality) histogram over the members."""
    report.normality_hist = _normality_hist(report.field, sorted(report.members), threads)
    if not report.weight_hist:
        weight_distribution(report)
    return report.normality_hist


def member_statistics(
    field: FieldSpec,
    polys: Sequence[Poly],
    threads: int = 1,
) -> Tuple[Dict[int, int], Dict[Tuple[int, int], int]]:
    """(weight histogram, joint histogram) for an arbitrary list of irreducibles.

    Duplicates are counted once. An empty list gives two empty histograms.
    """
    values: Set[int] = set()
    for f in polys:
        if f.field != field:
            raise PreconditionError(f"member {f} is not over {field}")
        if f.is_zero() or f.degree < 1 or not f.is_monic() or not is_irreducible(f):
            raise PreconditionError(f"member {f} is not monic irreducible")
        values.add(pack(f.coeffs, field.q))
    joint = _normality_hist(field, sorted(values), threads)
    weights: Counter = Counter()
    for (w, _), count in joint.items():
        weights[w] += count
    return dict(sorted(weights.items())), joint


def normality_table(normality_hist: Dict[Tuple[int, int], int]) -> pd.DataFrame:
    """Weight, Total, 0-normal, 1-normal, ... one row per weight."""
    if not normality_hist:
        return pd.DataFrame(columns=["Weight", "Total"])
    top = max(k for _, k in normality_hist)
    weights = sorted({w for w, _ in normality_hist})
    rows = []
    for w in weights:
        counts = [normality_hist.get((w, k), 0) for k in range(top + 1)]
        rows.append([w, sum(counts)] + counts)
    columns = ["Weight", "Total"] + [f"{k}-normal" for k in range(top + 1)]
    return pd.DataFrame(rows, columns=columns)


# --------------------------------------------------------------------------- #
# Exponent sets and cross-checks
# --------------------------------------------------------------------------- #


def exponent_closure(primes: Sequence[int], e: int) -> Set[int]:
    """A mod e: products of *primes* reduced mod e, by breadth-first search."""
    if e < 1:
        raise PreconditionError(f"e must be >= 1, got {e}")
    start = 1 % e
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for prime in primes:
            y = x * prime % e
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def restricted_family(f: Poly, bound: Optional[int] = None) -> List[Poly]:
    """Distinct m_{beta^k} for products k of the primes of q-1 with 1 < k < bound.

    *bound* defaults to ord(f): the exponents a search without reduction
    mod e would reach.
    """
    validate_input(f)
    field = f.field
    primes = family_primes(field)
    if bound is None:
        bound = poly_order(f, check=False)
    exponents = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for prime in primes:
                y = x * prime
                if y < bound and y not in exponents:
                    exponents.add(y)
                    nxt.append(y)
        frontier = nxt
    found: Dict[Codes, Poly] = {}
    for k in sorted(exponents - {1}):
        g = construct_general(f, k).output
        found.setdefault(g.coeffs, g)
    return list(found.values())


def brute_force_family(f: Poly) -> Set[Poly]:
    """{min_poly_power(f, k) : k in A mod e} through the extension field."""
    validate_input(f)
    e = poly_order(f, check=False)
    primes = family_primes(f.field)
    return {min_poly_power(f, k or e) for k in exponent_closure(primes, e)}
