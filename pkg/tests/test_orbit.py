"""Tests for prime-step iteration, tail/orbit detection and order inference."""

import math
import random

import pytest

from base_arith import factorize, mult_order, nu_p
from constructions import prime_step
from exceptions import PreconditionError
from gf import field_from_q, prime_field
from notation import parse_poly
from oracle import random_irreducible
from orbit import OrderCandidates, candidate_witness, combine_valuations, infer_order, iterate_prime
from polyring import Poly, poly_order

F8 = field_from_q(8)
F16 = field_from_q(16)

F8_EXAMPLE = "x^5 + a*x^4 + x^3 + a*x^2 + (a^2+a)*x + a^2"
F2_POLY = ("x^9 + (a^2+a)*x^8 + (a^3+a^2)*x^7 + a*x^6 + x^5 + (a^3+a^2+a)*x^4 "
           "+ (a^2+a+1)*x^3 + a^2*x^2 + a^3*x + a^3+a^2+a")


@pytest.fixture(scope="module")
def f8_trace():
    return iterate_prime(parse_poly(F8, F8_EXAMPLE), 7)


class TestF8Example:

    def test_tail_and_orbit_lengths(self, f8_trace):
        assert f8_trace.tail_length == 1
        assert f8_trace.orbit_length == 150
        assert f8_trace.w == 1
        assert len(f8_trace.tail) == 1
        assert len(f8_trace.orbit) == 150

    def test_polys_are_distinct_and_chained(self, f8_trace):
        polys = f8_trace.polys
        assert len(set(polys)) == len(polys)
        for i in (0, 1, 50, 149):
            assert prime_step(polys[i], 7) == polys[i + 1]
        assert prime_step(polys[-1], 7) == polys[f8_trace.tail_length]

    def test_order_is_among_candidates(self, f8_trace):
        e = poly_order(f8_trace.base)
        assert e == 32767
        candidates = infer_order(f8_trace)
        assert candidates.contains(32767)
        assert candidates.k_adic_valuation == 1
        assert candidates.orders == sorted(candidates.orders)

    def test_orbit_orders(self, f8_trace):
        r = 32767 // 7
        assert poly_order(f8_trace.orbit[0]) == r
        assert poly_order(f8_trace.orbit[75]) == r
        assert mult_order(7, r) % 150 == 0


class TestIteratePrime:

    def test_order_coprime_to_k_has_no_tail(self):
        f7 = prime_field(7)
        f = Poly(f7, (5, 1))  # beta = 2, order 3
        trace = iterate_prime(f, 2)
        assert trace.tail_length == 0
        # beta -> beta^2 = 4 -> 16 = 2
        assert trace.orbit_length == 2
        assert trace.orbit[1] == Poly(f7, (3, 1))

    def test_x_minus_one(self):
        f7 = prime_field(7)
        trace = iterate_prime(Poly(f7, (6, 1)), 3)
        assert trace.tail_length == 0
        assert trace.orbit_length == 1
        assert infer_order(trace).contains(1)

    def test_f2_three_adic_tail(self):
        f = parse_poly(F16, F2_POLY)
        assert iterate_prime(f, 3).tail_length == 3

    def test_rejects_composite_k(self):
        with pytest.raises(PreconditionError):
            iterate_prime(parse_poly(F8, F8_EXAMPLE), 4)

    def test_rejects_k_not_dividing(self):
        with pytest.raises(PreconditionError):
            iterate_prime(parse_poly(F8, F8_EXAMPLE), 3)


class TestCombineValuations:

    def test_f2(self):
        f = parse_poly(F16, F2_POLY)
        assert combine_valuations(f, [3, 5]) == {3: 3, 5: 1}

    def test_primitive_quadratic_over_f9(self):
        f9 = field_from_q(9)
        f = next(
            g for g in (random_irreducible(f9, 2, random.Random(s)) for s in range(100))
            if poly_order(g) == 80
        )
        assert combine_valuations(f, [2]) == {2: nu_p(2, 80)}


class TestInferOrder:

    def test_candidate_witness_conditions(self):
        # r = 1 always qualifies for s = 1 with j = 0
        assert candidate_witness(8, 7, 1, 1, 5) == (1, 0)
        assert candidate_witness(8, 7, 1, 7, 5) is None

    def test_contains(self):
        oc = OrderCandidates(prime=3, k_adic_valuation=1, candidates=[(3, 1, 0), (15, 1, 0)])
        assert oc.contains(15)
        assert not oc.contains(5)
        assert oc.orders == [3, 15]

    def test_seeded_sweep(self):
        rng = random.Random(2024)
        orders = (3, 4, 5, 7, 8, 9, 11, 13, 16)
        for _ in range(200):
            field = field_from_q(rng.choice(orders))
            q = field.q
            k = rng.choice(factorize(q - 1).primes)
            f = random_irreducible(field, rng.randint(1, 3), rng)
            trace = iterate_prime(f, k)
            e = poly_order(f)
            l, s = trace.tail_length, trace.orbit_length
            assert l == nu_p(k, e)
            assert l <= trace.w

            candidates = infer_order(trace)
            assert candidates.contains(e)

            big = q ** f.degree - 1
            k_free = big // k ** nu_p(k, big)
            deg_l = trace.polys[l].degree
            for order, d, j in candidates.candidates:
                assert order % k ** l == 0
                r = order // k ** l
                assert k_free % r == 0
                assert math.gcd(k, r) == 1
                assert deg_l % d == 0
                assert s * d == mult_order(k, r)
                assert mult_order(pow(q, j, r) if r > 1 else 1, r) == d
                assert pow(k, s, r) == pow(q, j, r)

            # tail orders divide down by k, orbit orders equal the k-free part
            r_true = e // k ** l
            for i, g in enumerate(trace.polys):
                expected = e // k ** i if i < l else r_true
                assert poly_order(g) == expected
