"""Tests for family enumeration and its statistics."""

from collections import Counter

import pytest

from config import Config
from constructions import construct_general
from exceptions import PreconditionError
from family import (
    brute_force_family,
    default_caps,
    degree_distribution,
    enumerate_family,
    exponent_closure,
    family_primes,
    member_statistics,
    normality_distribution,
    normality_table,
    pack,
    restricted_family,
    unpack,
    weight_distribution,
)
from gf import field_from_q, prime_field
from notation import parse_poly
from polyring import Poly, is_irreducible, iter_monic, poly_order, powmod, weight

F8 = field_from_q(8)
F16 = field_from_q(16)

F8_EXAMPLE = "x^5 + a*x^4 + x^3 + a*x^2 + (a^2+a)*x + a^2"
F1_TEXT = "x^8+x^5+x^3+x^2+a"
F2_POLY = ("x^9 + (a^2+a)*x^8 + (a^3+a^2)*x^7 + a*x^6 + x^5 + (a^3+a^2+a)*x^4 "
           "+ (a^2+a+1)*x^3 + a^2*x^2 + a^3*x + a^3+a^2+a")


def _first_irreducible(field, n):
    return next(f for f in iter_monic(field, n) if f.coeffs[0] and is_irreducible(f))


@pytest.fixture(scope="module")
def f2_report():
    return enumerate_family(parse_poly(F16, F2_POLY))


@pytest.fixture(scope="module")
def f2_tail_bases():
    f = parse_poly(F16, F2_POLY)
    return [construct_general(f, 3 ** i).output for i in range(3)]


class TestPacking:

    def test_pack_unpack(self):
        coeffs = (3, 0, 7, 1)
        assert unpack(pack(coeffs, 16), 16) == coeffs

    def test_degrees_do_not_collide(self):
        assert pack((0, 1), 16) != pack((0, 0, 1), 16)


class TestF2Family:
    """Members counted with and without the 3-adic tail bases f2, m_{beta^3}, m_{beta^9}."""

    def test_member_count(self, f2_report):
        assert len(f2_report) == 4647
        assert f2_report.primes == [3, 5]
        assert f2_report.order == 2 ** 36 - 1
        assert f2_report.caps == [111]

    def test_tail_bases(self, f2_report, f2_tail_bases):
        assert all(g in f2_report for g in f2_tail_bases)
        assert f2_tail_bases[0] == parse_poly(F16, F2_POLY)
        assert {weight(g) for g in f2_tail_bases} == {10}
        assert [f2_report.order // poly_order(g) for g in f2_tail_bases] == [1, 3, 9]
        assert len(f2_report) - len(f2_tail_bases) == 4644

    def test_weights(self, f2_report):
        assert weight_distribution(f2_report) == {6: 2, 7: 47, 8: 373, 9: 1401, 10: 2824}

    def test_weights_without_tail_bases(self, f2_report, f2_tail_bases):
        weights = Counter(weight_distribution(f2_report))
        weights.subtract(weight(g) for g in f2_tail_bases)
        assert dict(weights) == {6: 2, 7: 47, 8: 373, 9: 1401, 10: 2821}

    def test_orbits(self, f2_report):
        assert len(f2_report.orbits) == 21
        assert {o.length for o in f2_report.orbits} == {216}
        assert f2_report.tail_count == 111
        big = sum(o.length for o in f2_report.orbits if o.order == 509033161)
        assert big == 3888

    def test_member_orders_divide_e(self, f2_report):
        x = Poly.x(F16)
        one = Poly.constant(F16, 1)
        assert all(powmod(x, f2_report.order, g) == one for g in f2_report.member_polys())

    def test_all_members_have_degree_nine(self, f2_report):
        assert degree_distribution(f2_report) == {9: 4647}

    def test_normality_table(self, f2_report, f2_tail_bases):
        joint = Counter(normality_distribution(f2_report))
        _, tail_joint = member_statistics(F16, f2_tail_bases)
        assert tail_joint == {(10, 0): 3}
        joint.subtract(tail_joint)
        df = normality_table(dict(joint))
        assert list(df.columns) == ["Weight", "Total"] + [f"{k}-normal" for k in range(5)]
        assert df.values.tolist() == [
            [6, 2, 1, 1, 0, 0, 0],
            [7, 47, 28, 15, 4, 0, 0],
            [8, 373, 256, 102, 14, 1, 0],
            [9, 1401, 1091, 290, 18, 0, 2],
            [10, 2821, 2475, 339, 5, 2, 0],
        ]

    def test_contains(self, f2_report):
        f = parse_poly(F16, F2_POLY)
        assert f in f2_report

class TestF8Family:

    def test_full_family(self):
        f = parse_poly(F8, F8_EXAMPLE)
        report = enumerate_family(f)
        assert len(report) == 151
        assert report.tail_count == 1
        assert [o.length for o in report.orbits] == [150]
        assert report.caps == []

    def test_restricted_search_misses_most(self):
        f = parse_poly(F8, F8_EXAMPLE)
        assert len(restricted_family(f)) == 5

    def test_brute_force_agrees(self):
        f = parse_poly(F8, F8_EXAMPLE)
        report = enumerate_family(f)
        assert set(report.member_polys()) == brute_force_family(f)


class TestSmallFamilies:

    @pytest.mark.parametrize("q,n", [(7, 2), (13, 2), (16, 2), (9, 3), (11, 2)])
    def test_brute_force_agrees(self, q, n):
        f = _first_irreducible(field_from_q(q), n)
        report = enumerate_family(f)
        assert set(report.member_polys()) == brute_force_family(f)

    def test_parallel_matches_serial(self):
        f = _first_irreducible(F16, 3)
        serial = enumerate_family(f, record_exponents=True)
        parallel = enumerate_family(f, threads=3, record_exponents=True)
        assert serial.members == parallel.members
        assert serial.orbits == parallel.orbits
        assert serial.exponents == parallel.exponents

    def test_prime_two_has_single_member(self):
        f2 = prime_field(2)
        f = Poly(f2, (1, 1, 1))
        report = enumerate_family(f)
        assert family_primes(f2) == []
        assert len(report) == 1

    def test_default_caps(self):
        f = _first_irreducible(F16, 2)
        caps = default_caps(f, [3, 5])
        assert len(caps) == 1 and caps[0] >= 1

    def test_bad_caps(self):
        f = _first_irreducible(F16, 2)
        with pytest.raises(PreconditionError):
            enumerate_family(f, caps=[1, 2])
        with pytest.raises(PreconditionError):
            enumerate_family(f, caps=[-1])

    def test_recorded_exponents_reproduce_members(self):
        f = _first_irreducible(prime_field(13), 2)
        report = enumerate_family(f, record_exponents=True)
        assert set(report.exponents) == set(report.members)
        assert all(len(index) == 2 for index in report.exponents.values())


class TestExponentClosure:

    def test_small(self):
        assert exponent_closure([2], 7) == {1, 2, 4}
        assert exponent_closure([3, 5], 1) == {0}

    def test_rejects_bad_order(self):
        with pytest.raises(PreconditionError):
            exponent_closure([2], 0)


class TestStatistics:

    def test_member_statistics(self):
        f = parse_poly(F16, F1_TEXT)
        weights, joint = member_statistics(F16, [f, f])
        assert weights == {5: 1}
        assert sum(joint.values()) == 1

    def test_member_statistics_empty(self):
        assert member_statistics(F16, []) == ({}, {})

    def test_member_statistics_rejects_reducible(self):
        f5 = prime_field(5)
        with pytest.raises(PreconditionError):
            member_statistics(f5, [Poly(f5, (4, 0, 1))])

    def test_member_statistics_rejects_other_field(self):
        with pytest.raises(PreconditionError):
            member_statistics(F16, [Poly(prime_field(5), (2, 1))])

    def test_empty_table(self):
        assert list(normality_table({}).columns) == ["Weight", "Total"]

    def test_linear_members_are_zero_normal(self):
        f = _first_irreducible(prime_field(7), 1)
        _, joint = member_statistics(prime_field(7), [f])
        assert joint == {(2, 0): 1}

    def test_parallel_statistics(self):
        report = enumerate_family(_first_irreducible(F16, 3))
        serial = normality_distribution(report)
        assert normality_distribution(report, threads=2) == serial


@pytest.mark.extended
class TestF1Family:

    def test_f1_family(self):
        f = parse_poly(F16, F1_TEXT)
        report = enumerate_family(f, threads=Config.THREADS)
        assert len(report) == 1114113
        assert report.order == 2 ** 32 - 1
        assert weight_distribution(report) == {4: 6, 5: 384, 6: 7225, 7: 65997, 8: 331084, 9: 709417}

        assert len(report.orbits) == 33
        assert {o.length for o in report.orbits} == {32768}
        # the k = 1 branch is walked first
        assert report.orbits[0].start[0] == 0
        assert report.orbits[0].order == 3 * 17 * 257 * 65537
        assert {o.order for o in report.orbits[1:]} == {17 * 257 * 65537}
        assert report.tail_count == 1114113 - 33 * 32768

        df = normality_table(normality_distribution(report, threads=Config.THREADS))
        assert df.values.tolist() == [
            [4, 6, 1, 5, 0, 0],
            [5, 384, 139, 240, 5, 0],
            [6, 7225, 4160, 2927, 136, 2],
            [7, 65997, 47088, 17746, 1119, 44],
            [8, 331084, 283554, 44713, 2625, 192],
            [9, 709417, 709417, 0, 0, 0],
        ]
