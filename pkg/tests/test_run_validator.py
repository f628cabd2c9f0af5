"""Tests for run-configuration validation."""

import pytest

from validation import known_keys, parse_caps, validate_run_config
from validation.run_validator import VALID_FORMATS, VALID_METHODS

CONSTRUCT = {'field': '2,4,y^4+y+1', 'poly': 'x^8+x^5+x^3+x^2+a', 'k': 3,
             'format': 'text', 'method': 'general', 'threads': 1}


class TestCommonValidation:

    def test_valid_construct_passes(self):
        assert validate_run_config('construct', CONSTRUCT) is None

    def test_all_formats_accepted(self):
        for fmt in VALID_FORMATS:
            assert validate_run_config('construct', {**CONSTRUCT, 'format': fmt}) is None

    def test_invalid_format(self):
        err = validate_run_config('construct', {**CONSTRUCT, 'format': 'xml'})
        assert err is not None
        assert 'format' in err

    def test_zero_threads(self):
        err = validate_run_config('construct', {**CONSTRUCT, 'threads': 0})
        assert err is not None
        assert 'threads' in err

    def test_bool_is_not_an_int(self):
        err = validate_run_config('construct', {**CONSTRUCT, 'threads': True})
        assert err is not None
        assert 'expected int' in err

    def test_blank_poly(self):
        err = validate_run_config('construct', {**CONSTRUCT, 'poly': '  '})
        assert err is not None
        assert 'poly' in err

    def test_missing_required_keys_are_all_reported(self):
        err = validate_run_config('construct', {'format': 'text'})
        assert err.startswith('Invalid construct configuration:')
        for key in ('field', 'poly', 'k'):
            assert f"{key}: required for 'construct'" in err

    def test_none_counts_as_missing(self):
        err = validate_run_config('order', {'field': '16', 'poly': None})
        assert "poly: required for 'order'" in err


class TestConstructValidation:

    def test_all_methods_accepted(self):
        for method in VALID_METHODS:
            assert validate_run_config('construct', {**CONSTRUCT, 'method': method}) is None

    def test_unknown_method(self):
        err = validate_run_config('construct', {**CONSTRUCT, 'method': 'magic'})
        assert 'method' in err

    def test_k_must_be_positive(self):
        err = validate_run_config('construct', {**CONSTRUCT, 'k': 0})
        assert 'k: must be > 0' in err


class TestIterateValidation:

    def test_negative_prime(self):
        err = validate_run_config('iterate', {'field': '16', 'poly': 'x+a', 'prime': -3})
        assert 'prime' in err

    def test_missing_prime(self):
        err = validate_run_config('iterate', {'field': '16', 'poly': 'x+a'})
        assert "prime: required for 'iterate'" in err


class TestEnumerateValidation:

    def test_caps_string(self):
        assert validate_run_config('enumerate', {'field': '16', 'poly': 'x+a', 'caps': '3'}) is None

    def test_caps_list(self):
        assert validate_run_config('enumerate', {'field': '7', 'poly': 'x+4', 'caps': [1, 2]}) is None

    def test_bad_caps(self):
        err = validate_run_config('enumerate', {'field': '16', 'poly': 'x+a', 'caps': [1, 'a']})
        assert 'caps' in err

    def test_negative_cap(self):
        err = validate_run_config('enumerate', {'field': '16', 'poly': 'x+a', 'caps': [-1]})
        assert 'caps[0]' in err

    def test_full_must_be_bool(self):
        err = validate_run_config('enumerate', {'field': '16', 'poly': 'x+a', 'full': 'yes'})
        assert 'full' in err


class TestVerifyValidation:

    def test_random_needs_no_poly(self):
        assert validate_run_config('verify', {'random': 10, 'seed': 42}) is None

    def test_single_case_needs_field_poly_k(self):
        err = validate_run_config('verify', {'seed': 42})
        for key in ('field', 'poly', 'k'):
            assert f"{key}: required unless --random is given" in err

    def test_negative_seed(self):
        err = validate_run_config('verify', {'random': 10, 'seed': -1})
        assert 'seed' in err


class TestHelpers:

    def test_parse_caps(self):
        assert parse_caps('3,4') == [3, 4]
        assert parse_caps(' 3 , 4 ') == [3, 4]
        assert parse_caps('') == []
        assert parse_caps([2]) == [2]

    def test_parse_caps_rejects(self):
        with pytest.raises(ValueError):
            parse_caps('a,b')
        with pytest.raises(ValueError):
            parse_caps(3)

    def test_known_keys(self):
        assert {'poly', 'caps', 'full', 'threads'} <= known_keys('enumerate')
        assert 'caps' not in known_keys('construct')
