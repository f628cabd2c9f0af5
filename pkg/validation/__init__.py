from .run_validator import known_keys, parse_caps, validate_run_config

__all__ = ['known_keys', 'parse_caps', 'validate_run_config']
