"""
Run-configuration validation for the irredforge CLI.
Checks the merged configuration (JSON layer + env + flags) before any
field is built, and reports every problem at once.
"""

import logging
from typing import Dict, List, Optional

logger = logging.getLogger(__name__)

VALID_FORMATS = {'text', 'json', 'csv'}

VALID_METHODS = {'general', 'cor8', 'prime', 'kk', 'ad'}

# Keys each subcommand reads from its run configuration.
_COMMON_KEYS = {'field', 'format', 'out', 'threads'}

COMMAND_KEYS = {
    'construct': _COMMON_KEYS | {'poly', 'k', 'method'},
    'iterate': _COMMON_KEYS | {'poly', 'prime'},
    'enumerate': _COMMON_KEYS | {'poly', 'caps', 'full'},
    'analyze': _COMMON_KEYS | {'members'},
    'verify': _COMMON_KEYS | {'poly', 'k', 'random', 'seed'},
    'order': _COMMON_KEYS | {'poly'},
}

# Keys without which a subcommand cannot run.
_REQUIRED = {
    'construct': ('field', 'poly', 'k'),
    'iterate': ('field', 'poly', 'prime'),
    'enumerate': ('field', 'poly'),
    'analyze': ('field', 'members'),
    'order': ('field', 'poly'),
}


def _positive_int(name: str, value) -> List[str]:
    errors = []
    if not isinstance(value, int) or isinstance(value, bool):
        errors.append(f"{name}: expected int, got {type(value).__name__}")
        return errors
    if value <= 0:
        errors.append(f"{name}: must be > 0, got {value}")
    return errors


def _non_negative_int(name: str, value) -> List[str]:
    errors = []
    if not isinstance(value, int) or isinstance(value, bool):
        errors.append(f"{name}: expected int, got {type(value).__name__}")
        return errors
    if value < 0:
        errors.append(f"{name}: must be >= 0, got {value}")
    return errors


def _non_empty_str(name: str, value) -> List[str]:
    if not isinstance(value, str) or not value.strip():
        return [f"{name}: expected a non-empty string, got {value!r}"]
    return []


def parse_caps(value) -> List[int]:
    """'3,4' or [3, 4] -> [3, 4]; raises ValueError on anything else."""
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        return [int(p) for p in parts]
    if isinstance(value, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        return list(value)
    raise ValueError(f"caps must be 'i1,i2,...' or a list of ints, got {value!r}")


def _validate_common(config: Dict) -> List[str]:
    errors = []

    if 'field' in config:
        errors += _non_empty_str('field', config['field'])
    if 'format' in config and config['format'] not in VALID_FORMATS:
        errors.append(
            f"format: invalid '{config['format']}', "
            f"must be one of {sorted(VALID_FORMATS)}"
        )
    if 'out' in config and config['out'] is not None:
        errors += _non_empty_str('out', config['out'])
    if 'threads' in config:
        errors += _positive_int('threads', config['threads'])
    if 'poly' in config:
        errors += _non_empty_str('poly', config['poly'])

    return errors


def _validate_construct(config: Dict) -> List[str]:
    errors = []
    if 'k' in config:
        errors += _positive_int('k', config['k'])
    method = config.get('method', 'general')
    if method not in VALID_METHODS:
        errors.append(f"method: invalid '{method}', must be one of {sorted(VALID_METHODS)}")
    return errors


def _validate_iterate(config: Dict) -> List[str]:
    errors = []
    if 'prime' in config:
        errors += _positive_int('prime', config['prime'])
    return errors


def _validate_enumerate(config: Dict) -> List[str]:
    errors = []
    if config.get('caps') is not None:
        try:
            caps = parse_caps(config['caps'])
        except ValueError as e:
            errors.append(f"caps: {e}")
        else:
            for i, cap in enumerate(caps):
                errors += _non_negative_int(f"caps[{i}]", cap)
    if 'full' in config and not isinstance(config['full'], bool):
        errors.append(f"full: expected bool, got {type(config['full']).__name__}")
    return errors


def _validate_verify(config: Dict) -> List[str]:
    errors = []
    if config.get('random') is not None:
        errors += _positive_int('random', config['random'])
    if config.get('seed') is not None:
        errors += _non_negative_int('seed', config['seed'])
    if config.get('random') is None:
        for key in ('field', 'poly', 'k'):
            if key not in config:
                errors.append(f"{key}: required unless --random is given")
    if 'k' in config:
        errors += _positive_int('k', config['k'])
    return errors


_COMMAND_VALIDATORS = {
    'construct': _validate_construct,
    'iterate': _validate_iterate,
    'enumerate': _validate_enumerate,
    'verify': _validate_verify,
}


def known_keys(command: str) -> set:
    """Keys a subcommand understands; used by the JSON layer for typo warnings."""
    return set(COMMAND_KEYS.get(command, _COMMON_KEYS))


def validate_run_config(command: str, config: Dict) -> Optional[str]:
    """Validate a run configuration and return an error message if invalid.

    Returns None if the configuration is valid, or a formatted error string
    describing all validation failures.
    """
    errors = []
    for key in _REQUIRED.get(command, ()):
        if config.get(key) is None:
            errors.append(f"{key}: required for '{command}'")
    present = {k: v for k, v in config.items() if v is not None}
    errors += _validate_common(present)

    validator = _COMMAND_VALIDATORS.get(command)
    if validator:
        errors += validator(present)

    if not errors:
        return None

    lines = [f"Invalid {command} configuration:"]
    for err in errors:
        lines.append(f"  - {err}")
    return "\n".join(lines)
