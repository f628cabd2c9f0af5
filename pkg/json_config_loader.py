"""JSON run-configuration loader with flat / nested auto-detection.

A run configuration is the flat ``Dict[str, Any]`` the CLI builds from
its flags (``field``, ``poly``, ``k``, ``caps``, ``threads``, ...). This
module adds JSON files as an input layer underneath the flags:

* **flat** form: keys match the CLI flag names directly
  (``{"field": "2,4,y^4+y+1", "k": 3}``).
* **nested** form: settings grouped by subcommand, optionally with
  further nesting that is joined with underscores:

      {"enumerate": {"caps": "3", "threads": 4}, "verify": {"random": 100}}

Only the section for the running subcommand is lifted; sections for
other subcommands are ignored so one file can serve every command.

Layering precedence (highest wins):

    CLI flags  >  env vars  >  JSON files  >  built-in defaults

JSON is opt-in: with no ``--config`` flag and no ``IRREDFORGE_CONFIG``
env var this module is never invoked.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

from exceptions import ConfigurationError

logger = logging.getLogger(__name__)


# Top-level JSON keys recognised as subcommand namespaces.
COMMAND_NAMESPACES: Tuple[str, ...] = ("construct", "iterate", "enumerate", "analyze", "verify", "order")


class ConfigError(ConfigurationError):
    """Raised when a JSON config is structurally invalid (e.g., parse error)."""


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #


def load_json_configs(
    paths: List[str],
    command: str,
    known_keys: Optional[Set[str]] = None,
) -> Dict[str, Any]:
    """Read and merge JSON config files in declaration order.

    Later paths override earlier ones (``dict.update`` semantics). Missing
    files raise :class:`ConfigError`: a run against the wrong field or
    polynomial is worse than no run. Keys outside *known_keys* produce a
    warning.
    """
    merged: Dict[str, Any] = {}
    for path in paths:
        p = Path(path)
        if not p.exists():
            raise ConfigError(f"[config] JSON file not found: {path}")
        try:
            data = json.loads(p.read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f"[config] Invalid JSON in {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(
                f"[config] Top-level value in {path} must be an object, "
                f"got {type(data).__name__}"
            )
        flat = _to_flat(data, command)
        if known_keys is not None:
            unknown = sorted(set(flat) - known_keys)
            if unknown:
                logger.warning(
                    f"[config] Unknown keys in {path}: {unknown} "
                    f"(typo? unsupported option for '{command}'?)"
                )
        merged.update(flat)
        logger.info(f"[config] Loaded {len(flat)} key(s) from {path}")
    return merged


# --------------------------------------------------------------------------- #
# Internals
# --------------------------------------------------------------------------- #


def _to_flat(data: Dict[str, Any], command: str) -> Dict[str, Any]:
    """Normalise either flat or nested form into flat keys.

    * A top-level key naming *command* whose value is a dict is flattened
      without its prefix.
    * Sections for other subcommands are skipped.
    * Any other nested dict is flattened under its own key so the
      validator can warn about it.
    * Top-level scalars pass through unchanged.
    """
    result: Dict[str, Any] = {}

    for top_key, top_value in data.items():
        if top_key.startswith("$"):
            # Reserved for $schema and similar metadata.
            continue
        if top_key == command and isinstance(top_value, dict):
            for flat_key, value in _walk_nested(top_value):
                result[flat_key] = value
        elif top_key in COMMAND_NAMESPACES and isinstance(top_value, dict):
            continue
        elif isinstance(top_value, dict):
            for flat_key, value in _walk_nested(top_value, prefix=[top_key]):
                result[flat_key] = value
        else:
            result[top_key] = top_value

    return result


def _walk_nested(
    data: Dict[str, Any],
    prefix: Optional[List[str]] = None,
) -> Iterator[Tuple[str, Any]]:
    """Yield ``(flat_key, value)`` pairs from a nested dict.

    Path components are joined with underscores so
    ``{"table": {"format": "csv"}}`` → ``("table_format", "csv")``.
    """
    prefix = prefix or []
    for key, value in data.items():
        new_path = prefix + [key]
        if isinstance(value, dict):
            yield from _walk_nested(value, new_path)
        else:
            yield ("_".join(new_path), value)
