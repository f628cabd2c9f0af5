"""irredforge command line.

Subcommands::

    construct  m_{beta^k} from m_beta
    iterate    tail / orbit of the prime-k step and the compatible orders
    enumerate  the constructible family of a polynomial
    analyze    weight and k-normality tables of a member list
    verify     constructions against the extension-field oracle
    order      ord(f), its factorization and primitivity

Run configuration is layered (highest wins): flags > environment > JSON
files (``--config``, repeatable, or ``$IRREDFORGE_CONFIG``) > defaults.

Exit status: 0 success, 1 runtime or I/O failure (and verify mismatches),
2 precondition, parse or configuration errors.
"""

import argparse
import logging
import os
import random
import sys
from typing import Any, Callable, Dict, List, Optional

import pandas as pd

from base_arith import factorize
from config import Config
from constructions import ad_construct, construct_general, cor8_step, kk_step, prime_step
from exceptions import ConfigurationError, InvariantError, ParseError, PreconditionError
from family import enumerate_family, member_statistics, normality_distribution, normality_table, weight_distribution
from json_config_loader import load_json_configs
from log_config import setup_logging
from notation import format_field, format_poly, parse_field, parse_poly, poly_to_json
from oracle import min_poly_power, random_case
from orbit import infer_order, iterate_prime
from polyring import Poly, poly_order
from reports import (
    dumps,
    emit,
    format_report_text,
    format_trace_text,
    read_members,
    report_to_json,
    statistics_to_json,
    table_to_csv,
    trace_to_json,
)
from validation import known_keys, parse_caps, validate_run_config

logger = logging.getLogger(__name__)

COMMANDS = ("construct", "iterate", "enumerate", "analyze", "verify", "order")

# Built-in defaults, the lowest configuration layer.
DEFAULTS: Dict[str, Any] = {
    "format": "text",
    "method": "general",
    "full": False,
}

Oracle = Callable[[Poly, int], Poly]


# --------------------------------------------------------------------------- #
# Argument parsing and configuration layering
# --------------------------------------------------------------------------- #


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irredforge", description="Minimal polynomials of powers over F_q")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=str, help="Field as 'p,m,<modulus in y>', 'p,m' or 'q'")
    common.add_argument("--format", type=str, help="Output format: text, json or csv (default: text)")
    common.add_argument("--out", type=str, help="Write output to this path instead of stdout")
    common.add_argument("--threads", type=int,
                        help="Worker processes (default: $IRREDFORGE_THREADS or CPU count; 1 = serial)")
    common.add_argument("--config", dest="config_paths", action="append", default=None,
                        help="JSON run-configuration file (repeatable, later files override earlier). "
                             "Also reads $IRREDFORGE_CONFIG when no --config is given.")

    p = sub.add_parser("construct", parents=[common], help="Construct m_{beta^k}")
    p.add_argument("--poly", type=str, help="Input polynomial, e.g. 'x^8+x^5+x^3+x^2+a'")
    p.add_argument("--k", type=int, help="Exponent k")
    p.add_argument("--method", type=str,
                   help="general (default), cor8 (k | q-1), prime (prime k), kk (k = 2, odd q) or ad")

    p = sub.add_parser("iterate", parents=[common], help="Iterate the prime-k step")
    p.add_argument("--poly", type=str, help="Input polynomial")
    p.add_argument("--prime", type=int, help="Prime dividing q-1")

    p = sub.add_parser("enumerate", parents=[common], help="Enumerate the constructible family")
    p.add_argument("--poly", type=str, help="Input polynomial")
    p.add_argument("--caps", type=str, help="Exponent caps i1,i2,... for all primes of q-1 but the largest")
    p.add_argument("--full", action="store_true", default=None, help="Include every member in JSON output")

    p = sub.add_parser("analyze", parents=[common], help="Weight / k-normality tables of a member list")
    p.add_argument("--members", type=str, help="Member file: one polynomial per line, or a report JSON")

    p = sub.add_parser("verify", parents=[common], help="Check constructions against the oracle")
    p.add_argument("--poly", type=str, help="Input polynomial")
    p.add_argument("--k", type=int, help="Exponent k")
    p.add_argument("--random", type=int, help="Run N seeded random cases instead of one")
    p.add_argument("--seed", type=int, help="Seed for --random (default: $IRREDFORGE_SEED or 42)")

    p = sub.add_parser("order", parents=[common], help="Order of a polynomial")
    p.add_argument("--poly", type=str, help="Input polynomial")

    return parser


def _env_layer(command: str) -> Dict[str, Any]:
    layer: Dict[str, Any] = {}
    if os.getenv("IRREDFORGE_THREADS", "").strip():
        layer["threads"] = Config.THREADS
    if command == "verify" and os.getenv("IRREDFORGE_SEED", "").strip():
        layer["seed"] = Config.SEED
    return layer


def resolve_config(args: argparse.Namespace) -> Dict[str, Any]:
    """Merge defaults < JSON < env < flags into one run configuration."""
    command = args.command
    config: Dict[str, Any] = dict(DEFAULTS)
    config["threads"] = Config.THREADS
    if command == "verify":
        config["seed"] = Config.SEED

    # --config wins over $IRREDFORGE_CONFIG; the env var is only consulted
    # when no flag is given.
    config_paths: List[str] = list(args.config_paths or [])
    if not config_paths:
        env_config = os.environ.get("IRREDFORGE_CONFIG")
        if env_config:
            config_paths.append(env_config)
    if config_paths:
        json_layer = load_json_configs(config_paths, command, known_keys=known_keys(command))
        config.update(json_layer)
        logger.info(f"[config] JSON layer loaded: {len(json_layer)} key(s) from {len(config_paths)} file(s)")

    config.update(_env_layer(command))
    for key, value in vars(args).items():
        if key in ("command", "config_paths") or value is None:
            continue
        config[key] = value
    return config


# --------------------------------------------------------------------------- #
# Commands
# --------------------------------------------------------------------------- #


def _input_poly(config: Dict[str, Any]):
    field = parse_field(config["field"])
    return field, parse_poly(field, config["poly"])


def cmd_construct(config: Dict[str, Any]) -> int:
    field, f = _input_poly(config)
    k = config["k"]
    method = config.get("method", "general")
    steps: List = []
    descent = 1
    if method == "general":
        result = construct_general(f, k)
        output, steps, descent = result.output, result.steps, result.descent
    elif method == "cor8":
        output = cor8_step(f, k)
    elif method == "prime":
        output = prime_step(f, k)
    elif method == "kk":
        if k != 2:
            raise PreconditionError(f"method kk computes k=2 only, got k={k}")
        output = kk_step(f)
    else:
        output = ad_construct(f, k)
    logger.info(f"[construct] k={k} method={method} degree={output.degree}",
                extra={"field": format_field(field), "k": k, "degree": output.degree})

    fmt = config["format"]
    if fmt == "json":
        text = dumps({
            "field": format_field(field),
            "input": format_poly(f),
            "k": k,
            "method": method,
            "output": format_poly(output),
            "coeffs": poly_to_json(output)["coeffs"],
            "steps": [[prime, shortcut] for prime, shortcut in steps],
            "descent": descent,
        })
    elif fmt == "csv":
        df = pd.DataFrame([[format_poly(f), k, format_poly(output), output.degree]],
                          columns=["input", "k", "output", "degree"])
        text = table_to_csv(df)
    else:
        text = format_poly(output)
        if steps:
            text += "\nsteps=" + ",".join(str(prime) for prime, _ in steps) + f" descent={descent}"
    emit(text, config.get("out"))
    return 0


def cmd_iterate(config: Dict[str, Any]) -> int:
    _, f = _input_poly(config)
    trace = iterate_prime(f, config["prime"])
    candidates = infer_order(trace)
    fmt = config["format"]
    if fmt == "json":
        text = dumps(trace_to_json(trace, candidates))
    elif fmt == "csv":
        rows = [[i, "tail" if i < trace.tail_length else "orbit", format_poly(g)]
                for i, g in enumerate(trace.polys)]
        text = table_to_csv(pd.DataFrame(rows, columns=["index", "part", "polynomial"]))
    else:
        text = format_trace_text(trace, candidates)
    emit(text, config.get("out"))
    return 0


def cmd_enumerate(config: Dict[str, Any]) -> int:
    _, f = _input_poly(config)
    caps = parse_caps(config["caps"]) if config.get("caps") is not None else None
    threads = config["threads"]
    report = enumerate_family(f, caps=caps, threads=threads)
    weight_distribution(report)
    fmt = config["format"]
    if fmt in ("json", "csv"):
        normality_distribution(report, threads=threads)
    if fmt == "json":
        text = dumps(report_to_json(report, full=bool(config.get("full"))))
    elif fmt == "csv":
        text = table_to_csv(normality_table(report.normality_hist))
    else:
        text = format_report_text(report)
    emit(text, config.get("out"))
    return 0


def cmd_analyze(config: Dict[str, Any]) -> int:
    field = parse_field(config["field"])
    polys = read_members(field, config["members"])
    weights, joint = member_statistics(field, polys, threads=config["threads"])
    logger.info(f"[analyze] {sum(weights.values())} distinct members", extra={"members": sum(weights.values())})
    table = normality_table(joint)
    fmt = config["format"]
    if fmt == "json":
        text = dumps(statistics_to_json(weights, joint))
    elif fmt == "csv":
        text = table_to_csv(table)
    else:
        text = f"members={sum(weights.values())}"
        if not table.empty:
            text += "\n" + table.to_string(index=False)
    emit(text, config.get("out"))
    return 0


def run_verify(cases, oracle: Oracle = min_poly_power) -> List[str]:
    """Mismatch descriptions for (f, k) cases; empty when every case agrees."""
    failures = []
    for f, k in cases:
        got = construct_general(f, k).output
        want = oracle(f, k)
        if got != want:
            failures.append(f"field={format_field(f.field)} f={format_poly(f)} k={k}: "
                            f"construct={format_poly(got)} oracle={format_poly(want)}")
            logger.warning(f"[verify] mismatch for k={k}", extra={"k": k, "degree": f.degree})
    return failures


def cmd_verify(config: Dict[str, Any], oracle: Oracle = min_poly_power) -> int:
    if config.get("random") is not None:
        rng = random.Random(config["seed"])
        cases = [random_case(rng) for _ in range(config["random"])]
    else:
        _, f = _input_poly(config)
        cases = [(f, config["k"])]
    failures = run_verify(cases, oracle)
    passed = len(cases) - len(failures)
    fmt = config["format"]
    if fmt == "json":
        text = dumps({"cases": len(cases), "passed": passed, "failures": failures})
    else:
        status = "PASS" if not failures else "FAIL"
        text = "\n".join([f"{status} {passed}/{len(cases)}"] + failures)
    emit(text, config.get("out"))
    return 0 if not failures else 1


def cmd_order(config: Dict[str, Any]) -> int:
    field, f = _input_poly(config)
    e = poly_order(f)
    primitive = f.degree is not None and e == field.q ** f.degree - 1
    fmt = config["format"]
    if fmt == "json":
        text = dumps({
            "field": format_field(field),
            "poly": format_poly(f),
            "order": e,
            "factorization": factorize(e).as_dict() if e > 1 else {},
            "primitive": primitive,
        })
    else:
        fact = str(factorize(e)) if e > 1 else "1"
        text = f"order={e}\nfactorization={fact}\nprimitive={'yes' if primitive else 'no'}"
    emit(text, config.get("out"))
    return 0


_HANDLERS = {
    "construct": cmd_construct,
    "iterate": cmd_iterate,
    "enumerate": cmd_enumerate,
    "analyze": cmd_analyze,
    "order": cmd_order,
}


# --------------------------------------------------------------------------- #
# Entry point
# --------------------------------------------------------------------------- #


def main(argv: Optional[List[str]] = None, oracle: Optional[Oracle] = None) -> int:
    """Run one subcommand and return its exit status.

    *oracle* replaces ``oracle.min_poly_power`` for ``verify``.
    """
    args = build_parser().parse_args(argv)
    setup_logging()
    try:
        Config.validate()
        config = resolve_config(args)
        error = validate_run_config(args.command, config)
        if error:
            raise ConfigurationError(error)
        if args.command == "verify":
            return cmd_verify(config, oracle or min_poly_power)
        return _HANDLERS[args.command](config)
    except (PreconditionError, ParseError, ConfigurationError) as e:
        logger.debug(f"[cli] {args.command} rejected its input", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (InvariantError, OSError) as e:
        logger.error(f"[cli] {args.command} failed: {e}", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
