"""Serialization of iteration traces and family reports.

Three output forms are supported by the CLI:

- text: short ``key=value`` lines for terminals (``tail=1 orbit=150``,
  ``members=4644``);
- json: documents that parse back into the same objects;
- csv: the weight / k-normality tables, written through pandas.

Polynomials are always written in the text syntax of ``notation``.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from exceptions import ParseError
from family import FamilyReport, Orbit, normality_table, pack
from gf import FieldSpec
from notation import format_field, format_poly, parse_field, parse_poly, poly_from_json
from orbit import IterationTrace, OrderCandidates
from polyring import Poly

logger = logging.getLogger(__name__)


def _require(data: Dict[str, Any], key: str, kind, what: str):
    if not isinstance(data, dict) or key not in data:
        raise ParseError(f"{what} JSON is missing '{key}'")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError(f"{what} JSON '{key}' must be {getattr(kind, '__name__', kind)}, got {value!r}")
    return value


# --------------------------------------------------------------------------- #
# Traces
# --------------------------------------------------------------------------- #


def trace_to_json(trace: IterationTrace, candidates: Optional[OrderCandidates] = None) -> Dict[str, Any]:
    field = trace.base.field
    data: Dict[str, Any] = {
        "field": format_field(field),
        "prime": trace.prime,
        "tail_length": trace.tail_length,
        "orbit_length": trace.orbit_length,
        "w": trace.w,
        "tail": [format_poly(f) for f in trace.tail],
        "orbit": [format_poly(f) for f in trace.orbit],
    }
    if candidates is not None:
        data["k_adic_valuation"] = candidates.k_adic_valuation
        data["order_candidates"] = [
            {"order": order, "d": d, "j": j} for order, d, j in candidates.candidates
        ]
    return data


def trace_from_json(data: Dict[str, Any]) -> Tuple[IterationTrace, Optional[OrderCandidates]]:
    field = parse_field(_require(data, "field", str, "trace"))
    prime = _require(data, "prime", int, "trace")
    tail = [parse_poly(field, t) for t in _require(data, "tail", list, "trace")]
    orbit = [parse_poly(field, t) for t in _require(data, "orbit", list, "trace")]
    if not orbit:
        raise ParseError("trace JSON has an empty orbit")
    tail_length = data.get("tail_length", len(tail))
    orbit_length = data.get("orbit_length", len(orbit))
    if tail_length != len(tail) or orbit_length != len(orbit):
        raise ParseError("trace JSON lengths disagree with its tail/orbit lists")
    trace = IterationTrace(
        prime=prime,
        polys=tail + orbit,
        tail_length=tail_length,
        orbit_length=orbit_length,
        w=_require(data, "w", int, "trace"),
    )
    candidates = None
    if "order_candidates" in data:
        candidates = OrderCandidates(prime=prime, k_adic_valuation=data.get("k_adic_valuation", tail_length))
        for entry in data["order_candidates"]:
            candidates.candidates.append((
                _require(entry, "order", int, "candidate"),
                _require(entry, "d", int, "candidate"),
                _require(entry, "j", int, "candidate"),
            ))
    return trace, candidates


def format_trace_text(trace: IterationTrace, candidates: Optional[OrderCandidates] = None) -> str:
    lines = [f"tail={trace.tail_length} orbit={trace.orbit_length}", f"w={trace.w}"]
    if candidates is not None:
        lines.append(f"candidates={','.join(str(o) for o in candidates.orders)}")
    return "\n".join(lines)


# --------------------------------------------------------------------------- #
# Family reports
# --------------------------------------------------------------------------- #


def _hist_to_json(weight_hist: Dict[int, int], normality_hist: Dict[Tuple[int, int], int]) -> Dict[str, Any]:
    return {
        "weights": {str(w): c for w, c in sorted(weight_hist.items())},
        "normality": [[w, k, c] for (w, k), c in sorted(normality_hist.items())],
    }


def report_to_json(report: FamilyReport, full: bool = False) -> Dict[str, Any]:
    """Summary document; *full* adds every member and every orbit's cycle."""
    orbits = []
    for orbit in report.orbits:
        entry: Dict[str, Any] = {
            "id": orbit.orbit_id,
            "start": list(orbit.start),
            "length": orbit.length,
            "order": orbit.order,
        }
        if full:
            entry["members"] = [format_poly(f) for f in report.orbit_polys(orbit)]
        orbits.append(entry)
    data: Dict[str, Any] = {
        "field": format_field(report.field),
        "base": format_poly(report.base_poly),
        "order": report.order,
        "primes": list(report.primes),
        "caps": list(report.caps),
        "member_count": len(report),
        "tail_count": report.tail_count,
        "orbits": orbits,
        **_hist_to_json(report.weight_hist, report.normality_hist),
    }
    if full:
        q = report.field.q
        polys = report.member_polys()
        data["members"] = [format_poly(f) for f in polys]
        data["member_orbits"] = [report.members[pack(f.coeffs, q)] for f in polys]
    return data


def report_from_json(data: Dict[str, Any]) -> FamilyReport:
    """Inverse of ``report_to_json``; member maps are only restored from full documents."""
    field = parse_field(_require(data, "field", str, "report"))
    report = FamilyReport(
        base_poly=parse_poly(field, _require(data, "base", str, "report")),
        field=field,
        order=_require(data, "order", int, "report"),
        primes=list(_require(data, "primes", list, "report")),
        caps=list(_require(data, "caps", list, "report")),
    )
    q = field.q
    for entry in _require(data, "orbits", list, "report"):
        cycle = [pack(parse_poly(field, t).coeffs, q) for t in entry.get("members", [])]
        report.orbits.append(Orbit(
            orbit_id=_require(entry, "id", int, "orbit"),
            start=tuple(_require(entry, "start", list, "orbit")),
            members=cycle,
            order=_require(entry, "order", int, "orbit"),
        ))
    if "members" in data:
        texts = _require(data, "members", list, "report")
        ids = data.get("member_orbits", [0] * len(texts))
        if len(ids) != len(texts):
            raise ParseError("report JSON 'member_orbits' does not match 'members'")
        for text, orbit_id in zip(texts, ids):
            report.members[pack(parse_poly(field, text).coeffs, q)] = orbit_id
    report.weight_hist = {int(w): c for w, c in data.get("weights", {}).items()}
    report.normality_hist = {(w, k): c for w, k, c in data.get("normality", [])}
    return report


def format_report_text(report: FamilyReport) -> str:
    lines = [
        f"members={len(report)}",
        f"orbits={len(report.orbits)}",
        f"tail={report.tail_count}",
        f"order={report.order}",
        f"primes={','.join(str(p) for p in report.primes)} caps={','.join(str(c) for c in report.caps)}",
    ]
    lengths: Dict[Tuple[int, int], int] = {}
    for orbit in report.orbits:
        lengths[(orbit.length, orbit.order)] = lengths.get((orbit.length, orbit.order), 0) + 1
    for (length, order), count in sorted(lengths.items()):
        lines.append(f"orbit length={length} order={order} count={count}")
    if report.weight_hist:
        lines.append("weights " + " ".join(f"{w}:{c}" for w, c in sorted(report.weight_hist.items())))
    return "\n".join(lines)


# --------------------------------------------------------------------------- #
# Tables
# --------------------------------------------------------------------------- #


def table_to_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False)


def statistics_to_json(weight_hist: Dict[int, int], normality_hist: Dict[Tuple[int, int], int]) -> Dict[str, Any]:
    data = _hist_to_json(weight_hist, normality_hist)
    data["members"] = sum(weight_hist.values())
    data["table"] = normality_table(normality_hist).to_dict(orient="records")
    return data


# --------------------------------------------------------------------------- #
# Input / output
# --------------------------------------------------------------------------- #


def read_members(field: FieldSpec, path: str) -> List[Poly]:
    """Member polynomials from a text file (one per line) or a report JSON.

    Text files skip blank lines and ``#`` comments. JSON files must carry a
    ``members`` array of polynomial strings or ``{"coeffs": ...}`` objects.
    """
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON in {path}: {e}") from e
        members = _require(data, "members", list, "member")
        polys = []
        for entry in members:
            if isinstance(entry, str):
                polys.append(parse_poly(field, entry))
            else:
                polys.append(poly_from_json(field, entry))
        return polys
    return [
        parse_poly(field, line)
        for line in (raw.strip() for raw in text.splitlines())
        if line and not line.startswith("#")
    ]


def emit(text: str, out: Optional[str] = None) -> None:
    """Write *text* to *out*, or to stdout when no path is given."""
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
        logger.info(f"[report] wrote {len(text)} bytes to {out}")
    else:
        sys.stdout.write(text)


def dumps(data: Dict[str, Any]) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
