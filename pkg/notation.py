"""Text and JSON notation for fields, field elements and polynomials.

Symbols follow one convention everywhere:

- ``y`` is the variable of the field modulus: ``2,4,y^4+y+1`` is
  F_16 = F_2[Y]/(Y^4+Y+1).
- ``a`` is the field generator (the class of Y): ``a^2+a``.
- ``x`` is the polynomial variable: ``x^8 + x^5 + (a^2+a)*x + a``.

Printed forms list terms by descending power. A polynomial coefficient with
more than one term is parenthesised, a single-term coefficient is attached
with ``*`` and the constant term is written bare, so

    x^9 + (a^2+a)*x^8 + a*x^6 + x^5 + a^3+a^2+a

parses back to the same polynomial (bare trailing terms are summed into the
constant). Over prime fields elements are plain integers.

JSON form of a polynomial: ``{"coeffs": [[c0, ..., c_{m-1}], ...]}``, one
coefficient vector per power of x, degree-0 first.
"""

import re
from typing import Dict, List, Tuple

from exceptions import ParseError, PreconditionError
from gf import FieldElement, FieldSpec, GaloisField, field_from_q, field_new
from polyring import Poly

_INT = re.compile(r"^\d+$")


def _split_terms(text: str) -> List[Tuple[int, str]]:
    """Split *text* on top-level ``+``/``-`` into (sign, term) pairs."""
    terms: List[Tuple[int, str]] = []
    depth = 0
    sign = 1
    signed = False
    current: List[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in "+-":
            if current:
                terms.append((sign, "".join(current)))
                current = []
            elif terms or signed or ch == "+":
                # Only a single leading minus may precede the first term.
                raise ParseError(f"empty term in {text!r}")
            signed = not current and not terms
            sign = 1 if ch == "+" else -1
            continue
        current.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    if not current:
        raise ParseError(f"empty term in {text!r}")
    terms.append((sign, "".join(current)))
    return terms


def _parse_monomial(term: str, symbol: str) -> Tuple[int, int]:
    """``3*a^2`` -> (3, 2); ``a`` -> (1, 1); ``5`` -> (5, 0)."""
    if _INT.match(term):
        return int(term), 0
    coeff = 1
    body = term
    if "*" in term:
        head, body = term.split("*", 1)
        if not _INT.match(head):
            raise ParseError(f"bad coefficient {head!r} in {term!r}")
        coeff = int(head)
    if body == symbol:
        return coeff, 1
    if body.startswith(symbol + "^") and _INT.match(body[len(symbol) + 1:]):
        return coeff, int(body[len(symbol) + 1:])
    raise ParseError(f"cannot parse term {term!r} (expected {symbol}, {symbol}^e or an integer)")


def _clean(text: str) -> str:
    return "".join(text.split()).lower()


# --------------------------------------------------------------------------- #
# Field elements
# --------------------------------------------------------------------------- #


def format_element(x: FieldElement) -> str:
    field = x.field
    if not isinstance(field, FieldSpec):
        # Extension elements: residue polynomial in z over the base field.
        base = field.base
        terms = []
        for i, c in reversed(list(enumerate(field.to_digits(x.code)))):
            if c:
                text = format_element(FieldElement(base, c))
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if not mono:
                    terms.append(text if "+" not in text else f"({text})")
                elif c == 1:
                    terms.append(mono)
                else:
                    terms.append(f"({text})*{mono}" if "+" in text else f"{text}*{mono}")
        return "+".join(terms) if terms else "0"
    if field.m == 1:
        return str(x.code)
    terms = []
    for i, c in reversed(list(enumerate(x.coeffs))):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "a" if i == 1 else f"a^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms) if terms else "0"


def parse_element(field: FieldSpec, text: str) -> FieldElement:
    """Parse ``a``-syntax; powers of a at or above m are reduced by mu."""
    cleaned = _clean(text)
    if cleaned.startswith("(") and cleaned.endswith(")"):
        cleaned = cleaned[1:-1]
    if not cleaned:
        raise ParseError("empty field element")
    p = field.p
    gen = 0 if field.m == 1 else field.radix
    value = 0
    for sign, term in _split_terms(cleaned):
        coeff, power = _parse_monomial(term, "a")
        if power and field.m == 1:
            raise ParseError(f"prime field F_{p} elements are integers, got {text!r}")
        c = (sign * coeff) % p
        if c:
            value = field.add(value, field.mul(c, field.pow(gen, power)))
    return FieldElement(field, value)


# --------------------------------------------------------------------------- #
# Polynomials
# --------------------------------------------------------------------------- #


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        text = format_element(FieldElement(f.field, c))
        if i == 0:
            parts.append(text)
            continue
        mono = "x" if i == 1 else f"x^{i}"
        if c == 1:
            parts.append(mono)
        elif "+" in text:
            parts.append(f"({text})*{mono}")
        else:
            parts.append(f"{text}*{mono}")
    return " + ".join(parts)


def parse_poly(field: FieldSpec, text: str) -> Poly:
    cleaned = _clean(text)
    if not cleaned:
        raise ParseError("empty polynomial")
    if cleaned == "0":
        return Poly(field, ())
    coeffs: Dict[int, int] = {}
    for sign, term in _split_terms(cleaned):
        pos = term.rfind("x")
        if pos < 0 or "(" in term[pos:] or ")" in term[pos:]:
            degree, coeff_text = 0, term
        else:
            tail = term[pos + 1:]
            if not tail:
                degree = 1
            elif tail.startswith("^") and _INT.match(tail[1:]):
                degree = int(tail[1:])
            else:
                raise ParseError(f"bad power of x in term {term!r}")
            coeff_text = term[:pos]
            if coeff_text.endswith("*"):
                coeff_text = coeff_text[:-1]
            elif coeff_text:
                raise ParseError(f"missing '*' before x in term {term!r}")
            coeff_text = coeff_text or "1"
        code = parse_element(field, coeff_text).code
        if sign < 0:
            code = field.neg(code)
        coeffs[degree] = field.add(coeffs.get(degree, 0), code)
    top = max(coeffs)
    return Poly(field, [coeffs.get(i, 0) for i in range(top + 1)])


# --------------------------------------------------------------------------- #
# Fields
# --------------------------------------------------------------------------- #


def format_field(field: FieldSpec) -> str:
    terms = []
    for i in range(field.m, -1, -1):
        c = field.modulus[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = "y" if i == 1 else f"y^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return f"{field.p},{field.m},{'+'.join(terms)}"


def parse_field(text: str) -> FieldSpec:
    """``p,m,<modulus in y>``, ``p,m`` or a bare prime power ``q``.

    Without a modulus the first irreducible in scan order is used.
    """
    parts = _clean(text).split(",")
    try:
        if len(parts) == 1:
            return field_from_q(int(parts[0]))
        p, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"field must look like 'p,m,<modulus>' or 'q', got {text!r}") from None
    except PreconditionError as exc:
        raise ParseError(f"bad field {text!r}: {exc}") from None
    if len(parts) == 2:
        try:
            return field_from_q(p ** m)
        except PreconditionError as exc:
            raise ParseError(f"bad field {text!r}: {exc}") from None
    if len(parts) != 3 or not parts[2]:
        raise ParseError(f"field must look like 'p,m,<modulus>', got {text!r}")
    if p < 2:
        raise ParseError(f"bad characteristic {p} in {text!r}")
    coeffs: Dict[int, int] = {}
    for sign, term in _split_terms(parts[2]):
        coeff, power = _parse_monomial(term, "y")
        coeffs[power] = (coeffs.get(power, 0) + sign * coeff) % p
    top = max((i for i, c in coeffs.items() if c), default=0)
    modulus = [coeffs.get(i, 0) for i in range(top + 1)]
    return field_new(p, m, modulus)


# --------------------------------------------------------------------------- #
# JSON
# --------------------------------------------------------------------------- #


def poly_to_json(f: Poly) -> dict:
    return {"coeffs": [list(f.field.to_digits(c)) for c in f.coeffs]}


def poly_from_json(field: GaloisField, data) -> Poly:
    if not isinstance(data, dict) or not isinstance(data.get("coeffs"), list):
        raise ParseError("polynomial JSON must be an object with a 'coeffs' list")
    codes = []
    for entry in data["coeffs"]:
        if not isinstance(entry, list) or len(entry) != field.degree:
            raise ParseError(f"each coefficient must be a length-{field.degree} vector, got {entry!r}")
        if any(not isinstance(d, int) or not 0 <= d < field.radix for d in entry):
            raise ParseError(f"coefficient entries must lie in [0, {field.radix}), got {entry!r}")
        codes.append(field.from_digits(entry))
    if codes and not codes[-1]:
        raise ParseError("polynomial JSON has a zero leading coefficient")
    return Poly(field, codes)
