"""Spec-document parsing and report serialization.

Both documents are JSON. Rationals are always strings such as ``"-7"`` or
``"3/2"``; nothing is ever written as a float.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .brauer import BrauerClass2, Place, QuaternionAlgebra
from .cycalg import AlgElem, CyclicAlgebra
from .errors import UsageError
from .numfield import CyclicExtension, FieldElem, NumberField

RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

ELEMENT_FIELDS = {"u", "v", "k_generators", "y", "k_gen", "l_gen"}
KIND_FIELDS = {
    "cyclic": {"minpoly", "sigma", "a"},
    "quaternion": {"a", "b"},
    "biquaternion": {"a", "b", "c", "d"},
}


class SpecError(UsageError):
    """Malformed algebra specification."""


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SpecError(f"{where}: expected an exact rational string like \"-7\" or \"3/2\", got {value!r}")
    text = str(value).strip()
    if not RATIONAL_RE.match(text):
        raise SpecError(f"{where}: {value!r} is not an exact rational (decimals are not accepted)")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise SpecError(f"{where}: zero denominator")
    return Fraction(int(num), int(den) if den else 1)


def _rational_list(value, where: str) -> list[Fraction]:
    if not isinstance(value, list) or not value:
        raise SpecError(f"{where}: expected a nonempty list of rationals")
    return [parse_rational(v, f"{where}[{k}]") for k, v in enumerate(value)]


def load_spec_text(text: str, source: str = "<spec>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SpecError(f"{source}: top level must be an object")
    kind = doc.get("kind")
    if kind not in KIND_FIELDS:
        raise SpecError(f"{source}: field 'kind' must be one of {sorted(KIND_FIELDS)}, got {kind!r}")
    allowed = {"kind"} | KIND_FIELDS[kind] | (ELEMENT_FIELDS if kind != "biquaternion" else set())
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise SpecError(f"{source}: unknown field(s) {unknown} for kind {kind!r}")
    missing = sorted(KIND_FIELDS[kind] - set(doc))
    if missing:
        raise SpecError(f"{source}: missing field(s) {missing}")
    spec: dict[str, Any] = {"kind": kind}
    if kind == "cyclic":
        spec["minpoly"] = _rational_list(doc["minpoly"], "minpoly")
        spec["sigma"] = _rational_list(doc["sigma"], "sigma")
        spec["a"] = parse_rational(doc["a"], "a")
    else:
        for name in sorted(KIND_FIELDS[kind]):
            spec[name] = parse_rational(doc[name], name)
    for name in ELEMENT_FIELDS & set(doc):
        spec[name] = doc[name]
    return spec


def load_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read spec {path}: {exc.strerror}") from None
    return load_spec_text(text, path)


QUATERNION_KEYS = ("1", "i", "j", "k")


def parse_element(raw, algebra: CyclicAlgebra, where: str, quaternion_model=None) -> AlgElem:
    """Element from cyclic coordinates ``[[...], ...]`` or, for quaternion specs, ``{"1":…, "i":…}``."""
    if isinstance(raw, dict):
        if quaternion_model is None:
            raise SpecError(f"{where}: quaternion coordinates need a quaternion spec")
        extra = sorted(set(raw) - set(QUATERNION_KEYS))
        if extra:
            raise SpecError(f"{where}: unknown quaternion coordinate(s) {extra}")
        t, u, v, w = (parse_rational(raw.get(key, "0"), f"{where}.{key}") for key in QUATERNION_KEYS)
        return quaternion_model.image(t, u, v, w)
    n = algebra.n
    if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
        raise SpecError(f"{where}: expected {n} lists of {n} rationals (coefficient of x^i per row)")
    return algebra.element([[parse_rational(c, f"{where}[{i}][{j}]") for j, c in enumerate(row)]
                            for i, row in enumerate(raw)])


def build_cyclic(spec: dict) -> CyclicAlgebra:
    L = NumberField(spec["minpoly"])
    return CyclicAlgebra(CyclicExtension(L, spec["sigma"]), spec["a"])


def build_quaternion(spec: dict) -> QuaternionAlgebra:
    return QuaternionAlgebra(spec["a"], spec["b"])


# -- reports ------------------------------------------------------------------


def to_jsonable(value):
    """Convert a report tree to JSON-ready values; rationals become strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Place):
        return value.to_json()
    if isinstance(value, BrauerClass2):
        return value.to_json()
    if isinstance(value, FieldElem):
        return [str(c) for c in value.coeffs]
    if isinstance(value, AlgElem):
        return [[str(c) for c in b.coeffs] for b in value.coeffs]
    if isinstance(value, dict):
        return {str(to_jsonable(k)) if not isinstance(k, str) else k: to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dump_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True, ensure_ascii=False)


def _revive(value):
    if isinstance(value, str) and RATIONAL_RE.match(value):
        return parse_rational(value, "report")
    if isinstance(value, list):
        return [_revive(v) for v in value]
    if isinstance(value, dict):
        return {k: _revive(v) for k, v in value.items()}
    return value


def load_report(text: str):
    """Parse a machine-readable report, turning rational strings back into Fractions."""
    return _revive(json.loads(text))


def exact_values(report):
    """The report tree with every rational as a Fraction (what :func:`load_report` yields)."""
    return _revive(json.loads(json.dumps(to_jsonable(report))))


def render_text(report, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key, value in report.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(report))
    return "\n".join(lines)


def _is_flat(value) -> bool:
    if isinstance(value, dict):
        return False
    return all(not isinstance(v, (dict, list)) for v in value) or isinstance(value, (AlgElem, FieldElem))


def _inline(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if value is None:
        return "-"
    return str(value)
