"""Flow files (JSON) and machine-readable reports.

A flow file looks like::

    {
      "description": "optional text",
      "model": "algebraic",
      "field": {"min_poly": [-2, 0, 0, 1], "root_interval": ["5/4", "4/3"]},
      "frequencies": [["1", "0", "0"], ["0", "3", "0"], ["0", "0", "-3"]],
      "units": [["-1", "1", "0"]]
    }

Coefficient lists ascend by degree.  Rationals are JSON integers or strings
"p/q"; decimals and floats are rejected so that every input is exact.  In the
``formal`` model there is no ``field`` and each frequency row holds
coordinates over 1, g, ..., g^(n-1) for a formal transcendental g.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import ParseError, QPError
from .multiplier import ALGEBRAIC, FORMAL, FlowSpec, Multiplier, SymmetryReport
from .numberfield import (
    FieldElement,
    NumberField,
    make_field,
    minimal_polynomial,
    norm,
    signature,
    to_float,
)

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")
_RENDERED = re.compile(r"-?\d+/\d+")
_TEXT_KEYS = {"description", "name", "detail", "notes", "summary", "structure",
              "classification", "irreducibility", "provenance", "kind", "model",
              "error", "verdict", "approx"}


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", path=path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"floating-point value {value!r} rejected; write an exact "
                         "rational \"p/q\" (transcendentals belong in the formal model)", path=path)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ParseError("zero denominator", path=path) from None
    raise ParseError(f"expected a rational \"p/q\", got {value!r}", path=path)


def _integer(value: Any, path: str) -> int:
    q = _rational(value, path)
    if q.denominator != 1:
        raise ParseError(f"expected an integer, got {q}", path=path)
    return int(q)


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", path=path)
    return value


def _matrix(value: Any, path: str) -> tuple[tuple[Fraction, ...], ...]:
    rows = _list(value, path)
    return tuple(tuple(_rational(x, f"{path}[{i}][{j}]") for j, x in enumerate(_list(r, f"{path}[{i}]")))
                 for i, r in enumerate(rows))


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1, column=1)
    return doc


def parse_field(doc: Any, path: str = "field") -> NumberField:
    if not isinstance(doc, dict):
        raise ParseError("expected an object with min_poly and root_interval", path=path)
    for key in ("min_poly", "root_interval"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", path=path)
    coeffs = [_integer(c, f"{path}.min_poly[{i}]") for i, c in enumerate(_list(doc["min_poly"], f"{path}.min_poly"))]
    interval = [_rational(v, f"{path}.root_interval[{i}]")
                for i, v in enumerate(_list(doc["root_interval"], f"{path}.root_interval"))]
    return make_field(coeffs, interval)


def parse_flow_text(text: str) -> FlowSpec:
    doc = _load_json(text)
    model = doc.get("model", ALGEBRAIC)
    if model not in (ALGEBRAIC, FORMAL):
        raise ParseError(f"model must be 'algebraic' or 'formal', got {model!r}", path="model")
    if "frequencies" not in doc:
        raise ParseError("missing key 'frequencies'", path="$")
    freqs = _matrix(doc["frequencies"], "frequencies")
    description = doc.get("description", "")
    if not isinstance(description, str):
        raise ParseError("description must be a string", path="description")
    if model == FORMAL:
        if "field" in doc or "units" in doc:
            raise ParseError("formal flows take neither 'field' nor 'units'", path="$")
        return FlowSpec.formal(freqs, description)
    if "field" not in doc:
        raise ParseError("algebraic flows need a 'field'", path="$")
    field = parse_field(doc["field"])
    units = _matrix(doc.get("units", []), "units")
    for i, u in enumerate(units):
        if len(u) != field.degree:
            raise ParseError(f"unit needs {field.degree} coordinates", path=f"units[{i}]")
    return FlowSpec.algebraic(field, freqs, units, description)


def load_flow(path: str | Path) -> FlowSpec:
    return parse_flow_text(Path(path).read_text(encoding="utf-8"))


def parse_field_text(text: str) -> tuple[NumberField, list[FieldElement]]:
    """Field plus optional supplied units, from a flow file or a field-only file."""
    doc = _load_json(text)
    if "field" not in doc:
        raise ParseError("missing key 'field'", path="$")
    field = parse_field(doc["field"])
    units = [field.element(u) for u in _matrix(doc.get("units", []), "units")]
    return field, units


def example_path(name: str) -> Path:
    """Path of a shipped example flow file, e.g. ``ex_cubic.flow``."""
    return Path(str(resources.files("qpmult") / "examples" / name))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def rat(x) -> str:
    """Canonical exact rendering "p/q" with q > 0."""
    q = Fraction(x)
    return f"{q.numerator}/{q.denominator}"


def rats(xs) -> list[str]:
    return [rat(x) for x in xs]


def _approx(x) -> str:
    v = to_float(x) if isinstance(x, FieldElement) else float(x)
    return f"{v:.15g}"


def field_dict(field: NumberField) -> dict:
    sig = signature(field)
    return {
        "min_poly": list(field.min_poly),
        "root_interval": rats(field.root_interval),
        "irreducibility": field.irreducibility,
        "signature": {"r1": sig.r1, "r2": sig.r2, "unit_rank": sig.unit_rank},
    }


def element_dict(x: FieldElement | Fraction) -> dict:
    if isinstance(x, FieldElement):
        return {"coords": rats(x.coords), "min_poly": list(minimal_polynomial(x)),
                "norm": rat(norm(x)), "approx": _approx(x)}
    return {"coords": [rat(x)], "approx": _approx(x)}


def multiplier_dict(m: Multiplier) -> dict:
    d = element_dict(m.value)
    d["witness"] = [list(r) for r in m.witness]
    return d


def lattice_dict(lat) -> dict:
    return {"hnf": [list(r) for r in lat.hnf], "denom": lat.denom}


def analysis_dict(flow, report: SymmetryReport, lattice=None, ring=None, oracle=None) -> dict:
    spec = flow.spec
    out: dict[str, Any] = {
        "kind": "analyze",
        "description": spec.description,
        "model": spec.model,
        "n": flow.n,
        "frequencies": [rats(r) for r in spec.freq_coords],
        "classification": report.classification,
        "structure": report.structure,
        "checklist": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checklist],
        "notes": list(report.notes),
    }
    if spec.model == ALGEBRAIC:
        g = report.group
        out["field"] = field_dict(spec.field)
        out["scaled_frequencies"] = [rats(a.coords) for a in flow.scaled]
        if lattice is not None:
            out["frequency_lattice"] = lattice_dict(lattice)
        if ring is not None:
            out["coefficient_ring"] = lattice_dict(ring)
        out["multiplier_group"] = {
            "torsion": [1, -1],
            "generators": [multiplier_dict(m) for m in g.generators],
            "exponents": list(g.exponents),
            "index": g.index,
            "index_upper_bound": g.index_upper_bound,
            "index_relative_to_supplied": g.index_relative_to_supplied,
            "unit_group": [{"coords": rats(u.coords), "provenance": p}
                           for u, p in zip(g.unit_group.generators, g.unit_group.provenance)],
        }
        exps = ", ".join(f"eps_{i + 1}^{k}" for i, k in enumerate(g.exponents))
        out["summary"] = f"M = {{±1}} × <{exps}>"
        if report.ratio_min_poly is not None:
            out["ratio_min_poly"] = list(report.ratio_min_poly)
    else:
        n = flow.n
        ident = [[int(i == j) for j in range(n)] for i in range(n)]
        out["multiplier_group"] = {
            "torsion": [1, -1],
            "generators": [],
            "witnesses": {"1": ident, "-1": [[-x for x in r] for r in ident]},
        }
        out["summary"] = "M = {1, -1}"
    if oracle is not None:
        out["oracle"] = oracle
    return out


def unit_dict(units, d: int | None = None) -> dict:
    out: dict[str, Any] = {"kind": "unit", "field": field_dict(units.field), "generators": []}
    if d is not None:
        out["disc"] = d
    for u, p in zip(units.generators, units.provenance):
        e = element_dict(u)
        e["provenance"] = p
        out["generators"].append(e)
    return out


def dumps(doc: dict) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation)."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _decode(value, key=None):
    if isinstance(value, dict):
        return {k: _decode(v, k) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v, key) for v in value]
    if isinstance(value, str) and key not in _TEXT_KEYS and _RENDERED.fullmatch(value):
        return Fraction(value)
    return value


def load_report(text: str) -> dict:
    """Parse an emitted report, turning every "p/q" value back into a Fraction."""
    return _decode(json.loads(text))


def error_dict(exc: QPError) -> dict:
    return {"kind": "error", "error": exc.name, "detail": str(exc)}
