"""JSON encodings of field elements, forms, classes and form files."""

import json
from fractions import Fraction

import jsonschema

from .errors import WittsigError
from .field import CyclotomicNumber
from .forms import HermitianForm, IsometryTriple, WittElement, validate
from .funcfield import LaurentPoly, RationalFunction, parse_expr

__all__ = [
    "FormFileError",
    "FORM_FILE_SCHEMA",
    "rational_to_json",
    "rational_from_json",
    "cyclotomic_to_json",
    "cyclotomic_from_json",
    "laurent_to_json",
    "laurent_from_json",
    "rational_function_to_json",
    "rational_function_from_json",
    "form_to_json",
    "form_from_json",
    "witt_to_json",
    "triple_to_json",
    "triple_from_json",
    "load_form_file",
    "read_form_file",
    "form_file_from_witt",
    "dumps",
]


class FormFileError(WittsigError, ValueError):
    """A form file is malformed or one of its grams is not epsilon-hermitian."""


def rational_to_json(q):
    return str(Fraction(q))


def rational_from_json(s):
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s).strip())


def cyclotomic_to_json(x):
    return {"m": x.m, "coeffs": [rational_to_json(c) for c in x.coeffs]}


def cyclotomic_from_json(obj, m=None):
    if isinstance(obj, dict):
        mm = int(obj["m"])
        if m is not None and mm != m:
            raise ValueError(f"coefficient over Q(zeta_{mm}) where Q(zeta_{m}) was expected")
        return CyclotomicNumber(mm, [rational_from_json(c) for c in obj["coeffs"]])
    if isinstance(obj, list):
        return CyclotomicNumber(m, [rational_from_json(c) for c in obj])
    return CyclotomicNumber.rational(m, rational_from_json(obj))


def _coeff_list(x):
    return [rational_to_json(c) for c in x.coeffs]


def laurent_to_json(p):
    return {"m": p.m, "terms": {str(e): _coeff_list(c) for e, c in sorted(p.terms.items())}}


def laurent_from_json(obj, m=None):
    mm = int(obj.get("m", m))
    if m is not None and mm != m:
        raise ValueError(f"polynomial over Q(zeta_{mm}) where Q(zeta_{m}) was expected")
    return LaurentPoly(mm, {int(e): cyclotomic_from_json(c, mm) for e, c in obj["terms"].items()})


def rational_function_to_json(a):
    return {"num": laurent_to_json(a.num), "den": laurent_to_json(a.den)}


def rational_function_from_json(obj, m):
    """Accepts {"num", "den"}, a bare Laurent polynomial {"terms"}, an
    expression string such as "1 - t^-1", or a rational number."""
    if isinstance(obj, str):
        try:
            return RationalFunction.constant(m, rational_from_json(obj))
        except ValueError:
            return parse_expr(obj, m)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return RationalFunction.constant(m, obj)
    if isinstance(obj, dict) and "num" in obj:
        return RationalFunction(laurent_from_json(obj["num"], m), laurent_from_json(obj["den"], m))
    if isinstance(obj, dict) and "terms" in obj:
        return RationalFunction.laurent(laurent_from_json(obj, m))
    raise ValueError(f"cannot read a rational function from {obj!r}")


def form_to_json(f):
    return {"m": f.m, "epsilon": f.epsilon,
            "gram": [[rational_function_to_json(x) for x in row] for row in f.gram]}


def form_from_json(obj):
    m = int(obj["m"])
    return HermitianForm(m, [[rational_function_from_json(x, m) for x in row] for row in obj["gram"]],
                         int(obj.get("epsilon", 1)))


def witt_to_json(w):
    return {"m": w.m, "epsilon": w.epsilon,
            "summands": [{"form": form_to_json(f), "coeff": rational_to_json(r)} for f, r in w.summands]}


def triple_to_json(tr):
    return {"m": tr.m, "epsilon": tr.epsilon,
            "theta": [[cyclotomic_to_json(x) for x in row] for row in tr.theta],
            "f": [[cyclotomic_to_json(x) for x in row] for row in tr.f]}


def triple_from_json(obj):
    m = int(obj["m"])
    conv = lambda rows: [[cyclotomic_from_json(x, m) for x in r] for r in rows]
    return IsometryTriple(m, int(obj["epsilon"]), conv(obj["theta"]), conv(obj["f"]))


_ENTRY = {"oneOf": [
    {"type": "string"},
    {"type": "integer"},
    {"type": "object", "required": ["terms"]},
    {"type": "object", "required": ["num", "den"]},
]}

FORM_FILE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["m", "epsilon", "summands"],
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "epsilon": {"enum": [1, -1]},
        "summands": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "gram"],
                "properties": {
                    "coeff": {"type": ["string", "integer"]},
                    "gram": {"type": "array", "minItems": 1,
                             "items": {"type": "array", "minItems": 1, "items": _ENTRY}},
                },
            },
        },
    },
}


def load_form_file(doc):
    """Parse and validate a form-file document into a WittElement.

    Raises FormFileError naming the summand and the 1-based entry at fault.
    """
    try:
        jsonschema.validate(doc, FORM_FILE_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "document"
        raise FormFileError(f"schema error at {where}: {exc.message}") from None
    m, eps = doc["m"], doc["epsilon"]
    summands = []
    for s_idx, s in enumerate(doc["summands"], 1):
        gram = s["gram"]
        n = len(gram)
        rows = []
        for i, row in enumerate(gram, 1):
            if len(row) != n:
                raise FormFileError(f"summand {s_idx}: row {i} has {len(row)} entries, expected {n}")
            out = []
            for j, x in enumerate(row, 1):
                try:
                    out.append(rational_function_from_json(x, m))
                except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
                    raise FormFileError(f"summand {s_idx}: entry ({i},{j}): {exc}") from None
            rows.append(out)
        form = HermitianForm(m, rows, eps)
        report = validate(form)
        if not report:
            raise FormFileError(f"summand {s_idx}: not {eps:+d}-hermitian at entry "
                                f"({report.entry[0]},{report.entry[1]}): {report.message}")
        try:
            coeff = rational_from_json(s["coeff"])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormFileError(f"summand {s_idx}: bad coeff: {exc}") from None
        summands.append((form, coeff))
    return WittElement(m, eps, summands)


def read_form_file(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormFileError(f"{path}: invalid JSON: {exc}") from None
    return load_form_file(doc)


def form_file_from_witt(w):
    return {"m": w.m, "epsilon": w.epsilon,
            "summands": [{"coeff": rational_to_json(r),
                          "gram": [[rational_function_to_json(x) for x in row] for row in f.gram]}
                         for f, r in w.summands]}


def dumps(obj):
    """Deterministic JSON text (sorted keys, two-space indent)."""
    return json.dumps(obj, indent=2, sort_keys=True)

