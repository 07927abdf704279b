"""JSON documents for Weierstrass data, marked triples, surface graphs and weights.

Every document is an object with ``schema_version`` and a ``kind``
discriminator.  Rationals are written as strings (``"-1/3"``, ``"7"``) so
nothing passes through floating point.  :func:`dumps` produces the
canonical text; parsing canonical text and dumping it again is the
identity on bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional

from .checker import ComponentKind, ComponentSpec, FiberEntry, GluingEdge, SurfaceGraph
from .errors import DenominatorZero, ParseError
from .fibers import FiberType, WeierstrassData
from .git import MarkedTriple
from .poly import BinaryForm
from .walls import FiberModel

SCHEMA_VERSION = "1"
KINDS = ("weierstrass", "marked_triple", "surface_graph", "weight_query")

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?")


class _Doc:
    """Field access with line-aware diagnostics."""

    def __init__(self, text: str):
        self.text = text

    def line_of(self, key: str) -> Optional[int]:
        idx = self.text.find(f'"{key}"')
        return None if idx < 0 else self.text.count("\n", 0, idx) + 1

    def fail(self, message, field, cls=ParseError):
        key = field.split(".")[-1].split("[")[0]
        raise cls(message, field, self.line_of(key))


def parse_rational(value: Any, field: str = "value", doc: Optional[_Doc] = None) -> Fraction:
    doc = doc or _Doc("")
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        doc.fail(f"expected an integer or a 'p/q' string, got {value!r}", field)
    if isinstance(value, int):
        return Fraction(value)
    m = _RATIONAL.fullmatch(value)
    if not m:
        doc.fail(f"malformed rational {value!r}", field)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        doc.fail(f"zero denominator in {value!r}", field, DenominatorZero)
    return Fraction(num, den)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _form(values, field, doc, degree=None) -> BinaryForm:
    if not isinstance(values, list) or not values:
        doc.fail("expected a non-empty coefficient array", field)
    if degree is not None and len(values) != degree + 1:
        doc.fail(f"expected {degree + 1} coefficients, got {len(values)}", field)
    return BinaryForm.from_coeffs(
        parse_rational(v, f"{field}[{i}]", doc) for i, v in enumerate(values)
    )


def _get(obj, key, field, doc, types=None):
    if not isinstance(obj, dict) or key not in obj:
        doc.fail(f"missing field {key!r}", field)
    value = obj[key]
    if types is not None and (isinstance(value, bool) and bool not in types or not isinstance(value, types)):
        doc.fail(f"field {key!r} has the wrong type", field)
    return value


def _fiber(text, field, doc) -> FiberType:
    if not isinstance(text, str):
        doc.fail("fiber types are strings such as 'I(3)' or 'II*'", field)
    try:
        return FiberType.parse(text)
    except (ParseError, ValueError) as exc:
        doc.fail(str(exc), field)


def _weierstrass(obj, doc) -> WeierstrassData:
    n = _get(obj, "N", "N", doc, (int,))
    if n < 1:
        doc.fail("N must be positive", "N")
    a = _form(_get(obj, "A", "A", doc), "A", doc, 4 * n)
    b = _form(_get(obj, "B", "B", doc), "B", doc, 6 * n)
    return WeierstrassData(n, a, b)


def _component(obj, field, doc) -> ComponentSpec:
    kind = _get(obj, "kind", f"{field}.kind", doc, (str,))
    try:
        kind = ComponentKind(kind)
    except ValueError:
        doc.fail(f"unknown component kind {kind!r}", f"{field}.kind")
    fibers = []
    for i, f in enumerate(obj.get("fibers", [])):
        ff = f"{field}.fibers[{i}]"
        model = f.get("model", "WEIERSTRASS")
        try:
            model = FiberModel(model)
        except ValueError:
            doc.fail(f"unknown fiber model {model!r}", f"{ff}.model")
        tree = f.get("tree")
        fibers.append(FiberEntry(
            _fiber(_get(f, "fiber", f"{ff}.fiber", doc), f"{ff}.fiber", doc),
            model,
            _get(f, "collisions", f"{ff}.collisions", doc, (int,)) if "collisions" in f else 0,
            None if tree is None else _fiber(tree, f"{ff}.tree", doc),
        ))
    ssi = obj.get("section_self_int")
    return ComponentSpec(
        kind,
        _get(obj, "j_degree", f"{field}.j_degree", doc, (int,)),
        tuple(fibers),
        _get(obj, "markings", f"{field}.markings", doc, (int,)),
        None if ssi is None else parse_rational(ssi, f"{field}.section_self_int", doc),
        bool(obj.get("k3_type", False)),
    )


def _graph(obj, doc) -> SurfaceGraph:
    comps = tuple(
        _component(c, f"components[{i}]", doc)
        for i, c in enumerate(_get(obj, "components", "components", doc, (list,)))
    )
    edges = []
    for i, e in enumerate(obj.get("edges", [])):
        ends = _get(e, "endpoints", f"edges[{i}].endpoints", doc, (list,))
        pair = _get(e, "fiber_pair", f"edges[{i}].fiber_pair", doc, (list,))
        if len(ends) != 2 or len(pair) != 2 or not all(isinstance(x, int) for x in ends):
            doc.fail("an edge has two integer endpoints and two fibers", f"edges[{i}]")
        edges.append(GluingEdge(tuple(ends), tuple(_fiber(p, f"edges[{i}].fiber_pair", doc) for p in pair)))
    total = obj.get("marked_total")
    return SurfaceGraph(comps, tuple(edges), total)


def loads(text: str) -> dict:
    """Parse a document into ``{"kind": ..., "payload": ..., "options": {...}}``."""
    doc = _Doc(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", None, exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("a document is a JSON object", None, 1)
    version = _get(obj, "schema_version", "schema_version", doc, (str,))
    if version != SCHEMA_VERSION:
        doc.fail(f"unsupported schema_version {version!r}", "schema_version")
    kind = _get(obj, "kind", "kind", doc, (str,))
    options = {}
    if kind == "weierstrass":
        payload = _weierstrass(obj, doc)
    elif kind == "marked_triple":
        w = _weierstrass(obj, doc)
        payload = MarkedTriple(w, _form(_get(obj, "l", "l", doc), "l", doc, 1))
    elif kind == "surface_graph":
        payload = _graph(obj, doc)
        for key in ("catalog_label", "chain", "below_twelfth"):
            if key in obj:
                options[key] = obj[key]
    elif kind == "weight_query":
        payload = parse_rational(_get(obj, "a", "a", doc), "a", doc)
    else:
        doc.fail(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")
    return {"kind": kind, "payload": payload, "options": options}


def load(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# -- serialization -------------------------------------------------------------------


def _coeffs(f: BinaryForm) -> list:
    return [format_rational(c) for c in f.coeffs]


def to_obj(payload, options=None) -> dict:
    head = {"schema_version": SCHEMA_VERSION}
    if isinstance(payload, MarkedTriple):
        w = payload.w
        return {**head, "kind": "marked_triple", "N": w.N, "A": _coeffs(w.A), "B": _coeffs(w.B),
                "l": _coeffs(payload.l)}
    if isinstance(payload, WeierstrassData):
        return {**head, "kind": "weierstrass", "N": payload.N, "A": _coeffs(payload.A),
                "B": _coeffs(payload.B)}
    if isinstance(payload, SurfaceGraph):
        out = {**head, "kind": "surface_graph", "marked_total": payload.marked_total,
               "components": [_component_obj(c) for c in payload.components],
               "edges": [{"endpoints": list(e.endpoints), "fiber_pair": [str(f) for f in e.fiber_pair]}
                         for e in payload.edges]}
        out.update(options or {})
        return out
    if isinstance(payload, Fraction):
        return {**head, "kind": "weight_query", "a": format_rational(payload)}
    raise TypeError(f"cannot serialize {type(payload).__name__}")


def _component_obj(c: ComponentSpec) -> dict:
    out = {"kind": c.kind.value, "j_degree": c.j_degree, "markings": c.markings, "k3_type": c.k3_type,
           "fibers": []}
    for f in c.fibers:
        entry = {"fiber": str(f.fiber), "model": f.model.value, "collisions": f.collisions}
        if f.tree is not None:
            entry["tree"] = str(f.tree)
        out["fibers"].append(entry)
    if c.section_self_int is not None:
        out["section_self_int"] = format_rational(c.section_self_int)
    return out


def dumps(payload, options=None) -> str:
    return json.dumps(to_obj(payload, options), indent=2, sort_keys=True) + "\n"
