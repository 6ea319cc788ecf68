"""JSON instance files.

Layout::

    {
      "field": "Q",                      # or "GF(p)"
      "ambient_dim": 2,
      "sets": [
        {"finite": [["1", "0"], ["2", "0"]]},
        {"punctured_subspace": [["1", "1/2"]]}
      ],
      "decomposition": {"n": 2, "summands": [[[...], ...], ...]}   # optional
    }

Scalars are ``"a"`` or ``"a/b"`` strings (``b > 0``) or JSON integers.  On
output, Q scalars are written as strings and GF(p) scalars as integers, and
punctured subspaces are written by their canonical basis.
"""

from __future__ import annotations

import json

from .constructions import DirectSumDecomposition
from .errors import ParseError
from .exactalg import FieldSpec, Subspace, Vector
from .setfamily import FiniteSet, PuncturedSubspace, SetFamily


def _fail(path: str, msg: str):
    raise ParseError(f"{path}: {msg}")


def _vector(field: FieldSpec, dim: int, obj, path: str) -> Vector:
    if not isinstance(obj, list):
        _fail(path, "expected a list of scalars")
    if len(obj) != dim:
        _fail(path, f"expected {dim} coordinates, got {len(obj)}")
    coords = []
    for j, x in enumerate(obj):
        try:
            coords.append(field.parse_scalar(x))
        except ParseError as exc:
            _fail(f"{path}[{j}]", str(exc))
    return Vector._raw(field, coords)


def _vectors(field, dim, obj, path) -> list[Vector]:
    if not isinstance(obj, list) or not obj:
        _fail(path, "expected a nonempty list of vectors")
    return [_vector(field, dim, v, f"{path}[{i}]") for i, v in enumerate(obj)]


def _subspace(field, dim, obj, path) -> Subspace:
    vs = _vectors(field, dim, obj, path)
    return Subspace(field, dim, tuple(v.coords for v in vs))


def from_dict(doc) -> tuple[SetFamily, DirectSumDecomposition | None]:
    if not isinstance(doc, dict):
        _fail("$", "expected an object")
    for key in ("field", "ambient_dim", "sets"):
        if key not in doc:
            _fail("$", f"missing key {key!r}")
    unknown = set(doc) - {"field", "ambient_dim", "sets", "decomposition"}
    if unknown:
        _fail("$", f"unknown keys {sorted(unknown)}")
    if not isinstance(doc["field"], str):
        _fail("field", "expected 'Q' or 'GF(p)'")
    try:
        field = FieldSpec.parse(doc["field"])
    except ParseError as exc:
        _fail("field", str(exc))
    dim = doc["ambient_dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        _fail("ambient_dim", "expected a positive integer")
    if not isinstance(doc["sets"], list):
        _fail("sets", "expected a list")
    sets = []
    for i, entry in enumerate(doc["sets"]):
        path = f"sets[{i}]"
        if not isinstance(entry, dict) or len(entry) != 1:
            _fail(path, "expected {'finite': [...]} or {'punctured_subspace': [...]}")
        (tag, body), = entry.items()
        if tag == "finite":
            sets.append(FiniteSet(tuple(_vectors(field, dim, body, f"{path}.finite"))))
        elif tag == "punctured_subspace":
            space = _subspace(field, dim, body, f"{path}.punctured_subspace")
            if space.dim == 0:
                _fail(f"{path}.punctured_subspace", "basis spans the zero subspace")
            sets.append(PuncturedSubspace(space))
        else:
            _fail(path, f"unknown set kind {tag!r}")
    family = SetFamily(field, dim, tuple(sets))
    dec = None
    if "decomposition" in doc:
        d = doc["decomposition"]
        if not isinstance(d, dict) or set(d) != {"n", "summands"}:
            _fail("decomposition", "expected keys 'n' and 'summands'")
        n = d["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            _fail("decomposition.n", "expected a positive integer")
        if not isinstance(d["summands"], list) or not d["summands"]:
            _fail("decomposition.summands", "expected a nonempty list")
        summands = tuple(
            _subspace(field, dim, w, f"decomposition.summands[{j}]") for j, w in enumerate(d["summands"])
        )
        dec = DirectSumDecomposition(field, dim, summands, n)
    return family, dec


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _vec_out(field: FieldSpec, coords) -> list:
    return [field.format_scalar(c) for c in coords]


def to_dict(family: SetFamily, dec: DirectSumDecomposition | None = None) -> dict:
    field = family.field
    sets = []
    for s in family.sets:
        if isinstance(s, FiniteSet):
            sets.append({"finite": [_vec_out(field, v.coords) for v in s.vectors]})
        else:
            sets.append({"punctured_subspace": [_vec_out(field, r) for r in s.space.basis]})
    doc = {"field": str(field), "ambient_dim": family.ambient_dim, "sets": sets}
    if dec is not None:
        doc["decomposition"] = {
            "n": dec.n,
            "summands": [[_vec_out(field, r) for r in w.basis] for w in dec.summands],
        }
    return doc


def dumps(family: SetFamily, dec: DirectSumDecomposition | None = None) -> str:
    """Stable text form: one set (or summand) per line."""
    doc = to_dict(family, dec)
    c = lambda x: json.dumps(x, separators=(", ", ": "))  # noqa: E731
    lines = ["{", f'  "field": {c(doc["field"])},', f'  "ambient_dim": {doc["ambient_dim"]},', '  "sets": [']
    lines.append(",\n".join(f"    {c(s)}" for s in doc["sets"]))
    if "decomposition" in doc:
        d = doc["decomposition"]
        lines.append("  ],")
        lines.append(f'  "decomposition": {{"n": {d["n"]}, "summands": [')
        lines.append(",\n".join(f"    {c(w)}" for w in d["summands"]))
        lines.append("  ]}")
    else:
        lines.append("  ]")
    lines.append("}")
    return "\n".join(line for line in lines if line) + "\n"


def dump(path, family: SetFamily, dec: DirectSumDecomposition | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(family, dec))
