"""Instance documents (JSON with a "kind" discriminator) and the matrix text format.

Every document carries ``"version": 1`` (optional on input) and a ``field``
object such as ``{"kind": "gfp", "p": 10007}`` or ``{"kind": "rational"}``.
Matrix entries are strings in the Laurent grammar (``3*t^2 - 1 + 2*t^-1``);
plain JSON integers are accepted too.  Row/column indices in matching and
mixed documents are 1-based.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .apps import MatchingInstance, MatroidBaseInstance, MatroidIntersectionInstance, MixedPolySystem
from .errors import ParseError
from .fields import Field, LaurentPoly, field_from_spec, field_to_spec, parse_rational
from .pencil import LaurentMatrix, LinearPencil

VERSION = 1
KINDS = ("pencil", "matching", "matroid-base", "matroid-intersection", "mixed", "matrix")


class DocumentError(ParseError):
    """A parse error located by a JSON path such as ``terms[1].entries[0][2]``."""

    def __init__(self, message: str, path: str = "", position: int | None = None):
        self.path = path
        where = f"{path}: " if path else ""
        super().__init__(f"{where}{message}", position)


def _require(doc: dict, key: str, path: str = ""):
    if key not in doc:
        raise DocumentError(f"missing key {key!r}", path)
    return doc[key]


def _entry(field: Field, x, path: str) -> LaurentPoly:
    if isinstance(x, bool):
        raise DocumentError("booleans are not matrix entries", path)
    if isinstance(x, int):
        return LaurentPoly(field, 0, [x])
    if not isinstance(x, str):
        raise DocumentError(f"expected a string or integer, got {type(x).__name__}", path)
    try:
        return LaurentPoly.parse(x, field)
    except ParseError as e:
        raise DocumentError(str(e.args[0]).split(" (at position")[0], path, e.position) from None


def _scalar(field: Field, x, path: str):
    p = _entry(field, x, path)
    if p.is_zero():
        return field.zero
    if p.lo != 0 or len(p.coeffs) != 1:
        raise DocumentError("expected a constant", path)
    return p.coeffs[0]


def _grid(x, path: str, shape=None) -> list[list]:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise DocumentError("expected a list of rows", path)
    widths = {len(r) for r in x}
    if len(widths) > 1:
        raise DocumentError("rows have different lengths", path)
    if shape is not None:
        got = (len(x), len(x[0]) if x else shape[1])
        if got != tuple(shape):
            raise DocumentError(f"expected shape {tuple(shape)}, got {got}", path)
    return x


def _laurent_matrix(field: Field, rows, path: str, shape=None) -> LaurentMatrix:
    rows = _grid(rows, path, shape)
    ents = [[_entry(field, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    if not ents:
        return LaurentMatrix.zeros(field, tuple(shape) if shape else (0, 0))
    return LaurentMatrix.from_entries(field, ents)


def _constant_matrix(field: Field, rows, path: str) -> np.ndarray:
    rows = _grid(rows, path)
    return field.array([[_scalar(field, x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)])


def _weights(x, path: str, length: int) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(w, int) and not isinstance(w, bool) for w in x):
        raise DocumentError("weights must be a list of integers", path)
    if len(x) != length:
        raise DocumentError(f"expected {length} weights, got {len(x)}", path)
    return tuple(x)


# ----------------------------------------------------------------- parsing


def loads(text: str) -> tuple[str, object]:
    """Parse a document string into ``(kind, instance)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})", "", e.pos) from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object")
    return parse_document(doc)


def load(path: str | Path) -> tuple[str, object]:
    return loads(Path(path).read_text())


def parse_document(doc: dict) -> tuple[str, object]:
    version = doc.get("version", VERSION)
    if version != VERSION:
        raise DocumentError(f"unsupported version {version!r}", "version")
    kind = _require(doc, "kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}", "kind")
    try:
        field = field_from_spec(doc.get("field", {"kind": "gfp", "p": 10007}))
    except (KeyError, ValueError, TypeError) as e:
        raise DocumentError(str(e), "field") from None
    return kind, _PARSERS[kind](field, doc)


def _parse_pencil(field: Field, doc: dict) -> LinearPencil:
    n = _require(doc, "n")
    nprime = doc.get("nprime", n)
    terms = _require(doc, "terms")
    if not isinstance(terms, list):
        raise DocumentError("expected a list", "terms")
    mats: dict[int, LaurentMatrix] = {}
    for k, t in enumerate(terms):
        p = f"terms[{k}]"
        if not isinstance(t, dict):
            raise DocumentError("expected an object", p)
        var = t.get("var", k)
        if not isinstance(var, int) or var < 0:
            raise DocumentError("var must be a nonnegative integer", f"{p}.var")
        if var in mats:
            raise DocumentError(f"variable {var} given twice", f"{p}.var")
        mats[var] = _laurent_matrix(field, _require(t, "entries", p), f"{p}.entries", (n, nprime))
    names = doc.get("var_names")
    pencil = LinearPencil.from_terms(field, n, nprime, mats)
    if names is not None:
        if len(names) != pencil.m:
            raise DocumentError(f"expected {pencil.m} names", "var_names")
        pencil = LinearPencil(field, n, nprime, pencil.terms, tuple(names))
    return pencil


def _parse_matching(field: Field, doc: dict) -> MatchingInstance:
    n = _require(doc, "n")
    seen = set()
    edges = []
    for k, e in enumerate(_require(doc, "edges")):
        p = f"edges[{k}]"
        if not (isinstance(e, list) and len(e) == 3 and all(isinstance(v, int) for v in e)):
            raise DocumentError("an edge is [i, j, weight] with integers", p)
        i, j, c = e
        if not (1 <= i <= n and 1 <= j <= n):
            raise DocumentError(f"endpoint out of range 1..{n}", p)
        if (i, j) in seen:
            raise DocumentError(f"duplicate edge ({i}, {j})", p)
        seen.add((i, j))
        edges.append((i - 1, j - 1, c))
    return MatchingInstance(n, tuple(edges))


def _parse_matroid_base(field: Field, doc: dict) -> MatroidBaseInstance:
    V = _constant_matrix(field, _require(doc, "vectors"), "vectors")
    return MatroidBaseInstance(field, V, _weights(_require(doc, "weights"), "weights", V.shape[0]))


def _parse_matroid_intersection(field: Field, doc: dict) -> MatroidIntersectionInstance:
    a = _constant_matrix(field, _require(doc, "a"), "a")
    b = _constant_matrix(field, _require(doc, "b"), "b")
    if a.shape != b.shape:
        raise DocumentError(f"a has shape {a.shape} but b has {b.shape}", "b")
    return MatroidIntersectionInstance(field, a, b, _weights(_require(doc, "weights"), "weights", a.shape[0]))


def _parse_mixed(field: Field, doc: dict) -> MixedPolySystem:
    n = _require(doc, "n")
    Q = _laurent_matrix(field, doc.get("Q", [["0"] * n for _ in range(n)]), "Q", (n, n))
    ents = []
    for k, e in enumerate(doc.get("T", [])):
        p = f"T[{k}]"
        try:
            r, c, v, d = e["row"], e["col"], str(e["var"]), e.get("degree", 0)
        except (KeyError, TypeError):
            raise DocumentError("a placement is {row, col, var, degree}", p) from None
        if not (1 <= r <= n and 1 <= c <= n):
            raise DocumentError(f"position out of range 1..{n}", p)
        ents.append((r - 1, c - 1, v, int(d)))
    try:
        return MixedPolySystem(field, n, Q, tuple(ents))
    except ValueError as e:
        raise DocumentError(str(e), "T") from None


def _parse_matrix(field: Field, doc: dict) -> np.ndarray:
    rows = _grid(_require(doc, "entries"), "entries")
    return _ratmatrix_from_strings(field, rows, "entries")


def _ratmatrix_from_strings(field: Field, rows, path: str) -> np.ndarray:
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            try:
                out[i, j] = parse_rational(str(x), field)
            except ParseError as e:
                raise DocumentError(str(e.args[0]).split(" (at position")[0], f"{path}[{i}][{j}]", e.position) from None
    return out


_PARSERS = {
    "pencil": _parse_pencil,
    "matching": _parse_matching,
    "matroid-base": _parse_matroid_base,
    "matroid-intersection": _parse_matroid_intersection,
    "mixed": _parse_mixed,
    "matrix": _parse_matrix,
}


def parse_matrix_text(text: str, field: Field) -> np.ndarray:
    """Rows as lines, entries separated by commas; blank lines and ``#`` comments skipped."""
    rows = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append((ln, [c.strip() for c in line.split(",")]))
    if not rows:
        raise ParseError("no matrix rows")
    width = len(rows[0][1])
    out = np.empty((len(rows), width), dtype=object)
    for i, (ln, cells) in enumerate(rows):
        if len(cells) != width:
            raise DocumentError(f"expected {width} entries, got {len(cells)}", f"line {ln}")
        for j, c in enumerate(cells):
            try:
                out[i, j] = parse_rational(c, field)
            except ParseError as e:
                raise DocumentError(str(e.args[0]).split(" (at position")[0], f"line {ln}, entry {j + 1}", e.position) from None
    return out


def format_matrix_text(field: Field, M: np.ndarray) -> str:
    return "\n".join(", ".join(str(x) for x in row) for row in M)


# ----------------------------------------------------------------- writing


def _fmt_entry(p: LaurentPoly) -> str:
    return str(p)


def dump_pencil(A: LinearPencil) -> dict:
    doc = {
        "kind": "pencil",
        "version": VERSION,
        "field": field_to_spec(A.field),
        "n": A.n,
        "nprime": A.nprime,
        "terms": [
            {"var": k, "entries": [[_fmt_entry(x) for x in row] for row in M.entries()]}
            for k, M in enumerate(A.terms)
            if k or not M.is_zero()
        ],
    }
    if A.var_names is not None:
        doc["var_names"] = list(A.var_names)
    return doc


def dump_matching(inst: MatchingInstance, field: Field | None = None) -> dict:
    doc = {"kind": "matching", "version": VERSION, "n": inst.n, "edges": [[i + 1, j + 1, c] for i, j, c in inst.edges]}
    if field is not None:
        doc["field"] = field_to_spec(field)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2)
