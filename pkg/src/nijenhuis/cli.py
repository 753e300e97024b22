"""Document format, command surface and report emission.

A document is a JSON object with ``"format": "nijenhuis-document"`` and an
integer ``"version"``. Every other top-level key is optional; see
``docs/format.md`` for the field list. Scalars are integers or "p/q" strings.
Tensors are nested lists in index order (``mu[i][j][k]``); matrices are lists
of rows with the image of basis vector j in column j.

Reports go to stdout as canonical JSON, a one-line summary goes to stderr.
Exit codes: 0 success, 1 a verification failed, 2 usage or format error.
"""

from __future__ import annotations

import argparse
import json
import json.scanner
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import complexes, defext, homotopy, nsalg
from .core import (
    Algebra,
    Bimodule,
    LinearMap,
    NijAlgebra,
    NijBimodule,
    Report,
    StructureError,
    VerificationError,
    deformed_algebra,
    verify_core,
)
from .scalars import format_scalar, parse_scalar, tensor
from .tensor import MultiMap

FORMAT = "nijenhuis-document"
VERSION = 1
REPORT_VERSION = 1
MAX_VIOLATIONS = 20

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# diagnostics


class DocumentError(ValueError):
    """A format problem, with a code, a field path and a text position."""

    def __init__(self, code: str, message: str, path: str = "", line: int | None = None, column: int | None = None):
        self.code, self.path, self.line, self.column = code, path, line, column
        where = f" at line {line}, column {column}" if line is not None else ""
        field_ = f" in field {path!r}" if path else ""
        super().__init__(f"{code} error{field_}{where}: {message}")

    def as_dict(self) -> dict[str, Any]:
        return {"code": self.code, "path": self.path, "line": self.line, "column": self.column, "message": str(self)}


class _Locator(json.JSONDecoder):
    """json decoder that remembers where every object and array starts."""

    def __init__(self):
        super().__init__()
        self.where: dict[int, int] = {}
        keep: list = []
        po, pa = self.parse_object, self.parse_array

        def parse_object(s_end, *rest):
            val, stop = po(s_end, *rest)
            self.where[id(val)] = s_end[1] - 1
            keep.append(val)
            return val, stop

        def parse_array(s_end, *rest):
            val, stop = pa(s_end, *rest)
            self.where[id(val)] = s_end[1] - 1
            keep.append(val)
            return val, stop

        self.parse_object, self.parse_array = parse_object, parse_array
        self.scan_once = json.scanner.py_make_scanner(self)


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


# ---------------------------------------------------------------------------
# document


@dataclass
class Document:
    """Canonical content: nested dicts and lists with Fraction scalars."""

    fields: dict[str, Any] = field(default_factory=dict)
    version: int = VERSION

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return self.version == other.version and self.fields == other.fields

    def has(self, key: str) -> bool:
        return key in self.fields

    # -- structures ------------------------------------------------------

    def algebra(self) -> Algebra:
        a = self._need("algebra")
        return Algebra(int(a["dim"]), tensor(a["mu"]))

    def nij_algebra(self) -> NijAlgebra:
        return NijAlgebra(self.algebra(), LinearMap(self._need("operator")))

    def nij_bimodule(self, na: NijAlgebra | None = None) -> NijBimodule:
        na = na or self.nij_algebra()
        b = self.fields.get("bimodule", "adjoint")
        if b == "adjoint":
            return NijBimodule.adjoint(na)
        if b == "zero":
            return NijBimodule.zero(na)
        bim = Bimodule(na.algebra, int(b["dim"]), tensor(b["left"]), tensor(b["right"]))
        return NijBimodule(na, bim, LinearMap(self._need("bimodule_operator"), bim.dim, bim.dim))

    def cocycle(self, na: NijAlgebra, nb: NijBimodule) -> defext.Cocycle2:
        z = self._need("cocycle")
        return defext.Cocycle2(
            MultiMap(2, na.dim, nb.dim, tensor(z["chi"], (na.dim, na.dim, nb.dim))),
            MultiMap(1, na.dim, nb.dim, tensor(z["F"], (na.dim, nb.dim))),
        )

    def pair(self) -> defext.AutoPair:
        p = self._need("pair")
        return defext.AutoPair(LinearMap(p["beta"]), LinearMap(p["alpha"]))

    def extension(self) -> defext.Extension:
        na = self.nij_algebra()
        nb = self.nij_bimodule(na)
        e = self._need("extension")
        total = NijAlgebra(Algebra(int(e["dim"]), tensor(e["mu"])), LinearMap(e["operator"]))
        t, d, m = total.dim, na.dim, nb.dim
        incl = LinearMap(e["incl"], t, m)
        proj = LinearMap(e["proj"], d, t)
        section = LinearMap(e["section"], t, d) if "section" in e else _default_section(t, d, m)
        return defext.Extension(total, incl, proj, section, na, nb)

    def two_term(self) -> tuple[homotopy.TwoTermAInf, homotopy.HomotopyNijOp | None]:
        g = self._need("two_term")
        a0, a1 = int(g["a0"]), int(g["a1"])
        tt = homotopy.TwoTermAInf(
            a0, a1, LinearMap(g["bdry"], a0, a1), tensor(g["m00"]), tensor(g["m01"]), tensor(g["m10"]), tensor(g["mu3"])
        )
        h = self.fields.get("homotopy_operator")
        op = None
        if h is not None:
            op = homotopy.HomotopyNijOp(LinearMap(h["n0"], a0, a0), LinearMap(h["n1"], a1, a1), tensor(h["n2"]))
        return tt, op

    def graded(self) -> tuple[homotopy.GradedAInf, LinearMap | None]:
        g = self._need("graded")
        blocks = tuple((int(d), int(n)) for d, n in g["blocks"])
        ops = {int(k): tensor(v) for k, v in g["ops"].items()}
        window = tuple(int(x) for x in g["window"]) if "window" in g else None
        ga = homotopy.GradedAInf(blocks, ops, window)
        op = self.fields.get("graded_operator")
        return ga, (LinearMap(op, ga.dim, ga.dim) if op is not None else None)

    def crossed_module(self) -> homotopy.CrossedModule:
        base = self.nij_algebra()
        c = self._need("crossed_module")
        top_dim = int(c["top"]["dim"])
        top = NijAlgebra(Algebra(top_dim, tensor(c["top"]["mu"])), LinearMap(c["top"]["operator"], top_dim, top_dim))
        act = Bimodule(base.algebra, top_dim, tensor(c["left"]), tensor(c["right"]))
        return homotopy.CrossedModule(base, top, LinearMap(c["phi"], base.dim, top_dim), act)

    def _need(self, key: str) -> Any:
        if key not in self.fields:
            raise DocumentError("missing", f"the document has no {key!r} section", key)
        return self.fields[key]


def _default_section(t: int, d: int, m: int) -> LinearMap:
    s = np.zeros((t, d), dtype=object)
    s[:] = Fraction(0)
    for i in range(d):
        s[i, i] = Fraction(1)
    return LinearMap(s)


# -- parsing -----------------------------------------------------------------


class _Reader:
    def __init__(self, text: str, where: dict[int, int]):
        self.text, self.where = text, where

    def fail(self, code: str, message: str, path: str, node: Any = None, parent: Any = None) -> DocumentError:
        off = self.where.get(id(node)) if isinstance(node, (list, dict)) else None
        if off is None and id(parent) in self.where:
            off = self.where[id(parent)]
            key = path.rsplit(".", 1)[-1].split("[", 1)[0]
            if isinstance(parent, dict) and key in parent:
                hit = self.text.find(json.dumps(key), off)
                off = hit if hit >= 0 else off
        line, col = _line_col(self.text, off) if off is not None else (None, None)
        return DocumentError(code, message, path, line, col)

    def scalar(self, x: Any, path: str, parent: Any) -> Fraction:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise self.fail("scalar", f"expected an integer or a 'p/q' string, got {json.dumps(x)}", path, parent=parent)
        try:
            return parse_scalar(str(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise self.fail("scalar", f"malformed scalar {x!r} ({exc})", path, parent=parent) from None

    def tensor(self, x: Any, shape: tuple[int, ...], path: str, parent: Any = None) -> list:
        """Nested list of exactly the given shape, scalars parsed."""
        if not shape:
            return self.scalar(x, path, parent)
        if not isinstance(x, list):
            raise self.fail("dimension", f"expected a list of length {shape[0]}", path, x, parent)
        if len(x) != shape[0]:
            raise self.fail("dimension", f"expected length {shape[0]}, got {len(x)}", path, x, parent)
        return [self.tensor(v, shape[1:], f"{path}[{i}]", x) for i, v in enumerate(x)]

    def dim(self, obj: dict, key: str, path: str) -> int:
        v = obj.get(key)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise self.fail("schema", f"{key!r} must be a non-negative integer", f"{path}.{key}", obj.get(key), obj)
        return v

    def obj(self, parent: dict, key: str, path: str, required: Sequence[str] = ()) -> dict:
        v = parent[key]
        if not isinstance(v, dict):
            raise self.fail("schema", "expected an object", path, v, parent)
        for r in required:
            if r not in v:
                raise self.fail("schema", f"missing key {r!r}", f"{path}.{r}", v)
        return v


def parse_document(text: str) -> Document:
    dec = _Locator()
    try:
        raw = dec.decode(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("syntax", exc.msg, "", exc.lineno, exc.colno) from None
    rd = _Reader(text, dec.where)
    if not isinstance(raw, dict):
        raise rd.fail("schema", "the document must be a JSON object", "", raw)
    if raw.get("format") != FORMAT:
        raise rd.fail("schema", f"'format' must be {FORMAT!r}", "format", None, raw)
    version = raw.get("version")
    if version != VERSION:
        raise rd.fail("version", f"unknown version {version!r}; this reader understands {VERSION}", "version", None, raw)
    known = {"format", "version"} | set(_SECTIONS)
    for key in raw:
        if key not in known:
            raise rd.fail("schema", f"unknown section {key!r}", key, raw[key], raw)
    fields: dict[str, Any] = {}
    ctx: dict[str, int] = {}
    for key in _SECTIONS:
        if key in raw:
            fields[key] = _SECTIONS[key](rd, raw, key, ctx, fields)
    return Document(fields, version)


def _sec_algebra(rd: _Reader, raw, key, ctx, fields):
    a = rd.obj(raw, key, key, ("dim", "mu"))
    d = rd.dim(a, "dim", key)
    ctx["d"] = d
    return {"dim": d, "mu": rd.tensor(a["mu"], (d, d, d), f"{key}.mu", a)}


def _need_ctx(rd: _Reader, raw, key: str, ctx, name: str) -> int:
    if name not in ctx:
        raise rd.fail("schema", f"section {key!r} needs the section that fixes {name!r}", key, raw[key], raw)
    return ctx[name]


def _sec_operator(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    return rd.tensor(raw[key], (d, d), key, raw)


def _sec_bimodule(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    b = raw[key]
    if b in ("adjoint", "zero"):
        ctx["m"] = d if b == "adjoint" else 0
        return b
    b = rd.obj(raw, key, key, ("dim", "left", "right"))
    m = rd.dim(b, "dim", key)
    ctx["m"] = m
    return {
        "dim": m,
        "left": rd.tensor(b["left"], (d, m, m), f"{key}.left", b),
        "right": rd.tensor(b["right"], (m, d, m), f"{key}.right", b),
    }


def _sec_bimodule_operator(rd: _Reader, raw, key, ctx, fields):
    m = _need_ctx(rd, raw, key, ctx, "m")
    return rd.tensor(raw[key], (m, m), key, raw)


def _sec_cocycle(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    m = ctx.get("m", d)
    z = rd.obj(raw, key, key, ("chi", "F"))
    return {"chi": rd.tensor(z["chi"], (d, d, m), f"{key}.chi", z), "F": rd.tensor(z["F"], (d, m), f"{key}.F", z)}


def _sec_pair(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    m = ctx.get("m", d)
    p = rd.obj(raw, key, key, ("beta", "alpha"))
    return {"beta": rd.tensor(p["beta"], (m, m), f"{key}.beta", p), "alpha": rd.tensor(p["alpha"], (d, d), f"{key}.alpha", p)}


def _sec_lambda(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    m = ctx.get("m", d)
    return rd.tensor(raw[key], (m, d), key, raw)


def _sec_extension(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    m = ctx.get("m", d)
    e = rd.obj(raw, key, key, ("dim", "mu", "operator", "incl", "proj"))
    t = rd.dim(e, "dim", key)
    out = {
        "dim": t,
        "mu": rd.tensor(e["mu"], (t, t, t), f"{key}.mu", e),
        "operator": rd.tensor(e["operator"], (t, t), f"{key}.operator", e),
        "incl": rd.tensor(e["incl"], (t, m), f"{key}.incl", e),
        "proj": rd.tensor(e["proj"], (d, t), f"{key}.proj", e),
    }
    if "section" in e:
        out["section"] = rd.tensor(e["section"], (t, d), f"{key}.section", e)
    return out


def _sec_deformation(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    f = rd.obj(raw, key, key, ("mu1", "n1"))
    return {"mu1": rd.tensor(f["mu1"], (d, d, d), f"{key}.mu1", f), "n1": rd.tensor(f["n1"], (d, d), f"{key}.n1", f)}


def _sec_two_term(rd: _Reader, raw, key, ctx, fields):
    g = rd.obj(raw, key, key, ("a0", "a1", "bdry", "m00", "m01", "m10", "mu3"))
    a0, a1 = rd.dim(g, "a0", key), rd.dim(g, "a1", key)
    ctx["a0"], ctx["a1"] = a0, a1
    shapes = {"bdry": (a0, a1), "m00": (a0, a0, a0), "m01": (a0, a1, a1), "m10": (a1, a0, a1), "mu3": (a0, a0, a0, a1)}
    out = {"a0": a0, "a1": a1}
    for name, shape in shapes.items():
        out[name] = rd.tensor(g[name], shape, f"{key}.{name}", g)
    return out


def _sec_homotopy_operator(rd: _Reader, raw, key, ctx, fields):
    a0 = _need_ctx(rd, raw, key, ctx, "a0")
    a1 = ctx["a1"]
    h = rd.obj(raw, key, key, ("n0", "n1", "n2"))
    return {
        "n0": rd.tensor(h["n0"], (a0, a0), f"{key}.n0", h),
        "n1": rd.tensor(h["n1"], (a1, a1), f"{key}.n1", h),
        "n2": rd.tensor(h["n2"], (a0, a0, a1), f"{key}.n2", h),
    }


def _sec_graded(rd: _Reader, raw, key, ctx, fields):
    g = rd.obj(raw, key, key, ("blocks", "ops"))
    blocks = g["blocks"]
    if not isinstance(blocks, list) or not all(
        isinstance(b, list) and len(b) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in b) and b[1] >= 0
        for b in blocks
    ):
        raise rd.fail("schema", "blocks must be a list of [degree, dim] integer pairs", f"{key}.blocks", blocks, g)
    dim = sum(b[1] for b in blocks)
    ctx["D"] = dim
    ops = g["ops"]
    if not isinstance(ops, dict):
        raise rd.fail("schema", "ops must map arities to tensors", f"{key}.ops", ops, g)
    out_ops = {}
    for k in sorted(ops, key=lambda s: (len(s), s)):
        if not k.isdigit() or int(k) < 1:
            raise rd.fail("schema", f"arity key {k!r} must be a positive integer", f"{key}.ops.{k}", ops[k], ops)
        n = int(k)
        out_ops[str(n)] = rd.tensor(ops[k], (dim,) * (n + 1), f"{key}.ops.{k}", ops)
    out = {"blocks": [[int(a), int(b)] for a, b in blocks], "ops": out_ops}
    if "window" in g:
        w = g["window"]
        if not (isinstance(w, list) and len(w) == 2 and all(isinstance(x, int) for x in w)):
            raise rd.fail("schema", "window must be [lo, hi]", f"{key}.window", w, g)
        out["window"] = [int(w[0]), int(w[1])]
    return out


def _sec_graded_operator(rd: _Reader, raw, key, ctx, fields):
    dim = _need_ctx(rd, raw, key, ctx, "D")
    return rd.tensor(raw[key], (dim, dim), key, raw)


def _sec_crossed(rd: _Reader, raw, key, ctx, fields):
    d = _need_ctx(rd, raw, key, ctx, "d")
    c = rd.obj(raw, key, key, ("top", "phi", "left", "right"))
    top = rd.obj(c, "top", f"{key}.top", ("dim", "mu", "operator"))
    t = rd.dim(top, "dim", f"{key}.top")
    return {
        "top": {
            "dim": t,
            "mu": rd.tensor(top["mu"], (t, t, t), f"{key}.top.mu", top),
            "operator": rd.tensor(top["operator"], (t, t), f"{key}.top.operator", top),
        },
        "phi": rd.tensor(c["phi"], (d, t), f"{key}.phi", c),
        "left": rd.tensor(c["left"], (d, t, t), f"{key}.left", c),
        "right": rd.tensor(c["right"], (t, d, t), f"{key}.right", c),
    }


# parse order matters: later sections read dimensions fixed by earlier ones
_SECTIONS: dict[str, Callable] = {
    "algebra": _sec_algebra,
    "operator": _sec_operator,
    "bimodule": _sec_bimodule,
    "bimodule_operator": _sec_bimodule_operator,
    "cocycle": _sec_cocycle,
    "pair": _sec_pair,
    "lambda": _sec_lambda,
    "extension": _sec_extension,
    "deformation": _sec_deformation,
    "deformation_other": _sec_deformation,
    "two_term": _sec_two_term,
    "homotopy_operator": _sec_homotopy_operator,
    "graded": _sec_graded,
    "graded_operator": _sec_graded_operator,
    "crossed_module": _sec_crossed,
}


# -- emission ----------------------------------------------------------------


def _plain(x: Any) -> Any:
    """JSON-ready copy: Fractions become ints or 'p/q', arrays become lists."""
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, LinearMap):
        return _plain(x.matrix)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, np.integer, Fraction)):
        return format_scalar(x)
    return x


def _render(x: Any, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_render(x[k], level + 1)}" for k in sorted(x)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (list, dict)) for v in x):
            return "[" + ", ".join(json.dumps(v) for v in x) + "]"
        return "[\n" + ",\n".join(inner + _render(v, level + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x)


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, scalar lists on one line."""
    return _render(_plain(obj), 0) + "\n"


def emit_document(doc: Document) -> str:
    body = dict(doc.fields)
    body["format"] = FORMAT
    body["version"] = doc.version
    return dumps(body)


def document_from(**parts: Any) -> Document:
    """Build a canonical document from library objects (NijAlgebra, bimodule, ...)."""
    fields: dict[str, Any] = {}
    na = parts.get("nij_algebra")
    if na is not None:
        fields["algebra"] = {"dim": na.dim, "mu": na.mu}
        fields["operator"] = na.n_op
    nb = parts.get("nij_bimodule")
    if nb is not None:
        fields["bimodule"] = {"dim": nb.dim, "left": nb.left, "right": nb.right}
        fields["bimodule_operator"] = nb.nm_op
    z = parts.get("cocycle")
    if z is not None:
        fields["cocycle"] = {"chi": z.chi.entries, "F": z.f_part.entries}
    e = parts.get("extension")
    if e is not None:
        fields["extension"] = {
            "dim": e.total.dim,
            "mu": e.total.mu,
            "operator": e.total.n_op,
            "incl": e.incl,
            "proj": e.proj,
            "section": e.section,
        }
    g = parts.get("two_term")
    if g is not None:
        fields["two_term"] = {"a0": g.a0, "a1": g.a1, "bdry": g.bdry, "m00": g.m00, "m01": g.m01, "m10": g.m10, "mu3": g.mu3}
    h = parts.get("homotopy_operator")
    if h is not None:
        fields["homotopy_operator"] = {"n0": h.n0, "n1": h.n1, "n2": h.n2}
    cm = parts.get("crossed_module")
    if cm is not None:
        fields["algebra"] = {"dim": cm.base.dim, "mu": cm.base.mu}
        fields["operator"] = cm.base.n_op
        fields["crossed_module"] = {
            "top": {"dim": cm.top.dim, "mu": cm.top.mu, "operator": cm.top.n_op},
            "phi": cm.phi,
            "left": cm.actions.left,
            "right": cm.actions.right,
        }
    ga = parts.get("graded")
    if ga is not None:
        fields["graded"] = {
            "blocks": [list(b) for b in ga.blocks],
            "ops": {str(n): t for n, t in sorted(ga.ops.items())},
            "window": list(ga.window),
        }
    op = parts.get("graded_operator")
    if op is not None:
        fields["graded_operator"] = op
    # canonicalize through a text roundtrip so scalars are Fractions again
    return parse_document(emit_document(Document(fields)))


# ---------------------------------------------------------------------------
# reports


def report_dict(rep: Report) -> dict[str, Any]:
    return {
        "kind": rep.kind,
        "ok": rep.ok,
        "checked": list(rep.checked),
        "failed": rep.failed_laws(),
        "violation_count": len(rep.violations),
        "violations": [
            {"law": v.law, "basis": list(v.basis), "lhs": list(v.lhs), "rhs": list(v.rhs)}
            for v in rep.violations[:MAX_VIOLATIONS]
        ],
        "notes": dict(sorted(rep.notes.items())),
    }


@dataclass
class Outcome:
    ok: bool
    result: Any
    summary: str
    raw: Any = None


def _envelope(command: str, out: Outcome) -> dict[str, Any]:
    return {"command": command, "ok": out.ok, "report_version": REPORT_VERSION, "result": out.result}


# ---------------------------------------------------------------------------
# commands


def _load(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError("io", str(exc), path) from None
    return parse_document(text)


def cmd_verify(args) -> Outcome:
    doc = _load(args.file)
    results = []
    if doc.has("algebra"):
        if doc.has("operator"):
            na = doc.nij_algebra()
            results.append(report_dict(verify_core("nij-algebra", na)))
            if doc.has("bimodule"):
                results.append(report_dict(verify_core("nij-bimodule", doc.nij_bimodule(na))))
            if doc.has("extension"):
                results.append(report_dict(defext.verify_extension(doc.extension())))
        else:
            results.append(report_dict(verify_core("algebra", doc.algebra())))
    if doc.has("two_term"):
        g, h = doc.two_term()
        results.append(report_dict(homotopy.verify_homotopy("two-term-ainf", g)))
        if h is not None:
            results.append(report_dict(homotopy.verify_homotopy("homotopy-nij", (g, h))))
    if doc.has("graded"):
        ga, op = doc.graded()
        results.append(report_dict(homotopy.verify_homotopy("graded-ainf", ga, args.max_degree or 4)))
        if op is not None:
            results.append(report_dict(homotopy.verify_homotopy("strict-hn", (ga, op))))
    if doc.has("crossed_module"):
        results.append(report_dict(homotopy.verify_homotopy("crossed-module", doc.crossed_module())))
    if not results:
        raise DocumentError("missing", "nothing to verify", "")
    ok = all(r["ok"] for r in results)
    laws = sum(len(r["checked"]) for r in results)
    return Outcome(ok, {"reports": results}, f"verify: {len(results)} structures, {laws} laws, {'ok' if ok else 'FAILED'}")


def cmd_cohomology(args) -> Outcome:
    doc = _load(args.file)
    na = doc.nij_algebra()
    kind = args.complex or "cone-reduced"
    n_max = 3 if args.max_degree is None else args.max_degree
    data = na if kind in ("operator", "ns-shifted") and not doc.has("bimodule") else (na, doc.nij_bimodule(na))
    c = complexes.build_complex(kind, data, n_max)
    rep = complexes.cohomology(c)
    betti = list(rep.bettis)
    res = {"complex": kind, "max_degree": n_max, "degrees": rep.degrees, "betti": betti}
    return Outcome(True, res, f"cohomology {kind}: betti {betti}")


def cmd_les(args) -> Outcome:
    doc = _load(args.file)
    na = doc.nij_algebra()
    n_max = 3 if args.max_degree is None else args.max_degree
    res = complexes.les_report(na, doc.nij_bimodule(na), n_max)
    return Outcome(bool(res["exact"]), res, f"les: {'exact' if res['exact'] else 'NOT exact'} through degree {n_max}")


def cmd_deform(args) -> Outcome:
    doc = _load(args.file)
    na = doc.nij_algebra()
    if not doc.has("deformation"):
        k = 1 if args.power is None else args.power
        alg = deformed_algebra(na, k)
        res = {"power": k, "deformed_mu": alg.mu}
        return Outcome(True, res, f"deform: product deformed by N^{k}", raw={"dim": alg.dim, "mu": alg.mu})
    f = doc.fields["deformation"]
    ok = defext.check_infinitesimal(na, tensor(f["mu1"]), LinearMap(f["n1"]))
    res: dict[str, Any] = {"infinitesimal": ok}
    if doc.has("deformation_other"):
        g = doc.fields["deformation_other"]
        phi = defext.deformation_equivalence(
            na, (tensor(f["mu1"]), LinearMap(f["n1"])), (tensor(g["mu1"]), LinearMap(g["n1"]))
        )
        res["equivalent"] = phi is not None
        res["phi1"] = phi
    return Outcome(ok, res, f"deform: infinitesimal {'yes' if ok else 'no'}")


def _random_cocycle(na: NijAlgebra, nb: NijBimodule, seed: int) -> defext.Cocycle2:
    c = defext.reduced_complex(na, nb)
    basis = c.cycles(2)
    rng = random.Random(seed)
    coeffs = [rng.randint(-2, 2) for _ in basis]
    vec = [sum((a * z[i] for a, z in zip(coeffs, basis)), Fraction(0)) for i in range(c.dim(2))]
    return defext.Cocycle2.from_vector(na.dim, nb.dim, vec)


def cmd_extend(args) -> Outcome:
    doc = _load(args.file)
    na = doc.nij_algebra()
    nb = doc.nij_bimodule(na)
    z = doc.cocycle(na, nb) if doc.has("cocycle") else _random_cocycle(na, nb, args.seed)
    e = defext.extension_from_cocycle(na, nb, z)
    out = document_from(nij_algebra=na, nij_bimodule=nb, cocycle=z, extension=e)
    rep = report_dict(defext.verify_extension(e))
    return Outcome(rep["ok"], {"document": _doc_body(out), "verification": rep}, f"extend: total dimension {e.total.dim}", raw=out)


def cmd_extract(args) -> Outcome:
    doc = _load(args.file)
    e = doc.extension()
    z = defext.cocycle_from_extension(e)
    out = document_from(nij_algebra=e.base, nij_bimodule=e.fiber, cocycle=z)
    return Outcome(True, {"document": _doc_body(out)}, "extract-cocycle: done", raw=out)


def _pair_doc(args, doc: Document) -> Document:
    if args.pair:
        return _load(args.pair)
    return doc


def cmd_wells(args) -> Outcome:
    doc = _load(args.file)
    e = doc.extension()
    pair = _pair_doc(args, doc).pair()
    w = defext.wells_obstruction(e, pair)
    res = {
        "compatible": w.compatible,
        "obstruction_trivial": w.obstruction_trivial,
        "lambda": w.lam,
        "failing": [[law, list(idx)] for law, idx in w.failing],
    }
    ok = w.compatible and w.obstruction_trivial
    return Outcome(ok, res, f"wells: compatible={w.compatible} obstruction_trivial={w.obstruction_trivial}")


def cmd_induce(args) -> Outcome:
    doc = _load(args.file)
    e = doc.extension()
    pdoc = _pair_doc(args, doc)
    pair = pdoc.pair()
    if pdoc.has("lambda"):
        lam = LinearMap(pdoc.fields["lambda"])
    else:
        w = defext.wells_obstruction(e, pair)
        if w.lam is None:
            return Outcome(False, {"automorphism": None, "reason": "pair is not inducible"}, "induce: not inducible")
        lam = w.lam
    phi = defext.induce_automorphism(e, pair, lam)
    back = defext.restrict_automorphism(e, phi)
    res = {"automorphism": phi, "lambda": lam, "restricts_to_pair": back.beta == pair.beta and back.alpha == pair.alpha}
    return Outcome(res["restricts_to_pair"], res, "induce: automorphism constructed", raw=phi)


def cmd_homotopy(args) -> Outcome:
    doc = _load(args.file)
    direction = args.direction
    if direction == "to-cocycle":
        g, h = doc.two_term()
        if h is None:
            raise DocumentError("missing", "the document has no 'homotopy_operator' section", "homotopy_operator")
        na, nb, (chi, f) = homotopy.skeletal_correspondence("to-cocycle", (g, h))
        out = document_from(nij_algebra=na, nij_bimodule=nb)
        res = {"document": _doc_body(out), "mu3": chi, "n2": f}
        return Outcome(True, res, "homotopy: skeletal structure to 3-cocycle", raw=res)
    if direction == "from-cocycle":
        na = doc.nij_algebra()
        nb = doc.nij_bimodule(na)
        c = complexes.build_complex("cone-reduced", (na, nb), 3)
        basis = c.cycles(3)
        rng = random.Random(args.seed)
        coeffs = [rng.randint(-2, 2) for _ in basis]
        vec = [sum((a * z[i] for a, z in zip(coeffs, basis)), Fraction(0)) for i in range(c.dim(3))]
        d, m = na.dim, nb.dim
        chi = tensor(vec[: d**3 * m]).reshape(d, d, d, m)
        f = tensor(vec[d**3 * m :]).reshape(d, d, m)
        g, h = homotopy.skeletal_correspondence("from-cocycle", (na, nb, (chi, f)))
        out = document_from(two_term=g, homotopy_operator=h)
        return Outcome(True, {"document": _doc_body(out)}, "homotopy: random 3-cocycle to skeletal structure", raw=out)
    if direction == "to-crossed":
        g, h = doc.two_term()
        if h is None:
            raise DocumentError("missing", "the document has no 'homotopy_operator' section", "homotopy_operator")
        cm = homotopy.crossed_correspondence("to-crossed", (g, h))
        out = document_from(crossed_module=cm)
        return Outcome(True, {"document": _doc_body(out)}, "homotopy: strict structure to crossed module", raw=out)
    if direction == "from-crossed":
        g, h = homotopy.crossed_correspondence("from-crossed", doc.crossed_module())
        out = document_from(two_term=g, homotopy_operator=h)
        return Outcome(True, {"document": _doc_body(out)}, "homotopy: crossed module to strict structure", raw=out)
    if direction in ("nsinf", "deform"):
        if doc.has("graded"):
            ga, op = doc.graded()
        else:
            g, h = doc.two_term()
            if h is None:
                raise DocumentError("missing", "the document has no 'homotopy_operator' section", "homotopy_operator")
            ga, op = homotopy.to_graded(g), homotopy.graded_operator(h)
        if op is None:
            raise DocumentError("missing", "the document has no 'graded_operator' section", "graded_operator")
        k_max = args.max_degree or 3
        if direction == "deform":
            dg = homotopy.deformed_ainf(ga, op)
            rep = report_dict(homotopy.verify_homotopy("graded-ainf", dg, k_max))
            out = document_from(graded=dg)
            return Outcome(rep["ok"], {"document": _doc_body(out), "verification": rep}, "homotopy: deformed structure", raw=out)
        ns = homotopy.induced_nsinf(ga, op)
        rep = report_dict(homotopy.verify_homotopy("nsinf", ns, k_max))
        eta = {str(n): {str(r): t for r, t in comps.items()} for n, comps in sorted(ns.eta.items())}
        return Outcome(rep["ok"], {"eta": eta, "verification": rep}, f"homotopy: NS-infinity identities to k = {k_max}")
    raise DocumentError("usage", f"unknown direction {direction!r}")


def cmd_ns(args) -> Outcome:
    doc = _load(args.file)
    na = doc.nij_algebra()
    ns = nsalg.induced_ns(na)
    rep = nsalg.verify_ns(ns)
    res = {"prec": ns.prec, "succ": ns.succ, "vee": ns.vee, "dendriform": ns.dendriform, "verification": report_dict(rep)}
    return Outcome(rep.ok, res, f"ns: NS identities {'hold' if rep.ok else 'FAIL'}")


def _doc_body(doc: Document) -> dict[str, Any]:
    return json.loads(emit_document(doc))


COMMANDS: dict[str, Callable] = {
    "verify": cmd_verify,
    "cohomology": cmd_cohomology,
    "les": cmd_les,
    "deform": cmd_deform,
    "extend": cmd_extend,
    "extract-cocycle": cmd_extract,
    "wells": cmd_wells,
    "induce": cmd_induce,
    "homotopy": cmd_homotopy,
    "ns": cmd_ns,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nijenhuis", description="Nijenhuis algebras: verification, cohomology, extensions, homotopy data.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("--max-degree", type=int, default=None)
        s.add_argument("--format", choices=("report", "raw"), default="report")
        s.add_argument("--seed", type=int, default=0)
        if name == "cohomology":
            s.add_argument("--complex", choices=complexes.KINDS, default="cone-reduced")
        if name in ("wells", "induce"):
            s.add_argument("--pair", default=None)
        if name == "deform":
            s.add_argument("--power", type=int, default=None)
        if name == "homotopy":
            s.add_argument(
                "--direction",
                choices=("to-cocycle", "from-cocycle", "to-crossed", "from-crossed", "nsinf", "deform"),
                required=True,
            )
    return p


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except _UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    if args.max_degree is not None and not 0 <= args.max_degree <= 6:
        stderr.write("usage error: --max-degree must lie in 0..6\n")
        return EXIT_USAGE
    try:
        out = COMMANDS[args.command](args)
    except DocumentError as exc:
        stdout.write(dumps({"command": args.command, "ok": False, "report_version": REPORT_VERSION, "error": exc.as_dict()}))
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (StructureError, VerificationError, ValueError) as exc:
        err = {"code": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, VerificationError) and exc.report is not None:
            err["report"] = report_dict(exc.report)
            stdout.write(dumps({"command": args.command, "ok": False, "report_version": REPORT_VERSION, "error": err}))
            stderr.write(f"{args.command}: {exc}\n")
            return EXIT_FAILED
        stdout.write(dumps({"command": args.command, "ok": False, "report_version": REPORT_VERSION, "error": err}))
        stderr.write(f"{args.command}: {exc}\n")
        return EXIT_USAGE
    if args.format == "raw":
        raw = out.raw if out.raw is not None else out.result
        stdout.write(emit_document(raw) if isinstance(raw, Document) else dumps(raw))
    else:
        stdout.write(dumps(_envelope(args.command, out)))
    stderr.write(out.summary + "\n")
    return EXIT_OK if out.ok else EXIT_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)
