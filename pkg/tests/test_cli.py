from __future__ import annotations

import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from golden_cases import CASES, GOLDEN, INPUTS, run_case
from nijenhuis import fixtures
from nijenhuis.cli import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    DocumentError,
    document_from,
    dumps,
    emit_document,
    parse_document,
    run_command,
)
from nijenhuis.complexes import build_complex, cohomology


@pytest.mark.parametrize("case", CASES, ids=[c[0] for c in CASES])
def test_golden_report(case):
    name, argv, want = case
    code, out, _ = run_case(argv)
    assert code == want
    assert out == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


@pytest.mark.parametrize("path", sorted(p.name for p in INPUTS.glob("*.json") if not p.name.startswith(("bad-", "trunc"))))
def test_corpus_roundtrip(path):
    text = (INPUTS / path).read_text(encoding="utf-8")
    doc = parse_document(text)
    again = emit_document(doc)
    assert parse_document(again) == doc
    assert emit_document(parse_document(again)) == again


def test_fraction_normalised():
    text = json.dumps(
        {"format": "nijenhuis-document", "version": 1, "algebra": {"dim": 1, "mu": [[["2/4"]]]}}
    )
    doc = parse_document(text)
    assert doc.fields["algebra"]["mu"][0][0][0] == Fraction(1, 2)
    assert '[["1/2"]]' in emit_document(doc).replace("\n", "").replace(" ", "")


def test_minimal_document_is_canonical():
    text = emit_document(document_from(nij_algebra=fixtures.k2_nij()))
    assert emit_document(parse_document(text)) == text
    assert text.index('"algebra"') < text.index('"format"') < text.index('"operator"') < text.index('"version"')


@pytest.mark.parametrize(
    "body, code, path",
    [
        ({"format": "other", "version": 1}, "schema", "format"),
        ({"format": "nijenhuis-document", "version": 2}, "version", "version"),
        ({"format": "nijenhuis-document", "version": 1, "algebra": {"dim": 1, "mu": [[["x"]]]}}, "scalar", "algebra.mu[0][0][0]"),
        ({"format": "nijenhuis-document", "version": 1, "algebra": {"dim": 2, "mu": [[[1, 0]]]}}, "dimension", "algebra.mu"),
        ({"format": "nijenhuis-document", "version": 1, "unknown": 1}, "schema", "unknown"),
        ({"format": "nijenhuis-document", "version": 1, "operator": [[1]]}, "schema", "operator"),
    ],
)
def test_distinct_diagnostics(body, code, path):
    with pytest.raises(DocumentError) as info:
        parse_document(json.dumps(body, indent=2))
    assert info.value.code == code and info.value.path == path
    assert info.value.line is not None and info.value.column is not None


def test_diagnostic_position_points_at_the_offending_field():
    text = '{\n  "format": "nijenhuis-document",\n  "version": 1,\n  "algebra": {"dim": 1, "mu": [[[1, 2]]]}\n}\n'
    with pytest.raises(DocumentError) as info:
        parse_document(text)
    err = info.value
    assert err.path == "algebra.mu[0][0]"
    line = text.splitlines()[err.line - 1]
    assert line[err.column - 1 :].startswith("[1, 2]")


def test_exit_codes(tmp_path):
    good = tmp_path / "k2.json"
    good.write_text(emit_document(document_from(nij_algebra=fixtures.k2_nij())))
    out, err = io.StringIO(), io.StringIO()
    assert run_command(["verify", str(good)], out, err) == EXIT_OK
    assert err.getvalue().startswith("verify:")
    assert run_command(["verify", str(tmp_path / "missing.json")], io.StringIO(), io.StringIO()) == EXIT_USAGE
    assert run_command(["frobnicate"], io.StringIO(), io.StringIO()) == EXIT_USAGE
    assert run_command(["verify", str(good), "--max-degree", "9"], io.StringIO(), io.StringIO()) == EXIT_USAGE
    bad = tmp_path / "swap.json"
    bad.write_text((INPUTS / "swap.json").read_text())
    assert run_command(["verify", str(bad)], io.StringIO(), io.StringIO()) == EXIT_FAILED


def test_reports_are_deterministic():
    first = run_case(["ns", "t3.json"])
    assert run_case(["ns", "t3.json"]) == first


def test_cohomology_report_matches_the_library():
    _, out, _ = run_case(["cohomology", "t3.json", "--complex", "cone-reduced", "--max-degree", "3"])
    na = fixtures.t3_nij()
    from nijenhuis.core import NijBimodule

    want = cohomology(build_complex("cone-reduced", (na, NijBimodule.adjoint(na)), 3)).bettis
    assert json.loads(out)["result"]["betti"] == list(want)


def test_raw_output_is_a_document():
    _, out, _ = run_case(["extend", "t3.json", "--seed", "1", "--format", "raw"])
    doc = parse_document(out)
    assert doc.has("extension") and doc.has("cocycle")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nijenhuis", "verify", str(INPUTS / "k2.json")], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "verify-k2.out").read_text(encoding="utf-8")


def test_dumps_layout():
    assert dumps({"b": [1, Fraction(1, 2)], "a": {"c": [[1], [2]]}}) == (
        '{\n  "a": {\n    "c": [\n      [1],\n      [2]\n    ]\n  },\n  "b": [1, "1/2"]\n}\n'
    )
