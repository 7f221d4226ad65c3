"""
Instance documents and the command-line surface
"""
import glob
import io
import json
import os

import pytest

from config import settings

from app.documents import (
    load_fixture, load_instance, parse_instance, parse_neighborhoods, parse_subset,
    read_source,
)
from app.documents.codec import canonical_instance, emit_instance, fixture_path
from app.main import EXIT_ERROR, EXIT_FALSE, EXIT_TRUE, main
from app.models.errors import ParseError, SubsetOutOfRange, ValidationError
from app.services.topoalgebra import topology_from_neighborhoods


def fixture_text(name: str) -> bytes:
    return read_source(fixture_path(name))


def instance_json(table, topology, **extra) -> str:
    doc = {"name": "t", "n": len(table), "table": table, "topology": topology}
    doc.update(extra)
    return json.dumps(doc)


def last_error(capsys) -> dict:
    err = capsys.readouterr().err.strip().splitlines()
    return json.loads(err[-1])


def pipe(monkeypatch, text: str):
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(text.encode())))


BUNDLED = sorted(glob.glob(os.path.join(settings.FIXTURES_DIR, "*.json")))


class TestCodec:
    def test_fixture_loads(self):
        doc, TS = load_instance(fixture_text("ex2_1"))
        assert doc.n == 10 and TS.n == 10
        assert doc.subsets["N"] == [0, 1, 2, 4, 5, 6, 8]

    def test_malformed_json(self):
        with pytest.raises(ParseError) as e:
            parse_instance(b'{"name": "x",\n  "n": }')
        assert e.value.detail["line"] == 2

    def test_missing_field(self):
        with pytest.raises(ParseError) as e:
            parse_instance(json.dumps({"name": "x", "n": 1, "table": [[0]]}))
        assert e.value.detail["location"] == "topology"

    def test_topology_needs_exactly_one_form(self):
        with pytest.raises(ParseError):
            parse_instance(instance_json([[0]], {"opens": [[], [0]], "subbase": [[0]]}))

    def test_core_errors_are_wrapped(self):
        with pytest.raises(ValidationError) as e:
            parse_instance(instance_json([[1, 0], [0, 0]], {"subbase": []}))
        assert e.value.detail["cause"] == "NotAssociative"

        with pytest.raises(ValidationError) as e:
            parse_instance(instance_json([[0, 0], [0, 0]], {"opens": [[], [0]]}))
        assert e.value.detail["cause"] == "BadParams"

    def test_named_subset_out_of_range(self):
        with pytest.raises(ValidationError) as e:
            parse_instance(instance_json([[0]], {"subbase": []}, subsets={"N": [0, 3]}))
        assert e.value.detail["cause"] == "SubsetOutOfRange"

    def test_canonical_emission_is_stable(self):
        for name in ("ex2_1", "ex2_2", "ex2_3"):
            first = emit_instance(canonical_instance(parse_instance(fixture_text(name))))
            second = emit_instance(canonical_instance(parse_instance(first)))
            assert first == second
            assert load_instance(first)[1].T == load_fixture(name).T

    def test_parse_subset(self):
        assert parse_subset("3, 1", 4) == 0b1010
        assert parse_subset("", 4) == 0
        with pytest.raises(SubsetOutOfRange):
            parse_subset("4", 4)
        with pytest.raises(ParseError):
            parse_subset("a,b", 4)

    def test_neighborhood_document(self, ex2_1):
        doc, S, NS = parse_neighborhoods(fixture_text("ex2_1_neighborhoods"))
        assert sorted(NS) == [0, 1, 5, 6]
        assert topology_from_neighborhoods(S, NS) == ex2_1.T

    def test_neighborhood_keys_are_indices(self):
        raw = json.dumps({"name": "x", "n": 1, "table": [[0]], "families": {"e": [[0]]}})
        with pytest.raises(ParseError):
            parse_neighborhoods(raw)


class TestCommands:
    def test_check(self, capsys):
        assert main(["check", "botg", fixture_path("ex2_1")]) == EXIT_TRUE
        assert capsys.readouterr().out.strip() == "true"
        assert main(["check", "botg", fixture_path("ex2_3")]) == EXIT_FALSE
        assert capsys.readouterr().out.strip() == "false"
        assert main(["check", "topological-cryptogroup", fixture_path("ex2_3")]) == EXIT_TRUE

    def test_analyze_text(self, capsys):
        assert main(["analyze", fixture_path("ex2_1"), "--text", "--no-theorems"]) == EXIT_TRUE
        out = capsys.readouterr().out
        assert "band of topological groups: yes" in out
        assert "H-classes: [[0], [1, 3, 7, 9], [2, 4, 6, 8], [5]]" in out

    def test_analyze_json(self, capsys):
        assert main(["analyze", fixture_path("ex2_3"), "--no-theorems"]) == EXIT_TRUE
        report = json.loads(capsys.readouterr().out)
        assert report["classify"]["is_cryptogroup"]
        assert report["topo"]["is_topological_cryptogroup"]
        assert not report["topo"]["is_botg_criterion"]
        assert report["theorems"] == []

    def test_subcryptogroups(self, capsys):
        assert main(["subcryptogroups", fixture_path("ex2_3"), "--normal"]) == EXIT_TRUE
        entries = json.loads(capsys.readouterr().out)
        assert [e["record"]["subset"] for e in entries] == [[0, 1, 3, 4], [0, 1, 2, 3, 4], [0, 1, 2, 3, 4, 5]]

    def test_quotient_piped_into_check(self, capsys, monkeypatch):
        assert main(["quotient", fixture_path("ex2_1"), "--by-n", "N"]) == EXIT_TRUE
        emitted = capsys.readouterr().out
        assert json.loads(emitted)["n"] == 7

        pipe(monkeypatch, emitted)
        assert main(["check", "hausdorff", "-"]) == EXIT_TRUE

    def test_quotient_by_h(self, capsys):
        assert main(["quotient", fixture_path("ex2_3"), "--by-h"]) == EXIT_TRUE
        doc = json.loads(capsys.readouterr().out)
        assert doc["n"] == 4
        assert doc["topology"] == {"opens": [[], [1, 2], [0, 3], [0, 1, 2, 3]]}

    def test_quotient_by_non_normal(self, capsys):
        assert main(["quotient", fixture_path("ex2_1"), "--by-n", "0,1,5"]) == EXIT_ERROR
        assert last_error(capsys)["error"] == "PreconditionViolated"

    def test_star(self, capsys):
        assert main(["star", fixture_path("ex2_1"), "--kind", "xU", "--x", "3", "--set", "1"]) == EXIT_TRUE
        assert capsys.readouterr().out.strip() == "3"
        assert main(["star", fixture_path("ex2_1"), "--kind", "xUy", "--x", "3", "--y", "2",
                     "--set", "0,1,2,3,4,5,6,7,8,9"]) == EXIT_TRUE
        assert capsys.readouterr().out.strip() == ""

    def test_build_topology(self, capsys, ex2_1):
        assert main(["build-topology", fixture_path("ex2_1_neighborhoods")]) == EXIT_TRUE
        _, TS = load_instance(capsys.readouterr().out)
        assert TS.T == ex2_1.T

    def test_gen(self, capsys):
        assert main(["gen", "zn_mul", "n=6", "--topology", "h-block"]) == EXIT_TRUE
        _, TS = load_instance(capsys.readouterr().out)
        assert TS.name == "zn_mul(n=6)"
        assert TS.is_botg

        assert main(["gen", "direct_product", "s1=zn_add:n=2", "s2=left_zero:n=2",
                     "--topology", "subbase=0,1;2,3"]) == EXIT_TRUE
        _, TS = load_instance(capsys.readouterr().out)
        assert TS.n == 4

    def test_gen_errors(self, capsys):
        assert main(["gen", "zn_mul", "n=x"]) == EXIT_ERROR
        assert last_error(capsys)["error"] == "BadParams"
        assert main(["gen", "zn_mul", "n=4", "--topology", "fuzzy"]) == EXIT_ERROR
        assert last_error(capsys)["error"] == "BadParams"

    def test_verify_theorems(self, capsys):
        assert main(["verify-theorems", fixture_path("ex2_1"), "--sample-cap", "32"]) == EXIT_TRUE
        ledger = json.loads(capsys.readouterr().out)
        assert ledger["passed"]
        names = {r["theorem"] for r in ledger["instances"][0]["results"]}
        assert {"botg-routes-agree", "dense-star-cover", "hausdorff-triple"} <= names

    def test_above_enumeration_cap(self, capsys, monkeypatch):
        assert main(["gen", "zn_add", "n=21"]) == EXIT_TRUE
        emitted = capsys.readouterr().out

        pipe(monkeypatch, emitted)
        assert main(["analyze", "-"]) == EXIT_TRUE
        report = json.loads(capsys.readouterr().out)
        assert report["topo"]["is_botg_criterion"]
        assert report["subcryptogroups"] == []
        assert "subcryptogroups" in report["annotations"]
        assert report["separation"]["annotations"]["clopens"].startswith("components only")

        pipe(monkeypatch, emitted)
        assert main(["verify-theorems", "-", "--sample-cap", "16"]) == EXIT_TRUE
        ledger = json.loads(capsys.readouterr().out)
        assert ledger["passed"]
        skipped = {r["theorem"] for r in ledger["instances"][0]["results"] if not r["applicable"]}
        assert {
            "closure-of-subcryptogroup", "closure-of-full-normal", "open-full-subcryptogroup-closed",
            "discrete-full-subcryptogroup-closed", "rho-n-congruence", "hausdorff-triple",
        } <= skipped

    def test_neighborhood_document_as_instance(self, capsys):
        assert main(["check", "botg", fixture_path("ex2_1_neighborhoods")]) == EXIT_TRUE
        assert capsys.readouterr().out.strip() == "true"

    def test_associativity_witness(self, capsys, tmp_path):
        path = tmp_path / "magma.json"
        path.write_text(instance_json([[1, 0], [0, 0]], {"subbase": []}))
        assert main(["analyze", str(path)]) == EXIT_ERROR
        error = last_error(capsys)
        assert error["detail"]["cause"] == "NotAssociative"
        assert (error["detail"]["a"], error["detail"]["b"], error["detail"]["c"]) == (0, 0, 1)

    def test_missing_file(self, capsys):
        assert main(["analyze", "no-such-file.json"]) == EXIT_ERROR
        assert last_error(capsys)["error"] == "FileNotFoundError"

    def test_malformed_file(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"name": ')
        assert main(["check", "botg", str(path)]) == EXIT_ERROR
        assert last_error(capsys)["error"] == "ParseError"


def test_bundled_fixtures_found():
    names = {os.path.basename(path) for path in BUNDLED}
    assert {"ex2_1.json", "ex2_2.json", "ex2_3.json", "ex2_1_neighborhoods.json"} <= names


@pytest.mark.parametrize("path", BUNDLED, ids=os.path.basename)
def test_verify_theorems_on_bundled_fixture(path, capsys):
    assert main(["verify-theorems", path, "--sample-cap", "32"]) == EXIT_TRUE
    ledger = json.loads(capsys.readouterr().out)
    assert ledger["passed"]
    assert all(r["passed"] for r in ledger["instances"][0]["results"] if r["applicable"])
