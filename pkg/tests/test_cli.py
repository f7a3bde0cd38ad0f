import json
import subprocess
import sys
from pathlib import Path

import pytest

from ratcurve import cli
from ratcurve.errors import VerificationError
from ratcurve.report import dumps

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSingle:
    def test_cusp_json(self, capsys):
        code, out, _ = run(["--curve", "t^2*v", "t^3", "v^3", "--format", "json"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["mu"] == 1
        assert data["smith"] == ["1", "s^2"]
        (node,) = data["singularities"]
        assert (node["order"], node["formula"], node["point"]) == (2, "t^2", [0, 0, 1])

    def test_round_trip_is_byte_identical(self, capsys):
        _, out, _ = run(["--input", str(CORPUS / "tacnode.json"), "--command", "tree", "--format", "json"], capsys)
        assert dumps(json.loads(out)) == out

    def test_text_matches_json(self, capsys):
        args = ["--input", str(CORPUS / "tacnode.json"), "--command", "tree"]
        _, js, _ = run(args + ["--format", "json"], capsys)
        _, text, _ = run(args + ["--format", "text"], capsys)
        data = json.loads(js)
        for f in data["smith"]:
            assert f in text
        stack = list(data["singularities"])
        while stack:
            nd = stack.pop()
            assert f"order {nd['order']}, formula {nd['formula']}" in text
            stack.extend(nd["children"])
        for v in data["verifications"]:
            assert v["name"] in text

    def test_singularities_strip_children(self, capsys):
        _, out, _ = run(["--input", str(CORPUS / "tacnode.json"), "--format", "json"], capsys)
        assert all(n["children"] == [] for n in json.loads(out)["singularities"])

    @pytest.mark.parametrize("command", ["mubasis", "implicit", "smith", "verify", "compare-matrices"])
    def test_commands(self, command, capsys):
        code, out, _ = run(["--input", str(CORPUS / "node.json"), "--command", command, "--format", "json"], capsys)
        assert code == 0
        json.loads(out)

    def test_implicit_cusp(self, capsys):
        _, out, _ = run(["--curve", "t^2*v", "t^3", "v^3", "--command", "implicit", "--format", "json"], capsys)
        data = json.loads(out)
        assert data["degree"] == 3 and data["proper"] is True

    def test_stdin(self):
        proc = subprocess.run(
            [sys.executable, "-m", "ratcurve.cli", "--input", "-", "--format", "json"],
            input=(CORPUS / "cusp.json").read_text(),
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["singularities"][0]["formula"] == "t^2"


class TestExitCodes:
    def test_parse_error(self, capsys):
        code, _, err = run(["--curve", "t^2*", "t^3", "v^3"], capsys)
        assert code == 1 and "error" in err

    def test_json_error_position(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"a": "t^2*v",\n "b": }')
        code, _, err = run(["--input", str(bad)], capsys)
        assert code == 1
        assert "line 2" in err and "column" in err

    def test_dependent_components(self, capsys):
        code, _, err = run(["--curve", "t", "2*t", "v"], capsys)
        assert code == 1

    def test_improper(self, capsys):
        code, _, err = run(["--curve", "t^2*v^2", "t^4", "v^4"], capsys)
        assert code == 1 and "improper" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run(["--input", str(tmp_path / "nope.json")], capsys)
        assert code == 1

    def test_incomplete(self, capsys):
        code, _, err = run(["--curve", "t^2*v^5", "t^7", "v^7", "--max-depth", "1"], capsys)
        assert code == 3 and "depth" in err

    def test_verification_failure(self, capsys, monkeypatch):
        def boom(*a, **k):
            raise VerificationError("order routes disagree")

        monkeypatch.setattr(cli, "analyze", boom)
        code, _, err = run(["--curve", "t^2*v", "t^3", "v^3"], capsys)
        assert code == 2 and "disagree" in err


class TestBatch:
    def test_corpus_table(self, capsys):
        code, out, _ = run(["--corpus", str(CORPUS)], capsys)
        lines = out.strip().split("\n")
        assert code == 0
        assert len(lines) == 5
        assert [ln.split()[0] for ln in lines[1:]] == ["conic.json", "cusp.json", "node.json", "tacnode.json"]
        assert all(ln.rstrip().endswith("ok") for ln in lines[1:])

    def test_corpus_json(self, capsys):
        _, out, _ = run(["--corpus", str(CORPUS), "--format", "json"], capsys)
        rows = json.loads(out)["rows"]
        tac = next(r for r in rows if r["file"] == "tacnode.json")
        assert tac["singularities"] == {"2": 3}

    def test_empty_dir(self, tmp_path, capsys):
        code, out, _ = run(["--corpus", str(tmp_path)], capsys)
        assert code == 0 and len(out.strip().split("\n")) == 1

    def test_bad_row_isolated(self, tmp_path, capsys):
        (tmp_path / "a.json").write_text((CORPUS / "cusp.json").read_text())
        (tmp_path / "b.json").write_text("{not json")
        code, out, _ = run(["--corpus", str(tmp_path), "--format", "json"], capsys)
        rows = json.loads(out)["rows"]
        assert [r["status"] for r in rows] == ["ok", "failed"]
        assert code == 1

    def test_not_a_directory(self, capsys):
        code, _, _ = run(["--corpus", str(CORPUS / "cusp.json")], capsys)
        assert code == 1
