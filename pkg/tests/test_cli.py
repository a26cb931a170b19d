import numpy as np
import pytest

from pisometry import cli
from pisometry.io import dump_json, matrix_to_obj


@pytest.fixture
def files(tmp_path):
    def write(name, matrix):
        path = tmp_path / name
        dump_json(matrix_to_obj(np.asarray(matrix, dtype=complex)), path)
        return str(path)

    return {
        "contraction": write("c.json", np.diag([1.0, 0.5])),
        "projection": write("v.json", np.diag([1.0, 0.0])),
        "flat": write("w.json", np.full((2, 2), 0.5)),
        "expansion": write("big.json", 2.0 * np.eye(2)),
        "rect": write("rect.json", np.zeros((2, 3))),
        "dir": tmp_path,
    }


class TestExitCodes:
    def test_classify_ok(self, files, capsys):
        assert cli.main(["classify", files["projection"]]) == cli.EXIT_OK
        assert "partial isometry" in capsys.readouterr().out

    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert cli.main(["classify", str(bad)]) == cli.EXIT_PARSE

    def test_shape_error(self, files):
        code = cli.main(["compose", files["rect"], files["projection"], "--mode", "dot"])
        assert code == cli.EXIT_SHAPE

    def test_precondition_error(self, files):
        code = cli.main(["compose", files["expansion"], files["flat"], "--mode", "dot"])
        assert code == cli.EXIT_PRECONDITION

    def test_usage_error(self):
        assert cli.main(["bogus"]) == cli.EXIT_USAGE
        assert cli.main(["verify", "--suite", "nonsense"]) == cli.EXIT_USAGE

    def test_property_failure(self, monkeypatch, files):
        class FakeReport:
            passed = False
            suites = ()

            def to_obj(self):
                return {}

        monkeypatch.setattr(cli, "run", lambda cfg: FakeReport())
        assert cli.main(["verify", "--suite", "pilem", "--trials", "1"]) == cli.EXIT_PROPERTY


class TestCommands:
    def test_contained_writes_partial_isometry(self, files, tmp_path, capsys):
        out = str(tmp_path / "out.json")
        assert cli.main(["contained", files["contraction"], "--out", out]) == cli.EXIT_OK
        assert "dimension: 1" in capsys.readouterr().out
        from pisometry.io import sniff_and_parse
        from pisometry.operators import classify

        kind, v = sniff_and_parse(out)
        assert kind == "matrix" and classify(v).is_partial_isometry

    def test_compose_product_reports_criterion(self, files, capsys):
        code = cli.main(["compose", files["projection"], files["flat"], "--mode", "product"])
        assert code == cli.EXIT_OK
        out = capsys.readouterr().out
        assert "partial isometry: False" in out
        assert "agrees: True" in out

    def test_compose_dot(self, files, tmp_path):
        out = str(tmp_path / "dot.json")
        code = cli.main(
            ["compose", files["projection"], files["flat"], "--mode", "dot", "--out", out]
        )
        assert code == cli.EXIT_OK
        from pisometry.io import sniff_and_parse

        _, v = sniff_and_parse(out)
        assert np.linalg.norm(v) < 1e-12

    def test_verify_ok(self, tmp_path, capsys):
        report = str(tmp_path / "rep.json")
        code = cli.main(
            ["verify", "--suite", "cathm", "--trials", "5", "--seed", "3", "--report", report]
        )
        assert code == cli.EXIT_OK
        assert "cathm" in capsys.readouterr().out

    def test_report_is_deterministic(self, tmp_path):
        paths = [str(tmp_path / f"rep{i}.json") for i in range(2)]
        for path in paths:
            assert (
                cli.main(
                    ["verify", "--suite", "pilem", "--trials", "6", "--seed", "11",
                     "--report", path]
                )
                == cli.EXIT_OK
            )
        assert open(paths[0], "rb").read() == open(paths[1], "rb").read()

    def test_tol_env_override(self, files, monkeypatch):
        monkeypatch.setenv("PISO_TOL", "not-a-number")
        assert cli.main(["classify", files["projection"]]) == cli.EXIT_PARSE
        monkeypatch.setenv("PISO_TOL", "1e-6")
        assert cli.main(["classify", files["projection"]]) == cli.EXIT_OK
