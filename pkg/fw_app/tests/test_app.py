import json

import numpy as np

import app


class TestMain:

    def test_spectrum_to_stdout(self, capsys):
        assert app.main(["spectrum", "--nmax", "2"]) == 0
        assert capsys.readouterr().out.startswith("n,s_z,energy,group_id,multiplicity\n")

    def test_stationary_to_file(self, tmp_path):
        path = tmp_path / "stationary.json"
        assert app.main(["stationary", "--g", "1.714", "--B", "0.01", "-o", str(path)]) == 0
        assert float(json.loads(path.read_text())["params"]["g"]) == 1.714

    def test_verify_algebra(self, capsys):
        assert app.main(["verify", "--suite", "algebra"]) == 0
        assert json.loads(capsys.readouterr().out)["passed"] is True

    def test_precondition_error_exits_with_2(self, capsys):
        assert app.main(["spectrum", "--B", "0"]) == 2
        assert capsys.readouterr().out == ""

    def test_supercritical_field(self):
        assert app.main(["spectrum", "--B", "2"]) == 2

    def test_unknown_command(self):
        assert app.main(["plot"]) == 2

    def test_bad_flag(self):
        assert app.main(["verify", "--suite", "everything"]) == 2

    def test_missing_config_file(self):
        assert app.main(["evolve", "--config", "/nonexistent/run.json"]) == 2

    def test_usage(self):
        assert app.main([]) == 2
        assert app.main(["--help"]) == 0

    def test_unexpected_error_exits_with_2(self, monkeypatch, capsys):
        def broken(opt, config):
            raise RuntimeError("boom")

        monkeypatch.setattr(app, "execute", broken)
        assert app.main(["spectrum", "--nmax", "2"]) == 2
        assert capsys.readouterr().out == ""

    def test_linalg_error_is_not_a_failed_verification(self, monkeypatch):
        def diverged(opt, config):
            raise np.linalg.LinAlgError("eigh did not converge")

        monkeypatch.setattr(app, "execute", diverged)
        assert app.main(["verify", "--suite", "algebra"]) == 2
