import io
import json
import subprocess
import sys

import pytest

from fdgames import BUNDLED_GAMES, game_text, load_game, parse_fdg
from fdgames.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    for name in BUNDLED_GAMES:
        (tmp_path / f"{name}.fdg").write_text(game_text(name))
    for name in ("pd", "bos", "mp"):
        (tmp_path / f"{name}.nfg").write_text(game_text(name, ".nfg"))
    return tmp_path


class TestAnalyze:
    def test_text(self, files):
        code, out, err = run("analyze", str(files / "wonderland.fdg"))
        assert code == 0 and err == ""
        assert "abstract Nash equilibria: D" in out
        assert "FD equilibria (3):" in out

    def test_json(self, files):
        code, out, _ = run("analyze", str(files / "hidden_coins.fdg"), "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["format_version"] == 1
        assert [set(c) for c in doc["fd_equilibria"]] == [{"N,N"}, {"H,H", "H,T", "T,H", "T,T"}]

    def test_dot(self, files):
        code, out, _ = run("analyze", str(files / "pd.fdg"), "--format", "dot")
        assert code == 0 and out.startswith('digraph "fmdc"')
        assert '"F,F" [peripheries=2];' in out

    def test_missing_file(self, tmp_path):
        code, out, err = run("analyze", str(tmp_path / "missing.fdg"))
        assert code == 1 and out == ""
        assert "missing.fdg" in err and "not found" in err

    def test_parse_error_is_domain_error(self, tmp_path):
        bad = tmp_path / "bad.fdg"
        bad.write_text("situations A B\nfeasible A -> B\n")
        code, _, err = run("analyze", str(bad))
        assert code == 1 and "line 2" in err


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["analyze"],
            ["analyze", "x.fdg", "--format", "yaml"],
            ["blink", "--tactic", "clairvoyance"],
            ["evolve", "x.fdg"],
            ["evolve", "x.fdg", "--start", "A", "--trials", "many"],
        ],
    )
    def test_exit_two(self, argv, capsys):
        assert main(argv) == 2
        assert "usage:" in capsys.readouterr().err


class TestFromNfg:
    def test_analysis(self, files):
        code, out, _ = run("from-nfg", str(files / "bos.nfg"), "--format", "json")
        assert code == 0 and sorted(json.loads(out)["abstract_nash"]) == ["B,B", "S,S"]

    def test_emit_fdg(self, files):
        code, out, _ = run("from-nfg", str(files / "pd.nfg"), "--emit-fdg")
        assert code == 0 and out.startswith("situations Q,Q Q,F F,Q F,F\n")
        assert parse_fdg(out) == load_game("pd")

    def test_missing_profile(self, tmp_path):
        path = tmp_path / "short.nfg"
        path.write_text("players a b\nstrategies a x y\nstrategies b z\npayoff x,z = 1 1\n")
        code, _, err = run("from-nfg", str(path))
        assert code == 1 and "y,z" in err


class TestChoiceAudit:
    def test_pd(self, files):
        code, out, _ = run("choice-audit", str(files / "pd.fdg"), "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["kind"] == "choice_audit"
        assert doc["kappa"]["passed"] and doc["alpha"]["passed"] and doc["iota"]["passed"]
        assert doc["domain_total"] is True
        assert doc["prop1"]["status"] == "holds"

    def test_text(self, files):
        code, out, _ = run("choice-audit", str(files / "mp.fdg"))
        assert code == 0 and "domain total: no" in out

    def test_capacity(self, files):
        code, _, err = run("choice-audit", str(files / "wonderland.fdg"), "--max-nodes", "4")
        assert code == 1 and "8" in err


class TestBlink:
    def test_defeatism(self):
        code, out, _ = run("blink", "--tactic", "defeatism", "--format", "text")
        assert code == 0
        assert "abstract Nash equilibria: R\n" in out
        assert "evolutionary outcome: dominance" in out

    @pytest.mark.parametrize("tactic", ["foresight", "hindsight", "omnisight", "defeatism"])
    def test_json(self, tactic):
        code, out, _ = run("blink", "--tactic", tactic, "--format", "json")
        assert code == 0 and json.loads(out)["agents"] == ["Left", "Right"]


class TestEvolve:
    def test_byte_identical(self, files):
        argv = ["evolve", str(files / "hidden_coins.fdg"), "--start", "N,H", "--trials", "1000", "--seed", "7"]
        first, second = run(*argv), run(*argv)
        assert first == second and first[0] == 0

    def test_compact_start_name(self, files):
        a = run("evolve", str(files / "hidden_coins.fdg"), "--start", "NH", "--trials", "50", "--seed", "7")
        b = run("evolve", str(files / "hidden_coins.fdg"), "--start", "N,H", "--trials", "50", "--seed", "7")
        assert a == b and a[0] == 0

    def test_json(self, files):
        code, out, _ = run(
            "evolve", str(files / "hidden_coins.fdg"), "--start", "N,H", "--trials", "300", "--seed", "1", "--format", "json"
        )
        doc = json.loads(out)
        assert code == 0 and doc["kind"] == "evolution" and doc["max_steps"] == 81
        assert sum(o["count"] for o in doc["outcomes"]) + doc["non_absorbed"] == 300
        assert {tuple(o["equilibrium"]) for o in doc["outcomes"]} == {("N,N",), ("H,H", "H,T", "T,H", "T,T")}

    def test_env_seed(self, files, monkeypatch):
        argv = ["evolve", str(files / "hidden_coins.fdg"), "--start", "N,H", "--trials", "200", "--format", "json"]
        monkeypatch.setenv("FDGAME_SEED", "13")
        from_env = run(*argv)
        assert json.loads(from_env[1])["seed"] == 13
        assert from_env == run(*argv, "--seed", "13")
        override = run(*argv, "--seed", "14")
        assert json.loads(override[1])["seed"] == 14

    def test_bad_env_seed(self, files, monkeypatch):
        monkeypatch.setenv("FDGAME_SEED", "seven")
        code, _, err = run("evolve", str(files / "pd.fdg"), "--start", "Q,Q", "--trials", "5")
        assert code == 1 and "FDGAME_SEED" in err

    def test_default_seed_is_zero(self, files, monkeypatch):
        monkeypatch.delenv("FDGAME_SEED", raising=False)
        code, out, _ = run("evolve", str(files / "pd.fdg"), "--start", "Q,Q", "--trials", "5", "--format", "json")
        assert code == 0 and json.loads(out)["seed"] == 0

    def test_dump(self, files):
        code, out, _ = run("evolve", str(files / "wonderland.fdg"), "--start", "A", "--trials", "4", "--dump")
        walks = out.splitlines()[-4:]
        assert code == 0 and all(w.split()[0] == "A" for w in walks)

    def test_unknown_start(self, files):
        code, _, err = run("evolve", str(files / "pd.fdg"), "--start", "Z,Z")
        assert code == 1 and "Z,Z" in err

    def test_bad_trials(self, files):
        code, _, _ = run("evolve", str(files / "pd.fdg"), "--start", "Q,Q", "--trials", "0")
        assert code == 1


def test_module_entry_point_subprocess(files):
    argv = [sys.executable, "-m", "fdgames", "evolve", str(files / "hidden_coins.fdg"),
            "--start", "N,H", "--trials", "1000", "--seed", "7"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
