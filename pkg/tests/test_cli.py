import csv
import json
from fractions import Fraction

import pytest

from nonpisot.acceptance import reference_table
from nonpisot.algebra import QLambda, ZLambda
from nonpisot.cli import main
from nonpisot.config import ConfigError, RunConfig, merge, read_config_file


def _rows(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_gen_rows_and_manifest(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["gen", "--level", "3", "--out", str(out)]) == 0
    rows = _rows(out)
    assert len(rows) == 434
    man = json.loads((tmp_path / "g.csv.manifest.json").read_text())
    assert man["config"]["params"]["level"] == 3
    assert set(man["versions"]) >= {"numpy", "scipy", "mpmath", "python"}
    assert man["ok"] is True and len(man["sha256"]) == 64


def test_corr_base_matches_reference(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["corr", "--base", "--out", str(out)]) == 0
    ref = reference_table()
    got = {}
    for r in _rows(out):
        z = ZLambda(int(r["z_a"]), int(r["z_b"]))
        got[z] = tuple(QLambda(Fraction(r[f"nu{c}_p"]), Fraction(r[f"nu{c}_q"])) for c in ("00", "01", "10", "11"))
    assert got == ref


@pytest.mark.parametrize("argv", [
    ["gen", "--level", "-1"],
    ["lyapunov", "--direction", "sideways"],
    ["lyapunov", "--steps", "1"],
    ["verify-all", "--only", "99"],
])
def test_bad_input_exit_2(tmp_path, argv):
    assert main(argv + ["--out", str(tmp_path / "x")]) == 2


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# level from file\nlevel = 2\nweights = balanced\n")
    out = tmp_path / "g.csv"
    assert main(["gen", "--config", str(cfg), "--out", str(out)]) == 0
    assert len(_rows(out)) == 80
    assert main(["gen", "--config", str(cfg), "--level", "3", "--out", str(out)]) == 0
    rows = _rows(out)
    assert len(rows) == 434
    assert {float(r["weight_re"]) for r in rows} != {1.0}


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("level 3\n")
    with pytest.raises(ConfigError):
        read_config_file(str(bad))
    with pytest.raises(ConfigError):
        merge({}, {"nope": "1"}, {"level": 3}, {"level": int})
    with pytest.raises(ConfigError):
        merge({}, {"level": "x"}, {"level": 3}, {"level": int})
    with pytest.raises(ConfigError):
        RunConfig("gen", threads=0)
    with pytest.raises(ConfigError):
        RunConfig("gen", seed=-1)


def test_byte_identical_reruns(tmp_path):
    outs = []
    for t in (1, 3, 1):
        out = tmp_path / f"F{t}{len(outs)}.csv"
        assert main(["diffraction", "F", "--level", "4", "--grid", "90", "--xmax", "1.5",
                     "--threads", str(t), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_lyapunov_and_scan(tmp_path):
    out = tmp_path / "l.csv"
    assert main(["lyapunov", "--direction", "out", "--k", "random:7", "--steps", "200", "--out", str(out)]) == 0
    man = json.loads((tmp_path / "l.csv.manifest.json").read_text())
    assert abs(man["summary"]["consistency"]) < 1e-12
    s = tmp_path / "s.json"
    assert main(["diffraction", "scan", "--u", "1,1", "--k", "0,0.37", "--levels", "5..7", "--out", str(s)]) == 0
    data = json.loads(s.read_text())
    assert [d["classification"] for d in data] == ["Bragg", "continuous"]
    man = json.loads((tmp_path / "s.json.manifest.json").read_text())
    assert man["summary"]["bragg_count"] == 1


def test_verify_only(tmp_path, capsys):
    assert main(["verify-all", "--only", "1,5", "--out", str(tmp_path / "v.json")]) == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("[")]
    assert len(lines) == 2 and all(l.startswith("[PASS]") for l in lines)
