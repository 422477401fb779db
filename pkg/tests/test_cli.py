import json
import math

import pytest

from dimerlab import cli
from dimerlab.errors import NumericalError


def run(tmp_path, name, argv):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, out.read_text()


def body_of(text: str) -> str:
    return "".join(line for line in text.splitlines(keepends=True)
                   if not line.startswith("#"))


FAST_COMMANDS = [
    ["curve", "--a", "0.5", "--r", "0.5", "--samples", "20"],
    ["area", "--mode", "radius", "--a", "0.5", "--steps", "8"],
    ["area", "--mode", "families", "--steps", "6"],
    ["trajectory", "--v", "1", "--g", "3", "--t-end", "4", "--samples", "10"],
    ["period", "--v", "1", "--g", "3", "--e", "1.2"],
    ["spectrum", "--v", "1", "--g", "2", "--n", "30"],
    ["spectrum", "--v", "1", "--g", "2", "--n", "30", "--what", "density", "--bins", "6"],
    ["spectrum", "--v", "1", "--g", "2", "--n", "30", "--what", "counts"],
    ["husimi", "--v", "1", "--g", "2", "--n", "12", "--state-index", "0",
     "--n-theta", "5", "--n-phi", "5"],
    ["sweep", "--v", "1", "--g-min", "0.5", "--g-max", "3", "--g-steps", "2",
     "--t-end", "2", "--t-steps", "5"],
    ["semiclassical", "--v", "1", "--g", "2", "--n", "12"],
    ["oracle", "--what", "mc-area", "--a", "0.5", "--r", "0.5",
     "--samples", "20000", "--seed", "4"],
    ["oracle", "--what", "elliptic", "--kind", "E", "--m", "0.25"],
]


@pytest.mark.parametrize("argv", FAST_COMMANDS, ids=lambda argv: "_".join(argv[:3]))
def test_commands_deterministic(tmp_path, argv):
    code1, text1 = run(tmp_path, "run1.csv", argv)
    code2, text2 = run(tmp_path, "run2.csv", argv)
    assert code1 == code2 == 0
    assert body_of(text1) == body_of(text2)
    assert body_of(text1).strip()


def test_manifest_present(tmp_path):
    _, text = run(tmp_path, "out.csv", FAST_COMMANDS[0])
    lines = text.splitlines()
    assert lines[0] == "# command: curve"
    assert any(line.startswith("# timestamp:") for line in lines)
    header = next(line for line in lines if not line.startswith("#"))
    assert header == "phi,x,y,z,hemisphere"


def test_json_format(tmp_path):
    code, text = run(tmp_path, "out.json",
                     ["period", "--v", "1", "--g", "3", "--e", "1.2", "--format", "json"])
    assert code == 0
    payload = json.loads(body_of(text))
    assert payload["columns"] == ["a", "r", "m", "t_closed", "t_ode"]
    t_closed, t_ode = (float(payload["rows"][0][i]) for i in (3, 4))
    assert t_closed == pytest.approx(t_ode, rel=1e-6)


def test_spectrum_counts_content(tmp_path):
    _, text = run(tmp_path, "out.csv",
                  ["spectrum", "--v", "1", "--g", "2", "--n", "30", "--what", "counts"])
    row = body_of(text).splitlines()[1].split(",")
    assert float(row[0]) == 1.0
    assert int(row[1]) + int(row[2]) == 31


def test_c_flag_equivalent_to_g(tmp_path):
    _, by_g = run(tmp_path, "g.csv", ["spectrum", "--v", "1", "--g", "2", "--n", "30"])
    _, by_c = run(tmp_path, "c.csv",
                  ["spectrum", "--v", "1", "--c", str(2.0 / 30.0), "--n", "30"])
    assert body_of(by_g) == body_of(by_c)


def test_domain_error_exit_code(tmp_path, capsys):
    assert cli.main(["curve", "--a", "3", "--r", "0.5"]) == 2
    assert "domain_error" in capsys.readouterr().err
    assert cli.main(["period", "--v", "1", "--g", "2"]) == 2  # neither --r nor --e
    assert cli.main(["period", "--v", "1", "--g", "2", "--e", "99"]) == 2


def test_numerical_error_exit_code(monkeypatch, capsys):
    def boom(args):
        raise NumericalError("synthetic failure")

    monkeypatch.setattr(cli, "cmd_period", boom)
    assert cli.main(["period", "--v", "1", "--g", "3", "--e", "1.2"]) == 3
    assert "numerical_error" in capsys.readouterr().err


def test_threads_env(monkeypatch, tmp_path):
    monkeypatch.setenv("DIMERLAB_THREADS", "1")
    code, _ = run(tmp_path, "out.csv", ["oracle", "--what", "elliptic", "--m", "0.5"])
    assert code == 0


def test_curve_manifest_focal_data(tmp_path):
    _, text = run(tmp_path, "out.csv", FAST_COMMANDS[0])
    assert "# focal_half_sum:" in text
    c = float(text.split("# focal_half_sum: ")[1].splitlines()[0])
    assert c == pytest.approx(math.sqrt(4.0 / 3.0), abs=1e-12)
