import json
import subprocess
import sys

import pytest

from tpverify.cli import parse_config, run
from tpverify.constructions import build_h, build_lb
from tpverify.netgraph import Network


def test_hankel(capsys):
    assert run(["hankel", "--n", "4", "--max-order", "5"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert [l.split(":")[0] for l in out[:5]] == [f"PASS minor_order_{k}" for k in range(1, 6)]


def test_thm32(capsys):
    assert run(["thm32", "--n", "2", "--rows", "1,2", "--cols", "0,1"]) == 0
    assert "lhs=1 + q^2 rhs=1 + q^2" in capsys.readouterr().out


def test_immanant(capsys):
    assert run(["immanant", "--n", "1", "--kmax", "2"]) == 0
    assert "PASS immanant_k2: 2/2" in capsys.readouterr().out


def test_dump_network_roundtrip(tmp_path, capsys):
    out = tmp_path / "h3.json"
    assert run(["dump-network", "--which", "h", "--n", "3", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert Network.from_json(data) == build_h(3).net
    assert len(data["vertices"]) == 50
    assert len(data["segments"]) == 7


def test_dump_lb(tmp_path):
    out = tmp_path / "lb.json"
    assert run(["dump-network", "--which", "lb", "--n", "2", "--out", str(out)]) == 0
    assert Network.from_json(json.loads(out.read_text())) == build_lb(2)


def test_certificate_written(tmp_path):
    out = tmp_path / "cert.json"
    assert run(["main", "--n", "1", "--max-order", "2", "--out", str(out)]) == 0
    cert = json.loads(out.read_text())
    assert cert["pass"] is True
    assert {"subject", "checks", "elapsed_ms"} <= set(cert)
    assert all(set(c) == {"name", "inputs", "lhs", "rhs", "pass"} for c in cert["checks"])


def test_thm43_and_lgv(capsys):
    assert run(["thm43", "--case", "2", "--e", "2", "--f", "3", "--n", "2"]) == 0
    assert run(["lgv-check", "--which", "lb", "--n", "2", "--max-order", "2"]) == 0
    assert run(["lgv-check", "--which", "b", "--n", "2", "--rows", "0,1", "--cols", "0,1"]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["hankel"],
        ["thm32", "--n", "2", "--rows", "1,2"],
        ["thm32", "--n", "2", "--rows", "2,1", "--cols", "0,1"],
        ["thm32", "--n", "2", "--rows", "1,2", "--cols", "0"],
        ["thm43", "--n", "2"],
        ["thm43", "--n", "2", "--case", "1", "--e", "3", "--f", "1"],
        ["main", "--n", "2", "--case", "1"],
        ["immanant", "--n", "2"],
        ["dump-network", "--n", "2"],
        ["nosuch"],
        ["hankel", "--n", "x"],
        ["hankel", "--n", "-1"],
        ["main", "--n", "1", "--jobs", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(argv) == 2


def test_out_of_range_indices():
    assert run(["thm32", "--n", "1", "--rows", "0,5", "--cols", "0,1"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["hankel", "--n", "8", "--max-order", "9"],
        ["immanant", "--n", "8", "--kmax", "8"],
        ["main", "--n", "2", "--max-order", "2", "--budget", "10"],
    ],
)
def test_guards(argv, capsys):
    assert run(argv) == 3


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("TPVERIFY_BUDGET", "10")
    assert run(["main", "--n", "2", "--max-order", "2"]) == 3


def test_config_validation():
    cfg = parse_config(["main", "--n", "2", "--rows", "0,1", "--cols", "1,2", "--case", "2", "--e", "1", "--f", "1"])
    assert cfg.rows == (0, 1) and cfg.generalized == (2, 1, 1)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tpverify", "main", "--n", "1", "--rows", "0,1", "--cols", "0,1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "lhs=2q rhs=2q" in proc.stdout


def test_failed_check_exits_one(monkeypatch, capsys):
    from tpverify import cli
    from tpverify.polymat import PolyMatrix

    monkeypatch.setattr(cli, "hankel", lambda n, data=None: PolyMatrix.from_rows([[1, 2], [3, 1]]))
    assert run(["hankel", "--n", "1"]) == 1
    assert "FAIL minor_order_2" in capsys.readouterr().out


def test_generalized_single_minor_order_three():
    assert run(["main", "--n", "3", "--rows", "0,1", "--cols", "2,3", "--case", "1", "--e", "1", "--f", "3"]) == 0
