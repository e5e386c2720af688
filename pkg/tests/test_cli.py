import json
import math

import numpy as np
import pytest

from cyclides.cli import RunConfig, cmd_compute, cmd_sweep, main
from cyclides.errors import DomainError
from cyclides.iso import endpoint_iso


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return json.loads(text)["records"]


def test_compute_origin(capsys):
    code, out, _ = run(capsys, "compute", "--R", "2", "--rho", "0", "--format", "json")
    assert code == 0
    rec = records(out)[0]
    assert rec["iso_closed"] == pytest.approx(3 / (2 * math.sqrt(2 * math.pi)), rel=1e-14)
    assert rec["iso_closed"] == pytest.approx(0.598413, abs=1e-6)


def test_compute_round_sphere(capsys):
    code, out, _ = run(capsys, "compute", "--R", "2", "--rho", "1", "--format", "json")
    rec = records(out)[0]
    assert code == 0 and rec["iso_closed"] == 1.0 and rec["shape"] == "round sphere"
    assert "area_oracle" not in rec


def test_compute_oracle_agreement(capsys):
    code, out, _ = run(capsys, "compute", "--R", "1.4142135624", "--rho", "0.2", "--format", "json")
    rec = records(out)[0]
    assert code == 0
    assert max(rec["rel_errors"].values()) <= 1e-8


def test_compute_skips_oracle_near_sphere():
    rec = cmd_compute(2.0, 1.0 - 5e-4, RunConfig())
    assert rec.area_oracle is None and rec.rel_errors == {}
    assert rec.area_closed is not None


def test_compute_inside_uses_dual():
    rec = cmd_compute(2.0, 1.5, RunConfig())
    assert rec.rel_errors["volume"] <= 1e-8
    assert rec.shape.startswith("R=1.1547")


def test_compute_alpha(capsys):
    code, out, _ = run(capsys, "compute", "--alpha", str(math.pi / 6), "--rho", "0", "--format", "json")
    assert code == 0
    assert records(out)[0]["R"] == pytest.approx(2.0)


def test_csv_has_config_header(capsys):
    code, out, _ = run(capsys, "compute", "--R", "2", "--rho", "0.5", "--n-angular", "64")
    lines = out.splitlines()
    assert "# n_angular=64" in lines
    assert "# tolerance=1e-10" in lines
    header = [l for l in lines if not l.startswith("#")][0]
    assert header.startswith("R,rho,shape,area_closed")


def test_out_file(tmp_path, capsys):
    path = tmp_path / "sweep.json"
    code, out, _ = run(capsys, "sweep", "--R", "2", "--points", "5", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert data["config"]["points"] == 5 and len(data["records"]) == 5


def test_sweep_shape():
    for R in (1.2, math.sqrt(2), 2.0):
        rows = cmd_sweep(R, RunConfig(points=101))
        rho = np.array([r["rho"] for r in rows])
        iso = np.array([r["iso"] for r in rows])
        assert rho[0] == 0 and rho[-1] == math.sqrt(R * R - 1)
        assert iso.max() <= 1.0
        rise = rho < R - 1
        assert np.all(np.diff(iso[rise]) > 0) and np.all(np.diff(iso[~rise]) < 0)
    rows = cmd_sweep(2.0, RunConfig(points=11))
    assert rows[-1]["iso"] == pytest.approx(3 / (2 * math.sqrt(math.pi * 2 / math.sqrt(3))), rel=1e-14)


def test_sweep_threads_deterministic():
    one = cmd_sweep(1.7, RunConfig(points=64, workers=1))
    many = cmd_sweep(1.7, RunConfig(points=64, workers=4))
    assert one == many


def test_sweep_worker_env(monkeypatch, capsys):
    monkeypatch.setenv("CYCLIDES_WORKERS", "3")
    code, out, _ = run(capsys, "sweep", "--R", "2", "--points", "4", "--format", "json")
    assert code == 0 and json.loads(out)["config"]["workers"] == 3
    monkeypatch.setenv("CYCLIDES_WORKERS", "lots")
    code, _, err = run(capsys, "sweep", "--R", "2", "--points", "4")
    assert code == 2 and "CYCLIDES_WORKERS" in err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--x", "0.3", "--y", "0", "--z", "0", "--R", "2", "--format", "json")
    rec = records(out)[0]
    assert code == 0 and rec["canonical_R"] == 2 and rec["canonical_rho"] == pytest.approx(0.3)
    code, out, _ = run(capsys, "classify", "--x", "0", "--y", "0", "--z", "7", "--R", "2", "--format", "json")
    rec = records(out)[0]
    assert rec["canonical_rho"] == 0 and rec["iso"] == pytest.approx(endpoint_iso(2))


def test_classify_rotation(capsys):
    ref = None
    for theta in np.random.default_rng(3).uniform(0, 2 * math.pi, 5):
        x, y = 1.5 * math.cos(theta), 1.5 * math.sin(theta)
        code, out, _ = run(capsys, "classify", "--x", repr(x), "--y", repr(y), "--z", "0", "--R", "2", "--format", "json")
        rec = records(out)[0]
        assert code == 0
        ref = ref or rec
        assert rec["canonical_R"] == pytest.approx(ref["canonical_R"], rel=1e-12)
        assert rec["canonical_rho"] == pytest.approx(ref["canonical_rho"], rel=1e-10)
    assert ref["canonical_R"] == pytest.approx(2 / math.sqrt(3))


def test_classify_on_torus(capsys):
    code, _, err = run(capsys, "classify", "--x", "3", "--y", "0", "--z", "0", "--R", "2")
    assert code == 2 and "OnTorus" in err


def test_nonunique(capsys):
    code, out, _ = run(capsys, "nonunique", "--R", "2", "--v", "0.9", "--format", "json")
    rows = records(out)
    assert code == 0 and len(rows) == 2
    assert all(abs(r["iso"] - 0.9) <= 1e-10 for r in rows)
    keys = ("maxwell_a", "maxwell_f", "maxwell_l_minus_a")
    assert max(abs(rows[0][k] - rows[1][k]) for k in keys) > 1e-6


@pytest.mark.parametrize(
    "argv,needle",
    [
        (("nonunique", "--R", "1.4142135624", "--v", "0.9"), "RejectSquare"),
        (("nonunique", "--R", "2", "--v", "0.3"), "OutOfRange"),
        (("compute", "--R", "2", "--rho", "5"), "DomainError"),
        (("compute", "--R", "0.5", "--rho", "0"), "DomainError"),
        (("compute", "--R", "2", "--rho", "0", "--n-angular", "7"), "n-angular"),
        (("sweep", "--R", "2", "--points", "1"), "points"),
    ],
)
def test_domain_errors_exit_two(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 2 and needle in err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--R", "2", "--alpha", "0.5", "--rho", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_run_config_validation():
    with pytest.raises(DomainError):
        RunConfig(tolerance=0)
    with pytest.raises(DomainError):
        RunConfig(fmt="xml")


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    rows = records(out)
    assert code == 0 and all(r["passed"] for r in rows)
    assert {r["name"] for r in rows} >= {"oracle_agreement", "duality", "monotonicity"}


def test_verify_low_resolution_fails(capsys):
    code, out, err = run(capsys, "verify", "--n-angular", "8", "--format", "json")
    failed = [r["name"] for r in records(out) if not r["passed"]]
    assert code == 1 and "oracle_agreement" in failed and "oracle_agreement" in err


def test_verify_loose_tolerance_passes(capsys):
    code, _, _ = run(capsys, "verify", "--n-angular", "8", "--tol", "1e-2")
    assert code == 0


def test_verify_deterministic(capsys):
    _, a, _ = run(capsys, "verify")
    _, b, _ = run(capsys, "verify")
    assert a == b
