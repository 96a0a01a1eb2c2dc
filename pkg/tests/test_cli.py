import json
import math

import pytest

from teichranders.cli import join_literal_values, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dist_json(capsys):
    code, out, _ = run(capsys, "dist", "--from", "i", "--to", "2i", "--t", "1")
    assert code == 0
    record = json.loads(out)
    assert record["schema"] == 1
    assert record["delta_t"] == pytest.approx(math.log(2.0))
    assert record["d_teich"] == pytest.approx(0.5 * math.log(2.0))
    assert record["delta_omega"] is None


def test_dist_csv_row(capsys):
    code, out, _ = run(
        capsys, "dist", "--from", "i", "--to", "2i", "--f", "1,0", "--format", "csv"
    )
    assert code == 0
    header, row = out.splitlines()
    assert header == "from,to,t,foliation,d_teich,delta_t,delta_omega"
    assert row.startswith('0.0+1.0i,0.0+2.0i,1,"1.0,0.0",')


def test_output_is_deterministic(capsys):
    argv = ("dist", "--from", "0.3+0.7i", "--to", "-1+2.5i", "--t", "0.5")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


@pytest.mark.parametrize(
    "argv, code, message",
    [
        (("dist", "--from", "i2", "--to", "2i"), 2, "malformed complex literal"),
        (("dist", "--from", "1-i", "--to", "2i"), 3, "upper half-plane"),
        (("dist", "--from", "i", "--to", "2i", "--t", "1.5"), 3, "weight t"),
        (("dist", "--from", "i", "--to", "2i", "--f", "0,0"), 3, "nonzero"),
        (("ray", "--base", "i", "--g", "0,1", "--f", "1,0", "--samples", "1"), 2, ""),
        (("cometric", "--phi", "1,0", "--psi", "10,0"), 3, "cometric undefined"),
        (("cometric", "--phi", "1", "--psi", "0,0"), 2, "expected 2 coefficients"),
        (("verify", "--suite", "nope"), 2, "unknown suite"),
        (("isometry-check", "--f", "1,2", "--format", "csv"), 2, "only emits JSON"),
    ],
)
def test_exit_codes(capsys, argv, code, message):
    status, out, err = run(capsys, *argv)
    assert status == code
    assert out == ""
    assert err.startswith(f"teichranders {argv[0]}: ")
    assert message in err


def test_geodesic_csv(capsys):
    code, out, _ = run(capsys, "geodesic", "--from", "i", "--to", "1+i", "--samples", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "s,re,im,norm"
    assert len(lines) == 6


def test_ray_csv(capsys):
    code, out, _ = run(
        capsys, "ray", "--base", "i", "--g", "0,1", "--f", "1,0", "--tmax", "5", "--samples", "11"
    )
    assert code == 0
    assert "# verdict=Bounded" in out.splitlines()


def test_isometry_check_honours_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("TRM_SEED", "7")
    code, out, _ = run(capsys, "isometry-check", "--f", "1,2", "--pairs", "50")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] is True
    assert report["seed"] == 7

    code, out, _ = run(capsys, "isometry-check", "--f", "1,2", "--pairs", "50", "--seed", "3")
    assert json.loads(out)["seed"] == 3


def test_cometric_on_a_space_file(capsys, tmp_path):
    path = tmp_path / "space.json"
    path.write_text(json.dumps({"grid": {"nx": 8, "ny": 8}, "basis": ["1"]}))
    code, out, _ = run(capsys, "cometric", "--space", str(path), "--phi", "1", "--psi", "0.5")
    assert code == 0
    assert json.loads(out)["g_omega"] == pytest.approx(2.0 / 3.0, rel=1e-9)


def test_output_file(capsys, tmp_path):
    target = tmp_path / "dist.json"
    code, out, _ = run(
        capsys, "dist", "--from", "i", "--to", "2i", "--output", str(target)
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["to"] == "0.0+2.0i"


def test_negative_literals_are_values(capsys):
    code, out, _ = run(capsys, "dist", "--from", "0.3+0.7i", "--to", "-1+2.5i")
    assert code == 0
    assert json.loads(out)["to"] == "-1.0+2.5i"

    code, out, _ = run(capsys, "dist", "--from", "i", "--to", "2i", "--f", "-1,2")
    assert code == 0
    assert json.loads(out)["delta_omega"] is not None


def test_join_literal_values():
    argv = ["dist", "--from", "-0.5+i", "--to", "2i", "--t", "-1", "--f", "--format"]
    assert join_literal_values(argv) == [
        "dist", "--from=-0.5+i", "--to", "2i", "--t", "-1", "--f", "--format"
    ]
    assert join_literal_values(["--g", "-1,0"]) == ["--g=-1,0"]


def test_long_ray_stays_finite(capsys):
    code, out, _ = run(
        capsys, "ray", "--base", "i", "--g", "0,1", "--f", "1,1", "--tmax", "200",
        "--format", "json",
    )
    assert code == 0
    assert "null" not in out
    record = json.loads(out)
    assert record["verdict"] == "Bounded"
    assert all(math.isfinite(v) for v in record["delta_values"])


def test_ray_past_the_float_range_is_a_domain_error(capsys):
    code, out, err = run(
        capsys, "ray", "--base", "i", "--g", "1,1", "--f", "1,1", "--tmax", "400"
    )
    assert code == 3
    assert out == ""
    assert "floating-point range" in err
