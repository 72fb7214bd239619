"""End-to-end checks of the tempercore command line: exit codes, manifests,
and the shape of the emitted reports."""

import json
import pathlib
import subprocess
import sys
import tempfile

CLI = sys.argv[1]


def run(args, config=None, out=None, expect=0):
    cmd = [CLI] + args
    if config is not None:
        out.mkdir(parents=True, exist_ok=True)
        cfg = out / "config.json"
        cfg.write_text(json.dumps(config))
        cmd += ["--config", str(cfg)]
    if out is not None:
        cmd += ["--out", str(out)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == expect, (
        f"{args}: expected exit {expect}, got {proc.returncode}\n"
        f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
    )
    return proc


def main():
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="tempercore_cli_"))

    # ladder: optimal gaussian ladder has three rungs.
    out = tmp / "ladder"
    run(["ladder", "--seed", "1"],
        {"family": {"name": "gaussian"}, "d": 100, "chi": 0.3,
         "rule": {"type": "optimal"}}, out)
    result = json.loads((out / "result.json").read_text())
    assert len(result["ladder"]["betas"]) == 3, result
    assert "normalization" in result and "version" in result
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["kind"] == "ladder" and manifest["seed"] == 1

    # determinism: identical config and seed give identical result bytes.
    out2 = tmp / "ladder2"
    run(["ladder", "--seed", "1"],
        {"family": {"name": "gaussian"}, "d": 100, "chi": 0.3,
         "rule": {"type": "optimal"}}, out2)
    assert (out / "result.json").read_bytes() == (out2 / "result.json").read_bytes()

    # unknown config keys are a schema violation: exit 2.
    out3 = tmp / "bad"
    out3.mkdir()
    proc = run(["ladder"], {"family": {"name": "gaussian"}, "bogus": 1}, out3, expect=2)
    assert "bogus" in proc.stderr

    # unparseable config: exit 2.
    cfg = tmp / "broken.json"
    cfg.write_text("{not json")
    run(["ladder", "--config", str(cfg), "--out", str(tmp / "broken")], expect=2)

    # compare-sigma with dominating sigma1: v1 <= v2 on every row.
    out4 = tmp / "compare"
    run(["compare-sigma", "--seed", "2"],
        {"target": {"name": "gaussian", "a": -3, "b": 3},
         "sigma1": {"type": "constant", "value": 1.0},
         "sigma2": {"type": "constant", "value": 0.6},
         "m_list": [8, 16]}, out4)
    result = json.loads((out4 / "result.json").read_text())
    assert result["ordering_holds"]
    for row in result["rows"]:
        assert row["v1"] <= row["v2"] + 1e-10, row
    csv = (out4 / "compare.csv").read_text().splitlines()
    assert csv[0] == "m,f,v1,v2" and len(csv) == 9

    # run-st: short trace with stats.
    out5 = tmp / "st"
    run(["run-st", "--seed", "3"],
        {"family": {"name": "gaussian"}, "d": 100, "chi": 0.3,
         "rule": {"type": "optimal"}, "n_steps": 2000}, out5)
    result = json.loads((out5 / "result.json").read_text())
    assert 0.0 <= result["stats"]["acc_rate"] <= 1.0
    assert abs(sum(result["stats"]["occupancy"]) - 1.0) < 1e-9
    trace = (out5 / "trace.csv").read_text().splitlines()
    assert trace[0] == "step,index,beta,accepted" and len(trace) == 2002

    # run-diffusion: reflected Langevin path stays in the domain.
    out6 = tmp / "diff"
    run(["run-diffusion", "--seed", "4"],
        {"mode": "langevin", "target": {"name": "gaussian", "a": -3, "b": 3},
         "sigma": {"type": "constant", "value": 1.0},
         "dt": 1e-3, "T": 20.0, "thin": 10}, out6)
    result = json.loads((out6 / "result.json").read_text())
    assert result["variance"]["estimate"] >= 0.0
    for line in (out6 / "path.csv").read_text().splitlines()[1:]:
        x = float(line.split(",")[1])
        assert -3.0 <= x <= 3.0

    # bounds: exact gap dominates the capacitance bound.
    out7 = tmp / "bounds"
    run(["bounds", "--seed", "5"],
        {"target": {"name": "gaussian", "a": -3, "b": 3},
         "sigma": {"type": "constant", "value": 1.0},
         "m_list": [8, 16], "L": 3.0}, out7)
    result = json.loads((out7 / "result.json").read_text())
    assert result["bound_holds"]
    for row in result["rows"]:
        assert row["gap_exact"] >= row["gap_lower_bound"], row

    print("cli smoke: all checks passed")


if __name__ == "__main__":
    main()
