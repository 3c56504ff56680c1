"""Run each CLI subcommand once and validate what it writes."""

import csv
import json
import pathlib
import subprocess
import sys

import jsonschema

TRACE_HEADER = ["iter", "energy", "residual", "barycenter_norm", "hausdorff", "step"]
BOUNDARY_HEADER = ["iter", "theta", "x", "y"]


def run(cli, args, expect=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n{proc.stdout}{proc.stderr}")
    return proc


def validate(path, schema):
    with open(path) as fh:
        data = json.load(fh)
    jsonschema.validate(data, schema)
    return data


def header(path):
    with open(path, newline="") as fh:
        return next(csv.reader(fh))


def main():
    cli, source, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    work.mkdir(parents=True, exist_ok=True)
    schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in (source / "schemas").glob("*.json")}
    configs = source / "configs"

    run(cli, ["report", "--config", str(configs / "report_ellipse.json"), "--out", str(work)])
    report = validate(work / "report_ellipse.json", schemas["report"])
    jsonschema.validate(report["domain"], schemas["domain"])

    run(cli, ["sweep", "--config", str(configs / "sweep_satellites.json"), "--out", str(work)])
    cols = header(work / "sweep_satellites.csv")
    assert cols[0] == "index" and cols[-1] == "status", cols
    with open(work / "sweep_satellites.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 4 and all(r["status"] == "ok" for r in rows), rows

    run(cli, ["verify", "optimizer", "--out", str(work)])
    verify = validate(work / "verify_optimizer.json", schemas["verify"])
    assert verify["passed"] and [c["id"] for c in verify["checks"]] == ["A11"], verify

    opt = work / "opt"
    run(cli, ["optimize", "--config", str(configs / "optimize_ellipse.json"), "--out", str(opt)])
    validate(opt / "final_domain.json", schemas["domain"])
    assert header(opt / "trace.csv") == TRACE_HEADER
    assert header(opt / "boundaries.csv") == BOUNDARY_HEADER

    bad = work / "bad.json"
    bad.write_text(json.dumps({"domain": {"shape": "perturbed_disk", "k": 2.5, "amplitude": 0.1}}))
    run(cli, ["report", "--config", str(bad), "--out", str(work)], expect=2)
    print("outputs ok")


if __name__ == "__main__":
    main()
