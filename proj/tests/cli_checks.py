#!/usr/bin/env python3
"""End-to-end checks of the command-line binary.

Usage: cli_checks.py /path/to/sloshspot
Exits non-zero on the first failed check.
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile

CLI = None
FAILURES = []


def run(*args, expect=0, **kwargs):
    proc = subprocess.run(
        [CLI, *args], capture_output=True, text=True, timeout=300, **kwargs
    )
    if expect is not None and proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, expected {expect}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def check(name, fn):
    try:
        fn()
        print(f"ok - {name}")
    except Exception as exc:  # noqa: BLE001 - report and keep going
        FAILURES.append(name)
        print(f"FAIL - {name}: {exc}")


def eval_valid():
    out = run("eval", "--nu", "1.5", "--family", "sum", "--x", "1", "--y", "-0.5").stdout
    lines = out.strip().splitlines()
    assert lines[0].startswith("u = ")
    assert lines[1].startswith("v = ")
    assert lines[2].startswith("grad_v = (")
    u = float(lines[0].split("=")[1])
    v = float(lines[1].split("=")[1])
    assert abs(u) < 50 and abs(v) < 50, (u, v)


def eval_axis_symmetry():
    out = run("eval", "--nu", "1.5", "--family", "sum", "--x", "0", "--y", "-2").stdout
    v = float(out.strip().splitlines()[1].split("=")[1])
    assert v == 0.0, v


def eval_rejects_bad_mode():
    proc = run("eval", "--nu", "1.7", "--family", "sum", "--x", "1", "--y", "-1",
               expect=2)
    assert "singular" in proc.stderr.lower(), proc.stderr


def eval_rejects_upper_half_plane():
    run("eval", "--nu", "1.5", "--family", "sum", "--x", "1", "--y", "0.5",
        expect=2)


def case_w32(tmp):
    out_dir = os.path.join(tmp, "case_w32")
    run("case", "w32", "--out", out_dir)
    case_dir = os.path.join(out_dir, "w32")
    for name in ("domain.json", "bottom.csv", "trace.csv", "highspots.json"):
        assert os.path.isfile(os.path.join(case_dir, name)), name
    with open(os.path.join(case_dir, "domain.json")) as fh:
        dom = json.load(fh)
    assert dom["schema_version"] == 1
    assert dom["mode"] == {"nu": 1.5, "family": "sum"}
    assert abs(dom["free_surface"][1] - 2.132704154) < 1e-6
    assert dom["bottom"] and dom["bottom"][0]["vertices"]
    with open(os.path.join(case_dir, "highspots.json")) as fh:
        spots = json.load(fh)["high_spots"]
    inner = [s for s in spots if s["interior"]]
    assert len(inner) == 1, spots
    assert inner[0]["kind"] == "min"
    assert abs(inner[0]["x"] - 2.077836536) < 1e-6
    with open(os.path.join(case_dir, "trace.csv")) as fh:
        header = fh.readline().strip()
        first = fh.readline().strip()
    assert header == "x,u,v"
    assert first.startswith("0,")
    with open(os.path.join(case_dir, "bottom.csv")) as fh:
        assert fh.readline().strip() == "x,y"


def case_w2_spots(tmp):
    out_dir = os.path.join(tmp, "case_w2")
    run("case", "w2", "--out", out_dir)
    with open(os.path.join(out_dir, "w2", "highspots.json")) as fh:
        spots = json.load(fh)["high_spots"]
    inner = sorted(s["x"] for s in spots if s["interior"])
    assert len(inner) == 2, spots
    assert abs(inner[0] - 0.786780) < 2e-5
    assert abs(inner[1] - 2.343392) < 2e-5


def case_smooth_variant(tmp):
    out_dir = os.path.join(tmp, "case_smooth")
    run("case", "w32", "--smooth-c", "0.1", "--out", out_dir)
    with open(os.path.join(out_dir, "w32", "domain.json")) as fh:
        dom = json.load(fh)
    assert dom["corners"] == []
    assert len(dom["bottom"]) == 1
    assert dom["free_surface"][0] > 0.0


def case_parallel_jobs(tmp):
    out_dir = os.path.join(tmp, "case_jobs")
    run("case", "w32", "w52", "w3", "--jobs", "3", "--out", out_dir)
    for name in ("w32", "w52", "w3"):
        assert os.path.isfile(os.path.join(out_dir, name, "domain.json")), name


def case_flag_form(tmp):
    out_dir = os.path.join(tmp, "case_flag")
    run("case", "--case", "w32p", "--out", out_dir)
    with open(os.path.join(out_dir, "w32p", "domain.json")) as fh:
        dom = json.load(fh)
    assert abs(dom["free_surface"][0] + 2.132704154) < 1e-6
    assert dom["free_surface"][1] == 0.0


def case_usage_errors(tmp):
    run("case", "nosuchcase", "--out", tmp, expect=2)
    run("case", "w52", "--smooth-c", "0.1", "--out", tmp, expect=2)
    run("case", expect=2)
    run("nosuchcommand", expect=2)


def case_computation_failure(tmp):
    # smooth level far outside (0, -min v) cannot bound a domain
    proc = run("case", "w32", "--smooth-c", "99", "--out",
               os.path.join(tmp, "case_fail"), expect=3)
    assert "failed" in proc.stderr.lower(), proc.stderr


def figures(tmp):
    out_dir = os.path.join(tmp, "figs")
    for fig in ("fig1", "fig4"):
        run("figure", fig, "--out", out_dir)
        svg = os.path.join(out_dir, f"{fig}.svg")
        csv = os.path.join(out_dir, f"{fig}.csv")
        assert os.path.isfile(svg) and os.path.isfile(csv)
        with open(svg) as fh:
            body = fh.read()
        assert body.startswith("<svg")
        assert 'viewBox="0 0 800 620"' in body
        assert "stroke-dasharray" in body  # dashed u-trace at minimum
    with open(os.path.join(out_dir, "fig4.svg")) as fh:
        # the nu=3 figure carries the dotted auxiliary branches
        assert 'stroke-dasharray="1.5 3"' in fh.read()
    run("figure", "fig9", "--out", out_dir, expect=2)


def figure_determinism(tmp):
    a, b = os.path.join(tmp, "det_a"), os.path.join(tmp, "det_b")
    for out_dir in (a, b):
        run("figure", "fig1", "--out", out_dir)
    for name in ("fig1.svg", "fig1.csv"):
        with open(os.path.join(a, name), "rb") as fh:
            bytes_a = fh.read()
        with open(os.path.join(b, name), "rb") as fh:
            bytes_b = fh.read()
        assert bytes_a == bytes_b, name


def report_subset():
    out = run("report", "--cases", "w72").stdout
    data_rows = [l for l in out.splitlines() if "pass" in l or "FAIL" in l]
    assert len(data_rows) == 4, out
    assert all("pass" in l for l in data_rows), out


def report_json_format():
    out = run("report", "--format", "json").stdout
    payload = json.loads(out)
    assert payload["all_pass"] is True
    assert len(payload["rows"]) == 21
    for row in payload["rows"]:
        assert row["pass"] is True, row


def report_full_table():
    out = run("report").stdout
    assert "case features" in out
    assert "bulbous" in out
    assert "w32" in out and "w2" in out
    run("report", "--cases", "nosuch", expect=2)


def env_out_dir(tmp):
    out_dir = os.path.join(tmp, "env_out")
    env = dict(os.environ, SLOSHSPOT_OUT=out_dir)
    proc = subprocess.run(
        [CLI, "case", "w32"], capture_output=True, text=True, env=env,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert os.path.isfile(os.path.join(out_dir, "w32", "domain.json"))


def main():
    global CLI
    if len(sys.argv) != 2:
        print("usage: cli_checks.py /path/to/sloshspot", file=sys.stderr)
        return 2
    CLI = sys.argv[1]
    tmp = tempfile.mkdtemp(prefix="sloshspot_cli_")
    try:
        check("eval valid point", eval_valid)
        check("eval axis symmetry", eval_axis_symmetry)
        check("eval rejects non-admissible nu", eval_rejects_bad_mode)
        check("eval rejects y > 0", eval_rejects_upper_half_plane)
        check("case w32 artifacts", lambda: case_w32(tmp))
        check("case w2 interior spots", lambda: case_w2_spots(tmp))
        check("case smooth variant", lambda: case_smooth_variant(tmp))
        check("case parallel jobs", lambda: case_parallel_jobs(tmp))
        check("case flag form", lambda: case_flag_form(tmp))
        check("case usage errors", lambda: case_usage_errors(tmp))
        check("case computation failure", lambda: case_computation_failure(tmp))
        check("figures", lambda: figures(tmp))
        check("figure determinism", lambda: figure_determinism(tmp))
        check("report subset", report_subset)
        check("report json", report_json_format)
        check("report full table", report_full_table)
        check("SLOSHSPOT_OUT env", lambda: env_out_dir(tmp))
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
    if FAILURES:
        print(f"{len(FAILURES)} check(s) failed: {', '.join(FAILURES)}")
        return 1
    print("all cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
