#!/usr/bin/env python3
"""End-to-end checks of the bandsim command line: exit codes, config
precedence, determinism, and output formats."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
failures = []


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True, timeout=600)
    if proc.returncode != expect:
        failures.append(
            f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n"
            f"stderr: {proc.stderr[:500]}"
        )
    return proc


def check(cond, what):
    if not cond:
        failures.append(what)


def kv(stdout):
    out = {}
    for line in stdout.splitlines():
        parts = line.split(",")
        if len(parts) >= 2:
            out[parts[0]] = parts[1]
    return out


# solve: defaults, determinism, stderr echo
a = run("solve")
b = run("solve")
check(a.stdout == b.stdout, "solve reruns must be byte-identical")
check("config:" in a.stderr, "resolved config must be echoed to stderr")
vals = kv(a.stdout)
check("rcrra_max" in vals, "solve output must include rcrra_max")
check(abs(float(vals["b_beta"]) - 9.78024939687) < 1e-6, "default b_beta off")

# flag overrides
c = run("solve", "--beta", "10")
check(abs(float(kv(c.stdout)["b_beta"]) - 2.95076994691) < 1e-6, "--beta ignored")

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    # config file: complete file parses, flags override the file
    cfg = {
        "r": 0.015, "mu": 0.085, "sigma": 0.25, "delta": 0.02,
        "gamma": 2.0, "alpha": 5.0, "beta": 10.0,
    }
    cfg_path = tmp / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    d = run("solve", "--config", str(cfg_path))
    check(abs(float(kv(d.stdout)["b_beta"]) - 2.95076994691) < 1e-6, "config file ignored")
    e = run("solve", "--config", str(cfg_path), "--beta", "100")
    check(abs(float(kv(e.stdout)["b_beta"]) - 9.78024939687) < 1e-6,
          "flag must override the config file")

    # incomplete config -> exit 2 naming the key
    bad = dict(cfg)
    del bad["sigma"]
    bad_path = tmp / "bad.json"
    bad_path.write_text(json.dumps(bad))
    f = run("solve", "--config", str(bad_path), expect=2)
    check("sigma" in f.stderr, "missing key must be named in the error")

    # --out directory
    outdir = tmp / "out"
    run("solve", "--out", str(outdir))
    check((outdir / "solve.csv").exists(), "solve.csv missing under --out")
    check((outdir / "solve.report.json").exists(), "solve.report.json missing")
    report = json.loads((outdir / "solve.report.json").read_text())
    check(report["config"]["sigma"] == 0.25, "report must embed the resolved config")
    check((outdir / "solve.csv").read_text() == a.stdout,
          "--out file must match stdout content")

# invalid parameters and invalid flags -> exit 2
run("solve", "--sigma", "0", expect=2)
run("solve", "--no-such-flag", expect=2)
run("policy", "--alpha", "0", "--beta", "0", expect=2)
run("moments", "--dt", "0.07", expect=2)  # horizon not a multiple of dt

# numeric failure -> exit 3 (unreachable calibration target)
run("tables", "calibration", "--invert", "--target", "0.5", expect=3)

# json format
g = run("solve", "--format", "json")
doc = json.loads(g.stdout)
check(doc["config"]["gamma"] == 2.0, "json output must embed the config")
check(any(r["key"] == "rcrra_max" for r in doc["rows"]), "json rows must mirror csv")

# policy grid
h = run("policy")
lines = [ln for ln in h.stdout.splitlines() if ln]
check(lines[0] == "s,z,X_over_c,pi_over_c,pi_over_X,rcrra", "policy header")
data = [ln for ln in lines[1:] if not ln.startswith("summary:")]
check(len(data) == 201, f"policy grid must have 201 rows, got {len(data)}")
check(any(ln.startswith("summary:x_lo") for ln in lines), "policy summary missing")

# simulate: shape, initial state, determinism
i1 = run("simulate", "--horizon", "2", "--seed", "7")
i2 = run("simulate", "--horizon", "2", "--seed", "7")
check(i1.stdout == i2.stdout, "simulate must be deterministic for a fixed seed")
lines = [ln for ln in i1.stdout.splitlines() if ln]
data = [ln for ln in lines[1:] if not ln.startswith("summary:")]
check(len(data) == 49, f"simulate should emit 49 rows at dt=1/24, got {len(data)}")
first = data[0].split(",")
check(abs(float(first[6]) - 50.0) < 1e-6, "default x0 must be 50")
check(any(ln.startswith("summary:n_up") for ln in lines), "simulate summary missing")

# moments and regress at tiny scale
j = run("moments", "--reps", "2", "--n-agents", "3", "--horizon", "5", "--seed", "5")
check(any(ln.startswith("summary:mean_cg") for ln in j.stdout.splitlines()),
      "moments summary missing")
k = run("regress", "--n-agents", "8", "--t-years", "3", "--k", "1",
        "--scenario-pool", "2", "--seed", "5")
rho = [ln for ln in k.stdout.splitlines() if ln.startswith("summary:rho_hat")]
check(len(rho) == 1 and abs(float(rho[0].split(",")[1])) >= 0.0, "regress summary missing")

# tables
t = run("tables", "risky-share")
check("124" in t.stdout, "risky-share table must contain the Merton row")

if failures:
    print("cli_checks: FAIL")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print("cli_checks: all passed")
