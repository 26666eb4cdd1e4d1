#!/usr/bin/env python3
"""End-to-end checks of the hkd command-line tool."""
import json
import os
import subprocess
import sys
import tempfile

HKD, DATA = sys.argv[1], sys.argv[2]
failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([HKD, *args], capture_output=True, text=True, env=e)


def expect(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def data(name):
    return os.path.join(DATA, name)


with tempfile.TemporaryDirectory() as tmp:
    csv = os.path.join(tmp, "p2.csv")
    r = run("pspace", "--d", "2", "--csv", csv)
    expect(r.returncode == 0, "pspace exit status")
    expect(json.loads(r.stdout)["ehk"] == "1", "pspace ehk")
    with open(csv) as f:
        lines = f.read().splitlines()
    expect(lines[0] == "x_rational,f_rational,f_decimal20", "pspace csv header")
    expect(len(lines) == 1 + 3 * 64 + 1, "pspace csv rows at step 1/64")
    expect("3/2,3/4,0.75" in lines, "pspace csv value at 3/2")

    r = run("curve", "--d", "2", "--strata", "[[2,-1]]")
    expect(r.returncode == 0 and json.loads(r.stdout)["ehk"] == "3/2", "curve ehk")

    r = run("segre", "--factors", '[{"type":"pspace","d":1},{"type":"pspace","d":1}]')
    expect(r.returncode == 0 and json.loads(r.stdout)["ehk"] == "4/3", "segre ehk")

    r = run("compare", "--ring", data("segre_p1_p1.json"), "--p", "2", "--n-max", "7")
    expect(r.returncode == 0, "compare exit status")
    j = json.loads(r.stdout)
    expect(j["ehk_closed_form"] == "4/3" and j["success"] is True, "compare result")

    r = run("compare", "--ring", data("segre_p1_p1.json"), "--n-max", "3", "--tol", "1/1000000")
    expect(r.returncode == 3 and json.loads(r.stdout)["success"] is False, "compare below tolerance")

    r = run("dim1", "--ring", data("line.json"), "--ideal", data("t_squared.json"))
    expect(r.returncode == 0 and json.loads(r.stdout)["ehk"] == "2", "dim1 ehk")

    r = run("ehk", "--ring", data("xy_plane.json"), "--n-max", "3")
    expect(r.returncode == 0 and json.loads(r.stdout)["ehk_riemann"][-1] == ["3", "15/8"], "ehk series")

    # Errors: JSON on stderr, nonzero exit.
    bad = os.path.join(tmp, "bad_ideal.json")
    with open(bad, "w") as f:
        f.write('{"generators":[[1,1,0]]}')
    r = run("estimate", "--ring", data("p2.json"), "--ideal", bad)
    expect(r.returncode == 1 and json.loads(r.stderr)["error"]["code"] == "not_m_primary", "not m-primary error")
    r = run("curve", "--d", "2", "--strata", "[[2,1]]")
    expect(r.returncode != 0 and json.loads(r.stderr)["error"]["code"] == "validation_error", "HN validation")
    r = run("segre", "--factors", '[{"type":"pspace","d":1}')
    expect(r.returncode == 2 and "error" in json.loads(r.stderr), "malformed JSON")
    r = run("pspace")
    expect(r.returncode == 2 and json.loads(r.stderr)["error"]["code"] == "usage", "usage error")

    # Determinism, including across thread counts.
    outs = []
    for i, threads in enumerate(["1", "4", "4"]):
        jp, cp = os.path.join(tmp, f"q{i}.json"), os.path.join(tmp, f"q{i}.csv")
        r = run("estimate", "--ring", data("quadric.json"), "--n-max", "4", "--grid", "16", "--json", jp,
                "--csv", cp, env={"HKD_THREADS": threads})
        expect(r.returncode == 0 and r.stdout == "", "estimate to files")
        with open(jp, "rb") as a, open(cp, "rb") as b:
            outs.append((a.read(), b.read()))
    expect(outs[0] == outs[1] == outs[2], "byte-identical reruns")

if failures:
    sys.exit(1)
print("cli smoke: all checks passed")
