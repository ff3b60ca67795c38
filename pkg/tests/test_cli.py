import io
import json
import subprocess
import sys

import pytest

from factorcrit import cli
from factorcrit.extremal import ExtremalParams, build_H
from factorcrit.graph6 import emit_graph6, parse_graph6
from test_verifier import RHO_COUNTEREXAMPLE


def run(argv, stdin=b""):
    """Run a subcommand in-process; returns (code, stdout, stderr)."""
    parser = cli.build_parser()
    args = parser.parse_args(argv)
    out, err = io.StringIO(), io.StringIO()
    fn = cli.COMMANDS[args.command]
    if args.command == "analyze":
        code = fn(args, out, err, io.BytesIO(stdin))
    else:
        code = fn(args, out, err)
    return code, out.getvalue(), err.getvalue()


def test_extremal_emits_graph6():
    code, out, _ = run(["extremal", "8", "1", "0"])
    assert code == 0
    assert parse_graph6(out.strip()) == build_H(ExtremalParams(8, 1, 0))


def test_extremal_bad_params():
    code, _, err = run(["extremal", "5", "2", "0"])
    assert code == 2 and "error" in err


def test_threshold_plain_and_record():
    code, out, _ = run(["threshold", "8", "1", "0", "rho"])
    assert code == 0
    assert "rho:" in out and "q:" not in out
    code, out, _ = run(["--format", "record", "threshold", "8", "1", "0"])
    rec = json.loads(out)
    assert rec["rho_root"] == pytest.approx(5.069517991915756, abs=1e-9)
    assert rec["q_root"] == pytest.approx(10.51360250437893, abs=1e-9)


def test_threshold_usage_and_consistency_codes():
    code, _, err = run(["threshold", "5", "2", "0"])
    assert code == 2 and "usage" in err
    code, _, err = run(["threshold", "8", "1", "0", "--tol", "-1"])
    assert code == 3 and "consistency" in err


def test_analyze_pipeline_with_errors():
    h = emit_graph6(build_H(ExtremalParams(8, 1, 0)))
    data = h + b"\n\n!!bad\nA_\n"
    code, out, err = run(["analyze", "--k", "0"], data)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2
    assert "kfc_matching=false" in lines[0] and "kind=tutte" in lines[0]
    assert "kfc_tutte=true" in lines[1]
    assert "line 3" in err and "warnings: 1" in err


def test_analyze_record_format():
    code, out, _ = run(["--format", "record", "analyze", "--k", "1"], b"Bw\n")
    rec = json.loads(out)
    assert rec["order"] == 3 and rec["size"] == 3
    assert rec["matching"]["verdict"] and rec["tutte"]["verdict"]
    assert rec["rho"] == pytest.approx(2.0, abs=1e-12)


def test_analyze_k_out_of_range_and_cap():
    code, out, err = run(["analyze", "--k", "5"], b"Bw\n")
    assert code == 0 and out == "" and "outside" in err
    code, out, _ = run(["analyze", "--k", "0", "--subset-cap", "1"], b"C~\n")
    assert "kfc_tutte=skipped" in out and "kfc_matching=true" in out


def test_analyze_missing_file():
    code, _, err = run(["analyze", "/nonexistent/file.g6"])
    assert code == 2 and "error" in err


def test_verify_theorem_pass():
    code, out, _ = run(["verify", "--theorem", "rho", "--n", "8", "--delta", "1", "--k", "0", "--count", "200"])
    assert code == 0 and "PASS" in out


def test_verify_theorem_counterexample_exit(tmp_path):
    path = tmp_path / "ce.g6"
    path.write_text(RHO_COUNTEREXAMPLE + "\n")
    argv = ["verify", "--theorem", "rho", "--n", "24", "--delta", "5", "--k", "0",
            "--corpus", "graph6", "--input", str(path)]
    code, out, _ = run(argv)
    assert code == 1 and RHO_COUNTEREXAMPLE in out
    code, out, _ = run(["--format", "record"] + argv)
    summary = json.loads(out.splitlines()[-1])["summary"]
    assert summary["counterexamples"] == [RHO_COUNTEREXAMPLE]


def test_verify_hypothesis_violation():
    code, _, err = run(["verify", "--theorem", "rho", "--n", "9", "--delta", "2", "--k", "1"])
    assert code == 2 and "need n >= 11" in err
    code, _, _ = run(["verify", "--theorem", "rho", "--n", "9", "--delta", "2", "--k", "1",
                      "--relaxed", "--count", "50"])
    assert code == 0
    code, _, err = run(["verify", "--theorem", "rho", "--delta", "2", "--k", "1"])
    assert code == 2 and "--n" in err


def test_verify_sharpness_and_lemma():
    code, out, _ = run(["verify", "--sharpness", "--n", "11", "--delta", "2", "--k", "1"])
    assert code == 0 and "PASS" in out
    code, out, _ = run(["verify", "--lemma", "h2", "--delta", "1..2", "--span", "2"])
    assert code == 0 and "violations=0" in out
    code, out, _ = run(["verify", "--lemma", "h1", "--delta", "2", "--span", "1"])
    assert code == 1 and "FAIL" in out


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as info:
        cli.main(["threshold", "x"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--delta", "a..b", "--lemma", "h1"])


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "factorcrit", "extremal", "8", "1", "0"],
        capture_output=True, text=True, check=True,
    )
    g6 = out.stdout.strip()
    res = subprocess.run(
        [sys.executable, "-m", "factorcrit", "analyze", "--k", "0"],
        input=g6 + "\n", capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert res.stdout.startswith(g6) and "kfc_tutte=false" in res.stdout


def test_analyze_complete_graph_record():
    code, out, _ = run(["--format", "record", "analyze", "--k", "2"], b"C~\n")
    rec = json.loads(out)
    assert code == 0
    assert rec["rho"] == pytest.approx(3.0, abs=1e-12)
    assert rec["q"] == pytest.approx(6.0, abs=1e-12)
    assert rec["matching"]["verdict"] and rec["tutte"]["verdict"]


def test_analyze_empty_input():
    assert run(["analyze"], b"") == (0, "", "")


def test_documented_invocations():
    assert run(["threshold", "5", "3", "0"])[0] == 2
    code, out, _ = run(["threshold", "12", "2", "0", "q"])
    assert code == 0 and "q:" in out
    argv = ["verify", "--theorem", "rho", "--n", "8", "--delta", "1", "--k", "0",
            "--corpus", "random", "--count", "200", "--seed", "1"]
    first = run(argv)
    assert first[0] == 0 and run(argv) == first
    assert run(["verify", "--sharpness", "--n", "8", "--delta", "1", "--k", "0"])[0] == 0


def test_h1_grid_over_small_delta_reports_violation():
    # the delta = 2 grid contains (n, s) = (12, 5), where rho(H_s) exceeds rho(H)
    code, out, _ = run(["verify", "--lemma", "h1", "--delta", "1..2"])
    assert code == 1
    assert '"n": 12' in out and '"s": 5' in out
