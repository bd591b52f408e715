import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftmac.algebra import ONE, T, XPolynomial
from shiftmac.cli import main
from shiftmac.combinatorics import enumerate_partitions
from shiftmac.jack import jack_pstar
from shiftmac.render import from_json, render, to_json, to_latex
from shiftmac.shifted import pstar


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_shifted_text(capsys):
    code, out, _ = run(["compute", "shifted", "--mu", "1", "--n", "2", "--method", "interp", "--format", "text"], capsys)
    assert code == 0
    assert out.strip() == "x1 + (1/t)*x2 + ((-t - 1)/t)"


def test_compute_shifted_matches_factored_form(capsys):
    # expanded output equals (x1 - 1) + t^-1*(x2 - 1)
    _, out, _ = run(["compute", "shifted", "--mu", "1", "--n", "2", "--method", "interp", "--format", "json"], capsys)
    x1, x2 = XPolynomial.var(2, 0), XPolynomial.var(2, 1)
    one = XPolynomial.constant(2, ONE)
    assert from_json(out) == (x1 - one) + (x2 - one) * (ONE / T)


def test_compute_macdonald_json(capsys):
    code, out, _ = run(["compute", "macdonald", "--mu", "2", "--n", "2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    basis = {b["partition"]: b["coeff"] for b in doc["m_basis"]}
    assert basis["2"] == {"num": "1", "den": "1"}
    # (1 + q)(1 - t)/(1 - q t), normalized with the lead of the denominator positive
    assert basis["1,1"] == {"num": "-1+1*t^1+-1*q^1+1*q^1*t^1", "den": "-1+1*q^1*t^1"}
    assert doc["parameters"] == ["q", "t"] and doc["vars"] == 2


def test_compute_jack_rational_theta(capsys):
    code, out, _ = run(["compute", "jack", "--mu", "1,1", "--n", "2", "--theta", "1/2", "--format", "text"], capsys)
    assert code == 0
    assert out.strip() == "x1*x2 + 1/2*x2"


@pytest.mark.parametrize("method", ["interp", "comb", "recursion"])
def test_shifted_methods_agree(method, capsys):
    code, out, _ = run(["compute", "shifted", "--mu", "2,1", "--n", "2", "--method", method, "--format", "json"], capsys)
    assert code == 0
    assert from_json(out) == pstar((2, 1), 2).poly


def test_eval_examples(capsys):
    assert run(["eval", "shifted", "--mu", "1", "--at", "1"], capsys)[1].strip() == "q - 1"
    assert run(["eval", "shifted", "--mu", "2", "--at", "1"], capsys)[1].strip() == "0"
    assert run(["eval", "jack", "--theta", "1", "--mu", "2", "--at", "2"], capsys)[1].strip() == "2"


def test_eval_with_theta_specialization(capsys):
    code, out, _ = run(["eval", "shifted", "--mu", "1,1", "--at", "1,1", "--theta", "1"], capsys)
    assert code == 0
    # H((1,1)) = t^-2 (q t - 1)(q - 1) at t = q
    assert out.strip() == "(q^3 - q^2 - q + 1)/q^2"


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "shifted", "--mu", "x"],
        ["compute", "shifted", "--mu", "1,2"],
        ["compute", "jack", "--mu", "1"],
        ["compute", "shifted", "--mu", "1,1,1", "--n", "2"],
        ["compute", "macdonald", "--mu", "1", "--method", "comb"],
        ["compute", "macdonald", "--mu", "1", "--theta", "1/2"],
        ["eval", "shifted", "--mu", "1", "--at", "1,1,1", "--n", "2"],
        ["verify", "theorem1", "--theta", "1/2"],
        ["verify", "coherence", "--theta", "symbolic"],
        ["verify", "bogus"],
        ["verify", "theorem1", "--n", "zero"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert "error" in err


def test_verify_theorem1(capsys):
    code, out, err = run(["verify", "theorem1", "--max-mu-size", "3", "--n", "3", "--theta", "1,2"], capsys)
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert len(lines) == 12 and all(r["status"] == "pass" for r in lines)
    assert "12/12" in err


def test_verify_vanishing_symbolic(capsys):
    code, out, _ = run(["verify", "vanishing", "--max-mu-size", "4", "--n", "4", "--theta", "symbolic"], capsys)
    assert code == 0
    assert len(out.splitlines()) == len(enumerate_partitions(4, 4))


def test_verify_branching_reports(capsys):
    code, out, _ = run(["verify", "branching", "--max-mu-size", "4"], capsys)
    assert code == 0
    mus = [json.loads(line)["instance"]["mu"] for line in out.splitlines()]
    assert len(mus) == len(enumerate_partitions(4, 4))


@pytest.mark.parametrize(
    "identity", ["theorem2", "duality", "powersum-duality", "lemmas", "coherence", "equivalence"]
)
def test_verify_other_identities(identity, capsys):
    code, _, _ = run(["verify", identity, "--max-mu-size", "2", "--jobs", "2"], capsys)
    assert code == 0


def test_verify_failure_exit_code(monkeypatch, capsys):
    from shiftmac import cli, report

    def broken(mu, n, theta):
        return report.VerificationReport("theorem1", {"mu": mu.text()}, "fail", {"monomial": [0, 0]})

    monkeypatch.setattr(cli.macdonald, "verify_theorem_I", broken)
    code, out, err = run(["verify", "theorem1", "--max-mu-size", "1", "--n", "2", "--theta", "1"], capsys)
    assert code == 1
    assert all(json.loads(line)["witness"] for line in out.splitlines())
    assert "FAIL" in err


def test_verify_output_deterministic(capsys):
    argv = ["verify", "duality", "--max-mu-size", "2", "--jobs", "4", "--no-timing"]
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second


def test_compute_output_deterministic(capsys):
    argv = ["compute", "shifted", "--mu", "2,1", "--n", "3", "--format", "json"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "p.json"
    code = main(["compute", "jack", "--mu", "2", "--n", "2", "--theta", "symbolic", "--format", "json", "--out", str(target)])
    assert code == 0
    assert from_json(target.read_text()) == jack_pstar((2,), 2, "symbolic").poly


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "shiftmac", "eval", "shifted", "--mu", "1", "--at", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "q - 1"


# -- rendering ---------------------------------------------------------------

shapes = st.sampled_from(enumerate_partitions(3, 3))


@given(shapes, st.integers(0, 1))
def test_json_round_trip_shifted(mu, extra):
    n = max(len(mu), 1) + extra
    poly = pstar(mu, n).poly
    text = to_json(poly)
    assert from_json(text) == poly
    assert to_json(from_json(text)) == text


@given(shapes, st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2), "symbolic"]))
def test_json_round_trip_jack(mu, theta):
    poly = jack_pstar(mu, max(len(mu), 1) + 1, theta).poly
    text = to_json(poly)
    assert from_json(text) == poly
    assert to_json(from_json(text)) == text


def test_json_terms_descending():
    doc = json.loads(to_json(pstar((2,), 2).poly))
    exps = [t["exps"] for t in doc["terms"]]
    assert exps == sorted(exps, reverse=True)


def test_latex_rendering():
    assert to_latex(pstar((1,), 2).poly) == r"x_{1} + \frac{1}{t} x_{2} + \frac{-t - 1}{t}"
    assert to_latex(jack_pstar((1, 1), 2, "symbolic").poly) == r"x_{1} x_{2} + \theta x_{2}"
    assert to_latex(jack_pstar((1, 1), 2, Fraction(1, 2)).poly) == r"x_{1} x_{2} + \frac{1}{2} x_{2}"
    with pytest.raises(ValueError):
        render(pstar((1,), 1).poly, "yaml")
