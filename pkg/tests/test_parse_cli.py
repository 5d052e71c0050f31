import json
import random
import subprocess
import sys

import pytest

from ccr_hopf.algebra import (
    Presentation,
    adjoint,
    normal_form,
    random_expr,
)
from ccr_hopf.cli import main
from ccr_hopf.exprparse import ParseError, expr_to_text, parse_expr, scalar_text
from ccr_hopf.scalars import IMAG, KAPPA, S_PARAM, Scalar


def test_grammar_examples():
    e = parse_expr("pi(0)*phi(0) - phi(0)*pi(0)")
    assert len(e.terms) == 2
    assert all(len(w) == 2 for w in e.terms)

    e = parse_expr("i*kappa*I")
    ((word, coeff),) = e.terms.items()
    assert word == ((0, 0),)
    assert coeff == IMAG * KAPPA

    e = parse_expr("ap(1)^2")
    ((word, coeff),) = e.terms.items()
    assert word == ((5, 1), (5, 1))
    assert coeff.is_one()


def test_whitespace_and_numbers():
    assert parse_expr("  phi( 2 ) * 3/4 ") == parse_expr("3/4*phi(2)")
    assert parse_expr("3.5*one") == parse_expr("7/2*one")
    assert parse_expr("0") == parse_expr("phi(0) - phi(0)")
    # unary minus binds the whole leading term
    assert parse_expr("-2*phi(0)") == -parse_expr("2*phi(0)")


def test_negative_exponents_scalars_only():
    e = parse_expr("s^-2*Kinv")
    ((word, coeff),) = e.terms.items()
    assert coeff == S_PARAM ** -2
    with pytest.raises(ParseError):
        parse_expr("phi(0)^-1")
    # a parenthesized scalar subexpression is an acceptable base
    e = parse_expr("(1 + s)^-1 * I")
    ((_, coeff),) = e.terms.items()
    assert coeff == (Scalar.one() + S_PARAM) ** -1


def test_parse_error_positions():
    cases = [
        ("phi(0", 5),
        ("2 +", 3),
        ("phi(x)", 4),
        ("wibble", 0),
        ("1 ) 2", 2),
        ("phi(0) $ 2", 7),
    ]
    for text, pos in cases:
        with pytest.raises(ParseError) as err:
            parse_expr(text)
        assert err.value.position == pos


def test_round_trip_random():
    rng = random.Random(20240817)
    presentations = [
        Presentation(),
        Presentation(variant="deformed-strict"),
        Presentation(variant="deformed-strict", basis="ladder"),
        Presentation(variant="deformed-collapsed"),
    ]
    for k in range(240):
        p = presentations[k % len(presentations)]
        e = random_expr(rng, p, max_degree=4, modes=3)
        for cand in (e, normal_form(e, p), adjoint(e)):
            assert parse_expr(expr_to_text(cand)) == cand


def test_scalar_text_rational_function():
    r = (Scalar.one() + S_PARAM) * (S_PARAM ** 2 - Scalar.rational(3)).inverse()
    text = scalar_text(r)
    assert "/" not in text.replace("1/", "", 0) or "^-1" in text
    parsed = parse_expr(text)
    ((word, coeff),) = parsed.terms.items()
    assert word == ()
    assert coeff == r


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out.strip() else None
    return code, doc, captured.err


def test_cli_normalize_deformed(capsys):
    code, doc, _ = run_cli(
        capsys, ["normalize", "pi(0)*phi(0)", "--variant", "deformed"]
    )
    assert code == 0
    assert doc["passed"] is True
    assert doc["results"]["normal_form"]["text"] == "-i*kappa*I + phi(0)*pi(0)"
    # constant coefficients serialize as rational strings
    coeffs = {t["word"]: t["coeff"] for t in doc["results"]["normal_form"]["terms"]}
    assert coeffs["phi(0)*pi(0)"] == {"im": "0", "re": "1"}
    assert coeffs["I"] == "-i*kappa"


def test_cli_normalize_numeric(capsys):
    code, doc, _ = run_cli(capsys, ["normalize", "pi(0)*phi(0)", "--numeric"])
    assert code == 0
    rows = doc["results"]["normal_form_numeric"]
    by_word = {r["word"]: r["coeff"] for r in rows}
    assert by_word["I"] == {"im": -1.0, "re": 0.0}


def test_cli_commutator_with_gram(tmp_path, capsys):
    gram = tmp_path / "gram.json"
    gram.write_text(json.dumps([[1, "1/2"], ["1/2", 2]]))
    code, doc, _ = run_cli(
        capsys, ["commutator", "pi(0)", "phi(1)", "--gram", str(gram)]
    )
    assert code == 0
    ((term,),) = (doc["results"]["commutator"]["terms"],)
    assert term["word"] == "I"
    assert term["coeff"] == {"im": "-1/2", "re": "0"}


def test_cli_convert_round_trip(capsys):
    code, doc, _ = run_cli(capsys, ["convert", "ap(0)", "--to", "phi-pi"])
    assert code == 0
    text = doc["results"]["converted"]["text"]
    back = normal_form(parse_expr(text), Presentation(basis="ladder"))
    assert back == parse_expr("ap(0)")


def test_cli_hopf_check_default_passes(capsys):
    code, doc, _ = run_cli(capsys, ["hopf-check", "--flavor", "classical", "--degree", "3"])
    assert code == 0
    axioms = [r["axiom"] for r in doc["results"]["reports"]]
    assert axioms == [
        "coassociativity",
        "counit",
        "antipode",
        "cocommutativity",
        "multiplicativity",
    ]
    assert all(r["status"] == "pass" for r in doc["results"]["reports"])


def test_cli_hopf_check_witness_failure(capsys):
    code, doc, _ = run_cli(
        capsys,
        [
            "hopf-check",
            "--flavor",
            "deformed",
            "--variant",
            "deformed",
            "--degree",
            "1",
            "--checks",
            "cocommutativity",
        ],
    )
    assert code == 1
    report = doc["results"]["reports"][0]
    assert report["status"] == "fail"
    witnesses = {f["witness"] for f in report["failures"]}
    assert "phi(0)" in witnesses


def test_cli_exit_codes(capsys):
    code, _, err = run_cli(capsys, ["normalize", "phi(0"])
    assert code == 2 and "position 5" in err
    code, _, err = run_cli(capsys, ["normalize", "phi(0)", "--q", "2.0"])
    assert code == 2 and "--c" in err
    code, _, err = run_cli(capsys, ["normalize", "K"])  # K needs a deformed variant
    assert code == 2
    code, _, err = run_cli(capsys, ["measure", "cocycle", "--kmat", "/no/such/file.json"])
    assert code == 2


def test_cli_fock_genfun_check(capsys):
    code, doc, _ = run_cli(
        capsys, ["fock", "genfun", "--d", "1", "--nmax", "20", "--v", "1.0"]
    )
    assert code == 0
    r = doc["results"]
    assert abs(r["value_re"] - r["expected"]) <= r["tolerance"]
    assert r["error"] < 1e-8


def test_cli_env_seed_override(capsys, monkeypatch):
    monkeypatch.setenv("CCR_HOPF_SEED", "7")
    code, doc, _ = run_cli(capsys, ["measure", "bochner", "--d", "2", "--samples", "5000"])
    assert code == 0
    assert doc["config"]["seed"] == 7
    monkeypatch.setenv("CCR_HOPF_SEED", "not-a-number")
    code, _, err = run_cli(capsys, ["measure", "bochner", "--d", "2"])
    assert code == 2 and "CCR_HOPF_SEED" in err


def test_cli_reports_reproducible(capsys):
    argv = ["fock", "transfer", "--d", "2", "--nmax", "8", "--seed", "11"]
    code1, doc1, _ = run_cli(capsys, argv)
    code2, doc2, _ = run_cli(capsys, argv)
    assert code1 == code2 == 0
    assert doc1 == doc2
    argv = ["measure", "weyl", "--d", "2", "--count", "25"]
    _, doc1, _ = run_cli(capsys, argv)
    _, doc2, _ = run_cli(capsys, argv)
    assert doc1 == doc2


def test_cli_measure_pd_and_scale(capsys):
    code, doc, _ = run_cli(capsys, ["measure", "pd-check", "--d", "2", "--scale", "1.3"])
    assert code == 0
    assert doc["results"]["min_eigenvalue"] >= -1e-10


def test_cli_subprocess_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "ccr_hopf.cli", "normalize", "one"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["results"]["normal_form"]["text"] == "one"
    assert "ok:" in proc.stderr
