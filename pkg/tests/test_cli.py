from __future__ import annotations

import json
import os

import pytest

from quivkit.cli import run

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


@pytest.fixture(autouse=True)
def _in_repo_root(monkeypatch):
    monkeypatch.chdir(REPO_ROOT)


def test_check_ok(capsys):
    assert run(["check", "algebras/lambda1.qv"]) == 0
    out = capsys.readouterr().out
    assert "dimension 18" in out


def test_check_rejects_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.qv"
    bad.write_text("field rationals\n\nquiver\n  vertices 1\n\nrelations\n  q*q\n")
    assert run(["check", str(bad)]) == 2
    assert "unknown arrow" in capsys.readouterr().err


def test_check_rejects_non_admissible(tmp_path, capsys):
    free_loop = tmp_path / "loop.qv"
    free_loop.write_text("field rationals\n\nquiver\n  vertices 1\n  arrow x 1 -> 1\n\nrelations\n")
    assert run(["check", str(free_loop), "--degree-cap", "6"]) == 2
    assert "not admissible" in capsys.readouterr().err


def test_missing_file(capsys):
    assert run(["info", "no_such_file.qv"]) == 2


def test_gb_text(capsys):
    assert run(["gb", "algebras/lambda1.qv"]) == 0
    out = capsys.readouterr().out
    assert "delta*alpha - alpha*epsilon" in out


def test_info_json(capsys):
    assert run(["info", "algebras/lambda2.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["dimension"] == 40
    assert payload["result"]["loewyLength"] == 8
    assert payload["schema"] == 1


def test_removable_commands(capsys):
    assert run(["removable", "--arrows", "beta", "algebras/lambda3.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["verdict"] == "OnlyLeftCertified"
    assert payload["result"]["pdRight"] == {"kind": "finite", "value": 1}

    assert run(["removable", "--arrows", "gamma", "algebras/lambda3.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["verdict"] == "NotRemovable"
    assert payload["result"]["squareZero"] is False


def test_removable_undecided_exits_3(capsys):
    code = run(["removable", "--arrows", "beta1", "algebras/fig2_m3.qv", "--json"])
    assert code == 3
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["verdict"] == "Undecided"
    assert payload["certified"] is False


def test_arv_json(capsys):
    assert run(["arv", "algebras/lambda3.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["eventuallyRemovable"] == ["alpha", "beta", "gamma"]
    assert payload["certified"] is True


def test_aiv_json(capsys):
    assert run(["aiv", "algebras/nakayama_c4.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["removed"] == ["a1"]


def test_redundant(capsys):
    assert run(["redundant", "algebras/nakayama_c4.qv"]) == 0
    assert "a1" in capsys.readouterr().out


def test_pd_json(capsys):
    assert run(
        ["pd", "--ideal", "beta", "--side", "left", "algebras/lambda3.qv", "--json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["verdict"]["kind"] == "infinite"
    assert payload["result"]["verdict"]["periodicity"] == [0, 1]
    assert payload["result"]["witness"]["seed"] == 0


def test_pd_right_betti(capsys):
    assert run(["pd", "--ideal", "beta", "--side", "right", "algebras/lambda1.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["result"]["betti"] == [{"3": 4}, {"1": 4}, {"2": 4}]


def test_irreducible(capsys):
    assert run(["irreducible", "algebras/lambda1.qv"]) == 0
    out = capsys.readouterr().out
    assert out.count("Holds") == 8


def test_extend_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "ext.qv"
    code = run(
        [
            "extend",
            "--from",
            "3",
            "--to",
            "2",
            "--gens",
            "beta, beta*zeta",
            "--name",
            "eta",
            "algebras/lambda3.qv",
            "-o",
            str(out_file),
        ]
    )
    assert code == 0
    from quivkit.parser import parse_spec, serialize

    emitted = serialize(parse_spec(out_file.read_text()))
    committed = serialize(parse_spec(open("algebras/lambda3p.qv").read()))
    assert emitted == committed
    assert "strongly_finite_right_pd: pass" in capsys.readouterr().out


def test_extend_sandwich_violation_exits_2(capsys):
    code = run(
        ["extend", "--from", "3", "--to", "2", "--gens", "zeta", "algebras/lambda3.qv"]
    )
    assert code == 2


def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["report", "algebras/lambda1.qv", "-o", str(a)]) == 0
    assert run(["report", "algebras/lambda1.qv", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "name",
    [
        "lambda0",
        "lambda1",
        "lambda2",
        "lambda3",
        "lambda3p",
        "lambda3pp",
        "a2",
        "semisimple3",
        "nakayama_c4",
        "fig2_m3",
        "fig2_m3_tilted",
    ],
)
def test_report_matches_golden(name, tmp_path):
    out = tmp_path / "report.json"
    assert run(["report", f"algebras/{name}.qv", "-o", str(out)]) == 0
    golden = open(f"tests/golden/report_{name}.json", "rb").read()
    assert out.read_bytes() == golden


def test_report_figures(tmp_path):
    figdir = tmp_path / "figs"
    assert run(["report", "algebras/lambda1.qv", "--figures-dir", str(figdir), "-o", str(tmp_path / "r.json")]) == 0
    assert (figdir / "corner_dims.csv").exists()
    assert (figdir / "corner_dims.png").stat().st_size > 0
    assert (figdir / "radical_filtration.png").stat().st_size > 0
    header = (figdir / "corner_dims.csv").read_text().splitlines()[0]
    assert header == "source,1,2,3"


def test_info_lambda0(capsys):
    assert run(["info", "algebras/lambda0.qv", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)["result"]
    assert payload["dimension"] == 2 and payload["loewyLength"] == 2


def test_thread_bound_env(monkeypatch, capsys):
    monkeypatch.setenv("QUIVKIT_THREADS", "4")
    assert run(["check", "algebras/lambda0.qv"]) == 0
    capsys.readouterr()
    monkeypatch.setenv("QUIVKIT_THREADS", "zero")
    assert run(["check", "algebras/lambda0.qv"]) == 2
    assert "QUIVKIT_THREADS" in capsys.readouterr().err


def test_pd_rejects_empty_ideal(capsys):
    assert run(["pd", "--ideal", " ", "algebras/lambda1.qv"]) == 2
    assert "at least one arrow" in capsys.readouterr().err
