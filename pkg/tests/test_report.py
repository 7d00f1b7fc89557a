import json

import pytest

from massey_torus import cli, report as rp
from massey_torus.polyalg import Matrix, Poly
from massey_torus.random_instances import random_l_presentation, random_monodromy
from massey_torus.report import (
    AnalysisInput,
    InputError,
    Report,
    analyze,
    builtin_fixture,
    input_to_json,
    parse_input,
    verdicts,
)

x = Poly.x()


def run_cli(args, tmp_path=None):
    import io
    buf = io.StringIO()
    code = cli.main(args, out=buf)
    return code, buf.getvalue()


def test_heisenberg_report():
    r = analyze(builtin_fixture("heisenberg"))
    row = r.row(1, x - 1)
    assert row["J"] == 2 and row["mu"] == 2 and row["sigma"] == 3 and row["certified"]
    assert r.betti == [1, 2, 2, 1]
    assert r.verdicts["not_formal"]["value"] is True
    assert {"degree": 1, "factor": ["-1", "1"], "block_size": 2} in r.verdicts["not_formal"]["witnesses"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_surface_report(n):
    r = analyze(builtin_fixture("surface", n))
    assert r.betti == [1, 1, 1, 1]
    assert r.verdicts["not_formal"]["value"] is False
    v = r.verdicts["not_strongly_formal"]
    assert v["value"] is True
    assert any(w["factor"] == ["1", "1"] for w in v["witnesses"])
    assert r.row(1, x + 1)["J"] == 2


def test_surface_fixture_validation():
    with pytest.raises(InputError):
        builtin_fixture("surface", 0)
    with pytest.raises(InputError):
        builtin_fixture("torus")


def test_verdict_examples():
    assert rp.verdicts_for([])["not_formal"]["value"] is False
    rows = [{"degree": 1, "factor": ["1", "1"], "J": 3}]
    v = rp.verdicts_for(rows)
    assert v["not_formal"]["value"] is False and v["not_strongly_formal"]["value"] is True


def test_identity_monodromy_is_unobstructed():
    inp = AnalysisInput("monodromy", [Matrix([[1]]), Matrix.identity(2), Matrix([[1]])])
    r = analyze(inp)
    assert not r.verdicts["not_formal"]["value"] and not r.verdicts["not_strongly_formal"]["value"]
    assert r.betti == [1, 3, 3, 1]


def test_determinism_and_round_trip(rng):
    for _ in range(5):
        inp = AnalysisInput("monodromy", random_monodromy(rng, max_dim=4))
        a, b = analyze(inp), analyze(inp)
        assert a.dumps() == b.dumps()
        assert Report.from_json(a.dumps()) == a
        again = analyze(parse_input(json.loads(json.dumps(input_to_json(inp)))))
        assert again == a


def test_verdict_monotone_under_more_eigenvalues(rng):
    for _ in range(5):
        mats = random_monodromy(rng, max_dim=4)
        full = analyze(AnalysisInput("monodromy", mats))
        sub = analyze(AnalysisInput("monodromy", mats, eigenvalues=[x - 1]))
        for key in ("not_formal", "not_strongly_formal"):
            assert sub.verdicts[key]["value"] <= full.verdicts[key]["value"]
        # rows shared with the full analysis are unchanged; extra rows are non-eigenvalues
        for row in sub.rows:
            if any(r["factor"] == row["factor"] for r in full.rows):
                assert row in full.rows
            else:
                assert row["J"] == 0 and row["mu"] == 0


def test_l_presentation_mode(rng):
    for _ in range(5):
        mods = random_l_presentation(rng)
        r = analyze(AnalysisInput("l_presentation", mods))
        for row in r.rows:
            assert row["J"] == row["mu"]


def test_parse_fiber_complex():
    data = {"ranks": [1, 1], "boundaries": [[], [[0]]], "monodromy": [[[1]], [[-1]]]}
    r = analyze(parse_input(data))
    assert r.betti == [1, 1, 0]
    assert r.row(1, x + 1)["J"] == 1


def test_parse_errors():
    with pytest.raises(InputError):
        parse_input([1, 2])
    with pytest.raises(InputError):
        parse_input({"nothing": 1})
    with pytest.raises(InputError):
        parse_input({"monodromy_on_cohomology": {"0": [[1, 2]]}})
    with pytest.raises(InputError):
        parse_input({"monodromy_on_cohomology": {"0": [[1]]}}, eigenvalues=["0"])
    with pytest.raises(InputError):
        parse_input({"monodromy_on_cohomology": {"0": [[1]], "2": [[1]]}})
    with pytest.raises(InputError):
        parse_input({"ranks": [1, 1], "boundaries": [[], [[1]]], "monodromy": [[[2]], [[1]]]})


def test_explicit_reducible_factor_rejected():
    with pytest.raises(ValueError):
        analyze(AnalysisInput("monodromy", [Matrix([[1]])], eigenvalues=[x ** 2 - 1]))


def test_extension_eigenvalue():
    from massey_torus.lmodules import companion
    C = companion((x ** 2 + x + 1) ** 2)
    data = {"monodromy_on_cohomology": {"0": [[1]], "1": C.to_json()},
            "eigenvalues": [{"min_poly": ["1", "1", "1"], "element": ["0", "1"]}]}
    r = analyze(parse_input(data))
    rows = [row for row in r.rows if row["degree"] == 1]
    assert rows[0]["J"] == 2 and rows[0]["mu"] == 2


def test_table_output():
    text = analyze(builtin_fixture("heisenberg")).to_table()
    assert "not_formal: True" in text and "betti: (1, 2, 2, 1)" in text


# CLI ----------------------------------------------------------------------

def test_cli_example_json():
    code, out = run_cli(["example", "heisenberg", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["betti"] == [1, 2, 2, 1] and data["verdicts"]["not_formal"]["value"] is True


def test_cli_emit_input_round_trip(tmp_path):
    code, out = run_cli(["example", "surface", "--n", "2", "--emit-input"])
    assert code == 0
    path = tmp_path / "surface.json"
    path.write_text(out)
    code, table = run_cli(["analyze", "--input", str(path)])
    assert code == 0 and "not_strongly_formal: True" in table
    _, direct = run_cli(["example", "surface", "--n", "2", "--format", "json"])
    _, via_file = run_cli(["analyze", "--input", str(path), "--format", "json"])
    assert json.loads(direct)["rows"] == json.loads(via_file)["rows"]


def test_cli_eigenvalue_file(tmp_path):
    inp = tmp_path / "in.json"
    inp.write_text(json.dumps({"monodromy_on_cohomology": {"0": [[1]], "1": [[1, 1], [0, 1]], "2": [[1]]}}))
    eig = tmp_path / "eig.json"
    eig.write_text(json.dumps(["1", {"min_poly": ["1", "0", "1"], "element": ["0", "1"]}]))
    code, out = run_cli(["analyze", "--input", str(inp), "--eigenvalues", str(eig), "--format", "json"])
    assert code == 0
    factors = {json.dumps(r["factor"]) for r in json.loads(out)["rows"]}
    assert json.dumps(["-1", "1"]) in factors and len(factors) == 2


def test_cli_input_errors(tmp_path):
    assert run_cli(["analyze", "--input", str(tmp_path / "missing.json")])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(["analyze", "--input", str(bad)])[0] == 2
    sing = tmp_path / "sing.json"
    sing.write_text(json.dumps({"monodromy_on_cohomology": {"0": [[0]]}}))
    assert run_cli(["analyze", "--input", str(sing)])[0] == 2


def test_cli_integrity_error(monkeypatch):
    class Fake:
        nu = 99
    monkeypatch.setattr(rp, "jordan_profile", lambda A, p: Fake())
    assert run_cli(["example", "heisenberg"])[0] == 3


def test_cli_selfcheck():
    code, out = run_cli(["selfcheck", "--seed", "3", "--count", "3"])
    assert code == 0 and "3/3 instances passed" in out


def test_verdicts_helper():
    r = analyze(builtin_fixture("heisenberg"))
    assert verdicts(r) == r.verdicts
