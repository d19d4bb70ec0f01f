import io
import json
import os
import subprocess
import sys

import pytest

from phg import catalog
from phg.cli import main
from phg.errors import InvariantError, ParseError, ValidationError
from phg.io import dumps, load, loads

NAMES = catalog.names()


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_has_expected_entries():
    fams = [n for n in NAMES if n.startswith("family_")]
    assert len(fams) == 9
    assert {"gh_example", "h3", "a3", "t_h3_0", "t_a3_det"} <= set(NAMES)


@pytest.mark.parametrize("name", NAMES)
def test_canonical_round_trip(name):
    text = catalog.raw(name)
    assert dumps(loads(text)) == text


@pytest.mark.parametrize("name", NAMES)
def test_catalog_expected_blocks(name):
    doc = catalog.get(name)
    rep = catalog.run_analysis(doc)
    assert catalog.check_expected(doc, rep) == []


def test_gh_document_shape():
    doc = catalog.get("gh_example")
    assert doc.ambient_dim == 3 and len(doc.basis) == 4
    assert doc.labels == ["S", "T", "U", "V"]


def test_parse_errors_carry_locations():
    d = json.loads(catalog.raw("family_B"))
    d["basis"][0][0][0] = "1/0"
    with pytest.raises(ParseError) as exc:
        loads(json.dumps(d))
    assert exc.value.field == "basis[0][0][0]"
    d["basis"][0][0][0] = 1.5
    with pytest.raises(ParseError):
        loads(json.dumps(d))
    with pytest.raises(ParseError) as exc:
        loads('{\n  "schema": 1,\n  "name": }')
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        loads(json.dumps({"schema": 1, "name": "x", "kind": "abstract", "bogus": 1}))
    with pytest.raises(ParseError):
        loads(json.dumps({"schema": 2, "name": "x", "kind": "abstract"}))
    with pytest.raises(ParseError):
        loads(json.dumps({"schema": 1, "name": "x", "kind": "metric", "structure_constants": [[[0]]]}))


def test_shape_errors_are_validation_errors():
    d = json.loads(catalog.raw("family_B"))
    d["ambient_dim"] = 3
    with pytest.raises(ValidationError):
        loads(json.dumps(d))


def test_stored_constants_must_match_matrices():
    d = json.loads(catalog.raw("family_B"))
    d["structure_constants"] = [[["0", "0"], ["0", "1"]], [["0", "-1"], ["0", "0"]]]
    with pytest.raises(ValidationError):
        loads(json.dumps(d)).build()


def test_load_from_path(tmp_path):
    p = tmp_path / "h3.json"
    p.write_text(catalog.raw("h3"))
    assert load(str(p)).name == "h3"
    with pytest.raises(ValidationError):
        load(str(tmp_path / "missing.json"))


def test_cli_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:family_B")
    assert code == 0
    assert "verdict: NotTransitive" in out
    assert "delta: x" in out
    assert "open orbits: 2 (half-planes)" in out


def test_cli_analyze_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "analyze", "catalog:gh_example", "--format", "json")
    _, b, _ = run(capsys, "analyze", "catalog:gh_example", "--format", "json")
    assert a == b
    rep = json.loads(a)
    assert rep["verdict"] == "Transitive" and rep["relative_class_vanishes"] is False


def test_cli_pipeline_through_stdin(capsys, monkeypatch):
    _, text, _ = run(capsys, "catalog", "gh_example")
    code, out, _ = run(capsys, "analyze", "-", stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and "verdict: Transitive" in out


def test_cli_analyze_at_point(capsys):
    code, out, _ = run(capsys, "analyze", "catalog:family_B", "--at", "1,0", "--format", "json")
    assert code == 0 and json.loads(out)["stabilizer_dim"] == 0


def test_cli_bad_input_exit_code(capsys, tmp_path):
    d = json.loads(catalog.raw("family_B"))
    d["basis"][1][0][0] = "1/0"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 1 and "basis[1][0][0]" in err
    code, _, err = run(capsys, "analyze", "catalog:nope")
    assert code == 1


def test_cli_invariant_failure_exit_code(capsys, monkeypatch):
    def boom(*a, **k):
        raise InvariantError("forced")
    monkeypatch.setattr(catalog, "run_analysis", boom)
    code, _, err = run(capsys, "analyze", "catalog:family_B")
    assert code == 2 and "forced" in err


def test_cli_cohomology(capsys):
    code, out, _ = run(capsys, "cohomology", "catalog:gh_example", "--h", "4")
    assert code == 0
    assert "dim g/h: 3" in out and "H^3: 1" in out and "betti: 1, 2, 2, 1, 0" in out
    code, _, _ = run(capsys, "cohomology", "catalog:gh_example", "--h", "9")
    assert code == 1
    code, _, _ = run(capsys, "cohomology", "catalog:h3", "--lambda", "0,0,1")
    assert code == 1


def test_cli_construct_coadjoint(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "coadjoint", "catalog:h3")
    assert code == 0 and "signature: (3,3)" in out and "flat biinvariant: yes" in out
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "construct", "coadjoint", "catalog:a3", "--three-form", "det",
                       "-o", str(target))
    assert code == 0
    doc = load(str(target))
    assert doc.kind == "metric" and len(doc.labels) == 6
    code, out, _ = run(capsys, "construct", "coadjoint", "catalog:h3", "--three-form", "det")
    assert code == 0
    code, _, _ = run(capsys, "construct", "coadjoint", "catalog:family_C")
    assert code == 1


def test_cli_construct_tube(capsys):
    code, out, _ = run(capsys, "construct", "tube", "catalog:family_B")
    assert code == 0
    assert "invariant k: yes" in out and "invariant omega: yes" in out
    code, out, _ = run(capsys, "construct", "tube", "catalog:family_B", "--format", "json")
    doc = loads(out)
    assert doc.ambient_dim == 4 and set(doc.forms) == {"J", "k", "omega"}


def test_affinize_after_coadjoint(capsys, tmp_path):
    t = tmp_path / "t.json"
    assert run(capsys, "construct", "coadjoint", "catalog:h3", "-o", str(t))[0] == 0
    code, out, _ = run(capsys, "construct", "affinize", str(t))
    assert code == 0 and "invariant form: yes" in out
    a = tmp_path / "a.json"
    assert run(capsys, "construct", "affinize", str(t), "-o", str(a))[0] == 0
    code, out, _ = run(capsys, "analyze", str(a))
    assert code == 0 and "verdict: Transitive" in out and "invariant form: yes" in out


def test_cli_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and len(out.strip().splitlines()) == len(NAMES)


def test_cli_catalog_all_parallel(capsys):
    code, out, _ = run(capsys, "catalog", "--all", "--jobs", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert [l.split(":")[0] for l in lines] == NAMES
    assert all(l.endswith("ok") for l in lines)


def test_seed_environment_variable(capsys, monkeypatch):
    monkeypatch.setenv("PHG_SEED", "5")
    code, a, _ = run(capsys, "analyze", "catalog:family_E", "--format", "json")
    assert code == 0
    monkeypatch.setenv("PHG_SEED", "oops")
    code, _, err = run(capsys, "analyze", "catalog:family_E")
    assert code == 1 and "PHG_SEED" in err


def test_console_script_runs():
    env = dict(os.environ, PHG_SEED="3")
    res = subprocess.run([sys.executable, "-m", "phg.cli", "catalog", "--all", "--jobs", "1"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0, res.stdout + res.stderr


def test_run_analysis_examples():
    e = catalog.run_analysis("catalog:family_E")
    assert e["prehomogeneous"] and e["delta"] == "-x^2 - y^2"
    assert e["simply_transitive"] is False and e["linear"] is True
    gh = catalog.run_analysis("catalog:gh_example")
    assert gh["verdict"] == "Transitive"
    assert gh["absolute_class_vanishes"] is True and gh["relative_class_vanishes"] is False
    u = catalog.run_analysis("catalog:family_U")
    assert u["simply_transitive"] is True and u["delta"] == "1"
