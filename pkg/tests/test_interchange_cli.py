import json

import pytest

from lateq import analyze_equilibria, check_unary_property
from lateq.cli import main
from lateq.instances import eg412_zhou, example_function, modular_not_single
from lateq.interchange import InputError, load_workspace, workspace_doc


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_function_round_trip():
    f = example_function("w")
    ws = load_workspace(json.loads(json.dumps(workspace_doc(w=f))))
    g = ws.functions["w"]
    assert g.as_dict() == f.as_dict()
    assert bool(check_unary_property(g, "PSM"))


def test_game_round_trip_keeps_equilibria():
    g = eg412_zhou(4)
    ws = load_workspace(json.loads(json.dumps(workspace_doc(G=g))))
    assert len(analyze_equilibria(ws.games["G"]).equilibria) == 15


def test_twovar_round_trip():
    f = modular_not_single()
    ws = load_workspace(json.loads(json.dumps(workspace_doc(t=f))))
    t = ws.twovar["t"]
    assert (t("0", "0"), t("0", "1"), t("1", "0"), t("1", "1")) == (0, 0, 1, 0)


def test_named_lattices_resolve():
    ws = load_workspace({"functions": {"f": {"lattice": "chain3", "codomain": 2,
                                             "values": {"0": 0, "1": 1, "2": 1}}}})
    assert len(ws.functions["f"].domain) == 3


@pytest.mark.parametrize("doc,where", [
    ({"lattices": {"L": {"elements": ["a", "b"]}}}, "lattices.L"),
    ({"functions": {"f": {"lattice": "nowhere", "codomain": 2, "values": {}}}}, "functions.f"),
    ({"functions": {"f": {"lattice": "diamond", "codomain": 2, "values": {"z": 0}}}},
     "functions.f"),
    ({"lattices": {"L": {"elements": ["0", "a", "b"], "covers": [["0", "a"], ["0", "b"]]}}},
     "lattices.L"),
])
def test_input_errors_locate_problem(doc, where):
    with pytest.raises(InputError) as exc:
        load_workspace(doc)
    assert exc.value.where == where


def test_cli_check_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--object", "diamond_f", "--property", "MEET_SUPEREXT")
    assert code == 0 and "holds" in out
    cert = tmp_path / "c.json"
    code, out, _ = run(capsys, "check", "--object", "diamond_f", "--property", "JOIN_SUPEREXT",
                       "--certificate", str(cert))
    assert code == 1 and "witness: (a, b)" in out
    code, out, _ = run(capsys, "check", "--input", str(cert))
    assert code == 1 and "re-checked" in out


def test_cli_tampered_certificate_is_rejected(capsys, tmp_path):
    cert = tmp_path / "c.json"
    run(capsys, "check", "--object", "diamond_f", "--property", "JOIN_SUPEREXT",
        "--certificate", str(cert))
    doc = json.loads(cert.read_text())
    doc["certificate"]["witness"] = ["0", "1"]
    cert.write_text(json.dumps(doc))
    code, _, err = run(capsys, "check", "--input", str(cert))
    assert code == 2 and "does not re-check" in err


def test_cli_malformed_relation(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"lattices": {"L": {"elements": ["a", "b"],
                                                "relation": [["a", "b"], ["b", "a"]]}}}))
    code, _, err = run(capsys, "check", "--input", str(p), "--object", "L",
                       "--property", "LATTICE")
    assert code == 2 and "lattices.L" in err


def test_cli_unparseable_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    code, _, err = run(capsys, "check", "--input", str(p), "--object", "x", "--property", "QSM")
    assert code == 2 and "bad.json" in err


def test_cli_solve_structured(capsys):
    code, out, _ = run(capsys, "solve", "--object", "eg48_nomin_grid3", "--direction",
                       "greatest", "--format", "structured")
    rep = json.loads(out)
    assert code == 0 and rep["fixed_point"] == ["1", "1"]
    assert rep["has_largest"] and not rep["has_least"]
    assert rep["minimal"] == [["0", "1"], ["1", "0"]]


def test_cli_solve_annotation(capsys):
    code, out, _ = run(capsys, "solve", "--object", "post44_interior_grid3")
    assert code == 0 and "note:" in out


def test_cli_output_is_deterministic(capsys):
    outs = [run(capsys, "solve", "--object", "eg412_zhou_grid5", "--format", "json")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]


def test_cli_hypotheses_certificate(capsys, tmp_path):
    game = tmp_path / "mp.json"
    game.write_text(json.dumps({"games": {"MP": {
        "players": ["1", "2"], "strategies": {"1": "chain2", "2": "chain2"},
        "payoffs": {"1": {"0|0": 1, "0|1": 0, "1|0": 0, "1|1": 1},
                    "2": {"0|0": 0, "0|1": 1, "1|0": 1, "1|1": 0}}}}}))
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "hypotheses", "--input", str(game), "--object", "MP",
                       "--theorem", "EXISTENCE_4.4", "--certificate", str(cert))
    assert code == 1 and "condition 3: fails" in out
    code, out, _ = run(capsys, "check", "--input", str(cert))
    assert code == 1 and "re-checked" in out


def test_cli_hypotheses_pass(capsys):
    code, out, _ = run(capsys, "hypotheses", "--object", "eg412_zhou_grid5",
                       "--theorem", "COMPLETE_4.9")
    assert code == 0 and "hypotheses hold" in out


def test_cli_unknown_theorem(capsys):
    code, _, _ = run(capsys, "hypotheses", "--object", "coordination_2x2", "--theorem", "X")
    assert code == 2


def test_cli_atlas(capsys):
    code, out, _ = run(capsys, "atlas", "--object", "diamond", "--property",
                       "QSM,PSM,WPSM", "--format", "structured")
    rows = {(r["premise"], r["conclusion"]): r for r in json.loads(out)["implications"]}
    assert code == 0
    assert rows["QSM", "PSM"]["confirmed"] and not rows["PSM", "QSM"]["confirmed"]


def test_cli_atlas_parallel_matches(capsys):
    a = run(capsys, "atlas", "--object", "m3", "--codomain", "2", "--format", "json")[1]
    b = run(capsys, "atlas", "--object", "m3", "--codomain", "2", "--format", "json",
            "--jobs", "2")[1]
    assert a == b


def test_cli_search_emits_loadable_function(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"search": {"kind": "function", "lattices": ["diamond"],
                                           "satisfy": ["SUPEREXT"], "violate": ["WQSM"],
                                           "codomain": 2}}))
    code, out, _ = run(capsys, "search", "--input", str(spec), "--format", "json")
    assert code == 0
    found = tmp_path / "found.json"
    found.write_text(out)
    assert run(capsys, "check", "--input", str(found), "--object", "found",
               "--property", "SUPEREXT")[0] == 0
    assert run(capsys, "check", "--input", str(found), "--object", "found",
               "--property", "WQSM")[0] == 1


def test_cli_search_none_exists(capsys, tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"search": {"kind": "function", "lattices": ["diamond"],
                                           "satisfy": ["QSM"], "violate": ["QSM"]}}))
    code, out, _ = run(capsys, "search", "--input", str(spec))
    assert code == 1 and "none exists" in out


def test_cli_builtin(capsys, tmp_path):
    code, out, _ = run(capsys, "builtin")
    assert code == 0 and "eg412_zhou_grid5" in out
    code, out, _ = run(capsys, "builtin", "--object", "eg48_nomin_grid3")
    p = tmp_path / "g.json"
    p.write_text(out)
    code, out, _ = run(capsys, "solve", "--input", str(p), "--object", "eg48_nomin_grid3",
                       "--direction", "greatest")
    assert code == 0 and "equilibria (5)" in out


def test_cli_bad_flag(capsys):
    assert main(["solve", "--direction", "sideways"]) == 2


def test_cli_solve_reports_non_monotone_selection(capsys):
    # the least best response of player 1 drops from 1 to 0 as s2 rises past 1/2
    code, out, _ = run(capsys, "solve", "--object", "eg48_nomin_grid3", "--direction", "least")
    assert code == 1 and "SelectionNotMonotone" in out and "equilibria (5)" in out
