import json

import pytest

from ddb.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_order(capsys):
    code, out, _ = run(capsys, "order", "< s, t | s^5 = t^3 = (s t)^2 >")
    assert code == 0 and out.strip() == "120"


def test_order_json_and_infinite(capsys):
    code, out, _ = run(capsys, "--json", "order", "< a, b | >")
    assert code == 0 and json.loads(out) == {"presentation": "< a, b | >", "order": None, "infinite": True}


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "abelianize", "< a, b | a^2, b^4 >", "--json")
    assert code == 0 and json.loads(out) == [2, 4]


def test_glue_klein(capsys):
    code, out, _ = run(capsys, "glue", "--leaf", "T2", "--minus", "K", "--matrix", "1,1,1,2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["classification"] == "PrismGroup(1,1)"
    assert data["order"] == 4 and data["invariant_factors"] == [4]
    assert all(c["holds"] for c in data["certificate"])


def test_glue_sphere(capsys):
    code, out, _ = run(capsys, "glue", "--leaf", "S2", "--minus", "RP2", "--plus", "RP2")
    assert code == 0 and "RP3#RP3" in out


def test_decide_spaceform(capsys):
    code, out, _ = run(capsys, "decide-spaceform", '{"family":"BinO","cofactor":1}', "--json")
    data = json.loads(out)
    assert code == 0 and data["answer"] == "NotDDB" and data["homogeneous"] is True


def test_decide_flat(capsys):
    code, out, _ = run(capsys, "decide-flat", "< a | a^3 >")
    assert code == 0 and "NotDDB" in out


def test_catalog_and_sweep(capsys):
    code, out, _ = run(capsys, "catalog", "--max-order", "24", "--json")
    assert code == 0 and any(row["family"] == "BinT" for row in json.loads(out))
    code, out, _ = run(capsys, "enumerate-gluings", "--bound", "1", "--minus", "K", "--json")
    assert code == 0 and len(json.loads(out)) == 20


def test_check_rules(capsys):
    code, out, _ = run(capsys, "check-rules", "< a | a^3 >", "--aspherical", "--json")
    rules = {r["rule"]: r["status"] for r in json.loads(out)["rules"]}
    assert code == 0 and "violated" in rules.values()


@pytest.mark.parametrize(
    "argv",
    [
        ["order", "< a | a^ >"],
        ["decide-spaceform", '{"family":"Prism","alpha":2,"beta":2}'],
        ["glue", "--leaf", "T2", "--minus", "K", "--matrix", "2,0,0,2"],
        ["glue", "--leaf", "S2", "--minus", "K"],
        ["nonsense"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    code = None
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_strict_unknown_exits_2(capsys):
    code, out, err = run(capsys, "--strict", "--coset-limit", "10", "order", "< s, t | s^5 = t^3 = (s t)^2 >")
    assert code == 2 and out.strip() == "unknown" and err
    code, _, _ = run(capsys, "--coset-limit", "10", "order", "< s, t | s^5 = t^3 = (s t)^2 >")
    assert code == 0
