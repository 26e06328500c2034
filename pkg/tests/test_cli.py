import json
import os
from pathlib import Path

import pytest

from uqbar.cli import EXIT_DISAGREE, EXIT_ERROR, EXIT_OK, main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "decompose_p5_x2_x3": ["decompose", "--p", "5", "X+(2)", "X+(3)"],
    "decompose_witness_both": ["decompose", "--p", "3", "E+(1,1,[1:1])", "X+(2)", "--method", "both"],
    "decompose_unit": ["decompose", "--p", "3", "X+(1)", "P+(1)"],
    "decompose_certified_json": ["decompose", "--p", "3", "X+(2)", "X+(2)", "--method", "matrix",
                                 "--certify", "--format", "json"],
    "table_p5": ["table", "--p", "5", "--sets", "IJ"],
    "table_p3_products": ["table", "--p", "3", "--family", "X,P", "--nmax", "1"],
    "braiding_p3": ["braiding-witness", "--p", "3"],
    "braiding_p3_json": ["braiding-witness", "--p", "3", "--format", "json"],
    "braiding_p2": ["braiding-witness", "--p", "2"],
    "ext_simple": ["ext", "--p", "3", "X+(1)", "X-(2)"],
    "dual_m_both": ["dual", "--p", "3", "M+(1,2)", "--method", "both"],
    "dual_e_left_json": ["dual", "--p", "3", "E+(1,2,[1:2])", "--side", "L", "--format", "json"],
    "lift_projective": ["lift", "--p", "3", "P+(1)"],
    "lift_generic_e": ["lift", "--p", "3", "E+(1,1,[1:1])"],
    "lift_generic_e_json": ["lift", "--p", "3", "E+(1,1,[1:1])", "--format", "json"],
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name, capsys):
    code = main(CASES[name])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("UQBAR_UPDATE_GOLDEN"):
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


def test_table_matches_index_grid(capsys):
    main(["table", "--p", "5", "--sets", "I", "--format", "json"])
    grid = json.loads(capsys.readouterr().out)["I"]
    assert grid[1][2] == [2, 4]
    assert grid[4] == [[]] * 5


@pytest.mark.parametrize("name", [n for n in CASES if n.endswith("json")])
def test_json_is_deterministic(name, capsys):
    main(CASES[name])
    first = capsys.readouterr().out
    main(CASES[name])
    assert capsys.readouterr().out == first
    json.loads(first)


def test_seed_does_not_change_results(capsys):
    outs = []
    for seed in ("0", "17"):
        main(["decompose", "--p", "3", "E+(2,2,[1:2])", "W-(1,2)", "--method", "matrix", "--seed", seed,
              "--format", "json"])
        data = json.loads(capsys.readouterr().out)
        outs.append(data["matrix"])
    assert outs[0] == outs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--p", "1", "X+(1)", "X+(1)"],
        ["decompose", "--p", "3", "Q+(1)", "X+(1)"],
        ["decompose", "--p", "3", "X+(4)", "X+(1)"],
        ["lift", "--p", "3"],
        ["table", "--p", "3", "--family", "E"],
        ["frobnicate", "--p", "3"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == EXIT_ERROR
    assert "error" in capsys.readouterr().err


def test_disagreement_exit_code(monkeypatch, capsys):
    from uqbar import rules
    from uqbar.labels import FormalDecomp, X

    monkeypatch.setattr(rules, "tensor_rule", lambda p, a, b: FormalDecomp.of(p, [X(1)] * 4))
    assert main(["decompose", "--p", "3", "X+(2)", "X+(2)", "--method", "both"]) == EXIT_DISAGREE
    assert "DISAGREE" in capsys.readouterr().out
