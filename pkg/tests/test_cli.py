import json
from fractions import Fraction

import pytest

from qpmult import cli
from qpmult.flowfile import dumps, example_path, load_report, parse_flow_text
from qpmult.errors import ParseError


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def ex(name):
    return example_path(name)


def test_analyze_cubic_text(capsys):
    code, out, _ = run(capsys, "analyze", ex("ex_cubic.flow"), "--oracle-bound", 2)
    assert code == 0
    assert "[o_F^* : M] = 3" in out
    assert "z^3 - 3*z^2 + 57*z - 1" in out
    assert "agrees" in out and "FAIL" not in out


def test_analyze_json_is_deterministic_and_round_trips(capsys):
    code, first, _ = run(capsys, "analyze", ex("ex_sqrt3_phi.flow"), "--json", "--oracle-bound", 10)
    _, second, _ = run(capsys, "analyze", ex("ex_sqrt3_phi.flow"), "--json", "--oracle-bound", 10)
    assert code == 0 and first == second
    doc = load_report(first)
    mg = doc["multiplier_group"]
    assert mg["index"] == 2
    assert mg["generators"][0]["coords"] == [Fraction(7), Fraction(4)]
    assert mg["generators"][0]["witness"] == [[7, 1], [48, 7]]
    assert doc["field"]["root_interval"] == [Fraction(1), Fraction(2)]
    assert doc["summary"] == "M = {±1} × <eps_1^2>"
    # reparsed values re-render to the identical text
    assert dumps(json.loads(first)) == first
    assert "." not in json.dumps(doc["frequencies"], default=str)


def test_analyze_formal(capsys):
    code, out, _ = run(capsys, "analyze", ex("ex_formal.flow"), "--json")
    doc = load_report(out)
    assert code == 0
    assert doc["structure"] == "T^3 ⋊ Z_2"
    assert doc["multiplier_group"]["witnesses"]["-1"] == [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]


def test_unit(capsys):
    code, out, _ = run(capsys, "unit", "--disc", 3)
    assert code == 0 and "2 + d" in out
    code, out, _ = run(capsys, "unit", "--disc", 5, "--json")
    assert load_report(out)["generators"][0]["coords"] == [Fraction(1, 2), Fraction(1, 2)]
    code, out, _ = run(capsys, "unit", ex("ex_cubic.flow"))
    assert code == 0 and "supplied-assumed-fundamental" in out


@pytest.mark.parametrize("argv,name", [
    (["unit", "--disc", "12"], "NotSquarefree"),
    (["unit", "--disc", "0"], "OutOfRange"),
])
def test_unit_errors(capsys, argv, name):
    code, _, err = run(capsys, *argv)
    assert code == 2 and name in err


def test_semiconj(capsys):
    code, out, _ = run(capsys, "semiconj", ex("ex_sqrt3_phi.flow"), ex("ex_sqrt3_psi.flow"), "--json")
    doc = load_report(out)
    assert code == 0
    assert doc["semiconjugacy"]["matrix"] == [[4, 0], [0, 15]]
    assert doc["conjugacy"]["verdict"] == "not conjugate"
    assert (doc["containment"]["b_in_a"], doc["containment"]["a_in_b"]) == (False, False)
    code, out, _ = run(capsys, "semiconj", ex("ex_sqrt3_psi.flow"), ex("ex_sqrt3_phi.flow"))
    assert code == 0 and "not semiconjugate" in out
    code, _, err = run(capsys, "semiconj", ex("ex_sqrt3_phi.flow"), ex("ex_cubic.flow"))
    assert code == 2 and "FieldMismatch" in err


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    assert "FAIL" not in out


BAD_INPUTS = {
    "syntax": ('{"model": "algebraic",', "ParseError"),
    "float": ('{"field": {"min_poly": [-3, 0, 1], "root_interval": [1, 2]}, "frequencies": [[1, 0], [0, 1.5]]}',
              "ParseError"),
    "decimal string": ('{"field": {"min_poly": [-3, 0, 1], "root_interval": [1, 2]}, '
                       '"frequencies": [[1, 0], [0, "1.5"]]}', "ParseError"),
    "dependent": ('{"field": {"min_poly": [-3, 0, 1], "root_interval": [1, 2]}, "frequencies": [[1, 0], [2, 0]]}',
                  "NotQuasiperiodic"),
    "reducible": ('{"field": {"min_poly": [-4, 0, 1], "root_interval": [1, 3]}, "frequencies": [[1, 0], [0, 1]]}',
                  "Reducible"),
    "not isolating": ('{"field": {"min_poly": [-3, 0, 1], "root_interval": [-2, 2]}, '
                      '"frequencies": [[1, 0], [0, 1]]}', "NotIsolating"),
    "cubic no units": ('{"field": {"min_poly": [-2, 0, 0, 1], "root_interval": ["5/4", "4/3"]}, '
                       '"frequencies": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}', "GeneratorsRequired"),
    "non-unit": ('{"field": {"min_poly": [-2, 0, 0, 1], "root_interval": ["5/4", "4/3"]}, '
                 '"frequencies": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "units": [[0, 1, 0]]}', "NotAUnit"),
    "top-level list": ("[]", "ParseError"),
    "zero denominator": ('{"field": {"min_poly": [-3, 0, 1], "root_interval": ["1/0", 2]}, '
                         '"frequencies": [[1, 0], [0, 1]]}', "ParseError"),
    "bad model": ('{"model": "quantum", "frequencies": [[1]]}', "ParseError"),
}


@pytest.mark.parametrize("case", sorted(BAD_INPUTS))
def test_malformed_inputs_exit_2(case, capsys, tmp_path):
    text, name = BAD_INPUTS[case]
    path = tmp_path / "bad.flow"
    path.write_text(text)
    code, _, err = run(capsys, "analyze", path)
    assert code == 2
    assert name in err


def test_missing_file_and_bad_usage(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.flow")
    assert code == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "unit")[0] == 2


def test_parse_error_positions():
    with pytest.raises(ParseError) as info:
        parse_flow_text('{\n  "frequencies": [[1, 0],\n')
    assert info.value.line is not None and info.value.column is not None
    with pytest.raises(ParseError) as info:
        parse_flow_text('{"field": {"min_poly": [-3, 0, 1], "root_interval": [1, 2]}, "frequencies": [[1, 0], [0, 0.5]]}')
    assert info.value.path == "frequencies[1][1]"


def test_internal_inconsistency_exit_3(capsys, monkeypatch):
    from qpmult.errors import InternalInconsistency

    def boom(*_, **__):
        raise InternalInconsistency("forced")
    monkeypatch.setattr(cli, "classify", boom)
    code, _, err = run(capsys, "analyze", ex("ex_sqrt3_phi.flow"))
    assert code == 3 and "InternalInconsistency" in err


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "qpmult", "unit", "--disc", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "1 + d" in res.stdout


def test_unexpected_exception_exit_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "classify", lambda *_, **__: 1 / 0)
    code, _, err = run(capsys, "analyze", ex("ex_sqrt3_phi.flow"))
    assert code == 3 and "internal" in err
