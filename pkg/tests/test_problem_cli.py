import io
import json
import pathlib
import sys

import pytest

from twistalg.cli import main
from twistalg.errors import ParseError, ValidationError
from twistalg.problem import parse, parse_data
from twistalg.quiver import QuiverPresentation

ROOT = pathlib.Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


def run_cli(args) -> tuple[int, str]:
    buf = io.StringIO()
    old = sys.stdout
    sys.stdout = buf
    try:
        code = main(args)
    finally:
        sys.stdout = old
    return code, buf.getvalue()


def test_parse_golden_files():
    for name in ("s3.toml", "quantum_plane.toml", "c2_4_by_c3_2.toml"):
        pf = parse(str(PROBLEMS / name))
        assert pf.p in (2, 3, 5)


def test_parse_error_carries_line(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("p = 5\n[p_group\ncomponents = [[1,1]]\n")
    with pytest.raises(ParseError) as exc:
        parse(str(bad))
    assert exc.value.line is not None


def test_missing_file():
    with pytest.raises(ParseError):
        parse("/nonexistent/file.toml")


def _base_data():
    return {
        "p": 5,
        "p_group": {"components": [[1, 2]]},
        "l_group": {"orders": [4, 4]},
        "action": {
            "generators": [
                [[[2, 0], [0, 1]]],
                [[[1, 0], [0, 2]]],
            ]
        },
        "form": [{"i": 1, "j": 2, "order": 4, "exponent": 1}],
    }


def test_parse_data_valid():
    pf = parse_data(_base_data())
    assert pf.l_orders == (4, 4) and pf.form_entries == ((0, 1, 4, 1),)


def test_validation_rejects_non_commuting():
    data = _base_data()
    data["l_group"]["orders"] = [3, 3]
    data["action"]["generators"] = [
        [[[0, 1], [1, 1]]],
        [[[1, 1], [1, 0]]],
    ]
    data["p"] = 2
    data["form"] = []
    with pytest.raises(ValidationError):
        parse_data(data)


def test_validation_rejects_bad_form_order():
    data = _base_data()
    data["form"] = [{"i": 1, "j": 2, "order": 8, "exponent": 1}]
    with pytest.raises(ValidationError):
        parse_data(data)


def test_validation_rejects_composite_p():
    data = _base_data()
    data["p"] = 6
    with pytest.raises(ValidationError):
        parse_data(data)


def test_cli_verify_pass_and_exit_codes():
    code, out = run_cli(["verify", str(PROBLEMS / "s3.toml")])
    assert code == 0
    assert "[pass]" in out and "FAIL" not in out


def test_cli_verify_fault_injection():
    code, out = run_cli(
        ["verify", str(PROBLEMS / "quantum_plane.toml"), "--inject-fault", "perturb-q"]
    )
    assert code == 1
    assert "[FAIL] relations" in out


def test_cli_frobenius_fault_injection():
    code, out = run_cli(
        ["frobenius", str(PROBLEMS / "c2_4_by_c3_2.toml"), "--inject-fault", "corrupt-beta"]
    )
    assert code == 1
    assert "sigma-multiplicative" in out


def test_cli_oracle_runs():
    code, out = run_cli(["oracle", str(PROBLEMS / "s3.toml")])
    assert code == 0
    assert "[pass]" in out


def test_cli_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("p = [broken\n")
    code = main(["present", str(bad)])
    assert code == 2


def test_present_byte_determinism(tmp_path):
    """Two runs with the same file and seed produce identical bytes, and they
    match the frozen golden reports.
    """
    for name in ("s3", "quantum_plane", "c2_4_by_c3_2"):
        outputs = []
        jsons = []
        for run in range(2):
            jpath = tmp_path / f"{name}_{run}.json"
            dpath = tmp_path / f"{name}_{run}.dot"
            code, out = run_cli(
                [
                    "present",
                    str(PROBLEMS / f"{name}.toml"),
                    "--json",
                    str(jpath),
                    "--dot",
                    str(dpath),
                ]
            )
            assert code == 0
            outputs.append(out)
            jsons.append(jpath.read_bytes())
        assert outputs[0] == outputs[1]
        assert jsons[0] == jsons[1]
        frozen = (GOLDEN / f"{name}.txt").read_text()
        assert outputs[0] == frozen
        frozen_json = (GOLDEN / f"{name}.json").read_bytes()
        assert jsons[0] == frozen_json


def test_report_json_round_trips_presentation(tmp_path):
    jpath = tmp_path / "qp.json"
    code, _ = run_cli(
        ["present", str(PROBLEMS / "quantum_plane.toml"), "--json", str(jpath)]
    )
    assert code == 0
    data = json.loads(jpath.read_text())
    Q = QuiverPresentation.from_json_dict(data["presentation"])
    assert Q.num_vertices == 1 and Q.num_arrow_types == 2
    assert Q.to_json_dict() == data["presentation"]


def test_dot_output(tmp_path):
    dpath = tmp_path / "s3.dot"
    code, _ = run_cli(["present", str(PROBLEMS / "s3.toml"), "--dot", str(dpath)])
    assert code == 0
    dot = dpath.read_text()
    assert dot.startswith("digraph quiver {")
    assert 'phi0 -> phi1 [label="w_0"]' in dot


def test_report_states_verification_field(tmp_path):
    jpath = tmp_path / "s3.json"
    run_cli(["present", str(PROBLEMS / "s3.toml"), "--json", str(jpath)])
    data = json.loads(jpath.read_text())
    note = data["field"]["note"]
    assert "F_3^1" in note
    assert "characteristic-zero" in note
