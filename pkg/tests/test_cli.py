import io
import json
from dataclasses import replace

import pytest

from azbrane.cli import main
from azbrane.services import commands


def run(argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_hilbert_chow_from_stdin(monkeypatch):
    code, text = run(["hilbert-chow"], json.dumps({"matrix": [[0, 1], [0, 0]]}), monkeypatch)
    assert code == 0
    assert text == '{"char_poly":[0,0,1],"roots":[{"mult":2,"root":"0"}]}\n'


def test_input_file(tmp_path):
    payload = tmp_path / "point.json"
    payload.write_text(json.dumps({"point": {"matrices": [[[1, 0], [0, 2]]]}}))
    code, text = run(["support", "--input", str(payload)])
    assert code == 0
    assert json.loads(text) == {"support": [{"point": ["1"], "length": 1}, {"point": ["2"], "length": 1}]}


def test_malformed_json_exits_two(monkeypatch):
    code, text = run(["support"], "{not json", monkeypatch)
    assert code == 2
    assert json.loads(text)["error"] == "malformed_input"


def test_missing_file_exits_two(tmp_path):
    code, text = run(["jordan", "--input", str(tmp_path / "absent.json")])
    assert code == 2
    assert json.loads(text)["error"] == "malformed_input"


def test_invalid_payload_exits_two(monkeypatch):
    code, text = run(["hilbert-chow"], json.dumps({"matrix": "nope"}), monkeypatch)
    assert code == 2
    assert json.loads(text)["error"] == "malformed_input"


def test_domain_error_exits_one(monkeypatch):
    code, text = run(["support"], json.dumps({"point": {"matrices": [[[0, 2], [1, 0]]]}}), monkeypatch)
    assert code == 1
    assert json.loads(text)["error"] == "spectrum_not_split"


def test_higgsing_from_flags():
    code, text = run(["higgsing", "--A", "[[0,1],[0,0]]", "--lambda", "1", "--bhat", "1", "0", "0", "0"])
    assert code == 0
    result = json.loads(text)
    assert result["B"] == [[[1], [0, 1]], [[], []]]
    assert result["branch"]["case"] == "a"
    assert result["residual_zero"] is True


def test_higgsing_default_bhat_is_identity():
    code, text = run(["higgsing", "solve", "--A", "[[0,1],[0,0]]"])
    assert code == 0
    branch = json.loads(text)["branch"]
    assert (branch["case"], branch["scalar"]) == ("b", True)


def test_higgsing_solvability_violated():
    code, text = run(["higgsing", "--A", "[[1,0],[0,0]]", "--lambda", "1"])
    assert code == 1
    assert json.loads(text)["error"] == "solvability_violated"


def test_higgsing_bad_flag_json():
    code, text = run(["higgsing", "--A", "[[0,1]"])
    assert code == 2


def test_weyl_check_flags():
    code, text = run(["weyl-check", "--cap", "5", "--rank", "2"])
    assert code == 0
    assert json.loads(text) == {"cap": 5, "rank": 2, "ok": True}


def test_torus_group(monkeypatch):
    code, text = run(["torus", "slag"], json.dumps({"tau": "i", "target": [4, 3, 0]}), monkeypatch)
    assert code == 0
    assert json.loads(text)["morphism"]["components"] == [
        {"d": 4, "class": [1, 0], "wrap": 3, "offset": "0", "fiber_rank": 1}
    ]


def test_seed_flag_is_accepted(monkeypatch):
    point = {"matrices": [[[0, 1], [0, 0]]]}
    payload = json.dumps({"left": point, "right": point})
    code, text = run(["conjugate", "--seed", "3"], payload, monkeypatch)
    assert code == 0
    assert json.loads(text)["status"] == "conjugate"


def test_text_format(monkeypatch):
    code, text = run(["hilbert-chow", "--format", "text"], json.dumps({"matrix": [[2]]}), monkeypatch)
    assert code == 0
    assert "char_poly" in text
    assert "roots" in text


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["no-such-command"], out=io.StringIO())


def test_scenario_list():
    code, text = run(["scenario", "list"])
    assert code == 0
    names = [s["name"] for s in json.loads(text)["scenarios"]]
    assert "hilbert-chow-jordan-block" in names


def test_scenario_run():
    code, text = run(["scenario", "run", "torus-class-three-wraps"])
    assert code == 0
    assert json.loads(text)["passed"] is True


def test_unknown_scenario():
    code, text = run(["scenario", "run", "no-such-scenario"])
    assert code == 2
    assert json.loads(text)["error"] == "unknown_scenario"


def test_run_all_is_deterministic():
    first = run(["scenario", "run-all"])
    second = run(["scenario", "run-all"])
    assert first == second
    assert first[0] == 0
    assert json.loads(first[1])["failed"] == []


def test_spectral_curve_from_flags():
    code, text = run(["spectral-curve", "--phi", "[[0,1],[[0,1],0]]", "--vars", "z", "--points", "[[4]]"])
    assert code == 0
    assert json.loads(text) == {
        "vars": ["z", "lambda"],
        "curve": [{"exps": [0, 2], "coef": 1}, {"exps": [1, 0], "coef": -1}],
        "containment": [{"point": ["4"], "eigenvalues": ["-2", "2"]}],
    }


def test_spectral_curve_bad_flag_json():
    code, text = run(["spectral-curve", "--phi", "[[0,1]"])
    assert code == 2
    assert json.loads(text)["error"] == "malformed_input"


def test_kahler_trace_from_flags():
    form = {"vars": ["z"], "terms": [{"coeffs": [[[1, 0], [0, 1]], [[1, 0], [0, 1]]], "diffs": [[[[0, 1], 0], [0, [0, 1]]]]}]}
    code, text = run(["kahler", "trace", "--form", json.dumps(form)])
    assert code == 0
    assert json.loads(text) == {"trace_form": [{"dz": ["z"], "coef": [{"exps": [0], "coef": 2}]}]}


def test_kahler_pullback_from_flags():
    phi = json.dumps({"targets": ["y"], "images": [[[[0, 1], 0], [0, [0, 1]]]]})
    code, text = run(["kahler", "pullback", "--phi", phi, "--function", "[0,0,1]"])
    assert code == 0
    assert json.loads(text) == {"degree": 1, "terms": 1, "trace_form": [{"dz": ["z"], "coef": [{"exps": [1], "coef": 4}]}]}

    code, text = run(["kahler", "pullback", "--phi", phi, "--form", '[{"dy": ["y"], "coef": [0, 1]}]'])
    assert code == 0
    assert json.loads(text)["trace_form"] == [{"dz": ["z"], "coef": [{"exps": [1], "coef": 2}]}]


def test_kahler_pullback_needs_form_or_function():
    code, text = run(["kahler", "pullback", "--phi", '{"targets": ["y"], "images": [[[1]]]}'])
    assert code == 2
    assert json.loads(text)["error"] == "malformed_input"


def test_empty_matrix_point_exits_two(monkeypatch):
    code, text = run(["image"], json.dumps({"point": {"matrices": [[]]}}), monkeypatch)
    assert code == 2
    payload = json.loads(text)
    assert payload["error"] == "malformed_input"
    assert "detail" in payload


@pytest.mark.parametrize("entry", [1.5, True, {"foo": 1}, None, [1]])
def test_non_scalar_entries_exit_two(monkeypatch, entry):
    code, text = run(["hilbert-chow"], json.dumps({"matrix": [[entry]]}), monkeypatch)
    assert code == 2
    assert json.loads(text)["error"] == "malformed_input"


def test_unexpected_arithmetic_error_is_structured(monkeypatch):
    def broken(request):
        raise ZeroDivisionError("division by zero in Q(i)")

    monkeypatch.setitem(commands.COMMANDS, "jordan", replace(commands.COMMANDS["jordan"], handler=broken))
    code, text = run(["jordan"], json.dumps({"matrix": [[1]]}), monkeypatch)
    assert code == 1
    assert json.loads(text)["error"] == "domain_error"
