from __future__ import annotations

import json

import pytest

from hnstrat.cli import main


TYPE_JUMP = [["2", "1"], ["2", "2"]]
TYPE_STABLE = [["2", "2"]]
FAMILY_JUMP = {
    "points": ["g", "s"],
    "specializes": [["g", "s"]],
    "fibers": {"g": {"degrees": [0, 0]}, "s": {"degrees": [1, -1]}},
}
FAMILY_REVERSED = {
    "points": ["g", "s"],
    "specializes": [["g", "s"]],
    "fibers": {"g": {"degrees": [1, -1]}, "s": {"degrees": [0, 0]}},
}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="ascii")
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_type_ok(tmp_path, capsys):
    path = write(tmp_path, "t.json", TYPE_JUMP)
    code, out, err = run(capsys, ["validate-type", "--input", path])
    assert code == 0
    assert json.loads(out) == {"length": 2, "type": TYPE_JUMP, "valid": True}
    assert err == ""


def test_validate_type_diagnostic(tmp_path, capsys):
    path = write(tmp_path, "t.json", [["0", "1"], ["0", "2"]])
    code, out, err = run(capsys, ["validate-type", "--input", path])
    assert code == 1
    assert out == ""
    diag = json.loads(err)
    assert diag["error"] == "Condition3Violation"
    assert diag["index"] == 2


def test_malformed_input_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="ascii")
    code, out, err = run(capsys, ["hn", "--input", str(path)])
    assert code == 2
    assert json.loads(err)["error"] == "MalformedInput"

    bad_fraction = write(tmp_path, "frac.json", [["1/0", "1"]])
    code, _, err = run(capsys, ["validate-type", "--input", bad_fraction])
    assert code == 2


def test_compare_types(tmp_path, capsys):
    small = write(tmp_path, "a.json", TYPE_STABLE)
    big = write(tmp_path, "b.json", TYPE_JUMP)
    code, out, _ = run(capsys, ["compare-types", "--type", small, "--type", big])
    assert code == 0 and json.loads(out)["relation"] == "LEQ"
    code, out, _ = run(capsys, ["compare-types", "--type", big, "--type", small])
    assert json.loads(out)["relation"] == "GEQ"
    code, out, _ = run(capsys, ["compare-types", "--type", big, "--type", big])
    assert json.loads(out)["relation"] == "EQ"
    # split bundles (2,0,-1,-1) and (1,1,1,-3): same endpoint, crossing polygons
    other = write(tmp_path, "c.json", [["3", "1"], ["4", "2"], ["4", "4"]])
    crossing = write(tmp_path, "d.json", [["6", "3"], ["4", "4"]])
    code, out, _ = run(capsys, ["compare-types", "--type", other, "--type", crossing])
    assert code == 0 and json.loads(out)["relation"] == "INCOMPARABLE"


def test_hn_splitting_with_oracle(tmp_path, capsys):
    path = write(tmp_path, "s.json", {"degrees": [2, 2, 0, -1]})
    code, out, _ = run(capsys, ["hn", "--input", path, "--oracle"])
    assert code == 0
    payload = json.loads(out)
    assert payload["type"] == [["6", "2"], ["7", "3"], ["7", "4"]]
    assert payload["length"] == 3
    assert payload["semistable"] is False
    assert payload["oracle"] == "match"
    assert payload["filtration"]["steps"][0] == []
    assert payload["filtration"]["graded"][0] == ["6", "2"]


def test_hn_lattice_input(tmp_path, capsys):
    lattice = {
        "nodes": ["0", "F", "E"],
        "leq": [["0", "F"], ["F", "E"]],
        "covers": True,
        "P": {"0": [], "F": ["2", "1"], "E": ["2", "2"]},
    }
    path = write(tmp_path, "l.json", lattice)
    code, out, _ = run(capsys, ["hn", "--input", path, "--oracle"])
    assert code == 0
    payload = json.loads(out)
    assert payload["type"] == TYPE_JUMP
    assert payload["filtration"]["steps"] == ["0", "F", "E"]


def test_hn_invalid_lattice_diagnostic(tmp_path, capsys):
    lattice = {
        "nodes": ["0", "F", "E"],
        "leq": [["0", "F"], ["F", "E"]],
        "covers": True,
        "P": {"0": [], "F": ["2", "2"], "E": ["2", "2"]},
    }
    path = write(tmp_path, "l.json", lattice)
    code, _, err = run(capsys, ["hn", "--input", path])
    assert code == 1
    assert json.loads(err)["error"] == "StrictMonotonicityViolation"


def test_polygon_default_slice_and_svg(tmp_path, capsys):
    path = write(tmp_path, "t.json", TYPE_JUMP)
    svg = tmp_path / "out.svg"
    code, out, _ = run(capsys, ["polygon", "--input", path, "--svg", str(svg)])
    assert code == 0
    payload = json.loads(out)
    assert isinstance(payload["at"], int)
    values = [int(v["value"]) for v in payload["vertices"]]
    assert values[0] == 0 and values[1] > 0 and values[2] > values[1]
    text = svg.read_text(encoding="ascii")
    assert text.startswith("<svg") and "path" in text


def test_polygon_at_flag(tmp_path, capsys):
    path = write(tmp_path, "t.json", TYPE_JUMP)
    code, out, _ = run(capsys, ["polygon", "--input", path, "--at", "10"])
    payload = json.loads(out)
    assert payload["at"] == 10
    assert payload["vertices"] == [
        {"r": 0, "value": "0"},
        {"r": 1, "value": "12"},
        {"r": 2, "value": "22"},
    ]


def test_stratify_jump_family(tmp_path, capsys):
    fam = write(tmp_path, "f.json", FAMILY_JUMP)
    tau = write(tmp_path, "t.json", TYPE_JUMP)
    code, out, _ = run(capsys, ["stratify", "--input", fam, "--tau", tau])
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"]["semicontinuity"] == "ok"
    assert payload["checks"]["strata_partition_the_space"] is True
    assert payload["checks"]["opens_are_open"] is True
    assert payload["recursive_stratum"] == ["s"]
    assert payload["matches_level_set"] is True
    strata = {json.dumps(row["type"]): row["points"] for row in payload["strata"]}
    assert strata[json.dumps(TYPE_JUMP)] == ["s"]
    assert strata[json.dumps(TYPE_STABLE)] == ["g"]


def test_stratify_rejects_violation(tmp_path, capsys):
    fam = write(tmp_path, "f.json", FAMILY_REVERSED)
    code, _, err = run(capsys, ["stratify", "--input", fam])
    assert code == 1
    diag = json.loads(err)
    assert diag["error"] == "FamilyError"
    assert "semicontinuity" in diag["message"]


def test_check_family(tmp_path, capsys):
    ok = write(tmp_path, "ok.json", FAMILY_JUMP)
    code, out, _ = run(capsys, ["check-family", "--input", ok])
    assert code == 0 and json.loads(out)["semicontinuity"] == "ok"
    bad = write(tmp_path, "bad.json", FAMILY_REVERSED)
    code, _, err = run(capsys, ["check-family", "--input", bad])
    assert code == 1
    assert "generic" in json.loads(err)["message"]


def test_shift(tmp_path, capsys):
    path = write(tmp_path, "t.json", TYPE_JUMP)
    code, out, _ = run(capsys, ["shift", "--input", path])
    assert code == 0
    assert json.loads(out)["type"] == [["0", "1"]]
    single = write(tmp_path, "s.json", TYPE_STABLE)
    code, _, err = run(capsys, ["shift", "--input", single])
    assert code == 1


def test_outputs_are_deterministic(tmp_path, capsys):
    fam = write(tmp_path, "f.json", FAMILY_JUMP)
    first = run(capsys, ["stratify", "--input", fam])
    second = run(capsys, ["stratify", "--input", fam])
    assert first == second
    path = write(tmp_path, "s.json", {"degrees": [2, 2, 0, -1]})
    assert run(capsys, ["hn", "--input", path]) == run(capsys, ["hn", "--input", path])


def test_emitted_json_reparses_and_revalidates(tmp_path, capsys):
    path = write(tmp_path, "t.json", TYPE_JUMP)
    _, out, _ = run(capsys, ["validate-type", "--input", path])
    emitted = write(tmp_path, "round.json", json.loads(out)["type"])
    code, out2, _ = run(capsys, ["validate-type", "--input", emitted])
    assert code == 0
    assert json.loads(out2)["type"] == TYPE_JUMP
    _, out3, _ = run(capsys, ["shift", "--input", emitted])
    shifted = write(tmp_path, "shifted.json", json.loads(out3)["type"])
    assert run(capsys, ["validate-type", "--input", shifted])[0] == 0
